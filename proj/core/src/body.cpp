#include "uconvex/body.hpp"

#include "uconvex/errors.hpp"

namespace uconvex {

void ConvexBody::support_batch(std::span<const Vec> dirs, std::span<double> out) const {
  for (std::size_t i = 0; i < dirs.size(); ++i) out[i] = support_value(dirs[i]);
}

void ConvexBody::check_direction(const Vec& u) const {
  if (static_cast<int>(u.size()) != dim())
    throw DimensionMismatch("direction dimension mismatch");
  if (!all_finite(u)) throw NonFiniteInput("direction has non-finite entries");
  bool all_zero = true;
  for (double v : u)
    if (v != 0.0) all_zero = false;
  if (all_zero) throw NonFiniteInput("direction is zero");
}

}  // namespace uconvex
