#pragma once

#include <cstdint>

#include "uconvex/common.hpp"

namespace uconvex {

// Deterministic RNG: mt19937_64 core with hand-rolled distributions so that
// output streams are identical across standard libraries and runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next_u64();
  double uniform();                       // [0, 1)
  double uniform(double lo, double hi);   // [lo, hi)
  double normal();                        // Box-Muller, cached spare
  Vec normal_vec(int dim);
  Vec unit_vec2(double angle_jitter = 1.0);  // uniform direction on the circle

  // Derived stream for a named sub-task; keeps experiment sampling independent
  // of evaluation order.
  Rng fork(std::uint64_t salt) const;

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace uconvex
