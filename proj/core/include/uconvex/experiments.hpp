#pragma once

#include "uconvex/families.hpp"
#include "uconvex/splitting.hpp"
#include "uconvex/verify.hpp"

namespace uconvex {

struct ExperimentCfg {
  int pairs = 50;
  std::uint64_t seed = 7;
  double tol = 5e-3;  // sampling tolerance cap for margins
  bool audit = true;  // hypothesis audits gate the verdict
  SamplingCfg sampling;
  ModulusCfg modulus;
  ProjectionCfg projection;
};

// H(t) = F1(t) ∩ F2(t); EmptyIntersection at infeasible t.
BodyPtr intersection_at(const SetValuedFamily& f1, const SetValuedFamily& f2,
                        double t);

// Intersection-continuity bound h(H(t1),H(t2)) <= w1 + 2 w2 + f(w1 + w2).
// When both families declare image moduli, both assignments are evaluated
// and the tighter bound is scored.
Report verify_theorem_31(const SetValuedFamily& f1, const SetValuedFamily& f2,
                         const ExperimentCfg& cfg = {});

// Sharpness of the intersection bound on the power-cap family: lower bound
// (2^{1/p}-1)|t2-t1|^{1/p} and the fitted Holder exponent vs 1/p.
Report example_31_sharpness(double p, double t_min, double t_max, int scales,
                            const ExperimentCfg& cfg = {});

// Minimization stability ||u1-u2|| <= 2h + f(h) for g(x) = ||x - x0||².
Report example_32_stability(const Vec& x0,
                            const std::vector<std::pair<BodyPtr, BodyPtr>>& cases,
                            const ExperimentCfg& cfg = {});

// Subspace-intersection bound h(H(t1),H(t2)) <= w + (1/C) f(w) in the max
// product norm, measured through the kernel-coordinate pullback.
Report verify_lemma_32(const SetValuedFamily& f1, const SetValuedFamily& f2,
                       const LinearSurjection& l, const ExperimentCfg& cfg = {});

// Holder fit of s -> p(A_s) against h(A_s1, A_s2); named preset families.
struct HolderFamily {
  std::string name;
  std::function<BodyPtr(double)> generator;
  std::vector<double> scales;
  double min_alpha = 0.45;
};
HolderFamily holder_family_translating_balls();
HolderFamily holder_family_rotating_ellipse();
HolderFamily holder_family_critical_dent();
Report remark_33_projection_holder(const HolderFamily& family,
                                   const ExperimentCfg& cfg = {});

// Splitting experiments.
Report split_sum_experiment(const BodyPtr& a, const BodyPtr& b, int samples,
                            const ExperimentCfg& cfg = {},
                            std::optional<Modulus> a_modulus = {});
// The difference-kernel configuration whose only selection is the metric
// projection of zero onto A (F1 = A, F2 = the ball of radius dist(0, A)).
Report split_kernel_projection_singleton(const BodyPtr& a, const ExperimentCfg& cfg = {});
Report split_kernel_translating(const ExperimentCfg& cfg = {});
Report steiner_experiment(int polygon_pairs, const ExperimentCfg& cfg = {});

// Manifest dispatch: {"experiment": "thm31" | "ex31" | "ex32" | "lem32" |
// "rem33" | "split-sum" | "split-kernel" | "steiner", ...}.
Report run_experiment_manifest(const Json& manifest, const ExperimentCfg& defaults = {});

}  // namespace uconvex
