#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "covmur/observables.hpp"
#include "covmur/random.hpp"

namespace covmur {

class OutcomeAction;

/// Exponent p in [1, inf] for the p-norm distances.
class PNorm {
 public:
  static PNorm finite(double p);
  static PNorm infinity() { return PNorm(); }
  // "inf", "infinity" or a number >= 1
  static PNorm parse(const std::string& text);

  bool is_infinite() const { return infinite_; }
  double value() const;  // throws for infinity
  double reciprocal() const { return infinite_ ? 0.0 : 1.0 / p_; }
  // 2^{1/p}: the largest possible distance between two distributions
  double max_distance() const;
  std::string to_string() const;

  bool operator==(const PNorm& other) const = default;

 private:
  PNorm() = default;
  bool infinite_ = true;
  double p_ = 0.0;
};

struct DistanceResult {
  double value = 0.0;
  bool exact = false;
  std::optional<DensityOperator> witness;
};

// (sum |mu - nu|^p)^{1/p}, or max |mu - nu| for p = inf.
double delta_p(std::span<const double> mu, std::span<const double> nu, PNorm p);

// sup_rho max_w |tr rho (E(w) - F(w))| = max_w || E(w) - F(w) ||.
DistanceResult d_p_exact_infty(const Observable& e, const Observable& f);

// Two-outcome case: the two differences are negatives of each other, so
// delta_p = 2^{1/p} |tr rho Delta| and the sup is the spectral norm of Delta.
DistanceResult d_p_exact_two_outcome(const Observable& e, const Observable& f, PNorm p);

// Dispatches to the exact evaluators; throws Unsupported when neither applies.
DistanceResult d_p_exact(const Observable& e, const Observable& f, PNorm p);
bool has_exact_evaluator(const Observable& e, PNorm p);

struct HeuristicOptions {
  int restarts = 64;
  int max_iterations = 500;
  double tolerance = 1e-9;
  std::uint64_t seed = kDefaultSeed;
};

/// Certified lower bound on d_p by local ascent over pure states.
///
/// Uses the dual form delta_p(mu, nu) = max_{|y|_q <= 1} sum_w y_w (mu_w - nu_w):
/// for fixed y the best state is the top eigenvector of sum_w y_w Delta_w, and
/// for fixed state the best y is the Hoelder dual of the difference vector.
/// Alternating the two never decreases the objective. Ascents start from the
/// extreme eigenvectors of every Delta_w, which makes the p = inf value exact,
/// and from `restarts` random pure states. Every reported value is realised by
/// the returned witness.
DistanceResult d_p_heuristic(const Observable& e, const Observable& f, PNorm p,
                             const HeuristicOptions& options = {});

// Exact when possible, heuristic otherwise.
DistanceResult distance(const Observable& e, const Observable& f, PNorm p,
                        const HeuristicOptions& options = {});

// delta_p(E^rho, F^rho) for a given state.
double distance_at_state(const Observable& e, const Observable& f, PNorm p,
                         const DensityOperator& rho);

using DeltaFunction = std::function<double(std::span<const double>, std::span<const double>)>;

struct PropertyReport {
  std::size_t trials = 0;
  std::size_t violations = 0;
  double worst_excess = 0.0;  // largest amount by which the inequality/equality failed
};

PropertyReport check_joint_convexity(const DeltaFunction& delta, std::size_t outcomes,
                                     std::size_t trials, std::uint64_t seed = kDefaultSeed,
                                     double slack = 1e-10);

PropertyReport check_action_compatibility(const DeltaFunction& delta, const OutcomeAction& action,
                                          std::size_t trials, std::uint64_t seed = kDefaultSeed,
                                          double slack = 1e-12);

DeltaFunction delta_function(PNorm p);

}  // namespace covmur
