#include "covmur/error_dilation.hpp"

#include <cmath>
#include <optional>
#include <sstream>

namespace covmur {
namespace {

constexpr double kRankTol = 1e-10;

std::optional<std::size_t> rank_deficient_outcome(const Observable& target) {
  for (std::size_t w = 0; w < target.size(); ++w)
    if (min_eigenvalue(target.effect(w)) <= kRankTol) return w;
  return std::nullopt;
}

std::optional<std::size_t> certain_outcome(const Observable& target) {
  for (std::size_t w = 0; w < target.size(); ++w)
    if (eigenvalues(target.effect(w)).back() >= 1.0 - kRankTol) return w;
  return std::nullopt;
}

}  // namespace

Observable collapse_joint(const Observable& joint, std::size_t axis, std::string_view target) {
  const OutcomeSet& omega = joint.outcomes();
  if (!omega.is_product() || axis >= omega.num_factors())
    fail(ErrorKind::Structural, "collapse needs a product outcome set with the requested axis");
  const std::size_t star = omega.factor(axis).index_of(target);
  const std::size_t width = omega.factor(axis).size();

  std::vector<HermitianOperator> effects;
  effects.reserve(omega.size());
  for (std::size_t idx = 0; idx < omega.size(); ++idx) {
    auto c = omega.components(idx);
    if (c[axis] != star) {
      effects.push_back(HermitianOperator::zero(joint.dim()));
      continue;
    }
    ComplexMatrix sum = ComplexMatrix::Zero(joint.dim(), joint.dim());
    for (std::size_t w = 0; w < width; ++w) {
      c[axis] = w;
      sum += joint.effect(omega.compose(c)).matrix();
    }
    effects.push_back(trusted_hermitian(std::move(sum)));
  }
  return Observable(omega, std::move(effects));
}

DilationResult dilate_to_error(const Observable& target, const Observable& joint, std::size_t axis,
                               double v, PNorm p, const DilationOptions& options) {
  if (!joint.outcomes().is_product() || axis >= joint.outcomes().num_factors())
    fail(ErrorKind::Structural, "joint has no axis " + std::to_string(axis));
  if (!(joint.outcomes().factor(axis) == target.outcomes()))
    fail(ErrorKind::Structural, "target outcomes differ from the joint's axis outcomes");
  if (!has_exact_evaluator(target, p))
    fail(ErrorKind::Unsupported, "no exact evaluator for p = " + p.to_string() + " with " +
                                     std::to_string(target.size()) + " outcomes");

  std::size_t collapse_to = 0;
  if (p.is_infinite()) {
    const auto w = rank_deficient_outcome(target);
    if (!w) fail(ErrorKind::Unsupported, "all target effects have full rank; the maximum is not certified");
    collapse_to = *w;
  } else {
    const auto w = certain_outcome(target);
    if (!w || target.size() < 2)
      fail(ErrorKind::Unsupported, "no target effect has eigenvalue 1; the maximum is not certified");
    collapse_to = *w == 0 ? 1 : 0;
  }

  const Observable collapsed = collapse_joint(joint, axis, target.outcomes().label(collapse_to));
  auto error_at = [&](double lambda) {
    return d_p_exact(target, margin(mix(joint, collapsed, lambda), axis), p).value;
  };

  DilationResult out{0.0, joint, 0.0, error_at(0.0), error_at(1.0), 0,
                     target.outcomes().label(collapse_to)};
  const double tol = options.tolerance;
  if (!(v >= out.initial - tol && v <= out.maximum + tol)) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "requested error " << v << " outside [" << out.initial << ", " << out.maximum << "]";
    fail(ErrorKind::Range, msg.str());
  }

  // invariant: error(lo) <= v <= error(hi)
  double lo = 0.0, hi = 1.0;
  double f_lo = out.initial, f_hi = out.maximum;
  double lambda = 0.0, achieved = f_lo;
  if (std::abs(f_lo - v) <= tol) {
    lambda = 0.0;
    achieved = f_lo;
  } else if (std::abs(f_hi - v) <= tol) {
    lambda = 1.0;
    achieved = f_hi;
  } else {
    bool done = false;
    while (out.iterations < options.max_iterations) {
      ++out.iterations;
      const double mid = 0.5 * (lo + hi);
      const double f_mid = error_at(mid);
      lambda = mid;
      achieved = f_mid;
      if (std::abs(f_mid - v) <= tol) {
        done = true;
        break;
      }
      if (f_mid < v) {
        lo = mid;
        f_lo = f_mid;
      } else {
        hi = mid;
        f_hi = f_mid;
      }
    }
    if (!done) fail(ErrorKind::Range, "bisection did not reach the requested tolerance");
  }
  out.lambda = lambda;
  out.achieved = achieved;
  out.joint = mix(joint, collapsed, lambda);
  return out;
}

}  // namespace covmur
