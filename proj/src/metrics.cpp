#include "covmur/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "covmur/symmetry.hpp"

namespace covmur {

PNorm PNorm::finite(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    std::ostringstream msg;
    msg << "p must be a finite number >= 1 (use PNorm::infinity() for inf), got " << p;
    fail(ErrorKind::Domain, msg.str());
  }
  PNorm out;
  out.infinite_ = false;
  out.p_ = p;
  return out;
}

PNorm PNorm::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf" || text == "INF") return infinity();
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) fail(ErrorKind::Domain, "cannot parse p-norm '" + text + "'");
  return finite(value);
}

double PNorm::value() const {
  if (infinite_) fail(ErrorKind::Domain, "p is infinite");
  return p_;
}

double PNorm::max_distance() const { return std::pow(2.0, reciprocal()); }

std::string PNorm::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream out;
  out << p_;
  return out.str();
}

double delta_p(std::span<const double> mu, std::span<const double> nu, PNorm p) {
  if (mu.size() != nu.size()) fail(ErrorKind::Structural, "distributions have different lengths");
  if (p.is_infinite()) {
    double worst = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) worst = std::max(worst, std::abs(mu[i] - nu[i]));
    return worst;
  }
  const double pv = p.value();
  double total = 0.0;
  if (pv == 1.0) {
    for (std::size_t i = 0; i < mu.size(); ++i) total += std::abs(mu[i] - nu[i]);
    return total;
  }
  // scale by the largest entry so high powers of small numbers stay representable
  double scale = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) scale = std::max(scale, std::abs(mu[i] - nu[i]));
  if (scale == 0.0) return 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) total += std::pow(std::abs(mu[i] - nu[i]) / scale, pv);
  return scale * std::pow(total, 1.0 / pv);
}

namespace {

void check_same_shape(const Observable& e, const Observable& f) {
  if (!(e.outcomes() == f.outcomes()))
    fail(ErrorKind::Structural, "observables have different outcome sets");
  if (e.dim() != f.dim()) fail(ErrorKind::Structural, "observables act on different dimensions");
}

// Eigenvector of the extreme (largest |lambda|) eigenvalue.
std::pair<double, ComplexVector> extreme_eigenpair(const HermitianOperator& op) {
  const auto eig = eigen_decompose(op);
  const double lo = eig.values.front();
  const double hi = eig.values.back();
  if (std::abs(lo) > std::abs(hi)) return {std::abs(lo), eig.vectors.col(0)};
  return {std::abs(hi), eig.vectors.col(eig.vectors.cols() - 1)};
}

std::vector<double> differences(const std::vector<HermitianOperator>& delta, const ComplexVector& psi) {
  std::vector<double> t;
  t.reserve(delta.size());
  for (const auto& d : delta) t.push_back((psi.adjoint() * d.matrix() * psi)(0, 0).real());
  return t;
}

}  // namespace

DistanceResult d_p_exact_infty(const Observable& e, const Observable& f) {
  check_same_shape(e, f);
  DistanceResult out;
  out.exact = true;
  ComplexVector best = ComplexVector::Zero(e.dim());
  best(0) = 1.0;
  double best_value = -1.0;
  for (std::size_t w = 0; w < e.size(); ++w) {
    auto [value, vec] = extreme_eigenpair(e.effect(w) - f.effect(w));
    if (value > best_value) {
      best_value = value;
      best = vec;
    }
  }
  out.value = std::max(best_value, 0.0);
  out.witness = DensityOperator::pure(best);
  return out;
}

DistanceResult d_p_exact_two_outcome(const Observable& e, const Observable& f, PNorm p) {
  check_same_shape(e, f);
  if (e.size() != 2)
    fail(ErrorKind::Unsupported, "two-outcome evaluator needs exactly two outcomes");
  auto [value, vec] = extreme_eigenpair(e.effect(0) - f.effect(0));
  DistanceResult out;
  out.exact = true;
  out.value = p.max_distance() * value;
  out.witness = DensityOperator::pure(vec);
  return out;
}

bool has_exact_evaluator(const Observable& e, PNorm p) {
  return p.is_infinite() || e.size() == 2;
}

DistanceResult d_p_exact(const Observable& e, const Observable& f, PNorm p) {
  if (p.is_infinite()) return d_p_exact_infty(e, f);
  if (e.size() == 2) return d_p_exact_two_outcome(e, f, p);
  fail(ErrorKind::Unsupported,
       "no exact evaluator for " + std::to_string(e.size()) + " outcomes at p=" + p.to_string());
}

double distance_at_state(const Observable& e, const Observable& f, PNorm p,
                         const DensityOperator& rho) {
  check_same_shape(e, f);
  std::vector<double> t;
  for (std::size_t w = 0; w < e.size(); ++w) {
    const ComplexMatrix d = e.effect(w).matrix() - f.effect(w).matrix();
    t.push_back((d.conjugate().cwiseProduct(rho.matrix())).sum().real());
  }
  const std::vector<double> zero(t.size(), 0.0);
  return delta_p(t, zero, p);
}

namespace {

// Hoelder dual of t: a y with |y|_q <= 1 and sum y t = |t|_p.
std::vector<double> dual_direction(const std::vector<double>& t, PNorm p) {
  std::vector<double> y(t.size(), 0.0);
  if (p.is_infinite()) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < t.size(); ++i)
      if (std::abs(t[i]) > std::abs(t[arg])) arg = i;
    y[arg] = t[arg] < 0.0 ? -1.0 : 1.0;
    return y;
  }
  const double pv = p.value();
  if (pv == 1.0) {
    for (std::size_t i = 0; i < t.size(); ++i) y[i] = t[i] < 0.0 ? -1.0 : 1.0;
    return y;
  }
  const std::vector<double> zero(t.size(), 0.0);
  const double norm = delta_p(t, zero, p);
  if (norm == 0.0) {
    y[0] = 1.0;
    return y;
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = std::abs(t[i]) / norm;
    y[i] = (t[i] < 0.0 ? -1.0 : 1.0) * std::pow(r, pv - 1.0);
  }
  return y;
}

}  // namespace

DistanceResult d_p_heuristic(const Observable& e, const Observable& f, PNorm p,
                             const HeuristicOptions& options) {
  check_same_shape(e, f);
  std::vector<HermitianOperator> delta;
  for (std::size_t w = 0; w < e.size(); ++w) delta.push_back(e.effect(w) - f.effect(w));
  const std::vector<double> zero(delta.size(), 0.0);
  const int dim = e.dim();

  Rng rng(options.seed);
  double best_value = -1.0;
  ComplexVector best_psi;
  auto ascend = [&](ComplexVector psi) {
    std::vector<double> t = differences(delta, psi);
    double value = delta_p(t, zero, p);
    for (int it = 0; it < options.max_iterations; ++it) {
      const auto y = dual_direction(t, p);
      ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
      for (std::size_t w = 0; w < delta.size(); ++w)
        if (y[w] != 0.0) m += y[w] * delta[w].matrix();
      const auto eig = eigen_decompose(trusted_hermitian(m));
      const ComplexVector candidate = eig.vectors.col(dim - 1);
      const std::vector<double> t_new = differences(delta, candidate);
      const double value_new = delta_p(t_new, zero, p);
      if (!(value_new > value)) break;
      const double gain = value_new - value;
      psi = candidate;
      t = t_new;
      value = value_new;
      if (gain <= options.tolerance) break;
    }
    if (value > best_value) {
      best_value = value;
      best_psi = psi;
    }
  };
  // extreme eigenvectors of each difference effect, then random pure states
  for (const auto& d : delta) {
    const auto eig = eigen_decompose(d);
    ascend(eig.vectors.col(0));
    ascend(eig.vectors.col(dim - 1));
  }
  const int restarts = std::max(1, options.restarts);
  for (int r = 0; r < restarts; ++r) ascend(random_unit_vector(dim, rng));
  DistanceResult out;
  out.exact = false;
  out.value = std::max(best_value, 0.0);
  out.witness = DensityOperator::pure(best_psi);
  return out;
}

DistanceResult distance(const Observable& e, const Observable& f, PNorm p,
                        const HeuristicOptions& options) {
  if (has_exact_evaluator(e, p)) return d_p_exact(e, f, p);
  return d_p_heuristic(e, f, p, options);
}

DeltaFunction delta_function(PNorm p) {
  return [p](std::span<const double> mu, std::span<const double> nu) { return delta_p(mu, nu, p); };
}

PropertyReport check_joint_convexity(const DeltaFunction& delta, std::size_t outcomes,
                                     std::size_t trials, std::uint64_t seed, double slack) {
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  PropertyReport report;
  for (std::size_t k = 0; k < trials; ++k) {
    const double lambda = unit(rng);
    const auto mu1 = random_distribution(outcomes, rng);
    const auto mu2 = random_distribution(outcomes, rng);
    const auto nu1 = random_distribution(outcomes, rng);
    const auto nu2 = random_distribution(outcomes, rng);
    std::vector<double> mu(outcomes), nu(outcomes);
    for (std::size_t i = 0; i < outcomes; ++i) {
      mu[i] = lambda * mu1[i] + (1.0 - lambda) * mu2[i];
      nu[i] = lambda * nu1[i] + (1.0 - lambda) * nu2[i];
    }
    const double lhs = delta(nu, mu);
    const double rhs = lambda * delta(nu1, mu1) + (1.0 - lambda) * delta(nu2, mu2);
    ++report.trials;
    const double excess = lhs - rhs;
    report.worst_excess = std::max(report.worst_excess, excess);
    if (excess > slack) ++report.violations;
  }
  return report;
}

PropertyReport check_action_compatibility(const DeltaFunction& delta, const OutcomeAction& action,
                                          std::size_t trials, std::uint64_t seed, double slack) {
  Rng rng(seed);
  const std::size_t n = action.outcomes().size();
  PropertyReport report;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto mu = random_distribution(n, rng);
    const auto nu = random_distribution(n, rng);
    const double base = delta(mu, nu);
    for (std::size_t g = 0; g < action.group().order(); ++g) {
      std::vector<double> mu_g(n), nu_g(n);
      for (std::size_t x = 0; x < n; ++x) {
        mu_g[x] = mu[action.apply(g, x)];
        nu_g[x] = nu[action.apply(g, x)];
      }
      const double excess = std::abs(delta(mu_g, nu_g) - base);
      ++report.trials;
      report.worst_excess = std::max(report.worst_excess, excess);
      if (excess > slack) ++report.violations;
    }
  }
  return report;
}

}  // namespace covmur
