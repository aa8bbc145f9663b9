#include "covmur/fourier_region.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "covmur/metrics.hpp"

namespace covmur::fourier {
namespace {

constexpr double kDomainSlack = 1e-12;

void require_dim(int n) {
  if (n < 2) fail(ErrorKind::Domain, "phase-space dimension must be at least 2");
}

int wrap(int x, int n) { return ((x % n) + n) % n; }

cplx root_of_unity(int n, long long k) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k % n) / n;
  return {std::cos(angle), std::sin(angle)};
}

ComplexMatrix make_fourier_basis(int n) {
  ComplexMatrix f(n, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) f(g, h) = norm * root_of_unity(n, static_cast<long long>(g) * h);
  return f;
}

std::vector<double> poly_multiply(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

}  // namespace

FourierPair::FourierPair(int n)
    : n_((require_dim(n), n)),
      basis_(make_fourier_basis(n)),
      a_(sharp_observable(OutcomeSet::range(static_cast<std::size_t>(n)),
                          ComplexMatrix::Identity(n, n))),
      b_(sharp_observable(OutcomeSet::range(static_cast<std::size_t>(n)), basis_)) {}

ComplexMatrix FourierPair::shift_u(int k) const {
  ComplexMatrix u = ComplexMatrix::Zero(n_, n_);
  for (int g = 0; g < n_; ++g) u(wrap(g + k, n_), g) = 1.0;
  return u;
}

ComplexMatrix FourierPair::shift_v(int q) const {
  ComplexMatrix v = ComplexMatrix::Zero(n_, n_);
  for (int g = 0; g < n_; ++g) v(g, g) = root_of_unity(n_, static_cast<long long>(wrap(q, n_)) * g);
  return v;
}

ComplexMatrix FourierPair::weyl(int k, int q) const { return multiply(shift_u(k), shift_v(q)); }

FourierPair build_fourier_pair(int n) { return FourierPair(n); }

SymmetryRepresentation phase_representation(const FourierPair& pair) {
  const int n = pair.dim();
  const std::array<FiniteGroup, 2> factors{FiniteGroup::cyclic(n), FiniteGroup::cyclic(n)};
  FiniteGroup group = product_group(factors);
  std::vector<SymmetryOperation> ops;
  ops.reserve(group.order());
  for (int k = 0; k < n; ++k)
    for (int q = 0; q < n; ++q) ops.push_back({pair.weyl(k, q).adjoint(), false});
  return SymmetryRepresentation(std::move(group), std::move(ops));
}

PhaseSetup phase_setup(const FourierPair& pair) {
  const int n = pair.dim();
  const auto size = static_cast<std::size_t>(n);
  const FiniteGroup zn = FiniteGroup::cyclic(size);
  std::vector<std::vector<std::size_t>> shift(size, std::vector<std::size_t>(size));
  for (std::size_t k = 0; k < size; ++k)
    for (std::size_t g = 0; g < size; ++g) shift[k][g] = (g + k) % size;
  const std::array<OutcomeAction, 2> factors{OutcomeAction(zn, OutcomeSet::range(size), shift),
                                             OutcomeAction(zn, OutcomeSet::range(size), shift)};
  SymmetryRepresentation rep = phase_representation(pair);
  return PhaseSetup{CovarianceTriple(rep, product_action(factors)),
                    {CovarianceTriple(rep, marginal_action(factors, 0)),
                     CovarianceTriple(rep, marginal_action(factors, 1))}};
}

Observable covariant_joint_from_tau(const FourierPair& pair, const DensityOperator& tau) {
  const int n = pair.dim();
  if (tau.dim() != n) fail(ErrorKind::Structural, "tau dimension does not match the phase space");
  const auto size = static_cast<std::size_t>(n);
  OutcomeSet omega = OutcomeSet::product({OutcomeSet::range(size), OutcomeSet::range(size)});
  std::vector<HermitianOperator> effects;
  effects.reserve(omega.size());
  for (int k = 0; k < n; ++k) {
    for (int q = 0; q < n; ++q) {
      const ComplexMatrix w = pair.weyl(k, q);
      effects.push_back(conjugate_unchecked(tau.op(), w.adjoint(), false) * (1.0 / n));
    }
  }
  return Observable(std::move(omega), std::move(effects));
}

std::pair<Observable, Observable> covariant_margins(const FourierPair& pair,
                                                    const DensityOperator& tau) {
  const int n = pair.dim();
  if (tau.dim() != n) fail(ErrorKind::Structural, "tau dimension does not match the phase space");
  const ComplexMatrix& f = pair.fourier_basis();
  const ComplexMatrix tau_fourier = f.adjoint() * tau.matrix() * f;  // <f_r|tau|f_s>
  std::vector<HermitianOperator> c_effects, d_effects;
  for (int g = 0; g < n; ++g) {
    ComplexMatrix c = ComplexMatrix::Zero(n, n);
    ComplexMatrix d = ComplexMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
      const int shifted = wrap(k + g, n);
      c(shifted, shifted) = tau.matrix()(k, k).real();
      d += tau_fourier(k, k).real() * (f.col(shifted) * f.col(shifted).adjoint());
    }
    c_effects.push_back(trusted_hermitian(std::move(c)));
    d_effects.push_back(trusted_hermitian(std::move(d)));
  }
  const OutcomeSet zn = OutcomeSet::range(static_cast<std::size_t>(n));
  return {Observable(zn, std::move(c_effects)), Observable(zn, std::move(d_effects))};
}

double dual_boundary(int n, double d_a) {
  require_dim(n);
  const double tangent = 1.0 - 1.0 / n;
  if (!(d_a >= -kDomainSlack && d_a <= tangent + kDomainSlack)) {
    std::ostringstream msg;
    msg << "d_a = " << d_a << " outside [0, " << tangent << "]";
    fail(ErrorKind::Domain, msg.str());
  }
  if (d_a <= 0.0) return tangent;
  if (d_a >= tangent) return 0.0;
  const double radicand = std::max(0.0, d_a * (1.0 - d_a) * (n - 1));
  const double value = 1.0 - (1.0 + d_a * (n - 2) + 2.0 * std::sqrt(radicand)) / n;
  return std::max(0.0, value);
}

double lower_boundary(int n, double d_a) {
  require_dim(n);
  if (!(d_a >= 0.0 && d_a <= 1.0)) fail(ErrorKind::Domain, "d_a must lie in [0, 1]");
  if (d_a >= 1.0 - 1.0 / n) return 0.0;
  return dual_boundary(n, d_a);
}

bool region_membership(int n, double d_a, double d_b) {
  if (!(d_a >= 0.0 && d_a <= 1.0 && d_b >= 0.0 && d_b <= 1.0)) return false;
  return d_b >= lower_boundary(n, d_a) - 1e-12;
}

double dual_feasibility_threshold(int n, double y0) {
  require_dim(n);
  const double a = n - y0;
  return 0.5 * (a + std::sqrt(a * a + 4.0 * y0 * (n - 1)));
}

bool dual_feasibility_check(int n, double y0, double y1) {
  return y1 >= dual_feasibility_threshold(n, y0);
}

std::optional<DualCertificate> dual_certificate(int n, double d_a) {
  require_dim(n);
  const double tangent = 1.0 - 1.0 / n;
  if (!(d_a >= 0.0 && d_a <= tangent + kDomainSlack))
    fail(ErrorKind::Domain, "d_a outside [0, 1 - 1/n]");
  if (d_a <= 0.0) return std::nullopt;
  const double da = std::min(d_a, tangent);
  // stationary point of (1/2 - d_a) y0 + (n + sqrt((y0+n-2)^2 + 4(n-1)))/2
  const double scale = std::sqrt((n - 1) / (da * (1.0 - da)));
  DualCertificate cert;
  cert.y0 = 2.0 - n + (2.0 * da - 1.0) * scale;
  cert.y1 = dual_feasibility_threshold(n, cert.y0);
  cert.value = (1.0 - da) * cert.y0 + cert.y1;
  return cert;
}

ComplexMatrix dual_slack_matrix(int n, double y0, double y1) {
  require_dim(n);
  ComplexMatrix z = ComplexMatrix::Constant(n, n, cplx(-1.0, 0.0));
  z.diagonal().array() += y1;
  z(0, 0) += y0;
  return z;
}

PrimalWitness primal_witness(int n, double d_a) {
  require_dim(n);
  if (!(d_a >= 0.0 && d_a <= 1.0)) fail(ErrorKind::Domain, "d_a must lie in [0, 1]");
  ComplexVector psi(n);
  psi(0) = std::sqrt(1.0 - d_a);
  for (int k = 1; k < n; ++k) psi(k) = std::sqrt(d_a / (n - 1));
  DensityOperator tau(trusted_hermitian(psi * psi.adjoint()));
  const double value = tau.matrix().sum().real();  // tr(A_n tau)
  return PrimalWitness{std::move(tau), value};
}

namespace {

struct FeasiblePoint {
  ComplexMatrix x;
  double value;
  double violation;
};

// Congruence by diag(s, t, .., t) maps any state with 0 < sigma_00 < 1 onto the
// feasible set {X >= 0, X_00 = 1 - d_a, tr X = 1}.
std::optional<FeasiblePoint> make_feasible(const ComplexMatrix& sigma, double d_a) {
  const int n = static_cast<int>(sigma.rows());
  const double s00 = sigma(0, 0).real();
  const double rest = sigma.trace().real() - s00;
  if (!(s00 > 1e-300) || !(rest > 1e-300)) return std::nullopt;
  const double s = std::sqrt((1.0 - d_a) / s00);
  const double t = std::sqrt(d_a / rest);
  Eigen::VectorXcd diag = Eigen::VectorXcd::Constant(n, cplx(t, 0.0));
  diag(0) = s;
  ComplexMatrix x = diag.asDiagonal() * sigma * diag.asDiagonal();
  x = 0.5 * (x + x.adjoint());
  const double violation =
      std::max(std::abs(x(0, 0).real() - (1.0 - d_a)), std::abs(x.trace().real() - 1.0));
  return FeasiblePoint{std::move(x), 0.0, violation};
}

}  // namespace

SamplerResult primal_sampler(int n, double d_a, std::size_t seeds, std::uint64_t seed,
                             const std::optional<DensityOperator>& anchor) {
  require_dim(n);
  if (!(d_a >= 0.0 && d_a <= 1.0)) fail(ErrorKind::Domain, "d_a must lie in [0, 1]");
  if (seeds == 0) fail(ErrorKind::Domain, "sampler needs at least one seed");
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  SamplerResult out;
  out.best_value = -INFINITY;
  ComplexVector best_psi;

  auto consider = [&](const ComplexMatrix& sigma, const ComplexVector* psi) {
    auto point = make_feasible(sigma, d_a);
    ++out.samples;
    if (!point) return;
    const double value = point->x.sum().real();
    out.worst_constraint_violation = std::max(out.worst_constraint_violation, point->violation);
    if (value > out.best_value) {
      out.best_value = value;
      if (psi != nullptr) best_psi = *psi;
    }
  };

  if (anchor) {
    if (anchor->dim() != n) fail(ErrorKind::Structural, "anchor dimension mismatch");
    consider(anchor->matrix(), nullptr);
  }
  while (out.samples < seeds) {
    const double mode = unit(rng);
    if (best_psi.size() == n && mode < 0.5) {
      // local move around the best pure sample
      const double step = 0.5 * std::pow(unit(rng), 3.0);
      ComplexVector psi = best_psi;
      for (int k = 0; k < n; ++k) psi(k) += step * cplx(normal(rng), normal(rng));
      psi /= psi.norm();
      consider(psi * psi.adjoint(), &psi);
    } else if (mode < 0.85) {
      const ComplexVector psi = random_unit_vector(n, rng);
      consider(psi * psi.adjoint(), &psi);
    } else {
      const int rank = 1 + static_cast<int>(unit(rng) * n) % n;
      consider(random_density(n, rng, rank).matrix(), nullptr);
    }
  }
  return out;
}

double ellipse_residual(int n, double d_a, double d_b) {
  const double nn = static_cast<double>(n);
  return nn * nn * d_a * d_a + nn * nn * d_b * d_b + 2.0 * nn * (nn - 2.0) * d_a * d_b +
         2.0 * nn * (1.0 - nn) * d_a + 2.0 * nn * (1.0 - nn) * d_b + (nn - 1.0) * (nn - 1.0);
}

std::vector<double> char_poly_factored(int n, double y0, double y1) {
  require_dim(n);
  std::vector<double> poly{y1 * y1 + y1 * (y0 - n) + y0 * (1.0 - n), n - y0 - 2.0 * y1, 1.0};
  const std::vector<double> linear{-y1, 1.0};
  for (int i = 0; i < n - 2; ++i) poly = poly_multiply(poly, linear);
  return poly;
}

std::vector<double> char_poly_numeric(const HermitianOperator& m) {
  std::vector<double> poly{1.0};
  for (double lambda : eigenvalues(m)) poly = poly_multiply(poly, {-lambda, 1.0});
  return poly;
}

RegionBoundary fourier_boundary_sweep(int n, const SweepOptions& options) {
  require_dim(n);
  if (options.grid < 2) fail(ErrorKind::Domain, "fourier sweep needs a grid of at least 2 points");
  const FourierPair pair(n);
  const double tangent = 1.0 - 1.0 / n;

  RegionBoundary out;
  out.family = "fourier";
  out.p = "inf";
  out.dim = n;
  out.columns = {"d_a", "d_b", "ellipse_residual", "duality_gap"};
  RegionBoundary::Check ellipse{"ellipse_residual", 1e-9, {}};
  RegionBoundary::Check gap{"duality_gap", 1e-10, {}};
  RegionBoundary::Check margins{"margin_distance_mismatch", 1e-10, {}};
  RegionBoundary::Check joint{"joint_validation_defect", kPositivityTol, {}};

  for (int i = 0; i < options.grid; ++i) {
    const double d_a = i == options.grid - 1 ? tangent : tangent * i / (options.grid - 1);
    const double d_b = dual_boundary(n, d_a);
    const PrimalWitness witness = primal_witness(n, d_a);
    const double residual = ellipse_residual(n, d_a, d_b);
    const double duality_gap = witness.value - n * (1.0 - d_b);

    const Observable j = covariant_joint_from_tau(pair, witness.tau);
    const ValidationReport report = validate(j);
    const double err_a = d_p_exact_infty(pair.sharp_a(), margin(j, 0)).value;
    const double err_b = d_p_exact_infty(pair.sharp_b(), margin(j, 1)).value;

    out.rows.push_back({d_a, d_b, residual, duality_gap});
    ellipse.values.push_back(residual);
    gap.values.push_back(duality_gap);
    margins.values.push_back(std::max(std::abs(err_a - d_a), std::abs(err_b - d_b)));
    joint.values.push_back(std::max(report.worst_positivity_defect(), report.normalisation_defect));
  }
  out.checks = {ellipse, gap, margins, joint};
  return out;
}

}  // namespace covmur::fourier
