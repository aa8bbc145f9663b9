#include "covmur/pauli_region.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace covmur::pauli {
namespace {

constexpr double kFrameTol = 1e-12;
constexpr double kBallSlack = 1e-12;

}  // namespace

double BlochVector::norm() const { return std::sqrt(j[0] * j[0] + j[1] * j[1] + j[2] * j[2]); }

void BlochVector::require_feasible() const {
  const double n = norm();
  if (!(n <= 1.0 + kBallSlack)) {
    std::ostringstream msg;
    msg << "Bloch vector norm " << n << " exceeds 1: joint would have a negative effect";
    fail(ErrorKind::Infeasible, msg.str());
  }
}

PauliFrame::PauliFrame(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c)
    : axes_{a, b, c} {
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(std::abs(axes_[i].norm() - 1.0) <= kFrameTol))
      fail(ErrorKind::Domain, "frame vectors must have unit length");
    for (std::size_t k = i + 1; k < 3; ++k)
      if (!(std::abs(axes_[i].dot(axes_[k])) <= kFrameTol))
        fail(ErrorKind::Domain, "frame vectors must be pairwise orthogonal");
  }
}

PauliFrame PauliFrame::standard() {
  return PauliFrame(Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(), Eigen::Vector3d::UnitZ());
}

PauliFrame PauliFrame::from_matrix(const Eigen::Matrix3d& m) {
  return PauliFrame(m.col(0), m.col(1), m.col(2));
}

Eigen::Matrix3d PauliFrame::matrix() const {
  Eigen::Matrix3d m;
  m << axes_[0], axes_[1], axes_[2];
  return m;
}

const OutcomeSet& sign_outcomes() {
  static const OutcomeSet set(std::vector<std::string>{"+1", "-1"});
  return set;
}

HermitianOperator bloch_operator(double scale, const Eigen::Vector3d& v) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2) + v.x() * pauli_x() + v.y() * pauli_y() +
                    v.z() * pauli_z();
  return trusted_hermitian(scale * m);
}

SymmetryOperation qubit_symmetry(const Eigen::Matrix3d& orthogonal) {
  const double det = orthogonal.determinant();
  if (!((orthogonal.transpose() * orthogonal - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= 1e-10))
    fail(ErrorKind::InvalidSymmetry, "Bloch map must be orthogonal");
  // complex conjugation in the computational basis flips the sigma_y component
  const Eigen::Matrix3d flip_y = Eigen::Vector3d(1.0, -1.0, 1.0).asDiagonal();
  const bool anti = det < 0.0;
  const Eigen::Matrix3d rotation = anti ? Eigen::Matrix3d(orthogonal * flip_y) : orthogonal;
  const Eigen::Quaterniond q(rotation);
  // W = w I - i v.sigma satisfies W (r.sigma) W^dagger = (R r).sigma; U = W^dagger
  const cplx minus_i(0.0, -1.0);
  ComplexMatrix w = q.w() * ComplexMatrix::Identity(2, 2) +
                    minus_i * (q.x() * pauli_x() + q.y() * pauli_y() + q.z() * pauli_z());
  return {w.adjoint(), anti};
}

Observable sharp_target(const Eigen::Vector3d& axis) {
  return Observable(sign_outcomes(), {bloch_operator(0.5, axis), bloch_operator(0.5, -axis)});
}

PauliSetup make_setup(const PauliFrame& frame) {
  const FiniteGroup z2 = FiniteGroup::cyclic(2);
  const std::vector<std::vector<std::size_t>> flip{{0, 1}, {1, 0}};
  const std::array<OutcomeAction, 3> factors{OutcomeAction(z2, sign_outcomes(), flip),
                                             OutcomeAction(z2, sign_outcomes(), flip),
                                             OutcomeAction(z2, sign_outcomes(), flip)};
  OutcomeAction joint_action = product_action(factors);
  const FiniteGroup& group = joint_action.group();

  const Eigen::Matrix3d f = frame.matrix();
  std::vector<SymmetryOperation> ops;
  for (std::size_t g = 0; g < group.order(); ++g) {
    const auto c = group.components(g);
    const Eigen::Vector3d signs(sign_of(c[0]), sign_of(c[1]), sign_of(c[2]));
    ops.push_back(qubit_symmetry(f * signs.asDiagonal() * f.transpose()));
  }
  SymmetryRepresentation rep(group, std::move(ops));

  return PauliSetup{
      frame,
      CovarianceTriple(rep, joint_action),
      {CovarianceTriple(rep, marginal_action(factors, 0)),
       CovarianceTriple(rep, marginal_action(factors, 1)),
       CovarianceTriple(rep, marginal_action(factors, 2))},
      {sharp_target(frame.axis(0)), sharp_target(frame.axis(1)), sharp_target(frame.axis(2))}};
}

Observable covariant_joint(const BlochVector& j, const PauliFrame& frame) {
  j.require_feasible();
  OutcomeSet omega = OutcomeSet::product({sign_outcomes(), sign_outcomes(), sign_outcomes()});
  std::vector<HermitianOperator> effects;
  for (std::size_t idx = 0; idx < omega.size(); ++idx) {
    const auto c = omega.components(idx);
    const Eigen::Vector3d v = sign_of(c[0]) * j.j[0] * frame.axis(0) +
                              sign_of(c[1]) * j.j[1] * frame.axis(1) +
                              sign_of(c[2]) * j.j[2] * frame.axis(2);
    effects.push_back(bloch_operator(0.125, v));
  }
  return Observable(std::move(omega), std::move(effects));
}

double sphere_radius(PNorm p) { return std::pow(2.0, p.reciprocal() - 1.0); }

UncertaintyPoint3 pauli_distances(const BlochVector& j, PNorm p) {
  j.require_feasible();
  const double r = sphere_radius(p);
  return {{r * (1.0 - j.j[0]), r * (1.0 - j.j[1]), r * (1.0 - j.j[2])}};
}

UncertaintyPoint3 measured_distances(const BlochVector& j, const PauliFrame& frame, PNorm p) {
  const Observable joint = covariant_joint(j, frame);
  UncertaintyPoint3 out;
  for (std::size_t i = 0; i < 3; ++i)
    out.d[i] = d_p_exact_two_outcome(sharp_target(frame.axis(i)), margin(joint, i), p).value;
  return out;
}

double sphere_residual(const UncertaintyPoint3& point, PNorm p) {
  const double r = sphere_radius(p);
  double total = 0.0;
  for (double d : point.d) total += (d - r) * (d - r);
  return total - r * r;
}

bool region_membership(const UncertaintyPoint3& point, PNorm p) {
  const double r = sphere_radius(p);
  const double side = p.max_distance();
  double total = 0.0;
  for (double d : point.d) {
    if (!(d >= 0.0 && d <= side)) return false;
    const double w = std::min(d, r);
    total += (w - r) * (w - r);
  }
  return total <= r * r + 1e-12;
}

RegionBoundary boundary_sweep(PNorm p, const SweepOptions& options) {
  if (options.samples < 8) fail(ErrorKind::Domain, "boundary sweep needs at least 8 samples");
  const int n = options.samples;
  const double pi = std::numbers::pi;
  const double r = sphere_radius(p);
  const PauliSetup setup = make_setup(options.frame);

  RegionBoundary out;
  out.family = "pauli";
  out.p = p.to_string();
  out.dim = 2;
  {
    std::ostringstream rs;
    rs.precision(17);
    rs << r;
    out.extra = {{"r", rs.str()}, {"octant", options.octant ? "true" : "false"}};
  }
  out.columns = {"d_a", "d_b", "d_c"};
  RegionBoundary::Check sphere{"sphere_residual", 1e-12, {}};
  RegionBoundary::Check formula{"formula_vs_exact", 1e-10, {}};
  RegionBoundary::Check positivity{"joint_validation_defect", kPositivityTol, {}};

  const double theta_max = options.octant ? pi / 2.0 : pi;
  // an odd polar count puts the equator on the grid
  const int polar = options.octant || n % 2 == 1 ? n : n + 1;
  for (int it = 0; it < polar; ++it) {
    const double theta = theta_max * it / (polar - 1);
    for (int ip = 0; ip < n; ++ip) {
      const double phi = options.octant ? (pi / 2.0) * ip / (n - 1) : 2.0 * pi * ip / n;
      BlochVector j{{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)}};
      // cos(pi/2) is not exactly zero in floating point; snap so the axis
      // directions and the face tangency points land on the grid exactly
      for (double& c : j.j)
        if (std::abs(c) < 1e-14) c = 0.0;
      const double nrm = j.norm();
      for (double& c : j.j) c /= nrm;
      const UncertaintyPoint3 d = pauli_distances(j, p);
      const Observable joint = covariant_joint(j, setup.frame);
      const ValidationReport report = validate(joint);
      double mismatch = 0.0;
      for (std::size_t i = 0; i < 3; ++i) {
        const double exact = d_p_exact_two_outcome(setup.targets[i], margin(joint, i), p).value;
        mismatch = std::max(mismatch, std::abs(exact - d.d[i]));
      }
      out.rows.push_back({d.d[0], d.d[1], d.d[2]});
      sphere.values.push_back(sphere_residual(d, p));
      formula.values.push_back(mismatch);
      positivity.values.push_back(std::max(report.worst_positivity_defect(), report.normalisation_defect));
    }
  }
  out.checks = {sphere, formula, positivity};
  return out;
}

}  // namespace covmur::pauli
