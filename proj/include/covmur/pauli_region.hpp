#pragma once

// Uncertainty region for three pairwise orthogonal qubit spin observables,
// A(k) = (I + k a.sigma)/2 and likewise for b, c, with outcomes {+1, -1}.
// Joint approximations covariant under independent sign flips of the three
// Bloch axes are parametrised by a vector j in the unit ball.

#include <array>

#include <Eigen/Dense>

#include "covmur/metrics.hpp"
#include "covmur/observables.hpp"
#include "covmur/region.hpp"
#include "covmur/symmetry.hpp"

namespace covmur::pauli {

struct BlochVector {
  std::array<double, 3> j{0.0, 0.0, 0.0};

  double norm() const;
  // Throws Infeasible when |j| > 1 + 1e-12.
  void require_feasible() const;
};

class PauliFrame {
 public:
  // Throws Domain unless a, b, c are orthonormal within 1e-12.
  PauliFrame(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c);

  static PauliFrame standard();
  // Columns of an orthogonal matrix.
  static PauliFrame from_matrix(const Eigen::Matrix3d& m);

  const Eigen::Vector3d& axis(std::size_t i) const { return axes_[i]; }
  Eigen::Matrix3d matrix() const;  // columns a, b, c

 private:
  std::array<Eigen::Vector3d, 3> axes_;
};

struct UncertaintyPoint3 {
  std::array<double, 3> d{0.0, 0.0, 0.0};
};

// {"+1", "-1"}; index 0 is +1.
const OutcomeSet& sign_outcomes();
// sign of outcome index: +1 for 0, -1 for 1
inline double sign_of(std::size_t index) { return index == 0 ? 1.0 : -1.0; }

// scale * (I + v.sigma)
HermitianOperator bloch_operator(double scale, const Eigen::Vector3d& v);

// Wigner pair realising r.sigma -> (O r).sigma for orthogonal O (antiunitary
// when det O = -1).
SymmetryOperation qubit_symmetry(const Eigen::Matrix3d& orthogonal);

// Sharp target for one axis: k -> (I + k axis.sigma)/2.
Observable sharp_target(const Eigen::Vector3d& axis);

/// Group Z2^3 with product action on {+1,-1}^3, marginal actions on each
/// factor, and the representation flipping the Bloch components along a, b, c.
struct PauliSetup {
  PauliFrame frame;
  CovarianceTriple joint_triple;                  // product action pi
  std::array<CovarianceTriple, 3> margin_triples;  // marginal actions mu^i
  std::array<Observable, 3> targets;               // A, B, C
};

PauliSetup make_setup(const PauliFrame& frame = PauliFrame::standard());

// J(k,l,m) = (1/8)(I + (k j1 a + l j2 b + m j3 c).sigma)
Observable covariant_joint(const BlochVector& j, const PauliFrame& frame = PauliFrame::standard());

// 2^{1/p - 1} (1 - j_i), closed form
UncertaintyPoint3 pauli_distances(const BlochVector& j, PNorm p);

// Same quantity measured from first principles: margins of the constructed
// joint against the sharp targets through the exact two-outcome evaluator.
UncertaintyPoint3 measured_distances(const BlochVector& j, const PauliFrame& frame, PNorm p);

// 2^{1/p - 1}
double sphere_radius(PNorm p);

// sum_i (d_i - r)^2 - r^2
double sphere_residual(const UncertaintyPoint3& point, PNorm p);

// Point lies in the cube [0, 2^{1/p}]^3 and above some point of the ball.
bool region_membership(const UncertaintyPoint3& point, PNorm p);

struct SweepOptions {
  int samples = 64;   // azimuthal grid size; polar count is samples (+1 if even, full sphere)
  bool octant = false;  // restrict to j >= 0
  PauliFrame frame = PauliFrame::standard();
};

RegionBoundary boundary_sweep(PNorm p, const SweepOptions& options = {});

}  // namespace covmur::pauli
