#pragma once

// Finite phase space: the computational basis |g> and the Fourier basis
// |f_h> = n^{-1/2} sum_g e^{2 pi i g h / n} |g> of C^n, sharp observables A
// and B on Z_n, and joint approximations covariant under the Weyl shifts.
//
// The sup-norm uncertainty region reduces to a two-constraint SDP over a
// density operator tau. It is handled here without a general solver: the
// closed-form dual, an explicit optimal primal witness and a Monte-Carlo
// feasible sampler give three independent routes to the same boundary.

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "covmur/observables.hpp"
#include "covmur/random.hpp"
#include "covmur/region.hpp"
#include "covmur/symmetry.hpp"

namespace covmur::fourier {

class FourierPair {
 public:
  explicit FourierPair(int n);

  int dim() const { return n_; }
  // column h is |f_h>
  const ComplexMatrix& fourier_basis() const { return basis_; }
  const Observable& sharp_a() const { return a_; }
  const Observable& sharp_b() const { return b_; }

  // U_k |g> = |g+k>
  ComplexMatrix shift_u(int k) const;
  // V_q |f_h> = |f_{h+q}>, diagonal in the computational basis
  ComplexMatrix shift_v(int q) const;
  // U_k V_q
  ComplexMatrix weyl(int k, int q) const;

 private:
  int n_;
  ComplexMatrix basis_;
  Observable a_;
  Observable b_;
};

FourierPair build_fourier_pair(int n);

struct PhaseSetup {
  CovarianceTriple joint_triple;                 // Z_n x Z_n translating Z_n x Z_n
  std::array<CovarianceTriple, 2> margin_triples;  // translating the A / B outcome
};

// R_{k,q}[rho] = U_k V_q rho V_q^dagger U_k^dagger, group element k*n + q.
SymmetryRepresentation phase_representation(const FourierPair& pair);
PhaseSetup phase_setup(const FourierPair& pair);

// J(k,q) = R_{k,q}[tau] / n on outcomes Z_n x Z_n.
Observable covariant_joint_from_tau(const FourierPair& pair, const DensityOperator& tau);

// Explicit margins C(g) = sum_k |k+g><k+g| <k|tau|k>,
// D(h) = sum_q |f_{q+h}><f_{q+h}| <f_q|tau|f_q>.
std::pair<Observable, Observable> covariant_margins(const FourierPair& pair,
                                                    const DensityOperator& tau);

// d_b^min(d_a) = 1 - (1 + d_a(n-2) + 2 sqrt(d_a(1-d_a)(n-1))) / n
// for d_a in [0, 1 - 1/n]; throws Domain outside.
double dual_boundary(int n, double d_a);

// Lower edge of the region over the full range d_a in [0, 1]: the dual
// boundary up to the tangent point, 0 beyond it.
double lower_boundary(int n, double d_a);

// (d_a, d_b) inside the region (monotone closure of the ellipse section).
bool region_membership(int n, double d_a, double d_b);

struct DualCertificate {
  double y0 = 0.0;
  double y1 = 0.0;
  double value = 0.0;  // (1 - d_a) y0 + y1
};

// Optimal dual point for d_a in (0, 1 - 1/n]; nullopt at d_a = 0 where the
// infimum is approached as y0 -> -inf but not attained.
std::optional<DualCertificate> dual_certificate(int n, double d_a);

// Z = y0 |0><0| + y1 I - A_n, A_n the all-ones matrix.
ComplexMatrix dual_slack_matrix(int n, double y0, double y1);

// Smallest y1 with Z >= 0 for given y0.
double dual_feasibility_threshold(int n, double y0);
bool dual_feasibility_check(int n, double y0, double y1);

struct PrimalWitness {
  DensityOperator tau;
  double value;  // tr(A_n tau)
};

// tau = |psi><psi|, psi_0 = sqrt(1 - d_a), psi_k = sqrt(d_a / (n-1)).
PrimalWitness primal_witness(int n, double d_a);

struct SamplerResult {
  double best_value = 0.0;
  std::size_t samples = 0;
  double worst_constraint_violation = 0.0;  // max over samples of the equality defects
};

// Random feasible X for the primal SDP; returns max tr(A_n X). A feasible
// anchor, when given, is evaluated first.
SamplerResult primal_sampler(int n, double d_a, std::size_t seeds,
                             std::uint64_t seed = kDefaultSeed,
                             const std::optional<DensityOperator>& anchor = std::nullopt);

// n^2 d_a^2 + n^2 d_b^2 + 2n(n-2) d_a d_b + 2n(1-n)(d_a + d_b) + (n-1)^2
double ellipse_residual(int n, double d_a, double d_b);

// Coefficients, constant term first, of the monic polynomial
// (x - y1)^{n-2} [x^2 + x(n - y0 - 2 y1) + (y1^2 + y1(y0 - n) + y0(1 - n))].
std::vector<double> char_poly_factored(int n, double y0, double y1);

// Coefficients of det(xI - M), constant term first, from the spectrum of M.
std::vector<double> char_poly_numeric(const HermitianOperator& m);

struct SweepOptions {
  int grid = 33;
};

RegionBoundary fourier_boundary_sweep(int n, const SweepOptions& options = {});

}  // namespace covmur::fourier
