#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "covmur/error.hpp"

namespace covmur {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kPositivityTol = 1e-9;
inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kDensityPositivityTol = 1e-10;

/// Dense self-adjoint operator on C^dim.
///
/// Construction rejects matrices whose entrywise Hermiticity defect
/// max|M - M^dagger| exceeds the tolerance; the stored matrix is the exact
/// Hermitian part (M + M^dagger)/2, so downstream spectra are real by
/// construction. The measured defect is kept for reporting.
class HermitianOperator {
 public:
  explicit HermitianOperator(ComplexMatrix m, double tol = kHermiticityTol);

  static HermitianOperator zero(int dim);
  static HermitianOperator identity(int dim);
  static HermitianOperator projector(const ComplexVector& v);  // |v><v| / <v|v>

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  double symmetry_defect() const { return defect_; }
  double trace() const { return m_.trace().real(); }

  HermitianOperator operator+(const HermitianOperator& o) const;
  HermitianOperator operator-(const HermitianOperator& o) const;
  HermitianOperator operator*(double s) const;
  HermitianOperator& operator+=(const HermitianOperator& o);

 private:
  struct Trusted {};
  HermitianOperator(Trusted, ComplexMatrix m) : m_(std::move(m)) {}

  ComplexMatrix m_;
  double defect_ = 0.0;

  friend HermitianOperator trusted_hermitian(ComplexMatrix m);
};

inline HermitianOperator operator*(double s, const HermitianOperator& a) { return a * s; }

// Skips the tolerance check but still symmetrises. For matrices that are
// Hermitian by construction (sums and conjugations of Hermitian operators).
HermitianOperator trusted_hermitian(ComplexMatrix m);

/// Positive semidefinite, unit-trace operator.
class DensityOperator {
 public:
  explicit DensityOperator(HermitianOperator op);

  static DensityOperator pure(const ComplexVector& psi);
  static DensityOperator maximally_mixed(int dim);
  static DensityOperator basis_state(int dim, int k);

  int dim() const { return op_.dim(); }
  const HermitianOperator& op() const { return op_; }
  const ComplexMatrix& matrix() const { return op_.matrix(); }

 private:
  HermitianOperator op_;
};

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns, matching values
};

EigenDecomposition eigen_decompose(const HermitianOperator& op);
std::vector<double> eigenvalues(const HermitianOperator& op);
double min_eigenvalue(const HermitianOperator& op);
double spectral_norm(const HermitianOperator& op);
bool is_positive(const HermitianOperator& op, double tol = kPositivityTol);

// max entrywise |U^dagger U - I|
double unitarity_defect(const ComplexMatrix& u);

/// Wigner-form symmetry operation: returns U^dagger A U, or U^dagger conj(A) U
/// when antiunitary (conj = entrywise complex conjugate in the computational
/// basis). Throws InvalidSymmetry if U is not unitary within kUnitarityTol.
HermitianOperator conjugate(const HermitianOperator& a, const ComplexMatrix& u,
                            bool antiunitary);

// Same as conjugate() without the unitarity check; callers guarantee it.
HermitianOperator conjugate_unchecked(const HermitianOperator& a, const ComplexMatrix& u,
                                      bool antiunitary);

// Kernel-backed product, a * b.
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Standard Pauli matrices.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace covmur
