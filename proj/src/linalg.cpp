#include "covmur/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "covmur/kernels.hpp"

namespace covmur {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidOperator: return "invalid-operator";
    case ErrorKind::InvalidSymmetry: return "invalid-symmetry";
    case ErrorKind::Structural: return "structural";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Infeasible: return "infeasible";
    case ErrorKind::Range: return "range";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

namespace {

double hermiticity_defect(const ComplexMatrix& m) {
  const ComplexMatrix adj = m.adjoint();
  return kernels::active().max_abs_diff(static_cast<std::size_t>(m.size()), m.data(),
                                        adj.data());
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, i) = cplx{h(i, i).real(), 0.0};
  return h;
}

}  // namespace

HermitianOperator::HermitianOperator(ComplexMatrix m, double tol) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << "operator must be a nonempty square matrix, got " << m.rows() << "x" << m.cols();
    fail(ErrorKind::InvalidOperator, msg.str());
  }
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    if (!std::isfinite(m.data()[i].real()) || !std::isfinite(m.data()[i].imag()))
      fail(ErrorKind::InvalidOperator, "operator has non-finite entries");
  }
  defect_ = hermiticity_defect(m);
  if (defect_ > tol) {
    std::ostringstream msg;
    msg << "operator is not Hermitian: defect " << defect_ << " > " << tol;
    fail(ErrorKind::InvalidOperator, msg.str());
  }
  m_ = hermitian_part(m);
}

HermitianOperator trusted_hermitian(ComplexMatrix m) {
  return HermitianOperator(HermitianOperator::Trusted{}, hermitian_part(m));
}

HermitianOperator HermitianOperator::zero(int dim) {
  return trusted_hermitian(ComplexMatrix::Zero(dim, dim));
}

HermitianOperator HermitianOperator::identity(int dim) {
  return trusted_hermitian(ComplexMatrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::projector(const ComplexVector& v) {
  const double nrm2 = v.squaredNorm();
  if (!(nrm2 > 0.0)) fail(ErrorKind::InvalidOperator, "projector onto the zero vector");
  return trusted_hermitian(v * v.adjoint() / nrm2);
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
  if (o.dim() != dim()) fail(ErrorKind::Structural, "dimension mismatch in operator sum");
  return HermitianOperator(Trusted{}, m_ + o.m_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& o) const {
  if (o.dim() != dim()) fail(ErrorKind::Structural, "dimension mismatch in operator difference");
  return HermitianOperator(Trusted{}, m_ - o.m_);
}

HermitianOperator HermitianOperator::operator*(double s) const {
  return HermitianOperator(Trusted{}, m_ * s);
}

HermitianOperator& HermitianOperator::operator+=(const HermitianOperator& o) {
  if (o.dim() != dim()) fail(ErrorKind::Structural, "dimension mismatch in operator sum");
  m_ += o.m_;
  return *this;
}

DensityOperator::DensityOperator(HermitianOperator op) : op_(std::move(op)) {
  const double tr = op_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    std::ostringstream msg;
    msg << "density operator must have unit trace, got " << tr;
    fail(ErrorKind::InvalidOperator, msg.str());
  }
  const double lo = min_eigenvalue(op_);
  if (lo < -kDensityPositivityTol) {
    std::ostringstream msg;
    msg << "density operator is not positive: min eigenvalue " << lo;
    fail(ErrorKind::InvalidOperator, msg.str());
  }
}

DensityOperator DensityOperator::pure(const ComplexVector& psi) {
  return DensityOperator(HermitianOperator::projector(psi));
}

DensityOperator DensityOperator::maximally_mixed(int dim) {
  return DensityOperator(HermitianOperator::identity(dim) * (1.0 / dim));
}

DensityOperator DensityOperator::basis_state(int dim, int k) {
  if (k < 0 || k >= dim) fail(ErrorKind::Domain, "basis index out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v(k) = 1.0;
  return pure(v);
}

EigenDecomposition eigen_decompose(const HermitianOperator& op) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(op.matrix());
  if (solver.info() != Eigen::Success)
    fail(ErrorKind::InvalidOperator, "eigen-decomposition did not converge");
  EigenDecomposition out;
  out.values.assign(solver.eigenvalues().data(),
                    solver.eigenvalues().data() + solver.eigenvalues().size());
  out.vectors = solver.eigenvectors();
  return out;
}

std::vector<double> eigenvalues(const HermitianOperator& op) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(op.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    fail(ErrorKind::InvalidOperator, "eigenvalue computation did not converge");
  return {solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size()};
}

double min_eigenvalue(const HermitianOperator& op) { return eigenvalues(op).front(); }

double spectral_norm(const HermitianOperator& op) {
  const auto ev = eigenvalues(op);
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

bool is_positive(const HermitianOperator& op, double tol) {
  if (tol < 0.0) fail(ErrorKind::Domain, "positivity tolerance must be nonnegative");
  return min_eigenvalue(op) >= -tol;
}

double unitarity_defect(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return INFINITY;
  const ComplexMatrix prod = multiply(u.adjoint(), u);
  const ComplexMatrix id = ComplexMatrix::Identity(u.rows(), u.cols());
  return max_abs_diff(prod, id);
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    fail(ErrorKind::Structural, "multiply expects equal square matrices");
  ComplexMatrix c(a.rows(), a.cols());
  kernels::active().gemm(static_cast<int>(a.rows()), a.data(), b.data(), c.data());
  return c;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorKind::Structural, "max_abs_diff shape mismatch");
  return kernels::active().max_abs_diff(static_cast<std::size_t>(a.size()), a.data(), b.data());
}

HermitianOperator conjugate_unchecked(const HermitianOperator& a, const ComplexMatrix& u,
                                      bool antiunitary) {
  if (u.rows() != a.dim() || u.cols() != a.dim())
    fail(ErrorKind::Structural, "symmetry matrix dimension does not match operator");
  const ComplexMatrix adj = u.adjoint();
  const ComplexMatrix inner =
      antiunitary ? multiply(a.matrix().conjugate(), u) : multiply(a.matrix(), u);
  return trusted_hermitian(multiply(adj, inner));
}

HermitianOperator conjugate(const HermitianOperator& a, const ComplexMatrix& u,
                            bool antiunitary) {
  const double defect = unitarity_defect(u);
  if (!(defect <= kUnitarityTol)) {
    std::ostringstream msg;
    msg << "symmetry matrix is not unitary: defect " << defect;
    fail(ErrorKind::InvalidSymmetry, msg.str());
  }
  return conjugate_unchecked(a, u, antiunitary);
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

}  // namespace covmur
