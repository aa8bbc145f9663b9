#include "covmur/random.hpp"

#include <cmath>

#include "covmur/observables.hpp"

namespace covmur {
namespace {

ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = cplx(normal(rng), normal(rng));
  return g;
}

}  // namespace

ComplexVector random_unit_vector(int dim, Rng& rng) {
  ComplexVector v = ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

DensityOperator random_pure_state(int dim, Rng& rng) {
  return DensityOperator::pure(random_unit_vector(dim, rng));
}

DensityOperator random_density(int dim, Rng& rng, int rank) {
  if (rank <= 0 || rank > dim) rank = dim;
  const ComplexMatrix x = ginibre(dim, rank, rng);
  ComplexMatrix rho = x * x.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(trusted_hermitian(rho));
}

HermitianOperator random_hermitian(int dim, Rng& rng, double scale) {
  const ComplexMatrix g = ginibre(dim, dim, rng);
  return trusted_hermitian(scale * 0.5 * (g + g.adjoint()));
}

ComplexMatrix random_unitary(int dim, Rng& rng) {
  const ComplexMatrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < dim; ++k) {
    const cplx d = r(k, k);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(k) *= d / mag;
  }
  return q;
}

Observable random_observable(const OutcomeSet& outcomes, int dim, Rng& rng) {
  std::vector<ComplexMatrix> g;
  ComplexMatrix s = ComplexMatrix::Zero(dim, dim);
  for (std::size_t w = 0; w < outcomes.size(); ++w) {
    const ComplexMatrix x = ginibre(dim, dim, rng);
    g.push_back(x * x.adjoint());
    s += g.back();
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(s);
  const ComplexMatrix inv_sqrt = solver.operatorInverseSqrt();
  std::vector<HermitianOperator> effects;
  for (auto& m : g) effects.push_back(trusted_hermitian(inv_sqrt * m * inv_sqrt));
  return Observable(outcomes, std::move(effects));
}

Observable random_operator_map(const OutcomeSet& outcomes, int dim, Rng& rng) {
  std::vector<HermitianOperator> effects;
  for (std::size_t w = 0; w < outcomes.size(); ++w) effects.push_back(random_hermitian(dim, rng));
  return Observable(outcomes, std::move(effects));
}

std::vector<double> random_distribution(std::size_t size, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(size);
  double total = 0.0;
  for (auto& v : p) {
    v = expo(rng);
    total += v;
  }
  for (auto& v : p) v /= total;
  return p;
}

}  // namespace covmur
