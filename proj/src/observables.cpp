#include "covmur/observables.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace covmur {

OutcomeSet::OutcomeSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) fail(ErrorKind::Structural, "outcome set must be nonempty");
  std::set<std::string_view> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) fail(ErrorKind::Structural, "duplicate outcome label '" + l + "'");
  }
}

OutcomeSet OutcomeSet::product(std::vector<OutcomeSet> factors) {
  if (factors.empty()) fail(ErrorKind::Structural, "product of an empty list of outcome sets");
  std::size_t total = 1;
  for (const auto& f : factors) {
    if (f.size() == 0) fail(ErrorKind::Structural, "empty factor in product outcome set");
    total *= f.size();
  }
  std::vector<std::size_t> strides(factors.size());
  std::size_t stride = 1;
  for (std::size_t i = factors.size(); i-- > 0;) {
    strides[i] = stride;
    stride *= factors[i].size();
  }
  std::vector<std::string> labels;
  labels.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::string l = "(";
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) l += ',';
      l += factors[i].label((idx / strides[i]) % factors[i].size());
    }
    l += ')';
    labels.push_back(std::move(l));
  }
  OutcomeSet out(std::move(labels));
  out.factors_ = std::move(factors);
  out.strides_ = std::move(strides);
  return out;
}

OutcomeSet OutcomeSet::range(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return OutcomeSet(std::move(labels));
}

std::optional<std::size_t> OutcomeSet::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

std::size_t OutcomeSet::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  fail(ErrorKind::Domain, "outcome '" + std::string(label) + "' is not in the outcome set");
}

const OutcomeSet& OutcomeSet::factor(std::size_t axis) const {
  if (axis >= factors_.size()) fail(ErrorKind::Domain, "axis out of range for outcome set");
  return factors_[axis];
}

std::vector<std::size_t> OutcomeSet::components(std::size_t index) const {
  if (!is_product()) fail(ErrorKind::Structural, "outcome set is not a Cartesian product");
  std::vector<std::size_t> c(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) c[i] = (index / strides_[i]) % factors_[i].size();
  return c;
}

std::size_t OutcomeSet::compose(std::span<const std::size_t> components) const {
  if (!is_product() || components.size() != factors_.size())
    fail(ErrorKind::Structural, "component tuple does not match the product structure");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (components[i] >= factors_[i].size()) fail(ErrorKind::Domain, "component out of range");
    idx += components[i] * strides_[i];
  }
  return idx;
}

bool OutcomeSet::operator==(const OutcomeSet& other) const {
  return labels_ == other.labels_ && factors_.size() == other.factors_.size();
}

Observable::Observable(OutcomeSet outcomes, std::vector<HermitianOperator> effects)
    : outcomes_(std::move(outcomes)), effects_(std::move(effects)) {
  if (outcomes_.size() == 0) fail(ErrorKind::Structural, "observable needs at least one outcome");
  if (effects_.size() != outcomes_.size()) {
    std::ostringstream msg;
    msg << "observable has " << effects_.size() << " effects for " << outcomes_.size()
        << " outcomes";
    fail(ErrorKind::Structural, msg.str());
  }
  for (const auto& e : effects_) {
    if (e.dim() != effects_.front().dim())
      fail(ErrorKind::Structural, "effects have mismatched dimensions");
  }
}

const HermitianOperator& Observable::effect(std::string_view label) const {
  return effects_[outcomes_.index_of(label)];
}

double ValidationReport::worst_positivity_defect() const {
  double worst = 0.0;
  for (double v : min_eigenvalues) worst = std::max(worst, -v);
  return worst;
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  out << (passed() ? "valid" : "invalid") << ": positivity defect " << worst_positivity_defect()
      << ", normalisation defect " << normalisation_defect << " (tol " << tolerance << ")";
  return out.str();
}

ValidationReport validate(const Observable& obs, double tol) {
  ValidationReport report;
  report.tolerance = tol;
  ComplexMatrix sum = ComplexMatrix::Zero(obs.dim(), obs.dim());
  for (const auto& e : obs.effects()) {
    report.min_eigenvalues.push_back(min_eigenvalue(e));
    sum += e.matrix();
  }
  report.normalisation_defect =
      max_abs_diff(sum, ComplexMatrix::Identity(obs.dim(), obs.dim()));
  report.positive = report.worst_positivity_defect() <= tol;
  report.normalised = report.normalisation_defect <= tol;
  return report;
}

void require_valid(const Observable& obs, double tol) {
  const auto report = validate(obs, tol);
  if (!report.passed()) fail(ErrorKind::Validation, report.summary());
}

std::vector<double> born_distribution(const Observable& obs, const DensityOperator& rho) {
  if (obs.dim() != rho.dim()) fail(ErrorKind::Structural, "state and observable dimensions differ");
  std::vector<double> p;
  p.reserve(obs.size());
  for (const auto& e : obs.effects()) {
    // tr(E rho) for Hermitian E, rho is the real Frobenius product
    double v = (e.matrix().conjugate().cwiseProduct(rho.matrix())).sum().real();
    if (v < 0.0) {
      if (v < -1e-10) {
        std::ostringstream msg;
        msg << "negative outcome probability " << v << ": effect is not positive";
        fail(ErrorKind::Validation, msg.str());
      }
      v = 0.0;
    }
    p.push_back(v);
  }
  return p;
}

Observable margin(const Observable& joint, std::size_t axis) {
  const OutcomeSet& omega = joint.outcomes();
  if (!omega.is_product()) fail(ErrorKind::Structural, "margin requires a Cartesian product outcome set");
  const OutcomeSet& factor = omega.factor(axis);
  std::vector<ComplexMatrix> acc(factor.size(), ComplexMatrix::Zero(joint.dim(), joint.dim()));
  for (std::size_t idx = 0; idx < omega.size(); ++idx) {
    acc[omega.components(idx)[axis]] += joint.effect(idx).matrix();
  }
  std::vector<HermitianOperator> effects;
  for (auto& m : acc) effects.push_back(trusted_hermitian(std::move(m)));
  return Observable(factor, std::move(effects));
}

Observable mix(const Observable& first, const Observable& second, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) fail(ErrorKind::Domain, "mixing weight must lie in [0,1]");
  if (!(first.outcomes() == second.outcomes()))
    fail(ErrorKind::Structural, "mix requires identical outcome sets");
  if (first.dim() != second.dim()) fail(ErrorKind::Structural, "mix requires equal dimensions");
  std::vector<HermitianOperator> effects;
  for (std::size_t i = 0; i < first.size(); ++i) {
    effects.push_back(trusted_hermitian((1.0 - lambda) * first.effect(i).matrix() +
                                        lambda * second.effect(i).matrix()));
  }
  return Observable(first.outcomes(), std::move(effects));
}

Observable trivial_observable(const OutcomeSet& outcomes, std::string_view target, int dim) {
  const std::size_t t = outcomes.index_of(target);
  std::vector<HermitianOperator> effects;
  for (std::size_t i = 0; i < outcomes.size(); ++i)
    effects.push_back(i == t ? HermitianOperator::identity(dim) : HermitianOperator::zero(dim));
  return Observable(outcomes, std::move(effects));
}

double observable_norm(const Observable& obs) {
  double total = 0.0;
  for (const auto& e : obs.effects()) total += spectral_norm(e);
  return total;
}

Observable sharp_observable(const OutcomeSet& outcomes, const ComplexMatrix& basis) {
  if (basis.rows() != basis.cols() || static_cast<std::size_t>(basis.cols()) != outcomes.size())
    fail(ErrorKind::Structural, "sharp observable needs one basis vector per outcome");
  std::vector<HermitianOperator> effects;
  for (Eigen::Index k = 0; k < basis.cols(); ++k)
    effects.push_back(HermitianOperator::projector(basis.col(k)));
  return Observable(outcomes, std::move(effects));
}

Observable commuting_product_joint(std::span<const Observable> factors) {
  if (factors.empty()) fail(ErrorKind::Structural, "product joint needs at least one factor");
  std::vector<OutcomeSet> sets;
  for (const auto& f : factors) {
    if (f.dim() != factors.front().dim()) fail(ErrorKind::Structural, "factor dimensions differ");
    sets.push_back(f.outcomes());
  }
  OutcomeSet omega = OutcomeSet::product(std::move(sets));
  const int dim = factors.front().dim();
  std::vector<HermitianOperator> effects;
  for (std::size_t idx = 0; idx < omega.size(); ++idx) {
    const auto comp = omega.components(idx);
    ComplexMatrix m = ComplexMatrix::Identity(dim, dim);
    for (std::size_t i = 0; i < factors.size(); ++i) m = m * factors[i].effect(comp[i]).matrix();
    // throws when the factors fail to commute
    effects.emplace_back(m, 1e-10);
  }
  return Observable(std::move(omega), std::move(effects));
}

double max_effect_difference(const Observable& first, const Observable& second) {
  if (first.size() != second.size() || first.dim() != second.dim())
    fail(ErrorKind::Structural, "observables have different shapes");
  double worst = 0.0;
  for (std::size_t i = 0; i < first.size(); ++i)
    worst = std::max(worst, max_abs_diff(first.effect(i).matrix(), second.effect(i).matrix()));
  return worst;
}

}  // namespace covmur
