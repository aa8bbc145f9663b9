#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "covmur/linalg.hpp"

namespace covmur {

/// Ordered finite set of distinct outcome labels. A product set remembers its
/// factors; its elements are ordered lexicographically with the last factor
/// varying fastest and are labelled "(w1,w2,...)".
class OutcomeSet {
 public:
  OutcomeSet() = default;
  explicit OutcomeSet(std::vector<std::string> labels);

  static OutcomeSet product(std::vector<OutcomeSet> factors);
  // {"0", ..., "n-1"}
  static OutcomeSet range(std::size_t n);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> find(std::string_view label) const;
  std::size_t index_of(std::string_view label) const;  // throws Domain

  bool is_product() const { return !factors_.empty(); }
  std::size_t num_factors() const { return factors_.size(); }
  const OutcomeSet& factor(std::size_t axis) const;

  // Product sets only: per-factor indices of element `index`, and back.
  std::vector<std::size_t> components(std::size_t index) const;
  std::size_t compose(std::span<const std::size_t> components) const;

  bool operator==(const OutcomeSet& other) const;

 private:
  std::vector<std::string> labels_;
  std::vector<OutcomeSet> factors_;
  std::vector<std::size_t> strides_;
};

/// Finite-outcome operator-valued map; a POVM when validate() passes.
///
/// Only structure is enforced at construction (one effect per outcome, equal
/// dimensions), so the same type also carries the general Hermitian-valued
/// maps that the covariantisation map acts on.
class Observable {
 public:
  Observable(OutcomeSet outcomes, std::vector<HermitianOperator> effects);

  const OutcomeSet& outcomes() const { return outcomes_; }
  std::size_t size() const { return effects_.size(); }
  int dim() const { return effects_.front().dim(); }
  const HermitianOperator& effect(std::size_t i) const { return effects_.at(i); }
  const HermitianOperator& effect(std::string_view label) const;
  const std::vector<HermitianOperator>& effects() const { return effects_; }

 private:
  OutcomeSet outcomes_;
  std::vector<HermitianOperator> effects_;
};

struct ValidationReport {
  std::vector<double> min_eigenvalues;  // per effect
  double normalisation_defect = 0.0;    // max entrywise |sum E - I|
  double tolerance = 0.0;
  bool positive = false;
  bool normalised = false;

  bool passed() const { return positive && normalised; }
  double worst_positivity_defect() const;  // max(0, -min eigenvalue)
  std::string summary() const;
};

ValidationReport validate(const Observable& obs, double tol = kPositivityTol);
// Throws Validation with the report summary when validate() fails.
void require_valid(const Observable& obs, double tol = kPositivityTol);

std::vector<double> born_distribution(const Observable& obs, const DensityOperator& rho);

Observable margin(const Observable& joint, std::size_t axis);
Observable mix(const Observable& first, const Observable& second, double lambda);
Observable trivial_observable(const OutcomeSet& outcomes, std::string_view target, int dim);
double observable_norm(const Observable& obs);

// Sharp observable from an orthonormal basis (columns of `basis`).
Observable sharp_observable(const OutcomeSet& outcomes, const ComplexMatrix& basis);

// J(w1..wk) = E1(w1) E2(w2) ... Ek(wk) for pairwise commuting observables.
Observable commuting_product_joint(std::span<const Observable> factors);

// max over outcomes of max entrywise |E(w) - F(w)|
double max_effect_difference(const Observable& first, const Observable& second);

}  // namespace covmur
