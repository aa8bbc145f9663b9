#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "covmur/linalg.hpp"
#include "covmur/observables.hpp"

namespace covmur {

/// Finite group given by its Cayley table: cayley[g][h] = index of g*h.
///
/// Direct products keep their factor orders so elements can be decoded into
/// tuples; the encoding is lexicographic with the last factor fastest.
class FiniteGroup {
 public:
  // Validates the Latin-square property, associativity and finds the
  // identity and inverses. Throws InvalidSymmetry on failure.
  explicit FiniteGroup(std::vector<std::vector<std::size_t>> cayley);

  static FiniteGroup cyclic(std::size_t n);
  static FiniteGroup trivial() { return cyclic(1); }

  std::size_t order() const { return cayley_.size(); }
  std::size_t multiply(std::size_t g, std::size_t h) const { return cayley_[g][h]; }
  std::size_t identity() const { return identity_; }
  std::size_t inverse(std::size_t g) const { return inverses_[g]; }
  const std::vector<std::vector<std::size_t>>& cayley() const { return cayley_; }

  bool is_product() const { return !factor_orders_.empty(); }
  const std::vector<std::size_t>& factor_orders() const { return factor_orders_; }
  std::vector<std::size_t> components(std::size_t g) const;
  std::size_t compose(std::span<const std::size_t> components) const;

  bool operator==(const FiniteGroup& other) const { return cayley_ == other.cayley_; }

 private:
  std::vector<std::vector<std::size_t>> cayley_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverses_;
  std::vector<std::size_t> factor_orders_;

  friend FiniteGroup product_group(std::span<const FiniteGroup> groups);
};

FiniteGroup product_group(std::span<const FiniteGroup> groups);

/// Action of a group on an outcome set: perms[g][x] = f_g(x).
class OutcomeAction {
 public:
  // Checks f_e = id and f_{gh} = f_g o f_h. Throws InvalidSymmetry.
  OutcomeAction(FiniteGroup group, OutcomeSet outcomes,
                std::vector<std::vector<std::size_t>> perms);

  static OutcomeAction trivial(FiniteGroup group, OutcomeSet outcomes);

  const FiniteGroup& group() const { return group_; }
  const OutcomeSet& outcomes() const { return outcomes_; }
  std::size_t apply(std::size_t g, std::size_t x) const { return perms_[g][x]; }
  const std::vector<std::vector<std::size_t>>& perms() const { return perms_; }

 private:
  FiniteGroup group_;
  OutcomeSet outcomes_;
  std::vector<std::vector<std::size_t>> perms_;
};

OutcomeAction product_action(std::span<const OutcomeAction> actions);
OutcomeAction marginal_action(std::span<const OutcomeAction> actions, std::size_t axis);

/// A Wigner symmetry A -> U^dagger A U, or U^dagger conj(A) U if antiunitary.
struct SymmetryOperation {
  ComplexMatrix unitary;
  bool antiunitary = false;

  HermitianOperator apply(const HermitianOperator& a) const {
    return conjugate_unchecked(a, unitary, antiunitary);
  }
};

/// Group representation by symmetry operations on C^dim.
///
/// Construction checks unitarity of every matrix and the homomorphism
/// property. R_e and R_g o R_h are compared with the expected maps on the
/// Hermitian matrix-unit spanning set; for R_g o R_h this is done through the
/// composed Wigner pair, which agrees with R_{gh} on every Hermitian matrix
/// iff the antiunitary flags match and the matrices agree up to a phase.
class SymmetryRepresentation {
 public:
  SymmetryRepresentation(FiniteGroup group, std::vector<SymmetryOperation> ops);

  static SymmetryRepresentation trivial(FiniteGroup group, int dim);

  const FiniteGroup& group() const { return group_; }
  int dim() const { return dim_; }
  const SymmetryOperation& op(std::size_t g) const { return ops_[g]; }
  const std::vector<SymmetryOperation>& ops() const { return ops_; }
  HermitianOperator apply(std::size_t g, const HermitianOperator& a) const {
    return ops_[g].apply(a);
  }

  // Largest deviation found while checking the axioms at construction.
  double axiom_defect() const { return axiom_defect_; }

 private:
  FiniteGroup group_;
  std::vector<SymmetryOperation> ops_;
  int dim_ = 0;
  double axiom_defect_ = 0.0;
};

// {|i><i|, |i><j|+|j><i|, i(|i><j|-|j><i|)}
std::vector<HermitianOperator> hermitian_spanning_set(int dim);

// Composition of Wigner pairs: (first o second)[A] = first[second[A]].
SymmetryOperation compose(const SymmetryOperation& first, const SymmetryOperation& second);

// Max entrywise difference of two symmetry operations on the spanning set.
double symmetry_distance(const SymmetryOperation& first, const SymmetryOperation& second,
                         int dim);

class CovarianceTriple {
 public:
  CovarianceTriple(SymmetryRepresentation representation, OutcomeAction action);

  const FiniteGroup& group() const { return representation_.group(); }
  const SymmetryRepresentation& representation() const { return representation_; }
  const OutcomeAction& action() const { return action_; }

 private:
  SymmetryRepresentation representation_;
  OutcomeAction action_;
};

struct CovarianceCheck {
  bool covariant = false;
  double max_defect = 0.0;  // max_{g,w} || R_g[E(w)] - E(f_g(w)) ||
};

CovarianceCheck check_covariance(const CovarianceTriple& triple, const Observable& obs,
                                 double tol = 1e-10);

/// C[E](w) = (1/|G|) sum_g R_{g^-1}[E(f_g(w))] on any Hermitian-valued map.
Observable covariantise_general(const CovarianceTriple& triple, const Observable& map);

/// Covariantisation of an observable; the result is a covariant observable.
Observable covariantise(const CovarianceTriple& triple, const Observable& obs);

}  // namespace covmur
