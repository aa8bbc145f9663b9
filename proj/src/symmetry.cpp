#include "covmur/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "covmur/kernels.hpp"

namespace covmur {
namespace {

constexpr std::size_t kAssociativityCheckLimit = 64;
constexpr double kRepresentationTol = 1e-10;

bool is_permutation_of_range(const std::vector<std::size_t>& row, std::size_t n) {
  if (row.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (auto v : row) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

}  // namespace

FiniteGroup::FiniteGroup(std::vector<std::vector<std::size_t>> cayley) : cayley_(std::move(cayley)) {
  const std::size_t n = cayley_.size();
  if (n == 0) fail(ErrorKind::InvalidSymmetry, "group must have at least one element");
  for (const auto& row : cayley_)
    if (!is_permutation_of_range(row, n))
      fail(ErrorKind::InvalidSymmetry, "Cayley table rows must be permutations");
  for (std::size_t h = 0; h < n; ++h) {
    std::vector<std::size_t> column(n);
    for (std::size_t g = 0; g < n; ++g) column[g] = cayley_[g][h];
    if (!is_permutation_of_range(column, n))
      fail(ErrorKind::InvalidSymmetry, "Cayley table columns must be permutations");
  }
  bool found = false;
  for (std::size_t e = 0; e < n && !found; ++e) {
    bool is_identity = true;
    for (std::size_t g = 0; g < n && is_identity; ++g)
      is_identity = cayley_[e][g] == g && cayley_[g][e] == g;
    if (is_identity) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) fail(ErrorKind::InvalidSymmetry, "Cayley table has no identity element");
  inverses_.assign(n, 0);
  for (std::size_t g = 0; g < n; ++g) {
    const auto it = std::find(cayley_[g].begin(), cayley_[g].end(), identity_);
    inverses_[g] = static_cast<std::size_t>(it - cayley_[g].begin());
    if (cayley_[inverses_[g]][g] != identity_)
      fail(ErrorKind::InvalidSymmetry, "left and right inverses differ");
  }
  if (n <= kAssociativityCheckLimit) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (cayley_[cayley_[a][b]][c] != cayley_[a][cayley_[b][c]])
            fail(ErrorKind::InvalidSymmetry, "Cayley table is not associative");
  }
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) fail(ErrorKind::Domain, "cyclic group order must be positive");
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) table[g][h] = (g + h) % n;
  return FiniteGroup(std::move(table));
}

std::vector<std::size_t> FiniteGroup::components(std::size_t g) const {
  if (!is_product()) return {g};
  std::vector<std::size_t> c(factor_orders_.size());
  for (std::size_t i = factor_orders_.size(); i-- > 0;) {
    c[i] = g % factor_orders_[i];
    g /= factor_orders_[i];
  }
  return c;
}

std::size_t FiniteGroup::compose(std::span<const std::size_t> components) const {
  if (!is_product()) {
    if (components.size() != 1) fail(ErrorKind::Structural, "group is not a direct product");
    return components[0];
  }
  if (components.size() != factor_orders_.size())
    fail(ErrorKind::Structural, "component tuple does not match the product structure");
  std::size_t g = 0;
  for (std::size_t i = 0; i < components.size(); ++i) g = g * factor_orders_[i] + components[i];
  return g;
}

FiniteGroup product_group(std::span<const FiniteGroup> groups) {
  if (groups.empty()) fail(ErrorKind::Structural, "product of an empty list of groups");
  if (groups.size() == 1) return groups.front();
  std::vector<std::size_t> orders;
  std::size_t total = 1;
  for (const auto& g : groups) {
    orders.push_back(g.order());
    total *= g.order();
  }
  auto decode = [&](std::size_t x) {
    std::vector<std::size_t> c(orders.size());
    for (std::size_t i = orders.size(); i-- > 0;) {
      c[i] = x % orders[i];
      x /= orders[i];
    }
    return c;
  };
  std::vector<std::vector<std::size_t>> table(total, std::vector<std::size_t>(total));
  for (std::size_t a = 0; a < total; ++a) {
    const auto ca = decode(a);
    for (std::size_t b = 0; b < total; ++b) {
      const auto cb = decode(b);
      std::size_t idx = 0;
      for (std::size_t i = 0; i < orders.size(); ++i)
        idx = idx * orders[i] + groups[i].multiply(ca[i], cb[i]);
      table[a][b] = idx;
    }
  }
  FiniteGroup out(std::move(table));
  out.factor_orders_ = std::move(orders);
  return out;
}

OutcomeAction::OutcomeAction(FiniteGroup group, OutcomeSet outcomes,
                             std::vector<std::vector<std::size_t>> perms)
    : group_(std::move(group)), outcomes_(std::move(outcomes)), perms_(std::move(perms)) {
  const std::size_t n = outcomes_.size();
  if (perms_.size() != group_.order())
    fail(ErrorKind::InvalidSymmetry, "action needs one permutation per group element");
  for (const auto& p : perms_)
    if (!is_permutation_of_range(p, n))
      fail(ErrorKind::InvalidSymmetry, "action entries must be permutations of the outcome set");
  for (std::size_t x = 0; x < n; ++x)
    if (perms_[group_.identity()][x] != x)
      fail(ErrorKind::InvalidSymmetry, "identity element must act trivially");
  for (std::size_t g = 0; g < group_.order(); ++g)
    for (std::size_t h = 0; h < group_.order(); ++h)
      for (std::size_t x = 0; x < n; ++x)
        if (perms_[group_.multiply(g, h)][x] != perms_[g][perms_[h][x]])
          fail(ErrorKind::InvalidSymmetry, "action is not a homomorphism (f_gh != f_g o f_h)");
}

OutcomeAction OutcomeAction::trivial(FiniteGroup group, OutcomeSet outcomes) {
  std::vector<std::size_t> id(outcomes.size());
  for (std::size_t x = 0; x < id.size(); ++x) id[x] = x;
  std::vector<std::vector<std::size_t>> perms(group.order(), id);
  return OutcomeAction(std::move(group), std::move(outcomes), std::move(perms));
}

OutcomeAction product_action(std::span<const OutcomeAction> actions) {
  if (actions.empty()) fail(ErrorKind::Structural, "product of an empty list of actions");
  if (actions.size() == 1) return actions.front();
  std::vector<FiniteGroup> groups;
  std::vector<OutcomeSet> sets;
  for (const auto& a : actions) {
    groups.push_back(a.group());
    sets.push_back(a.outcomes());
  }
  FiniteGroup group = product_group(groups);
  OutcomeSet omega = OutcomeSet::product(std::move(sets));
  std::vector<std::vector<std::size_t>> perms(group.order(), std::vector<std::size_t>(omega.size()));
  for (std::size_t g = 0; g < group.order(); ++g) {
    const auto gc = group.components(g);
    for (std::size_t x = 0; x < omega.size(); ++x) {
      auto xc = omega.components(x);
      for (std::size_t i = 0; i < actions.size(); ++i) xc[i] = actions[i].apply(gc[i], xc[i]);
      perms[g][x] = omega.compose(xc);
    }
  }
  return OutcomeAction(std::move(group), std::move(omega), std::move(perms));
}

OutcomeAction marginal_action(std::span<const OutcomeAction> actions, std::size_t axis) {
  if (axis >= actions.size()) fail(ErrorKind::Domain, "marginal axis out of range");
  if (actions.size() == 1) return actions.front();
  std::vector<FiniteGroup> groups;
  for (const auto& a : actions) groups.push_back(a.group());
  FiniteGroup group = product_group(groups);
  const OutcomeAction& factor = actions[axis];
  std::vector<std::vector<std::size_t>> perms(group.order());
  for (std::size_t g = 0; g < group.order(); ++g) perms[g] = factor.perms()[group.components(g)[axis]];
  return OutcomeAction(std::move(group), factor.outcomes(), std::move(perms));
}

std::vector<HermitianOperator> hermitian_spanning_set(int dim) {
  std::vector<HermitianOperator> basis;
  for (int i = 0; i < dim; ++i) {
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    m(i, i) = 1.0;
    basis.push_back(trusted_hermitian(m));
  }
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      ComplexMatrix re = ComplexMatrix::Zero(dim, dim);
      re(i, j) = 1.0;
      re(j, i) = 1.0;
      basis.push_back(trusted_hermitian(re));
      ComplexMatrix im = ComplexMatrix::Zero(dim, dim);
      im(i, j) = cplx(0.0, 1.0);
      im(j, i) = cplx(0.0, -1.0);
      basis.push_back(trusted_hermitian(im));
    }
  }
  return basis;
}

SymmetryOperation compose(const SymmetryOperation& first, const SymmetryOperation& second) {
  const ComplexMatrix inner = first.antiunitary ? ComplexMatrix(second.unitary.conjugate())
                                                : second.unitary;
  return {multiply(inner, first.unitary), first.antiunitary != second.antiunitary};
}

double symmetry_distance(const SymmetryOperation& first, const SymmetryOperation& second,
                         int dim) {
  double worst = 0.0;
  for (const auto& b : hermitian_spanning_set(dim))
    worst = std::max(worst, max_abs_diff(first.apply(b).matrix(), second.apply(b).matrix()));
  return worst;
}

namespace {

// Distance between two Wigner pairs as maps, via the phase-aligned matrices.
double phase_aligned_distance(const SymmetryOperation& a, const SymmetryOperation& b) {
  if (a.unitary.rows() > 1 && a.antiunitary != b.antiunitary) return INFINITY;
  Eigen::Index r = 0, c = 0;
  a.unitary.cwiseAbs().maxCoeff(&r, &c);
  const cplx ref = a.unitary(r, c);
  const cplx other = b.unitary(r, c);
  if (std::abs(other) == 0.0) return INFINITY;
  cplx phase = ref / other;
  phase /= std::abs(phase);
  // |W'^dagger A W' - W^dagger A W| <= 2 |W' - W| for unit-norm A entries
  return 2.0 * max_abs_diff(a.unitary, ComplexMatrix(phase * b.unitary));
}

}  // namespace

SymmetryRepresentation::SymmetryRepresentation(FiniteGroup group,
                                               std::vector<SymmetryOperation> ops)
    : group_(std::move(group)), ops_(std::move(ops)) {
  if (ops_.size() != group_.order())
    fail(ErrorKind::InvalidSymmetry, "representation needs one symmetry per group element");
  dim_ = static_cast<int>(ops_.front().unitary.rows());
  for (const auto& op : ops_) {
    if (op.unitary.rows() != dim_ || op.unitary.cols() != dim_)
      fail(ErrorKind::InvalidSymmetry, "representation matrices have mismatched dimensions");
    const double d = unitarity_defect(op.unitary);
    if (!(d <= kUnitarityTol)) {
      std::ostringstream msg;
      msg << "representation matrix is not unitary: defect " << d;
      fail(ErrorKind::InvalidSymmetry, msg.str());
    }
  }
  const auto& e = ops_[group_.identity()];
  for (const auto& b : hermitian_spanning_set(dim_))
    axiom_defect_ = std::max(axiom_defect_, max_abs_diff(e.apply(b).matrix(), b.matrix()));
  if (axiom_defect_ > kRepresentationTol)
    fail(ErrorKind::InvalidSymmetry, "identity element does not act as the identity map");
  for (std::size_t g = 0; g < group_.order(); ++g) {
    for (std::size_t h = 0; h < group_.order(); ++h) {
      const double d = phase_aligned_distance(ops_[group_.multiply(g, h)], compose(ops_[g], ops_[h]));
      axiom_defect_ = std::max(axiom_defect_, d);
      if (!(d <= kRepresentationTol)) {
        std::ostringstream msg;
        msg << "representation is not a homomorphism at (" << g << "," << h << "): defect " << d;
        fail(ErrorKind::InvalidSymmetry, msg.str());
      }
    }
  }
}

SymmetryRepresentation SymmetryRepresentation::trivial(FiniteGroup group, int dim) {
  std::vector<SymmetryOperation> ops(group.order(),
                                     SymmetryOperation{ComplexMatrix::Identity(dim, dim), false});
  return SymmetryRepresentation(std::move(group), std::move(ops));
}

CovarianceTriple::CovarianceTriple(SymmetryRepresentation representation, OutcomeAction action)
    : representation_(std::move(representation)), action_(std::move(action)) {
  if (!(representation_.group() == action_.group()))
    fail(ErrorKind::InvalidSymmetry, "representation and action must share the same group");
}

namespace {

void check_compatible(const CovarianceTriple& triple, const Observable& obs) {
  if (!(triple.action().outcomes() == obs.outcomes()))
    fail(ErrorKind::Structural, "action does not permute the observable's outcome set");
  if (triple.representation().dim() != obs.dim())
    fail(ErrorKind::Structural, "representation dimension does not match the observable");
}

}  // namespace

CovarianceCheck check_covariance(const CovarianceTriple& triple, const Observable& obs,
                                 double tol) {
  check_compatible(triple, obs);
  CovarianceCheck out;
  const auto& rep = triple.representation();
  const auto& act = triple.action();
  for (std::size_t g = 0; g < triple.group().order(); ++g) {
    for (std::size_t w = 0; w < obs.size(); ++w) {
      const HermitianOperator diff = rep.apply(g, obs.effect(w)) - obs.effect(act.apply(g, w));
      out.max_defect = std::max(out.max_defect, spectral_norm(diff));
    }
  }
  out.covariant = out.max_defect <= tol;
  return out;
}

Observable covariantise_general(const CovarianceTriple& triple, const Observable& map) {
  check_compatible(triple, map);
  const auto& group = triple.group();
  const auto& rep = triple.representation();
  const auto& act = triple.action();
  const auto& k = kernels::active();
  const int dim = map.dim();
  const std::size_t len = static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim);
  const cplx weight(1.0 / static_cast<double>(group.order()), 0.0);
  std::vector<HermitianOperator> effects;
  effects.reserve(map.size());
  for (std::size_t w = 0; w < map.size(); ++w) {
    ComplexMatrix acc = ComplexMatrix::Zero(dim, dim);
    for (std::size_t g = 0; g < group.order(); ++g) {
      const HermitianOperator term = rep.apply(group.inverse(g), map.effect(act.apply(g, w)));
      k.axpy(len, weight, term.matrix().data(), acc.data());
    }
    effects.push_back(trusted_hermitian(std::move(acc)));
  }
  return Observable(map.outcomes(), std::move(effects));
}

Observable covariantise(const CovarianceTriple& triple, const Observable& obs) {
  return covariantise_general(triple, obs);
}

}  // namespace covmur
