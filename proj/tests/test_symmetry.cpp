#include <doctest.h>

#include <array>
#include <cmath>

#include "covmur/fourier_region.hpp"
#include "covmur/pauli_region.hpp"
#include "covmur/random.hpp"
#include "covmur/symmetry.hpp"
#include "oracles.hpp"

using namespace covmur;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no covmur::Error thrown");
  return ErrorKind::Io;
}

}  // namespace

TEST_CASE("finite group construction") {
  const FiniteGroup z3 = FiniteGroup::cyclic(3);
  CHECK(z3.order() == 3);
  CHECK(z3.identity() == 0);
  CHECK(z3.inverse(1) == 2);
  CHECK(z3.multiply(2, 2) == 1);

  CHECK(kind_of([] { FiniteGroup({{0, 1}, {1, 1}}); }) == ErrorKind::InvalidSymmetry);
  // Latin square with identity but 1*1 = 0 in order 5: a loop, not a group
  const std::vector<std::vector<std::size_t>> loop{
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK(kind_of([&] { FiniteGroup{loop}; }) == ErrorKind::InvalidSymmetry);
}

TEST_CASE("product groups") {
  const std::array<FiniteGroup, 1> one{FiniteGroup::cyclic(2)};
  CHECK(product_group(one) == FiniteGroup::cyclic(2));

  const std::array<FiniteGroup, 3> three{FiniteGroup::cyclic(2), FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)};
  const FiniteGroup z2cubed = product_group(three);
  CHECK(z2cubed.order() == 8);
  for (std::size_t g = 0; g < 8; ++g) {
    CHECK(z2cubed.multiply(g, g) == z2cubed.identity());
    for (std::size_t h = 0; h < 8; ++h) CHECK(z2cubed.multiply(g, h) == z2cubed.multiply(h, g));
  }
  const std::array<FiniteGroup, 2> z3z3{FiniteGroup::cyclic(3), FiniteGroup::cyclic(3)};
  const FiniteGroup g9 = product_group(z3z3);
  CHECK(g9.order() == 9);
  const std::array<std::size_t, 2> a{1, 2}, b{2, 2};
  const std::array<std::size_t, 2> ab{0, 1};
  CHECK(g9.multiply(g9.compose(a), g9.compose(b)) == g9.compose(ab));
}

TEST_CASE("product and marginal actions") {
  const FiniteGroup z2 = FiniteGroup::cyclic(2);
  const std::vector<std::vector<std::size_t>> flip{{0, 1}, {1, 0}};
  const OutcomeAction f(z2, pauli::sign_outcomes(), flip);

  const std::array<OutcomeAction, 1> single{f};
  const OutcomeAction p1 = product_action(single);
  CHECK(p1.perms() == f.perms());

  const std::array<OutcomeAction, 3> three{f, f, f};
  const OutcomeAction pi = product_action(three);
  const auto& omega = pi.outcomes();
  const auto& g = pi.group();
  // sign-flip: (h,i,j).(k,l,m) = (hk, il, jm) with h = -1 encoded as 1
  for (std::size_t e = 0; e < g.order(); ++e) {
    const auto gc = g.components(e);
    for (std::size_t x = 0; x < omega.size(); ++x) {
      const auto xc = omega.components(x);
      const auto yc = omega.components(pi.apply(e, x));
      for (int i = 0; i < 3; ++i)
        CHECK(pauli::sign_of(yc[i]) == pauli::sign_of(gc[i]) * pauli::sign_of(xc[i]));
    }
  }
  const OutcomeAction mu1 = marginal_action(three, 0);
  for (std::size_t e = 0; e < g.order(); ++e)
    for (std::size_t k = 0; k < 2; ++k)
      CHECK(pauli::sign_of(mu1.apply(e, k)) == pauli::sign_of(g.components(e)[0]) * pauli::sign_of(k));
  CHECK(kind_of([&] { marginal_action(three, 3); }) == ErrorKind::Domain);

  const OutcomeAction bits(z2, OutcomeSet::range(2), flip);
  const std::array<OutcomeAction, 2> two{bits, bits};
  const OutcomeAction pi2 = product_action(two);
  const std::array<std::size_t, 2> g10{1, 0}, x00{0, 0};
  CHECK(pi2.apply(pi2.group().compose(g10), pi2.outcomes().compose(x00)) == pi2.outcomes().compose(g10));

  // Z2 x Z3, axis 1: depends only on the second coordinate
  const FiniteGroup z3 = FiniteGroup::cyclic(3);
  const OutcomeAction shift3(z3, OutcomeSet::range(3), {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  const std::array<OutcomeAction, 2> mixed{bits, shift3};
  const OutcomeAction mu = marginal_action(mixed, 1);
  for (std::size_t e = 0; e < mu.group().order(); ++e) {
    const auto c = mu.group().components(e);
    for (std::size_t x = 0; x < 3; ++x) CHECK(mu.apply(e, x) == (x + c[1]) % 3);
    if (c[1] == 0)
      for (std::size_t x = 0; x < 3; ++x) CHECK(mu.apply(e, x) == x);
  }
}

TEST_CASE("action axioms are enforced") {
  const FiniteGroup z2 = FiniteGroup::cyclic(2);
  CHECK(kind_of([&] { OutcomeAction(z2, OutcomeSet::range(2), {{1, 0}, {1, 0}}); }) == ErrorKind::InvalidSymmetry);
  const FiniteGroup z3 = FiniteGroup::cyclic(3);
  // f_1 = f_2 = swap(0,1) is not a homomorphism from Z3
  CHECK(kind_of([&] { OutcomeAction(z3, OutcomeSet::range(3), {{0, 1, 2}, {1, 0, 2}, {1, 0, 2}}); }) ==
        ErrorKind::InvalidSymmetry);
}

TEST_CASE("representation axioms are enforced") {
  const FiniteGroup z2 = FiniteGroup::cyclic(2);
  ComplexMatrix s = ComplexMatrix::Identity(2, 2);
  s(1, 1) = cplx(0.0, 1.0);  // S^2 = Z is not a phase times I
  CHECK(kind_of([&] { SymmetryRepresentation(z2, {{ComplexMatrix::Identity(2, 2), false}, {s, false}}); }) ==
        ErrorKind::InvalidSymmetry);
  ComplexMatrix bad = pauli_x();
  bad(0, 1) = 1.1;
  CHECK(kind_of([&] { SymmetryRepresentation(z2, {{ComplexMatrix::Identity(2, 2), false}, {bad, false}}); }) ==
        ErrorKind::InvalidSymmetry);
  CHECK(kind_of([&] { SymmetryRepresentation(z2, {{pauli_x(), false}, {pauli_x(), false}}); }) ==
        ErrorKind::InvalidSymmetry);
  // global phases are invisible: i X squares to -I, still a representation of Z2
  const SymmetryRepresentation ok(z2, {{ComplexMatrix::Identity(2, 2), false}, {cplx(0.0, 1.0) * pauli_x(), false}});
  CHECK(ok.axiom_defect() <= 1e-12);
  // complex conjugation alone represents Z2
  const SymmetryRepresentation conj(z2, {{ComplexMatrix::Identity(2, 2), false}, {ComplexMatrix::Identity(2, 2), true}});
  CHECK(conj.dim() == 2);
}

TEST_CASE("composed Wigner pairs agree with successive application") {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int dim = 2 + trial % 3;
    const SymmetryOperation a{random_unitary(dim, rng), trial % 2 == 0};
    const SymmetryOperation b{random_unitary(dim, rng), trial % 3 == 0};
    const SymmetryOperation ab = compose(a, b);
    const HermitianOperator x = random_hermitian(dim, rng);
    CHECK(max_abs_diff(ab.apply(x).matrix(), a.apply(b.apply(x)).matrix()) <= 1e-12);
    CHECK(ab.antiunitary == (a.antiunitary != b.antiunitary));
  }
}

TEST_CASE("check_covariance examples") {
  Rng rng(37);
  const FiniteGroup z2 = FiniteGroup::cyclic(2);
  const CovarianceTriple trivial(SymmetryRepresentation::trivial(z2, 2), OutcomeAction::trivial(z2, pauli::sign_outcomes()));
  CHECK(check_covariance(trivial, random_observable(pauli::sign_outcomes(), 2, rng)).covariant);

  const auto setup = pauli::make_setup();
  for (std::size_t axis = 0; axis < 3; ++axis) {
    const auto c = check_covariance(setup.margin_triples[axis], setup.targets[axis]);
    CHECK(c.covariant);
    CHECK(c.max_defect <= 1e-12);
  }
  // action tied to the b flip while the representation flips a
  const CovarianceTriple swapped(setup.joint_triple.representation(), setup.margin_triples[1].action());
  const auto bad = check_covariance(swapped, setup.targets[0]);
  CHECK_FALSE(bad.covariant);
  CHECK(bad.max_defect == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(kind_of([&] { check_covariance(setup.joint_triple, setup.targets[0]); }) == ErrorKind::Structural);
  const auto fsetup = fourier::phase_setup(fourier::FourierPair(3));
  CHECK(kind_of([&] { check_covariance(fsetup.margin_triples[0], setup.targets[0]); }) == ErrorKind::Structural);
}

TEST_CASE("covariantise examples") {
  Rng rng(41);
  const auto setup = pauli::make_setup();
  for (std::size_t axis = 0; axis < 3; ++axis)
    CHECK(max_effect_difference(covariantise(setup.margin_triples[axis], setup.targets[axis]), setup.targets[axis]) <= 1e-12);

  const pauli::BlochVector j{{0.2, -0.4, 0.7}};
  const Observable joint = pauli::covariant_joint(j);
  CHECK(max_effect_difference(covariantise(setup.joint_triple, joint), joint) <= 1e-12);

  // D(k) = (I + k d.sigma)/2 -> (I + k (d.a) a.sigma)/2, in a rotated frame as well
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix u = random_unitary(3, rng);
    Eigen::Matrix3d r = u.real();
    Eigen::HouseholderQR<Eigen::Matrix3d> qr(r);
    const Eigen::Matrix3d q = qr.householderQ();
    const pauli::PauliFrame frame = pauli::PauliFrame::from_matrix(trial == 0 ? Eigen::Matrix3d::Identity() : q);
    const auto fs = pauli::make_setup(frame);
    std::normal_distribution<double> nd(0.0, 1.0);
    const Eigen::Vector3d d = Eigen::Vector3d(nd(rng), nd(rng), nd(rng)).normalized() * 0.9;
    const Observable dk(pauli::sign_outcomes(), {pauli::bloch_operator(0.5, d), pauli::bloch_operator(0.5, -d)});
    const Eigen::Vector3d a = frame.axis(0);
    const Observable expect(pauli::sign_outcomes(),
                            {pauli::bloch_operator(0.5, d.dot(a) * a), pauli::bloch_operator(0.5, -d.dot(a) * a)});
    const Observable got = covariantise(fs.margin_triples[0], dk);
    CHECK(max_effect_difference(got, expect) <= 1e-12);
    const auto brute = oracle::covariantise(fs.margin_triples[0], dk);
    for (std::size_t w = 0; w < 2; ++w) CHECK(oracle::max_entry(got.effect(w).matrix(), brute[w]) <= 1e-12);
  }

  const FiniteGroup z2 = FiniteGroup::cyclic(2);
  const CovarianceTriple trivial(SymmetryRepresentation::trivial(z2, 3), OutcomeAction::trivial(z2, OutcomeSet::range(4)));
  const Observable any = random_observable(OutcomeSet::range(4), 3, rng);
  CHECK(max_effect_difference(covariantise(trivial, any), any) <= 1e-15);

  const Observable zero(OutcomeSet::range(4), std::vector<HermitianOperator>(4, HermitianOperator::zero(3)));
  CHECK(max_effect_difference(covariantise_general(trivial, zero), zero) == 0.0);
}

TEST_CASE("covariantisation laws on random maps") {
  Rng rng(43);
  std::vector<CovarianceTriple> triples{pauli::make_setup().joint_triple};
  for (int n = 2; n <= 4; ++n) triples.push_back(fourier::phase_setup(fourier::FourierPair(n)).joint_triple);
  for (int trial = 0; trial < 80; ++trial) {
    const CovarianceTriple& t = triples[static_cast<std::size_t>(trial) % triples.size()];
    const OutcomeSet& omega = t.action().outcomes();
    const int dim = t.representation().dim();
    const Observable e = random_observable(omega, dim, rng);
    const Observable ce = covariantise(t, e);
    CHECK(validate(ce).passed());
    CHECK(check_covariance(t, ce).covariant);
    const auto brute = oracle::covariantise(t, e);
    double diff = 0.0;
    for (std::size_t w = 0; w < omega.size(); ++w) diff = std::max(diff, oracle::max_entry(ce.effect(w).matrix(), brute[w]));
    CHECK(diff <= 1e-12);

    const Observable x = random_operator_map(omega, dim, rng);
    const Observable cx = covariantise_general(t, x);
    CHECK(max_effect_difference(covariantise_general(t, cx), cx) <= 1e-11);
    CHECK(observable_norm(cx) <= observable_norm(x) + 1e-12);
  }
}

TEST_CASE("margin commutes with covariantisation") {
  Rng rng(47);
  const auto ps = pauli::make_setup();
  for (int trial = 0; trial < 20; ++trial) {
    const Observable j = random_observable(ps.joint_triple.action().outcomes(), 2, rng);
    const Observable cj = covariantise(ps.joint_triple, j);
    for (std::size_t axis = 0; axis < 3; ++axis)
      CHECK(max_effect_difference(margin(cj, axis), covariantise(ps.margin_triples[axis], margin(j, axis))) <= 1e-11);
  }
  for (int n = 2; n <= 5; ++n) {
    const auto fs = fourier::phase_setup(fourier::FourierPair(n));
    const Observable j = random_observable(fs.joint_triple.action().outcomes(), n, rng);
    const Observable cj = covariantise(fs.joint_triple, j);
    for (std::size_t axis = 0; axis < 2; ++axis)
      CHECK(max_effect_difference(margin(cj, axis), covariantise(fs.margin_triples[axis], margin(j, axis))) <= 1e-11);
  }
}

TEST_CASE("covariantised phase-space joints come from a density operator") {
  Rng rng(53);
  for (int n = 2; n <= 5; ++n) {
    const fourier::FourierPair pair(n);
    const auto fs = fourier::phase_setup(pair);
    const Observable cj = covariantise(fs.joint_triple, random_observable(fs.joint_triple.action().outcomes(), n, rng));
    const DensityOperator tau(trusted_hermitian(n * cj.effect(0).matrix()));
    CHECK(max_effect_difference(fourier::covariant_joint_from_tau(pair, tau), cj) <= 1e-12);
  }
}

TEST_CASE("phase representation") {
  for (int n = 2; n <= 5; ++n) {
    const fourier::FourierPair pair(n);
    const SymmetryRepresentation rep = fourier::phase_representation(pair);
    CHECK(rep.group().order() == static_cast<std::size_t>(n * n));
    CHECK(max_abs_diff(rep.apply(0, HermitianOperator::identity(n)).matrix(), ComplexMatrix::Identity(n, n)) <= 1e-15);
    for (int k = 0; k < n; ++k) {
      for (int q = 0; q < n; ++q) {
        const std::size_t g = static_cast<std::size_t>(k * n + q);
        // R_{k,q}[A] = W A W^dagger with W = U_k V_q
        const ComplexMatrix w = pair.weyl(k, q);
        for (int x = 0; x < n; ++x) {
          const HermitianOperator pa = pair.sharp_a().effect(static_cast<std::size_t>(x));
          const HermitianOperator pb = pair.sharp_b().effect(static_cast<std::size_t>(x));
          CHECK(max_abs_diff(rep.apply(g, pa).matrix(), w * pa.matrix() * w.adjoint()) <= 1e-12);
          CHECK(max_abs_diff(rep.apply(g, pa).matrix(), pair.sharp_a().effect(static_cast<std::size_t>((x + k) % n)).matrix()) <= 1e-12);
          CHECK(max_abs_diff(rep.apply(g, pb).matrix(), pair.sharp_b().effect(static_cast<std::size_t>((x + q) % n)).matrix()) <= 1e-12);
        }
      }
    }
  }
  const fourier::FourierPair p3(3);
  const SymmetryRepresentation rep3 = fourier::phase_representation(p3);
  CHECK(max_abs_diff(rep3.apply(3, p3.sharp_a().effect(0)).matrix(), p3.sharp_a().effect(1).matrix()) <= 1e-15);

  Rng rng(59);
  const fourier::FourierPair p4(4);
  const HermitianOperator rho = random_density(4, rng).op();
  for (int k = 0; k < 4; ++k)
    for (int q = 0; q < 4; ++q) {
      const ComplexMatrix uv = p4.weyl(k, q), vu = p4.shift_v(q) * p4.shift_u(k);
      CHECK(oracle::max_entry(uv * rho.matrix() * uv.adjoint(), vu * rho.matrix() * vu.adjoint()) <= 1e-12);
    }
}
