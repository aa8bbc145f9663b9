#include <doctest.h>

#include <cmath>
#include <numbers>

#include "covmur/fourier_region.hpp"
#include "covmur/metrics.hpp"
#include "oracles.hpp"

using namespace covmur;
using namespace covmur::fourier;

namespace {

double min_eig(const ComplexMatrix& m) { return oracle::eigenvalues(m).front(); }

}  // namespace

TEST_CASE("Fourier pair construction") {
  const FourierPair p2(2);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(p2.fourier_basis()(0, 0).real() - s) <= 1e-15);
  CHECK(std::abs(p2.fourier_basis()(1, 1).real() + s) <= 1e-15);
  CHECK(std::abs(p2.fourier_basis()(1, 0).real() - s) <= 1e-15);

  for (int n = 2; n <= 9; ++n) {
    const FourierPair p(n);
    const ComplexMatrix& f = p.fourier_basis();
    CHECK(oracle::max_entry(f.adjoint() * f, ComplexMatrix::Identity(n, n)) <= 1e-12);
    for (int g = 0; g < n; ++g)
      for (int h = 0; h < n; ++h) CHECK(std::abs(std::norm(f(g, h)) - 1.0 / n) <= 1e-12);
    CHECK(validate(p.sharp_a()).passed());
    CHECK(validate(p.sharp_b()).passed());
  }
  CHECK_THROWS_AS(FourierPair(1), Error);
}

TEST_CASE("shift operators") {
  for (int n = 2; n <= 7; ++n) {
    const FourierPair p(n);
    const ComplexMatrix& f = p.fourier_basis();
    for (int k = 0; k < n; ++k) {
      const ComplexMatrix u = p.shift_u(k), v = p.shift_v(k);
      for (int g = 0; g < n; ++g) {
        CHECK((u.col(g) - ComplexMatrix::Identity(n, n).col((g + k) % n)).norm() <= 1e-12);
        CHECK((v * f.col(g) - f.col((g + k) % n)).norm() <= 1e-12);
      }
    }
  }
  // the definitions above fix U_k V_q = e^{-2 pi i kq/n} V_q U_k
  const FourierPair p5(5);
  const ComplexMatrix lhs = p5.shift_u(1) * p5.shift_v(1);
  const ComplexMatrix vu = p5.shift_v(1) * p5.shift_u(1);
  CHECK(oracle::max_entry(lhs, std::polar(1.0, -2.0 * std::numbers::pi / 5.0) * vu) <= 1e-12);
  CHECK(oracle::max_entry(lhs, std::polar(1.0, 2.0 * std::numbers::pi / 5.0) * vu) > 0.5);
}

TEST_CASE("covariant joints from tau") {
  for (int n = 2; n <= 5; ++n) {
    const FourierPair pair(n);
    const Observable mixed = covariant_joint_from_tau(pair, DensityOperator::maximally_mixed(n));
    for (const auto& e : mixed.effects())
      CHECK(oracle::max_entry(e.matrix(), ComplexMatrix::Identity(n, n) / double(n * n)) <= 1e-15);
  }
  const FourierPair p2(2);
  const Observable j0 = covariant_joint_from_tau(p2, DensityOperator::basis_state(2, 0));
  CHECK(max_effect_difference(margin(j0, 0), p2.sharp_a()) <= 1e-15);
  const Observable j0b = margin(j0, 1);
  for (const auto& e : j0b.effects())
    CHECK(oracle::max_entry(e.matrix(), ComplexMatrix::Identity(2, 2) / 2.0) <= 1e-15);

  Rng rng(1);
  for (int n = 2; n <= 6; ++n) {
    const FourierPair pair(n);
    const auto setup = phase_setup(pair);
    for (int trial = 0; trial < 5; ++trial) {
      const DensityOperator tau = random_density(n, rng, 1 + trial % n);
      const Observable j = covariant_joint_from_tau(pair, tau);
      CHECK(validate(j).passed());
      CHECK(check_covariance(setup.joint_triple, j).covariant);
      CHECK(oracle::max_entry(n * j.effect(0).matrix(), tau.matrix()) <= 1e-14);

      const auto [c, d] = covariant_margins(pair, tau);
      CHECK(max_effect_difference(c, margin(j, 0)) <= 1e-12);
      CHECK(max_effect_difference(d, margin(j, 1)) <= 1e-12);
      for (int g = 0; g < n; ++g) {
        const ComplexMatrix& cg = c.effect(static_cast<std::size_t>(g)).matrix();
        const ComplexMatrix& dg = d.effect(static_cast<std::size_t>(g)).matrix();
        for (int q = 0; q < n; ++q) {
          CHECK(oracle::max_entry(cg * pair.shift_v(q), pair.shift_v(q) * cg) <= 1e-11);
          CHECK(oracle::max_entry(dg * pair.shift_u(q), pair.shift_u(q) * dg) <= 1e-11);
        }
      }
      CHECK(d_p_exact_infty(pair.sharp_a(), c).value == doctest::Approx(1.0 - tau.matrix()(0, 0).real()).epsilon(1e-12));
      const double d0 = (pair.fourier_basis().col(0).adjoint() * tau.matrix() * pair.fourier_basis().col(0))(0, 0).real();
      CHECK(d_p_exact_infty(pair.sharp_b(), d).value == doctest::Approx(1.0 - d0).epsilon(1e-12));
    }
  }
  const auto [c, d] = covariant_margins(p2, DensityOperator::basis_state(2, 0));
  CHECK(max_effect_difference(c, p2.sharp_a()) <= 1e-15);
  CHECK(oracle::max_entry(d.effect(1).matrix(), ComplexMatrix::Identity(2, 2) / 2.0) <= 1e-15);
}

TEST_CASE("dual boundary examples") {
  CHECK(dual_boundary(2, 0.0) == 0.5);
  for (int n = 2; n <= 9; ++n) {
    CHECK(dual_boundary(n, 0.0) == 1.0 - 1.0 / n);
    CHECK(dual_boundary(n, 1.0 - 1.0 / n) == 0.0);
  }
  CHECK(dual_boundary(4, 0.75) == 0.0);
  const double sym = (2.0 - std::sqrt(2.0)) / 4.0;
  CHECK(dual_boundary(2, sym) == doctest::Approx(sym).epsilon(1e-14));
  CHECK(std::abs(sym - 0.146447) < 1e-6);
  CHECK_THROWS_AS(dual_boundary(3, 0.7), Error);
  CHECK_THROWS_AS(dual_boundary(3, -0.1), Error);
  CHECK(lower_boundary(3, 0.9) == 0.0);
  CHECK(region_membership(3, 0.9, 0.0));
  CHECK_FALSE(region_membership(3, 0.0, 0.5));
  CHECK(region_membership(3, 0.0, 2.0 / 3.0));
}

TEST_CASE("dual certificate") {
  CHECK_FALSE(dual_certificate(3, 0.0).has_value());
  for (int n = 2; n <= 8; ++n) {
    for (int i = 1; i <= 20; ++i) {
      const double d_a = (1.0 - 1.0 / n) * i / 20.0;
      const auto cert = dual_certificate(n, d_a);
      REQUIRE(cert.has_value());
      const ComplexMatrix z = dual_slack_matrix(n, cert->y0, cert->y1);
      CHECK(min_eig(z) >= -1e-9 * std::max(1.0, std::abs(cert->y1)));
      CHECK(cert->value == doctest::Approx(n * (1.0 - dual_boundary(n, d_a))).epsilon(1e-12));
      // the certificate is optimal: shifting y0 either way with the smallest
      // feasible y1 does not lower the dual objective
      for (double step : {-1e-3, 1e-3}) {
        const double y0 = cert->y0 + step;
        CHECK((1.0 - d_a) * y0 + dual_feasibility_threshold(n, y0) >= cert->value - 1e-12);
      }
    }
  }
  // at the tangent point y0 = 0, y1 = n
  const auto top = dual_certificate(4, 0.75);
  CHECK(std::abs(top->y0) <= 1e-12);
  CHECK(top->y1 == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("dual feasibility check examples") {
  for (int n = 2; n <= 6; ++n) {
    CHECK(dual_feasibility_check(n, 0.0, n));
    CHECK(std::abs(min_eig(dual_slack_matrix(n, 0.0, n))) <= 1e-12);
    CHECK_FALSE(dual_feasibility_check(n, 0.0, n - 1e-6));
  }
  const double y1 = dual_feasibility_threshold(3, -1.0);
  CHECK(std::abs(y1 - 0.5 * (4.0 + std::sqrt(16.0 - 8.0))) <= 1e-15);
  CHECK(std::abs(min_eig(dual_slack_matrix(3, -1.0, y1))) <= 1e-10);

  Rng rng(2);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 7;
    const double y0 = u(rng), y1 = u(rng) + 5.0;
    CHECK(dual_feasibility_check(n, y0, y1) == (min_eig(dual_slack_matrix(n, y0, y1)) >= 0.0));
  }
}

TEST_CASE("primal witness") {
  const PrimalWitness w0 = primal_witness(3, 0.0);
  CHECK(oracle::max_entry(w0.tau.matrix(), DensityOperator::basis_state(3, 0).matrix()) <= 1e-15);
  CHECK(w0.value == doctest::Approx(1.0));

  const PrimalWitness wt = primal_witness(4, 0.75);
  CHECK(wt.value == doctest::Approx(4.0).epsilon(1e-14));
  for (int g = 0; g < 4; ++g) CHECK(std::abs(wt.tau.matrix()(g, g).real() - 0.25) <= 1e-15);

  const PrimalWitness w3 = primal_witness(3, 0.3);
  const double p = std::pow(std::sqrt(0.7) + std::sqrt(0.6), 2.0);
  CHECK(w3.value == doctest::Approx(p).epsilon(1e-14));
  CHECK(std::abs(w3.value - 2.596148) < 1e-6);
  CHECK(dual_boundary(3, 0.3) == doctest::Approx(1.0 - p / 3.0).epsilon(1e-13));
  CHECK(std::abs(dual_boundary(3, 0.3) - 0.134617) < 1e-6);
  CHECK(std::abs(w3.tau.matrix()(0, 0).real() - 0.7) <= 1e-15);
  CHECK(std::abs(w3.tau.matrix().trace().real() - 1.0) <= 1e-15);
  CHECK_THROWS_AS(primal_witness(3, 1.5), Error);
}

TEST_CASE("primal sampler") {
  for (int n = 2; n <= 4; ++n) {
    const double d_a = 0.25;
    const double dual = n * (1.0 - dual_boundary(n, d_a));
    const SamplerResult r = primal_sampler(n, d_a, 2000, 5);
    CHECK(r.samples == 2000);
    CHECK(r.best_value <= dual + 1e-9);
    CHECK(r.best_value >= dual - 5e-2);
    CHECK(r.worst_constraint_violation <= 1e-12);
  }
  const PrimalWitness w = primal_witness(3, 0.4);
  const SamplerResult anchored = primal_sampler(3, 0.4, 1, 0, w.tau);
  CHECK(anchored.samples == 1);
  CHECK(anchored.best_value == doctest::Approx(w.value).epsilon(1e-14));
  CHECK_THROWS_AS(primal_sampler(3, 0.4, 0), Error);
  CHECK_THROWS_AS(primal_sampler(3, -0.1, 10), Error);

  const SamplerResult a = primal_sampler(3, 0.2, 300, 9), b = primal_sampler(3, 0.2, 300, 9);
  CHECK(a.best_value == b.best_value);
}

TEST_CASE("ellipse residual") {
  for (int n = 2; n <= 9; ++n) CHECK(std::abs(ellipse_residual(n, 0.0, 1.0 - 1.0 / n)) <= 1e-12);
  CHECK(ellipse_residual(2, 0.5, 0.5) == doctest::Approx(-1.0));
}

TEST_CASE("characteristic polynomial") {
  Rng rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 7;
    const double y0 = u(rng), y1 = u(rng);
    const ComplexMatrix z = dual_slack_matrix(n, y0, y1);
    const auto factored = char_poly_factored(n, y0, y1);
    const auto numeric = char_poly_numeric(trusted_hermitian(z));
    const auto reference = oracle::faddeev_leverrier(z);
    REQUIRE(factored.size() == static_cast<std::size_t>(n + 1));
    double scale = 0.0;
    for (double c : factored) scale = std::max(scale, std::abs(c));
    for (std::size_t k = 0; k < factored.size(); ++k) {
      CHECK(std::abs(factored[k] - numeric[k]) <= 1e-8 * scale);
      CHECK(std::abs(factored[k] - reference[k]) <= 1e-8 * scale);
    }
  }
}

TEST_CASE("boundary sweep") {
  for (int n : {2, 3, 4, 5, 6, 9}) {
    const RegionBoundary b = fourier_boundary_sweep(n);
    CHECK(b.rows.size() == 33);
    CHECK(b.all_verified());
    CHECK(b.rows.front()[0] == 0.0);
    CHECK(b.rows.front()[1] == 1.0 - 1.0 / n);
    CHECK(b.rows.back()[0] == 1.0 - 1.0 / n);
    CHECK(b.rows.back()[1] == 0.0);
    for (std::size_t i = 1; i < b.rows.size(); ++i) CHECK(b.rows[i][1] <= b.rows[i - 1][1]);
  }
  SweepOptions opts;
  opts.grid = 3;
  const RegionBoundary b2 = fourier_boundary_sweep(2, opts);
  CHECK(b2.rows[0][0] == 0.0);
  CHECK(b2.rows[0][1] == 0.5);
  CHECK(b2.rows[1][0] == 0.25);
  CHECK(b2.rows[1][1] == doctest::Approx(dual_boundary(2, 0.25)));
  CHECK(b2.rows[2][0] == 0.5);
  CHECK(b2.rows[2][1] == 0.0);
  // n = 2: arc of the circle centred at (1/2, 1/2)
  for (const auto& row : fourier_boundary_sweep(2).rows)
    CHECK(std::hypot(row[0] - 0.5, row[1] - 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  opts.grid = 1;
  CHECK_THROWS_AS(fourier_boundary_sweep(3, opts), Error);
}
