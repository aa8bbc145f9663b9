#include "covmur/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "covmur/error_dilation.hpp"
#include "covmur/fourier_region.hpp"
#include "covmur/kernels.hpp"
#include "covmur/pauli_region.hpp"

namespace covmur {
namespace {

class Collector {
 public:
  Collector(VerificationReport& report, std::string module)
      : report_(report), module_(std::move(module)) {}

  // passes when measured <= tolerance
  void add(std::string name, double tolerance, double measured) {
    report_.checks.push_back({module_, std::move(name), tolerance, measured,
                              std::isfinite(measured) && measured <= tolerance});
  }

 private:
  VerificationReport& report_;
  std::string module_;
};

double max_of(double a, double b) { return std::isnan(b) ? b : std::max(a, b); }

std::vector<CovarianceTriple> joint_triples(std::vector<std::vector<CovarianceTriple>>* margins) {
  std::vector<CovarianceTriple> joints;
  const auto pauli = pauli::make_setup();
  joints.push_back(pauli.joint_triple);
  margins->push_back({pauli.margin_triples.begin(), pauli.margin_triples.end()});
  for (int n = 2; n <= 4; ++n) {
    const auto setup = fourier::phase_setup(fourier::FourierPair(n));
    joints.push_back(setup.joint_triple);
    margins->push_back({setup.margin_triples.begin(), setup.margin_triples.end()});
  }
  return joints;
}

void verify_linalg(VerificationReport& report, Rng& rng) {
  Collector c(report, "linalg");
  double recon = 0.0, unitary_spectrum = 0.0, kernels = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 2 + trial % 5;
    const HermitianOperator h = random_hermitian(dim, rng);
    const auto eig = eigen_decompose(h);
    Eigen::VectorXd vals = Eigen::Map<const Eigen::VectorXd>(eig.values.data(), dim);
    const ComplexMatrix rebuilt = eig.vectors * vals.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
    recon = max_of(recon, max_abs_diff(rebuilt, h.matrix()));

    const ComplexMatrix u = random_unitary(dim, rng);
    const auto before = eigenvalues(h);
    const auto after = eigenvalues(conjugate(h, u, trial % 2 == 1));
    for (int i = 0; i < dim; ++i) unitary_spectrum = max_of(unitary_spectrum, std::abs(before[i] - after[i]));

    const ComplexMatrix a = random_unitary(dim, rng), b = random_hermitian(dim, rng).matrix();
    ComplexMatrix ref(dim, dim), fast(dim, dim);
    kernels::scalar().gemm(dim, a.data(), b.data(), ref.data());
    kernels::active().gemm(dim, a.data(), b.data(), fast.data());
    kernels = max_of(kernels, (ref - fast).cwiseAbs().maxCoeff());
  }
  c.add("eigendecomposition_reconstruction", 1e-12, recon);
  c.add("wigner_conjugation_preserves_spectrum", 1e-12, unitary_spectrum);
  c.add("active_kernels_match_scalar", 1e-13, kernels);
}

void verify_observables(VerificationReport& report, Rng& rng) {
  Collector c(report, "observables");
  double validity = 0.0, margins = 0.0, born = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int dim = 2 + trial % 3;
    const OutcomeSet outcomes = OutcomeSet::range(2 + trial % 4);
    const Observable e = random_observable(outcomes, dim, rng);
    const ValidationReport r = validate(e);
    validity = max_of(validity, std::max(r.worst_positivity_defect(), r.normalisation_defect));

    const auto p = born_distribution(e, random_density(dim, rng));
    double total = 0.0;
    for (double x : p) total += x;
    born = max_of(born, std::abs(total - 1.0));

    // commuting factors: two sharp observables diagonal in a shared basis
    const ComplexMatrix basis = random_unitary(dim, rng);
    const Observable s = sharp_observable(OutcomeSet::range(dim), basis);
    const std::array<Observable, 2> factors{s, s};
    const Observable joint = commuting_product_joint(factors);
    margins = max_of(margins, max_effect_difference(margin(joint, 0), s));
    margins = max_of(margins, max_effect_difference(margin(joint, 1), s));
  }
  c.add("random_observable_validity", 1e-9, validity);
  c.add("born_distribution_normalised", 1e-12, born);
  c.add("commuting_joint_margins", 1e-12, margins);
}

void verify_symmetry(VerificationReport& report, Rng& rng) {
  Collector c(report, "symmetry");
  std::vector<std::vector<CovarianceTriple>> margin_triples;
  const auto joints = joint_triples(&margin_triples);
  double validity = 0.0, idempotence = 0.0, linearity = 0.0, covariance = 0.0, contraction = 0.0,
         square = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t t = static_cast<std::size_t>(trial) % joints.size();
    const CovarianceTriple& triple = joints[t];
    const OutcomeSet& omega = triple.action().outcomes();
    const int dim = triple.representation().dim();

    const Observable j = random_observable(omega, dim, rng);
    const Observable cj = covariantise(triple, j);
    const ValidationReport r = validate(cj);
    validity = max_of(validity, std::max(r.worst_positivity_defect(), r.normalisation_defect));
    covariance = max_of(covariance, check_covariance(triple, cj).max_defect);

    const Observable x = random_operator_map(omega, dim, rng);
    const Observable y = random_operator_map(omega, dim, rng);
    const Observable cx = covariantise_general(triple, x);
    idempotence = max_of(idempotence, max_effect_difference(covariantise_general(triple, cx), cx));
    contraction = max_of(contraction, observable_norm(cx) - observable_norm(x));

    const double alpha = 0.7, beta = -1.3;
    std::vector<HermitianOperator> combo;
    for (std::size_t w = 0; w < omega.size(); ++w) combo.push_back(x.effect(w) * alpha + y.effect(w) * beta);
    const Observable lhs = covariantise_general(triple, Observable(omega, combo));
    const Observable cy = covariantise_general(triple, y);
    std::vector<HermitianOperator> rhs;
    for (std::size_t w = 0; w < omega.size(); ++w) rhs.push_back(cx.effect(w) * alpha + cy.effect(w) * beta);
    linearity = max_of(linearity, max_effect_difference(lhs, Observable(omega, rhs)));

    for (std::size_t axis = 0; axis < omega.num_factors(); ++axis) {
      const Observable left = margin(cj, axis);
      const Observable right = covariantise(margin_triples[t][axis], margin(j, axis));
      square = max_of(square, max_effect_difference(left, right));
    }
  }
  c.add("covariantised_observable_is_valid", 1e-9, validity);
  c.add("covariantised_observable_is_covariant", 1e-10, covariance);
  c.add("idempotence", 1e-11, idempotence);
  c.add("linearity", 1e-11, linearity);
  c.add("norm_contraction_excess", 1e-12, contraction);
  c.add("margin_commutes_with_covariantisation", 1e-11, square);
}

void verify_metrics(VerificationReport& report, Rng& rng, std::uint64_t seed) {
  Collector c(report, "metrics");
  const std::array<PNorm, 4> norms{PNorm::finite(1.0), PNorm::finite(2.0), PNorm::finite(3.5),
                                   PNorm::infinity()};
  double convexity = 0.0, compat = 0.0;
  const auto pauli = pauli::make_setup();
  for (PNorm p : norms) {
    const auto conv = check_joint_convexity(delta_function(p), 5, 200, seed);
    convexity = std::max(convexity, conv.worst_excess);
    const auto ac = check_action_compatibility(delta_function(p), pauli.joint_triple.action(), 200, seed);
    compat = std::max(compat, ac.worst_excess);
  }
  c.add("delta_joint_convexity_excess", 1e-10, convexity);
  c.add("delta_action_compatibility_defect", 1e-12, compat);

  double heuristic_gap = 0.0, heuristic_excess = 0.0, nonincrease = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const PNorm p = norms[static_cast<std::size_t>(trial) % norms.size()];
    const Observable e = random_observable(pauli::sign_outcomes(), 2, rng);
    const Observable f = random_observable(pauli::sign_outcomes(), 2, rng);
    HeuristicOptions opts;
    opts.seed = seed + static_cast<std::uint64_t>(trial);
    opts.restarts = 8;
    const double exact = d_p_exact_two_outcome(e, f, p).value;
    const double heur = d_p_heuristic(e, f, p, opts).value;
    heuristic_gap = max_of(heuristic_gap, exact - heur);
    heuristic_excess = max_of(heuristic_excess, heur - exact);

    const Observable j = random_observable(pauli.joint_triple.action().outcomes(), 2, rng);
    const Observable cj = covariantise(pauli.joint_triple, j);
    for (std::size_t axis = 0; axis < 3; ++axis) {
      const double before = d_p_exact_two_outcome(pauli.targets[axis], margin(j, axis), p).value;
      const double after = d_p_exact_two_outcome(pauli.targets[axis], margin(cj, axis), p).value;
      nonincrease = max_of(nonincrease, after - before);
    }
  }
  c.add("heuristic_reaches_exact_two_outcome", 1e-7, heuristic_gap);
  c.add("heuristic_never_exceeds_exact", 1e-10, heuristic_excess);
  c.add("covariantisation_error_increase", 1e-9, nonincrease);
}

void verify_pauli(VerificationReport& report, Rng& rng) {
  Collector c(report, "pauli");
  for (PNorm p : {PNorm::finite(1.0), PNorm::finite(2.0), PNorm::infinity()}) {
    pauli::SweepOptions opts;
    opts.samples = 16;
    const RegionBoundary b = pauli::boundary_sweep(p, opts);
    for (const auto& check : b.checks) {
      double worst = 0.0;
      for (double v : check.values) worst = max_of(worst, std::abs(v));
      c.add(check.name + "_p" + p.to_string(), check.tolerance, worst);
    }
    const double r = pauli::sphere_radius(p);
    double tangency = 0.0;
    for (std::size_t axis = 0; axis < 3; ++axis) {
      pauli::BlochVector j;
      j.j[axis] = 1.0;
      const auto d = pauli::measured_distances(j, pauli::PauliFrame::standard(), p);
      for (std::size_t i = 0; i < 3; ++i) tangency = max_of(tangency, std::abs(d.d[i] - (i == axis ? 0.0 : r)));
    }
    c.add("tangency_points_p" + p.to_string(), 1e-12, tangency);
  }
  // rotated frame
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Quaterniond q(normal(rng), normal(rng), normal(rng), normal(rng));
  const Eigen::Matrix3d rot = q.normalized().toRotationMatrix();
  const pauli::PauliFrame frame = pauli::PauliFrame::from_matrix(rot);
  const auto setup = pauli::make_setup(frame);
  const pauli::BlochVector j{{0.3, -0.5, 0.6}};
  c.add("rotated_frame_joint_covariance", 1e-10,
        check_covariance(setup.joint_triple, pauli::covariant_joint(j, frame)).max_defect);
}

void verify_fourier(VerificationReport& report, Rng& rng, const VerificationOptions& options) {
  Collector c(report, "fourier");
  auto boundary = [&](int n, double d_a) {
    return options.dual_boundary_override ? options.dual_boundary_override(n, d_a)
                                          : fourier::dual_boundary(n, d_a);
  };
  double duality = 0.0, ellipse = 0.0, tangency = 0.0, weyl = 0.0, weak = 0.0, certificate = 0.0,
         charpoly = 0.0, margins = 0.0;
  for (int n = 2; n <= 8; ++n) {
    const double top = 1.0 - 1.0 / n;
    for (int i = 0; i < 33; ++i) {
      const double d_a = i == 32 ? top : top * i / 32.0;
      const double d_b = boundary(n, d_a);
      duality = max_of(duality, std::abs(fourier::primal_witness(n, d_a).value - n * (1.0 - d_b)));
      ellipse = max_of(ellipse, std::abs(fourier::ellipse_residual(n, d_a, d_b)));
      if (const auto cert = fourier::dual_certificate(n, d_a)) {
        certificate = max_of(certificate, std::abs(cert->value - n * (1.0 - d_b)));
        const auto exact = fourier::char_poly_factored(n, cert->y0, cert->y1);
        const auto numeric = fourier::char_poly_numeric(
            trusted_hermitian(fourier::dual_slack_matrix(n, cert->y0, cert->y1)));
        double scale = 0.0;
        for (double x : exact) scale = std::max(scale, std::abs(x));
        for (std::size_t k = 0; k < exact.size(); ++k)
          charpoly = max_of(charpoly, std::abs(exact[k] - numeric[k]) / std::max(scale, 1.0));
      }
    }
    tangency = max_of(tangency, std::abs(boundary(n, 0.0) - top));
    tangency = max_of(tangency, std::abs(boundary(n, top)));

    const fourier::FourierPair pair(n);
    for (int k = 0; k < n; ++k) {
      for (int q = 0; q < n; ++q) {
        // U_k|g> = |g+k> and V_q = diag(e^{2 pi i q g / n}) give U_k V_q = e^{-2 pi i kq/n} V_q U_k
        const double angle = -2.0 * std::numbers::pi * k * q / n;
        const ComplexMatrix lhs = pair.weyl(k, q);
        const ComplexMatrix rhs = std::polar(1.0, angle) * multiply(pair.shift_v(q), pair.shift_u(k));
        weyl = max_of(weyl, max_abs_diff(lhs, rhs));
      }
    }
    for (int trial = 0; trial < 5; ++trial) {
      const DensityOperator tau = random_density(n, rng);
      const Observable joint = fourier::covariant_joint_from_tau(pair, tau);
      const double err_a = d_p_exact_infty(pair.sharp_a(), margin(joint, 0)).value;
      margins = max_of(margins, std::abs(err_a - (1.0 - tau.matrix()(0, 0).real())));
    }
    if (n <= 4) {
      const double d_a = 0.2 * top + 0.1;
      const auto s = fourier::primal_sampler(n, d_a, 500, options.seed + static_cast<std::uint64_t>(n));
      weak = max_of(weak, s.best_value - n * (1.0 - boundary(n, d_a)));
    }
  }
  c.add("strong_duality", 1e-10, duality);
  c.add("dual_certificate_value", 1e-9, certificate);
  c.add("ellipse_residual", 1e-9, ellipse);
  c.add("tangency_points", 1e-12, tangency);
  c.add("weak_duality_excess", 1e-9, weak);
  c.add("weyl_commutation", 1e-12, weyl);
  c.add("margin_error_formula", 1e-12, margins);
  c.add("char_poly_relative", 1e-8, charpoly);
}

void verify_dilation(VerificationReport& report) {
  Collector c(report, "dilation");
  const auto setup = pauli::make_setup();
  const pauli::BlochVector j{{0.6, 0.0, 0.8}};
  const Observable joint = pauli::covariant_joint(j);
  double reach = 0.0, others = 0.0;
  for (PNorm p : {PNorm::infinity(), PNorm::finite(1.0), PNorm::finite(2.0)}) {
    const double current = d_p_exact(setup.targets[0], margin(joint, 0), p).value;
    const double top = p.is_infinite() ? 1.0 : p.max_distance();
    for (int k = 0; k <= 4; ++k) {
      const double v = current + (top - current) * k / 4.0;
      const DilationResult r = dilate_to_error(setup.targets[0], joint, 0, v, p);
      reach = max_of(reach, std::abs(r.achieved - v));
      for (std::size_t axis = 1; axis < 3; ++axis)
        others = max_of(others, max_effect_difference(margin(r.joint, axis), margin(joint, axis)));
    }
  }
  c.add("requested_error_reached", 1e-8, reach);
  c.add("other_margins_unchanged", 1e-14, others);
}

void verify_io(VerificationReport& report, Rng& rng) {
  Collector c(report, "io");
  double roundtrip = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const Observable e = random_observable(pauli::make_setup().joint_triple.action().outcomes(), 2, rng);
    const Observable back = observable_from_json(Json::parse(observable_to_json(e).dump()));
    roundtrip = max_of(roundtrip, max_effect_difference(e, back));
    if (!(back.outcomes() == e.outcomes())) roundtrip = INFINITY;
  }
  c.add("observable_json_roundtrip", 0.0, roundtrip);
  fourier::SweepOptions opts;
  opts.grid = 5;
  const RegionBoundary b = fourier::fourier_boundary_sweep(3, opts);
  const bool same = boundary_from_json(Json::parse(boundary_to_json(b).dump())) == b;
  c.add("boundary_json_roundtrip", 0.0, same ? 0.0 : 1.0);
}

}  // namespace

bool VerificationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

Json VerificationReport::to_json() const {
  Json list = Json::array();
  for (const auto& c : checks) {
    list.push_back({{"module", c.module},
                    {"name", c.name},
                    {"tolerance", c.tolerance},
                    {"measured", std::isfinite(c.measured) ? Json(c.measured) : Json(nullptr)},
                    {"passed", c.passed}});
  }
  return {{"schema", kSchemaVersion}, {"tool", kToolVersion}, {"passed", passed()}, {"checks", list}};
}

const std::vector<std::string>& verification_scopes() {
  static const std::vector<std::string> scopes{"linalg", "observables", "symmetry", "metrics",
                                               "pauli",  "fourier",     "dilation", "io"};
  return scopes;
}

VerificationReport run_verification_suite(const VerificationOptions& options) {
  const auto& scopes = verification_scopes();
  if (options.scope != "all" && std::find(scopes.begin(), scopes.end(), options.scope) == scopes.end())
    fail(ErrorKind::Domain, "unknown verification scope \"" + options.scope + "\"");
  auto wanted = [&](const char* s) { return options.scope == "all" || options.scope == s; };

  VerificationReport report;
  Rng rng(options.seed);
  if (wanted("linalg")) verify_linalg(report, rng);
  if (wanted("observables")) verify_observables(report, rng);
  if (wanted("symmetry")) verify_symmetry(report, rng);
  if (wanted("metrics")) verify_metrics(report, rng, options.seed);
  if (wanted("pauli")) verify_pauli(report, rng);
  if (wanted("fourier")) verify_fourier(report, rng, options);
  if (wanted("dilation")) verify_dilation(report);
  if (wanted("io")) verify_io(report, rng);
  return report;
}

}  // namespace covmur
