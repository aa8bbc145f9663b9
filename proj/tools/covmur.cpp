// covmur command-line interface.
//
// Exit codes: 0 success, 1 validation or mathematical failure, 2 usage error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "covmur/error_dilation.hpp"
#include "covmur/fourier_region.hpp"
#include "covmur/io.hpp"
#include "covmur/pauli_region.hpp"
#include "covmur/verification.hpp"

namespace {

using namespace covmur;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

PNorm parse_p(const std::string& text) {
  try {
    return PNorm::parse(text);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") std::cout << text;
  else write_text_file(path, text);
}

struct Settings {
  std::string input, input_b, triple, joint, reference, output, p = "inf", scope = "all",
      format = "csv", example;
  double tol = -1.0, target = 0.0;
  std::uint64_t seed = kDefaultSeed;
  int restarts = 64, samples = 64, dim = 2, grid = 33, axis = 0;
  std::size_t seeds = 10000;
  bool octant = false, verify_primal = false;
  std::vector<double> bloch{0.6, 0.0, 0.8};
  std::optional<double> d_a;
};

int cmd_validate(const Settings& s) {
  const Observable obs = load_operator_map(s.input);
  const ValidationReport report = validate(obs, s.tol > 0 ? s.tol : kPositivityTol);
  Json out{{"valid", report.passed()},
           {"positive", report.positive},
           {"normalised", report.normalised},
           {"min_eigenvalues", report.min_eigenvalues},
           {"normalisation_defect", report.normalisation_defect},
           {"tolerance", report.tolerance},
           {"outcomes", obs.size()},
           {"dim", obs.dim()}};
  std::cout << out.dump(2) << "\n";
  if (!report.passed()) std::cerr << report.summary() << "\n";
  return report.passed() ? kExitOk : kExitFailure;
}

int cmd_covariantise(const Settings& s) {
  const CovarianceTriple triple = load_triple(s.triple);
  const Observable obs = load_operator_map(s.input);
  const Observable out = covariantise_general(triple, obs);
  write_output(s.output, observable_to_json(out).dump(2) + "\n");
  return kExitOk;
}

int cmd_check_covariance(const Settings& s) {
  const CovarianceTriple triple = load_triple(s.triple);
  const Observable obs = load_operator_map(s.input);
  const CovarianceCheck check = check_covariance(triple, obs, s.tol > 0 ? s.tol : 1e-10);
  std::cout << Json{{"covariant", check.covariant}, {"max_defect", check.max_defect}}.dump(2) << "\n";
  return check.covariant ? kExitOk : kExitFailure;
}

int cmd_distance(const Settings& s, PNorm p) {
  const Observable a = load_observable(s.input);
  const Observable b = load_observable(s.input_b);
  HeuristicOptions opts;
  opts.restarts = s.restarts;
  opts.seed = s.seed;
  const DistanceResult r = distance(a, b, p, opts);
  Json out = distance_to_json(r, p);
  out["seed"] = s.seed;
  write_output(s.output, out.dump(2) + "\n");
  return kExitOk;
}

int emit(const Settings& s, RegionBoundary b) {
  b.seed = s.seed;
  const BoundaryFormat format = parse_boundary_format(s.format);
  const std::string text =
      format == BoundaryFormat::Csv ? boundary_to_csv(b) : boundary_to_json(b).dump(2) + "\n";
  write_output(s.output, text);
  if (!b.all_verified()) {
    std::cerr << "warning: some boundary points failed verification\n";
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_region_pauli(const Settings& s, PNorm p) {
  pauli::SweepOptions opts;
  opts.samples = s.samples;
  opts.octant = s.octant;
  return emit(s, pauli::boundary_sweep(p, opts));
}

int cmd_region_fourier(const Settings& s) {
  if (!s.verify_primal) {
    fourier::SweepOptions opts;
    opts.grid = s.grid;
    return emit(s, fourier::fourier_boundary_sweep(s.dim, opts));
  }
  // sampler report at the requested d_a (or along the grid)
  const int n = s.dim;
  const double top = 1.0 - 1.0 / n;
  std::vector<double> points;
  if (s.d_a) points.push_back(*s.d_a);
  else
    for (int i = 0; i < s.grid; ++i) points.push_back(i == s.grid - 1 ? top : top * i / (s.grid - 1));
  Json rows = Json::array();
  bool ok = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d_a = points[i];
    const double dual = n * (1.0 - fourier::dual_boundary(n, d_a));
    const auto r = fourier::primal_sampler(n, d_a, s.seeds, s.seed + i);
    const bool weak = r.best_value <= dual + 1e-9;
    ok = ok && weak;
    rows.push_back({{"d_a", d_a},
                    {"dual_value", dual},
                    {"primal_best", r.best_value},
                    {"gap", dual - r.best_value},
                    {"weak_duality", weak},
                    {"max_constraint_violation", r.worst_constraint_violation},
                    {"samples", r.samples}});
  }
  Json out{{"schema", kSchemaVersion}, {"dim", n}, {"seed", s.seed}, {"seeds", s.seeds}, {"points", rows}};
  write_output(s.output, out.dump(2) + "\n");
  return ok ? kExitOk : kExitFailure;
}

int cmd_dilate(const Settings& s, PNorm p) {
  const Observable joint = load_observable(s.joint);
  const Observable target = load_observable(s.reference);
  DilationOptions opts;
  if (s.tol > 0) opts.tolerance = s.tol;
  const DilationResult r = dilate_to_error(target, joint, static_cast<std::size_t>(s.axis), s.target, p, opts);
  write_output(s.output, observable_to_json(r.joint).dump(2) + "\n");
  std::cerr << Json{{"lambda", r.lambda},
                    {"achieved", r.achieved},
                    {"initial", r.initial},
                    {"maximum", r.maximum},
                    {"iterations", r.iterations},
                    {"collapsed_to", r.collapsed_to}}
                   .dump()
            << "\n";
  return kExitOk;
}

int cmd_verify(const Settings& s) {
  VerificationOptions opts;
  opts.scope = s.scope;
  opts.seed = s.seed;
  const VerificationReport report = run_verification_suite(opts);
  write_output(s.output, report.to_json().dump(2) + "\n");
  for (const auto& c : report.checks)
    if (!c.passed) std::cerr << "FAIL " << c.module << "/" << c.name << " measured " << c.measured
                             << " > tol " << c.tolerance << "\n";
  return report.passed() ? kExitOk : kExitFailure;
}

int cmd_example(const Settings& s) {
  const std::string& name = s.example;
  std::string text;
  if (name == "pauli-triple") {
    text = triple_to_json(pauli::make_setup().joint_triple).dump(2);
  } else if (name.rfind("pauli-margin-triple", 0) == 0) {
    text = triple_to_json(pauli::make_setup().margin_triples.at(static_cast<std::size_t>(s.axis))).dump(2);
  } else if (name == "pauli-joint") {
    if (s.bloch.size() != 3) throw UsageError("--bloch needs three components");
    text = observable_to_json(pauli::covariant_joint({{s.bloch[0], s.bloch[1], s.bloch[2]}})).dump(2);
  } else if (name == "pauli-target") {
    text = observable_to_json(pauli::make_setup().targets.at(static_cast<std::size_t>(s.axis))).dump(2);
  } else if (name == "fourier-triple") {
    text = triple_to_json(fourier::phase_setup(fourier::FourierPair(s.dim)).joint_triple).dump(2);
  } else if (name == "fourier-a") {
    text = observable_to_json(fourier::FourierPair(s.dim).sharp_a()).dump(2);
  } else if (name == "fourier-b") {
    text = observable_to_json(fourier::FourierPair(s.dim).sharp_b()).dump(2);
  } else {
    throw UsageError("unknown example \"" + name +
                     "\" (pauli-triple, pauli-margin-triple, pauli-joint, pauli-target, "
                     "fourier-triple, fourier-a, fourier-b)");
  }
  write_output(s.output, text + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"covmur: covariantisation and measurement-uncertainty regions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  Settings s;

  auto* validate = app.add_subcommand("validate", "check that a JSON observable is a POVM");
  validate->add_option("observable", s.input, "observable JSON")->required();
  validate->add_option("--tol", s.tol, "positivity/normalisation tolerance");

  auto* cov = app.add_subcommand("covariantise", "apply the covariantisation map");
  cov->add_option("--triple", s.triple, "covariance triple JSON")->required();
  cov->add_option("observable", s.input, "observable JSON")->required();
  cov->add_option("-o,--output", s.output, "output path (stdout if omitted)");

  auto* check = app.add_subcommand("check-covariance", "test R_g[E(w)] = E(f_g(w))");
  check->add_option("--triple", s.triple, "covariance triple JSON")->required();
  check->add_option("observable", s.input, "observable JSON")->required();
  check->add_option("--tol", s.tol, "defect tolerance (default 1e-10)");

  auto* dist = app.add_subcommand("distance", "d_p distance between two observables");
  dist->add_option("--p", s.p, "1, 2, ... or inf");
  dist->add_option("a", s.input, "first observable")->required();
  dist->add_option("b", s.input_b, "second observable")->required();
  dist->add_option("--restarts", s.restarts, "heuristic restarts");
  dist->add_option("--seed", s.seed, "RNG seed (default 0)");
  dist->add_option("-o,--output", s.output, "output path");

  auto* region = app.add_subcommand("region", "emit uncertainty region boundary data");
  region->require_subcommand(1);
  auto* rp = region->add_subcommand("pauli", "three orthogonal qubit spin components");
  rp->add_option("--p", s.p, "1, 2, ... or inf");
  rp->add_option("--samples", s.samples, "angular grid size");
  rp->add_flag("--octant", s.octant, "only the octant facing the origin");
  rp->add_option("--format", s.format, "csv or json");
  rp->add_option("--seed", s.seed, "recorded in the header");
  rp->add_option("-o,--output", s.output, "output path");
  auto* rf = region->add_subcommand("fourier", "position and momentum on Z_n, sup-norm error");
  rf->add_option("--dim", s.dim, "n >= 2");
  rf->add_option("--grid", s.grid, "number of d_a points");
  rf->add_option("--format", s.format, "csv or json");
  rf->add_flag("--verify-primal", s.verify_primal, "report the Monte-Carlo primal sampler instead");
  rf->add_option("--seeds", s.seeds, "sampler draws per point");
  rf->add_option("--d-a", s.d_a, "single d_a for --verify-primal");
  rf->add_option("--seed", s.seed, "RNG seed (default 0)");
  rf->add_option("-o,--output", s.output, "output path");

  auto* dil = app.add_subcommand("dilate", "raise one margin's error to a requested value");
  dil->add_option("--joint", s.joint, "joint observable JSON")->required();
  dil->add_option("--reference", s.reference, "target observable for the chosen axis")->required();
  dil->add_option("--axis", s.axis, "margin index")->required();
  dil->add_option("--target", s.target, "requested error")->required();
  dil->add_option("--p", s.p, "1, 2, ... or inf");
  dil->add_option("--tol", s.tol, "bisection tolerance (default 1e-8)");
  dil->add_option("-o,--output", s.output, "output path");

  auto* ver = app.add_subcommand("verify", "run the property checks");
  ver->add_option("--scope", s.scope, "all or a module name");
  ver->add_option("--seed", s.seed, "RNG seed (default 0)");
  ver->add_option("-o,--output", s.output, "report path");

  auto* ex = app.add_subcommand("example", "write a built-in observable or triple");
  ex->add_option("name", s.example, "example name")->required();
  ex->add_option("--dim", s.dim, "dimension for fourier examples");
  ex->add_option("--axis", s.axis, "axis for pauli margins/targets");
  ex->add_option("--bloch", s.bloch, "j vector for pauli-joint")->expected(3);
  ex->add_option("-o,--output", s.output, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(s);
    if (*cov) return cmd_covariantise(s);
    if (*check) return cmd_check_covariance(s);
    if (*dist) return cmd_distance(s, parse_p(s.p));
    if (*rp) return cmd_region_pauli(s, parse_p(s.p));
    if (*rf) return cmd_region_fourier(s);
    if (*dil) return cmd_dilate(s, parse_p(s.p));
    if (*ver) return cmd_verify(s);
    if (*ex) return cmd_example(s);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << to_string(e.kind()) << " error: " << e.what() << "\n";
    return e.kind() == ErrorKind::Domain ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
