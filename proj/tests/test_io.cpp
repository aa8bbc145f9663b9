#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "covmur/fourier_region.hpp"
#include "covmur/io.hpp"
#include "covmur/pauli_region.hpp"
#include "covmur/random.hpp"

using namespace covmur;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "covmur_io_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

ErrorKind load_kind(const fs::path& p) {
  try {
    load_observable(p);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("load succeeded");
  return ErrorKind::Io;
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("observable round trip") {
  const Observable z = sharp_observable(pauli::sign_outcomes(), ComplexMatrix::Identity(2, 2));
  const fs::path p = scratch("z.json");
  save_observable(z, p);
  const Observable back = load_observable(p);
  CHECK(back.outcomes() == z.outcomes());
  CHECK(max_effect_difference(back, z) == 0.0);

  Rng rng(1);
  const Observable r = random_observable(OutcomeSet::range(3), 3, rng);
  save_observable(r, p);
  CHECK(max_effect_difference(load_observable(p), r) == 0.0);

  const Observable joint = pauli::covariant_joint({{0.3, 0.2, 0.1}});
  save_observable(joint, p);
  const Observable jb = load_observable(p);
  CHECK(jb.size() == 8);
  CHECK(jb.outcomes().is_product());
  CHECK(jb.outcomes().label(0) == "(+1,+1,+1)");
  CHECK(jb.outcomes().label(7) == "(-1,-1,-1)");
  CHECK(max_effect_difference(jb, joint) == 0.0);
}

TEST_CASE("load errors distinguish parse from validation") {
  const fs::path p = scratch("bad.json");
  write(p, R"({"schema":1,"dim":2,"outcomes":["a","b"],"effects":[[[1,0],[0,1]],[[1,0],[0,1]]]})");
  CHECK(load_kind(p) == ErrorKind::Validation);
  try {
    load_observable(p);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("normalisation defect 1") != std::string::npos);
  }
  CHECK_NOTHROW(load_operator_map(p));

  write(p, R"({"schema":1,"dim":2,"outcomes":["a","b"],"effects":[[[1,[0,1]],[0,0]],[[0,0],[0,1]]]})");
  CHECK(load_kind(p) == ErrorKind::Validation);  // not Hermitian

  write(p, R"({"schema":1,"dim":2,"outcomes":["a","b"],"effects":[[[1,0],[0,1]]]})");
  CHECK(load_kind(p) == ErrorKind::Parse);
  write(p, R"({"schema":2,"dim":2,"outcomes":["a","b"],"effects":[]})");
  CHECK(load_kind(p) == ErrorKind::Parse);
  write(p, R"({"dim":2,"outcomes":["a","b"],"effects":[]})");
  CHECK(load_kind(p) == ErrorKind::Parse);
  write(p, "{not json");
  CHECK(load_kind(p) == ErrorKind::Parse);
  write(p, R"({"schema":1,"dim":2,"outcomes":["a","a"],"effects":[[[1,0],[0,0]],[[0,0],[0,1]]]})");
  CHECK(load_kind(p) == ErrorKind::Parse);
  CHECK(load_kind(scratch("missing.json")) == ErrorKind::Io);
}

TEST_CASE("triple round trip") {
  const auto setup = pauli::make_setup();
  const fs::path p = scratch("triple.json");
  save_triple(setup.joint_triple, p);
  const CovarianceTriple back = load_triple(p);
  CHECK(back.group() == setup.joint_triple.group());
  CHECK(back.action().perms() == setup.joint_triple.action().perms());
  CHECK(back.action().outcomes() == setup.joint_triple.action().outcomes());
  const Observable joint = pauli::covariant_joint({{0.1, 0.5, -0.3}});
  CHECK(check_covariance(back, joint).covariant);

  Json j = triple_to_json(setup.joint_triple);
  j["group"]["identity"] = 3;
  CHECK_THROWS_AS(triple_from_json(j), Error);
  j = triple_to_json(setup.joint_triple);
  j["representation"]["unitaries"][1][0][0] = Json::array({2.0, 0.0});
  try {
    triple_from_json(j);
    FAIL("expected Validation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Validation);
  }
}

TEST_CASE("boundary emission") {
  fourier::SweepOptions opts;
  opts.grid = 3;
  RegionBoundary b = fourier::fourier_boundary_sweep(2, opts);
  b.seed = 42;
  const std::string csv = boundary_to_csv(b);
  CHECK(csv.find("#family=fourier\n") == 0);
  CHECK(csv.find("#p=inf\n") != std::string::npos);
  CHECK(csv.find("#dim=2\n") != std::string::npos);
  CHECK(csv.find("#seed=42\n") != std::string::npos);
  CHECK(csv.find(std::string("#tool=") + std::string(kToolVersion)) != std::string::npos);
  CHECK(csv.find("\nd_a,d_b,ellipse_residual,duality_gap\n") != std::string::npos);
  CHECK(csv.find("\n0,0.5,") != std::string::npos);
  CHECK(csv.find("\n0.25," + format_double(fourier::dual_boundary(2, 0.25)) + ",") != std::string::npos);
  CHECK(csv.find("\n0.5,0,") != std::string::npos);
  CHECK(format_double(0.1) == "0.10000000000000001");

  const fs::path p = scratch("b.json");
  emit_boundary(b, p, BoundaryFormat::Json);
  CHECK(boundary_from_json(read_json_file(p)) == b);
  const RegionBoundary pb = pauli::boundary_sweep(PNorm::infinity(), {16, true, pauli::PauliFrame::standard()});
  CHECK(boundary_from_json(Json::parse(boundary_to_json(pb).dump())) == pb);

  const fs::path c = scratch("b.csv");
  emit_boundary(b, c);
  CHECK(read(c) == csv);
  CHECK_THROWS_AS(emit_boundary(b, scratch("no/such/dir/x.csv")), Error);
  CHECK(parse_boundary_format("json") == BoundaryFormat::Json);
  CHECK_THROWS_AS(parse_boundary_format("xml"), Error);
}

TEST_CASE("pauli csv records r") {
  const RegionBoundary pb = pauli::boundary_sweep(PNorm::finite(2.0), {8, true, pauli::PauliFrame::standard()});
  const std::string csv = boundary_to_csv(pb);
  CHECK(csv.find("#r=" + format_double(std::pow(2.0, -0.5))) != std::string::npos);
  CHECK(csv.find("\nd_a,d_b,d_c\n") != std::string::npos);
  CHECK(csv.find("#flagged_rows=0") != std::string::npos);
}

TEST_CASE("distance json") {
  DistanceResult r{0.25, true, DensityOperator::basis_state(2, 0)};
  const Json j = distance_to_json(r, PNorm::infinity());
  CHECK(j["value"] == 0.25);
  CHECK(j["exact"] == true);
  CHECK(j["p"] == "inf");
  CHECK(j["witness"].size() == 2);
}
