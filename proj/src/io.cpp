#include "covmur/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace covmur {
namespace {

[[noreturn]] void parse_fail(const std::string& what) { fail(ErrorKind::Parse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

void check_schema(const Json& j) {
  const Json& s = field(j, "schema");
  if (!s.is_number_integer()) parse_fail("\"schema\" must be an integer");
  if (s.get<int>() != kSchemaVersion)
    parse_fail("unsupported schema version " + s.dump() + " (expected " +
               std::to_string(kSchemaVersion) + ")");
}

std::size_t as_index(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    parse_fail(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

std::vector<std::vector<std::size_t>> index_table(const Json& j, const char* what) {
  if (!j.is_array()) parse_fail(std::string(what) + " must be a list of lists");
  std::vector<std::vector<std::size_t>> out;
  for (const Json& row : j) {
    if (!row.is_array()) parse_fail(std::string(what) + " must be a list of lists");
    std::vector<std::size_t> r;
    for (const Json& x : row) r.push_back(as_index(x, what));
    out.push_back(std::move(r));
  }
  return out;
}

cplx entry_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  parse_fail("matrix entry must be a number or an [re, im] pair, got " + j.dump());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) parse_fail("matrix must be a non-empty list of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array()) parse_fail("matrix rows must be lists");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      parse_fail("matrix rows must have equal length");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = entry_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

Json outcomes_to_json(const OutcomeSet& outcomes) {
  if (!outcomes.is_product()) return outcomes.labels();
  Json factors = Json::array();
  for (std::size_t i = 0; i < outcomes.num_factors(); ++i)
    factors.push_back(outcomes_to_json(outcomes.factor(i)));
  return factors;
}

OutcomeSet outcomes_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) parse_fail("\"outcomes\" must be a non-empty list");
  if (j[0].is_array()) {
    std::vector<OutcomeSet> factors;
    for (const Json& f : j) factors.push_back(outcomes_from_json(f));
    return OutcomeSet::product(std::move(factors));
  }
  std::vector<std::string> labels;
  for (const Json& x : j) {
    if (x.is_string()) labels.push_back(x.get<std::string>());
    else if (x.is_number_integer()) labels.push_back(std::to_string(x.get<long long>()));
    else parse_fail("outcome labels must be strings or integers");
  }
  try {
    return OutcomeSet(std::move(labels));
  } catch (const Error& e) {
    parse_fail(e.what());
  }
}

Json observable_to_json(const Observable& obs) {
  Json effects = Json::array();
  for (const auto& e : obs.effects()) effects.push_back(matrix_to_json(e.matrix()));
  return {{"schema", kSchemaVersion},
          {"dim", obs.dim()},
          {"outcomes", outcomes_to_json(obs.outcomes())},
          {"effects", std::move(effects)}};
}

Observable observable_from_json(const Json& j) {
  check_schema(j);
  const int dim = static_cast<int>(as_index(field(j, "dim"), "\"dim\""));
  if (dim < 1) parse_fail("\"dim\" must be positive");
  OutcomeSet outcomes = outcomes_from_json(field(j, "outcomes"));
  const Json& ej = field(j, "effects");
  if (!ej.is_array() || ej.size() != outcomes.size())
    parse_fail("\"effects\" must hold one matrix per outcome (" + std::to_string(outcomes.size()) + ")");
  std::vector<HermitianOperator> effects;
  for (std::size_t i = 0; i < ej.size(); ++i) {
    ComplexMatrix m = matrix_from_json(ej[i]);
    if (m.rows() != dim || m.cols() != dim)
      parse_fail("effect " + outcomes.label(i) + " is not " + std::to_string(dim) + "x" +
                 std::to_string(dim));
    try {
      effects.emplace_back(std::move(m));
    } catch (const Error& e) {
      fail(ErrorKind::Validation, "effect " + outcomes.label(i) + ": " + e.what());
    }
  }
  return Observable(std::move(outcomes), std::move(effects));
}

Json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    parse_fail(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  out << text;
  if (!out) fail(ErrorKind::Io, "write failed for " + path.string());
}

Observable load_operator_map(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  try {
    return observable_from_json(j);
  } catch (const Json::exception& e) {
    parse_fail(path.string() + ": " + e.what());
  }
}

Observable load_observable(const std::filesystem::path& path) {
  Observable obs = load_operator_map(path);
  require_valid(obs);
  return obs;
}

void save_observable(const Observable& obs, const std::filesystem::path& path) {
  write_text_file(path, observable_to_json(obs).dump(2) + "\n");
}

Json triple_to_json(const CovarianceTriple& triple) {
  const auto& rep = triple.representation();
  Json unitaries = Json::array();
  Json anti = Json::array();
  for (const auto& op : rep.ops()) {
    unitaries.push_back(matrix_to_json(op.unitary));
    anti.push_back(op.antiunitary);
  }
  return {{"schema", kSchemaVersion},
          {"group",
           {{"order", triple.group().order()},
            {"cayley", triple.group().cayley()},
            {"identity", triple.group().identity()}}},
          {"action",
           {{"outcomes", outcomes_to_json(triple.action().outcomes())},
            {"perms", triple.action().perms()}}},
          {"representation", {{"unitaries", std::move(unitaries)}, {"antiunitary", std::move(anti)}}}};
}

CovarianceTriple triple_from_json(const Json& j) {
  check_schema(j);
  const Json& gj = field(j, "group");
  const std::size_t order = as_index(field(gj, "order"), "\"order\"");
  auto cayley = index_table(field(gj, "cayley"), "\"cayley\"");
  if (cayley.size() != order) parse_fail("\"cayley\" must have \"order\" rows");
  const Json& aj = field(j, "action");
  OutcomeSet outcomes = outcomes_from_json(field(aj, "outcomes"));
  auto perms = index_table(field(aj, "perms"), "\"perms\"");
  const Json& rj = field(j, "representation");
  const Json& uj = field(rj, "unitaries");
  if (!uj.is_array() || uj.size() != order) parse_fail("\"unitaries\" must hold one matrix per group element");
  std::vector<bool> anti(order, false);
  if (rj.contains("antiunitary")) {
    const Json& flags = rj.at("antiunitary");
    if (!flags.is_array() || flags.size() != order) parse_fail("\"antiunitary\" must hold one flag per element");
    for (std::size_t g = 0; g < order; ++g) {
      if (!flags[g].is_boolean()) parse_fail("\"antiunitary\" flags must be booleans");
      anti[g] = flags[g].get<bool>();
    }
  }
  std::vector<SymmetryOperation> ops;
  for (std::size_t g = 0; g < order; ++g) ops.push_back({matrix_from_json(uj[g]), anti[g]});

  try {
    FiniteGroup group(std::move(cayley));
    if (gj.contains("identity") && as_index(gj.at("identity"), "\"identity\"") != group.identity())
      fail(ErrorKind::Validation, "\"identity\" does not match the Cayley table");
    OutcomeAction action(group, std::move(outcomes), std::move(perms));
    SymmetryRepresentation rep(std::move(group), std::move(ops));
    return CovarianceTriple(std::move(rep), std::move(action));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) throw;
    fail(ErrorKind::Validation, e.what());
  }
}

CovarianceTriple load_triple(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  try {
    return triple_from_json(j);
  } catch (const Json::exception& e) {
    parse_fail(path.string() + ": " + e.what());
  }
}

void save_triple(const CovarianceTriple& triple, const std::filesystem::path& path) {
  write_text_file(path, triple_to_json(triple).dump(2) + "\n");
}

Json distance_to_json(const DistanceResult& result, PNorm p) {
  Json j{{"schema", kSchemaVersion},
         {"p", p.to_string()},
         {"value", result.value},
         {"exact", result.exact}};
  if (result.witness) j["witness"] = matrix_to_json(result.witness->matrix());
  return j;
}

BoundaryFormat parse_boundary_format(std::string_view text) {
  if (text == "csv") return BoundaryFormat::Csv;
  if (text == "json") return BoundaryFormat::Json;
  fail(ErrorKind::Domain, "unknown boundary format \"" + std::string(text) + "\"");
}

std::string boundary_to_csv(const RegionBoundary& b) {
  std::ostringstream out;
  out << "#family=" << b.family << "\n";
  out << "#p=" << b.p << "\n";
  out << "#dim=" << b.dim << "\n";
  out << "#seed=" << b.seed << "\n";
  out << "#tool=" << kToolVersion << "\n";
  for (const auto& [key, value] : b.extra) out << "#" << key << "=" << value << "\n";
  const auto flags = b.flagged();
  std::size_t flagged = 0;
  for (bool f : flags) flagged += f ? 1 : 0;
  for (const auto& check : b.checks) {
    double worst = 0.0;
    for (double v : check.values) worst = std::max(worst, std::abs(v));
    out << "#check=" << check.name << " tol=" << format_double(check.tolerance)
        << " worst=" << format_double(worst) << "\n";
  }
  out << "#flagged_rows=" << flagged << "\n";
  for (std::size_t c = 0; c < b.columns.size(); ++c) out << (c ? "," : "") << b.columns[c];
  out << "\n";
  for (const auto& row : b.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_double(row[c]);
    out << "\n";
  }
  return out.str();
}

Json boundary_to_json(const RegionBoundary& b) {
  Json checks = Json::array();
  for (const auto& c : b.checks)
    checks.push_back({{"name", c.name}, {"tolerance", c.tolerance}, {"values", c.values}});
  Json extra = Json::array();
  for (const auto& [k, v] : b.extra) extra.push_back({k, v});
  return {{"schema", kSchemaVersion}, {"tool", kToolVersion}, {"family", b.family},
          {"p", b.p},                 {"dim", b.dim},          {"seed", b.seed},
          {"extra", std::move(extra)}, {"columns", b.columns}, {"rows", b.rows},
          {"checks", std::move(checks)}, {"flagged", b.flagged()}};
}

RegionBoundary boundary_from_json(const Json& j) {
  check_schema(j);
  RegionBoundary b;
  try {
    b.family = field(j, "family").get<std::string>();
    b.p = field(j, "p").get<std::string>();
    b.dim = field(j, "dim").get<int>();
    b.seed = field(j, "seed").get<std::uint64_t>();
    for (const Json& kv : field(j, "extra"))
      b.extra.emplace_back(kv.at(0).get<std::string>(), kv.at(1).get<std::string>());
    b.columns = field(j, "columns").get<std::vector<std::string>>();
    b.rows = field(j, "rows").get<std::vector<std::vector<double>>>();
    for (const Json& c : field(j, "checks"))
      b.checks.push_back({c.at("name").get<std::string>(), c.at("tolerance").get<double>(),
                          c.at("values").get<std::vector<double>>()});
  } catch (const Json::exception& e) {
    parse_fail(std::string("boundary: ") + e.what());
  }
  return b;
}

void emit_boundary(const RegionBoundary& boundary, const std::filesystem::path& path,
                   BoundaryFormat format) {
  if (format == BoundaryFormat::Csv) write_text_file(path, boundary_to_csv(boundary));
  else write_text_file(path, boundary_to_json(boundary).dump(2) + "\n");
}

}  // namespace covmur
