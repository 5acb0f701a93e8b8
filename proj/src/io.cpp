#include "vpm/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vpm/errors.hpp"

namespace vpm {

namespace {

using Json = nlohmann::ordered_json;

double parse_number(const Json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      size_t used = 0;
      const std::string s = j.get<std::string>();
      const double v = std::stod(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  throw ParseError(where + ": expected a number");
}

Vec parse_position(const Json& j, int dimension, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != dimension)
    throw ParseError(where + ": expected an array of length " + std::to_string(dimension));
  Vec v(dimension);
  for (int k = 0; k < dimension; ++k)
    v[k] = parse_number(j[k], where + "[" + std::to_string(k) + "]");
  return v;
}

Json number_to_json(double v) {
  if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 9.0e15)
    return Json(static_cast<long long>(v));
  return Json(v);
}

Json position_to_json(const Vec& v) {
  Json arr = Json::array();
  for (double x : v) arr.push_back(number_to_json(x));
  return arr;
}

ScoringRule parse_scoring(const Json& j, int n) {
  if (!j.is_object() || !j.contains("rule")) throw ParseError("scoring: expected {\"rule\": ...}");
  const std::string rule = j.at("rule").get<std::string>();
  if (rule == "plurality") return ScoringRule::plurality(n);
  if (rule == "veto") return ScoringRule::veto(n);
  if (rule == "borda") return ScoringRule::borda(n);
  if (rule == "k_approval") {
    if (!j.contains("k")) throw ParseError("scoring: k_approval needs \"k\"");
    return ScoringRule::k_approval(n, j.at("k").get<int>());
  }
  if (rule == "table") {
    if (!j.contains("values")) throw ParseError("scoring: table needs \"values\"");
    std::vector<double> values;
    for (const auto& x : j.at("values")) values.push_back(parse_number(x, "scoring.values"));
    if (static_cast<int>(values.size()) != n)
      throw ParseError("scoring.values: expected " + std::to_string(n) + " entries");
    return ScoringRule::table(std::move(values));
  }
  throw ParseError("scoring: unknown rule \"" + rule + "\"");
}

}  // namespace

ParsedInstance parse_instance(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance document must be a JSON object");

  for (const char* key : {"issue_space", "dimension", "norm", "epsilon", "objective",
                          "scoring", "candidates"})
    if (!doc.contains(key)) throw ParseError(std::string("missing key \"") + key + "\"");
  if (doc.contains("voters") == doc.contains("groups"))
    throw ParseError("provide exactly one of \"voters\" or \"groups\"");

  Instance inst;
  const std::string space = doc.at("issue_space").get<std::string>();
  if (space == "binary")
    inst.issue_space = IssueSpace::binary;
  else if (space == "real")
    inst.issue_space = IssueSpace::real;
  else
    throw ParseError("issue_space: expected \"binary\" or \"real\"");

  inst.dimension = doc.at("dimension").get<int>();
  if (inst.dimension < 1) throw ParseError("dimension: must be >= 1");

  const Json& norm = doc.at("norm");
  if (!norm.is_object() || !norm.contains("p")) throw ParseError("norm: expected {\"p\": ...}");
  if (norm.at("p").is_string()) {
    if (norm.at("p").get<std::string>() != "inf")
      throw ParseError("norm.p: expected an integer or \"inf\"");
    inst.norm = NormSpec::linf();
  } else {
    const int p = norm.at("p").get<int>();
    if (p < 1) throw ParseError("norm.p: must be >= 1");
    inst.norm = NormSpec::lp(p);
  }

  inst.epsilon = parse_number(doc.at("epsilon"), "epsilon");

  const std::string objective = doc.at("objective").get<std::string>();
  if (objective == "constructive")
    inst.objective = Objective::constructive;
  else if (objective == "destructive")
    inst.objective = Objective::destructive;
  else
    throw ParseError("objective: expected \"constructive\" or \"destructive\"");

  const Json& cands = doc.at("candidates");
  if (!cands.is_array() || cands.size() < 2)
    throw ParseError("candidates: expected an array of at least 2 positions");
  for (size_t i = 0; i < cands.size(); ++i)
    inst.candidates.push_back(
        parse_position(cands[i], inst.dimension, "candidates[" + std::to_string(i) + "]"));

  inst.scoring = parse_scoring(doc.at("scoring"), static_cast<int>(cands.size()));

  if (doc.contains("voters")) {
    const Json& voters = doc.at("voters");
    if (!voters.is_array() || voters.empty())
      throw ParseError("voters: expected a non-empty array");
    for (size_t i = 0; i < voters.size(); ++i)
      inst.voters.push_back(
          parse_position(voters[i], inst.dimension, "voters[" + std::to_string(i) + "]"));
  } else {
    const Json& groups = doc.at("groups");
    if (!groups.is_array() || groups.empty())
      throw ParseError("groups: expected a non-empty array");
    for (size_t i = 0; i < groups.size(); ++i) {
      const Json& g = groups[i];
      const std::string where = "groups[" + std::to_string(i) + "]";
      if (!g.is_object() || !g.contains("position") || !g.contains("weight"))
        throw ParseError(where + ": expected {\"position\": [...], \"weight\": n}");
      inst.voters.push_back(parse_position(g.at("position"), inst.dimension, where));
      const long long w = g.at("weight").get<long long>();
      if (w < 1) throw ParseError(where + ".weight: must be >= 1");
      inst.weights.push_back(w);
    }
  }

  ParsedInstance out{std::move(inst), {}};
  try {
    out.warnings = out.instance.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return out;
}

std::string serialize_instance(const Instance& inst) {
  Json doc;
  doc["issue_space"] = to_string(inst.issue_space);
  doc["dimension"] = inst.dimension;
  if (inst.norm.is_inf())
    doc["norm"] = Json{{"p", "inf"}};
  else
    doc["norm"] = Json{{"p", inst.norm.p}};
  doc["epsilon"] = number_to_json(inst.epsilon);
  doc["objective"] = to_string(inst.objective);

  Json scoring;
  const std::string& rule = inst.scoring.name();
  scoring["rule"] = rule;
  if (rule == "k_approval") scoring["k"] = inst.scoring.approval_k();
  if (rule == "table") {
    Json values = Json::array();
    for (double v : inst.scoring.values()) values.push_back(number_to_json(v));
    scoring["values"] = values;
  }
  doc["scoring"] = scoring;

  Json cands = Json::array();
  for (const Vec& c : inst.candidates) cands.push_back(position_to_json(c));
  doc["candidates"] = cands;

  if (inst.weights.empty()) {
    Json voters = Json::array();
    for (const Vec& v : inst.voters) voters.push_back(position_to_json(v));
    doc["voters"] = voters;
  } else {
    Json groups = Json::array();
    for (int i = 0; i < inst.num_voter_rows(); ++i)
      groups.push_back(Json{{"position", position_to_json(inst.voters[i])},
                            {"weight", inst.weights[i]}});
    doc["groups"] = groups;
  }
  return doc.dump(2) + "\n";
}

ParsedInstance load_instance(const std::string& path) { return parse_instance(read_text(path)); }

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SatFormula parse_dimacs(const std::string& text) {
  SatFormula f;
  std::istringstream in(text);
  std::string line;
  bool header_seen = false;
  int declared_clauses = 0;
  std::vector<int> pending;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, cnf;
      if (!(ls >> p >> cnf >> f.num_vars >> declared_clauses) || cnf != "cnf")
        throw ParseError("line " + std::to_string(line_no) + ": malformed DIMACS header");
      header_seen = true;
      continue;
    }
    if (!header_seen)
      throw ParseError("line " + std::to_string(line_no) + ": clause before \"p cnf\" header");
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (pending.size() != 3)
          throw ParseError("line " + std::to_string(line_no) + ": clause with " +
                           std::to_string(pending.size()) + " literals; exactly 3 required");
        std::array<SatLiteral, 3> clause;
        for (int t = 0; t < 3; ++t) clause[t] = {std::abs(pending[t]), pending[t] > 0};
        f.clauses.push_back(clause);
        pending.clear();
      } else {
        pending.push_back(lit);
      }
    }
  }
  if (!header_seen) throw ParseError("missing \"p cnf\" header");
  if (!pending.empty()) throw ParseError("unterminated clause at end of input");
  if (declared_clauses != f.num_clauses())
    throw ParseError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                     std::to_string(f.num_clauses()));
  try {
    f.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return f;
}

std::string serialize_dimacs(const SatFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_vars << " " << f.num_clauses() << "\n";
  for (const auto& clause : f.clauses) {
    for (const SatLiteral& lit : clause) out << (lit.positive ? lit.var : -lit.var) << " ";
    out << "0\n";
  }
  return out.str();
}

}  // namespace vpm
