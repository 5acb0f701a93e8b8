#pragma once

#include <string>

#include "vpm/instance.hpp"
#include "vpm/reductions.hpp"

namespace vpm {

struct ParsedInstance {
  Instance instance;
  std::vector<std::string> warnings;
};

// JSON instance document. Keys: issue_space, dimension, norm {"p": n|"inf"},
// epsilon, objective, scoring {"rule": ...}, candidates (index 0 = target),
// and either voters or groups [{position, weight}]. Parsing and
// serialization round-trip field for field.
ParsedInstance parse_instance(const std::string& text);
std::string serialize_instance(const Instance& inst);

ParsedInstance load_instance(const std::string& path);
void save_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

// DIMACS CNF restricted to 3-literal clauses: "p cnf <vars> <clauses>"
// header, integer clause lines terminated by 0, 'c' comment lines.
SatFormula parse_dimacs(const std::string& text);
std::string serialize_dimacs(const SatFormula& f);

}  // namespace vpm
