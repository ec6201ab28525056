#pragma once

// JSON documents for sections and groups.
//
// Section: {"name": "...", "sigma": [[...]], "alphabet": [[...]], "branches": [[s, a, s2], ...]}
// Group:   {"name": "...", "table": [[...]], "chain": [[...N_0], ..., [...N_ell]]}
// "name" is optional in both.

#include <istream>
#include <string>

#include "gtrellis/expansion.hpp"
#include "gtrellis/trellis.hpp"

namespace gtrellis {

/// Syntax errors and documents of the wrong shape.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& detail) : Error(ErrorKind::Malformed, detail) {}
};

TrellisSection read_section(std::istream& in);
TrellisSection read_section_file(const std::string& path);
std::string write_section(const TrellisSection& t);

struct GroupDocument {
  std::string name;
  FiniteGroup group = trivial_group();
  std::vector<ElementSet> chain;  // empty if the document has none
};

GroupDocument read_group(std::istream& in);
GroupDocument read_group_file(const std::string& path);

}  // namespace gtrellis
