#include "gtrellis/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace gtrellis {

using nlohmann::json;

namespace {

json parse(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

std::ifstream open(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path);
  return f;
}

const json& field(const json& doc, const char* key) {
  if (!doc.is_object()) throw ParseError("document is not an object");
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("missing key '") + key + "'");
  return *it;
}

std::vector<std::vector<std::int64_t>> table_of(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " is not an array of rows");
  std::vector<std::vector<std::int64_t>> t;
  for (const auto& row : j) {
    if (!row.is_array()) throw ParseError(std::string(what) + " row is not an array");
    std::vector<std::int64_t> r;
    for (const auto& x : row) {
      if (!x.is_number_integer()) throw ParseError(std::string(what) + " entry is not an integer");
      r.push_back(x.get<std::int64_t>());
    }
    t.push_back(std::move(r));
  }
  return t;
}

Element index_of(const json& x, const char* what) {
  if (!x.is_number_integer() || x.get<std::int64_t>() < 0) throw ParseError(std::string(what) + " is not a non-negative integer");
  return x.get<Element>();
}

std::string name_of(const json& doc) {
  auto it = doc.find("name");
  if (it == doc.end()) return {};
  if (!it->is_string()) throw ParseError("name is not a string");
  return it->get<std::string>();
}

}  // namespace

TrellisSection read_section(std::istream& in) {
  const json doc = parse(in);
  const auto sigma_table = table_of(field(doc, "sigma"), "sigma");
  const auto alphabet_table = table_of(field(doc, "alphabet"), "alphabet");
  const json& br = field(doc, "branches");
  if (!br.is_array()) throw ParseError("branches is not an array");
  std::vector<Branch> branches;
  for (const auto& b : br) {
    if (!b.is_array() || b.size() != 3) throw ParseError("each branch must be a [s, a, s2] triple");
    branches.push_back({index_of(b[0], "branch state"), index_of(b[1], "branch label"), index_of(b[2], "branch state")});
  }
  std::string name = name_of(doc);
  return build_section(FiniteGroup::from_table(sigma_table), FiniteGroup::from_table(alphabet_table), std::move(branches),
                       std::move(name));
}

TrellisSection read_section_file(const std::string& path) {
  auto f = open(path);
  return read_section(f);
}

std::string write_section(const TrellisSection& t) {
  json doc;
  if (!t.name().empty()) doc["name"] = t.name();
  doc["sigma"] = t.sigma().table();
  doc["alphabet"] = t.alphabet().table();
  json br = json::array();
  for (const Branch& b : t.branches()) br.push_back({b.s, b.a, b.s2});
  doc["branches"] = std::move(br);
  return doc.dump() + "\n";
}

GroupDocument read_group(std::istream& in) {
  const json doc = parse(in);
  GroupDocument g;
  g.name = name_of(doc);
  g.group = FiniteGroup::from_table(table_of(field(doc, "table"), "table"));
  if (auto it = doc.find("chain"); it != doc.end()) {
    if (!it->is_array()) throw ParseError("chain is not an array");
    for (const auto& level : *it) {
      if (!level.is_array()) throw ParseError("chain level is not an array");
      std::vector<Element> elems;
      for (const auto& x : level) elems.push_back(index_of(x, "chain element"));
      g.chain.push_back(make_set(std::move(elems)));
    }
  }
  return g;
}

GroupDocument read_group_file(const std::string& path) {
  auto f = open(path);
  return read_group(f);
}

}  // namespace gtrellis
