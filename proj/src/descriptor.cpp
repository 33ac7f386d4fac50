#include "gpi/descriptor.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "gpi/errors.hpp"

namespace gpi {

using nlohmann::json;

namespace {

GroupElement target_from_json(const json& j, const GroupSpec& group) {
  std::vector<int> residues;
  if (j.is_number_integer()) {
    residues.push_back(j.get<int>());
  } else if (j.is_array()) {
    for (const auto& r : j) residues.push_back(r.get<int>());
  } else {
    throw MalformedElement("grading targets must be integers or residue lists");
  }
  // The trivial group accepts 0 as a spelling of its identity.
  if (group.cyclic_orders().empty() && residues == std::vector<int>{0}) residues.clear();
  const GroupElement g{residues};
  group.check(g);
  return g;
}

json target_to_json(const GroupElement& g, const GroupSpec& group) {
  if (group.cyclic_orders().size() == 1) return g.residues[0];
  return g.residues;
}

std::string require_string(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw MalformedElement(std::string("descriptor field '") + key + "' must be a string");
  }
  return j[key].get<std::string>();
}

int require_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw MalformedElement(std::string("descriptor field '") + key + "' must be an integer");
  }
  return j[key].get<int>();
}

std::vector<int> int_list(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw MalformedElement(std::string("descriptor field '") + key + "' must be a list");
  }
  std::vector<int> out;
  for (const auto& x : j[key]) {
    if (!x.is_number_integer()) throw MalformedElement(std::string("'") + key + "' holds integers");
    out.push_back(x.get<int>());
  }
  return out;
}

GroupSpec group_from_json(const json& j) {
  if (!j.contains("group")) throw MalformedElement("descriptor needs a 'group' field");
  return GroupSpec(int_list(j, "group"));
}

std::vector<GroupElement> targets_from_json(const json& j, const GroupSpec& group, int count) {
  if (!j.contains("grading") || !j["grading"].contains("targets") ||
      !j["grading"]["targets"].is_array()) {
    throw MalformedElement("descriptor needs grading.targets");
  }
  std::vector<GroupElement> out;
  for (const auto& t : j["grading"]["targets"]) out.push_back(target_from_json(t, group));
  if (static_cast<int>(out.size()) != count) {
    throw MalformedElement("grading.targets needs " + std::to_string(count) + " entries");
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

int to_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw MalformedElement("expected an integer, got '" + s + "'");
  }
  if (used != s.size()) throw MalformedElement("expected an integer, got '" + s + "'");
  return v;
}

json int_array(const std::string& list) {
  json a = json::array();
  if (list.empty()) return a;
  std::string normalized = list;
  std::replace(normalized.begin(), normalized.end(), ':', ';');
  for (const auto& t : split(normalized, ';')) a.push_back(to_int(t));
  return a;
}

json short_form_to_json(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  std::map<std::string, std::string> kv;
  if (colon != std::string::npos) {
    for (const auto& part : split(text.substr(colon + 1), ',')) {
      const auto eq = part.find('=');
      if (eq == std::string::npos) throw MalformedElement("expected key=value in '" + part + "'");
      kv[part.substr(0, eq)] = part.substr(eq + 1);
    }
  }
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  json j;
  if (kind == "field") {
    j = {{"kind", "matrix"}, {"n", 1}, {"group", json::array()},
         {"grading", {{"targets", json::array({0})}}}};
  } else if (kind == "grassmann") {
    j["kind"] = "grassmann";
    if (auto n = take("N")) j["N"] = to_int(*n);
    if (auto deg = take("deg")) {
      j["group"] = json::array({2});
      j["grading"]["deg"] = *deg;
      if (auto k = take("k")) j["grading"]["k"] = to_int(*k);
    } else {
      j["group"] = json::array();
    }
  } else if (kind == "matrix" || kind == "block_triangular") {
    j["kind"] = kind;
    j["group"] = int_array(take("group").value_or("2"));
    const auto targets = take("targets");
    if (!targets) throw MalformedElement(kind + " needs targets=");
    j["grading"]["targets"] = int_array(*targets);
    if (kind == "matrix") {
      j["n"] = static_cast<int>(j["grading"]["targets"].size());
    } else {
      const auto shape = take("shape");
      if (!shape) throw MalformedElement("block_triangular needs shape=");
      j["shape"] = int_array(*shape);
    }
  } else {
    throw MalformedElement("unknown algebra kind '" + kind + "'");
  }
  if (!kv.empty()) throw MalformedElement("unknown key '" + kv.begin()->first + "'");
  return j;
}

}  // namespace

bool AlgebraDescriptor::is_grassmann_based() const {
  if (kind == "grassmann") return true;
  return kind == "matrix_over" && entries && entries->is_grassmann_based();
}

const AlgebraDescriptor& AlgebraDescriptor::innermost() const {
  return kind == "matrix_over" ? entries->innermost() : *this;
}

AlgebraDescriptor descriptor_from_json(const json& j) {
  if (!j.is_object()) throw MalformedElement("algebra descriptor must be a JSON object");
  AlgebraDescriptor d;
  d.kind = require_string(j, "kind");
  if (d.kind == "grassmann") {
    d.group = group_from_json(j);
    if (j.contains("N")) {
      d.N = require_int(j, "N");
      if (d.N < 1) throw MalformedElement("N must be positive");
    }
    d.grassmann.n_generators = d.N;
    if (d.group.cyclic_orders().empty()) {
      if (j.contains("grading")) throw MalformedElement("ungraded Grassmann takes no grading");
    } else {
      if (d.group.cyclic_orders() != std::vector<int>{2}) {
        throw MalformedElement("Grassmann gradings are over Z2");
      }
      if (!j.contains("grading") || !j["grading"].is_object()) {
        throw MalformedElement("graded Grassmann needs a grading object");
      }
      const json& g = j["grading"];
      if (g.contains("values")) {
        d.grassmann.deg_kind = GrassmannDegree::explicit_values;
        d.grassmann.explicit_degrees = int_list(g, "values");
        if (!j.contains("N")) d.N = static_cast<int>(d.grassmann.explicit_degrees.size());
        d.grassmann.n_generators = d.N;
      } else {
        const std::string deg = require_string(g, "deg");
        if (deg == "natural") {
          d.grassmann.deg_kind = GrassmannDegree::natural;
        } else if (deg == "infty") {
          d.grassmann.deg_kind = GrassmannDegree::infty;
        } else if (deg == "kstar") {
          d.grassmann.deg_kind = GrassmannDegree::k_star;
          d.grassmann.k = require_int(g, "k");
          if (d.grassmann.k < 0) throw MalformedElement("k must be >= 0");
        } else if (deg == "k") {
          throw Unsupported("unsupported: generators g_m unspecified in source");
        } else {
          throw MalformedElement("unknown Grassmann grading '" + deg + "'");
        }
      }
    }
    if (d.N > 0) d.grassmann.validate();
  } else if (d.kind == "matrix") {
    d.group = group_from_json(j);
    d.n = require_int(j, "n");
    if (d.n < 1) throw MalformedElement("n must be positive");
    d.targets = targets_from_json(j, d.group, d.n);
  } else if (d.kind == "block_triangular") {
    d.group = group_from_json(j);
    d.shape.sizes = int_list(j, "shape");
    d.shape.validate();
    d.targets = targets_from_json(j, d.group, d.shape.total());
  } else if (d.kind == "matrix_over") {
    d.shape.sizes = int_list(j, "shape");
    d.shape.validate();
    if (!j.contains("entries")) throw MalformedElement("matrix_over needs 'entries'");
    auto inner = std::make_shared<AlgebraDescriptor>(descriptor_from_json(j["entries"]));
    if (inner->kind == "matrix_over") throw Unsupported("nested matrix_over descriptors");
    d.group = inner->group;
    d.entries = std::move(inner);
  } else {
    throw MalformedElement("unknown algebra kind '" + d.kind + "'");
  }
  return d;
}

json descriptor_to_json(const AlgebraDescriptor& d) {
  json j;
  j["kind"] = d.kind;
  if (d.kind == "matrix_over") {
    j["shape"] = d.shape.sizes;
    j["entries"] = descriptor_to_json(*d.entries);
    return j;
  }
  j["group"] = d.group.cyclic_orders();
  if (d.kind == "grassmann") {
    if (d.N > 0) j["N"] = d.N;
    if (!d.group.cyclic_orders().empty()) {
      switch (d.grassmann.deg_kind) {
        case GrassmannDegree::natural: j["grading"]["deg"] = "natural"; break;
        case GrassmannDegree::infty: j["grading"]["deg"] = "infty"; break;
        case GrassmannDegree::k_star:
          j["grading"]["deg"] = "kstar";
          j["grading"]["k"] = d.grassmann.k;
          break;
        case GrassmannDegree::explicit_values:
          j["grading"]["values"] = d.grassmann.explicit_degrees;
          break;
      }
    }
    return j;
  }
  if (d.kind == "matrix") j["n"] = d.n;
  if (d.kind == "block_triangular") j["shape"] = d.shape.sizes;
  json targets = json::array();
  for (const auto& t : d.targets) targets.push_back(target_to_json(t, d.group));
  j["grading"]["targets"] = targets;
  return j;
}

std::string dump_descriptor(const AlgebraDescriptor& d) {
  return descriptor_to_json(d).dump(2) + "\n";
}

AlgebraDescriptor parse_descriptor_text(const std::string& text) {
  std::string t = text;
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  if (!t.empty() && t.front() == '{') {
    json j;
    try {
      j = json::parse(t);
    } catch (const json::exception& e) {
      throw ParseError(std::string("descriptor JSON: ") + e.what());
    }
    return descriptor_from_json(j);
  }
  std::error_code ec;
  if (std::filesystem::is_regular_file(t, ec)) {
    std::ifstream in(t);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_descriptor_text(buf.str());
  }
  return descriptor_from_json(short_form_to_json(t));
}

AlgebraDescriptor matrix_over(const AlgebraDescriptor& entries, const BlockShape& shape) {
  shape.validate();
  if (shape.sizes == std::vector<int>{1}) return entries;
  AlgebraDescriptor d;
  d.kind = "matrix_over";
  d.shape = shape;
  d.group = entries.group;
  d.entries = std::make_shared<AlgebraDescriptor>(entries);
  return d;
}

EvalTarget make_eval_target(const AlgebraDescriptor& d, std::size_t n, int extra_generators) {
  if (d.is_grassmann_based()) {
    const AlgebraDescriptor& e = d.innermost();
    GrassmannSpec spec = e.grassmann;
    spec.n_generators =
        (e.N > 0 ? e.N : default_truncation(spec, n)) + extra_generators;
    if (spec.deg_kind == GrassmannDegree::explicit_values && extra_generators > 0) {
      throw Unsupported("explicit Grassmann gradings have a fixed number of generators");
    }
    spec.validate();
    return GrassmannMatrixTarget{spec, d.kind == "matrix_over" ? d.shape : BlockShape{{1}}};
  }
  return std::make_shared<const StructureConstantAlgebra>(build_algebra(d));
}

StructureConstantAlgebra build_algebra(const AlgebraDescriptor& d) {
  if (d.kind == "grassmann") {
    if (d.N <= 0) throw MalformedElement("building E_N needs an explicit N");
    auto a = build_grassmann(d.grassmann);
    return d.group.cyclic_orders().empty() ? with_trivial_grading(a) : a;
  }
  if (d.kind == "matrix") return build_matrix_algebra(d.n, GradingMap{d.targets}, d.group);
  if (d.kind == "block_triangular") {
    return build_block_triangular_elementary(d.shape, GradingMap{d.targets}, d.group);
  }
  if (d.kind == "matrix_over") return build_matrix_over(build_algebra(*d.entries), d.shape);
  throw MalformedElement("unknown algebra kind '" + d.kind + "'");
}

}  // namespace gpi
