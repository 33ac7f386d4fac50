#include "gpi/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "gpi/descriptor.hpp"
#include "gpi/errors.hpp"
#include "gpi/generic_model.hpp"
#include "gpi/identities.hpp"
#include "gpi/poly_text.hpp"
#include "gpi/relfree.hpp"
#include "json.hpp"

namespace gpi {

using nlohmann::json;

void write_atomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    out << content;
    if (!out.flush()) throw Error("cannot write " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

namespace {

struct Options {
  // shared
  std::string cert_path;
  bool json_out = false;
  std::optional<std::size_t> max_cells;

  // regularity
  std::string group = "2";
  std::string targets;

  // identities / factor-check / model
  std::string algebra;
  std::string generators;
  bool all_gradings = false;
  std::string sig;
  std::optional<int> N;
  bool basis = false;
  std::string shape;
  std::string entries;
  std::optional<int> sweep;

  // relfree / model
  std::string mode = "infty";
  std::string poly;
  std::size_t bound = 4;
  std::size_t samples = 200;
  std::uint64_t seed = 7;
  int probe_generators = 8;
  std::size_t trials = 500;
  std::string backend = "infty";
};

// A flag-level mistake detected after CLI parsing.
struct UsageError : Error {
  using Error::Error;
};

std::string read_text_or_file(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  return arg;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

GroupSpec parse_group(const std::string& text) {
  std::vector<int> orders;
  const std::string t = trim(text);
  if (t.empty() || t == "1" || t == "trivial") return GroupSpec::trivial();
  for (const auto& part : split(t, ',')) {
    try {
      orders.push_back(std::stoi(part));
    } catch (const std::exception&) {
      throw UsageError("bad group order '" + part + "'");
    }
  }
  return GroupSpec(orders);
}

// "0,1,1" for cyclic groups, "(0,1);(1,1)" for products, "e,e" or "0,0" for
// the trivial group.
std::vector<GroupElement> parse_elements(const std::string& text, const GroupSpec& group) {
  const std::string t = trim(text);
  if (t.empty()) return {};
  std::vector<std::string> tokens;
  if (t.find('(') != std::string::npos) {
    tokens = split(t, ';');
  } else if (group.cyclic_orders().size() <= 1) {
    tokens = split(t, ',');
  } else {
    throw UsageError("tuples over a product group are written (a,b);(c,d)");
  }
  std::vector<GroupElement> out;
  for (const auto& tok : tokens) {
    if (group.cyclic_orders().empty() && (tok == "e" || tok == "0" || tok == "()")) {
      out.push_back(group.identity());
      continue;
    }
    out.push_back(parse_group_element(tok, group));
  }
  return out;
}

json element_json(const GroupElement& g) { return g.residues; }

json sig_json(const MultidegreeSignature& sig) {
  json a = json::array();
  for (const auto& g : sig.degrees) a.push_back(element_json(g));
  return a;
}

std::string sig_text(const MultidegreeSignature& sig) {
  std::string s = "(";
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (i) s += ",";
    const auto& r = sig.degrees[i].residues;
    s += r.empty() ? "e" : r.size() == 1 ? std::to_string(r[0]) : to_string(sig.degrees[i]);
  }
  return s + ")";
}

BlockShape parse_shape(const std::string& text) {
  BlockShape s;
  for (const auto& part : split(text, ',')) {
    try {
      s.sizes.push_back(std::stoi(part));
    } catch (const std::exception&) {
      throw UsageError("bad block size '" + part + "'");
    }
  }
  s.validate();
  return s;
}

json certificate(const std::string& command, json input, json result,
                 std::optional<std::uint64_t> seed) {
  json c;
  c["schema_version"] = kCertificateSchema;
  c["tool"] = "gpi";
  c["tool_version"] = kToolVersion;
  c["enumeration_order"] = kEnumerationOrder;
  c["command"] = command;
  c["input"] = std::move(input);
  c["result"] = std::move(result);
  c["seed"] = seed ? json(*seed) : json(nullptr);
  return c;
}

ResourceGuard guard_of(const Options& o) {
  ResourceGuard g;
  if (o.max_cells) g.max_cells = *o.max_cells;
  return g;
}

struct Outcome {
  json cert;
  std::string text;
  int code = kExitOk;
};

Outcome cmd_regularity(const Options& o) {
  const GroupSpec group = parse_group(o.group);
  if (trim(o.targets).empty()) throw UsageError("--targets is required");
  const auto targets = parse_elements(o.targets, group);
  const auto report = is_g_regular(GradingMap{targets}, group);
  json fibers = json::array();
  std::string text = std::string("regular: ") + (report.regular ? "yes" : "no") + "\n" +
                     "surjective: " + (report.surjective ? "yes" : "no") + "\nfibers:\n";
  const auto elems = group.elements();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    fibers.push_back({{"element", element_json(elems[i])}, {"size", report.fiber_sizes[i]}});
    text += "  " + to_string(elems[i]) + " -> " + std::to_string(report.fiber_sizes[i]) + "\n";
  }
  json input = {{"group", group.cyclic_orders()}, {"targets", json::array()}};
  for (const auto& t : targets) input["targets"].push_back(element_json(t));
  json result = {{"regular", report.regular}, {"surjective", report.surjective}, {"fibers", fibers}};
  return {certificate("regularity", input, result, std::nullopt), text};
}

MultidegreeSignature parse_sig(const std::string& text, const GroupSpec& group) {
  if (trim(text).empty()) throw UsageError("--sig is required");
  return MultidegreeSignature{parse_elements(text, group)};
}

json basis_json(const IdentitySubspace& s, std::string& text) {
  json b = json::array();
  for (const auto& row : s.space.basis()) {
    const auto dense = make_dense(row, s.space.ambient_dim());
    const std::string p = print_polynomial(from_multilinear_coordinates(dense, s.signature));
    b.push_back(p);
    text += "  " + p + "\n";
  }
  return b;
}

Outcome cmd_identities(const Options& o) {
  const ResourceGuard guard = guard_of(o);
  const bool by_algebra = !o.algebra.empty();
  if (by_algebra == !o.generators.empty()) {
    throw UsageError("give exactly one of --algebra or --generators");
  }
  Outcome out;
  json input, result;
  std::string text;

  if (!by_algebra) {
    TIdealPresentation t{parse_group(o.group), {}};
    input["group"] = t.group.cyclic_orders();
    input["generators"] = json::array();
    for (const auto& line : split(read_text_or_file(o.generators), '\n')) {
      if (line.empty() || line[0] == '#') continue;
      const NcPolynomial f = parse_polynomial(line, o.all_gradings ? GroupSpec::trivial() : t.group);
      input["generators"].push_back(print_polynomial(f));
      if (o.all_gradings) {
        t.add_all_gradings(f);
      } else {
        t.add(f);
      }
    }
    input["all_gradings"] = o.all_gradings;
    const auto sig = parse_sig(o.sig, t.group);
    input["signature"] = sig_json(sig);
    const auto s = identities_by_consequences(t, sig, guard);
    result["route"] = "consequences";
    result["dim"] = s.dim();
    result["ambient_dim"] = s.space.ambient_dim();
    text = "signature " + sig_text(sig) + "\ndim " + std::to_string(s.dim()) + " of " +
           std::to_string(s.space.ambient_dim()) + "\n";
    if (o.basis) {
      text += "basis:\n";
      result["basis"] = basis_json(s, text);
    }
    out.cert = certificate("identities", input, result, std::nullopt);
    out.text = text;
    return out;
  }

  AlgebraDescriptor d = parse_descriptor_text(o.algebra);
  if (o.N) {
    if (!d.is_grassmann_based()) throw UsageError("--N applies to Grassmann-based algebras");
    AlgebraDescriptor* inner = &d;
    std::shared_ptr<AlgebraDescriptor> copy;
    if (d.kind == "matrix_over") {
      copy = std::make_shared<AlgebraDescriptor>(*d.entries);
      d.entries = copy;
      inner = copy.get();
    }
    inner->N = *o.N;
    inner->grassmann.n_generators = *o.N;
  }
  const auto sig = parse_sig(o.sig, d.group);
  input["algebra"] = descriptor_to_json(d);
  input["signature"] = sig_json(sig);

  const EvalTarget target = make_eval_target(d, sig.size());
  const IdentitySubspace s = identities_by_evaluation(target, sig, guard);
  result["route"] = "evaluation";
  result["dim"] = s.dim();
  result["ambient_dim"] = s.space.ambient_dim();
  text = "algebra " + describe(target) + "\nsignature " + sig_text(sig) + "\ndim " +
         std::to_string(s.dim()) + " of " + std::to_string(s.space.ambient_dim()) + "\n";

  if (const auto* g = std::get_if<GrassmannMatrixTarget>(&target)) {
    json stab;
    const int n0 = g->spec.n_generators;
    if (g->spec.deg_kind == GrassmannDegree::explicit_values) {
      stab = {{"N", json::array({n0})}, {"stabilized", nullptr}};
    } else {
      GrassmannMatrixTarget next = *g;
      next.spec.n_generators = n0 + 1;
      const IdentitySubspace s1 = identities_by_evaluation(next, sig, guard);
      const bool stable = s1.space == s.space;
      stab = {{"N", json::array({n0, n0 + 1})},
              {"dims", json::array({s.dim(), s1.dim()})},
              {"stabilized", stable}};
      text += "stabilized at N=" + std::to_string(n0) + "," + std::to_string(n0 + 1) + ": " +
              (stable ? "yes" : "no") + "\n";
    }
    result["stabilization"] = stab;

    // Independent route where a generating set is known.
    if (d.kind == "grassmann" && d.grassmann.deg_kind != GrassmannDegree::explicit_values) {
      const bool graded = !d.group.cyclic_orders().empty();
      const auto c = identities_by_consequences(grassmann_presentation(d.grassmann, graded), sig, guard);
      const bool agree = c.space == s.space;
      result["cross_check"] = {{"route", "consequences"}, {"dim", c.dim()}, {"agree", agree}};
      text += "consequence route dim " + std::to_string(c.dim()) + (agree ? " (agrees)\n" : " (DISAGREES)\n");
      if (!agree) out.code = kExitInconsistent;
    }
  }
  if (o.basis) {
    text += "basis:\n";
    result["basis"] = basis_json(s, text);
  }
  out.cert = certificate("identities", input, result, std::nullopt);
  out.text = text;
  return out;
}

struct FactorSetup {
  json algebra_json;
  GroupSpec group;
  // Builds R's provider and the diagonal factors for signatures of total
  // degree n, with `extra` additional Grassmann generators.
  std::function<std::pair<ProviderPtr, std::vector<ProviderPtr>>(std::size_t n, int extra)> make;
  // Number of Grassmann generators used, 0 for other entries.
  std::function<int(std::size_t n, int extra)> truncation;
  bool grassmann = false;
};

FactorSetup factor_setup(const Options& o) {
  const ResourceGuard guard = guard_of(o);
  FactorSetup s;
  if (!o.algebra.empty()) {
    if (!o.shape.empty() || !o.entries.empty()) {
      throw UsageError("--algebra excludes --shape/--entries");
    }
    const AlgebraDescriptor d = parse_descriptor_text(o.algebra);
    if (d.kind != "block_triangular") {
      throw UsageError("factor-check --algebra expects a block_triangular descriptor");
    }
    s.algebra_json = descriptor_to_json(d);
    s.group = d.group;
    s.make = [d, guard](std::size_t, int) {
      auto r = evaluation_provider(std::make_shared<const StructureConstantAlgebra>(build_algebra(d)), guard);
      std::vector<ProviderPtr> factors;
      std::size_t offset = 0;
      for (int size : d.shape.sizes) {
        AlgebraDescriptor block;
        block.kind = "matrix";
        block.group = d.group;
        block.n = size;
        block.targets.assign(d.targets.begin() + offset, d.targets.begin() + offset + size);
        offset += size;
        factors.push_back(evaluation_provider(
            std::make_shared<const StructureConstantAlgebra>(build_algebra(block)), guard));
      }
      return std::make_pair(r, factors);
    };
    s.truncation = [](std::size_t, int) { return 0; };
    return s;
  }
  if (o.shape.empty() || o.entries.empty()) {
    throw UsageError("factor-check needs --shape and --entries, or --algebra");
  }
  const BlockShape shape = parse_shape(o.shape);
  if (shape.sizes.size() < 2) throw UsageError("factor-check needs at least two blocks");
  AlgebraDescriptor entries = parse_descriptor_text(o.entries);
  if (o.N) {
    if (entries.kind != "grassmann") throw UsageError("--N applies to Grassmann entries");
    entries.N = *o.N;
    entries.grassmann.n_generators = *o.N;
  }
  const AlgebraDescriptor r = matrix_over(entries, shape);
  s.algebra_json = descriptor_to_json(r);
  s.group = entries.group;
  s.grassmann = entries.is_grassmann_based();
  s.make = [r, entries, shape, guard](std::size_t n, int extra) {
    auto rp = evaluation_provider(make_eval_target(r, n, extra), guard);
    std::vector<ProviderPtr> factors;
    std::map<int, ProviderPtr> by_size;
    for (int size : shape.sizes) {
      auto it = by_size.find(size);
      if (it == by_size.end()) {
        const AlgebraDescriptor block = matrix_over(entries, BlockShape{{size}});
        it = by_size.emplace(size, evaluation_provider(make_eval_target(block, n, extra), guard)).first;
      }
      factors.push_back(it->second);
    }
    return std::make_pair(rp, factors);
  };
  s.truncation = [r](std::size_t n, int extra) {
    const EvalTarget t = make_eval_target(r, n, extra);
    if (const auto* g = std::get_if<GrassmannMatrixTarget>(&t)) return g->spec.n_generators;
    return 0;
  };
  return s;
}

Outcome cmd_factor_check(const Options& o) {
  const FactorSetup setup = factor_setup(o);
  std::vector<MultidegreeSignature> sigs;
  if (o.sweep && !o.sig.empty()) throw UsageError("give --sig or --sweep, not both");
  if (o.sweep) {
    if (*o.sweep < 1) throw UsageError("--sweep must be positive");
    for (int n = 1; n <= *o.sweep; ++n)
      for (auto& s : all_signatures(setup.group, n)) sigs.push_back(s);
  } else {
    sigs.push_back(parse_sig(o.sig, setup.group));
  }

  json input = {{"algebra", setup.algebra_json}, {"group", setup.group.cyclic_orders()}};
  if (o.sweep) {
    input["sweep"] = *o.sweep;
  } else {
    input["signature"] = sig_json(sigs.front());
  }
  if (o.N) input["N"] = *o.N;

  json verdicts = json::array();
  std::string text;
  std::size_t equal = 0, strict = 0, unstable = 0;
  // Providers are shared across signatures of the same total degree.
  std::map<std::size_t, std::pair<ProviderPtr, std::vector<ProviderPtr>>> at_n, at_n1;
  for (const auto& sig : sigs) {
    const std::size_t n = sig.size();
    if (!at_n.contains(n)) at_n.emplace(n, setup.make(n, 0));
    const auto& [r, factors] = at_n.at(n);
    const FactoringVerdict v = check_factoring(*r, factors, sig, guard_of(o));
    json entry = {{"signature", sig_json(sig)},
                  {"dim_R", v.dim_R},
                  {"dim_product", v.dim_product},
                  {"relation", to_string(v.relation)},
                  {"witness", v.witness ? json(print_polynomial(*v.witness)) : json(nullptr)}};
    text += "sig " + sig_text(sig) + ": dim_R=" + std::to_string(v.dim_R) +
            " dim_product=" + std::to_string(v.dim_product) + " " + to_string(v.relation);
    if (v.witness) text += " witness " + print_polynomial(*v.witness);
    if (setup.grassmann) {
      // Repeat with one more generator.
      if (!at_n1.contains(n)) at_n1.emplace(n, setup.make(n, 1));
      const auto& [r1, f1] = at_n1.at(n);
      const FactoringVerdict v1 = check_factoring(*r1, f1, sig, guard_of(o));
      const bool stable =
          v1.relation == v.relation && v1.dim_R == v.dim_R && v1.dim_product == v.dim_product;
      entry["N"] = json::array({setup.truncation(n, 0), setup.truncation(n, 1)});
      entry["stabilized"] = stable;
      if (!stable) ++unstable;
      text += stable ? " (stable)" : " (NOT stable)";
    }
    text += "\n";
    (v.relation == FactoringRelation::equal ? equal : strict)++;
    verdicts.push_back(std::move(entry));
  }
  text += "summary: " + std::to_string(equal) + " equal, " + std::to_string(strict) +
          " product_strictly_inside";
  if (setup.grassmann) text += ", " + std::to_string(unstable) + " unstabilized";
  text += "\n";
  json result = {{"verdicts", verdicts},
                 {"summary", {{"equal", equal}, {"product_strictly_inside", strict}}},
                 {"scope", "checked at the listed signatures only"}};
  if (setup.grassmann) result["summary"]["unstabilized"] = unstable;
  return {certificate("factor-check", input, result, std::nullopt), text};
}

Outcome cmd_relfree_nf(const Options& o) {
  if (trim(o.poly).empty()) throw UsageError("--poly is required");
  const GradingMode mode = parse_grading_mode(o.mode);
  const NcPolynomial f = parse_polynomial(trim(read_text_or_file(o.poly)), GroupSpec::z2());
  const RelFreeElement nf = normal_form(f, mode);
  const std::string printed = print_relfree(nf);
  json input = {{"mode", to_string(mode)}, {"poly", print_polynomial(f)}};
  json result = {{"normal_form", printed}, {"is_identity", nf.is_zero()}};
  return {certificate("relfree nf", input, result, std::nullopt), printed + "\n"};
}

Outcome cmd_relfree_multbasis(const Options& o) {
  const GradingMode mode = parse_grading_mode(o.mode);
  if (o.bound < 1) throw UsageError("--bound must be positive");
  const auto v = partial_multiplicativity_check(mode, o.bound, o.samples, o.seed);
  json input = {{"mode", to_string(mode)}, {"bound", o.bound}, {"samples", o.samples}};
  json result = {{"verdict", v.holds ? "holds-on-samples" : "fails"},
                 {"samples_checked", v.samples_checked},
                 {"witness", v.holds ? json(nullptr) : json(v.witness)}};
  std::string text = v.holds ? "holds-on-samples (" + std::to_string(v.samples_checked) + " samples)\n"
                             : "fails: " + v.witness + "\n";
  return {certificate("relfree multbasis", input, result, o.seed), text};
}

Outcome cmd_relfree_probe(const Options& o) {
  if (trim(o.poly).empty()) throw UsageError("--poly is required");
  const GradingMode mode = parse_grading_mode(o.mode);
  const NcPolynomial f = parse_polynomial(trim(read_text_or_file(o.poly)), GroupSpec::z2());
  const auto r = soundness_probe(f, mode, o.probe_generators, o.trials, o.seed);
  json input = {{"mode", to_string(mode)},
                {"poly", print_polynomial(f)},
                {"N", o.probe_generators},
                {"trials", o.trials}};
  json result = {{"trials", r.trials},
                 {"discrepancies", r.discrepancies},
                 {"witness", r.witness ? json(*r.witness) : json(nullptr)}};
  std::string text = std::to_string(r.discrepancies) + " discrepancies in " +
                     std::to_string(r.trials) + " trials\n";
  if (r.witness) text += "witness: " + *r.witness + "\n";
  return {certificate("relfree probe", input, result, o.seed), text};
}

Outcome cmd_model_eval(const Options& o) {
  if (trim(o.poly).empty()) throw UsageError("--poly is required");
  if (o.shape.empty()) throw UsageError("--shape is required");
  const BlockShape shape = parse_shape(o.shape);
  json input = {{"shape", shape.sizes}};
  if (!o.algebra.empty()) {
    // Truncated quotient by T(A) for an arbitrary algebra A.
    const AlgebraDescriptor d = parse_descriptor_text(o.algebra);
    const NcPolynomial f = parse_polynomial(trim(read_text_or_file(o.poly)), d.group);
    const auto provider = evaluation_provider(make_eval_target(d, static_cast<std::size_t>(std::max(f.max_length(), 1))), guard_of(o));
    const auto res = model_eval_quotient(f, shape, d.group, *provider);
    input["backend"] = "quotient";
    input["algebra"] = descriptor_to_json(d);
    input["poly"] = print_polynomial(f);
    json entries = json::array();
    std::string text;
    for (int r = 0; r < res.size; ++r) {
      for (int c = 0; c < res.size; ++c) {
        const std::string e = print_polynomial(res.entries[r * res.size + c]);
        entries.push_back(e);
        text += (c ? " | " : "") + e;
      }
      text += "\n";
    }
    text += std::string("identity: ") + (res.is_identity ? "yes" : "no") + "\n";
    json result = {{"entries", entries},
                   {"is_identity", res.is_identity},
                   {"degree_bound", res.degree_bound},
                   {"note", "entries are raw; vanishing is decided modulo T(A) per multilinear component"}};
    return {certificate("model eval", input, result, std::nullopt), text};
  }
  const GradingMode mode = parse_grading_mode(o.backend);
  const NcPolynomial f = parse_polynomial(trim(read_text_or_file(o.poly)), GroupSpec::z2());
  const ModelConfig cfg{shape, GroupSpec::z2(), mode};
  const GenericMatrix m = model_eval(f, cfg);
  input["backend"] = to_string(mode);
  input["poly"] = print_polynomial(f);
  json entries = json::array();
  for (int r = 0; r < m.size(); ++r)
    for (int c = 0; c < m.size(); ++c) entries.push_back(print_relfree(m.at(r, c)));
  const std::string text = print_matrix(m) + "identity: " + (m.is_zero() ? "yes" : "no") + "\n";
  json result = {{"entries", entries}, {"is_identity", m.is_zero()}};
  return {certificate("model eval", input, result, std::nullopt), text};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graded polynomial identity toolkit", "gpi"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Options o;
  std::size_t max_cells = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--cert", o.cert_path, "write the JSON certificate to this path");
    sub->add_flag("--json", o.json_out, "print the certificate instead of the report");
    sub->add_option("--max-cells", max_cells, "resource guard: rows x columns");
  };

  auto* reg = app.add_subcommand("regularity", "check whether an elementary grading is G-regular");
  reg->add_option("--group", o.group, "cyclic orders, e.g. 2 or 2,3");
  reg->add_option("--targets", o.targets, "degrees of the indices 1..n")->required();
  common(reg);

  auto* ids = app.add_subcommand("identities", "multilinear graded identities at one signature");
  ids->add_option("--algebra", o.algebra, "descriptor: JSON, file, or short form");
  ids->add_option("--generators", o.generators, "file of T-ideal generators, one per line");
  ids->add_flag("--all-gradings", o.all_gradings, "take every grading of each generator");
  ids->add_option("--group", o.group, "group for --generators");
  ids->add_option("--sig", o.sig, "variable degrees, e.g. 0,1,1")->required();
  ids->add_option("--N", o.N, "Grassmann truncation");
  ids->add_flag("--basis", o.basis, "print an RREF basis");
  common(ids);

  auto* fc = app.add_subcommand("factor-check", "compare T(R) with the product of the block T-ideals");
  fc->add_option("--shape", o.shape, "block sizes, e.g. 1,1");
  fc->add_option("--entries", o.entries, "entry algebra descriptor");
  fc->add_option("--algebra", o.algebra, "block_triangular descriptor");
  fc->add_option("--sig", o.sig, "one signature");
  fc->add_option("--sweep", o.sweep, "every signature of total degree 1..n");
  fc->add_option("--N", o.N, "Grassmann truncation");
  common(fc);

  auto* rf = app.add_subcommand("relfree", "relatively free algebras of Grassmann gradings");
  rf->require_subcommand(1);
  auto* nf = rf->add_subcommand("nf", "normal form of a polynomial");
  nf->add_option("--mode", o.mode, "natural, infty or kstar:<k>");
  nf->add_option("--poly", o.poly, "polynomial text or file")->required();
  common(nf);
  auto* mb = rf->add_subcommand("multbasis", "sampled partial multiplicativity of the basis");
  mb->add_option("--mode", o.mode, "natural, infty or kstar:<k>");
  mb->add_option("--bound", o.bound, "degree bound");
  mb->add_option("--samples", o.samples, "number of sampled pairs");
  mb->add_option("--seed", o.seed, "sampling seed");
  common(mb);
  auto* pr = rf->add_subcommand("probe", "compare f with its normal form on random substitutions");
  pr->add_option("--mode", o.mode, "natural, infty or kstar:<k>");
  pr->add_option("--poly", o.poly, "polynomial text or file")->required();
  pr->add_option("--N", o.probe_generators, "Grassmann generators");
  pr->add_option("--trials", o.trials, "number of substitutions");
  pr->add_option("--seed", o.seed, "sampling seed");
  common(pr);

  auto* model = app.add_subcommand("model", "generic matrix model");
  model->require_subcommand(1);
  auto* ev = model->add_subcommand("eval", "evaluate a polynomial on generic matrices");
  ev->add_option("--shape", o.shape, "block sizes")->required();
  ev->add_option("--backend", o.backend, "natural, infty or kstar:<k>");
  ev->add_option("--algebra", o.algebra, "truncated-quotient backend over this algebra");
  ev->add_option("--poly", o.poly, "polynomial text or file")->required();
  common(ev);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (max_cells) o.max_cells = max_cells;

  try {
    Outcome r;
    if (reg->parsed()) {
      r = cmd_regularity(o);
    } else if (ids->parsed()) {
      r = cmd_identities(o);
    } else if (fc->parsed()) {
      r = cmd_factor_check(o);
    } else if (nf->parsed()) {
      r = cmd_relfree_nf(o);
    } else if (mb->parsed()) {
      r = cmd_relfree_multbasis(o);
    } else if (pr->parsed()) {
      r = cmd_relfree_probe(o);
    } else if (ev->parsed()) {
      r = cmd_model_eval(o);
    }
    const std::string cert = r.cert.dump(2) + "\n";
    if (!o.cert_path.empty()) write_atomically(o.cert_path, cert);
    out << (o.json_out ? cert : r.text);
    if (r.code == kExitInconsistent) err << "route disagreement\n";
    return r.code;
  } catch (const GuardExceeded& e) {
    err << "guard exceeded: " << e.what() << " (estimate " << e.estimate() << ")\n";
    return kExitGuard;
  } catch (const InternalInconsistency& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return kExitInconsistent;
  } catch (const Unsupported& e) {
    const std::string what = e.what();
    err << (what.starts_with("unsupported") ? what : "unsupported: " + what) << "\n";
    return kExitUnsupported;
  } catch (const UnsupportedShape& e) {
    err << "unsupported: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInconsistent;
  }
}

}  // namespace gpi
