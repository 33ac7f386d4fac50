#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gpi/cli.hpp"
#include "gpi/descriptor.hpp"
#include "gpi/errors.hpp"

using namespace gpi;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "gpi_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("descriptor round trips") {
  for (const char* text : {
           R"({"kind":"grassmann","group":[2],"N":6,"grading":{"deg":"kstar","k":1}})",
           R"({"kind":"grassmann","group":[2],"grading":{"values":[1,0,1]}})",
           R"({"kind":"grassmann","group":[]})",
           R"({"kind":"matrix","n":2,"group":[2],"grading":{"targets":[0,1]}})",
           R"({"kind":"matrix","n":2,"group":[2,3],"grading":{"targets":[[0,1],[1,2]]}})",
           R"({"kind":"block_triangular","shape":[2,2],"group":[2],"grading":{"targets":[0,1,0,1]}})",
           R"({"kind":"matrix_over","shape":[1,1],"entries":{"kind":"grassmann","group":[2],"grading":{"deg":"infty"}}})",
       }) {
    const auto d = descriptor_from_json(json::parse(text));
    const auto dumped = dump_descriptor(d);
    CHECK(dumped.back() == '\n');
    CHECK(dump_descriptor(descriptor_from_json(json::parse(dumped))) == dumped);
    CHECK(dump_descriptor(parse_descriptor_text(text)) == dumped);
  }
}

TEST_CASE("descriptor short forms") {
  const auto g = parse_descriptor_text("grassmann:N=6,deg=kstar,k=2");
  CHECK(g.kind == "grassmann");
  CHECK(g.N == 6);
  CHECK(g.grassmann.deg_kind == GrassmannDegree::k_star);
  CHECK(g.grassmann.k == 2);
  CHECK(parse_descriptor_text("grassmann").N == 0);

  const auto m = parse_descriptor_text("matrix:targets=0;1");
  CHECK(m.n == 2);
  CHECK(dump_descriptor(m) == dump_descriptor(parse_descriptor_text("matrix:targets=0:1")));

  const auto bt = parse_descriptor_text("block_triangular:shape=2:2,targets=0:1:0:1");
  CHECK(bt.shape == BlockShape{{2, 2}});
  CHECK(build_algebra(bt).dim() == 12);

  const auto f = parse_descriptor_text("field");
  CHECK(build_algebra(f).dim() == 1);
  CHECK(f.group.is_trivial());

  CHECK_THROWS_AS(parse_descriptor_text("grassmann:deg=k,k=1"), Unsupported);
  CHECK_THROWS_AS(parse_descriptor_text("octonions"), Error);
  CHECK_THROWS_AS(parse_descriptor_text(R"({"kind":"matrix","n":2,"group":[2]})"), Error);

  const auto path = scratch("descriptor.json");
  std::ofstream(path) << dump_descriptor(bt);
  CHECK(dump_descriptor(parse_descriptor_text(path.string())) == dump_descriptor(bt));
}

TEST_CASE("matrix_over and evaluation targets") {
  const auto e = parse_descriptor_text("grassmann:deg=natural");
  CHECK(dump_descriptor(matrix_over(e, BlockShape{{1}})) == dump_descriptor(e));
  const auto ut = matrix_over(e, BlockShape{{1, 1}});
  CHECK(ut.kind == "matrix_over");
  CHECK(ut.is_grassmann_based());
  CHECK(ut.innermost().kind == "grassmann");
  const auto t = make_eval_target(ut, 3);
  REQUIRE(std::holds_alternative<GrassmannMatrixTarget>(t));
  CHECK(std::get<GrassmannMatrixTarget>(t).spec.n_generators == 6);
  CHECK(std::get<GrassmannMatrixTarget>(make_eval_target(ut, 3, 1)).spec.n_generators == 7);
  const auto fixed = parse_descriptor_text("grassmann:N=5");
  CHECK(std::get<GrassmannMatrixTarget>(make_eval_target(fixed, 3)).spec.n_generators == 5);
  CHECK(std::holds_alternative<AlgebraPtr>(make_eval_target(parse_descriptor_text("matrix:targets=0;1"), 2)));
}

TEST_CASE("cli examples") {
  auto r = run({"regularity", "--group", "2", "--targets", "0,1"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("regular: yes") != std::string::npos);
  r = run({"regularity", "--group", "2", "--targets", "0,0"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("regular: no") != std::string::npos);

  r = run({"identities", "--algebra", "matrix:targets=0;1", "--sig", "0,0", "--basis"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("dim 1 of 2") != std::string::npos);
  CHECK(r.out.find("x1^(0)*x2^(0) - x2^(0)*x1^(0)") != std::string::npos);

  r = run({"identities", "--algebra", "grassmann:deg=kstar,k=1", "--sig", "1,1"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("dim 2 of 2") != std::string::npos);
  CHECK(r.out.find("(agrees)") != std::string::npos);

  r = run({"relfree", "nf", "--mode", "infty", "--poly", "y2*y1"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "-[y1,y2] + y1*y2\n");

  r = run({"relfree", "multbasis", "--mode", "kstar:1", "--bound", "4", "--samples", "50", "--seed", "1"});
  CHECK(r.out.find("= 0") != std::string::npos);

  r = run({"model", "eval", "--shape", "1,1", "--backend", "kstar:1", "--poly", "z1*z2"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("identity: yes") != std::string::npos);

  r = run({"factor-check", "--shape", "1,1", "--entries", "grassmann:deg=natural", "--sweep", "2"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("summary: 6 equal, 0 product_strictly_inside") != std::string::npos);

  r = run({"factor-check", "--shape", "1,1", "--entries", "grassmann:deg=kstar,k=1", "--sig", "1,1"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("product_strictly_inside witness x1^(1)*x2^(1)") != std::string::npos);
}

TEST_CASE("cli exit codes") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"regularity", "--nonsense"}).code == kExitUsage);
  CHECK(run({"identities", "--algebra", "grassmann:N=6"}).code == kExitUsage);
  CHECK(run({"relfree", "nf", "--mode", "infty", "--poly", "x1^("}).code == kExitUsage);
  CHECK(run({"identities", "--algebra", "grassmann:N=4,deg=infty", "--sig", "0,1,1,0"}).code ==
        kExitGuard);
  CHECK(run({"identities", "--algebra", "matrix:targets=0;1", "--sig", "0,0,0", "--max-cells", "4"})
            .code == kExitGuard);
  CHECK(run({"relfree", "nf", "--mode", "k:2", "--poly", "z1"}).code == kExitUnsupported);
  CHECK(run({"model", "eval", "--shape", "2,1", "--backend", "natural", "--poly", "y1"}).code ==
        kExitOk);
  const auto bad = run({"identities", "--algebra", "grassmann:deg=k,k=1", "--sig", "1"});
  CHECK(bad.code == kExitUnsupported);
  CHECK(bad.err.find("unsupported: ") != std::string::npos);
}

TEST_CASE("certificates are deterministic") {
  const std::vector<std::vector<std::string>> commands = {
      {"identities", "--algebra", "grassmann:deg=infty", "--sig", "0,1,1", "--basis"},
      {"factor-check", "--shape", "1,1", "--entries", "grassmann:deg=natural", "--sweep", "2"},
      {"relfree", "probe", "--mode", "natural", "--poly", "[y1,y2,y3]", "--trials", "50", "--seed", "3"},
      {"regularity", "--group", "2", "--targets", "0,1,1"},
  };
  int index = 0;
  for (auto args : commands) {
    const auto a = scratch("cert_a" + std::to_string(index) + ".json");
    const auto b = scratch("cert_b" + std::to_string(index) + ".json");
    ++index;
    auto first = args, second = args;
    first.insert(first.end(), {"--cert", a.string()});
    second.insert(second.end(), {"--cert", b.string()});
    REQUIRE(run(first).code == kExitOk);
    REQUIRE(run(second).code == kExitOk);
    const auto bytes = slurp(a);
    CHECK(bytes == slurp(b));
    const auto j = json::parse(bytes);
    CHECK(j["schema_version"] == kCertificateSchema);
    CHECK(j["tool"] == "gpi");
    CHECK(j["tool_version"] == kToolVersion);
    CHECK(j["enumeration_order"] == kEnumerationOrder);
    CHECK(j.contains("input"));
    CHECK(j.contains("result"));
    CHECK(j.contains("seed"));
    CHECK(bytes == j.dump(2) + "\n");
  }
  const auto probe = json::parse(slurp(scratch("cert_a2.json")));
  CHECK(probe["seed"] == 3);
}

TEST_CASE("atomic writes replace the target") {
  const auto p = scratch("atomic.txt");
  write_atomically(p.string(), "first");
  write_atomically(p.string(), "second");
  CHECK(slurp(p) == "second");
  for (const auto& entry : std::filesystem::directory_iterator(p.parent_path())) {
    CHECK(entry.path().filename().string().find(".tmp") == std::string::npos);
  }
}
