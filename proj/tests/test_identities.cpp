#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "gpi/errors.hpp"
#include "gpi/generic_model.hpp"
#include "gpi/identities.hpp"
#include "gpi/poly_text.hpp"
#include "support.hpp"

using namespace gpi;
using testing_support::plain_poly;
using testing_support::plain_sig;
using testing_support::z2poly;
using testing_support::z2sig;

namespace {

GrassmannSpec natural(int N) { return GrassmannSpec{N, GrassmannDegree::natural}; }
GrassmannSpec infty(int N) { return GrassmannSpec{N, GrassmannDegree::infty}; }
GrassmannSpec kstar(int N, int k) { return GrassmannSpec{N, GrassmannDegree::k_star, k}; }

AlgebraPtr shared(StructureConstantAlgebra a) {
  return std::make_shared<const StructureConstantAlgebra>(std::move(a));
}

ProviderPtr generated_by(const std::string& text, const GroupSpec& group) {
  TIdealPresentation t{group, {}};
  t.add(parse_polynomial(text, group));
  return consequence_provider(t);
}

}  // namespace

TEST_CASE("identities by evaluation: small examples") {
  const auto e6 = with_trivial_grading(build_grassmann(natural(6)));
  CHECK(identities_by_evaluation(e6, plain_sig(2)).dim() == 0);
  CHECK(identities_by_evaluation(e6, plain_sig(3)).dim() == 2);

  const auto m2 = build_matrix_algebra(2, GradingMap{{GroupElement{{0}}, GroupElement{{1}}}},
                                       GroupSpec::z2());
  const auto c = identities_by_evaluation(m2, z2sig({0, 0}));
  REQUIRE(c.dim() == 1);
  CHECK(membership(z2poly("[x1^(0),x2^(0)]"), c));
  CHECK(!membership(z2poly("x1^(0)*x2^(0)"), c));
  CHECK_THROWS_AS(membership(z2poly("x1^(1)*x2^(0)"), c), SignatureMismatch);

  const auto k1 = identities_by_evaluation(build_grassmann(kstar(6, 1)), z2sig({1, 1}));
  CHECK(k1.dim() == 2);
  CHECK(membership(z2poly("z1*z2"), k1));
  CHECK(identities_by_evaluation(build_grassmann(natural(4)), z2sig({1, 1})).dim() == 1);
}

TEST_CASE("fast rows agree with full enumeration") {
  for (const auto& spec : {natural(4), infty(4), kstar(4, 1), natural(6), kstar(6, 2)}) {
    const auto full = build_grassmann(spec);
    for (std::size_t n = 1; n <= 3; ++n) {
      for (const auto& sig : all_signatures(GroupSpec::z2(), n)) {
        if (saturating_generators(spec, sig) > spec.n_generators) continue;
        const auto a = identities_by_evaluation(full, sig);
        const auto b = identities_by_evaluation(GrassmannMatrixTarget{spec}, sig);
        CHECK(subspace_cmp(a.space, b.space) == SubspaceRelation::equal);
      }
    }
  }
  // matrices over E
  const GrassmannMatrixTarget ut{natural(4), BlockShape{{1, 1}}};
  const auto full = build_matrix_over(build_grassmann(natural(4)), BlockShape{{1, 1}});
  for (const auto& sig : all_signatures(GroupSpec::z2(), 3)) {
    CHECK(subspace_cmp(identities_by_evaluation(full, sig).space,
                       identities_by_evaluation(ut, sig).space) == SubspaceRelation::equal);
  }
}

TEST_CASE("truncation rules") {
  CHECK(default_truncation(natural(0), 4) == 8);
  CHECK(default_truncation(kstar(0, 2), 4) == 10);
  CHECK_THROWS_AS(identities_by_evaluation(GrassmannMatrixTarget{infty(4)}, z2sig({0, 1, 1, 0})),
                  GuardExceeded);
  try {
    grassmann_fast_rows(GrassmannMatrixTarget{infty(4)}, z2sig({0, 1, 1, 0}));
    FAIL("expected a guard");
  } catch (const GuardExceeded& e) {
    CHECK(std::string(e.what()).find("use N >=") != std::string::npos);
  }
  CHECK_NOTHROW(grassmann_fast_rows(GrassmannMatrixTarget{infty(4)}, z2sig({0, 1, 1, 0}), false));
}

TEST_CASE("identities by consequences") {
  const auto trivial = GroupSpec::trivial();
  TIdealPresentation t{trivial, {}};
  t.add(plain_poly("[x1,x2,x3]"));
  CHECK(identities_by_consequences(t, plain_sig(3)).dim() == 2);
  CHECK(identities_by_consequences(t, plain_sig(2)).dim() == 0);

  TIdealPresentation comm{trivial, {}};
  comm.add(plain_poly("[x1,x2]"));
  CHECK(identities_by_consequences(comm, plain_sig(2)).dim() == 1);
  CHECK(identities_by_consequences(comm, plain_sig(3)).dim() == 5);

  TIdealPresentation zz{GroupSpec::z2(), {}};
  zz.add(z2poly("z1*z2"));
  CHECK(identities_by_consequences(zz, z2sig({1, 1})).dim() == 2);
  CHECK(identities_by_consequences(zz, z2sig({0, 0})).dim() == 0);
  CHECK(identities_by_consequences(zz, z2sig({1, 0, 1})).dim() == 6);

  TIdealPresentation bad{trivial, {}};
  CHECK_THROWS_AS(bad.add(plain_poly("x1*x1")), MalformedElement);

  TIdealPresentation all{GroupSpec::z2(), {}};
  all.add_all_gradings(plain_poly("[x1,x2]"));
  CHECK(all.generators.size() == 4);
}

TEST_CASE("both routes agree on Grassmann presentations") {
  for (const auto& spec : {natural(0), infty(0), kstar(0, 1), kstar(0, 2)}) {
    const auto pres = grassmann_presentation(spec, true);
    for (std::size_t n = 1; n <= 3; ++n) {
      for (const auto& sig : all_signatures(GroupSpec::z2(), n)) {
        auto s = spec;
        s.n_generators = default_truncation(spec, n);
        CHECK(subspace_cmp(identities_by_evaluation(GrassmannMatrixTarget{s}, sig).space,
                           identities_by_consequences(pres, sig).space) == SubspaceRelation::equal);
      }
    }
  }
  const auto ungraded = grassmann_presentation(natural(0), false);
  const std::size_t expected[] = {0, 0, 2, 16};
  for (std::size_t n = 2; n <= 4; ++n) {
    CHECK(identities_by_consequences(ungraded, plain_sig(n)).dim() == expected[n - 1]);
    auto s = natural(static_cast<int>(2 * n));
    CHECK(identities_by_evaluation(GrassmannMatrixTarget{s}, plain_sig(n)).dim() == expected[n - 1]);
  }
}

TEST_CASE("permutation equivariance") {
  const GrassmannMatrixTarget t{infty(6), BlockShape{{1}}};
  const auto sig = z2sig({0, 1, 1});
  const auto swapped = z2sig({1, 1, 0});  // x1 -> x3, x2 -> x1, x3 -> x2
  const auto a = identities_by_evaluation(t, sig);
  const auto b = identities_by_evaluation(t, swapped);
  CHECK(a.dim() == b.dim());
  const GroupSpec z2 = GroupSpec::z2();
  for (const auto& row : a.space.basis()) {
    const auto f = from_multilinear_coordinates(make_dense(row, a.space.ambient_dim()), sig);
    const auto g = substitute(f,
                              {{1, NcPolynomial::variable(3, GroupElement{{0}})},
                               {2, NcPolynomial::variable(1, GroupElement{{1}})},
                               {3, NcPolynomial::variable(2, GroupElement{{1}})}},
                              z2);
    CHECK(membership(g, b));
  }
}

TEST_CASE("ideal products") {
  const auto trivial = GroupSpec::trivial();
  const auto c = generated_by("[x1,x2]", trivial);
  CHECK(tideal_product(*c, *c, plain_sig(2)).dim() == 0);
  const auto p4 = tideal_product(*c, *c, plain_sig(4));
  CHECK(p4.dim() == 6);
  CHECK(subspace_cmp(p4.space, tideal_product_bordered(*c, *c, plain_sig(4)).space) ==
        SubspaceRelation::equal);
  CHECK(membership(plain_poly("[x1,x2]*[x3,x4]"), p4));

  const auto ut2 = build_block_triangular_elementary(BlockShape{{1, 1}},
                                                     GradingMap{{GroupElement{}, GroupElement{}}},
                                                     trivial);
  for (std::size_t n = 2; n <= 4; ++n) {
    CHECK(subspace_cmp(identities_by_evaluation(ut2, plain_sig(n)).space,
                       tideal_product(*c, *c, plain_sig(n)).space) == SubspaceRelation::equal);
  }
  const auto prod = product_provider(c, c);
  CHECK(prod->component(plain_sig(4)).dim() == 6);

  // bordered and plain products on a graded pair
  const auto e = evaluation_provider(GrassmannMatrixTarget{natural(8)});
  for (const auto& sig : all_signatures(GroupSpec::z2(), 3)) {
    CHECK(subspace_cmp(tideal_product(*e, *e, sig).space,
                       tideal_product_bordered(*e, *e, sig).space) == SubspaceRelation::equal);
  }
}

TEST_CASE("factoring checks") {
  SUBCASE("equal for UT(1,1;E) natural") {
    const auto r = evaluation_provider(GrassmannMatrixTarget{natural(8), BlockShape{{1, 1}}});
    const auto e = evaluation_provider(GrassmannMatrixTarget{natural(8)});
    for (const auto& sig : all_signatures(GroupSpec::z2(), 3)) {
      const auto v = check_factoring(*r, {e, e}, sig);
      CHECK(v.relation == FactoringRelation::equal);
      CHECK(v.dim_R == v.dim_product);
      CHECK(!v.witness);
    }
  }
  SUBCASE("strict for k_star") {
    const auto r = evaluation_provider(GrassmannMatrixTarget{kstar(6, 1), BlockShape{{1, 1}}});
    const auto e = evaluation_provider(GrassmannMatrixTarget{kstar(6, 1)});
    const auto v = check_factoring(*r, {e, e}, z2sig({1, 1}));
    CHECK(v.relation == FactoringRelation::product_strictly_inside);
    CHECK(v.dim_R == 2);
    CHECK(v.dim_product == 0);
    REQUIRE(v.witness.has_value());
    CHECK(print_polynomial(*v.witness) == "x1^(1)*x2^(1)");
    CHECK(to_string(v.relation) == "product_strictly_inside");
  }
  SUBCASE("inconsistent inputs") {
    // (x1)(x1) holds x1*x2, which the field does not satisfy
    const auto field = evaluation_provider(shared(build_matrix_algebra(
        1, GradingMap{{GroupElement{}}}, GroupSpec::trivial())));
    const auto big = generated_by("x1", GroupSpec::trivial());
    CHECK_THROWS_AS(check_factoring(*field, {big, big}, plain_sig(2)), InternalInconsistency);
  }
}

TEST_CASE("stabilization scan") {
  const auto family = [](int N) -> EvalTarget { return GrassmannMatrixTarget{natural(N)}; };
  const auto rep = stabilization_scan(family, plain_sig(3), {6, 7, 8});
  CHECK(rep.n_values == std::vector<int>{6, 7, 8});
  CHECK(rep.dims == std::vector<std::size_t>{2, 2, 2});
  CHECK(rep.stabilized);
}

TEST_CASE("component cache and descriptions") {
  const auto e = evaluation_provider(GrassmannMatrixTarget{natural(6)});
  const auto& first = e->component(z2sig({1, 1}));
  const auto& second = e->component(z2sig({1, 1}));
  CHECK(&first == &second);
  CHECK(!e->describe().empty());
  CHECK(describe(EvalTarget{GrassmannMatrixTarget{natural(6)}}) ==
        GrassmannMatrixTarget{natural(6)}.describe());
}

TEST_CASE("quotient generic model agrees with the relatively free model") {
  const auto provider = evaluation_provider(GrassmannMatrixTarget{natural(8)});
  ModelConfig cfg;
  cfg.shape = BlockShape{{1, 1}};
  cfg.backend = GradingMode::natural();
  for (const char* text : {"[y1,y2]", "[y1,y2,y3]", "[y1,y2]*[y3,y4]", "z1*z2 + z2*z1",
                           "[y1,z2]*[z3,y4]", "z1*y2*z3", "[z1,z2]"}) {
    const auto f = z2poly(text);
    const auto q = model_eval_quotient(f, cfg.shape, GroupSpec::z2(), *provider);
    CHECK(q.size == 2);
    CHECK(q.is_identity == model_eval(f, cfg).is_zero());
  }
  CHECK(vanishes_modulo(z2poly("z1*z2 + z2*z1"), *provider));
  CHECK(!vanishes_modulo(z2poly("z1*z2"), *provider));
}
