#include <cstdlib>
#include <random>

#include "doctest.h"
#include "gpi/errors.hpp"
#include "gpi/relfree.hpp"
#include "support.hpp"

using namespace gpi;
using testing_support::z2poly;

namespace {

const GradingMode kModes[] = {GradingMode::natural(), GradingMode::infty(), GradingMode::k_star(1),
                              GradingMode::k_star(2)};

std::string nf(const std::string& text, const GradingMode& m) {
  return print_relfree(normal_form(z2poly(text), m));
}

// Random polynomial over x1..x4 with fixed degrees x1,x2 even and x3,x4 odd.
NcPolynomial random_poly(std::mt19937_64& rng) {
  static const char* letters[] = {"y1", "y2", "z3", "z4"};
  std::uniform_int_distribution<int> len(0, 4), var(0, 3), coef(-2, 2);
  std::string text = "0";
  for (int t = 0; t < 3; ++t) {
    const int c = coef(rng);
    if (c == 0) continue;
    text += (c > 0 ? " + " : " - ") + std::to_string(std::abs(c));
    for (int i = len(rng); i > 0; --i) text += std::string("*") + letters[var(rng)];
  }
  auto f = z2poly(text);
  f.declare(1, GroupElement{{0}});
  f.declare(2, GroupElement{{0}});
  f.declare(3, GroupElement{{1}});
  f.declare(4, GroupElement{{1}});
  return f;
}

}  // namespace

TEST_CASE("normal form examples") {
  const auto inf = GradingMode::infty();
  CHECK(nf("y2*y1", inf) == "-[y1,y2] + y1*y2");
  CHECK(nf("[y1,y2]*[y1,y3]", inf) == "0");
  CHECK(nf("[y3,y4]*[y1,y2]", inf) == "[y1,y2]*[y3,y4]");
  CHECK(nf("z1*z1", GradingMode::natural()) == "0");
  CHECK(nf("z1*z1", inf) == "z1*z1");
  CHECK(nf("z1*z2", GradingMode::k_star(1)) == "0");
  CHECK(nf("z2*z1", GradingMode::natural()) == "-z1*z2");
  CHECK(nf("[[y1,y2],y3]", inf) == "0");
  CHECK(nf("0", inf) == "0");
  CHECK(nf("3", inf) == "3");
  // trivial-group variables are read as even
  CHECK(print_relfree(normal_form(testing_support::plain_poly("x2*x1"), inf)) ==
        "-[y1,y2] + y1*y2");
}

TEST_CASE("basis word invariants") {
  const auto inf = GradingMode::infty();
  const auto mixed = normal_form(z2poly("z3*y2*[y1,z4]*y5"), inf);
  CHECK(mixed.terms().size() == 3);
  for (const auto& [w, c] : mixed.terms()) CHECK(is_basis_word(w, inf));
  RelFreeWord repeated{{}, {Letter{1, false}, Letter{1, false}}};
  CHECK(!is_basis_word(repeated, inf));
  RelFreeWord zz{{Letter{1, true}, Letter{1, true}}, {}};
  CHECK(is_basis_word(zz, inf));
  CHECK(!is_basis_word(zz, GradingMode::natural()));
  RelFreeWord two_odd{{Letter{1, true}, Letter{2, true}}, {}};
  CHECK(!is_basis_word(two_odd, GradingMode::k_star(1)));
  CHECK(is_basis_word(two_odd, GradingMode::k_star(2)));
}

TEST_CASE("relfree_mul examples") {
  const auto inf = GradingMode::infty();
  const auto a = parse_relfree("[y1,y2]", inf);
  const auto b = parse_relfree("[y1,y3]", inf);
  CHECK(relfree_mul(a, b).is_zero());
  CHECK(print_relfree(relfree_mul(parse_relfree("y2", inf), parse_relfree("y1", inf))) ==
        "-[y1,y2] + y1*y2");
  CHECK(print_relfree(relfree_mul(parse_relfree("z2", GradingMode::natural()),
                                  parse_relfree("z1", GradingMode::natural()))) == "-z1*z2");
  CHECK_THROWS_AS(relfree_mul(a, parse_relfree("y1", GradingMode::natural())), ModeMismatch);
}

TEST_CASE("grading mode text") {
  CHECK(parse_grading_mode("natural") == GradingMode::natural());
  CHECK(parse_grading_mode("kstar:3") == GradingMode::k_star(3));
  CHECK(to_string(GradingMode::k_star(2)) == "kstar:2");
  CHECK_THROWS_AS(parse_grading_mode("k:2"), Unsupported);
  CHECK_THROWS_AS(parse_grading_mode("diagonal"), Error);
}

TEST_CASE("normal form laws on samples") {
  std::mt19937_64 rng(2024);
  for (const auto& m : kModes) {
    for (int trial = 0; trial < 300; ++trial) {
      const auto f = random_poly(rng), g = random_poly(rng), h = random_poly(rng);
      const auto nf_f = normal_form(f, m), nf_g = normal_form(g, m), nf_h = normal_form(h, m);
      // idempotence
      CHECK(normal_form(expand(nf_f), m) == nf_f);
      // linearity
      CHECK(normal_form(f + g * Rational(3), m) == nf_f + nf_g * Rational(3));
      // compatibility with the product
      CHECK(normal_form(poly_mul(f, g), m) == relfree_mul(nf_f, nf_g));
      // associativity
      CHECK(relfree_mul(relfree_mul(nf_f, nf_g), nf_h) == relfree_mul(nf_f, relfree_mul(nf_g, nf_h)));
      // printing round trip
      CHECK(parse_relfree(print_relfree(nf_f), m) == nf_f);
      for (const auto& [w, c] : nf_f.terms()) CHECK(is_basis_word(w, m));
    }
  }
}

TEST_CASE("soundness probe") {
  for (const auto& m : kModes) {
    for (const char* text : {"[y1,y2,y3]", "[y1,y2]*[y1,y3]", "z1*z2*z1", "y2*z1*[y3,z4]",
                             "[z1,z2]*[y3,y4]", "z2*z1 + z1*z2"}) {
      const auto r = soundness_probe(z2poly(text), m, 8, 200, 7);
      CHECK(r.trials == 200);
      CHECK(r.discrepancies == 0);
      CHECK(!r.witness);
    }
  }
  RewriteFaults faulty;
  faulty.drop_slot_sign = true;
  const auto r = soundness_probe(z2poly("[y1,y3]*[y2,y4]"), GradingMode::infty(), 8, 500, 7, faulty);
  CHECK(r.discrepancies > 0);
  CHECK(r.witness.has_value());
}

TEST_CASE("multiplicativity of the basis") {
  const auto nat = partial_multiplicativity_check(GradingMode::natural(), 4, 200, 1);
  CHECK(nat.holds);
  CHECK(nat.samples_checked >= 200);
  CHECK(partial_multiplicativity_check(GradingMode::infty(), 4, 200, 1).holds);
  const auto k1 = partial_multiplicativity_check(GradingMode::k_star(1), 4, 200, 1);
  CHECK(!k1.holds);
  CHECK(k1.witness.find("= 0") != std::string::npos);
}

TEST_CASE("multilinear basis words count") {
  // all-even degree 4: one word per even-size set of commutator slots
  const auto inf = GradingMode::infty();
  CHECK(multilinear_basis_words(inf, testing_support::z2sig({0, 0})).size() == 2);
  CHECK(multilinear_basis_words(inf, testing_support::z2sig({1, 1})).size() == 2);
  CHECK(multilinear_basis_words(GradingMode::natural(), testing_support::z2sig({1, 1})).size() == 1);
  CHECK(multilinear_basis_words(GradingMode::k_star(1), testing_support::z2sig({1, 1})).empty());
  CHECK(multilinear_basis_words(inf, testing_support::z2sig({0, 0, 0, 0})).size() == 8);
}

TEST_CASE("rename_variables") {
  const auto inf = GradingMode::infty();
  const auto a = parse_relfree("y1*y2", inf);
  CHECK(print_relfree(rename_variables(a, {{1, 2}, {2, 1}})) == "-[y1,y2] + y1*y2");
}
