#include <random>
#include <vector>

#include "doctest.h"
#include "gpi/errors.hpp"
#include "gpi/generic_model.hpp"
#include "support.hpp"

using namespace gpi;
using testing_support::z2poly;

namespace {

ModelConfig config(std::vector<int> sizes, GradingMode mode) {
  ModelConfig cfg;
  cfg.shape = BlockShape{std::move(sizes)};
  cfg.backend = mode;
  return cfg;
}

GenericMatrix gen(int k, int g, const ModelConfig& cfg) {
  return make_generator(k, GroupElement{{g}}, cfg);
}

// Random product of generators with small coefficients.
GenericMatrix random_element(std::mt19937_64& rng, const ModelConfig& cfg) {
  GenericMatrix acc(cfg.shape, cfg.backend);
  for (int t = 0; t < 2; ++t) {
    GenericMatrix term = GenericMatrix::identity(cfg.shape, cfg.backend);
    for (int len = static_cast<int>(rng() % 3); len > 0; --len) {
      term = term * gen(1 + static_cast<int>(rng() % 2), static_cast<int>(rng() % 2), cfg);
    }
    acc += term * Rational(1 + static_cast<int>(rng() % 3));
  }
  return acc;
}

}  // namespace

TEST_CASE("entry variable encoding") {
  const auto cfg = config({1, 1}, GradingMode::natural());
  CHECK(encode_entry_variable(EntryVariable{1, 1, 1, 0}, cfg) == 1);
  CHECK(encode_entry_variable(EntryVariable{1, 2, 2, 0}, cfg) == 10);
  CHECK(encode_entry_variable(EntryVariable{2, 2, 1, 1}, cfg) == 8);
  for (int k = 1; k <= 3; ++k)
    for (std::size_t g = 0; g < 2; ++g)
      for (int r = 1; r <= 2; ++r)
        for (int c = 1; c <= 2; ++c) {
          const EntryVariable v{r, c, k, g};
          CHECK(decode_entry_variable(encode_entry_variable(v, cfg), cfg) == v);
        }
}

TEST_CASE("generators and evaluation") {
  const auto cfg = config({1, 1}, GradingMode::natural());
  const auto x = gen(1, 0, cfg);
  CHECK(print_relfree(x.at(0, 1)) == "y2");
  CHECK(x.at(1, 0).is_zero());
  const auto z = gen(1, 1, cfg);
  CHECK(print_relfree(z.at(0, 0)) == "z5");

  const auto comm = model_eval(z2poly("[y1,y2]"), cfg);
  CHECK(comm.at(0, 0).is_zero());
  CHECK(comm.at(1, 1).is_zero());
  CHECK(print_relfree(comm.at(0, 1)) == "y1*y10 - y2*y9 + y2*y12 - y4*y10");
  CHECK(model_eval(z2poly("[y1,y2]*[y3,y4]"), cfg).is_zero());
  CHECK(model_eval(z2poly("[y1,y2,y3]"), cfg).is_zero() == false);

  const auto k1 = config({1}, GradingMode::k_star(1));
  CHECK(model_eval(z2poly("z1*z2"), k1).is_zero());
  CHECK(model_eval(z2poly("3"), k1) == GenericMatrix::identity(k1.shape, k1.backend) * Rational(3));

  GenericMatrix m(cfg.shape, cfg.backend);
  CHECK_THROWS_AS(m.set(1, 0, parse_relfree("y1", cfg.backend)), Error);
  CHECK_THROWS_AS(m + GenericMatrix(cfg.shape, GradingMode::infty()), ModeMismatch);
}

TEST_CASE("model evaluation is a homomorphism") {
  std::mt19937_64 rng(5);
  for (const auto& mode : {GradingMode::natural(), GradingMode::infty(), GradingMode::k_star(1)}) {
    const auto cfg = config({1, 1}, mode);
    for (int trial = 0; trial < 20; ++trial) {
      const char* words[] = {"y1", "z2", "y1*z2", "z2*y1 + 2", "[y1,z2]", "y1*y1 - z2"};
      const auto f = z2poly(words[rng() % 6]);
      const auto g = z2poly(words[rng() % 6]);
      CHECK(model_eval(poly_mul(f, g), cfg) == model_eval(f, cfg) * model_eval(g, cfg));
      CHECK(model_eval(f + g, cfg) == model_eval(f, cfg) + model_eval(g, cfg));
    }
  }
}

TEST_CASE("shift automorphism") {
  for (int n : {2, 3}) {
    const auto cfg = config({n}, GradingMode::natural());
    std::mt19937_64 rng(n);
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = random_element(rng, cfg), b = random_element(rng, cfg);
      const auto sa = shift_automorphism(a, cfg);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) CHECK(sa.at(i, j) == a.at((i + 1) % n, (j + 1) % n));
      CHECK(shift_automorphism(a * b, cfg) == sa * shift_automorphism(b, cfg));
      auto power = a;
      for (int i = 0; i < n; ++i) power = shift_automorphism(power, cfg);
      CHECK(power == a);
    }
  }
  const auto ut = config({1, 1}, GradingMode::natural());
  CHECK_THROWS_AS(shift_automorphism(gen(1, 0, ut), ut), UnsupportedShape);
}

TEST_CASE("column projection and independence") {
  const auto cfg = config({2}, GradingMode::natural());
  const auto x = gen(1, 0, cfg), y = gen(2, 1, cfg);
  const auto col = column_projection(x, 2);
  REQUIRE(col.size() == 2);
  CHECK(print_relfree(col[0]) == "y2");
  CHECK(print_relfree(col[1]) == "y4");

  std::vector<GenericMatrix> indep{x, y, x * y};
  CHECK(independent_full(indep));
  CHECK(independent_by_columns(indep, 1));
  std::vector<GenericMatrix> dep{x, y, x * Rational(2) - y};
  CHECK(!independent_full(dep));
  CHECK(!independent_by_columns(dep, 2));
  std::vector<GenericMatrix> empty;
  CHECK(independent_full(empty));
  const auto ut = config({1, 1}, GradingMode::natural());
  std::vector<GenericMatrix> ut_set{gen(1, 0, ut)};
  CHECK_THROWS_AS(independent_by_columns(ut_set, 1), UnsupportedShape);
}

TEST_CASE("block views") {
  const auto cfg = config({1, 2}, GradingMode::infty());
  const auto m = model_eval(z2poly("y1*z2 + z2*y1"), cfg);
  const auto v = extract_blocks(m, cfg);
  CHECK(v.leading.size() == 1);
  CHECK(v.corner.size() == 2);
  CHECK(v.strip_rows == 1);
  CHECK(v.strip_cols == 2);
  CHECK(v.strip[1] == m.at(0, 2));
  CHECK(v.corner.at(1, 0) == m.at(2, 1));
  CHECK(reassemble(v, cfg) == m);
  CHECK_THROWS_AS(extract_blocks(gen(1, 0, config({3}, GradingMode::infty())),
                                 config({3}, GradingMode::infty())),
                  Error);
}

TEST_CASE("printing") {
  const auto cfg = config({1, 1}, GradingMode::natural());
  CHECK(print_matrix(gen(1, 0, cfg)) == "y1 | y2\n0 | y4\n");
}
