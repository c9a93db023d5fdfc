#include <doctest.h>

#include <cmath>
#include <numbers>

#include "superlogic/gates.hpp"

using namespace superlogic;
using std::numbers::pi;

TEST_CASE("registry") {
  CHECK(find_gate("and")->n_in == 2);
  CHECK(find_gate("and")->n_out == 1);
  CHECK(find_gate("deutsch")->parametric);
  CHECK_FALSE(find_gate("toffoli"));
  GeneratorPool pool;
  CHECK_THROWS_AS(make_gate(pool, "toffoli"), GateError);
  CHECK_THROWS_AS(make_gate(pool, "deutsch"), GateError);
  CHECK_THROWS_AS(make_gate(pool, "and", 0.1), GateError);
}

TEST_CASE("representations agree") {
  GeneratorPool pool;
  for (const auto& info : gate_registry()) {
    std::optional<double> phi;
    if (info.parametric) phi = 0.7;
    auto g = make_gate(pool, info.name, phi);
    CHECK(g.n_in == info.n_in);
    CHECK(g.n_out == info.n_out);
    CHECK(max_abs_diff(g.symbol.value, matrix_symbol(pool, g.matrix).value) < 1e-12);
    CHECK(max_abs_diff(operator_from_symbol(g.symbol), g.matrix) < 1e-12);
    if (g.is_square()) {
      REQUIRE(g.covariant);
      REQUIRE(g.fb);
      for (std::uint32_t m = 0; m < fock_dim(g.n_in); ++m) {
        auto f = state_symbol(pool, FockVector::basis({m, g.n_in}));
        auto expected = state_symbol(pool, g.matrix.apply(FockVector::basis({m, g.n_in})));
        CHECK(max_abs_diff(fb_apply(pool, *g.fb, f).value, expected.value) < 1e-12);
      }
      if (g.exp_generator) {
        CHECK(max_abs_diff(grassmann_exp(*g.exp_generator), g.covariant->value) < 1e-12);
      }
    }
  }
}

TEST_CASE("catalog forms of the classical gates") {
  GeneratorPool pool;
  for (const char* name : {"not", "and", "or"}) {
    auto g = make_gate(pool, name);
    CHECK(max_abs_diff(g.display_symbol().value, *catalog_symbol(pool, name)) < 1e-12);
  }
  CHECK(max_abs_diff(*make_gate(pool, "not").fb, *catalog_fb("not")) < 1e-12);
  CHECK_FALSE(catalog_symbol(pool, "xor"));
}

TEST_CASE("computed Toffoli and Deutsch symbols") {
  GeneratorPool pool;
  GrassmannElement one(pool, 1.0);
  auto a = [&](int k) { return GrassmannElement::generator(pool, pool.out_gen(k)); };
  auto b = [&](int k) { return GrassmannElement::generator(pool, pool.in_gen(k)); };
  auto toffoli = 1.0 * one + a(3) * a(2) * (a(1) + b(1) - one) * b(2) * b(3);
  CHECK(max_abs_diff(make_gate(pool, "cc_not").covariant->value, toffoli) < 1e-12);
  for (double phi : {0.0, 0.3, pi / 2, 1.7}) {
    const Complex i(0.0, 1.0);
    auto d = one + a(3) * a(2) *
                       ((i * std::cos(phi) - 1.0) * one + std::sin(phi) * (a(1) + b(1))) * b(2) *
                       b(3);
    auto g = make_gate(pool, "deutsch", phi);
    CHECK(max_abs_diff(g.covariant->value, d) < 1e-12);
    CHECK(max_abs_diff(parity_split(g.covariant->value).odd,
                       std::sin(phi) * (a(3) * a(2) * (a(1) + b(1)) * b(2) * b(3))) < 1e-12);
  }
  CHECK(max_abs_diff(make_gate(pool, "deutsch", pi / 2).covariant->value,
                     make_gate(pool, "cc_not").covariant->value) < 1e-12);
}

TEST_CASE("catalog exponent satisfies its own exponential identity") {
  GeneratorPool pool;
  for (double phi : {0.0, 0.3, 1.7}) {
    auto h = catalog_deutsch_exponent(pool, phi);
    CHECK(max_abs_diff(grassmann_exp(h), *catalog_symbol(pool, "deutsch", phi)) < 1e-12);
  }
}

TEST_CASE("Deutsch prime") {
  GeneratorPool pool;
  for (auto [x, y] : {std::pair{0.3, 0.4}, std::pair{pi / 2, pi / 2}, std::pair{1.0, -1.0}}) {
    auto lhs = deutsch_prime(pool, x).matrix * deutsch_prime(pool, y).matrix;
    CHECK(max_abs_diff(lhs, deutsch_prime(pool, x + y).matrix) < 1e-12);
  }
  CHECK(max_abs_diff(deutsch_prime(pool, 0.0).matrix, FockOperator::identity(3)) < 1e-15);
  auto inv = deutsch_prime(pool, 0.6).matrix * deutsch_prime(pool, -0.6).matrix;
  CHECK(max_abs_diff(inv, FockOperator::identity(3)) < 1e-12);

  // classical only in the trivial case
  for (int k = 0; k < 16; ++k) {
    const double phi = k * pi / 8;
    auto m = deutsch_prime(pool, phi).matrix;
    bool classical = true;
    for (Eigen::Index r = 0; r < m.entries.rows(); ++r)
      for (Eigen::Index c = 0; c < m.entries.cols(); ++c) {
        auto v = m.entries(r, c);
        bool zero_one = std::abs(v) < 1e-12 || std::abs(v - 1.0) < 1e-12;
        classical = classical && zero_one;
      }
    bool identity = max_abs_diff(m, FockOperator::identity(3)) < 1e-12;
    CHECK(classical == identity);
  }
}
