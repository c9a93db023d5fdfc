#include <doctest.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "superlogic/automaton.hpp"

using namespace superlogic;
using std::numbers::pi;

namespace {

Word deutsch_word(std::initializer_list<double> phis, const char* gate = "deutsch") {
  Word w;
  for (double p : phis) w.letters.push_back(Letter{gate, p});
  return w;
}

}  // namespace

TEST_CASE("word matrix") {
  GeneratorPool pool;
  CHECK(max_abs_diff(word_matrix(deutsch_word({0.4})), gate_matrix("deutsch", 0.4)) < 1e-15);
  CHECK(max_abs_diff(word_matrix(deutsch_word({0.3, 0.5}, "deutsch_prime")),
                     gate_matrix("deutsch_prime", 0.8)) < 1e-12);
  CHECK(max_abs_diff(word_matrix(deutsch_word({pi / 2, pi / 2})), FockOperator::identity(3)) <
        1e-12);
  // letter 0 acts first
  auto w = deutsch_word({0.7, 1.1});
  CHECK(max_abs_diff(word_matrix(w), gate_matrix("deutsch", 1.1) * gate_matrix("deutsch", 0.7)) <
        1e-15);
  CHECK_THROWS_AS(word_matrix(Word{}), AutomatonError);
  CHECK_THROWS_AS(word_matrix(Word{{{"and", std::nullopt}}}), AutomatonError);
  CHECK_THROWS_AS(word_matrix(Word{{{"not", std::nullopt}, {"cc_not", std::nullopt}}}),
                  AutomatonError);
}

TEST_CASE("word symbol by convolution") {
  GeneratorPool pool;
  auto single = word_symbol_convolution(pool, deutsch_word({0.4}));
  CHECK(max_abs_diff(single.value, make_gate(pool, "deutsch", 0.4).covariant->value) < 1e-15);
  auto two = word_symbol_convolution(pool, deutsch_word({0.7, 1.1}));
  auto expected = covariant_symbol(pool, gate_matrix("deutsch", 1.1) * gate_matrix("deutsch", 0.7));
  CHECK(max_abs_diff(two.value, expected.value) < 1e-10);
  auto zero_sum = word_symbol_convolution(pool, deutsch_word({0.4, -0.9, 1.3, -0.8}, "deutsch_prime"));
  CHECK(max_abs_diff(zero_sum.value, GrassmannElement(pool, 1.0)) < 1e-10);
}

TEST_CASE("path integral") {
  GeneratorPool pool;
  const auto baseline = pool.live_count();
  auto one = word_symbol_path_integral(pool, deutsch_word({0.4}));
  CHECK(max_abs_diff(one.value, make_gate(pool, "deutsch", 0.4).covariant->value) < 1e-12);

  for (auto phis : {std::vector<double>{0.7, 1.1}, std::vector<double>{0.2, 1.3, 2.1},
                    std::vector<double>{0.5, -0.4, 2.9, 1.2}}) {
    Word w;
    for (double p : phis) w.letters.push_back(Letter{"deutsch", p});
    auto r = compare_word(pool, w);
    CHECK(r.matrix_vs_convolution < 1e-10);
    REQUIRE(r.matrix_vs_path);
    CHECK(*r.matrix_vs_path < 1e-10);
    CHECK(*r.convolution_vs_path < 1e-10);
    PathIntegralOptions stepwise;
    stepwise.mode = PathIntegralMode::Stepwise;
    CHECK(max_abs_diff(word_symbol_path_integral(pool, w, stepwise).value, r.convolution.value) <
          1e-10);
  }
  CHECK(pool.live_count() == baseline);
}

TEST_CASE("odd correction is necessary") {
  GeneratorPool pool;
  auto w = deutsch_word({0.7, 0.7});
  PathIntegralOptions drop;
  drop.drop_odd_term = true;
  auto with_o = word_symbol_path_integral(pool, w);
  auto without_o = word_symbol_path_integral(pool, w, drop);
  auto conv = word_symbol_convolution(pool, w);
  CHECK(max_abs_diff(with_o.value, conv.value) < 1e-10);
  CHECK(max_abs_diff(without_o.value, conv.value) > 1e-6);

  // even exponents: the correction vanishes
  auto even = deutsch_word({0.0, pi, 0.0});
  CHECK(max_abs_diff(word_symbol_path_integral(pool, even, drop).value,
                     word_symbol_convolution(pool, even).value) < 1e-10);
}

TEST_CASE("letters without exponential form") {
  GeneratorPool pool;
  Word w{{{"not", std::nullopt}, {"not", std::nullopt}}};
  CHECK_THROWS_AS(word_symbol_path_integral(pool, w), AutomatonError);
  auto r = compare_word(pool, w);
  CHECK_FALSE(r.path_integral);
  CHECK(r.matrix_vs_convolution < 1e-12);
}

TEST_CASE("refinement") {
  Word w{{{"deutsch_prime", 0.9}, {"deutsch", 0.3}}};
  auto r = refine(w, 3);
  REQUIRE(r.letters.size() == 4);
  CHECK(r.letters[0].phi == doctest::Approx(0.3));
  CHECK(r.letters[3].gate == "deutsch");
  CHECK(max_abs_diff(word_matrix(r), word_matrix(w)) < 1e-12);
}

TEST_CASE("superaction rendering") {
  GeneratorPool pool;
  auto s = render_superaction(pool, deutsch_word({0.7, 0.7}));
  CHECK(s.kinetic.find("α1*") != std::string::npos);
  CHECK(s.correction != "0");
  auto even = render_superaction(pool, deutsch_word({0.0, 0.0}));
  CHECK(even.correction == "0");
}

TEST_CASE("autonomous evolution") {
  GeneratorPool pool;
  auto h = creation(1, 1) + annihilation(1, 1);
  auto sym = covariant_symbol(pool, h);
  auto zero = autonomous_evolve(pool, sym, h, 0.0, 5);
  CHECK(zero.deviation < 1e-15);
  double previous = 1e9;
  for (int n : {4, 8, 16, 32}) {
    auto r = autonomous_evolve(pool, sym, h, 1.0, n);
    CHECK(r.deviation < previous);
    previous = r.deviation;
  }
  CHECK_THROWS_AS(autonomous_evolve(pool, sym, creation(1, 1), 1.0, 4), AutomatonError);
  CHECK_THROWS_AS(autonomous_evolve(pool, sym, h, 1.0, 0), AutomatonError);
}
