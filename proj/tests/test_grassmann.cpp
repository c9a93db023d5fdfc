#include <doctest.h>

#include "superlogic/grassmann.hpp"
#include "support.hpp"

using namespace superlogic;
using superlogic::testing::random_element;

namespace {

struct Fixture {
  GeneratorPool pool;
  std::vector<GeneratorId> theta;
  Fixture() {
    for (int k = 1; k <= 8; ++k) theta.push_back(pool.allocate("θ" + std::to_string(k)));
  }
  GrassmannElement g(int k) const { return GrassmannElement::generator(pool, theta[k - 1]); }
  GrassmannElement one() const { return GrassmannElement(pool, 1.0); }
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "generators are nilpotent and anticommute") {
  CHECK((g(1) * g(1)).is_zero());
  auto ab = g(1) * g(2);
  auto ba = g(2) * g(1);
  CHECK(max_abs_diff(ab + ba, GrassmannElement(pool)) == 0.0);
  auto prod = (one() + g(1)) * (one() + g(2));
  CHECK(max_abs_diff(prod, one() + g(1) + g(2) + ab) == 0.0);
}

TEST_CASE_FIXTURE(Fixture, "parity split") {
  auto s = parity_split(one() + g(1));
  CHECK(max_abs_diff(s.even, one()) == 0.0);
  CHECK(max_abs_diff(s.odd, g(1)) == 0.0);
  auto t = parity_split(g(1) * g(2));
  CHECK(t.odd.is_zero());
  CHECK((one() + g(1)).parity() == std::nullopt);
  CHECK(g(1).parity() == 1);
}

TEST_CASE_FIXTURE(Fixture, "associativity and graded commutativity") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_element(pool, theta, 6, rng);
    auto b = random_element(pool, theta, 6, rng);
    auto c = random_element(pool, theta, 6, rng);
    CHECK(max_abs_diff((a * b) * c, a * (b * c)) < 1e-12);
    auto x = a.odd(), y = b.odd(), z = c.even();
    CHECK(max_abs_diff(x * y, -(y * x)) < 1e-12);
    CHECK(max_abs_diff(x * z, z * x) < 1e-12);
  }
}

TEST_CASE("involution") {
  GeneratorPool pool;
  auto a1 = pool.out_gen(1), a2 = pool.out_gen(2), b1 = pool.in_gen(1), b2 = pool.in_gen(2);
  CHECK(pool.conjugate(a1) == b1);
  CHECK(pool.conjugate(b1) == a1);
  auto x = GrassmannElement::generator(pool, b1, Complex(2.0, 3.0));
  CHECK(max_abs_diff(involution(x), GrassmannElement::generator(pool, a1, Complex(2.0, -3.0))) ==
        0.0);
  const GeneratorId seq[] = {b1, b2};
  const GeneratorId rev[] = {a1, a2};
  CHECK(max_abs_diff(involution(GrassmannElement::monomial(pool, seq)),
                     GrassmannElement::monomial(pool, rev, -1.0)) == 0.0);

  std::mt19937_64 rng(3);
  auto gens = pool.out_gens(4);
  auto ins = pool.in_gens(4);
  gens.insert(gens.end(), ins.begin(), ins.end());
  for (int t = 0; t < 20; ++t) {
    auto p = random_element(pool, gens, 5, rng);
    auto q = random_element(pool, gens, 5, rng);
    CHECK(max_abs_diff(involution(involution(p)), p) < 1e-12);
    CHECK(max_abs_diff(involution(p * q), involution(q) * involution(p)) < 1e-12);
  }

  auto lone = pool.allocate("θ");
  CHECK_THROWS_AS(involution(GrassmannElement::generator(pool, lone)), AlgebraError);
}

TEST_CASE_FIXTURE(Fixture, "left derivative") {
  CHECK(max_abs_diff(left_derivative(g(1) * g(2), theta[0]), g(2)) == 0.0);
  CHECK(max_abs_diff(left_derivative(g(1) * g(2), theta[1]), -g(1)) == 0.0);
  CHECK(left_derivative(one(), theta[0]).is_zero());
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10; ++t) {
    auto x = random_element(pool, theta, 10, rng);
    for (auto gen : theta) CHECK(left_derivative(left_derivative(x, gen), gen).is_zero());
  }
}

TEST_CASE("berezin integration") {
  GeneratorPool pool;
  auto [gm, gs] = pool.allocate_pair("γ");
  auto theta = GrassmannElement::generator(pool, gm);
  const GeneratorId single[] = {gm};
  CHECK(berezin_integrate(theta, single).scalar_part() == Complex(1.0));
  CHECK(berezin_integrate(GrassmannElement(pool, 1.0), single).is_zero());

  const GeneratorId pair[] = {gs, gm};
  const GeneratorId prod[] = {gs, gm};
  auto gauss = grassmann_exp(-GrassmannElement::monomial(pool, prod));
  CHECK(berezin_integrate(gauss, pair).scalar_part() == Complex(1.0));

  auto free_part = GrassmannElement::generator(pool, pool.out_gen(1)) +
                   GrassmannElement::generator(pool, pool.in_gen(1));
  CHECK(berezin_integrate(free_part, pair).is_zero());

  // Fubini: swapping the order flips the sign
  auto x = GrassmannElement::monomial(pool, prod, 2.5);
  const GeneratorId swapped[] = {gm, gs};
  CHECK(max_abs_diff(berezin_integrate(x, pair), -berezin_integrate(x, swapped)) == 0.0);
}

TEST_CASE_FIXTURE(Fixture, "exponential and logarithm") {
  auto t12 = g(1) * g(2);
  CHECK(max_abs_diff(grassmann_exp(t12), one() + t12) == 0.0);
  CHECK(max_abs_diff(grassmann_exp(g(1)), one() + g(1)) == 0.0);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    auto x = random_element(pool, theta, 6, rng, true);
    auto y = random_element(pool, theta, 6, rng, true);
    auto lhs = grassmann_exp(x) * grassmann_exp(y);
    auto rhs = grassmann_exp(x + y + x.odd() * y.odd());
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);
    auto z = GrassmannElement(pool, Complex(0.4, 0.9)) + x;
    CHECK(max_abs_diff(grassmann_exp(grassmann_log(z)), z) < 1e-12);
  }
  CHECK_THROWS_AS(grassmann_log(g(1)), AlgebraError);
}

TEST_CASE_FIXTURE(Fixture, "relabel, negate and evaluate") {
  std::map<GeneratorId, GeneratorId> m{{theta[0], theta[2]}};
  CHECK(max_abs_diff(relabel(g(1) * g(2), m), g(3) * g(2)) == 0.0);
  const GeneratorId neg[] = {theta[1]};
  CHECK(max_abs_diff(negate_generators(g(1) * g(2) + g(2), neg), -(g(1) * g(2)) - g(2)) == 0.0);
  CHECK(max_abs_diff(evaluate_at_zero(one() + g(1) * g(2) + g(3), neg), one() + g(3)) == 0.0);
}

TEST_CASE("generator pool") {
  GeneratorPool pool;
  CHECK(pool.name(pool.out_gen(1)) == "α1*");
  CHECK(pool.name(pool.in_gen(2)) == "β2");
  auto before = pool.live_count();
  auto [a, as] = pool.allocate_pair("γ");
  CHECK(pool.conjugate(a) == as);
  CHECK(pool.live_count() == before + 2);
  pool.release(a);
  pool.release(as);
  CHECK(pool.live_count() == before);
  auto [b, bs] = pool.allocate_pair("γ");
  CHECK(b.index == a.index);
  CHECK(bs.index == as.index);
  CHECK_THROWS_AS(pool.out_gen(9), AlgebraError);
}

TEST_CASE("rendering") {
  GeneratorPool pool;
  auto x = GrassmannElement::generator(pool, pool.out_gen(1)) +
           GrassmannElement::generator(pool, pool.in_gen(1));
  CHECK(render(x) == "1*α1* + 1*β1");
  CHECK(render(GrassmannElement(pool)) == "0");
  CHECK(render(GrassmannElement(pool, Complex(0.5, -2.0))) == "(0.5-2i)");
  CHECK(render(GrassmannElement(pool, Complex(0.0, 1.0))) == "1i");
}
