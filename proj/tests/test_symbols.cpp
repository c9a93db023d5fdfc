#include <doctest.h>

#include <numbers>

#include "superlogic/symbols.hpp"
#include "support.hpp"

using namespace superlogic;
using superlogic::testing::random_operator;
using superlogic::testing::random_state;

namespace {

GrassmannElement gen(const GeneratorPool& pool, GeneratorId g) {
  return GrassmannElement::generator(pool, g);
}

}  // namespace

TEST_CASE("coherent states") {
  GeneratorPool pool;
  for (int n = 1; n <= 3; ++n) {
    auto b = pool.in_gens(n);
    auto ket = coherent_ket(pool, b, n);
    for (int k = 1; k <= n; ++k) {
      auto lhs = act(annihilation(k, n), ket);
      auto rhs = right_multiply(ket, gen(pool, b[k - 1]));
      CHECK(max_abs_diff(lhs, rhs) < 1e-15);
    }
    auto a = pool.out_gens(n);
    auto bra = coherent_bra(pool, a, n);
    for (int k = 1; k <= n; ++k) {
      auto lhs = act(creation(k, n), bra);
      auto rhs = left_multiply(gen(pool, a[k - 1]), bra);
      CHECK(max_abs_diff(lhs, rhs) < 1e-15);
    }
  }
  // g|a> = |(-1)^p a> g
  auto b = pool.in_gens(2);
  auto ket = coherent_ket(pool, b, 2);
  auto odd = gen(pool, pool.out_gen(3));
  auto even = odd * gen(pool, pool.out_gen(4));
  CHECK(max_abs_diff(left_multiply(odd, ket), right_multiply(negate_generators(ket, b), odd)) ==
        0.0);
  CHECK(max_abs_diff(left_multiply(even, ket), right_multiply(ket, even)) == 0.0);
  CHECK_THROWS_AS(coherent_ket(pool, b, 3), SymbolError);
}

TEST_CASE("overlap") {
  GeneratorPool pool;
  auto a = pool.out_gens(2), b = pool.in_gens(2);
  auto one = GrassmannElement(pool, 1.0);
  auto p1 = gen(pool, a[0]) * gen(pool, b[0]);
  auto p2 = gen(pool, a[1]) * gen(pool, b[1]);
  CHECK(max_abs_diff(overlap(pool, std::span(a).first(1), std::span(b).first(1)), one + p1) == 0.0);
  CHECK(max_abs_diff(overlap(pool, a, b), one + p1 + p2 + p1 * p2) == 0.0);
  // <a*|0> = 1
  auto bra = coherent_bra(pool, a, 2);
  CHECK(max_abs_diff(bra.entries[0], one) == 0.0);
}

TEST_CASE("resolution of identity") {
  GeneratorPool pool;
  for (int n = 1; n <= 3; ++n)
    CHECK(max_abs_diff(resolution_of_identity_check(pool, n), FockOperator::identity(n)) < 1e-12);
}

TEST_CASE("symbols of elementary operators") {
  GeneratorPool pool;
  for (int n = 1; n <= 3; ++n) {
    for (int k = 1; k <= n; ++k) {
      CHECK(max_abs_diff(covariant_symbol(pool, annihilation(k, n)).value,
                         gen(pool, pool.in_gen(k))) < 1e-15);
      CHECK(max_abs_diff(covariant_symbol(pool, creation(k, n)).value,
                         gen(pool, pool.out_gen(k))) < 1e-15);
    }
  }
  auto id = matrix_symbol(pool, FockOperator::identity(1));
  CHECK(max_abs_diff(id.value, overlap(pool, pool.out_gens(1), pool.in_gens(1))) == 0.0);
  CHECK(render(covariant_symbol(pool, gate_matrix("not")).value) == "1*α1* + 1*β1");
  CHECK_THROWS_AS(covariant_symbol(pool, gate_matrix("and")), SymbolError);
}

TEST_CASE("symbol round trips") {
  GeneratorPool pool;
  std::mt19937_64 rng(17);
  for (int n = 1; n <= 3; ++n) {
    auto a = random_operator(n, n, rng);
    CHECK(max_abs_diff(operator_from_symbol(covariant_symbol(pool, a)), a) < 1e-12);
    auto r = random_operator(1, n, rng);
    CHECK(max_abs_diff(operator_from_symbol(matrix_symbol(pool, r)), r) < 1e-12);
    auto f = random_state(n, rng);
    CHECK((state_from_symbol(state_symbol(pool, f)).amplitudes - f.amplitudes).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("convolution") {
  GeneratorPool pool;
  auto nn = convolve(pool, covariant_symbol(pool, gate_matrix("not")),
                     covariant_symbol(pool, gate_matrix("not")));
  CHECK(max_abs_diff(nn.value, GrassmannElement(pool, 1.0)) < 1e-14);

  std::mt19937_64 rng(23);
  for (int n = 1; n <= 3; ++n) {
    for (int t = 0; t < 5; ++t) {
      auto a = random_operator(n, n, rng);
      auto b = random_operator(n, n, rng);
      auto conv = convolve(pool, covariant_symbol(pool, a), covariant_symbol(pool, b));
      CHECK(max_abs_diff(conv.value, covariant_symbol(pool, a * b).value) < 1e-10);
      auto id = covariant_symbol(pool, FockOperator::identity(n));
      CHECK(max_abs_diff(convolve(pool, id, covariant_symbol(pool, a)).value,
                         covariant_symbol(pool, a).value) < 1e-10);
    }
    auto a = random_operator(1, n + 1 > 3 ? 3 : n + 1, rng);
    auto b = random_operator(a.n_in, n, rng);
    auto comp = compose_matrix_symbols(pool, matrix_symbol(pool, a), matrix_symbol(pool, b));
    CHECK(max_abs_diff(comp.value, matrix_symbol(pool, a * b).value) < 1e-10);
  }
  CHECK(pool.live_count() == 2 * GeneratorPool::kMaxCells);
}

TEST_CASE("operator action on state symbols") {
  GeneratorPool pool;
  auto vac = state_symbol(pool, FockVector::basis({0, 1}));
  CHECK(render(vac.value) == "1");
  auto flipped = apply_symbol(pool, covariant_symbol(pool, gate_matrix("not")), vac);
  CHECK(render(flipped.value) == "1*α1*");

  std::mt19937_64 rng(29);
  for (int n = 1; n <= 3; ++n) {
    auto a = random_operator(n, n, rng);
    auto f = random_state(n, rng);
    auto expected = state_symbol(pool, a.apply(f));
    CHECK(max_abs_diff(apply_symbol(pool, covariant_symbol(pool, a), state_symbol(pool, f)).value,
                       expected.value) < 1e-10);
    CHECK(max_abs_diff(apply_symbol(pool, matrix_symbol(pool, a), state_symbol(pool, f)).value,
                       expected.value) < 1e-10);
  }
  auto r = random_operator(1, 2, rng);
  auto f = random_state(2, rng);
  CHECK(max_abs_diff(apply_symbol(pool, matrix_symbol(pool, r), state_symbol(pool, f)).value,
                     state_symbol(pool, r.apply(f)).value) < 1e-10);
}

TEST_CASE("scalar product") {
  GeneratorPool pool;
  auto s0 = state_symbol(pool, FockVector::basis({0, 1}));
  auto s1 = state_symbol(pool, FockVector::basis({1, 1}));
  CHECK(std::abs(scalar_product(s0, s0) - 1.0) < 1e-15);
  CHECK(std::abs(scalar_product(s0, s1)) < 1e-15);
  std::mt19937_64 rng(31);
  for (int n = 1; n <= 3; ++n) {
    auto f = random_state(n, rng), g = random_state(n, rng);
    Complex dense = f.amplitudes.dot(g.amplitudes);
    CHECK(std::abs(scalar_product(state_symbol(pool, f), state_symbol(pool, g)) - dense) < 1e-12);
  }
}

TEST_CASE("Fock-Bargmann representation") {
  GeneratorPool pool;
  CHECK(render(to_fb_operator(gate_matrix("not"))) == "1*α1* + 1*∂α1*");
  auto not_fb = to_fb_operator(gate_matrix("not"));
  auto vac = state_symbol(pool, FockVector::basis({0, 1}));
  CHECK(render(fb_apply(pool, not_fb, vac).value) == "1*α1*");

  std::mt19937_64 rng(37);
  for (int n = 1; n <= 3; ++n) {
    auto a = random_operator(n, n, rng);
    auto fb = to_fb_operator(a);
    CHECK(max_abs_diff(fb, fb_from_covariant_symbol(covariant_symbol(pool, a))) < 1e-12);
    auto tr = transfer_form(a);
    for (std::uint32_t m = 0; m < fock_dim(n); ++m) {
      auto f = state_symbol(pool, FockVector::basis({m, n}));
      auto expected = state_symbol(pool, a.apply(FockVector::basis({m, n})));
      CHECK(max_abs_diff(fb_apply(pool, fb, f).value, expected.value) < 1e-12);
      CHECK(max_abs_diff(fb_apply(pool, tr, f).value, expected.value) < 1e-12);
    }
  }
  auto r = random_operator(1, 2, rng);
  auto tr = transfer_form(r);
  for (std::uint32_t m = 0; m < 4; ++m) {
    auto f = state_symbol(pool, FockVector::basis({m, 2}));
    CHECK(max_abs_diff(fb_apply(pool, tr, f).value,
                       state_symbol(pool, r.apply(FockVector::basis({m, 2}))).value) < 1e-12);
  }
  auto [even, odd] = fb_parity_split(not_fb);
  CHECK(even.terms.empty());
  CHECK(odd.terms.size() == 2);
}
