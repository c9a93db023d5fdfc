#include <doctest.h>

#include <cmath>
#include <numbers>

#include "superlogic/fock.hpp"

using namespace superlogic;

TEST_CASE("creation and annihilation") {
  auto up = creation(1, 1).apply(FockVector::basis(BasisIndex::from_bits({0})));
  CHECK(up.amplitudes(1) == Complex(1.0));
  CHECK(up.amplitudes(0) == Complex(0.0));
  CHECK_THROWS_AS(creation(0, 2), FockError);
  CHECK_THROWS_AS(creation(3, 2), FockError);
  for (int n = 1; n <= 4; ++n) {
    auto id = FockOperator::identity(n);
    auto zero = FockOperator::zero(n, n);
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        CHECK(max_abs_diff(anticommutator(creation(i, n), annihilation(j, n)),
                           i == j ? id : zero) == 0.0);
        CHECK(max_abs_diff(anticommutator(creation(i, n), creation(j, n)), zero) == 0.0);
        CHECK(max_abs_diff(anticommutator(annihilation(i, n), annihilation(j, n)), zero) == 0.0);
      }
    }
  }
}

TEST_CASE("pauli string identities") { CHECK(pauli_string_identity_checks(3).ok()); }

TEST_CASE("dual pairing") {
  CHECK(dual_pairing(BasisIndex::from_bits({0, 1}), BasisIndex::from_bits({0, 1})) == Complex(1.0));
  CHECK(dual_pairing(BasisIndex::from_bits({0, 1}), BasisIndex::from_bits({1, 0})) == Complex(0.0));
  for (std::uint32_t a = 0; a < 8; ++a)
    for (std::uint32_t b = 0; b < 8; ++b)
      CHECK(dual_pairing({a, 3}, {b, 3}) == Complex(a == b ? 1.0 : 0.0));
}

namespace {

std::uint32_t image(const FockOperator& op, std::uint32_t m) {
  auto v = op.apply(FockVector::basis({m, op.n_in}));
  for (Eigen::Index i = 0; i < v.amplitudes.size(); ++i)
    if (std::abs(v.amplitudes(i) - 1.0) < 1e-12) return static_cast<std::uint32_t>(i);
  return ~0u;
}

}  // namespace

TEST_CASE("classical gate truth tables") {
  auto bits = [](std::uint32_t m, int k) { return (m >> (k - 1)) & 1u; };
  for (std::uint32_t m = 0; m < 4; ++m) {
    CHECK(image(gate_matrix("and"), m) == (bits(m, 1) & bits(m, 2)));
    CHECK(image(gate_matrix("or"), m) == (bits(m, 1) | bits(m, 2)));
    CHECK(image(gate_matrix("xor"), m) == (bits(m, 1) ^ bits(m, 2)));
    CHECK(image(gate_matrix("nand"), m) == (1u - (bits(m, 1) & bits(m, 2))));
  }
  CHECK(image(gate_matrix("not"), 0) == 1);
  CHECK(image(gate_matrix("not"), 1) == 0);
  auto toffoli = gate_matrix("cc_not");
  for (std::uint32_t m = 0; m < 8; ++m) {
    std::uint32_t expected = (bits(m, 2) && bits(m, 3)) ? (m ^ 1u) : m;
    CHECK(image(toffoli, m) == expected);
  }
}

TEST_CASE("gate parameters") {
  CHECK_THROWS_AS(gate_matrix("deutsch"), FockError);
  CHECK_THROWS_AS(gate_matrix("not", 0.3), FockError);
  CHECK_THROWS_AS(gate_matrix("bogus"), FockError);
}

TEST_CASE("unitarity and the Deutsch family") {
  using std::numbers::pi;
  CHECK(is_unitary(gate_matrix("cc_not")));
  for (double phi : {0.0, 0.3, pi / 2, 1.7, pi}) {
    CHECK(is_unitary(gate_matrix("deutsch", phi)));
    CHECK(is_unitary(gate_matrix("deutsch_prime", phi)));
  }
  CHECK(max_abs_diff(gate_matrix("deutsch", pi / 2), gate_matrix("cc_not")) < 1e-15);
  for (auto [a, b] : {std::pair{0.3, 0.4}, std::pair{pi / 2, pi / 2}, std::pair{1.0, -1.0}}) {
    auto lhs = gate_matrix("deutsch_prime", a) * gate_matrix("deutsch_prime", b);
    CHECK(max_abs_diff(lhs, gate_matrix("deutsch_prime", a + b)) < 1e-12);
  }
  auto dp = gate_matrix("deutsch_prime", 0.8);
  CHECK(std::abs(dp.entries(6, 6) - std::cos(0.8)) < 1e-15);
  CHECK(std::abs(dp.entries(6, 7) - Complex(0.0, -std::sin(0.8))) < 1e-15);
}

TEST_CASE("unitary evolution") {
  auto h = creation(1, 1) + annihilation(1, 1);
  auto u = unitary_evolution(h, 1.0);
  auto expected = std::cos(1.0) * FockOperator::identity(1) + Complex(0.0, -std::sin(1.0)) * h;
  CHECK(max_abs_diff(u, expected) < 1e-14);
  CHECK_THROWS_AS(unitary_evolution(creation(1, 1), 1.0), FockError);
}
