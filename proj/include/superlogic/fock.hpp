#pragma once

// Dense qubit (Fock) space: the matrix oracle for everything symbolic.
//
// Basis |n_1, ..., n_N>; cell 1 is the least significant bit of the packed
// index. Creation/annihilation carry the parity string on the cells after k:
//   a_k = 1 x ... x 1 x a x I x ... x I,  I = diag(1, -1).

#include <Eigen/Dense>

#include <bit>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "superlogic/grassmann.hpp"

namespace superlogic {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

class FockError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxFockCells = 8;

std::size_t fock_dim(int n_cells);

struct BasisIndex {
  std::uint32_t packed = 0;
  int n_cells = 0;

  static BasisIndex from_bits(std::initializer_list<int> bits);
  int bit(int cell) const { return static_cast<int>((packed >> (cell - 1)) & 1u); }
  int occupation() const { return std::popcount(packed); }
  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

struct FockVector {
  int n_cells = 0;
  Vector amplitudes;

  static FockVector basis(BasisIndex b);
  static FockVector zero(int n_cells);
};

struct FockOperator {
  int n_in = 0;
  int n_out = 0;
  Matrix entries;

  static FockOperator identity(int n_cells);
  static FockOperator zero(int n_out, int n_in);

  bool is_square() const { return n_in == n_out; }
  FockOperator adjoint() const;
  FockVector apply(const FockVector& v) const;

  friend FockOperator operator*(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator+(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator-(const FockOperator& a, const FockOperator& b);
  friend FockOperator operator*(Complex c, const FockOperator& a);
};

FockOperator anticommutator(const FockOperator& a, const FockOperator& b);

FockOperator creation(int k, int n_cells);
FockOperator annihilation(int k, int n_cells);
/// The third Pauli matrix on one cell.
FockOperator parity_matrix();

struct PauliStringReport {
  double square_deviation = 0.0;           // |I^2 - 1|_max
  double anticommutes_creation = 0.0;      // |{I, a+}|_max
  double anticommutes_annihilation = 0.0;  // |{I, a-}|_max
  double sign_action_deviation = 0.0;      // I(|0>,|1>) vs (|0>, -|1>)
  bool ok() const;
};
PauliStringReport pauli_string_identity_checks(int n_cells);

/// <n|m> under the reversed dual tensor order; a Kronecker delta.
Complex dual_pairing(BasisIndex bra, BasisIndex ket);

/// Matrices of the named gates. Known names: not, and, or, xor, nand,
/// cc_not, deutsch, deutsch_prime, identity. phi is required for the
/// Deutsch family and rejected elsewhere.
FockOperator gate_matrix(const std::string& name, std::optional<double> phi = std::nullopt);

/// Builds an operator F_{n_in} -> F_{n_out} from a Boolean truth table.
FockOperator truth_table_matrix(int n_in, int n_out,
                                const std::vector<std::uint32_t>& outputs);

/// exp(-i t H) for Hermitian H via eigendecomposition.
FockOperator unitary_evolution(const FockOperator& hamiltonian, double t);

bool is_hermitian(const FockOperator& a, double tol = 1e-12);
bool is_unitary(const FockOperator& a, double tol = 1e-12);
double max_abs_diff(const FockOperator& a, const FockOperator& b);

std::string render_matrix(const FockOperator& a);

}  // namespace superlogic
