#include "superlogic/fock.hpp"

#include <cmath>
#include <cstdio>

namespace superlogic {

namespace {

void check_cells(int n_cells) {
  if (n_cells < 0 || n_cells > kMaxFockCells) {
    throw FockError("cell count " + std::to_string(n_cells) + " outside [0, " +
                    std::to_string(kMaxFockCells) + "]");
  }
}

// Printed labels follow the catalog's conventions: a bra <n_1,...,n_N|
// lists cells 1..N while a ket label lists cells N..1. Under this reading
// every projector formula of the catalog is a permutation (target = cell 1).
std::uint32_t bra_index(const std::string& label) {
  std::uint32_t idx = 0;
  for (std::size_t c = 0; c < label.size(); ++c)
    idx |= static_cast<std::uint32_t>(label[c] == '1') << c;
  return idx;
}

std::uint32_t ket_index(const std::string& label) {
  return bra_index(std::string(label.rbegin(), label.rend()));
}

FockOperator ket_bra(int n_out, const char* ket, int n_in, const char* bra, Complex c) {
  FockOperator op = FockOperator::zero(n_out, n_in);
  op.entries(ket_index(ket), bra_index(bra)) = c;
  return op;
}

}  // namespace

std::size_t fock_dim(int n_cells) {
  check_cells(n_cells);
  return std::size_t{1} << n_cells;
}

BasisIndex BasisIndex::from_bits(std::initializer_list<int> bits) {
  BasisIndex b;
  int cell = 0;
  for (int v : bits) {
    if (v != 0 && v != 1) throw FockError("basis occupation must be 0 or 1");
    b.packed |= static_cast<std::uint32_t>(v) << cell;
    ++cell;
  }
  b.n_cells = cell;
  return b;
}

FockVector FockVector::basis(BasisIndex b) {
  FockVector v = zero(b.n_cells);
  if (b.packed >= v.amplitudes.size()) throw FockError("basis index out of range");
  v.amplitudes(b.packed) = 1.0;
  return v;
}

FockVector FockVector::zero(int n_cells) {
  return FockVector{n_cells, Vector::Zero(static_cast<Eigen::Index>(fock_dim(n_cells)))};
}

FockOperator FockOperator::identity(int n_cells) {
  auto d = static_cast<Eigen::Index>(fock_dim(n_cells));
  return FockOperator{n_cells, n_cells, Matrix::Identity(d, d)};
}

FockOperator FockOperator::zero(int n_out, int n_in) {
  return FockOperator{n_in, n_out,
                      Matrix::Zero(static_cast<Eigen::Index>(fock_dim(n_out)),
                                   static_cast<Eigen::Index>(fock_dim(n_in)))};
}

FockOperator FockOperator::adjoint() const {
  return FockOperator{n_out, n_in, entries.adjoint()};
}

FockVector FockOperator::apply(const FockVector& v) const {
  if (v.n_cells != n_in) throw FockError("operator input dimension mismatch");
  return FockVector{n_out, entries * v.amplitudes};
}

FockOperator operator*(const FockOperator& a, const FockOperator& b) {
  if (a.n_in != b.n_out) throw FockError("operator product dimension mismatch");
  return FockOperator{b.n_in, a.n_out, a.entries * b.entries};
}

FockOperator operator+(const FockOperator& a, const FockOperator& b) {
  if (a.n_in != b.n_in || a.n_out != b.n_out) throw FockError("operator sum dimension mismatch");
  return FockOperator{a.n_in, a.n_out, a.entries + b.entries};
}

FockOperator operator-(const FockOperator& a, const FockOperator& b) {
  if (a.n_in != b.n_in || a.n_out != b.n_out) throw FockError("operator sum dimension mismatch");
  return FockOperator{a.n_in, a.n_out, a.entries - b.entries};
}

FockOperator operator*(Complex c, const FockOperator& a) {
  return FockOperator{a.n_in, a.n_out, c * a.entries};
}

FockOperator anticommutator(const FockOperator& a, const FockOperator& b) {
  return a * b + b * a;
}

FockOperator creation(int k, int n_cells) {
  check_cells(n_cells);
  if (k < 1 || k > n_cells) {
    throw FockError("cell " + std::to_string(k) + " out of range 1.." + std::to_string(n_cells));
  }
  FockOperator op = FockOperator::zero(n_cells, n_cells);
  const std::uint32_t b = 1u << (k - 1);
  for (std::uint32_t m = 0; m < fock_dim(n_cells); ++m) {
    if (m & b) continue;
    // parity string on cells k+1..N
    int later = std::popcount(m >> k);
    op.entries(m | b, m) = (later % 2 == 0) ? 1.0 : -1.0;
  }
  return op;
}

FockOperator annihilation(int k, int n_cells) { return creation(k, n_cells).adjoint(); }

FockOperator parity_matrix() {
  FockOperator op = FockOperator::identity(1);
  op.entries(1, 1) = -1.0;
  return op;
}

bool PauliStringReport::ok() const {
  return square_deviation == 0.0 && anticommutes_creation == 0.0 &&
         anticommutes_annihilation == 0.0 && sign_action_deviation == 0.0;
}

PauliStringReport pauli_string_identity_checks(int n_cells) {
  if (n_cells < 1) throw FockError("pauli string checks need at least one cell");
  const auto I = parity_matrix();
  const auto ap = creation(1, 1);
  const auto am = annihilation(1, 1);
  PauliStringReport r;
  r.square_deviation = max_abs_diff(I * I, FockOperator::identity(1));
  r.anticommutes_creation = anticommutator(I, ap).entries.cwiseAbs().maxCoeff();
  r.anticommutes_annihilation = anticommutator(I, am).entries.cwiseAbs().maxCoeff();
  auto v0 = I.apply(FockVector::basis(BasisIndex::from_bits({0})));
  auto v1 = I.apply(FockVector::basis(BasisIndex::from_bits({1})));
  Vector e0(2), e1(2);
  e0 << 1.0, 0.0;
  e1 << 0.0, -1.0;
  r.sign_action_deviation = std::max((v0.amplitudes - e0).cwiseAbs().maxCoeff(),
                                     (v1.amplitudes - e1).cwiseAbs().maxCoeff());
  return r;
}

Complex dual_pairing(BasisIndex bra, BasisIndex ket) {
  if (bra.n_cells != ket.n_cells) throw FockError("dual pairing across different cell counts");
  return bra.packed == ket.packed ? 1.0 : 0.0;
}

FockOperator truth_table_matrix(int n_in, int n_out, const std::vector<std::uint32_t>& outputs) {
  if (outputs.size() != fock_dim(n_in)) throw FockError("truth table size mismatch");
  FockOperator op = FockOperator::zero(n_out, n_in);
  for (std::uint32_t m = 0; m < outputs.size(); ++m) {
    if (outputs[m] >= fock_dim(n_out)) throw FockError("truth table output out of range");
    op.entries(outputs[m], m) = 1.0;
  }
  return op;
}

FockOperator gate_matrix(const std::string& name, std::optional<double> phi) {
  const bool deutsch_family = name == "deutsch" || name == "deutsch_prime";
  if (deutsch_family && !phi) throw FockError("gate '" + name + "' requires a parameter");
  if (!deutsch_family && phi) throw FockError("gate '" + name + "' takes no parameter");

  if (name == "identity") return FockOperator::identity(1);
  if (name == "not") return creation(1, 1) + annihilation(1, 1);
  if (name == "and") {
    // |0>(<0,0| + <1,0| + <0,1|) + |1><1,1|
    return ket_bra(1, "0", 2, "00", 1.0) + ket_bra(1, "0", 2, "10", 1.0) +
           ket_bra(1, "0", 2, "01", 1.0) + ket_bra(1, "1", 2, "11", 1.0);
  }
  if (name == "or") {
    // |0><0,0| + |1>(<1,0| + <0,1| + <1,1|)
    return ket_bra(1, "0", 2, "00", 1.0) + ket_bra(1, "1", 2, "10", 1.0) +
           ket_bra(1, "1", 2, "01", 1.0) + ket_bra(1, "1", 2, "11", 1.0);
  }
  if (name == "xor") return truth_table_matrix(2, 1, {0, 1, 1, 0});
  if (name == "nand") return truth_table_matrix(2, 1, {1, 1, 1, 0});
  if (name == "cc_not") {
    // 1 + (|1,1,1> - |1,1,0>)(<0,1,1| - <1,1,1|)
    return FockOperator::identity(3) + ket_bra(3, "111", 3, "011", 1.0) -
           ket_bra(3, "111", 3, "111", 1.0) - ket_bra(3, "110", 3, "011", 1.0) +
           ket_bra(3, "110", 3, "111", 1.0);
  }
  if (deutsch_family) {
    const Complex i(0.0, 1.0);
    const double c = std::cos(*phi);
    const double s = std::sin(*phi);
    // 1 + |1,1,0>((i cos - 1)<0,1,1| + sin <1,1,1|)
    //   + |1,1,1>(sin <0,1,1| + (i cos - 1)<1,1,1|)
    const std::uint32_t t0 = bra_index("011");
    const std::uint32_t t1 = bra_index("111");
    FockOperator d = FockOperator::identity(3);
    d.entries(t0, t0) += i * c - 1.0;
    d.entries(t0, t1) += s;
    d.entries(t1, t0) += s;
    d.entries(t1, t1) += i * c - 1.0;
    if (name == "deutsch") return d;
    // J = -i on the controls-on block, identity elsewhere
    FockOperator j = FockOperator::identity(3);
    j.entries(t0, t0) = -i;
    j.entries(t1, t1) = -i;
    return j * d;
  }
  throw FockError("unknown gate '" + name + "'");
}

FockOperator unitary_evolution(const FockOperator& hamiltonian, double t) {
  if (!hamiltonian.is_square()) throw FockError("hamiltonian must be square");
  if (!is_hermitian(hamiltonian)) throw FockError("hamiltonian is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(hamiltonian.entries);
  const Complex i(0.0, 1.0);
  Vector phases = (-i * t * eig.eigenvalues().cast<Complex>()).array().exp();
  Matrix u = eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
  return FockOperator{hamiltonian.n_in, hamiltonian.n_out, u};
}

bool is_hermitian(const FockOperator& a, double tol) {
  return a.is_square() && (a.entries - a.entries.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const FockOperator& a, double tol) {
  if (!a.is_square()) return false;
  auto d = a.entries.rows();
  return (a.entries.adjoint() * a.entries - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() <= tol;
}

double max_abs_diff(const FockOperator& a, const FockOperator& b) {
  if (a.n_in != b.n_in || a.n_out != b.n_out) throw FockError("operator shape mismatch");
  if (a.entries.size() == 0) return 0.0;
  return (a.entries - b.entries).cwiseAbs().maxCoeff();
}

std::string render_matrix(const FockOperator& a) {
  std::string out;
  for (Eigen::Index r = 0; r < a.entries.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.entries.cols(); ++c) {
      if (c) out += "\t";
      out += format_complex(a.entries(r, c));
    }
    out += "\n";
  }
  return out;
}

}  // namespace superlogic
