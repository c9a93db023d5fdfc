#pragma once

// Quantum Moore automata over qubit memory. A word acts as
//   U(w) = U(letter n-1) ... U(letter 1) U(letter 0),
// letter 0 being applied first. Its symbol is obtained three ways: the
// matrix product, the iterated convolution of letter symbols, and the
// discrete Grassmann path integral over trajectories
//   (gamma*_k, gamma_k), gamma*_n = alpha*, gamma_0 = beta,
// with integrand exp(sum_k [Dgamma*_k . gamma_k + H_k + O_k]),
//   Dgamma*_k = gamma*_{k+1} - gamma*_k  (gamma*_0 identified with alpha*),
//   H_k = H(letter k)(gamma*_{k+1}, gamma_k),
//   O_k = H_k^o * sum_{j<k} H_j^o.

#include <optional>
#include <string>
#include <vector>

#include "superlogic/gates.hpp"

namespace superlogic {

class AutomatonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Letter {
  std::string gate;
  std::optional<double> phi;

  friend bool operator==(const Letter&, const Letter&) = default;
};

struct Word {
  std::vector<Letter> letters;

  friend bool operator==(const Word&, const Word&) = default;
};

/// Splits every deutsch_prime letter into `slices` letters of phi / slices;
/// other letters are kept as they are.
Word refine(const Word& w, int slices);

FockOperator word_matrix(const Word& w);
/// Covariant symbol of the word by iterated convolution.
SymbolExpr word_symbol_convolution(GeneratorPool& pool, const Word& w);

enum class PathIntegralMode {
  ExpandAction,  // exponentiate the whole action, then integrate slice by slice
  Stepwise,      // exp(A_k) = exp(H_k) exp(A_{k-1}), integrating as the slices close
};

struct PathIntegralOptions {
  PathIntegralMode mode = PathIntegralMode::ExpandAction;
  bool drop_odd_term = false;  // omit every O_k (ExpandAction only)
};

/// Path integral from per-step exponents given over the canonical
/// generators alpha*_1..N (output) and beta_1..N (input).
SymbolExpr path_integral(GeneratorPool& pool, const std::vector<GrassmannElement>& exponents,
                         int n_cells, const PathIntegralOptions& options = {});
SymbolExpr word_symbol_path_integral(GeneratorPool& pool, const Word& w,
                                     const PathIntegralOptions& options = {});

/// The discrete action of a word on freshly named trajectory generators,
/// rendered as its kinetic, Hamiltonian and correction parts.
struct SuperactionText {
  std::string kinetic;
  std::string hamiltonian;
  std::string correction;
};
SuperactionText render_superaction(GeneratorPool& pool, const Word& w);

struct WordReport {
  Word word;
  FockOperator matrix;
  SymbolExpr matrix_symbol;  // covariant symbol of the matrix product
  SymbolExpr convolution;
  std::optional<SymbolExpr> path_integral;
  double matrix_vs_convolution = 0.0;
  std::optional<double> matrix_vs_path;
  std::optional<double> convolution_vs_path;

  double max_deviation() const;
};
WordReport compare_word(GeneratorPool& pool, const Word& w,
                        const PathIntegralOptions& options = {});

struct EvolutionReport {
  double t = 0.0;
  int slices = 0;
  FockOperator exact;   // exp(-i t H) by eigendecomposition
  FockOperator sliced;  // read back from the sliced symbol
  SymbolExpr sliced_symbol;
  double deviation = 0.0;  // max entry deviation of the matrices
};

/// Time-sliced evolution: n steps with exponent -i (t/n) H_sym each.
EvolutionReport autonomous_evolve(GeneratorPool& pool, const SymbolExpr& h_sym,
                                  const FockOperator& h_mat, double t, int n);

}  // namespace superlogic
