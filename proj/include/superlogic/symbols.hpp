#pragma once

// Coherent states, operator and state symbols, the Berezin convolution and
// the Fock-Bargmann (differential operator) representation.
//
// Conventions:
//   |b> = sum_n |n> c_n(b),     c_n = b_{k1} b_{k2} ... (occupied cells ascending)
//   <a*| = sum_n d_n(a*) <n|,   d_n = a*_{km} ... a*_{k1} (occupied cells descending)
// Grassmann coefficients sit to the right of kets and to the left of bras and
// commute with the complex matrices. With these choices
//   a_k^- |b> = |b> b_k,   <a*| a_k^+ = a_k^* <a*|,   <a*|b> = exp(a* . b).

#include <span>
#include <vector>

#include "superlogic/fock.hpp"
#include "superlogic/grassmann.hpp"

namespace superlogic {

class SymbolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SymbolKind { Matrix, Covariant, State };

struct SymbolExpr {
  GrassmannElement value;
  std::vector<GeneratorId> in_gens;   // one beta per input cell
  std::vector<GeneratorId> out_gens;  // one alpha^* per output cell
  SymbolKind kind = SymbolKind::Matrix;

  int n_in() const { return static_cast<int>(in_gens.size()); }
  int n_out() const { return static_cast<int>(out_gens.size()); }
};

/// Element of Lambda (x) F_N: one Grassmann amplitude per basis state.
struct CoherentVector {
  enum class Side { Ket, Bra };

  Side side = Side::Ket;
  int n_cells = 0;
  std::vector<GrassmannElement> entries;
};

CoherentVector coherent_ket(const GeneratorPool& pool, std::span<const GeneratorId> gens,
                            int n_cells);
CoherentVector coherent_bra(const GeneratorPool& pool, std::span<const GeneratorId> star_gens,
                            int n_cells);
/// A |psi> for a ket, <psi| A for a bra.
CoherentVector act(const FockOperator& a, const CoherentVector& v);
/// |psi> g (coefficients multiplied on the right).
CoherentVector right_multiply(const CoherentVector& v, const GrassmannElement& g);
/// g |psi> (coefficients multiplied on the left).
CoherentVector left_multiply(const GrassmannElement& g, const CoherentVector& v);
/// |psi> with every generator in gens replaced by its negative.
CoherentVector negate_generators(const CoherentVector& v, std::span<const GeneratorId> gens);
double max_abs_diff(const CoherentVector& a, const CoherentVector& b);

/// The state-symbol monomial d_n of a basis state, in the given variables.
GrassmannElement basis_state_monomial(const GeneratorPool& pool,
                                      std::span<const GeneratorId> star_vars,
                                      std::uint32_t n);

/// <a*|b> = exp(sum_k a_k^* b_k).
GrassmannElement overlap(const GeneratorPool& pool, std::span<const GeneratorId> bra_gens,
                         std::span<const GeneratorId> ket_gens);

/// <a*|A|b> over the canonical generators of the pool.
SymbolExpr matrix_symbol(const GeneratorPool& pool, const FockOperator& a);
/// <a*|A|b> / <a*|b>; square operators only.
SymbolExpr covariant_symbol(const GeneratorPool& pool, const FockOperator& a);
SymbolExpr to_covariant(const SymbolExpr& matrix_sym);
SymbolExpr to_matrix_kind(const SymbolExpr& covariant_sym);

/// <a*|f>; coincides with the normalized state symbol.
SymbolExpr state_symbol(const GeneratorPool& pool, const FockVector& f);
FockVector state_from_symbol(const SymbolExpr& f);
/// Reads the matrix back out of a matrix or covariant symbol.
FockOperator operator_from_symbol(const SymbolExpr& s);

/// Covariant symbol of A*B from the covariant symbols of A and B.
SymbolExpr convolve(GeneratorPool& pool, const SymbolExpr& a, const SymbolExpr& b);
/// Matrix symbol of A*B from matrix symbols; rectangular shapes allowed.
SymbolExpr compose_matrix_symbols(GeneratorPool& pool, const SymbolExpr& a, const SymbolExpr& b);
/// State symbol of A f.
SymbolExpr apply_symbol(GeneratorPool& pool, const SymbolExpr& a, const SymbolExpr& f);
/// Hermitian product <f, g>, antilinear in f.
Complex scalar_product(const SymbolExpr& f, const SymbolExpr& g);
/// Entry-wise Berezin integral of |a><a*| exp(-a* . a); equals the identity.
FockOperator resolution_of_identity_check(const GeneratorPool& pool, int n_cells);

// ---------------------------------------------------------------------------
// Fock-Bargmann representation

/// NormalOrdered: square operator, each term is
///   coeff * a*_{i1} ... a*_{ip} d/da*_{j1} ... d/da*_{jq}   (i, j ascending)
/// acting on state symbols of the same variables.
/// Transfer: operator F_in -> F_out, each term maps the basis monomial
///   d_annihilate(inputs) to coeff * d_create(outputs); remaining input
///   variables are evaluated at zero.
enum class FBForm { NormalOrdered, Transfer };

struct FBTerm {
  std::uint32_t create = 0;      // cell mask
  std::uint32_t annihilate = 0;  // cell mask
  Complex coeff;
};

struct FBOperator {
  int n_in = 0;
  int n_out = 0;
  FBForm form = FBForm::NormalOrdered;
  std::vector<FBTerm> terms;  // sorted by (annihilate, create), no zeros
};

FBOperator to_fb_operator(const FockOperator& a);
FBOperator transfer_form(const FockOperator& a);
/// Reads a covariant symbol as a normal-ordered operator
/// (a_k^+ -> alpha_k^*, a_k^- -> beta_k).
FBOperator fb_from_covariant_symbol(const SymbolExpr& s);
/// Even and odd parts (terms changing the occupation parity are odd).
std::pair<FBOperator, FBOperator> fb_parity_split(const FBOperator& op);

/// Applies op to a state symbol; the result uses f's variables for square
/// normal-ordered operators and the canonical alpha^* otherwise.
SymbolExpr fb_apply(GeneratorPool& pool, const FBOperator& op, const SymbolExpr& f);
/// Applies op to an arbitrary element f whose input cells are carried by
/// in_vars; the output cells are written into out_vars. Other generators
/// present in f are spectators.
GrassmannElement fb_apply_on(const FBOperator& op, const GrassmannElement& f,
                             std::span<const GeneratorId> in_vars,
                             std::span<const GeneratorId> out_vars);

double max_abs_diff(const FBOperator& a, const FBOperator& b);
std::string render(const FBOperator& op);

}  // namespace superlogic
