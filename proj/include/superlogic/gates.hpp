#pragma once

// Gate library: every gate bundles its matrix with the symbolic forms
// derived from it. phi is bound at construction; gates are immutable values.

#include <optional>
#include <string>
#include <vector>

#include "superlogic/fock.hpp"
#include "superlogic/symbols.hpp"

namespace superlogic {

class GateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Gate {
  std::string name;
  std::optional<double> phi;
  int n_in = 0;
  int n_out = 0;
  FockOperator matrix;
  SymbolExpr symbol;                      // matrix symbol
  std::optional<SymbolExpr> covariant;    // square gates only
  std::optional<FBOperator> fb;           // normal-ordered, square gates only
  FBOperator transfer;                    // always available
  std::optional<GrassmannElement> exp_generator;  // H with exp(H) = covariant symbol

  bool is_square() const { return n_in == n_out; }
  /// Covariant symbol when square, matrix symbol otherwise.
  const SymbolExpr& display_symbol() const { return covariant ? *covariant : symbol; }
};

struct GateInfo {
  std::string name;
  int n_in = 0;
  int n_out = 0;
  bool parametric = false;
};

/// Registry of the named gates, in catalog order.
const std::vector<GateInfo>& gate_registry();
std::optional<GateInfo> find_gate(const std::string& name);

Gate make_gate(const GeneratorPool& pool, const std::string& name,
               std::optional<double> phi = std::nullopt);
Gate deutsch_prime(const GeneratorPool& pool, double phi);
/// Wraps an arbitrary operator; symbolic forms are derived from the matrix.
Gate make_custom_gate(const GeneratorPool& pool, std::string name, const FockOperator& matrix);

/// Closed forms as tabulated in the gate catalog (not, and, or, cc_not,
/// deutsch); nullopt for gates without a tabulated symbol.
std::optional<GrassmannElement> catalog_symbol(const GeneratorPool& pool, const std::string& name,
                                               std::optional<double> phi = std::nullopt);
/// Tabulated exponent of the Deutsch symbol.
GrassmannElement catalog_deutsch_exponent(const GeneratorPool& pool, double phi);
/// Tabulated Fock-Bargmann forms (not, cc_not).
std::optional<FBOperator> catalog_fb(const std::string& name);

}  // namespace superlogic
