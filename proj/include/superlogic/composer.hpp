#pragma once

// Composite gates: serial composition, plugging a one-output gate into an
// input of another, and Fock-Bargmann composition of circuit trees.
//
// Circuit trees take their wires in order: the leaves read w1, w2, ..., wM
// from left to right, so the composite's input cells are the wires.

#include <optional>
#include <string>
#include <vector>

#include "superlogic/gates.hpp"

namespace superlogic {

class ComposeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CircuitNode {
  enum class Kind { Wire, Gate };

  Kind kind = Kind::Wire;
  int wire = 0;  // 1-based, Kind::Wire
  std::string gate;
  std::optional<double> phi;
  std::vector<CircuitNode> children;

  static CircuitNode make_wire(int index);
  static CircuitNode make_gate(std::string name, std::vector<CircuitNode> children,
                               std::optional<double> phi = std::nullopt);

  /// Number of wire leaves below this node.
  int wire_count() const;
  friend bool operator==(const CircuitNode&, const CircuitNode&) = default;
};

/// Checks gate names, arities and the wire ordering rule.
void validate_circuit(const CircuitNode& node);

/// Tolerance for the cross-checks between representations.
inline constexpr double kCompositionTolerance = 1e-9;

/// A after B.
Gate serial(GeneratorPool& pool, const Gate& a, const Gate& b);

enum class PlugFormula {
  Split,  // even/odd split with the trailing inputs sign-flipped under the odd part
  Plain,  // plain product of the two symbols
};

/// Matrix of A with its k-th input (1-based) fed by B; B has one output.
FockOperator plug_input_matrix(const Gate& a, int k, const Gate& b);
/// Matrix symbol of the same composite from the symbol integral.
SymbolExpr plug_input_symbol(GeneratorPool& pool, const Gate& a, int k, const Gate& b,
                             PlugFormula formula = PlugFormula::Split);
/// Both of the above, cross-checked.
Gate plug_input(GeneratorPool& pool, const Gate& a, int k, const Gate& b);

/// Transfer-form operator of a circuit tree obtained by composing the
/// children's differential operators with the parent's.
FBOperator fb_compose(GeneratorPool& pool, const CircuitNode& node);

/// Folds plug_input over the tree; the transfer form comes from fb_compose
/// and all representations are cross-checked.
Gate build_circuit(GeneratorPool& pool, const CircuitNode& node);

}  // namespace superlogic
