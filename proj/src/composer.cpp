#include "superlogic/composer.hpp"

#include <cstdio>

namespace superlogic {

namespace {

void check_cells(int n) {
  if (n > static_cast<int>(GeneratorPool::kMaxCells)) {
    throw ComposeError("composite needs " + std::to_string(n) + " cells; at most " +
                       std::to_string(GeneratorPool::kMaxCells) + " are supported");
  }
}

struct ScratchVars {
  GeneratorPool& pool;
  std::vector<GeneratorId> vars;

  ScratchVars(GeneratorPool& p, int n, const std::string& name) : pool(p) {
    for (int k = 0; k < n; ++k) vars.push_back(pool.allocate(name + std::to_string(k + 1)));
  }
  ~ScratchVars() { pool.release(vars); }
  ScratchVars(const ScratchVars&) = delete;
  ScratchVars& operator=(const ScratchVars&) = delete;
};

void validate_node(const CircuitNode& node, int& next_wire, bool is_root) {
  if (node.kind == CircuitNode::Kind::Wire) {
    if (node.wire != next_wire) {
      throw ComposeError("wire w" + std::to_string(node.wire) + " out of order; expected w" +
                         std::to_string(next_wire));
    }
    ++next_wire;
    return;
  }
  auto info = find_gate(node.gate);
  if (!info) throw ComposeError("unknown gate '" + node.gate + "'");
  if (info->parametric != node.phi.has_value()) {
    throw ComposeError(info->parametric ? "gate '" + node.gate + "' requires a parameter"
                                        : "gate '" + node.gate + "' takes no parameter");
  }
  if (static_cast<int>(node.children.size()) != info->n_in) {
    throw ComposeError("gate '" + node.gate + "' expects " + std::to_string(info->n_in) +
                       " inputs, got " + std::to_string(node.children.size()));
  }
  if (!is_root && info->n_out != 1) {
    throw ComposeError("gate '" + node.gate + "' has " + std::to_string(info->n_out) +
                       " outputs and cannot feed a single input");
  }
  for (const auto& child : node.children) validate_node(child, next_wire, false);
}

FBOperator identity_transfer() {
  return FBOperator{1, 1, FBForm::Transfer, {{0, 0, 1.0}, {1, 1, 1.0}}};
}

FBOperator fb_compose_node(GeneratorPool& pool, const CircuitNode& node) {
  if (node.kind == CircuitNode::Kind::Wire) return identity_transfer();
  const Gate gate = make_gate(pool, node.gate, node.phi);
  std::vector<FBOperator> ops;
  std::vector<int> offsets;
  int m_total = 0;
  for (const auto& child : node.children) {
    ops.push_back(fb_compose_node(pool, child));
    offsets.push_back(m_total);
    m_total += ops.back().n_in;
  }
  check_cells(m_total);

  ScratchVars x(pool, m_total, "x");
  ScratchVars y(pool, static_cast<int>(ops.size()), "y");
  ScratchVars z(pool, gate.n_out, "z");
  std::vector<std::pair<FBOperator, FBOperator>> split;
  for (const auto& op : ops) split.push_back(fb_parity_split(op));

  FBOperator out{m_total, gate.n_out, FBForm::Transfer, {}};
  for (std::uint32_t m = 0; m < fock_dim(m_total); ++m) {
    GrassmannElement f = basis_state_monomial(pool, x.vars, m);
    // Children from the last input to the first: outputs already produced
    // stand to the left and pick up a sign under the odd part.
    for (int i = static_cast<int>(ops.size()) - 1; i >= 0; --i) {
      std::span<const GeneratorId> in(x.vars.data() + offsets[i], ops[i].n_in);
      std::span<const GeneratorId> outv(y.vars.data() + i, 1);
      std::span<const GeneratorId> later(y.vars.data() + i + 1, ops.size() - i - 1);
      f = fb_apply_on(split[i].first, f, in, outv) +
          fb_apply_on(split[i].second, negate_generators(f, later), in, outv);
    }
    f = fb_apply_on(gate.transfer, f, y.vars, z.vars);
    for (std::uint32_t n = 0; n < fock_dim(gate.n_out); ++n) {
      auto mono = basis_state_monomial(pool, z.vars, n);
      const auto& t = mono.terms().front();
      Complex c = f.coefficient(t.mask) * t.coeff;
      if (std::abs(c) >= kZeroThreshold) out.terms.push_back(FBTerm{n, m, c});
    }
  }
  std::sort(out.terms.begin(), out.terms.end(), [](const FBTerm& a, const FBTerm& b) {
    return std::tie(a.annihilate, a.create) < std::tie(b.annihilate, b.create);
  });
  return out;
}

Gate build_node(GeneratorPool& pool, const CircuitNode& node) {
  if (node.kind == CircuitNode::Kind::Wire) return make_gate(pool, "identity");
  Gate g = make_gate(pool, node.gate, node.phi);
  for (int i = static_cast<int>(node.children.size()) - 1; i >= 0; --i) {
    const auto& child = node.children[i];
    if (child.kind == CircuitNode::Kind::Wire) continue;
    g = plug_input(pool, g, i + 1, build_node(pool, child));
  }
  return g;
}

}  // namespace

CircuitNode CircuitNode::make_wire(int index) {
  CircuitNode n;
  n.kind = Kind::Wire;
  n.wire = index;
  return n;
}

CircuitNode CircuitNode::make_gate(std::string name, std::vector<CircuitNode> children,
                                   std::optional<double> phi) {
  CircuitNode n;
  n.kind = Kind::Gate;
  n.gate = std::move(name);
  n.phi = phi;
  n.children = std::move(children);
  return n;
}

int CircuitNode::wire_count() const {
  if (kind == Kind::Wire) return 1;
  int total = 0;
  for (const auto& c : children) total += c.wire_count();
  return total;
}

void validate_circuit(const CircuitNode& node) {
  int next_wire = 1;
  validate_node(node, next_wire, true);
}

Gate serial(GeneratorPool& pool, const Gate& a, const Gate& b) {
  if (a.n_in != b.n_out) {
    throw ComposeError("cannot compose '" + a.name + "' (" + std::to_string(a.n_in) +
                       " inputs) after '" + b.name + "' (" + std::to_string(b.n_out) +
                       " outputs)");
  }
  Gate g = make_custom_gate(pool, a.name + "·" + b.name, a.matrix * b.matrix);
  auto symbol = compose_matrix_symbols(pool, a.symbol, b.symbol);
  if (max_abs_diff(symbol.value, g.symbol.value) > kCompositionTolerance) {
    throw ComposeError("serial composition: symbol and matrix disagree");
  }
  g.symbol = symbol;
  if (a.covariant && b.covariant && g.covariant) {
    auto conv = convolve(pool, *a.covariant, *b.covariant);
    if (max_abs_diff(conv.value, g.covariant->value) > kCompositionTolerance) {
      throw ComposeError("serial composition: convolution and matrix disagree");
    }
    g.covariant = conv;
  }
  return g;
}

FockOperator plug_input_matrix(const Gate& a, int k, const Gate& b) {
  if (b.n_out != 1) throw ComposeError("plugged gate '" + b.name + "' must have one output");
  if (k < 1 || k > a.n_in) {
    throw ComposeError("input " + std::to_string(k) + " out of range for '" + a.name + "'");
  }
  const int n_c = a.n_in + b.n_in - 1;
  check_cells(n_c);
  // Plain bit embedding: cells below k pass through, cells k..k+nB-1 feed B,
  // the rest shift down onto A's inputs after k.
  FockOperator e = FockOperator::zero(a.n_in, n_c);
  const std::uint32_t low_mask = (1u << (k - 1)) - 1u;
  const std::uint32_t mid_mask = (1u << b.n_in) - 1u;
  for (std::uint32_t m = 0; m < fock_dim(n_c); ++m) {
    std::uint32_t low = m & low_mask;
    std::uint32_t mid = (m >> (k - 1)) & mid_mask;
    std::uint32_t high = m >> (k - 1 + b.n_in);
    for (std::uint32_t o = 0; o < 2; ++o) {
      std::uint32_t n = low | (o << (k - 1)) | (high << k);
      e.entries(n, m) += b.matrix.entries(o, mid);
    }
  }
  return a.matrix * e;
}

SymbolExpr plug_input_symbol(GeneratorPool& pool, const Gate& a, int k, const Gate& b,
                             PlugFormula formula) {
  if (b.n_out != 1) throw ComposeError("plugged gate '" + b.name + "' must have one output");
  if (k < 1 || k > a.n_in) {
    throw ComposeError("input " + std::to_string(k) + " out of range for '" + a.name + "'");
  }
  const int n_b = b.n_in;
  const int n_c = a.n_in + n_b - 1;
  check_cells(n_c);
  auto [g, gs] = pool.allocate_pair("γ");

  std::map<GeneratorId, GeneratorId> a_map;
  a_map[pool.in_gen(k)] = g;
  for (int j = k + 1; j <= a.n_in; ++j) a_map[pool.in_gen(j)] = pool.in_gen(j + n_b - 1);
  std::map<GeneratorId, GeneratorId> b_map;
  b_map[pool.out_gen(1)] = gs;
  for (int i = 1; i <= n_b; ++i) b_map[pool.in_gen(i)] = pool.in_gen(k + i - 1);

  auto a_sym = relabel(a.symbol.value, a_map);
  auto b_sym = relabel(b.symbol.value, b_map);
  std::vector<GeneratorId> trailing;
  for (int j = k + n_b; j <= n_c; ++j) trailing.push_back(pool.in_gen(j));

  GrassmannElement integrand(pool);
  if (formula == PlugFormula::Split) {
    auto parts = parity_split(b_sym);
    integrand = a_sym * parts.even + negate_generators(a_sym, trailing) * parts.odd;
  } else {
    integrand = a_sym * b_sym;
  }
  const GeneratorId kernel[] = {gs, g};
  integrand = integrand * grassmann_exp(-GrassmannElement::monomial(pool, kernel));
  auto value = berezin_integrate(integrand, kernel);
  pool.release(g);
  pool.release(gs);
  return SymbolExpr{value, pool.in_gens(n_c), pool.out_gens(a.n_out), SymbolKind::Matrix};
}

Gate plug_input(GeneratorPool& pool, const Gate& a, int k, const Gate& b) {
  auto matrix = plug_input_matrix(a, k, b);
  auto symbol = plug_input_symbol(pool, a, k, b);
  Gate g = make_custom_gate(pool, a.name + "[" + std::to_string(k) + "<-" + b.name + "]", matrix);
  double dev = max_abs_diff(symbol.value, g.symbol.value);
  if (dev > kCompositionTolerance) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "plug composition: symbol and matrix disagree by %.3g", dev);
    throw ComposeError(buf);
  }
  g.symbol = symbol;
  return g;
}

FBOperator fb_compose(GeneratorPool& pool, const CircuitNode& node) {
  validate_circuit(node);
  return fb_compose_node(pool, node);
}

Gate build_circuit(GeneratorPool& pool, const CircuitNode& node) {
  validate_circuit(node);
  Gate g = build_node(pool, node);
  auto fb = fb_compose_node(pool, node);
  double dev = max_abs_diff(fb, transfer_form(g.matrix));
  if (dev > kCompositionTolerance) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "differential composition disagrees by %.3g", dev);
    throw ComposeError(buf);
  }
  g.transfer = fb;
  return g;
}

}  // namespace superlogic
