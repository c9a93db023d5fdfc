#include "superlogic/symbols.hpp"

#include <algorithm>
#include <map>

namespace superlogic {

namespace {

std::vector<GeneratorId> ket_sequence(std::span<const GeneratorId> gens, std::uint32_t n) {
  std::vector<GeneratorId> seq;
  for (std::size_t k = 0; k < gens.size(); ++k)
    if (n & (1u << k)) seq.push_back(gens[k]);
  return seq;
}

std::vector<GeneratorId> bra_sequence(std::span<const GeneratorId> gens, std::uint32_t n) {
  auto seq = ket_sequence(gens, n);
  std::reverse(seq.begin(), seq.end());
  return seq;
}

Mask mask_of(std::span<const GeneratorId> gens) {
  Mask m = 0;
  for (auto g : gens) m |= bit(g);
  return m;
}

// Exponent sum_k x_k y_k of a bilinear pairing.
GrassmannElement pairing(const GeneratorPool& pool, std::span<const GeneratorId> xs,
                         std::span<const GeneratorId> ys, Complex coeff) {
  GrassmannElement sum(pool);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const GeneratorId seq[] = {xs[k], ys[k]};
    sum += GrassmannElement::monomial(pool, seq, coeff);
  }
  return sum;
}

void check_cell_count(int n) {
  if (n < 0 || n > static_cast<int>(GeneratorPool::kMaxCells)) {
    throw SymbolError("symbols support at most " + std::to_string(GeneratorPool::kMaxCells) +
                      " cells");
  }
}

std::vector<GeneratorId> pair_measure(std::span<const GeneratorId> stars,
                                      std::span<const GeneratorId> plains) {
  std::vector<GeneratorId> measure;
  for (std::size_t k = 0; k < stars.size(); ++k) {
    measure.push_back(stars[k]);
    measure.push_back(plains[k]);
  }
  return measure;
}

struct Scratch {
  GeneratorPool& pool;
  std::vector<GeneratorId> plain;
  std::vector<GeneratorId> star;

  Scratch(GeneratorPool& p, int n) : pool(p) {
    for (int k = 0; k < n; ++k) {
      auto [g, gs] = pool.allocate_pair("γ");
      plain.push_back(g);
      star.push_back(gs);
    }
  }
  ~Scratch() {
    pool.release(plain);
    pool.release(star);
  }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
};

std::map<GeneratorId, GeneratorId> zip_map(std::span<const GeneratorId> from,
                                           std::span<const GeneratorId> to) {
  std::map<GeneratorId, GeneratorId> m;
  for (std::size_t k = 0; k < from.size(); ++k) m[from[k]] = to[k];
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Coherent vectors

CoherentVector coherent_ket(const GeneratorPool& pool, std::span<const GeneratorId> gens,
                            int n_cells) {
  if (static_cast<int>(gens.size()) != n_cells) {
    throw SymbolError("coherent ket needs one generator per cell");
  }
  CoherentVector v{CoherentVector::Side::Ket, n_cells, {}};
  for (std::uint32_t n = 0; n < fock_dim(n_cells); ++n) {
    v.entries.push_back(GrassmannElement::monomial(pool, ket_sequence(gens, n)));
  }
  return v;
}

CoherentVector coherent_bra(const GeneratorPool& pool, std::span<const GeneratorId> star_gens,
                            int n_cells) {
  if (static_cast<int>(star_gens.size()) != n_cells) {
    throw SymbolError("coherent bra needs one generator per cell");
  }
  CoherentVector v{CoherentVector::Side::Bra, n_cells, {}};
  for (std::uint32_t n = 0; n < fock_dim(n_cells); ++n) {
    v.entries.push_back(GrassmannElement::monomial(pool, bra_sequence(star_gens, n)));
  }
  return v;
}

CoherentVector act(const FockOperator& a, const CoherentVector& v) {
  if (v.entries.empty()) throw SymbolError("empty coherent vector");
  const auto& pool = v.entries.front().pool();
  CoherentVector out;
  out.side = v.side;
  if (v.side == CoherentVector::Side::Ket) {
    if (a.n_in != v.n_cells) throw SymbolError("operator does not act on this ket");
    out.n_cells = a.n_out;
    for (Eigen::Index r = 0; r < a.entries.rows(); ++r) {
      GrassmannElement e(pool);
      for (Eigen::Index c = 0; c < a.entries.cols(); ++c)
        if (a.entries(r, c) != Complex(0.0)) e += v.entries[c] * a.entries(r, c);
      out.entries.push_back(std::move(e));
    }
  } else {
    if (a.n_out != v.n_cells) throw SymbolError("operator does not act on this bra");
    out.n_cells = a.n_in;
    for (Eigen::Index c = 0; c < a.entries.cols(); ++c) {
      GrassmannElement e(pool);
      for (Eigen::Index r = 0; r < a.entries.rows(); ++r)
        if (a.entries(r, c) != Complex(0.0)) e += v.entries[r] * a.entries(r, c);
      out.entries.push_back(std::move(e));
    }
  }
  return out;
}

CoherentVector right_multiply(const CoherentVector& v, const GrassmannElement& g) {
  CoherentVector out = v;
  for (auto& e : out.entries) e = e * g;
  return out;
}

CoherentVector left_multiply(const GrassmannElement& g, const CoherentVector& v) {
  CoherentVector out = v;
  for (auto& e : out.entries) e = g * e;
  return out;
}

CoherentVector negate_generators(const CoherentVector& v, std::span<const GeneratorId> gens) {
  CoherentVector out = v;
  for (auto& e : out.entries) e = negate_generators(e, gens);
  return out;
}

double max_abs_diff(const CoherentVector& a, const CoherentVector& b) {
  if (a.side != b.side || a.entries.size() != b.entries.size()) {
    throw SymbolError("coherent vectors of different shape");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < a.entries.size(); ++i)
    worst = std::max(worst, max_abs_diff(a.entries[i], b.entries[i]));
  return worst;
}

GrassmannElement basis_state_monomial(const GeneratorPool& pool,
                                      std::span<const GeneratorId> star_vars, std::uint32_t n) {
  return GrassmannElement::monomial(pool, bra_sequence(star_vars, n));
}

// ---------------------------------------------------------------------------
// Symbols

GrassmannElement overlap(const GeneratorPool& pool, std::span<const GeneratorId> bra_gens,
                         std::span<const GeneratorId> ket_gens) {
  if (bra_gens.size() != ket_gens.size()) throw SymbolError("overlap of different cell counts");
  return grassmann_exp(pairing(pool, bra_gens, ket_gens, 1.0));
}

SymbolExpr matrix_symbol(const GeneratorPool& pool, const FockOperator& a) {
  check_cell_count(a.n_in);
  check_cell_count(a.n_out);
  SymbolExpr s{GrassmannElement(pool), pool.in_gens(a.n_in), pool.out_gens(a.n_out),
               SymbolKind::Matrix};
  std::vector<Term> terms;
  for (std::uint32_t n = 0; n < fock_dim(a.n_out); ++n) {
    auto left = bra_sequence(s.out_gens, n);
    for (std::uint32_t m = 0; m < fock_dim(a.n_in); ++m) {
      Complex c = a.entries(n, m);
      if (std::abs(c) < kZeroThreshold) continue;
      auto seq = left;
      auto right = ket_sequence(s.in_gens, m);
      seq.insert(seq.end(), right.begin(), right.end());
      terms.push_back(Term{mask_of(seq), c * static_cast<double>(canonical_sign(seq))});
    }
  }
  s.value = GrassmannElement::from_terms(pool, std::move(terms));
  return s;
}

SymbolExpr to_covariant(const SymbolExpr& matrix_sym) {
  if (matrix_sym.kind != SymbolKind::Matrix) throw SymbolError("expected a matrix symbol");
  if (matrix_sym.n_in() != matrix_sym.n_out()) {
    throw SymbolError("covariant symbols are undefined for operators between different spaces");
  }
  const auto& pool = matrix_sym.value.pool();
  SymbolExpr s = matrix_sym;
  s.value = matrix_sym.value *
            grassmann_exp(pairing(pool, matrix_sym.out_gens, matrix_sym.in_gens, -1.0));
  s.kind = SymbolKind::Covariant;
  return s;
}

SymbolExpr to_matrix_kind(const SymbolExpr& covariant_sym) {
  if (covariant_sym.kind != SymbolKind::Covariant) throw SymbolError("expected a covariant symbol");
  SymbolExpr s = covariant_sym;
  s.value = covariant_sym.value *
            overlap(covariant_sym.value.pool(), covariant_sym.out_gens, covariant_sym.in_gens);
  s.kind = SymbolKind::Matrix;
  return s;
}

SymbolExpr covariant_symbol(const GeneratorPool& pool, const FockOperator& a) {
  if (!a.is_square()) {
    throw SymbolError("covariant symbols are undefined for operators between different spaces");
  }
  return to_covariant(matrix_symbol(pool, a));
}

SymbolExpr state_symbol(const GeneratorPool& pool, const FockVector& f) {
  check_cell_count(f.n_cells);
  SymbolExpr s{GrassmannElement(pool), {}, pool.out_gens(f.n_cells), SymbolKind::State};
  std::vector<Term> terms;
  for (std::uint32_t n = 0; n < fock_dim(f.n_cells); ++n) {
    Complex c = f.amplitudes(n);
    if (std::abs(c) < kZeroThreshold) continue;
    auto seq = bra_sequence(s.out_gens, n);
    terms.push_back(Term{mask_of(seq), c * static_cast<double>(canonical_sign(seq))});
  }
  s.value = GrassmannElement::from_terms(pool, std::move(terms));
  return s;
}

FockVector state_from_symbol(const SymbolExpr& f) {
  if (f.kind != SymbolKind::State) throw SymbolError("expected a state symbol");
  if (!f.value.uses_only(mask_of(f.out_gens))) {
    throw SymbolError("state symbol contains foreign generators");
  }
  FockVector v = FockVector::zero(f.n_out());
  for (std::uint32_t n = 0; n < fock_dim(f.n_out()); ++n) {
    auto seq = bra_sequence(f.out_gens, n);
    v.amplitudes(n) = f.value.coefficient(mask_of(seq)) * static_cast<double>(canonical_sign(seq));
  }
  return v;
}

FockOperator operator_from_symbol(const SymbolExpr& s) {
  if (s.kind == SymbolKind::State) throw SymbolError("expected an operator symbol");
  const SymbolExpr m = s.kind == SymbolKind::Covariant ? to_matrix_kind(s) : s;
  if (!m.value.uses_only(mask_of(m.out_gens) | mask_of(m.in_gens))) {
    throw SymbolError("operator symbol contains foreign generators");
  }
  FockOperator a = FockOperator::zero(m.n_out(), m.n_in());
  for (std::uint32_t n = 0; n < fock_dim(m.n_out()); ++n) {
    auto left = bra_sequence(m.out_gens, n);
    for (std::uint32_t k = 0; k < fock_dim(m.n_in()); ++k) {
      auto seq = left;
      auto right = ket_sequence(m.in_gens, k);
      seq.insert(seq.end(), right.begin(), right.end());
      a.entries(n, k) =
          m.value.coefficient(mask_of(seq)) * static_cast<double>(canonical_sign(seq));
    }
  }
  return a;
}

SymbolExpr convolve(GeneratorPool& pool, const SymbolExpr& a, const SymbolExpr& b) {
  if (a.kind != SymbolKind::Covariant || b.kind != SymbolKind::Covariant) {
    throw SymbolError("convolution is defined on covariant symbols");
  }
  if (a.n_in() != b.n_out() || a.n_out() != b.n_in()) {
    throw SymbolError("convolution arity mismatch");
  }
  const int n = a.n_in();
  Scratch g(pool, n);
  auto lhs = relabel(a.value, zip_map(a.in_gens, g.plain));
  auto rhs = relabel(b.value, zip_map(b.out_gens, g.star));
  // <a*|g><g*|b> / (<a*|b><g*|g>)
  GrassmannElement exponent = pairing(pool, a.out_gens, g.plain, 1.0) +
                              pairing(pool, g.star, b.in_gens, 1.0) -
                              pairing(pool, a.out_gens, b.in_gens, 1.0) -
                              pairing(pool, g.star, g.plain, 1.0);
  auto integrand = lhs * rhs * grassmann_exp(exponent);
  SymbolExpr out{berezin_integrate(integrand, pair_measure(g.star, g.plain)), b.in_gens,
                 a.out_gens, SymbolKind::Covariant};
  return out;
}

SymbolExpr compose_matrix_symbols(GeneratorPool& pool, const SymbolExpr& a, const SymbolExpr& b) {
  if (a.kind != SymbolKind::Matrix || b.kind != SymbolKind::Matrix) {
    throw SymbolError("expected matrix symbols");
  }
  if (a.n_in() != b.n_out()) throw SymbolError("composition arity mismatch");
  Scratch g(pool, a.n_in());
  auto lhs = relabel(a.value, zip_map(a.in_gens, g.plain));
  auto rhs = relabel(b.value, zip_map(b.out_gens, g.star));
  auto integrand = lhs * rhs * grassmann_exp(pairing(pool, g.star, g.plain, -1.0));
  return SymbolExpr{berezin_integrate(integrand, pair_measure(g.star, g.plain)), b.in_gens,
                    a.out_gens, SymbolKind::Matrix};
}

SymbolExpr apply_symbol(GeneratorPool& pool, const SymbolExpr& a, const SymbolExpr& f) {
  if (f.kind != SymbolKind::State) throw SymbolError("expected a state symbol");
  if (a.kind == SymbolKind::State) throw SymbolError("expected an operator symbol");
  if (a.n_in() != f.n_out()) throw SymbolError("operator and state arity mismatch");
  Scratch g(pool, a.n_in());
  auto lhs = relabel(a.value, zip_map(a.in_gens, g.plain));
  auto rhs = relabel(f.value, zip_map(f.out_gens, g.star));
  GrassmannElement exponent = -pairing(pool, g.star, g.plain, 1.0);
  if (a.kind == SymbolKind::Covariant) exponent += pairing(pool, a.out_gens, g.plain, 1.0);
  auto integrand = lhs * rhs * grassmann_exp(exponent);
  return SymbolExpr{berezin_integrate(integrand, pair_measure(g.star, g.plain)), {}, a.out_gens,
                    SymbolKind::State};
}

Complex scalar_product(const SymbolExpr& f, const SymbolExpr& g) {
  if (f.kind != SymbolKind::State || g.kind != SymbolKind::State) {
    throw SymbolError("scalar product needs state symbols");
  }
  if (f.out_gens != g.out_gens) throw SymbolError("state symbols over different variables");
  const auto& pool = f.value.pool();
  std::vector<GeneratorId> plains;
  for (auto s : f.out_gens) {
    auto c = pool.conjugate(s);
    if (!c) throw SymbolError("state variable without involution partner");
    plains.push_back(*c);
  }
  auto integrand =
      involution(f.value) * g.value * grassmann_exp(pairing(pool, f.out_gens, plains, -1.0));
  return berezin_integrate(integrand, pair_measure(f.out_gens, plains)).scalar_part();
}

FockOperator resolution_of_identity_check(const GeneratorPool& pool, int n_cells) {
  check_cell_count(n_cells);
  const auto stars = pool.out_gens(n_cells);
  const auto plains = pool.in_gens(n_cells);
  const auto ket = coherent_ket(pool, plains, n_cells);
  const auto bra = coherent_bra(pool, stars, n_cells);
  const auto weight = grassmann_exp(pairing(pool, stars, plains, -1.0));
  const auto measure = pair_measure(stars, plains);
  FockOperator out = FockOperator::zero(n_cells, n_cells);
  for (std::uint32_t n = 0; n < fock_dim(n_cells); ++n) {
    for (std::uint32_t m = 0; m < fock_dim(n_cells); ++m) {
      auto integral = berezin_integrate(ket.entries[n] * bra.entries[m] * weight, measure);
      out.entries(n, m) = integral.scalar_part();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fock-Bargmann

namespace {

// Applies a*_{I asc} a-_{J asc} to |m>; returns (n, sign) or nothing.
std::optional<std::pair<std::uint32_t, int>> apply_normal_monomial(std::uint32_t create,
                                                                   std::uint32_t annihilate,
                                                                   std::uint32_t m) {
  int sign = 1;
  std::uint32_t state = m;
  for (int k = 31; k >= 0; --k) {
    if (!(annihilate & (1u << k))) continue;
    if (!(state & (1u << k))) return std::nullopt;
    state &= ~(1u << k);
    if (std::popcount(state >> (k + 1)) % 2) sign = -sign;
  }
  for (int k = 31; k >= 0; --k) {
    if (!(create & (1u << k))) continue;
    if (state & (1u << k)) return std::nullopt;
    if (std::popcount(state >> (k + 1)) % 2) sign = -sign;
    state |= 1u << k;
  }
  return std::make_pair(state, sign);
}

void sort_terms(FBOperator& op) {
  std::erase_if(op.terms, [](const FBTerm& t) { return std::abs(t.coeff) < kZeroThreshold; });
  std::sort(op.terms.begin(), op.terms.end(), [](const FBTerm& a, const FBTerm& b) {
    return std::tie(a.annihilate, a.create) < std::tie(b.annihilate, b.create);
  });
}

}  // namespace

FBOperator to_fb_operator(const FockOperator& a) {
  if (!a.is_square()) throw SymbolError("normal-ordered form needs a square operator");
  const int n = a.n_in;
  const std::uint32_t dim = static_cast<std::uint32_t>(fock_dim(n));
  std::vector<std::uint32_t> by_degree(dim);
  for (std::uint32_t j = 0; j < dim; ++j) by_degree[j] = j;
  std::stable_sort(by_degree.begin(), by_degree.end(), [](std::uint32_t x, std::uint32_t y) {
    return std::popcount(x) < std::popcount(y);
  });

  // Coefficients are fixed degree by degree in the annihilation part:
  // <I|A|J> only sees terms whose annihilation mask is a subset of J.
  FBOperator op{n, n, FBForm::NormalOrdered, {}};
  for (std::uint32_t j : by_degree) {
    for (std::uint32_t i = 0; i < dim; ++i) {
      Complex residual = a.entries(i, j);
      for (const auto& t : op.terms) {
        if ((t.annihilate & ~j) != 0) continue;
        auto hit = apply_normal_monomial(t.create, t.annihilate, j);
        if (hit && hit->first == i) residual -= t.coeff * static_cast<double>(hit->second);
      }
      if (std::abs(residual) < kZeroThreshold) continue;
      auto self = apply_normal_monomial(i, j, j);
      op.terms.push_back(FBTerm{i, j, residual * static_cast<double>(self->second)});
    }
  }
  sort_terms(op);
  return op;
}

FBOperator transfer_form(const FockOperator& a) {
  FBOperator op{a.n_in, a.n_out, FBForm::Transfer, {}};
  for (Eigen::Index r = 0; r < a.entries.rows(); ++r)
    for (Eigen::Index c = 0; c < a.entries.cols(); ++c)
      op.terms.push_back(FBTerm{static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c),
                                a.entries(r, c)});
  sort_terms(op);
  return op;
}

FBOperator fb_from_covariant_symbol(const SymbolExpr& s) {
  if (s.kind != SymbolKind::Covariant) throw SymbolError("expected a covariant symbol");
  FBOperator op{s.n_in(), s.n_out(), FBForm::NormalOrdered, {}};
  for (const auto& t : s.value.terms()) {
    std::uint32_t create = 0, annihilate = 0;
    Mask rest = t.mask;
    for (int k = 0; k < s.n_out(); ++k) {
      if (rest & bit(s.out_gens[k])) create |= 1u << k;
      rest &= ~bit(s.out_gens[k]);
    }
    for (int k = 0; k < s.n_in(); ++k) {
      if (rest & bit(s.in_gens[k])) annihilate |= 1u << k;
      rest &= ~bit(s.in_gens[k]);
    }
    if (rest != 0) throw SymbolError("covariant symbol contains foreign generators");
    auto seq = ket_sequence(s.out_gens, create);
    auto right = ket_sequence(s.in_gens, annihilate);
    seq.insert(seq.end(), right.begin(), right.end());
    op.terms.push_back(FBTerm{create, annihilate, t.coeff * static_cast<double>(canonical_sign(seq))});
  }
  sort_terms(op);
  return op;
}

std::pair<FBOperator, FBOperator> fb_parity_split(const FBOperator& op) {
  FBOperator even{op.n_in, op.n_out, op.form, {}};
  FBOperator odd{op.n_in, op.n_out, op.form, {}};
  for (const auto& t : op.terms) {
    bool is_odd = (std::popcount(t.create) + std::popcount(t.annihilate)) % 2 != 0;
    (is_odd ? odd : even).terms.push_back(t);
  }
  return {even, odd};
}

GrassmannElement fb_apply_on(const FBOperator& op, const GrassmannElement& f,
                             std::span<const GeneratorId> in_vars,
                             std::span<const GeneratorId> out_vars) {
  if (static_cast<int>(in_vars.size()) != op.n_in || static_cast<int>(out_vars.size()) != op.n_out) {
    throw SymbolError("Fock-Bargmann variable count mismatch");
  }
  const auto& pool = f.pool();
  GrassmannElement result(pool);
  for (const auto& t : op.terms) {
    GrassmannElement g = f;
    for (int k = op.n_in - 1; k >= 0 && !g.is_zero(); --k)
      if (t.annihilate & (1u << k)) g = left_derivative(g, in_vars[k]);
    if (g.is_zero()) continue;
    GrassmannElement created(pool);
    if (op.form == FBForm::NormalOrdered) {
      created = GrassmannElement::monomial(pool, ket_sequence(out_vars, t.create), t.coeff);
    } else {
      g = evaluate_at_zero(g, in_vars);
      created = GrassmannElement::monomial(pool, bra_sequence(out_vars, t.create), t.coeff);
    }
    result += created * g;
  }
  return result;
}

SymbolExpr fb_apply(GeneratorPool& pool, const FBOperator& op, const SymbolExpr& f) {
  if (f.kind != SymbolKind::State) throw SymbolError("expected a state symbol");
  if (f.n_out() != op.n_in) throw SymbolError("operator and state arity mismatch");
  if (op.form == FBForm::NormalOrdered) {
    return SymbolExpr{fb_apply_on(op, f.value, f.out_gens, f.out_gens), {}, f.out_gens,
                      SymbolKind::State};
  }
  Scratch g(pool, op.n_in);
  auto moved = relabel(f.value, zip_map(f.out_gens, g.star));
  auto outs = pool.out_gens(op.n_out);
  return SymbolExpr{fb_apply_on(op, moved, g.star, outs), {}, outs, SymbolKind::State};
}

double max_abs_diff(const FBOperator& a, const FBOperator& b) {
  if (a.form != b.form || a.n_in != b.n_in || a.n_out != b.n_out) {
    throw SymbolError("Fock-Bargmann operators of different shape");
  }
  std::map<std::pair<std::uint32_t, std::uint32_t>, Complex> diff;
  for (const auto& t : a.terms) diff[{t.annihilate, t.create}] += t.coeff;
  for (const auto& t : b.terms) diff[{t.annihilate, t.create}] -= t.coeff;
  double worst = 0.0;
  for (const auto& [k, v] : diff) worst = std::max(worst, std::abs(v));
  return worst;
}

std::string render(const FBOperator& op) {
  if (op.terms.empty()) return "0";
  std::string out;
  for (const auto& t : op.terms) {
    if (!out.empty()) out += " + ";
    out += coefficient_text(t.coeff);
    std::vector<std::string> factors;
    for (int k = 0; k < op.n_out; ++k)
      if (t.create & (1u << k)) factors.push_back("α" + std::to_string(k + 1) + "*");
    for (int k = 0; k < op.n_in; ++k) {
      if (!(t.annihilate & (1u << k))) continue;
      factors.push_back(op.form == FBForm::NormalOrdered ? "∂α" + std::to_string(k + 1) + "*"
                                                         : "∂β" + std::to_string(k + 1) + "*");
    }
    if (op.form == FBForm::Transfer && !factors.empty()) {
      // creation part follows the state ordering (descending cells)
      std::vector<std::string> creates, rest;
      for (auto& f : factors) (f.rfind("α", 0) == 0 ? creates : rest).push_back(f);
      std::reverse(creates.begin(), creates.end());
      factors = creates;
      factors.insert(factors.end(), rest.begin(), rest.end());
    }
    for (std::size_t i = 0; i < factors.size(); ++i) out += (i == 0 ? "*" : "^") + factors[i];
  }
  return out;
}

}  // namespace superlogic
