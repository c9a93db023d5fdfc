#include "superlogic/automaton.hpp"

#include <algorithm>
#include <map>

namespace superlogic {

namespace {

std::vector<Gate> letter_gates(const GeneratorPool& pool, const Word& w) {
  if (w.letters.empty()) throw AutomatonError("empty word");
  std::vector<Gate> gates;
  for (const auto& l : w.letters) {
    gates.push_back(make_gate(pool, l.gate, l.phi));
    const auto& g = gates.back();
    if (!g.is_square()) throw AutomatonError("letter '" + l.gate + "' is not an endomorphism");
    if (g.n_in != gates.front().n_in) {
      throw AutomatonError("letters act on different cell counts");
    }
  }
  return gates;
}

/// Trajectory generators of a discrete path: star[k] for k = 0..n and
/// plain[k] for k = 0..n-1, each one generator per cell. Interior slices are
/// fresh involution pairs owned by this object.
class Trajectory {
 public:
  Trajectory(GeneratorPool& pool, int n_slices, int n_cells)
      : pool_(pool), n_cells_(n_cells), star_(n_slices + 1), plain_(n_slices) {
    star_[0] = pool.out_gens(n_cells);
    star_[n_slices] = pool.out_gens(n_cells);
    plain_[0] = pool.in_gens(n_cells);
  }
  ~Trajectory() {
    for (int k = 1; k + 1 < static_cast<int>(star_.size()); ++k) release(k);
  }
  Trajectory(const Trajectory&) = delete;
  Trajectory& operator=(const Trajectory&) = delete;

  int slices() const { return static_cast<int>(plain_.size()); }

  void ensure(int k) {
    if (k <= 0 || k >= slices() || !star_[k].empty()) return;
    for (int c = 0; c < n_cells_; ++c) {
      auto [g, gs] = pool_.allocate_pair("γ");
      plain_[k].push_back(g);
      star_[k].push_back(gs);
    }
  }
  void release(int k) {
    if (k <= 0 || k >= slices() || star_[k].empty()) return;
    pool_.release(plain_[k]);
    pool_.release(star_[k]);
    plain_[k].clear();
    star_[k].clear();
  }

  const std::vector<GeneratorId>& star(int k) const { return star_[k]; }
  const std::vector<GeneratorId>& plain(int k) const { return plain_[k]; }

  /// Letter exponent moved onto (gamma*_{k+1}, gamma_k).
  GrassmannElement place(const GrassmannElement& h, int k) const {
    std::map<GeneratorId, GeneratorId> m;
    auto a = pool_.out_gens(n_cells_);
    auto b = pool_.in_gens(n_cells_);
    for (int c = 0; c < n_cells_; ++c) {
      m[a[c]] = star_[k + 1][c];
      m[b[c]] = plain_[k][c];
    }
    return relabel(h, m);
  }

  /// Dgamma*_k . gamma_k
  GrassmannElement kinetic(int k) const {
    GrassmannElement sum(pool_);
    for (int c = 0; c < n_cells_; ++c) {
      const GeneratorId fwd[] = {star_[k + 1][c], plain_[k][c]};
      const GeneratorId back[] = {star_[k][c], plain_[k][c]};
      sum += GrassmannElement::monomial(pool_, fwd);
      sum -= GrassmannElement::monomial(pool_, back);
    }
    return sum;
  }

  /// x * exp(Dgamma*_k . gamma_k), expanded as a product of (1 + t) factors.
  GrassmannElement times_kinetic(GrassmannElement x, int k) const {
    GrassmannElement one(pool_, 1.0);
    for (int c = 0; c < n_cells_; ++c) {
      const GeneratorId fwd[] = {star_[k + 1][c], plain_[k][c]};
      const GeneratorId back[] = {star_[k][c], plain_[k][c]};
      x = x * (one + GrassmannElement::monomial(pool_, fwd));
      x = x * (one - GrassmannElement::monomial(pool_, back));
    }
    return x;
  }

  GrassmannElement integrate_slice(const GrassmannElement& x, int k) const {
    std::vector<GeneratorId> measure;
    for (int c = 0; c < n_cells_; ++c) {
      measure.push_back(star_[k][c]);
      measure.push_back(plain_[k][c]);
    }
    return berezin_integrate(x, measure);
  }

 private:
  GeneratorPool& pool_;
  int n_cells_;
  std::vector<std::vector<GeneratorId>> star_;
  std::vector<std::vector<GeneratorId>> plain_;
};

double symbol_deviation(const SymbolExpr& a, const SymbolExpr& b) {
  return max_abs_diff(a.value, b.value);
}

}  // namespace

Word refine(const Word& w, int slices) {
  if (slices < 1) throw AutomatonError("slice count must be positive");
  Word out;
  for (const auto& l : w.letters) {
    if (l.gate == "deutsch_prime" && l.phi) {
      for (int s = 0; s < slices; ++s) out.letters.push_back(Letter{l.gate, *l.phi / slices});
    } else {
      out.letters.push_back(l);
    }
  }
  return out;
}

FockOperator word_matrix(const Word& w) {
  GeneratorPool pool;
  auto gates = letter_gates(pool, w);
  FockOperator u = FockOperator::identity(gates.front().n_in);
  for (const auto& g : gates) u = g.matrix * u;
  return u;
}

SymbolExpr word_symbol_convolution(GeneratorPool& pool, const Word& w) {
  auto gates = letter_gates(pool, w);
  SymbolExpr s = *gates.front().covariant;
  for (std::size_t k = 1; k < gates.size(); ++k) s = convolve(pool, *gates[k].covariant, s);
  return s;
}

SymbolExpr path_integral(GeneratorPool& pool, const std::vector<GrassmannElement>& exponents,
                         int n_cells, const PathIntegralOptions& options) {
  const int n = static_cast<int>(exponents.size());
  if (n == 0) throw AutomatonError("empty word");
  const auto a = pool.out_gens(n_cells);
  const auto b = pool.in_gens(n_cells);
  Mask canonical = 0;
  for (auto g : a) canonical |= bit(g);
  for (auto g : b) canonical |= bit(g);
  for (const auto& h : exponents) {
    if (!h.uses_only(canonical)) throw AutomatonError("exponent uses foreign generators");
  }

  Trajectory path(pool, n, n_cells);
  GrassmannElement p(pool, 1.0);
  if (options.mode == PathIntegralMode::ExpandAction) {
    for (int k = 1; k < n; ++k) path.ensure(k);
    GrassmannElement action(pool);
    GrassmannElement earlier_odd(pool);
    for (int k = 0; k < n; ++k) {
      auto h = path.place(exponents[k], k);
      auto odd = h.odd();
      action += h;
      if (!options.drop_odd_term) action += odd * earlier_odd;
      earlier_odd += odd;
    }
    p = grassmann_exp(action);
    for (int k = 0; k < n; ++k) {
      p = path.times_kinetic(p, k);
      if (k >= 1) p = path.integrate_slice(p, k);
    }
  } else {
    for (int k = 0; k < n; ++k) {
      path.ensure(k + 1);
      p = grassmann_exp(path.place(exponents[k], k)) * p;
      p = path.times_kinetic(p, k);
      if (k >= 1) {
        p = path.integrate_slice(p, k);
        path.release(k);
      }
    }
  }
  if (!p.uses_only(canonical)) throw AutomatonError("trajectory variables survived integration");
  return SymbolExpr{p, b, a, SymbolKind::Covariant};
}

SymbolExpr word_symbol_path_integral(GeneratorPool& pool, const Word& w,
                                     const PathIntegralOptions& options) {
  auto gates = letter_gates(pool, w);
  std::vector<GrassmannElement> exponents;
  for (const auto& g : gates) {
    if (!g.exp_generator) {
      throw AutomatonError("letter '" + g.name + "' has no exponential form");
    }
    exponents.push_back(*g.exp_generator);
  }
  return path_integral(pool, exponents, gates.front().n_in, options);
}

SuperactionText render_superaction(GeneratorPool& pool, const Word& w) {
  auto gates = letter_gates(pool, w);
  const int n = static_cast<int>(gates.size());
  Trajectory path(pool, n, gates.front().n_in);
  for (int k = 1; k < n; ++k) path.ensure(k);
  GrassmannElement kinetic(pool), hamiltonian(pool), correction(pool), earlier_odd(pool);
  for (int k = 0; k < n; ++k) {
    if (!gates[k].exp_generator) {
      throw AutomatonError("letter '" + gates[k].name + "' has no exponential form");
    }
    kinetic += path.kinetic(k);
    auto h = path.place(*gates[k].exp_generator, k);
    hamiltonian += h;
    correction += h.odd() * earlier_odd;
    earlier_odd += h.odd();
  }
  return SuperactionText{render(kinetic), render(hamiltonian), render(correction)};
}

double WordReport::max_deviation() const {
  double d = matrix_vs_convolution;
  if (matrix_vs_path) d = std::max(d, *matrix_vs_path);
  if (convolution_vs_path) d = std::max(d, *convolution_vs_path);
  return d;
}

WordReport compare_word(GeneratorPool& pool, const Word& w, const PathIntegralOptions& options) {
  auto gates = letter_gates(pool, w);
  auto matrix = word_matrix(w);
  auto from_matrix = covariant_symbol(pool, matrix);
  auto conv = word_symbol_convolution(pool, w);
  WordReport r{w, matrix, from_matrix, conv, std::nullopt,
               symbol_deviation(from_matrix, conv), std::nullopt, std::nullopt};
  bool exponential = std::all_of(gates.begin(), gates.end(),
                                 [](const Gate& g) { return g.exp_generator.has_value(); });
  if (exponential) {
    r.path_integral = word_symbol_path_integral(pool, w, options);
    r.matrix_vs_path = symbol_deviation(from_matrix, *r.path_integral);
    r.convolution_vs_path = symbol_deviation(conv, *r.path_integral);
  }
  return r;
}

EvolutionReport autonomous_evolve(GeneratorPool& pool, const SymbolExpr& h_sym,
                                  const FockOperator& h_mat, double t, int n) {
  if (!is_hermitian(h_mat)) throw AutomatonError("hamiltonian matrix is not Hermitian");
  if (n < 1) throw AutomatonError("slice count must be positive");
  if (h_sym.kind != SymbolKind::Covariant) throw AutomatonError("expected a covariant symbol");
  const int cells = h_mat.n_in;
  if (h_sym.n_in() != cells || h_sym.n_out() != cells) {
    throw AutomatonError("symbol and matrix act on different cell counts");
  }
  std::map<GeneratorId, GeneratorId> to_canonical;
  for (int c = 0; c < cells; ++c) {
    to_canonical[h_sym.out_gens[c]] = pool.out_gen(c + 1);
    to_canonical[h_sym.in_gens[c]] = pool.in_gen(c + 1);
  }
  const auto h = relabel(h_sym.value, to_canonical);
  const Complex step(0.0, -t / n);
  std::vector<GrassmannElement> exponents(static_cast<std::size_t>(n), step * h);
  PathIntegralOptions options;
  options.mode = PathIntegralMode::Stepwise;
  auto symbol = path_integral(pool, exponents, cells, options);
  EvolutionReport r{t, n, unitary_evolution(h_mat, t), operator_from_symbol(symbol), symbol, 0.0};
  r.deviation = max_abs_diff(r.exact, r.sliced);
  return r;
}

}  // namespace superlogic
