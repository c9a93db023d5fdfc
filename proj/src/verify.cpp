#include "superlogic/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>

#include "superlogic/automaton.hpp"
#include "superlogic/composer.hpp"

namespace superlogic {

namespace {

using std::numbers::pi;

class Suite {
 public:
  explicit Suite(std::string scope) { report_.scope = std::move(scope); }

  void at_most(const std::string& name, double tolerance, const std::function<double()>& f) {
    add(name, tolerance, false, f);
  }
  void above(const std::string& name, double threshold, const std::function<double()>& f) {
    add(name, threshold, true, f);
  }

  SuiteReport take() { return std::move(report_); }

 private:
  void add(const std::string& name, double tol, bool lower, const std::function<double()>& f) {
    CheckResult r{name, 0.0, tol, lower, false};
    try {
      r.deviation = f();
      r.passed = lower ? r.deviation > tol : r.deviation <= tol;
    } catch (const std::exception&) {
      r.deviation = INFINITY;
      r.passed = false;
    }
    report_.checks.push_back(r);
  }

  SuiteReport report_;
};

Complex random_complex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), u(rng)};
}

GrassmannElement random_element(const GeneratorPool& pool, std::span<const GeneratorId> gens,
                                int n_terms, std::mt19937_64& rng, bool nilpotent) {
  std::vector<Term> terms;
  std::bernoulli_distribution coin(0.5);
  for (int t = 0; t < n_terms; ++t) {
    Mask m = 0;
    for (auto g : gens)
      if (coin(rng)) m |= bit(g);
    if (nilpotent && m == 0) continue;
    terms.push_back(Term{m, random_complex(rng)});
  }
  return GrassmannElement::from_terms(pool, std::move(terms));
}

FockOperator random_operator(int n_out, int n_in, std::mt19937_64& rng) {
  FockOperator a = FockOperator::zero(n_out, n_in);
  for (Eigen::Index r = 0; r < a.entries.rows(); ++r)
    for (Eigen::Index c = 0; c < a.entries.cols(); ++c) a.entries(r, c) = random_complex(rng);
  return a;
}

FockVector random_state(int n, std::mt19937_64& rng) {
  FockVector v = FockVector::zero(n);
  for (Eigen::Index i = 0; i < v.amplitudes.size(); ++i) v.amplitudes(i) = random_complex(rng);
  return v;
}

std::vector<GeneratorId> lambda8(const GeneratorPool& pool) {
  auto gens = pool.out_gens(4);
  auto ins = pool.in_gens(4);
  gens.insert(gens.end(), ins.begin(), ins.end());
  return gens;
}

SuiteReport algebra_suite() {
  Suite s("algebra");
  GeneratorPool pool;
  const auto gens = lambda8(pool);
  s.at_most("associativity", 1e-12, [&] {
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      auto a = random_element(pool, gens, 8, rng, false);
      auto b = random_element(pool, gens, 8, rng, false);
      auto c = random_element(pool, gens, 8, rng, false);
      worst = std::max(worst, max_abs_diff((a * b) * c, a * (b * c)));
    }
    return worst;
  });
  s.at_most("graded-commutativity", 1e-12, [&] {
    std::mt19937_64 rng(102);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      auto a = random_element(pool, gens, 8, rng, false);
      auto b = random_element(pool, gens, 8, rng, false);
      for (auto x : {a.even(), a.odd()})
        for (auto y : {b.even(), b.odd()}) {
          double sign = (x.parity() == 1 && y.parity() == 1) ? -1.0 : 1.0;
          worst = std::max(worst, max_abs_diff(x * y, sign * (y * x)));
        }
    }
    return worst;
  });
  s.at_most("derivative-squares-to-zero", 0.0, [&] {
    std::mt19937_64 rng(103);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      auto x = random_element(pool, gens, 16, rng, false);
      for (auto g : gens) worst = std::max(worst, max_abs_coeff(left_derivative(left_derivative(x, g), g)));
    }
    return worst;
  });
  s.at_most("involution-antihomomorphism", 1e-12, [&] {
    std::mt19937_64 rng(104);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      auto a = random_element(pool, gens, 8, rng, false);
      auto b = random_element(pool, gens, 8, rng, false);
      worst = std::max(worst, max_abs_diff(involution(a * b), involution(b) * involution(a)));
      worst = std::max(worst, max_abs_diff(involution(involution(a)), a));
    }
    return worst;
  });
  s.at_most("berezin-fubini-sign", 1e-12, [&] {
    std::mt19937_64 rng(105);
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      auto x = random_element(pool, gens, 16, rng, false);
      const GeneratorId fwd[] = {gens[0], gens[5]};
      const GeneratorId rev[] = {gens[5], gens[0]};
      worst = std::max(worst, max_abs_diff(berezin_integrate(x, fwd), -berezin_integrate(x, rev)));
    }
    return worst;
  });
  s.at_most("gaussian-normalization", 0.0, [&] {
    const GeneratorId pair[] = {pool.out_gen(1), pool.in_gen(1)};
    auto g = grassmann_exp(-GrassmannElement::monomial(pool, pair));
    return std::abs(berezin_integrate(g, pair).scalar_part() - 1.0);
  });
  s.at_most("exp-composition-rule", 1e-12, [&] {
    std::mt19937_64 rng(106);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      auto x = random_element(pool, gens, 6, rng, true);
      auto y = random_element(pool, gens, 6, rng, true);
      auto lhs = grassmann_exp(x) * grassmann_exp(y);
      worst = std::max(worst, max_abs_diff(lhs, grassmann_exp(x + y + x.odd() * y.odd())));
    }
    return worst;
  });
  s.at_most("log-inverts-exp", 1e-12, [&] {
    std::mt19937_64 rng(107);
    double worst = 0.0;
    for (int t = 0; t < 30; ++t) {
      auto x = GrassmannElement(pool, Complex(0.3, -0.8)) + random_element(pool, gens, 6, rng, true);
      worst = std::max(worst, max_abs_diff(grassmann_exp(grassmann_log(x)), x));
    }
    return worst;
  });
  return s.take();
}

SuiteReport symbols_suite() {
  Suite s("symbols");
  GeneratorPool pool;
  s.at_most("anticommutation-N1..4", 0.0, [&] {
    double worst = 0.0;
    for (int n = 1; n <= 4; ++n) {
      auto id = FockOperator::identity(n);
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
          auto mixed = anticommutator(creation(i, n), annihilation(j, n));
          worst = std::max(worst, max_abs_diff(mixed, i == j ? id : FockOperator::zero(n, n)));
          worst = std::max(worst, anticommutator(creation(i, n), creation(j, n)).entries.cwiseAbs().maxCoeff());
          worst = std::max(worst, anticommutator(annihilation(i, n), annihilation(j, n)).entries.cwiseAbs().maxCoeff());
        }
    }
    return worst;
  });
  s.at_most("pauli-string-identities", 0.0, [&] {
    auto r = pauli_string_identity_checks(1);
    return std::max({r.square_deviation, r.anticommutes_creation, r.anticommutes_annihilation,
                     r.sign_action_deviation});
  });
  s.at_most("coherent-eigenstates-N1..3", 1e-12, [&] {
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n) {
      auto b = pool.in_gens(n);
      auto ket = coherent_ket(pool, b, n);
      for (int k = 1; k <= n; ++k) {
        auto rhs = right_multiply(ket, GrassmannElement::generator(pool, b[k - 1]));
        worst = std::max(worst, max_abs_diff(act(annihilation(k, n), ket), rhs));
      }
    }
    return worst;
  });
  for (int n = 1; n <= 3; ++n) {
    s.at_most("resolution-of-identity-N" + std::to_string(n), 1e-12, [&pool, n] {
      return max_abs_diff(resolution_of_identity_check(pool, n), FockOperator::identity(n));
    });
  }
  s.at_most("elementary-correspondence", 1e-12, [&] {
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n)
      for (int k = 1; k <= n; ++k) {
        worst = std::max(worst, max_abs_diff(covariant_symbol(pool, annihilation(k, n)).value,
                                             GrassmannElement::generator(pool, pool.in_gen(k))));
        worst = std::max(worst, max_abs_diff(covariant_symbol(pool, creation(k, n)).value,
                                             GrassmannElement::generator(pool, pool.out_gen(k))));
      }
    return worst;
  });
  for (int n = 1; n <= 3; ++n) {
    s.at_most("convolution-homomorphism-N" + std::to_string(n), 1e-10, [&pool, n] {
      std::mt19937_64 rng(200 + n);
      double worst = 0.0;
      for (int t = 0; t < 50; ++t) {
        auto a = random_operator(n, n, rng), b = random_operator(n, n, rng);
        auto conv = convolve(pool, covariant_symbol(pool, a), covariant_symbol(pool, b));
        worst = std::max(worst, max_abs_diff(conv.value, covariant_symbol(pool, a * b).value));
      }
      return worst;
    });
  }
  s.at_most("fock-bargmann-faithfulness", 1e-12, [&] {
    std::mt19937_64 rng(210);
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n) {
      auto a = random_operator(n, n, rng);
      auto fb = to_fb_operator(a);
      for (std::uint32_t m = 0; m < fock_dim(n); ++m) {
        auto basis = FockVector::basis({m, n});
        worst = std::max(worst, max_abs_diff(fb_apply(pool, fb, state_symbol(pool, basis)).value,
                                             state_symbol(pool, a.apply(basis)).value));
      }
    }
    return worst;
  });
  s.at_most("scalar-product", 1e-12, [&] {
    std::mt19937_64 rng(211);
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n) {
      auto f = random_state(n, rng), g = random_state(n, rng);
      Complex dense = f.amplitudes.dot(g.amplitudes);
      worst = std::max(worst, std::abs(scalar_product(state_symbol(pool, f), state_symbol(pool, g)) - dense));
    }
    return worst;
  });
  return s.take();
}

SuiteReport gates_suite() {
  Suite s("gates");
  GeneratorPool pool;
  s.at_most("unitarity", 1e-12, [&] {
    double worst = 0.0;
    auto dev = [](const FockOperator& u) {
      auto d = u.entries.rows();
      return (u.entries.adjoint() * u.entries - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    };
    worst = dev(gate_matrix("cc_not"));
    for (double phi : {0.0, 0.3, pi / 2, 1.7, pi}) {
      worst = std::max(worst, dev(gate_matrix("deutsch", phi)));
      worst = std::max(worst, dev(gate_matrix("deutsch_prime", phi)));
    }
    return worst;
  });
  s.at_most("deutsch-half-pi-is-toffoli", 1e-12, [&] {
    return std::max(max_abs_diff(gate_matrix("deutsch", pi / 2), gate_matrix("cc_not")),
                    max_abs_diff(make_gate(pool, "deutsch", pi / 2).covariant->value,
                                 make_gate(pool, "cc_not").covariant->value));
  });
  for (const auto& info : gate_registry()) {
    std::optional<double> phi;
    if (info.parametric) phi = 0.7;
    s.at_most("representations-" + info.name, 1e-12, [&pool, info, phi] {
      auto g = make_gate(pool, info.name, phi);
      double worst = max_abs_diff(operator_from_symbol(g.symbol), g.matrix);
      for (std::uint32_t m = 0; m < fock_dim(g.n_in); ++m) {
        auto basis = FockVector::basis({m, g.n_in});
        auto expected = state_symbol(pool, g.matrix.apply(basis)).value;
        worst = std::max(worst, max_abs_diff(fb_apply(pool, g.transfer, state_symbol(pool, basis)).value, expected));
        if (g.fb) {
          worst = std::max(worst, max_abs_diff(fb_apply(pool, *g.fb, state_symbol(pool, basis)).value, expected));
        }
      }
      if (g.exp_generator) {
        worst = std::max(worst, max_abs_diff(grassmann_exp(*g.exp_generator), g.covariant->value));
      }
      return worst;
    });
  }
  for (const char* name : {"not", "and", "or", "cc_not"}) {
    s.at_most(std::string("catalog-symbol-") + name, 1e-12, [&pool, name] {
      return max_abs_diff(make_gate(pool, name).display_symbol().value, *catalog_symbol(pool, name));
    });
  }
  for (double phi : {0.0, 0.3, pi / 2, 1.7}) {
    char label[48];
    std::snprintf(label, sizeof label, "catalog-symbol-deutsch(%.4g)", phi);
    s.at_most(label, 1e-12, [&pool, phi] {
      return max_abs_diff(make_gate(pool, "deutsch", phi).covariant->value,
                          *catalog_symbol(pool, "deutsch", phi));
    });
  }
  for (const char* name : {"not", "cc_not"}) {
    s.at_most(std::string("catalog-fock-bargmann-") + name, 1e-12,
              [name] { return max_abs_diff(to_fb_operator(gate_matrix(name)), *catalog_fb(name)); });
  }
  s.at_most("deutsch-prime-semigroup", 1e-10, [&] {
    double worst = 0.0;
    for (auto [a, b] : {std::pair{0.3, 0.4}, std::pair{pi / 2, pi / 2}, std::pair{1.0, -1.0}}) {
      worst = std::max(worst, max_abs_diff(gate_matrix("deutsch_prime", a) * gate_matrix("deutsch_prime", b),
                                           gate_matrix("deutsch_prime", a + b)));
    }
    return worst;
  });
  s.at_most("deutsch-prime-classical-only-when-trivial", 0.0, [&] {
    double mismatches = 0.0;
    for (int k = 0; k < 16; ++k) {
      auto m = gate_matrix("deutsch_prime", k * pi / 8);
      bool classical = true;
      for (Eigen::Index r = 0; r < m.entries.rows(); ++r)
        for (Eigen::Index c = 0; c < m.entries.cols(); ++c) {
          auto v = m.entries(r, c);
          classical = classical && (std::abs(v) < 1e-12 || std::abs(v - 1.0) < 1e-12);
        }
      bool trivial = max_abs_diff(m, FockOperator::identity(3)) < 1e-12;
      if (classical != trivial) mismatches += 1.0;
    }
    return mismatches;
  });
  return s.take();
}

int classical_mismatches(const FockOperator& op, const std::function<std::uint32_t(std::uint32_t)>& truth) {
  int bad = 0;
  for (std::uint32_t m = 0; m < fock_dim(op.n_in); ++m) {
    auto v = op.apply(FockVector::basis({m, op.n_in}));
    auto e = FockVector::basis({truth(m), op.n_out});
    if ((v.amplitudes - e.amplitudes).cwiseAbs().maxCoeff() > 1e-12) ++bad;
  }
  return bad;
}

SuiteReport composer_suite() {
  Suite s("composer");
  GeneratorPool pool;
  auto bitv = [](std::uint32_t m, int k) { return (m >> (k - 1)) & 1u; };
  using W = CircuitNode;
  struct Case {
    std::string name;
    CircuitNode tree;
    std::function<std::uint32_t(std::uint32_t)> truth;
  };
  std::vector<Case> cases = {
      {"C1", W::make_gate("and", {W::make_wire(1), W::make_gate("or", {W::make_wire(2), W::make_wire(3)})}),
       [&](std::uint32_t m) { return bitv(m, 1) & (bitv(m, 2) | bitv(m, 3)); }},
      {"C2", W::make_gate("and", {W::make_gate("or", {W::make_wire(1), W::make_wire(2)}), W::make_wire(3)}),
       [&](std::uint32_t m) { return (bitv(m, 1) | bitv(m, 2)) & bitv(m, 3); }},
      {"nand3", W::make_gate("nand", {W::make_wire(1), W::make_gate("and", {W::make_wire(2), W::make_wire(3)})}),
       [&](std::uint32_t m) { return 1u - (bitv(m, 1) & bitv(m, 2) & bitv(m, 3)); }},
  };
  for (const auto& c : cases) {
    s.at_most(c.name + "-matrix-truth-table", 0.0, [&pool, &c] {
      return double(classical_mismatches(build_circuit(pool, c.tree).matrix, c.truth));
    });
    s.at_most(c.name + "-symbol-vs-matrix", 1e-12, [&pool, &c] {
      auto g = build_circuit(pool, c.tree);
      return max_abs_diff(g.symbol.value, matrix_symbol(pool, g.matrix).value);
    });
    s.at_most(c.name + "-fock-bargmann-truth-table", 1e-12, [&pool, &c] {
      auto fb = fb_compose(pool, c.tree);
      double worst = 0.0;
      for (std::uint32_t m = 0; m < 8; ++m) {
        auto f = state_symbol(pool, FockVector::basis({m, 3}));
        auto expected = state_symbol(pool, FockVector::basis({c.truth(m), 1}));
        worst = std::max(worst, max_abs_diff(fb_apply(pool, fb, f).value, expected.value));
      }
      return worst;
    });
  }
  s.at_most("split-formula-random", 1e-10, [&] {
    std::mt19937_64 rng(301);
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
      auto a = make_custom_gate(pool, "A", random_operator(2, 3, rng));
      auto b = make_custom_gate(pool, "B", random_operator(1, 2, rng));
      for (int k = 1; k <= 3; ++k) {
        worst = std::max(worst, max_abs_diff(plug_input_symbol(pool, a, k, b).value,
                                             matrix_symbol(pool, plug_input_matrix(a, k, b)).value));
      }
    }
    return worst;
  });
  s.at_most("split-reduces-for-even-B", 1e-12, [&] {
    FockOperator even = FockOperator::zero(1, 2);
    even.entries(0, 0) = 1.0;
    even.entries(0, 3) = 1.0;
    even.entries(1, 1) = 1.0;
    auto b = make_custom_gate(pool, "even", even);
    auto a = make_gate(pool, "and");
    return max_abs_diff(plug_input_symbol(pool, a, 1, b, PlugFormula::Split).value,
                        plug_input_symbol(pool, a, 1, b, PlugFormula::Plain).value);
  });
  s.at_most("serial-not-not", 1e-12, [&] {
    auto g = serial(pool, make_gate(pool, "not"), make_gate(pool, "not"));
    return max_abs_diff(g.covariant->value, GrassmannElement(pool, 1.0));
  });
  s.at_most("serial-toffoli-involution", 1e-12, [&] {
    auto g = serial(pool, make_gate(pool, "cc_not"), make_gate(pool, "cc_not"));
    return max_abs_diff(g.matrix, FockOperator::identity(3));
  });
  return s.take();
}

SuiteReport automaton_suite() {
  Suite s("automaton");
  GeneratorPool pool;
  s.at_most("three-way-random-deutsch-words", 1e-10, [&] {
    std::mt19937_64 rng(401);
    std::uniform_real_distribution<double> angle(-pi, pi);
    double worst = 0.0;
    for (int len = 1; len <= 4; ++len) {
      for (int t = 0; t < 3; ++t) {
        Word w;
        for (int k = 0; k < len; ++k) w.letters.push_back(Letter{"deutsch", angle(rng)});
        worst = std::max(worst, compare_word(pool, w).max_deviation());
      }
    }
    return worst;
  });
  s.above("odd-term-necessity", 1e-6, [&] {
    Word w{{{"deutsch", 0.7}, {"deutsch", 0.7}}};
    PathIntegralOptions drop;
    drop.drop_odd_term = true;
    return max_abs_diff(word_symbol_path_integral(pool, w, drop).value,
                        word_symbol_convolution(pool, w).value);
  });
  s.at_most("even-exponents-need-no-correction", 1e-10, [&] {
    Word w{{{"deutsch", 0.0}, {"deutsch", pi}, {"deutsch", 0.0}}};
    PathIntegralOptions drop;
    drop.drop_odd_term = true;
    return max_abs_diff(word_symbol_path_integral(pool, w, drop).value,
                        word_symbol_convolution(pool, w).value);
  });
  s.at_most("deutsch-prime-words-depend-on-sum", 1e-10, [&] {
    Word w{{{"deutsch_prime", 0.4}, {"deutsch_prime", -0.9}, {"deutsch_prime", 1.3}}};
    return max_abs_diff(word_matrix(w), gate_matrix("deutsch_prime", 0.8));
  });
  auto h = creation(1, 1) + annihilation(1, 1);
  auto h_sym = covariant_symbol(pool, h);
  std::vector<double> errors;
  for (int n : {4, 8, 16, 32}) errors.push_back(autonomous_evolve(pool, h_sym, h, 1.0, n).deviation);
  s.at_most("autonomous-monotone-refinement", 0.0, [&] {
    double violations = 0.0;
    for (std::size_t k = 1; k < errors.size(); ++k)
      if (!(errors[k] < errors[k - 1])) violations += 1.0;
    return violations;
  });
  s.at_most("autonomous-error-n32", 1e-2, [&] { return errors.back(); });
  return s.take();
}

}  // namespace

bool SuiteReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string SuiteReport::render() const {
  std::string out;
  for (const auto& c : checks) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s/%s %.3e %s %.0e %s\n", scope.c_str(), c.name.c_str(),
                  c.deviation, c.lower_bound ? ">" : "<=", c.tolerance, c.passed ? "PASS" : "FAIL");
    out += buf;
  }
  return out;
}

const std::vector<std::string>& verify_scopes() {
  static const std::vector<std::string> scopes = {"algebra", "symbols", "gates", "composer",
                                                  "automaton"};
  return scopes;
}

std::vector<SuiteReport> run_verification(const std::string& scope) {
  static const std::map<std::string, std::function<SuiteReport()>> suites = {
      {"algebra", algebra_suite},     {"symbols", symbols_suite},
      {"gates", gates_suite},         {"composer", composer_suite},
      {"automaton", automaton_suite},
  };
  std::vector<SuiteReport> out;
  if (scope == "all") {
    for (const auto& name : verify_scopes()) out.push_back(suites.at(name)());
    return out;
  }
  auto it = suites.find(scope);
  if (it == suites.end()) throw std::invalid_argument("unknown verification scope '" + scope + "'");
  out.push_back(it->second());
  return out;
}

}  // namespace superlogic
