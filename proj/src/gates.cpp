#include "superlogic/gates.hpp"

#include <cmath>

namespace superlogic {

const std::vector<GateInfo>& gate_registry() {
  static const std::vector<GateInfo> registry = {
      {"identity", 1, 1, false}, {"not", 1, 1, false},    {"and", 2, 1, false},
      {"or", 2, 1, false},       {"xor", 2, 1, false},    {"nand", 2, 1, false},
      {"cc_not", 3, 3, false},   {"deutsch", 3, 3, true}, {"deutsch_prime", 3, 3, true},
  };
  return registry;
}

std::optional<GateInfo> find_gate(const std::string& name) {
  for (const auto& info : gate_registry())
    if (info.name == name) return info;
  return std::nullopt;
}

Gate make_custom_gate(const GeneratorPool& pool, std::string name, const FockOperator& matrix) {
  Gate g{.name = std::move(name),
         .phi = std::nullopt,
         .n_in = matrix.n_in,
         .n_out = matrix.n_out,
         .matrix = matrix,
         .symbol = matrix_symbol(pool, matrix),
         .covariant = std::nullopt,
         .fb = std::nullopt,
         .transfer = transfer_form(matrix),
         .exp_generator = std::nullopt};
  if (matrix.is_square()) {
    g.covariant = to_covariant(g.symbol);
    g.fb = to_fb_operator(matrix);
    if (std::abs(g.covariant->value.scalar_part()) > kZeroThreshold) {
      g.exp_generator = grassmann_log(g.covariant->value);
    }
  }
  return g;
}

Gate make_gate(const GeneratorPool& pool, const std::string& name, std::optional<double> phi) {
  auto info = find_gate(name);
  if (!info) throw GateError("unknown gate '" + name + "'");
  if (info->parametric && !phi) throw GateError("gate '" + name + "' requires a parameter");
  if (!info->parametric && phi) throw GateError("gate '" + name + "' takes no parameter");
  Gate g = make_custom_gate(pool, name, gate_matrix(name, phi));
  g.phi = phi;
  return g;
}

Gate deutsch_prime(const GeneratorPool& pool, double phi) {
  return make_gate(pool, "deutsch_prime", phi);
}

namespace {

GrassmannElement gen(const GeneratorPool& pool, GeneratorId g) {
  return GrassmannElement::generator(pool, g);
}

}  // namespace

GrassmannElement catalog_deutsch_exponent(const GeneratorPool& pool, double phi) {
  const Complex i(0.0, 1.0);
  auto a1 = gen(pool, pool.out_gen(1)), a2 = gen(pool, pool.out_gen(2)),
       a3 = gen(pool, pool.out_gen(3));
  auto b1 = gen(pool, pool.in_gen(1)), b2 = gen(pool, pool.in_gen(2)),
       b3 = gen(pool, pool.in_gen(3));
  GrassmannElement one(pool, 1.0);
  // a3* a2* ((i cos - 1)(1 + a1* b1) + sin (a1* + b1)) b2 b3
  auto inner = (i * std::cos(phi) - 1.0) * (one + a1 * b1) + std::sin(phi) * (a1 + b1);
  return a3 * a2 * inner * b2 * b3;
}

std::optional<GrassmannElement> catalog_symbol(const GeneratorPool& pool, const std::string& name,
                                               std::optional<double> phi) {
  GrassmannElement one(pool, 1.0);
  auto a = [&](int k) { return gen(pool, pool.out_gen(k)); };
  auto b = [&](int k) { return gen(pool, pool.in_gen(k)); };
  if (name == "not") return a(1) + b(1);
  if (name == "and") return one + b(1) + b(2) + a(1) * b(1) * b(2);
  if (name == "or") return one + a(1) * (b(1) + b(2) + b(1) * b(2));
  if (name == "cc_not") return one + a(3) * a(2) * (a(1) - one) * (one - b(1)) * b(2) * b(3);
  if (name == "deutsch") {
    if (!phi) throw GateError("gate 'deutsch' requires a parameter");
    return one + catalog_deutsch_exponent(pool, *phi);
  }
  return std::nullopt;
}

std::optional<FBOperator> catalog_fb(const std::string& name) {
  if (name == "not") {
    return FBOperator{1, 1, FBForm::NormalOrdered, {{0, 1, 1.0}, {1, 0, 1.0}}};
  }
  if (name == "cc_not") {
    // 1 + a3* a2* (a1* - 1)(1 - d1) d2 d3, expanded and normal ordered:
    //   a3* a2* (a1* - a1* d1 - 1 + d1) d2 d3
    // a3* a2* = -a2* a3*, and d1 d2 d3 stays ascending.
    FBOperator op{3, 3, FBForm::NormalOrdered, {}};
    op.terms.push_back({0, 0, 1.0});
    op.terms.push_back({0b111, 0b110, -1.0});
    op.terms.push_back({0b111, 0b111, 1.0});
    op.terms.push_back({0b110, 0b110, 1.0});
    op.terms.push_back({0b110, 0b111, -1.0});
    std::sort(op.terms.begin(), op.terms.end(), [](const FBTerm& x, const FBTerm& y) {
      return std::tie(x.annihilate, x.create) < std::tie(y.annihilate, y.create);
    });
    return op;
  }
  return std::nullopt;
}

}  // namespace superlogic
