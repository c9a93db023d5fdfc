#include "superlogic/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

namespace superlogic {

namespace {

struct MaskHash {
  std::size_t operator()(Mask m) const noexcept {
    auto lo = static_cast<std::uint64_t>(m);
    auto hi = static_cast<std::uint64_t>(m >> 64);
    return std::hash<std::uint64_t>{}(lo ^ (hi * 0x9e3779b97f4a7c15ULL));
  }
};

using Accumulator = std::unordered_map<Mask, Complex, MaskHash>;

int lowest_bit(Mask m) {
  auto lo = static_cast<std::uint64_t>(m);
  if (lo != 0) return __builtin_ctzll(lo);
  return 64 + __builtin_ctzll(static_cast<std::uint64_t>(m >> 64));
}

// Parity of the number of pairs (i in a, j in b) with i > j, i.e. the sign
// picked up by moving every generator of b to the left of a.
bool merge_is_odd(Mask a, Mask b) {
  int swaps = 0;
  while (b != 0) {
    int j = lowest_bit(b);
    b &= b - 1;
    swaps += popcount(a >> (j + 1));
  }
  return (swaps & 1) != 0;
}

void check_same_pool(const GrassmannElement& a, const GrassmannElement& b) {
  if (&a.pool() != &b.pool()) {
    throw AlgebraError("Grassmann elements belong to different generator pools");
  }
}

std::vector<GeneratorId> generators_of(Mask m) {
  std::vector<GeneratorId> out;
  while (m != 0) {
    out.push_back(GeneratorId{static_cast<std::uint32_t>(lowest_bit(m))});
    m &= m - 1;
  }
  return out;
}

}  // namespace

int popcount(Mask m) {
  return __builtin_popcountll(static_cast<std::uint64_t>(m)) +
         __builtin_popcountll(static_cast<std::uint64_t>(m >> 64));
}

// ---------------------------------------------------------------------------
// GeneratorPool

GeneratorPool::GeneratorPool() {
  slots_.reserve(kCapacity);
  for (std::size_t k = 1; k <= kMaxCells; ++k) {
    slots_.push_back(Slot{"α" + std::to_string(k) + "*",
                          static_cast<std::uint32_t>(kMaxCells + k - 1), true});
  }
  for (std::size_t k = 1; k <= kMaxCells; ++k) {
    slots_.push_back(Slot{"β" + std::to_string(k), static_cast<std::uint32_t>(k - 1), true});
  }
}

GeneratorId GeneratorPool::out_gen(std::size_t cell) const {
  if (cell < 1 || cell > kMaxCells) throw AlgebraError("cell index out of range");
  return GeneratorId{static_cast<std::uint32_t>(cell - 1)};
}

GeneratorId GeneratorPool::in_gen(std::size_t cell) const {
  if (cell < 1 || cell > kMaxCells) throw AlgebraError("cell index out of range");
  return GeneratorId{static_cast<std::uint32_t>(kMaxCells + cell - 1)};
}

std::vector<GeneratorId> GeneratorPool::out_gens(std::size_t n_cells) const {
  std::vector<GeneratorId> gs;
  for (std::size_t k = 1; k <= n_cells; ++k) gs.push_back(out_gen(k));
  return gs;
}

std::vector<GeneratorId> GeneratorPool::in_gens(std::size_t n_cells) const {
  std::vector<GeneratorId> gs;
  for (std::size_t k = 1; k <= n_cells; ++k) gs.push_back(in_gen(k));
  return gs;
}

std::uint32_t GeneratorPool::claim_locked(const std::string& name) {
  for (std::size_t i = 2 * kMaxCells; i < slots_.size(); ++i) {
    if (!slots_[i].live) {
      slots_[i] = Slot{name, std::nullopt, true};
      return static_cast<std::uint32_t>(i);
    }
  }
  if (slots_.size() >= kCapacity) {
    throw AlgebraError("generator pool exhausted (" + std::to_string(kCapacity) +
                       " generators)");
  }
  slots_.push_back(Slot{name, std::nullopt, true});
  return static_cast<std::uint32_t>(slots_.size() - 1);
}

GeneratorId GeneratorPool::allocate(const std::string& name) {
  std::lock_guard lock(mutex_);
  return GeneratorId{claim_locked(name)};
}

std::pair<GeneratorId, GeneratorId> GeneratorPool::allocate_pair(const std::string& name) {
  std::lock_guard lock(mutex_);
  auto tag = name + std::to_string(++serial_);
  auto plain = claim_locked(tag);
  auto star = claim_locked(tag + "*");
  slots_[plain].conjugate = star;
  slots_[star].conjugate = plain;
  return {GeneratorId{plain}, GeneratorId{star}};
}

void GeneratorPool::release(GeneratorId g) {
  std::lock_guard lock(mutex_);
  if (g.index < 2 * kMaxCells || g.index >= slots_.size()) return;
  slots_[g.index].live = false;
  slots_[g.index].conjugate.reset();
}

void GeneratorPool::release(std::span<const GeneratorId> gs) {
  for (auto g : gs) release(g);
}

std::optional<GeneratorId> GeneratorPool::conjugate(GeneratorId g) const {
  std::lock_guard lock(mutex_);
  if (g.index >= slots_.size() || !slots_[g.index].conjugate) return std::nullopt;
  return GeneratorId{*slots_[g.index].conjugate};
}

std::string GeneratorPool::name(GeneratorId g) const {
  std::lock_guard lock(mutex_);
  if (g.index >= slots_.size()) return "g" + std::to_string(g.index);
  return slots_[g.index].name;
}

bool GeneratorPool::is_live(GeneratorId g) const {
  std::lock_guard lock(mutex_);
  return g.index < slots_.size() && slots_[g.index].live;
}

std::size_t GeneratorPool::live_count() const {
  std::lock_guard lock(mutex_);
  return static_cast<std::size_t>(
      std::count_if(slots_.begin(), slots_.end(), [](const Slot& s) { return s.live; }));
}

// ---------------------------------------------------------------------------
// GrassmannElement

GrassmannElement::GrassmannElement(const GeneratorPool& pool) : pool_(&pool) {}

GrassmannElement::GrassmannElement(const GeneratorPool& pool, Complex scalar) : pool_(&pool) {
  if (std::abs(scalar) >= kZeroThreshold) terms_.push_back(Term{0, scalar});
}

GrassmannElement GrassmannElement::generator(const GeneratorPool& pool, GeneratorId g,
                                             Complex coeff) {
  GrassmannElement x(pool);
  if (std::abs(coeff) >= kZeroThreshold) x.terms_.push_back(Term{bit(g), coeff});
  return x;
}

GrassmannElement GrassmannElement::monomial(const GeneratorPool& pool,
                                            std::span<const GeneratorId> ordered,
                                            Complex coeff) {
  GrassmannElement x(pool);
  int sign = canonical_sign(ordered);
  if (sign == 0) return x;
  Mask m = 0;
  for (auto g : ordered) m |= bit(g);
  x.terms_.push_back(Term{m, coeff * static_cast<double>(sign)});
  x.canonicalize();
  return x;
}

GrassmannElement GrassmannElement::from_terms(const GeneratorPool& pool,
                                              std::vector<Term> terms) {
  GrassmannElement x(pool);
  x.terms_ = std::move(terms);
  x.canonicalize();
  return x;
}

void GrassmannElement::canonicalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.mask < b.mask; });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().mask == t.mask) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return std::abs(t.coeff) < kZeroThreshold; });
  terms_ = std::move(merged);
}

Complex GrassmannElement::scalar_part() const { return coefficient(0); }

Complex GrassmannElement::coefficient(Mask mask) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), mask,
                             [](const Term& t, Mask m) { return t.mask < m; });
  if (it != terms_.end() && it->mask == mask) return it->coeff;
  return 0.0;
}

Mask GrassmannElement::support() const {
  Mask m = 0;
  for (const auto& t : terms_) m |= t.mask;
  return m;
}

GrassmannElement GrassmannElement::even() const {
  GrassmannElement x(*pool_);
  for (const auto& t : terms_)
    if (popcount(t.mask) % 2 == 0) x.terms_.push_back(t);
  return x;
}

GrassmannElement GrassmannElement::odd() const {
  GrassmannElement x(*pool_);
  for (const auto& t : terms_)
    if (popcount(t.mask) % 2 == 1) x.terms_.push_back(t);
  return x;
}

std::optional<int> GrassmannElement::parity() const {
  if (terms_.empty()) return 0;
  int p = popcount(terms_.front().mask) % 2;
  for (const auto& t : terms_)
    if (popcount(t.mask) % 2 != p) return std::nullopt;
  return p;
}

GrassmannElement GrassmannElement::operator-() const {
  GrassmannElement x = *this;
  for (auto& t : x.terms_) t.coeff = -t.coeff;
  return x;
}

GrassmannElement& GrassmannElement::operator+=(const GrassmannElement& rhs) {
  check_same_pool(*this, rhs);
  terms_.insert(terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
  canonicalize();
  return *this;
}

GrassmannElement& GrassmannElement::operator-=(const GrassmannElement& rhs) {
  return *this += -rhs;
}

GrassmannElement& GrassmannElement::operator*=(Complex c) {
  for (auto& t : terms_) t.coeff *= c;
  canonicalize();
  return *this;
}

GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b) {
  check_same_pool(a, b);
  if (a.is_zero() || b.is_zero()) return GrassmannElement(a.pool());
  Accumulator acc;
  acc.reserve(a.terms().size() * b.terms().size());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      if ((ta.mask & tb.mask) != 0) continue;
      Complex c = ta.coeff * tb.coeff;
      if (merge_is_odd(ta.mask, tb.mask)) c = -c;
      acc[ta.mask | tb.mask] += c;
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (const auto& [m, c] : acc) terms.push_back(Term{m, c});
  return GrassmannElement::from_terms(a.pool(), std::move(terms));
}

GrassmannElement multiply(const GrassmannElement& a, const GrassmannElement& b) {
  return a * b;
}

ParitySplit parity_split(const GrassmannElement& x) { return {x.even(), x.odd()}; }

int canonical_sign(std::span<const GeneratorId> ordered) {
  int inversions = 0;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    for (std::size_t j = i + 1; j < ordered.size(); ++j) {
      if (ordered[i] == ordered[j]) return 0;
      if (ordered[j] < ordered[i]) ++inversions;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

GrassmannElement involution(const GrassmannElement& x) {
  const auto& pool = x.pool();
  std::vector<Term> out;
  out.reserve(x.terms().size());
  for (const auto& t : x.terms()) {
    auto gens = generators_of(t.mask);
    std::vector<GeneratorId> image;
    image.reserve(gens.size());
    for (auto it = gens.rbegin(); it != gens.rend(); ++it) {
      auto c = pool.conjugate(*it);
      if (!c) throw AlgebraError("generator " + pool.name(*it) + " has no involution partner");
      image.push_back(*c);
    }
    int sign = canonical_sign(image);
    if (sign == 0) continue;
    Mask m = 0;
    for (auto g : image) m |= bit(g);
    out.push_back(Term{m, std::conj(t.coeff) * static_cast<double>(sign)});
  }
  return GrassmannElement::from_terms(pool, std::move(out));
}

GrassmannElement left_derivative(const GrassmannElement& x, GeneratorId g) {
  Mask b = bit(g);
  std::vector<Term> out;
  for (const auto& t : x.terms()) {
    if ((t.mask & b) == 0) continue;
    bool odd = popcount(t.mask & (b - 1)) % 2 != 0;
    out.push_back(Term{t.mask & ~b, odd ? -t.coeff : t.coeff});
  }
  return GrassmannElement::from_terms(x.pool(), std::move(out));
}

GrassmannElement berezin_integrate(const GrassmannElement& x,
                                   std::span<const GeneratorId> gs) {
  GrassmannElement r = x;
  for (auto it = gs.rbegin(); it != gs.rend(); ++it) r = left_derivative(r, *it);
  return r;
}

GrassmannElement grassmann_exp(const GrassmannElement& x) {
  const Complex s = x.scalar_part();
  GrassmannElement nil = x - GrassmannElement(x.pool(), s);
  GrassmannElement sum(x.pool(), 1.0);
  GrassmannElement power(x.pool(), 1.0);
  for (int k = 1; k <= static_cast<int>(GeneratorPool::kCapacity) + 1; ++k) {
    power = power * nil;
    power *= 1.0 / k;
    if (power.is_zero()) break;
    sum += power;
  }
  if (s != Complex(0.0)) sum *= std::exp(s);
  return sum;
}

GrassmannElement grassmann_log(const GrassmannElement& x) {
  const Complex s = x.scalar_part();
  if (std::abs(s) < kZeroThreshold) {
    throw AlgebraError("logarithm of a nilpotent Grassmann element is undefined");
  }
  GrassmannElement u = x * (1.0 / s);
  u -= GrassmannElement(x.pool(), 1.0);
  GrassmannElement sum(x.pool(), std::log(s));
  GrassmannElement power(x.pool(), 1.0);
  for (int k = 1; k <= static_cast<int>(GeneratorPool::kCapacity) + 1; ++k) {
    power = power * u;
    if (power.is_zero()) break;
    sum += power * Complex((k % 2 == 1 ? 1.0 : -1.0) / k);
  }
  return sum;
}

GrassmannElement relabel(const GrassmannElement& x,
                         const std::map<GeneratorId, GeneratorId>& mapping) {
  std::vector<Term> out;
  out.reserve(x.terms().size());
  for (const auto& t : x.terms()) {
    auto gens = generators_of(t.mask);
    for (auto& g : gens) {
      auto it = mapping.find(g);
      if (it != mapping.end()) g = it->second;
    }
    int sign = canonical_sign(gens);
    if (sign == 0) continue;
    Mask m = 0;
    for (auto g : gens) m |= bit(g);
    out.push_back(Term{m, t.coeff * static_cast<double>(sign)});
  }
  return GrassmannElement::from_terms(x.pool(), std::move(out));
}

GrassmannElement negate_generators(const GrassmannElement& x,
                                   std::span<const GeneratorId> gs) {
  Mask flip = 0;
  for (auto g : gs) flip |= bit(g);
  std::vector<Term> out = x.terms();
  for (auto& t : out)
    if (popcount(t.mask & flip) % 2 != 0) t.coeff = -t.coeff;
  return GrassmannElement::from_terms(x.pool(), std::move(out));
}

GrassmannElement evaluate_at_zero(const GrassmannElement& x,
                                  std::span<const GeneratorId> gs) {
  Mask kill = 0;
  for (auto g : gs) kill |= bit(g);
  std::vector<Term> out;
  for (const auto& t : x.terms())
    if ((t.mask & kill) == 0) out.push_back(t);
  return GrassmannElement::from_terms(x.pool(), std::move(out));
}

double max_abs_diff(const GrassmannElement& a, const GrassmannElement& b) {
  check_same_pool(a, b);
  double worst = 0.0;
  std::size_t i = 0, j = 0;
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  while (i < ta.size() || j < tb.size()) {
    if (j == tb.size() || (i < ta.size() && ta[i].mask < tb[j].mask)) {
      worst = std::max(worst, std::abs(ta[i++].coeff));
    } else if (i == ta.size() || tb[j].mask < ta[i].mask) {
      worst = std::max(worst, std::abs(tb[j++].coeff));
    } else {
      worst = std::max(worst, std::abs(ta[i++].coeff - tb[j++].coeff));
    }
  }
  return worst;
}

double max_abs_coeff(const GrassmannElement& x) {
  double worst = 0.0;
  for (const auto& t : x.terms()) worst = std::max(worst, std::abs(t.coeff));
  return worst;
}

namespace {

std::string format_real(double v) {
  if (std::abs(v) < kZeroThreshold) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s(buf);
  if (s == "-0") s = "0";
  return s;
}

}  // namespace

std::string format_complex(Complex c) {
  double re = std::abs(c.real()) < kZeroThreshold ? 0.0 : c.real();
  double im = std::abs(c.imag()) < kZeroThreshold ? 0.0 : c.imag();
  if (im == 0.0) return format_real(re);
  if (re == 0.0) return format_real(im) + "i";
  std::string s = format_real(re);
  s += im < 0 ? "-" : "+";
  s += format_real(std::abs(im)) + "i";
  return s;
}

std::string coefficient_text(Complex c) {
  std::string s = format_complex(c);
  bool mixed = std::abs(c.real()) >= kZeroThreshold && std::abs(c.imag()) >= kZeroThreshold;
  return mixed ? "(" + s + ")" : s;
}

std::string render(const GrassmannElement& x) {
  if (x.is_zero()) return "0";
  auto terms = x.terms();
  std::stable_sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    int da = popcount(a.mask), db = popcount(b.mask);
    if (da != db) return da < db;
    return a.mask < b.mask;
  });
  std::string out;
  for (const auto& t : terms) {
    if (!out.empty()) out += " + ";
    out += coefficient_text(t.coeff);
    if (t.mask == 0) continue;
    out += "*";
    bool first = true;
    for (auto g : generators_of(t.mask)) {
      if (!first) out += "^";
      out += x.pool().name(g);
      first = false;
    }
  }
  return out;
}

}  // namespace superlogic
