#pragma once

// Finite Grassmann algebra with involution.
//
// Elements are sparse sums of monomials. A monomial is a bitmask over the
// generators of a GeneratorPool; the canonical order of the generators inside
// a monomial is ascending pool index, and every reordering sign is absorbed
// into the coefficient.

#include <complex>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace superlogic {

using Complex = std::complex<double>;
using Mask = unsigned __int128;

/// Coefficients below this magnitude are treated as exact zeros.
inline constexpr double kZeroThreshold = 1e-12;

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GeneratorId {
  std::uint32_t index = 0;

  friend bool operator==(GeneratorId, GeneratorId) = default;
  friend auto operator<=>(GeneratorId, GeneratorId) = default;
};

inline Mask bit(GeneratorId g) { return Mask{1} << g.index; }

int popcount(Mask m);

/// Registry of anticommuting generators.
///
/// The first 2 * kMaxCells slots are reserved for the canonical symbol
/// variables: alpha_k^* (output side) at indices 0..kMaxCells-1 and beta_k
/// (input side) at kMaxCells..2*kMaxCells-1, paired by the involution.
/// Everything after that is scratch space for integration variables.
/// Released scratch slots are reused; existing generators never move.
class GeneratorPool {
 public:
  static constexpr std::size_t kCapacity = 128;
  static constexpr std::size_t kMaxCells = 8;

  GeneratorPool();
  GeneratorPool(const GeneratorPool&) = delete;
  GeneratorPool& operator=(const GeneratorPool&) = delete;

  /// alpha_k^*, k is 1-based.
  GeneratorId out_gen(std::size_t cell) const;
  /// beta_k, k is 1-based. Involution partner of out_gen(k).
  GeneratorId in_gen(std::size_t cell) const;
  std::vector<GeneratorId> out_gens(std::size_t n_cells) const;
  std::vector<GeneratorId> in_gens(std::size_t n_cells) const;

  GeneratorId allocate(const std::string& name);
  /// Allocates (gamma, gamma^*) as an involution pair.
  std::pair<GeneratorId, GeneratorId> allocate_pair(const std::string& name);
  void release(GeneratorId g);
  void release(std::span<const GeneratorId> gs);

  std::optional<GeneratorId> conjugate(GeneratorId g) const;
  std::string name(GeneratorId g) const;
  bool is_live(GeneratorId g) const;
  std::size_t live_count() const;

 private:
  struct Slot {
    std::string name;
    std::optional<std::uint32_t> conjugate;
    bool live = false;
  };

  std::uint32_t claim_locked(const std::string& name);

  mutable std::mutex mutex_;
  std::vector<Slot> slots_;
  std::uint64_t serial_ = 0;
};

struct Term {
  Mask mask = 0;
  Complex coeff;
};

class GrassmannElement {
 public:
  explicit GrassmannElement(const GeneratorPool& pool);
  GrassmannElement(const GeneratorPool& pool, Complex scalar);

  static GrassmannElement generator(const GeneratorPool& pool, GeneratorId g,
                                    Complex coeff = 1.0);
  /// Product of the generators in the given order, times coeff.
  static GrassmannElement monomial(const GeneratorPool& pool,
                                   std::span<const GeneratorId> ordered,
                                   Complex coeff = 1.0);
  /// Builds from raw (mask, coeff) pairs; duplicates are summed.
  static GrassmannElement from_terms(const GeneratorPool& pool,
                                     std::vector<Term> terms);

  const GeneratorPool& pool() const { return *pool_; }
  /// Sorted by ascending mask; no coefficient below kZeroThreshold.
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  Complex scalar_part() const;
  Complex coefficient(Mask mask) const;
  Mask support() const;
  bool uses_only(Mask allowed) const { return (support() & ~allowed) == 0; }

  GrassmannElement even() const;
  GrassmannElement odd() const;
  /// 0 or 1 for homogeneous elements, nullopt for mixed ones. Zero is even.
  std::optional<int> parity() const;

  GrassmannElement operator-() const;
  GrassmannElement& operator+=(const GrassmannElement& rhs);
  GrassmannElement& operator-=(const GrassmannElement& rhs);
  GrassmannElement& operator*=(Complex c);

  friend GrassmannElement operator+(GrassmannElement a, const GrassmannElement& b) {
    return a += b;
  }
  friend GrassmannElement operator-(GrassmannElement a, const GrassmannElement& b) {
    return a -= b;
  }
  friend GrassmannElement operator*(GrassmannElement a, Complex c) { return a *= c; }
  friend GrassmannElement operator*(Complex c, GrassmannElement a) { return a *= c; }
  friend GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b);

 private:
  void canonicalize();

  const GeneratorPool* pool_;
  std::vector<Term> terms_;
};

GrassmannElement multiply(const GrassmannElement& a, const GrassmannElement& b);

struct ParitySplit {
  GrassmannElement even;
  GrassmannElement odd;
};
ParitySplit parity_split(const GrassmannElement& x);

/// Antilinear antiautomorphism: coefficients conjugated, generators mapped
/// to their partners, monomial order reversed.
GrassmannElement involution(const GrassmannElement& x);

GrassmannElement left_derivative(const GrassmannElement& x, GeneratorId g);

/// Iterated Berezin integral. The last generator of `gs` is integrated
/// first, so (a*, a) realizes the measure da* da.
GrassmannElement berezin_integrate(const GrassmannElement& x,
                                   std::span<const GeneratorId> gs);

GrassmannElement grassmann_exp(const GrassmannElement& x);
/// Principal logarithm; requires a nonzero scalar part.
GrassmannElement grassmann_log(const GrassmannElement& x);

/// Simultaneous renaming of generators. Generators absent from the map are
/// kept. The image must not collide with a kept generator in any monomial
/// (such monomials vanish).
GrassmannElement relabel(const GrassmannElement& x,
                         const std::map<GeneratorId, GeneratorId>& mapping);

/// Substitutes g -> -g for every g in `gs`.
GrassmannElement negate_generators(const GrassmannElement& x,
                                   std::span<const GeneratorId> gs);

/// Drops every monomial that contains a generator of `gs` (evaluation at 0).
GrassmannElement evaluate_at_zero(const GrassmannElement& x,
                                  std::span<const GeneratorId> gs);

/// Sign that brings the ordered product of `ordered` into canonical order,
/// or 0 if a generator repeats.
int canonical_sign(std::span<const GeneratorId> ordered);

/// Largest coefficient-wise difference.
double max_abs_diff(const GrassmannElement& a, const GrassmannElement& b);
double max_abs_coeff(const GrassmannElement& x);

/// Canonical text: terms by (degree, mask), `coeff*g1^g2`, 12 significant
/// digits, `0` for the zero element.
std::string render(const GrassmannElement& x);
std::string format_complex(Complex c);
/// format_complex, parenthesised when both parts are nonzero.
std::string coefficient_text(Complex c);

}  // namespace superlogic
