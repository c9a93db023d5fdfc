#pragma once

#include <random>

#include "superlogic/fock.hpp"
#include "superlogic/grassmann.hpp"

namespace superlogic::testing {

inline Complex random_complex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), u(rng)};
}

/// Random element over the given generators with `n_terms` monomials.
inline GrassmannElement random_element(const GeneratorPool& pool, std::span<const GeneratorId> gens,
                                       int n_terms, std::mt19937_64& rng, bool nilpotent = false) {
  std::vector<Term> terms;
  std::uniform_int_distribution<int> coin(0, 1);
  for (int t = 0; t < n_terms; ++t) {
    Mask m = 0;
    for (auto g : gens)
      if (coin(rng)) m |= bit(g);
    if (nilpotent && m == 0) continue;
    terms.push_back(Term{m, random_complex(rng)});
  }
  return GrassmannElement::from_terms(pool, std::move(terms));
}

inline FockOperator random_operator(int n_out, int n_in, std::mt19937_64& rng) {
  FockOperator a = FockOperator::zero(n_out, n_in);
  for (Eigen::Index r = 0; r < a.entries.rows(); ++r)
    for (Eigen::Index c = 0; c < a.entries.cols(); ++c) a.entries(r, c) = random_complex(rng);
  return a;
}

inline FockVector random_state(int n, std::mt19937_64& rng) {
  FockVector v = FockVector::zero(n);
  for (Eigen::Index i = 0; i < v.amplitudes.size(); ++i) v.amplitudes(i) = random_complex(rng);
  return v;
}

}  // namespace superlogic::testing
