#pragma once

// Seeded random inputs for property suites: units, series, integral
// polynomials. Deterministic for a given std::mt19937_64 state.

#include <random>
#include <vector>

#include "maxmodel/series.hpp"

namespace maxmodel {

using Rng = std::mt19937_64;

inline FieldElement random_element(const FieldSpec& f, Rng& rng, bool nonzero = false) {
    std::uniform_int_distribution<std::uint32_t> d(nonzero ? 1 : 0, static_cast<std::uint32_t>(f.q() - 1));
    return FieldElement{d(rng)};
}

/// Exact Laurent polynomial with exponents in [lo, hi].
inline LaurentSeries random_polynomial(const FieldPtr& f, Rng& rng, int lo, int hi) {
    std::vector<LaurentSeries::Term> terms;
    for (int k = lo; k <= hi; ++k) terms.push_back({k, random_element(*f, rng)});
    return LaurentSeries::from_terms(f, std::move(terms));
}

/// Exact unit of R: nonzero constant plus random terms up to t^hi.
inline LaurentSeries random_unit(const FieldPtr& f, Rng& rng, int hi = 6) {
    LaurentSeries u = random_polynomial(f, rng, 1, hi);
    return u + LaurentSeries::constant(f, random_element(*f, rng, true));
}

inline int random_int(Rng& rng, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(rng);
}

}  // namespace maxmodel
