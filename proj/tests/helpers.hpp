#pragma once

#include <random>
#include <vector>

#include "casal/polynomial.hpp"

namespace casal::testing {

// Random sparse polynomial: up to `max_terms` terms, exponents < max_exp.
template <class F>
Polynomial<F> random_poly(const F& field, const std::shared_ptr<const Ring>& ring,
                          std::mt19937& rng, int max_terms = 6, Exponent max_exp = 3,
                          long long coeff_range = 9) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<long long> coeff(-coeff_range, coeff_range);
    std::uniform_int_distribution<Exponent> expo(0, max_exp);
    std::vector<typename Polynomial<F>::Term> terms;
    int t = nterms(rng);
    for (int u = 0; u < t; ++u) {
        Exponents e(ring->arity());
        for (std::size_t v = 0; v < ring->arity(); ++v) e[v] = expo(rng);
        terms.push_back({std::move(e), field.from_int(coeff(rng))});
    }
    return Polynomial<F>::from_terms(field, ring, std::move(terms));
}

inline Exponents random_exps(std::size_t arity, std::mt19937& rng, Exponent max_exp = 5) {
    std::uniform_int_distribution<Exponent> expo(0, max_exp);
    Exponents e(arity);
    for (std::size_t v = 0; v < arity; ++v) e[v] = expo(rng);
    return e;
}

// Canonical-form invariants: no zero coefficients, no duplicates, strictly
// descending storage order.
template <class F>
bool is_canonical(const Polynomial<F>& f) {
    const auto& terms = f.terms();
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (f.field().is_zero(terms[i].coeff)) return false;
        if (i + 1 < terms.size() &&
            storage_compare(terms[i].exps, terms[i + 1].exps) != std::strong_ordering::greater)
            return false;
    }
    return true;
}

} // namespace casal::testing
