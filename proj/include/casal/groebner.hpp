#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "casal/errors.hpp"
#include "casal/polynomial.hpp"

namespace casal {

enum class BasisStatus { raw, groebner, reduced };

template <class F>
struct GroebnerBasis {
    std::vector<Polynomial<F>> generators; // monic, ascending by LM under `order`
    MonomialOrder order;
    BasisStatus status = BasisStatus::raw;
};

struct BuchbergerOptions {
    std::uint64_t pair_budget = 1'000'000;
    std::uint64_t degree_budget = 10'000; // max total degree of any basis element
    // When set, intermediate results are rewritten modulo the field
    // equations x_i^p - x_i (which must be among the input generators).
    std::optional<std::uint64_t> field_relations_prime;
};

namespace detail {

// Working view of a polynomial as a map sorted descending under the active
// order; cheap leading-term access during long division chains.
template <class F>
struct OrderedView {
    using Elem = typename F::Elem;
    struct Cmp {
        const MonomialOrder* ord;
        bool operator()(const Exponents& a, const Exponents& b) const {
            return compare_monomials(a, b, *ord) == std::strong_ordering::greater;
        }
    };
    std::map<Exponents, Elem, Cmp> terms;

    OrderedView(const Polynomial<F>& f, const MonomialOrder& ord) : terms(Cmp{&ord}) {
        for (const auto& t : f.terms()) terms.emplace(t.exps, t.coeff);
    }

    void submul(const F& field, const Elem& c, const Exponents& shift, const Polynomial<F>& g) {
        for (const auto& t : g.terms()) {
            Exponents e = t.exps + shift;
            Elem delta = field.mul(c, t.coeff);
            auto it = terms.find(e);
            if (it == terms.end()) {
                Elem v = field.neg(delta);
                if (!field.is_zero(v)) terms.emplace(std::move(e), std::move(v));
            } else {
                it->second = field.sub(it->second, delta);
                if (field.is_zero(it->second)) terms.erase(it);
            }
        }
    }

    Polynomial<F> to_polynomial(const F& field, std::shared_ptr<const Ring> ring) const {
        std::vector<typename Polynomial<F>::Term> out;
        out.reserve(terms.size());
        for (const auto& [e, c] : terms) out.push_back({e, c});
        return Polynomial<F>::from_terms(field, std::move(ring), std::move(out));
    }
};

} // namespace detail

template <class F>
struct DivisionResult {
    std::vector<Polynomial<F>> quotients; // one per divisor
    Polynomial<F> remainder;
};

// Multivariate division: g = sum quotients[i]*divisors[i] + remainder, no
// monomial of the remainder divisible by any divisor's leading monomial.
// Ties go to the first divisor in list order.
template <class F>
DivisionResult<F> divide(const Polynomial<F>& g, const std::vector<Polynomial<F>>& divisors,
                         const MonomialOrder& ord) {
    const F& field = g.field();
    DivisionResult<F> res{{}, Polynomial<F>::zero(field, g.ring_ptr())};
    std::vector<detail::OrderedView<F>> quot;
    std::vector<Exponents> lms;
    std::vector<typename F::Elem> lcs;
    for (const auto& d : divisors) {
        if (!d.same_ring(g)) throw std::invalid_argument("ring mismatch in division");
        if (d.is_zero()) throw std::invalid_argument("zero divisor in division");
        const auto& lt = d.leading_term(ord);
        lms.push_back(lt.exps);
        lcs.push_back(lt.coeff);
        quot.emplace_back(Polynomial<F>::zero(field, g.ring_ptr()), ord);
    }
    detail::OrderedView<F> work(g, ord);
    detail::OrderedView<F> rem(res.remainder, ord);
    while (!work.terms.empty()) {
        auto lead = work.terms.begin();
        bool reduced = false;
        for (std::size_t i = 0; i < divisors.size(); ++i) {
            if (!lms[i].divides(lead->first)) continue;
            Exponents shift = lms[i].quotient_of(lead->first);
            typename F::Elem c = field.div(lead->second, lcs[i]);
            auto it = quot[i].terms.find(shift);
            if (it == quot[i].terms.end())
                quot[i].terms.emplace(shift, c);
            else
                it->second = field.add(it->second, c); // never hit: shift strictly decreases
            work.submul(field, c, shift, divisors[i]);
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.terms.emplace(lead->first, lead->second);
            work.terms.erase(lead);
        }
    }
    for (auto& q : quot) res.quotients.push_back(q.to_polynomial(field, g.ring_ptr()));
    res.remainder = rem.to_polynomial(field, g.ring_ptr());
    return res;
}

// Remainder only; same reduction strategy as divide().
template <class F>
Polynomial<F> normal_form(const Polynomial<F>& g, const std::vector<Polynomial<F>>& divisors,
                          const MonomialOrder& ord) {
    const F& field = g.field();
    std::vector<Exponents> lms;
    std::vector<typename F::Elem> lcs;
    for (const auto& d : divisors) {
        if (d.is_zero()) throw std::invalid_argument("zero divisor in normal form");
        const auto& lt = d.leading_term(ord);
        lms.push_back(lt.exps);
        lcs.push_back(lt.coeff);
    }
    detail::OrderedView<F> work(g, ord);
    detail::OrderedView<F> rem(Polynomial<F>::zero(field, g.ring_ptr()), ord);
    while (!work.terms.empty()) {
        auto lead = work.terms.begin();
        bool reduced = false;
        for (std::size_t i = 0; i < divisors.size(); ++i) {
            if (!lms[i].divides(lead->first)) continue;
            work.submul(field, field.div(lead->second, lcs[i]), lms[i].quotient_of(lead->first),
                        divisors[i]);
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.terms.emplace(lead->first, lead->second);
            work.terms.erase(lead);
        }
    }
    return rem.to_polynomial(field, g.ring_ptr());
}

template <class F>
Polynomial<F> s_polynomial(const Polynomial<F>& f, const Polynomial<F>& g,
                           const MonomialOrder& ord) {
    if (f.is_zero() || g.is_zero()) throw std::invalid_argument("s-polynomial of zero");
    const F& field = f.field();
    const auto& ltf = f.leading_term(ord);
    const auto& ltg = g.leading_term(ord);
    Exponents lcm = Exponents::lcm(ltf.exps, ltg.exps);
    Polynomial<F> left = Polynomial<F>::monomial(field, f.ring_ptr(), ltf.exps.quotient_of(lcm),
                                                 field.inv(ltf.coeff)) *
                         f;
    Polynomial<F> right = Polynomial<F>::monomial(field, f.ring_ptr(), ltg.exps.quotient_of(lcm),
                                                  field.inv(ltg.coeff)) *
                          g;
    return left - right;
}

// Rewrite exponents >= p via x^p -> x; the normal form modulo the field
// equations x_i^p - x_i over F_p.
inline FpPoly field_normal_form(const FpPoly& f, std::uint64_t p) {
    if (f.field().p != p) throw std::invalid_argument("field_normal_form modulus mismatch");
    std::vector<FpPoly::Term> acc;
    acc.reserve(f.terms().size());
    for (const auto& t : f.terms()) {
        Exponents e = t.exps;
        for (std::size_t i = 0; i < e.arity(); ++i)
            if (e[i] >= p) e[i] = static_cast<Exponent>((e[i] - 1) % (p - 1) + 1);
        acc.push_back({std::move(e), t.coeff});
    }
    return FpPoly::from_terms(f.field(), f.ring_ptr(), std::move(acc));
}

namespace detail {

template <class F>
Polynomial<F> post_reduce(const Polynomial<F>& r, const std::vector<Polynomial<F>>& basis,
                          const MonomialOrder& ord, const BuchbergerOptions& opts) {
    Polynomial<F> cur = r;
    if constexpr (std::is_same_v<F, PrimeField>) {
        if (opts.field_relations_prime) {
            // Rewriting by x^p -> x is a reduction path through the field
            // equations, which are among the generators; iterate to a
            // fixpoint with ordinary reduction.
            std::uint64_t p = *opts.field_relations_prime;
            for (int round = 0;; ++round) {
                if (round > 1000)
                    throw BudgetExhausted("field-equation rewriting did not stabilize");
                Polynomial<F> rewritten = field_normal_form(cur, p);
                if (rewritten == cur) break;
                cur = normal_form(rewritten, basis, ord);
            }
        }
    }
    return cur;
}

} // namespace detail

template <class F>
GroebnerBasis<F> buchberger(const std::vector<Polynomial<F>>& generators, const MonomialOrder& ord,
                            const BuchbergerOptions& opts = {}) {
    std::vector<Polynomial<F>> basis;
    for (const auto& g : generators) {
        if (g.ring().arity() != ord.arity())
            throw std::invalid_argument("order arity does not match ring");
        if (!g.is_zero()) basis.push_back(g.monic(ord));
    }
    if (basis.empty()) throw std::invalid_argument("no nonzero generators");

    std::vector<Exponents> lms;
    for (const auto& g : basis) lms.push_back(g.leading_term(ord).exps);

    auto pair_key = [](std::size_t i, std::size_t j) { return std::pair{std::min(i, j), std::max(i, j)}; };
    std::set<std::pair<std::size_t, std::size_t>> pending;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) pending.insert({i, j});

    std::uint64_t pairs_seen = 0;
    while (!pending.empty()) {
        // normal strategy: minimal lcm total degree, then lcm under the
        // order, then indices
        auto chosen = pending.begin();
        Exponents best_lcm = Exponents::lcm(lms[chosen->first], lms[chosen->second]);
        for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
            Exponents l = Exponents::lcm(lms[it->first], lms[it->second]);
            auto dl = l.total_degree(), db = best_lcm.total_degree();
            if (dl < db || (dl == db && compare_monomials(l, best_lcm, ord) ==
                                            std::strong_ordering::less)) {
                chosen = it;
                best_lcm = l;
            }
        }
        auto [i, j] = *chosen;
        pending.erase(chosen);
        if (++pairs_seen > opts.pair_budget)
            throw BudgetExhausted("pair budget " + std::to_string(opts.pair_budget) +
                                  " exhausted in Buchberger");

        // coprime leading monomials
        if (best_lcm == lms[i] + lms[j]) continue;
        // chain criterion
        bool skip = false;
        for (std::size_t k = 0; k < basis.size() && !skip; ++k) {
            if (k == i || k == j) continue;
            if (lms[k].divides(best_lcm) && !pending.contains(pair_key(i, k)) &&
                !pending.contains(pair_key(j, k)))
                skip = true;
        }
        if (skip) continue;

        Polynomial<F> r = normal_form(s_polynomial(basis[i], basis[j], ord), basis, ord);
        r = detail::post_reduce(r, basis, ord, opts);
        if (r.is_zero()) continue;
        if (r.total_degree() > opts.degree_budget)
            throw BudgetExhausted("degree budget " + std::to_string(opts.degree_budget) +
                                  " exhausted in Buchberger");
        r = r.monic(ord);
        std::size_t t = basis.size();
        basis.push_back(r);
        lms.push_back(r.leading_term(ord).exps);
        for (std::size_t k = 0; k < t; ++k) pending.insert({k, t});
    }
    return {std::move(basis), ord, BasisStatus::groebner};
}

// Minimal, monic, mutually tail-reduced basis, sorted ascending by LM.
// Unique for a given (ideal, order).
template <class F>
GroebnerBasis<F> reduce_basis(const GroebnerBasis<F>& gb) {
    if (gb.status == BasisStatus::raw)
        throw std::invalid_argument("reduce_basis requires a Groebner basis");
    const MonomialOrder& ord = gb.order;
    std::vector<Polynomial<F>> gens;
    for (const auto& g : gb.generators)
        if (!g.is_zero()) gens.push_back(g.monic(ord));

    // minimize: drop generators whose LM is divisible by another's LM
    std::vector<Polynomial<F>> minimal;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        Exponents lmi = gens[i].leading_term(ord).exps;
        bool redundant = false;
        for (std::size_t j = 0; j < gens.size() && !redundant; ++j) {
            if (i == j) continue;
            Exponents lmj = gens[j].leading_term(ord).exps;
            if (lmj == lmi ? j < i : lmj.divides(lmi)) redundant = true;
        }
        if (!redundant) minimal.push_back(gens[i]);
    }

    // tail-reduce each against the others
    std::vector<Polynomial<F>> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial<F>> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        reduced.push_back(others.empty() ? minimal[i] : normal_form(minimal[i], others, ord));
    }

    std::sort(reduced.begin(), reduced.end(), [&](const Polynomial<F>& a, const Polynomial<F>& b) {
        return compare_monomials(a.leading_term(ord).exps, b.leading_term(ord).exps, ord) ==
               std::strong_ordering::less;
    });
    return {std::move(reduced), ord, BasisStatus::reduced};
}

template <class F>
bool ideal_membership(const Polynomial<F>& f, const GroebnerBasis<F>& gb) {
    if (gb.status == BasisStatus::raw)
        throw std::invalid_argument("ideal_membership requires a Groebner basis");
    if (f.is_zero()) return true;
    return normal_form(f, gb.generators, gb.order).is_zero();
}

// Monomial ideal given by its minimal generators.
struct MonomialIdeal {
    std::vector<Exponents> generators; // pairwise indivisible

    static MonomialIdeal from_monomials(std::vector<Exponents> monos) {
        MonomialIdeal ideal;
        for (std::size_t i = 0; i < monos.size(); ++i) {
            bool redundant = false;
            for (std::size_t j = 0; j < monos.size() && !redundant; ++j) {
                if (i == j) continue;
                if (monos[j] == monos[i] ? j < i : monos[j].divides(monos[i])) redundant = true;
            }
            if (!redundant) ideal.generators.push_back(monos[i]);
        }
        std::sort(ideal.generators.begin(), ideal.generators.end(),
                  [](const Exponents& a, const Exponents& b) {
                      return storage_compare(a, b) == std::strong_ordering::less;
                  });
        return ideal;
    }

    bool contains(const Exponents& m) const {
        for (const auto& g : generators)
            if (g.divides(m)) return true;
        return false;
    }

    // Minimal e with x_var^e in the ideal, if any: the exponent of a
    // pure-power generator in that variable.
    std::optional<Exponent> pure_power(std::size_t var) const {
        std::optional<Exponent> best;
        for (const auto& g : generators) {
            bool pure = true;
            for (std::size_t i = 0; i < g.arity() && pure; ++i)
                if (i != var && g[i] != 0) pure = false;
            if (pure && (!best || g[var] < *best)) best = g[var];
        }
        return best;
    }
};

template <class F>
MonomialIdeal lm_ideal(const GroebnerBasis<F>& gb) {
    if (gb.status == BasisStatus::raw)
        throw std::invalid_argument("lm_ideal requires a Groebner basis");
    std::vector<Exponents> lms;
    for (const auto& g : gb.generators)
        if (!g.is_zero()) lms.push_back(g.leading_term(gb.order).exps);
    return MonomialIdeal::from_monomials(std::move(lms));
}

struct StandardMonomialSet {
    bool finite = false;
    std::uint64_t count = 0;                  // valid when finite
    std::vector<Exponents> monomials;         // filled when enumeration requested and within cap
    bool enumeration_truncated = false;       // count exceeded the cap
    std::map<std::size_t, Exponent> pure_powers; // var -> minimal pure-power exponent in LM ideal
};

inline StandardMonomialSet standard_monomials_of(const MonomialIdeal& lm, std::size_t arity,
                                                 bool enumerate, std::uint64_t enum_cap = 1'000'000) {
    StandardMonomialSet sm;
    for (std::size_t v = 0; v < arity; ++v)
        if (auto m = lm.pure_power(v)) sm.pure_powers[v] = *m;
    sm.finite = sm.pure_powers.size() == arity;
    if (!sm.finite) return sm;

    // every standard monomial lies in the box below the pure powers
    std::uint64_t box = 1;
    for (auto& [v, m] : sm.pure_powers) {
        box *= std::max<std::uint64_t>(m, 1);
        if (box > 200'000'000)
            throw BudgetExhausted("standard-monomial staircase too large to walk");
    }
    Exponents cur(arity);
    bool want_list = enumerate;
    for (;;) {
        if (!lm.contains(cur)) {
            ++sm.count;
            if (want_list) {
                if (sm.count > enum_cap) {
                    sm.monomials.clear();
                    sm.enumeration_truncated = true;
                    want_list = false;
                } else {
                    sm.monomials.push_back(cur);
                }
            }
        }
        // advance odometer over the box
        std::size_t v = 0;
        for (; v < arity; ++v) {
            Exponent bound = sm.pure_powers.at(v);
            if (bound > 0 && cur[v] + 1 < bound) {
                ++cur[v];
                break;
            }
            cur[v] = 0;
        }
        if (v == arity) break;
    }
    std::sort(sm.monomials.begin(), sm.monomials.end(), [](const Exponents& a, const Exponents& b) {
        return storage_compare(a, b) == std::strong_ordering::less;
    });
    return sm;
}

template <class F>
StandardMonomialSet standard_monomials(const GroebnerBasis<F>& gb, bool enumerate,
                                       std::uint64_t enum_cap = 1'000'000) {
    return standard_monomials_of(lm_ideal(gb), gb.order.arity(), enumerate, enum_cap);
}

// Deterministic text export: a header line, then one polynomial per line.
template <class F>
std::string to_text(const GroebnerBasis<F>& gb) {
    std::string out = "order=";
    out += gb.order.kind == OrderKind::lex ? "lex" : "grlex";
    out += " priority=";
    for (std::size_t i = 0; i < gb.order.priority.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(gb.order.priority[i] + 1);
    }
    out += "\n";
    for (const auto& g : gb.generators) out += g.to_string() + "\n";
    return out;
}

} // namespace casal
