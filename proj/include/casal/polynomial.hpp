#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "casal/field.hpp"
#include "casal/monomial.hpp"

namespace casal {

// Variable names of the ambient polynomial ring.
struct Ring {
    std::vector<std::string> vars;

    std::size_t arity() const { return vars.size(); }
    bool operator==(const Ring&) const = default;

    // x1..xn
    static Ring roots(std::size_t n) {
        Ring r;
        for (std::size_t i = 1; i <= n; ++i) r.vars.push_back("x" + std::to_string(i));
        return r;
    }
    // x1..xn plus the auxiliary indeterminate, printed "x"
    static Ring roots_with_aux(std::size_t n) {
        Ring r = roots(n);
        r.vars.push_back("x");
        return r;
    }
};

// Sparse multivariate polynomial over field F. Terms are kept in canonical
// form: no zero coefficients, no duplicate exponent vectors, sorted strictly
// descending under grlex with identity priority.
template <class F>
class Polynomial {
public:
    using Elem = typename F::Elem;
    struct Term {
        Exponents exps;
        Elem coeff;
    };

    Polynomial(F field, std::shared_ptr<const Ring> ring)
        : field_(std::move(field)), ring_(std::move(ring)) {}

    static Polynomial zero(const F& field, std::shared_ptr<const Ring> ring) {
        return Polynomial(field, std::move(ring));
    }
    static Polynomial constant(const F& field, std::shared_ptr<const Ring> ring, Elem c) {
        Polynomial p(field, std::move(ring));
        if (!field.is_zero(c)) p.terms_.push_back({Exponents(p.ring().arity()), std::move(c)});
        return p;
    }
    static Polynomial monomial(const F& field, std::shared_ptr<const Ring> ring, Exponents e,
                               Elem c) {
        Polynomial p(field, std::move(ring));
        if (e.arity() != p.ring().arity()) throw std::invalid_argument("monomial arity mismatch");
        if (!field.is_zero(c)) p.terms_.push_back({std::move(e), std::move(c)});
        return p;
    }
    static Polynomial variable(const F& field, std::shared_ptr<const Ring> ring, std::size_t var) {
        auto arity = ring->arity();
        return monomial(field, std::move(ring), Exponents::unit(arity, var), field.one());
    }
    // From arbitrary (possibly unsorted, duplicated) terms.
    static Polynomial from_terms(const F& field, std::shared_ptr<const Ring> ring,
                                 std::vector<Term> terms) {
        Polynomial p(field, std::move(ring));
        for (auto& t : terms) {
            if (t.exps.arity() != p.ring().arity())
                throw std::invalid_argument("term arity mismatch");
        }
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
            return storage_compare(a.exps, b.exps) == std::strong_ordering::greater;
        });
        for (auto& t : terms) {
            if (!p.terms_.empty() && p.terms_.back().exps == t.exps)
                p.terms_.back().coeff = field.add(p.terms_.back().coeff, t.coeff);
            else
                p.terms_.push_back(std::move(t));
        }
        std::erase_if(p.terms_, [&](const Term& t) { return field.is_zero(t.coeff); });
        return p;
    }

    const F& field() const { return field_; }
    const Ring& ring() const { return *ring_; }
    const std::shared_ptr<const Ring>& ring_ptr() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    bool same_ring(const Polynomial& o) const {
        return field_ == o.field_ && (ring_ == o.ring_ || *ring_ == *o.ring_);
    }

    std::uint64_t total_degree() const { // of the zero polynomial: 0 by convention
        std::uint64_t d = 0;
        for (const auto& t : terms_) d = std::max(d, t.exps.total_degree());
        return d;
    }

    Exponent degree_in(std::size_t var) const {
        Exponent d = 0;
        for (const auto& t : terms_) d = std::max(d, t.exps[var]);
        return d;
    }

    bool is_homogeneous() const {
        for (const auto& t : terms_)
            if (t.exps.total_degree() != terms_.front().exps.total_degree()) return false;
        return true;
    }

    Elem coefficient_of(const Exponents& e) const {
        for (const auto& t : terms_)
            if (t.exps == e) return t.coeff;
        return field_.zero();
    }

    Polynomial operator-() const {
        Polynomial r(*this);
        for (auto& t : r.terms_) t.coeff = field_.neg(t.coeff);
        return r;
    }

    Polynomial operator+(const Polynomial& o) const {
        check_ring(o);
        Polynomial r(field_, ring_);
        r.terms_.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() && j < o.terms_.size()) {
            auto cmp = storage_compare(terms_[i].exps, o.terms_[j].exps);
            if (cmp == std::strong_ordering::greater) {
                r.terms_.push_back(terms_[i++]);
            } else if (cmp == std::strong_ordering::less) {
                r.terms_.push_back(o.terms_[j++]);
            } else {
                Elem c = field_.add(terms_[i].coeff, o.terms_[j].coeff);
                if (!field_.is_zero(c)) r.terms_.push_back({terms_[i].exps, std::move(c)});
                ++i, ++j;
            }
        }
        for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
        for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
        return r;
    }

    Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

    Polynomial operator*(const Polynomial& o) const {
        check_ring(o);
        std::vector<Term> acc;
        acc.reserve(terms_.size() * o.terms_.size());
        for (const auto& a : terms_)
            for (const auto& b : o.terms_)
                acc.push_back({a.exps + b.exps, field_.mul(a.coeff, b.coeff)});
        return from_terms(field_, ring_, std::move(acc));
    }

    Polynomial scaled(const Elem& c) const {
        Polynomial r(field_, ring_);
        if (field_.is_zero(c)) return r;
        r.terms_ = terms_;
        for (auto& t : r.terms_) t.coeff = field_.mul(t.coeff, c);
        return r;
    }

    // this - c * x^e * g, the division workhorse
    Polynomial submul(const Elem& c, const Exponents& e, const Polynomial& g) const {
        Polynomial shifted(field_, ring_);
        shifted.terms_.reserve(g.terms_.size());
        for (const auto& t : g.terms_)
            shifted.terms_.push_back({t.exps + e, field_.neg(field_.mul(c, t.coeff))});
        return *this + shifted;
    }

    Polynomial pow(std::uint64_t k) const {
        Polynomial r = constant(field_, ring_, field_.one());
        Polynomial base = *this;
        while (k) {
            if (k & 1) r = r * base;
            if (k >>= 1) base = base * base;
        }
        return r;
    }

    bool operator==(const Polynomial& o) const {
        if (!same_ring(o) || terms_.size() != o.terms_.size()) return false;
        for (std::size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].exps != o.terms_[i].exps ||
                !field_.eq(terms_[i].coeff, o.terms_[i].coeff))
                return false;
        return true;
    }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Elem evaluate(const std::vector<Elem>& point) const {
        if (point.size() != ring().arity())
            throw std::invalid_argument("evaluation point arity mismatch");
        Elem acc = field_.zero();
        for (const auto& t : terms_) {
            Elem m = t.coeff;
            for (std::size_t i = 0; i < point.size(); ++i)
                for (Exponent k = 0; k < t.exps[i]; ++k) m = field_.mul(m, point[i]);
            acc = field_.add(acc, m);
        }
        return acc;
    }

    // Replace variable `var` by polynomial g (same ring).
    Polynomial substitute(std::size_t var, const Polynomial& g) const {
        check_ring(g);
        Polynomial r(field_, ring_);
        std::vector<Polynomial> powers{constant(field_, ring_, field_.one())};
        for (const auto& t : terms_) {
            Exponent k = t.exps[var];
            while (powers.size() <= k) powers.push_back(powers.back() * g);
            Exponents rest = t.exps;
            rest[var] = 0;
            r = r + monomial(field_, ring_, rest, t.coeff) * powers[k];
        }
        return r;
    }

    // Formal partial derivative.
    Polynomial derivative(std::size_t var) const {
        Polynomial r(field_, ring_);
        for (const auto& t : terms_) {
            if (t.exps[var] == 0) continue;
            Exponents e = t.exps;
            Elem c = field_.mul(t.coeff, field_.from_int(static_cast<long long>(e[var])));
            e[var] -= 1;
            if (!field_.is_zero(c)) r.terms_.push_back({std::move(e), std::move(c)});
        }
        // derivative preserves the descending storage sort only up to
        // dropped terms; re-canonicalize
        return from_terms(field_, ring_, std::move(r.terms_));
    }

    // Relabel variables: new_exps[perm[i]] = exps[i].
    Polynomial permuted_variables(const std::vector<std::size_t>& perm) const {
        if (perm.size() != ring().arity()) throw std::invalid_argument("permutation arity mismatch");
        std::vector<Term> acc;
        acc.reserve(terms_.size());
        for (const auto& t : terms_) {
            Exponents e(ring().arity());
            for (std::size_t i = 0; i < perm.size(); ++i) e[perm[i]] = t.exps[i];
            acc.push_back({std::move(e), t.coeff});
        }
        return from_terms(field_, ring_, std::move(acc));
    }

    struct LeadingData {
        Exponents multidegree;
        Elem lc;
        Polynomial lm;
        Polynomial lt;
    };

    const Term& leading_term(const MonomialOrder& ord) const {
        if (terms_.empty()) throw std::domain_error("leading data of the zero polynomial");
        if (ord.arity() != ring().arity())
            throw std::invalid_argument("order arity mismatch");
        const Term* best = &terms_.front();
        for (const auto& t : terms_)
            if (compare_monomials(t.exps, best->exps, ord) == std::strong_ordering::greater)
                best = &t;
        return *best;
    }

    LeadingData leading_data(const MonomialOrder& ord) const {
        const Term& t = leading_term(ord);
        return {t.exps, t.coeff, monomial(field_, ring_, t.exps, field_.one()),
                monomial(field_, ring_, t.exps, t.coeff)};
    }

    Polynomial monic(const MonomialOrder& ord) const {
        if (is_zero()) return *this;
        return scaled(field_.inv(leading_term(ord).coeff));
    }

    std::string monomial_text(const Exponents& e) const {
        std::string s;
        for (std::size_t i = 0; i < e.arity(); ++i) {
            if (e[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += ring().vars[i];
            if (e[i] > 1) s += "^" + std::to_string(e[i]);
        }
        return s;
    }

    // Canonical text: descending grlex terms, " + " / " - " separators,
    // unit coefficients and zero exponents elided.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            Elem c = terms_[i].coeff;
            bool negative = field_.is_negative(c);
            if (negative) c = field_.abs_value(c);
            if (i == 0) {
                if (negative) out += "-";
            } else {
                out += negative ? " - " : " + ";
            }
            std::string mono = monomial_text(terms_[i].exps);
            if (mono.empty())
                out += field_.to_string(c);
            else if (field_.is_one(c))
                out += mono;
            else
                out += field_.to_string(c) + "*" + mono;
        }
        return out;
    }

private:
    void check_ring(const Polynomial& o) const {
        if (!same_ring(o)) throw std::invalid_argument("ring mismatch");
    }

    F field_;
    std::shared_ptr<const Ring> ring_;
    std::vector<Term> terms_;
};

using QPoly = Polynomial<RationalField>;
using FpPoly = Polynomial<PrimeField>;

// Reduce a rational polynomial mod p termwise. Throws BadPrime when a
// denominator vanishes mod p.
inline FpPoly reduce_poly_mod_p(const QPoly& f, const PrimeField& gf) {
    std::vector<FpPoly::Term> terms;
    terms.reserve(f.terms().size());
    for (const auto& t : f.terms()) terms.push_back({t.exps, reduce_mod_p(t.coeff, gf)});
    return FpPoly::from_terms(gf, f.ring_ptr(), std::move(terms));
}

} // namespace casal
