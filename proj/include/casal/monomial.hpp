#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace casal {

using Exponent = std::uint32_t;

// Exponent vector of fixed arity. Additions are overflow-checked.
class Exponents {
public:
    explicit Exponents(std::size_t arity) : e_(arity, 0) {}
    Exponents(std::initializer_list<Exponent> init) : e_(init) {}

    static Exponents unit(std::size_t arity, std::size_t var, Exponent k = 1) {
        Exponents m(arity);
        m.e_.at(var) = k;
        return m;
    }

    std::size_t arity() const { return e_.size(); }
    Exponent operator[](std::size_t i) const { return e_[i]; }
    Exponent& operator[](std::size_t i) { return e_[i]; }

    std::uint64_t total_degree() const {
        return std::accumulate(e_.begin(), e_.end(), std::uint64_t(0));
    }

    bool is_constant() const {
        return std::all_of(e_.begin(), e_.end(), [](Exponent x) { return x == 0; });
    }

    Exponents operator+(const Exponents& o) const {
        check_arity(o);
        Exponents r(*this);
        for (std::size_t i = 0; i < e_.size(); ++i) {
            std::uint64_t s = std::uint64_t(r.e_[i]) + o.e_[i];
            if (s > max_exponent)
                throw std::overflow_error("exponent overflow at variable " + std::to_string(i + 1));
            r.e_[i] = static_cast<Exponent>(s);
        }
        return r;
    }

    // this | m
    bool divides(const Exponents& m) const {
        check_arity(m);
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > m.e_[i]) return false;
        return true;
    }

    // m / this, requires divisibility
    Exponents quotient_of(const Exponents& m) const {
        check_arity(m);
        Exponents r(arity());
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (e_[i] > m.e_[i]) throw std::domain_error("monomial quotient not integral");
            r.e_[i] = m.e_[i] - e_[i];
        }
        return r;
    }

    static Exponents lcm(const Exponents& a, const Exponents& b) {
        a.check_arity(b);
        Exponents r(a.arity());
        for (std::size_t i = 0; i < a.arity(); ++i) r.e_[i] = std::max(a.e_[i], b.e_[i]);
        return r;
    }

    bool operator==(const Exponents&) const = default;

    static constexpr std::uint64_t max_exponent = (std::uint64_t(1) << 30);

private:
    void check_arity(const Exponents& o) const {
        if (e_.size() != o.e_.size()) throw std::invalid_argument("exponent arity mismatch");
    }

    std::vector<Exponent> e_;
};

enum class OrderKind { lex, grlex };

// A monomial order: lex or grlex, on variables permuted by `priority`
// (priority[0] is the highest variable, entries are 0-based variable indices).
struct MonomialOrder {
    OrderKind kind = OrderKind::grlex;
    std::vector<std::size_t> priority;

    static MonomialOrder lex(std::size_t arity) { return {OrderKind::lex, identity(arity)}; }
    static MonomialOrder grlex(std::size_t arity) { return {OrderKind::grlex, identity(arity)}; }
    static MonomialOrder lex_with_priority(std::vector<std::size_t> prio) {
        MonomialOrder ord{OrderKind::lex, std::move(prio)};
        ord.validate();
        return ord;
    }

    std::size_t arity() const { return priority.size(); }

    void validate() const {
        std::vector<bool> seen(priority.size(), false);
        for (std::size_t v : priority) {
            if (v >= priority.size() || seen[v])
                throw std::invalid_argument("order priority is not a permutation");
            seen[v] = true;
        }
    }

    static std::vector<std::size_t> identity(std::size_t n) {
        std::vector<std::size_t> id(n);
        std::iota(id.begin(), id.end(), std::size_t(0));
        return id;
    }

    bool operator==(const MonomialOrder&) const = default;
};

inline std::strong_ordering compare_monomials(const Exponents& a, const Exponents& b,
                                              const MonomialOrder& ord) {
    if (a.arity() != b.arity() || a.arity() != ord.arity())
        throw std::invalid_argument("arity mismatch in monomial comparison");
    if (ord.kind == OrderKind::grlex) {
        auto da = a.total_degree(), db = b.total_degree();
        if (da != db) return da <=> db;
    }
    for (std::size_t v : ord.priority) {
        if (a[v] != b[v]) return a[v] <=> b[v];
    }
    return std::strong_ordering::equal;
}

// Canonical storage comparison: grlex with identity priority.
inline std::strong_ordering storage_compare(const Exponents& a, const Exponents& b) {
    auto da = a.total_degree(), db = b.total_degree();
    if (da != db) return da <=> db;
    for (std::size_t i = 0; i < a.arity(); ++i)
        if (a[i] != b[i]) return a[i] <=> b[i];
    return std::strong_ordering::equal;
}

} // namespace casal
