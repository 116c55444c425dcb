#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "casal/errors.hpp"
#include "casal/groebner.hpp"
#include "casal/polynomial.hpp"
#include "casal/report.hpp"

namespace casal {

inline std::shared_ptr<const Ring> root_ring(std::uint32_t n) {
    return std::make_shared<const Ring>(Ring::roots(n));
}
inline std::shared_ptr<const Ring> extended_ring(std::uint32_t n) {
    return std::make_shared<const Ring>(Ring::roots_with_aux(n));
}

// f(x) = (x - x_1)...(x - x_n), expanded, in x1..xn plus the auxiliary
// variable (last position).
template <class F>
Polynomial<F> root_polynomial(const F& field, std::uint32_t n) {
    if (n < 1) throw std::invalid_argument("degree n must be >= 1");
    auto ring = extended_ring(n);
    auto x = Polynomial<F>::variable(field, ring, n);
    auto f = Polynomial<F>::constant(field, ring, field.one());
    for (std::uint32_t j = 0; j < n; ++j)
        f = f * (x - Polynomial<F>::variable(field, ring, j));
    return f;
}

// H_i(f)(x_k) = sum over (n-i)-subsets {j_1<...<j_{n-i}} of
// (x_k - x_{j_1})...(x_k - x_{j_{n-i}}); subsets containing k contribute
// zero. Lives in x1..xn.
template <class F>
Polynomial<F> hasse_at_root_subsets(const F& field, std::uint32_t n, std::uint32_t i,
                                    std::uint32_t k) {
    if (i < 1 || i > n - 1) throw std::invalid_argument("hasse index i out of range");
    if (k < 1 || k > n) throw std::invalid_argument("root index k out of range");
    auto ring = root_ring(n);
    auto xk = Polynomial<F>::variable(field, ring, k - 1);
    auto sum = Polynomial<F>::zero(field, ring);
    std::uint32_t size = n - i;
    std::vector<std::uint32_t> subset(size);
    for (std::uint32_t t = 0; t < size; ++t) subset[t] = t; // 0-based roots
    for (;;) {
        if (std::none_of(subset.begin(), subset.end(),
                         [&](std::uint32_t j) { return j == k - 1; })) {
            auto prod = Polynomial<F>::constant(field, ring, field.one());
            for (std::uint32_t j : subset)
                prod = prod * (xk - Polynomial<F>::variable(field, ring, j));
            sum = sum + prod;
        }
        // next combination
        std::int64_t t = size - 1;
        while (t >= 0 && subset[t] == n - size + t) --t;
        if (t < 0) break;
        ++subset[t];
        for (std::size_t u = t + 1; u < size; ++u) subset[u] = subset[u - 1] + 1;
    }
    return sum;
}

// H_i(f)(x) = sum_j C(j, i) a_j x^{j-i} for f = sum a_j x^j; in the
// extended ring, with the root polynomial's coefficients.
template <class F>
Polynomial<F> hasse_via_coefficients(const F& field, std::uint32_t n, std::uint32_t i) {
    if (i < 1 || i > n - 1) throw std::invalid_argument("hasse index i out of range");
    auto f = root_polynomial(field, n);
    auto ring = f.ring_ptr();
    std::size_t aux = n;
    auto out = Polynomial<F>::zero(field, ring);
    for (const auto& t : f.terms()) {
        Exponent j = t.exps[aux];
        if (j < i) continue;
        // C(j, i)
        std::uint64_t binom = 1;
        for (std::uint32_t u = 1; u <= i; ++u) binom = binom * (j - u + 1) / u;
        Exponents e = t.exps;
        e[aux] = j - i;
        out = out + Polynomial<F>::monomial(
                        field, ring, e,
                        field.mul(t.coeff, field.from_int(static_cast<long long>(binom))));
    }
    return out;
}

// Substitute the auxiliary variable by x_k and drop it, landing in x1..xn.
template <class F>
Polynomial<F> at_root(const Polynomial<F>& f, std::uint32_t n, std::uint32_t k) {
    if (f.ring().arity() != n + 1) throw std::invalid_argument("expected the extended ring");
    const F& field = f.field();
    auto ring = root_ring(n);
    std::vector<typename Polynomial<F>::Term> acc;
    for (const auto& t : f.terms()) {
        Exponents e(n);
        for (std::uint32_t v = 0; v < n; ++v) e[v] = t.exps[v];
        e = e + Exponents::unit(n, k - 1, t.exps[n]);
        acc.push_back({std::move(e), t.coeff});
    }
    return Polynomial<F>::from_terms(field, ring, std::move(acc));
}

// Generators of the branch ideal: generator j is H_j(f)(x_{i_j}).
template <class F>
std::vector<Polynomial<F>> branch_ideal(const F& field, const BranchSpec& spec) {
    spec.validate();
    std::vector<Polynomial<F>> gens;
    for (std::uint32_t j = 1; j < spec.n; ++j)
        gens.push_back(hasse_at_root_subsets(field, spec.n, j, spec.indices[j - 1]));
    return gens;
}

// F_i = prod_k f^(i)(x_k), the full Casas-Alvero generators. Degrees grow
// as n(n-i); refuse above the cap.
template <class F>
std::vector<Polynomial<F>> full_ca_generators(const F& field, std::uint32_t n,
                                              std::uint32_t cap = 4) {
    if (n < 2) throw std::invalid_argument("degree n must be >= 2");
    if (n > cap)
        throw std::invalid_argument("full Casas-Alvero generators refused for n > " +
                                    std::to_string(cap));
    std::vector<Polynomial<F>> gens;
    for (std::uint32_t i = 1; i < n; ++i) {
        // f^(i) = i! * H_i(f)
        long long fact = 1;
        for (std::uint32_t u = 2; u <= i; ++u) fact *= u;
        auto ring = root_ring(n);
        auto prod = Polynomial<F>::constant(field, ring, field.one());
        for (std::uint32_t k = 1; k <= n; ++k) {
            auto d = hasse_at_root_subsets(field, n, i, k).scaled(field.from_int(fact));
            prod = prod * d;
        }
        gens.push_back(prod);
    }
    return gens;
}

// The lex order of the branch construction: repeated indices pull in the
// smallest unused root outside the index set; x_n is minimal. Index sets
// other than {1..s} are first relabeled by a root permutation.
inline MonomialOrder branch_order(const BranchSpec& spec) {
    spec.validate();
    std::uint32_t n = spec.n;
    if (n == 1) return MonomialOrder::lex(1);

    // sigma maps distinct index values (ascending) onto 1..s, the rest of
    // {1..n} onto s+1..n
    std::vector<std::uint32_t> distinct;
    for (auto i : spec.indices)
        if (std::find(distinct.begin(), distinct.end(), i) == distinct.end())
            distinct.push_back(i);
    std::sort(distinct.begin(), distinct.end());
    std::uint32_t s = static_cast<std::uint32_t>(distinct.size());
    std::vector<std::uint32_t> sigma(n + 1, 0); // 1-based
    for (std::uint32_t t = 0; t < s; ++t) sigma[distinct[t]] = t + 1;
    std::uint32_t next = s + 1;
    for (std::uint32_t v = 1; v <= n; ++v)
        if (sigma[v] == 0) sigma[v] = next++;
    std::vector<std::uint32_t> sigma_inv(n + 1, 0);
    for (std::uint32_t v = 1; v <= n; ++v) sigma_inv[sigma[v]] = v;

    // construction in normalized coordinates: walk i_{n-1}, i_{n-2}, ...
    std::vector<std::uint32_t> chain; // y_1, y_2, ... (normalized indices)
    std::vector<bool> seen(n + 1, false);
    std::uint32_t reserve_next = s + 1; // min of the shrinking reserve set R
    for (std::uint32_t k = 1; k <= n - 1; ++k) {
        std::uint32_t idx = sigma[spec.indices[n - 1 - k]];
        if (!seen[idx]) {
            seen[idx] = true;
            chain.push_back(idx);
        } else {
            chain.push_back(reserve_next++);
        }
    }

    // priority, highest first: y_1 > y_2 > ... > y_{n-1} > y_n, where the
    // chain covers normalized indices 1..n-1 and y_n is the leftover
    std::vector<std::size_t> priority;
    for (std::uint32_t y : chain) priority.push_back(sigma_inv[y] - 1);
    priority.push_back(sigma_inv[n] - 1);
    return MonomialOrder::lex_with_priority(std::move(priority));
}

// Exhaustive common-zero set over F_p^n.
inline std::vector<std::vector<std::uint64_t>> brute_force_variety(
    const std::vector<FpPoly>& generators, std::uint64_t p,
    std::uint64_t point_budget = 10'000'000) {
    if (generators.empty()) throw std::invalid_argument("no generators");
    std::size_t n = generators.front().ring().arity();
    PrimeField gf = generators.front().field();
    if (gf.p != p) throw std::invalid_argument("oracle modulus mismatch");
    double size = 1;
    for (std::size_t i = 0; i < n; ++i) size *= static_cast<double>(p);
    if (size > static_cast<double>(point_budget))
        throw BudgetExhausted("oracle refuses p^n > " + std::to_string(point_budget));

    std::vector<std::vector<std::uint64_t>> zeros;
    std::vector<std::uint64_t> point(n, 0);
    for (;;) {
        bool all_zero = true;
        for (const auto& g : generators) {
            if (!gf.is_zero(g.evaluate(point))) {
                all_zero = false;
                break;
            }
        }
        if (all_zero) zeros.push_back(point);
        std::size_t v = 0;
        for (; v < n; ++v) {
            if (point[v] + 1 < p) {
                ++point[v];
                break;
            }
            point[v] = 0;
        }
        if (v == n) break;
    }
    return zeros;
}

struct VerifyOptions {
    bool run_oracle = false;
    BuchbergerOptions gb;
    std::uint64_t oracle_budget = 10'000'000;
};

namespace detail {

// The reductions of the branch analysis divide by the structural
// coefficients 1/(n-1) and (n-2)(n^2-2n-1)/(2(n-1)); a prime killing any
// of them cannot run the computation and is classified "bad prime".
inline bool structurally_bad_prime(std::uint32_t n, std::uint64_t p) {
    if (n < 3) return false;
    std::uint64_t product = 2ull * (n - 1) * (n - 2) *
                            (std::uint64_t(n) * n - 2ull * n - 1);
    return product % p == 0;
}

} // namespace detail

// GB of branch ideal + field equations over F_p under the constructed lex
// order; counts standard monomials and classifies the prime.
inline VerificationReport verify_branch(const BranchSpec& spec, std::uint64_t p,
                                        const VerifyOptions& opts = {}) {
    spec.validate();
    auto start = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.branch = spec;
    rep.p = p;
    rep.order = branch_order(spec);
    auto finish = [&](Verdict v) {
        rep.verdict = v;
        rep.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();
        return rep;
    };

    PrimeField gf(p);
    std::uint32_t n = spec.n;
    if (detail::structurally_bad_prime(n, p)) {
        rep.detail = "structural coefficient vanishes mod " + std::to_string(p);
        return finish(Verdict::bad_prime);
    }

    std::vector<FpPoly> branch_gens = branch_ideal(gf, spec);
    auto ring = root_ring(n);

    // diagonal containment, always checked
    rep.diagonal_verified = true;
    for (std::uint64_t a = 0; a < p && rep.diagonal_verified; ++a) {
        std::vector<std::uint64_t> point(n, a);
        for (const auto& g : branch_gens)
            if (!gf.is_zero(g.evaluate(point))) rep.diagonal_verified = false;
    }
    if (!rep.diagonal_verified)
        throw std::logic_error("diagonal point escaped the branch variety");

    std::vector<FpPoly> gens = branch_gens;
    for (std::uint32_t v = 0; v < n; ++v) {
        auto x = FpPoly::variable(gf, ring, v);
        gens.push_back(x.pow(p) - x);
    }

    BuchbergerOptions gb_opts = opts.gb;
    gb_opts.field_relations_prime = p;
    GroebnerBasis<PrimeField> gb;
    try {
        gb = reduce_basis(buchberger(gens, rep.order, gb_opts));
    } catch (const BudgetExhausted& e) {
        rep.detail = e.what();
        return finish(Verdict::budget_exhausted);
    }

    StandardMonomialSet sm = standard_monomials(gb, /*enumerate=*/false);
    if (!sm.finite)
        throw std::logic_error("ideal with field equations must be zero-dimensional");
    rep.sm_count = sm.count;
    for (const auto& [v, m] : sm.pure_powers) rep.pure_powers[ring->vars[v]] = m;

    if (opts.run_oracle) {
        std::vector<FpPoly> oracle_gens = branch_gens;
        if (oracle_gens.empty()) oracle_gens.push_back(FpPoly::zero(gf, ring)); // n = 1: J = 0
        auto points = brute_force_variety(oracle_gens, p, opts.oracle_budget);
        rep.oracle_count = points.size();
        if (*rep.oracle_count != sm.count)
            throw std::logic_error("oracle count " + std::to_string(points.size()) +
                                   " != standard-monomial count " + std::to_string(sm.count));
    }

    if (sm.count == p) return finish(Verdict::good);
    if (sm.count >= p * p) return finish(Verdict::bad);
    // strictly between p and p^2 contradicts the span argument; surface it
    rep.detail = "count strictly between p and p^2";
    return finish(Verdict::indeterminate);
}

// One verification per prime in [p_min, p_max], fanned out across threads,
// reported in ascending prime order.
inline std::vector<VerificationReport> good_prime_sweep(const BranchSpec& spec,
                                                        std::uint64_t p_min, std::uint64_t p_max,
                                                        const VerifyOptions& opts = {},
                                                        unsigned jobs = 0) {
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = std::max<std::uint64_t>(p_min, 2); p <= p_max; ++p)
        if (PrimeField::is_prime(p)) primes.push_back(p);
    if (primes.empty()) throw std::invalid_argument("no primes in sweep range");

    if (jobs == 0) jobs = std::thread::hardware_concurrency();
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(primes.size())));

    std::vector<VerificationReport> reports(primes.size());
    std::vector<std::future<void>> tasks;
    std::atomic<std::size_t> next{0};
    for (unsigned w = 0; w < jobs; ++w) {
        tasks.push_back(std::async(std::launch::async, [&] {
            for (std::size_t idx = next.fetch_add(1); idx < primes.size();
                 idx = next.fetch_add(1))
                reports[idx] = verify_branch(spec, primes[idx], opts);
        }));
    }
    for (auto& t : tasks) t.get();
    return reports;
}

// Reduced GB of the branch ideal over Q under the branch order; minimal
// pure-power exponent per variable where one exists.
inline std::map<std::size_t, Exponent> pure_powers_over_Q(const BranchSpec& spec,
                                                          const BuchbergerOptions& opts = {}) {
    RationalField qq;
    auto gens = branch_ideal(qq, spec);
    if (gens.empty()) return {}; // n = 1: zero ideal
    MonomialOrder ord = branch_order(spec);
    auto gb = reduce_basis(buchberger(gens, ord, opts));
    MonomialIdeal lm = lm_ideal(gb);
    std::map<std::size_t, Exponent> out;
    for (std::size_t v = 0; v < spec.n; ++v)
        if (auto m = lm.pure_power(v)) out[v] = *m;
    return out;
}

// Finiteness criterion: a pure-power leading monomial for each of
// x_1..x_{n-1} in the reduced GB under the branch order.
inline bool check_finiteness(const BranchSpec& spec, const BuchbergerOptions& opts = {}) {
    spec.validate();
    if (spec.n == 1) return true;
    auto pp = pure_powers_over_Q(spec, opts);
    for (std::size_t v = 0; v + 1 < spec.n; ++v)
        if (!pp.contains(v)) return false;
    return true;
}

// The coefficient of x_2^2 in H_{n-2}(f)(x_2) reduced modulo
// H_{n-1}(f)(x_1), cross-checked against the closed form.
inline mpq_class g2_closed_form(std::uint32_t n) {
    if (n < 3) throw std::invalid_argument("G2 requires n >= 3");
    long long nn = n;
    mpq_class q(static_cast<long>((nn - 2) * (nn * nn - 2 * nn - 1)),
                static_cast<long>(2 * (nn - 1)));
    q.canonicalize();
    return q;
}

inline mpq_class g2_symbolic(std::uint32_t n) {
    if (n < 3) throw std::invalid_argument("G2 requires n >= 3");
    RationalField qq;
    auto h_n2 = hasse_at_root_subsets(qq, n, n - 2, 2);
    auto h_n1 = hasse_at_root_subsets(qq, n, n - 1, 1);
    MonomialOrder ord = MonomialOrder::lex(n); // x1 highest: eliminates x1
    auto reduced = normal_form(h_n2, std::vector<QPoly>{h_n1}, ord);
    return reduced.coefficient_of(Exponents::unit(n, 1, 2));
}

inline mpq_class g2_coefficient(std::uint32_t n) {
    mpq_class sym = g2_symbolic(n), closed = g2_closed_form(n);
    if (sym != closed)
        throw std::logic_error("G2 reduction disagrees with the closed form at n = " +
                               std::to_string(n));
    return sym;
}

// Over F_p with n > p, f = x^n - x^p shares the root 0 with every ordinary
// derivative while not being a pure n-th power of a linear factor.
inline bool char_p_counterexample_check(std::uint32_t n, std::uint64_t p) {
    PrimeField gf(p);
    if (n <= p) throw std::invalid_argument("counterexample family needs n > p");
    auto ring = std::make_shared<const Ring>(Ring{{"x"}});
    auto x = FpPoly::variable(gf, ring, 0);
    FpPoly f = x.pow(n) - x.pow(p);

    std::vector<std::uint64_t> origin{0};
    if (!gf.is_zero(f.evaluate(origin))) return false;
    FpPoly d = f;
    for (std::uint32_t i = 1; i <= n - 1; ++i) {
        d = d.derivative(0);
        if (!gf.is_zero(d.evaluate(origin))) return false;
    }
    // f = x^p (x^{n-p} - 1): the cofactor has two monomials, so f is not
    // c (x - b)^n (a pure power with a root at 0 would be c x^n)
    FpPoly cofactor = x.pow(n - p) - FpPoly::constant(gf, ring, gf.one());
    return cofactor.term_count() >= 2;
}

} // namespace casal
