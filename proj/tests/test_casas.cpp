#include <random>
#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "casal/casas.hpp"

using namespace casal;

namespace {
const RationalField qq;

QPoly rvar(std::uint32_t n, std::size_t v) { return QPoly::variable(qq, root_ring(n), v); }

// i! * H_i at x_k, the ordinary derivative evaluated at a root
QPoly ordinary_derivative_at(std::uint32_t n, std::uint32_t i, std::uint32_t k) {
    long long fact = 1;
    for (std::uint32_t u = 2; u <= i; ++u) fact *= u;
    return hasse_at_root_subsets(qq, n, i, k).scaled(qq.from_int(fact));
}
} // namespace

TEST_CASE("root polynomial satisfies Vieta") {
    SECTION("n = 1: x - x1") {
        auto f = root_polynomial(qq, 1);
        auto ring = f.ring_ptr();
        CHECK(f == QPoly::variable(qq, ring, 1) - QPoly::variable(qq, ring, 0));
    }
    SECTION("n = 2: x^2 - (x1+x2) x + x1 x2") {
        auto f = root_polynomial(qq, 2);
        auto ring = f.ring_ptr();
        auto x1 = QPoly::variable(qq, ring, 0), x2 = QPoly::variable(qq, ring, 1);
        auto x = QPoly::variable(qq, ring, 2);
        CHECK(f == x * x - (x1 + x2) * x + x1 * x2);
    }
    SECTION("n = 3: constant coefficient is -x1 x2 x3") {
        auto f = root_polynomial(qq, 3);
        CHECK(f.coefficient_of(Exponents{1, 1, 1, 0}) == -1);
    }
}

TEST_CASE("hasse derivative, subset formula") {
    SECTION("H_{n-1}(f)(x_1) = (n-1) x1 - (x2 + ... + xn)") {
        for (std::uint32_t n = 2; n <= 6; ++n) {
            auto h = hasse_at_root_subsets(qq, n, n - 1, 1);
            auto expected = rvar(n, 0).scaled(qq.from_int(n - 1));
            for (std::uint32_t j = 1; j < n; ++j) expected = expected - rvar(n, j);
            CHECK(h == expected);
        }
    }
    SECTION("n=3: H_1(f)(x_2) = (x2 - x1)(x2 - x3)") {
        auto h = hasse_at_root_subsets(qq, 3, 1, 2);
        auto x1 = rvar(3, 0), x2 = rvar(3, 1), x3 = rvar(3, 2);
        CHECK(h == (x2 - x1) * (x2 - x3));
    }
    SECTION("n=3: H_2(f)(x_1) = 2 x1 - x2 - x3") {
        auto h = hasse_at_root_subsets(qq, 3, 2, 1);
        CHECK(h == rvar(3, 0).scaled(qq.from_int(2)) - rvar(3, 1) - rvar(3, 2));
    }
    SECTION("index range is checked") {
        CHECK_THROWS_AS(hasse_at_root_subsets(qq, 3, 0, 1), std::invalid_argument);
        CHECK_THROWS_AS(hasse_at_root_subsets(qq, 3, 3, 1), std::invalid_argument);
        CHECK_THROWS_AS(hasse_at_root_subsets(qq, 3, 1, 4), std::invalid_argument);
    }
}

TEST_CASE("hasse derivative invariants") {
    std::mt19937 rng(2718);
    for (std::uint32_t n = 2; n <= 6; ++n) {
        for (std::uint32_t i = 1; i < n; ++i) {
            for (std::uint32_t k = 1; k <= n; ++k) {
                auto h = hasse_at_root_subsets(qq, n, i, k);
                CHECK(h.is_homogeneous());
                CHECK(h.total_degree() == n - i);

                // symmetric under a random transposition of variables != x_k
                std::vector<std::size_t> others;
                for (std::uint32_t v = 1; v <= n; ++v)
                    if (v != k) others.push_back(v - 1);
                std::uniform_int_distribution<std::size_t> pick(0, others.size() - 1);
                std::size_t a = others[pick(rng)], b = others[pick(rng)];
                std::vector<std::size_t> perm = MonomialOrder::identity(n);
                std::swap(perm[a], perm[b]);
                CHECK(h.permuted_variables(perm) == h);
            }
        }
    }
}

TEST_CASE("the two hasse constructions agree (n <= 5)") {
    for (std::uint32_t n = 2; n <= 5; ++n)
        for (std::uint32_t i = 1; i < n; ++i) {
            auto binom = hasse_via_coefficients(qq, n, i);
            for (std::uint32_t k = 1; k <= n; ++k)
                CHECK(at_root(binom, n, k) == hasse_at_root_subsets(qq, n, i, k));
        }
}

TEST_CASE("hasse taylor identity: f(x+t) = sum H_i(f)(x) t^i (n <= 4)") {
    for (std::uint32_t n = 1; n <= 4; ++n) {
        // work in x1..xn, x, t
        Ring ring_data = Ring::roots_with_aux(n);
        ring_data.vars.push_back("t");
        auto ring = std::make_shared<const Ring>(ring_data);
        std::size_t aux = n, tvar = n + 1;

        auto embed = [&](const QPoly& f) {
            std::vector<QPoly::Term> terms;
            for (const auto& t : f.terms()) {
                Exponents e(n + 2);
                for (std::size_t v = 0; v < f.ring().arity(); ++v) e[v] = t.exps[v];
                terms.push_back({std::move(e), t.coeff});
            }
            return QPoly::from_terms(qq, ring, std::move(terms));
        };

        auto f = embed(root_polynomial(qq, n));
        auto x = QPoly::variable(qq, ring, aux), t = QPoly::variable(qq, ring, tvar);
        auto lhs = f.substitute(aux, x + t);

        auto rhs = f; // H_0 = f
        for (std::uint32_t i = 1; i < n; ++i)
            rhs = rhs + embed(hasse_via_coefficients(qq, n, i)) * t.pow(i);
        rhs = rhs + t.pow(n); // H_n = 1 for monic f
        CHECK(lhs == rhs);
    }
}

TEST_CASE("i! H_i equals the i-th formal derivative (n <= 5)") {
    for (std::uint32_t n = 2; n <= 5; ++n) {
        auto f = root_polynomial(qq, n);
        std::size_t aux = n;
        for (std::uint32_t i = 1; i < n; ++i) {
            auto d = f;
            for (std::uint32_t u = 0; u < i; ++u) d = d.derivative(aux);
            long long fact = 1;
            for (std::uint32_t u = 2; u <= i; ++u) fact *= u;
            CHECK(hasse_via_coefficients(qq, n, i).scaled(qq.from_int(fact)) == d);
        }
    }
}

TEST_CASE("branch ideal generators") {
    SECTION("n = 2: {x1 - x2} for spec (1)") {
        auto gens = branch_ideal(qq, BranchSpec{2, {1}});
        REQUIRE(gens.size() == 1);
        CHECK(gens[0] == rvar(2, 0) - rvar(2, 1));
    }
    SECTION("n = 3 special branch: {(x2-x1)(x2-x3), 2x1 - x2 - x3}") {
        auto spec = BranchSpec::special(3);
        REQUIRE(spec.indices == std::vector<std::uint32_t>{2, 1});
        auto gens = branch_ideal(qq, spec);
        REQUIRE(gens.size() == 2);
        auto x1 = rvar(3, 0), x2 = rvar(3, 1), x3 = rvar(3, 2);
        CHECK(gens[0] == (x2 - x1) * (x2 - x3));
        CHECK(gens[1] == x1.scaled(qq.from_int(2)) - x2 - x3);
    }
    SECTION("homogeneity and the diagonal") {
        std::mt19937 rng(5);
        for (std::uint32_t n = 2; n <= 6; ++n) {
            auto gens = branch_ideal(qq, BranchSpec::special(n));
            std::uniform_int_distribution<long long> val(-20, 20);
            auto a = qq.from_int(val(rng));
            std::vector<mpq_class> diag(n, a);
            for (std::size_t j = 0; j < gens.size(); ++j) {
                CHECK(gens[j].is_homogeneous());
                CHECK(gens[j].total_degree() == n - (j + 1));
                CHECK(gens[j].evaluate(diag) == 0);
            }
        }
    }
    SECTION("invalid specs are rejected") {
        CHECK_THROWS_AS(branch_ideal(qq, BranchSpec{3, {1}}), std::invalid_argument);
        CHECK_THROWS_AS(branch_ideal(qq, BranchSpec{3, {1, 4}}), std::invalid_argument);
        CHECK_THROWS_AS(branch_ideal(qq, BranchSpec{0, {}}), std::invalid_argument);
    }
}

TEST_CASE("full Casas-Alvero generators") {
    SECTION("n = 2: F_1 = -(x1 - x2)^2") {
        auto gens = full_ca_generators(qq, 2);
        REQUIRE(gens.size() == 1);
        auto d = rvar(2, 0) - rvar(2, 1);
        CHECK(gens[0] == -(d * d));
    }
    SECTION("diagonal vanishing") {
        auto gens = full_ca_generators(qq, 3);
        std::vector<mpq_class> diag(3, qq.from_int(-4));
        for (const auto& g : gens) CHECK(g.evaluate(diag) == 0);
    }
    SECTION("cap refusal") {
        CHECK_THROWS_AS(full_ca_generators(qq, 5), std::invalid_argument);
    }
    SECTION("over F5, n=3: V(F1, F2) is the union of all branch varieties") {
        PrimeField gf(5);
        auto full = full_ca_generators(gf, 3);
        auto full_points = brute_force_variety(full, 5);
        std::set<std::vector<std::uint64_t>> full_set(full_points.begin(), full_points.end());

        std::set<std::vector<std::uint64_t>> branch_union;
        for (std::uint32_t i1 = 1; i1 <= 3; ++i1)
            for (std::uint32_t i2 = 1; i2 <= 3; ++i2) {
                auto pts = brute_force_variety(branch_ideal(gf, BranchSpec{3, {i1, i2}}), 5);
                branch_union.insert(pts.begin(), pts.end());
            }
        CHECK(full_set == branch_union);
    }
}

TEST_CASE("branch order construction") {
    SECTION("n=5 with a repeated index: x5 < x3 < x4 < x1 < x2") {
        BranchSpec spec{5, {3, 1, 1, 2}};
        auto ord = branch_order(spec);
        CHECK(ord.kind == OrderKind::lex);
        CHECK(ord.priority == std::vector<std::size_t>{1, 0, 3, 2, 4});
        CHECK(order_chain_string(ord, root_ring(5)->vars) == "x5<x3<x4<x1<x2");
    }
    SECTION("all-distinct special indices give x_n < ... < x_1") {
        for (std::uint32_t n = 2; n <= 6; ++n) {
            auto ord = branch_order(BranchSpec::special(n));
            CHECK(ord.priority == MonomialOrder::identity(n));
        }
    }
    SECTION("n = 2, spec (1): x2 < x1") {
        auto ord = branch_order(BranchSpec{2, {1}});
        CHECK(ord.priority == std::vector<std::size_t>{0, 1});
    }
    SECTION("index sets away from {1..s} are normalized by relabeling") {
        // indices {3,2}: relabeling 2 -> 1, 3 -> 2, 1 -> 3 reduces this to
        // the special shape {2,1}, whose chain pulls back to x1 < x3 < x2
        auto ord = branch_order(BranchSpec{3, {3, 2}});
        CHECK(ord.kind == OrderKind::lex);
        CHECK(order_chain_string(ord, root_ring(3)->vars) == "x1<x3<x2");
    }
}

TEST_CASE("brute force variety") {
    PrimeField gf(5);
    auto ring = root_ring(3);
    SECTION("zero polynomial: all p^n points") {
        CHECK(brute_force_variety({FpPoly::zero(gf, ring)}, 5).size() == 125);
    }
    SECTION("unit: empty") {
        CHECK(brute_force_variety({FpPoly::constant(gf, ring, 1)}, 5).empty());
    }
    SECTION("n=3 special branch: exactly the diagonal") {
        auto pts = brute_force_variety(branch_ideal(gf, BranchSpec::special(3)), 5);
        REQUIRE(pts.size() == 5);
        for (const auto& pt : pts) {
            CHECK(pt[0] == pt[1]);
            CHECK(pt[1] == pt[2]);
        }
    }
    SECTION("budget refusal") {
        CHECK_THROWS_AS(brute_force_variety({FpPoly::zero(gf, ring)}, 5, 100), BudgetExhausted);
    }
}

TEST_CASE("verify_branch") {
    SECTION("n = 3, p = 5: good, oracle agrees") {
        VerifyOptions opts;
        opts.run_oracle = true;
        auto rep = verify_branch(BranchSpec::special(3), 5, opts);
        CHECK(rep.verdict == Verdict::good);
        CHECK(rep.sm_count == 5);
        CHECK(rep.oracle_count == 5);
        CHECK(rep.diagonal_verified);
        CHECK(rep.pure_powers.at("x1") == 1);
        CHECK(rep.pure_powers.at("x2") == 1);
        CHECK(rep.pure_powers.at("x3") == 5);
    }
    SECTION("n = 4, p = 11: good") {
        auto rep = verify_branch(BranchSpec::special(4), 11);
        CHECK(rep.verdict == Verdict::good);
        CHECK(rep.sm_count == 11);
    }
    SECTION("n = 1: sm_count = p for any p") {
        for (std::uint64_t p : {2, 3, 5, 7}) {
            auto rep = verify_branch(BranchSpec::special(1), p);
            CHECK(rep.verdict == Verdict::good);
            CHECK(rep.sm_count == p);
        }
    }
    SECTION("n = 3, p = 2: bad prime, distinct from mathematical verdicts") {
        auto rep = verify_branch(BranchSpec::special(3), 2);
        CHECK(rep.verdict == Verdict::bad_prime);
        CHECK_FALSE(rep.sm_count.has_value());
    }
    SECTION("n = 4, p = 5: mathematically bad, count p^2") {
        VerifyOptions opts;
        opts.run_oracle = true;
        auto rep = verify_branch(BranchSpec::special(4), 5, opts);
        CHECK(rep.verdict == Verdict::bad);
        CHECK(rep.sm_count == 25);
    }
    SECTION("budget exhaustion is a distinct outcome") {
        VerifyOptions opts;
        opts.gb.pair_budget = 1;
        auto rep = verify_branch(BranchSpec::special(4), 11, opts);
        CHECK(rep.verdict == Verdict::budget_exhausted);
    }
    SECTION("composite p is rejected") {
        CHECK_THROWS_AS(verify_branch(BranchSpec::special(3), 6), std::invalid_argument);
    }
}

TEST_CASE("good prime sweep") {
    SECTION("n = 3 over [3,13]: good at every odd prime") {
        auto reports = good_prime_sweep(BranchSpec::special(3), 3, 13);
        REQUIRE(reports.size() == 5);
        for (const auto& r : reports) CHECK(r.verdict == Verdict::good);
    }
    SECTION("n = 2 over [2,5]: good everywhere") {
        auto reports = good_prime_sweep(BranchSpec::special(2), 2, 5);
        REQUIRE(reports.size() == 3);
        for (const auto& r : reports) CHECK(r.verdict == Verdict::good);
    }
    SECTION("n = 4 over [3,13]: good exactly at 11, 13") {
        auto reports = good_prime_sweep(BranchSpec::special(4), 3, 13, {}, 2);
        std::vector<std::uint64_t> good;
        for (const auto& r : reports)
            if (r.verdict == Verdict::good) good.push_back(r.p);
        CHECK(good == std::vector<std::uint64_t>{11, 13});
    }
    SECTION("empty range") {
        CHECK_THROWS_AS(good_prime_sweep(BranchSpec::special(2), 8, 10), std::invalid_argument);
    }
}

TEST_CASE("pure powers over Q") {
    SECTION("special branch n = 3, 4: m1 = 1, m2 = 2") {
        for (std::uint32_t n : {3u, 4u}) {
            auto pp = pure_powers_over_Q(BranchSpec::special(n));
            CHECK(pp.at(0) == 1);
            CHECK(pp.at(1) == 2);
        }
    }
    SECTION("n = 4: minimal m3 exists and is at most 8") {
        auto pp = pure_powers_over_Q(BranchSpec::special(4));
        REQUIRE(pp.contains(2));
        CHECK(pp.at(2) <= 8);
    }
    SECTION("n = 3: x2^2 enters via the G2 reduction") {
        auto pp = pure_powers_over_Q(BranchSpec::special(3));
        CHECK(pp.at(1) == 2);
        CHECK_FALSE(pp.contains(2)); // x3 stays free over Q
    }
}

TEST_CASE("radical containment: (x_j - x_k)^n in the one-root ideal") {
    for (std::uint32_t n : {3u, 4u}) {
        for (std::uint32_t k = 1; k <= n; ++k) {
            // J_k = <H_1(f)(x_k), ..., H_{n-1}(f)(x_k)>
            std::vector<QPoly> gens;
            for (std::uint32_t i = 1; i < n; ++i)
                gens.push_back(hasse_at_root_subsets(qq, n, i, k));
            auto gb = buchberger(gens, MonomialOrder::grlex(n));
            for (std::uint32_t j = 1; j <= n; ++j) {
                if (j == k) continue;
                auto diff = rvar(n, j - 1) - rvar(n, k - 1);
                CHECK(ideal_membership(diff.pow(n), gb));
            }
        }
    }
}

TEST_CASE("G2 coefficient") {
    CHECK(g2_coefficient(3) == mpq_class(1, 2));
    CHECK(g2_symbolic(4) == mpq_class(7, 3));
    CHECK(g2_closed_form(4) == mpq_class(7, 3));
    for (std::uint32_t n = 3; n <= 12; ++n) CHECK(g2_symbolic(n) == g2_closed_form(n));
    for (std::uint32_t n = 3; n <= 50; ++n) CHECK(g2_closed_form(n) != 0);
    CHECK_THROWS_AS(g2_closed_form(2), std::invalid_argument);
}

TEST_CASE("finiteness criterion") {
    CHECK(check_finiteness(BranchSpec::special(2)));
    CHECK(check_finiteness(BranchSpec::special(3)));
    CHECK(check_finiteness(BranchSpec::special(4)));
}

TEST_CASE("characteristic-p counterexample family") {
    CHECK(char_p_counterexample_check(4, 3));
    CHECK(char_p_counterexample_check(5, 3));
    CHECK(char_p_counterexample_check(6, 5));
    CHECK_THROWS_AS(char_p_counterexample_check(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(char_p_counterexample_check(2, 3), std::invalid_argument);
}

TEST_CASE("report serialization") {
    VerifyOptions opts;
    opts.run_oracle = true;
    auto rep = verify_branch(BranchSpec::special(3), 5, opts);

    auto j = report_to_json(rep);
    CHECK(j["n"] == 3);
    CHECK(j["branch"] == std::vector<std::uint32_t>{2, 1});
    CHECK(j["p"] == 5);
    CHECK(j["order"] == "x3<x2<x1");
    CHECK(j["sm_count"] == 5);
    CHECK(j["oracle_count"] == 5);
    CHECK(j["pure_powers"]["x3"] == 5);
    CHECK(j["verdict"] == "good");
    CHECK(j.contains("elapsed_ms"));

    auto csv = report_to_csv(rep);
    CHECK(csv.rfind("3,2 1,5,x3<x2<x1,5,5,x1=1 x2=1 x3=5,good,", 0) == 0);

    // identical inputs give identical serializations up to timing
    auto rep2 = verify_branch(BranchSpec::special(3), 5, opts);
    auto j2 = report_to_json(rep2);
    j2["elapsed_ms"] = j["elapsed_ms"];
    CHECK(j == j2);
}
