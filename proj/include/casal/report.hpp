#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "casal/monomial.hpp"

namespace casal {

// Degree n plus the index tuple (i_1,...,i_{n-1}): generator j of the
// branch ideal is H_j(f) evaluated at root x_{i_j}. Repeats are allowed.
struct BranchSpec {
    std::uint32_t n;
    std::vector<std::uint32_t> indices; // 1-based, size n - 1

    static BranchSpec special(std::uint32_t n) {
        BranchSpec s{n, {}};
        for (std::uint32_t j = 1; j < n; ++j) s.indices.push_back(n - j);
        return s;
    }

    void validate() const {
        if (n < 1) throw std::invalid_argument("degree n must be >= 1");
        if (indices.size() != n - 1)
            throw std::invalid_argument("branch needs exactly n-1 indices");
        for (auto i : indices)
            if (i < 1 || i > n) throw std::invalid_argument("branch index out of range");
    }

    bool operator==(const BranchSpec&) const = default;
};

enum class Verdict { good, bad, indeterminate, budget_exhausted, bad_prime };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::good: return "good";
        case Verdict::bad: return "bad";
        case Verdict::indeterminate: return "indeterminate";
        case Verdict::budget_exhausted: return "budget-exhausted";
        case Verdict::bad_prime: return "bad-prime";
    }
    return "?";
}

// Ascending chain, e.g. "x5<x3<x4<x1<x2".
inline std::string order_chain_string(const MonomialOrder& ord,
                                      const std::vector<std::string>& vars) {
    std::string s;
    for (auto it = ord.priority.rbegin(); it != ord.priority.rend(); ++it) {
        if (!s.empty()) s += "<";
        s += vars[*it];
    }
    return s;
}

struct VerificationReport {
    BranchSpec branch;
    std::uint64_t p = 0;
    MonomialOrder order;
    std::optional<std::uint64_t> sm_count;
    std::optional<std::uint64_t> oracle_count;
    bool diagonal_verified = false;
    std::map<std::string, Exponent> pure_powers;
    Verdict verdict = Verdict::indeterminate;
    std::int64_t elapsed_ms = 0;
    std::string detail; // human-readable note for non-mathematical outcomes
};

inline nlohmann::ordered_json report_to_json(const VerificationReport& r) {
    nlohmann::ordered_json j;
    j["n"] = r.branch.n;
    j["branch"] = r.branch.indices;
    j["p"] = r.p;
    std::vector<std::string> vars;
    for (std::uint32_t i = 1; i <= r.branch.n; ++i) vars.push_back("x" + std::to_string(i));
    j["order"] = order_chain_string(r.order, vars);
    if (r.sm_count) j["sm_count"] = *r.sm_count; else j["sm_count"] = nullptr;
    if (r.oracle_count) j["oracle_count"] = *r.oracle_count;
    nlohmann::ordered_json pp = nlohmann::ordered_json::object();
    for (const auto& [name, m] : r.pure_powers) pp[name] = m;
    j["pure_powers"] = pp;
    j["verdict"] = to_string(r.verdict);
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

inline std::string report_csv_header() {
    return "n,branch,p,order,sm_count,oracle_count,pure_powers,verdict,elapsed_ms";
}

inline std::string report_to_csv(const VerificationReport& r) {
    std::string branch;
    for (std::size_t i = 0; i < r.branch.indices.size(); ++i) {
        if (i) branch += " ";
        branch += std::to_string(r.branch.indices[i]);
    }
    std::vector<std::string> vars;
    for (std::uint32_t i = 1; i <= r.branch.n; ++i) vars.push_back("x" + std::to_string(i));
    std::string pp;
    for (const auto& [name, m] : r.pure_powers) {
        if (!pp.empty()) pp += " ";
        pp += name + "=" + std::to_string(m);
    }
    std::string line = std::to_string(r.branch.n);
    line += "," + branch;
    line += "," + std::to_string(r.p);
    line += "," + order_chain_string(r.order, vars);
    line += "," + (r.sm_count ? std::to_string(*r.sm_count) : std::string());
    line += "," + (r.oracle_count ? std::to_string(*r.oracle_count) : std::string());
    line += "," + pp;
    line += "," + to_string(r.verdict);
    line += "," + std::to_string(r.elapsed_ms);
    return line;
}

} // namespace casal
