// Casas-Alvero branch verification CLI.
//
// Exit codes: 0 verified good, 1 mathematically bad or indeterminate,
// 2 usage error, 3 budget exhausted, 4 bad prime.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "casal/casas.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_bad = 1;
constexpr int exit_usage = 2;
constexpr int exit_budget = 3;
constexpr int exit_bad_prime = 4;

struct Options {
    std::uint32_t n = 0;
    std::string branch = "special";
    std::string field = "q";
    std::uint64_t p = 0;
    std::uint64_t pmin = 0, pmax = 0;
    std::uint32_t i = 0, k = 0;
    bool oracle = false;
    std::string format = "text";
    std::string output;
    std::uint64_t pair_budget = 1'000'000;
    std::uint64_t degree_budget = 10'000;
    std::uint64_t oracle_cap = 10'000'000;
    std::uint64_t enum_cap = 1'000'000;
    unsigned jobs = 0;
};

std::uint64_t env_override(const char* name, std::uint64_t fallback) {
    if (const char* v = std::getenv(name)) return std::strtoull(v, nullptr, 10);
    return fallback;
}

casal::BranchSpec parse_branch(const Options& opt) {
    if (opt.branch == "special") return casal::BranchSpec::special(opt.n);
    casal::BranchSpec spec{opt.n, {}};
    std::stringstream ss(opt.branch);
    std::string item;
    while (std::getline(ss, item, ','))
        spec.indices.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    spec.validate();
    return spec;
}

void write_out(const Options& opt, const std::string& text) {
    if (opt.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(opt.output, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot open output file " + opt.output);
        f << text;
    }
}

int verdict_exit(casal::Verdict v) {
    switch (v) {
        case casal::Verdict::good: return exit_ok;
        case casal::Verdict::budget_exhausted: return exit_budget;
        case casal::Verdict::bad_prime: return exit_bad_prime;
        default: return exit_bad;
    }
}

std::string render_report(const Options& opt, const casal::VerificationReport& rep) {
    if (opt.format == "json") return casal::report_to_json(rep).dump() + "\n";
    if (opt.format == "csv")
        return casal::report_csv_header() + "\n" + casal::report_to_csv(rep) + "\n";
    std::ostringstream out;
    out << "n=" << rep.branch.n << " p=" << rep.p << " verdict=" << to_string(rep.verdict);
    if (rep.sm_count) out << " sm_count=" << *rep.sm_count;
    if (rep.oracle_count) out << " oracle_count=" << *rep.oracle_count;
    if (!rep.pure_powers.empty()) {
        out << " pure_powers=";
        bool first = true;
        for (const auto& [name, m] : rep.pure_powers) {
            if (!first) out << ",";
            out << name << "^" << m;
            first = false;
        }
    }
    if (!rep.detail.empty()) out << " (" << rep.detail << ")";
    out << "\n";
    return out.str();
}

int cmd_gb(const Options& opt) {
    auto spec = parse_branch(opt);
    casal::MonomialOrder ord = casal::branch_order(spec);
    casal::BuchbergerOptions gb_opts{opt.pair_budget, opt.degree_budget, std::nullopt};
    std::string text;
    if (opt.field == "q") {
        casal::RationalField qq;
        auto gens = casal::branch_ideal(qq, spec);
        if (gens.empty()) throw std::invalid_argument("n = 1 has a zero branch ideal over Q");
        text = casal::to_text(casal::reduce_basis(casal::buchberger(gens, ord, gb_opts)));
    } else if (opt.field.rfind("fp:", 0) == 0) {
        casal::PrimeField gf(std::stoull(opt.field.substr(3)));
        auto gens = casal::branch_ideal(gf, spec);
        auto ring = casal::root_ring(spec.n);
        for (std::uint32_t v = 0; v < spec.n; ++v) {
            auto x = casal::FpPoly::variable(gf, ring, v);
            gens.push_back(x.pow(gf.p) - x);
        }
        gb_opts.field_relations_prime = gf.p;
        text = casal::to_text(casal::reduce_basis(casal::buchberger(gens, ord, gb_opts)));
    } else {
        throw std::invalid_argument("--field must be q or fp:<prime>");
    }
    write_out(opt, text);
    return exit_ok;
}

int cmd_verify(const Options& opt) {
    auto spec = parse_branch(opt);
    casal::VerifyOptions vopts;
    vopts.run_oracle = opt.oracle;
    vopts.gb = {opt.pair_budget, opt.degree_budget, std::nullopt};
    vopts.oracle_budget = opt.oracle_cap;
    auto rep = casal::verify_branch(spec, opt.p, vopts);
    write_out(opt, render_report(opt, rep));
    return verdict_exit(rep.verdict);
}

int cmd_sweep(const Options& opt) {
    auto spec = parse_branch(opt);
    if (opt.pmin > opt.pmax) throw std::invalid_argument("empty prime range");
    casal::VerifyOptions vopts;
    vopts.run_oracle = opt.oracle;
    vopts.gb = {opt.pair_budget, opt.degree_budget, std::nullopt};
    vopts.oracle_budget = opt.oracle_cap;
    auto reports = casal::good_prime_sweep(spec, opt.pmin, opt.pmax, vopts, opt.jobs);

    std::string text;
    if (opt.format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : reports) arr.push_back(casal::report_to_json(r));
        text = arr.dump() + "\n";
    } else if (opt.format == "csv") {
        text = casal::report_csv_header() + "\n";
        for (const auto& r : reports) text += casal::report_to_csv(r) + "\n";
    } else {
        std::vector<std::uint64_t> good;
        for (const auto& r : reports) {
            text += render_report(opt, r);
            if (r.verdict == casal::Verdict::good) good.push_back(r.p);
        }
        if (good.empty()) {
            text += "no good prime in range\n";
        } else {
            text += "good primes:";
            for (auto p : good) text += " " + std::to_string(p);
            text += "\nfirst good prime: " + std::to_string(good.front()) + "\n";
        }
    }
    write_out(opt, text);
    bool any_good = std::any_of(reports.begin(), reports.end(), [](const auto& r) {
        return r.verdict == casal::Verdict::good;
    });
    return any_good ? exit_ok : exit_bad;
}

int cmd_hasse(const Options& opt) {
    casal::RationalField qq;
    auto subsets = casal::hasse_at_root_subsets(qq, opt.n, opt.i, opt.k);
    auto binom = casal::at_root(casal::hasse_via_coefficients(qq, opt.n, opt.i), opt.n, opt.k);
    if (subsets != binom)
        throw std::logic_error("hasse derivative constructions disagree"); // unreachable
    write_out(opt, subsets.to_string() + "\n");
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Casas-Alvero branch ideals: Groebner bases, standard-monomial "
                 "verification over F_p, and brute-force cross-checks"};
    app.require_subcommand(1);
    app.set_config("--config");

    Options opt;
    opt.pair_budget = env_override("CA_BUDGET_PAIRS", opt.pair_budget);
    opt.degree_budget = env_override("CA_BUDGET_DEGREE", opt.degree_budget);
    opt.oracle_cap = env_override("CA_ORACLE_CAP", opt.oracle_cap);

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--n", opt.n, "degree of the root polynomial")->required();
        cmd->add_option("--branch", opt.branch,
                        "comma-separated indices i1..i(n-1), or 'special'");
        cmd->add_option("--pair-budget", opt.pair_budget, "Buchberger pair cap");
        cmd->add_option("--degree-budget", opt.degree_budget, "Buchberger degree cap");
        cmd->add_option("--format", opt.format, "text | json | csv")
            ->check(CLI::IsMember({"text", "json", "csv"}));
        cmd->add_option("--output", opt.output, "output path (default stdout)");
    };

    CLI::App* gb = app.add_subcommand("gb", "reduced Groebner basis of a branch ideal");
    add_common(gb);
    gb->add_option("--field", opt.field, "q | fp:<prime>");

    CLI::App* verify = app.add_subcommand("verify", "standard-monomial verification over F_p");
    add_common(verify);
    verify->add_option("--p", opt.p, "prime modulus")->required();
    verify->add_flag("--oracle", opt.oracle, "cross-check against brute-force point count");
    verify->add_option("--oracle-cap", opt.oracle_cap, "max p^n for the oracle");

    CLI::App* sweep = app.add_subcommand("sweep", "verify across a prime range");
    add_common(sweep);
    sweep->add_option("--pmin", opt.pmin, "first prime candidate")->required();
    sweep->add_option("--pmax", opt.pmax, "last prime candidate")->required();
    sweep->add_flag("--oracle", opt.oracle, "cross-check against brute-force point counts");
    sweep->add_option("--oracle-cap", opt.oracle_cap, "max p^n for the oracle");
    sweep->add_option("--jobs", opt.jobs, "parallel verification tasks (default: cores)");

    CLI::App* hasse = app.add_subcommand("hasse", "print a Hasse derivative H_i(f)(x_k)");
    hasse->add_option("--n", opt.n, "degree of the root polynomial")->required();
    hasse->add_option("--i", opt.i, "derivative index")->required();
    hasse->add_option("--k", opt.k, "root index")->required();
    hasse->add_option("--output", opt.output, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        if (gb->parsed()) return cmd_gb(opt);
        if (verify->parsed()) return cmd_verify(opt);
        if (sweep->parsed()) return cmd_sweep(opt);
        if (hasse->parsed()) return cmd_hasse(opt);
        return exit_usage;
    } catch (const casal::BudgetExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_budget;
    } catch (const casal::BadPrime& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_bad_prime;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_bad;
    }
}
