#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

#include "casal/errors.hpp"

namespace casal {

// Exact rational coefficients. Backed by GMP; values are always canonical
// (reduced, positive denominator, zero is 0/1).
struct RationalField {
    using Elem = mpq_class;

    Elem zero() const { return Elem(0); }
    Elem one() const { return Elem(1); }
    Elem from_int(long long v) const { return Elem(static_cast<long>(v)); }
    Elem from_ratio(long long num, long long den) const {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        Elem q(static_cast<long>(num), static_cast<long>(den));
        q.canonicalize();
        return q;
    }

    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem div(const Elem& a, const Elem& b) const {
        if (b == 0) throw std::domain_error("division by zero");
        return a / b;
    }
    Elem inv(const Elem& a) const { return div(one(), a); }

    bool is_zero(const Elem& a) const { return a == 0; }
    bool is_one(const Elem& a) const { return a == 1; }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }

    // Sign handling for the text grammar; prime fields have no signs.
    bool is_negative(const Elem& a) const { return sgn(a) < 0; }
    Elem abs_value(const Elem& a) const { return abs(a); }

    std::string to_string(const Elem& a) const { return a.get_str(); }

    bool operator==(const RationalField&) const = default;
};

// Prime field F_p, elements stored as least nonnegative residues.
struct PrimeField {
    using Elem = std::uint64_t;

    std::uint64_t p;

    explicit PrimeField(std::uint64_t modulus) : p(modulus) {
        if (!is_prime(modulus))
            throw std::invalid_argument("modulus " + std::to_string(modulus) + " is not prime");
        if (modulus >= (std::uint64_t(1) << 31))
            throw std::invalid_argument("modulus too large");
    }

    static bool is_prime(std::uint64_t m) {
        if (m < 2) return false;
        for (std::uint64_t d = 2; d * d <= m; ++d)
            if (m % d == 0) return false;
        return true;
    }

    Elem zero() const { return 0; }
    Elem one() const { return 1 % p; }
    Elem from_int(long long v) const {
        long long r = v % static_cast<long long>(p);
        if (r < 0) r += static_cast<long long>(p);
        return static_cast<Elem>(r);
    }

    Elem add(Elem a, Elem b) const {
        Elem s = a + b;
        return s >= p ? s - p : s;
    }
    Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p - b; }
    Elem mul(Elem a, Elem b) const { return (a * b) % p; }
    Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
    Elem inv(Elem a) const {
        if (a == 0) throw std::domain_error("division by zero in F_p");
        return pow(a, p - 2);
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const {
        Elem r = one(), base = a % p;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    bool is_zero(Elem a) const { return a == 0; }
    bool is_one(Elem a) const { return a == one(); }
    bool eq(Elem a, Elem b) const { return a == b; }

    bool is_negative(Elem) const { return false; }
    Elem abs_value(Elem a) const { return a; }

    std::string to_string(Elem a) const { return std::to_string(a); }

    bool operator==(const PrimeField&) const = default;
};

// Image of a rational in F_p; the denominator must be a unit mod p.
inline PrimeField::Elem reduce_mod_p(const mpq_class& q, const PrimeField& field) {
    mpz_class num = q.get_num(), den = q.get_den();
    mpz_class pz(static_cast<unsigned long>(field.p));
    mpz_class dr = den % pz;
    if (dr == 0)
        throw BadPrime("denominator of " + q.get_str() + " vanishes mod " + std::to_string(field.p));
    mpz_class nr = num % pz;
    if (nr < 0) nr += pz;
    return field.div(static_cast<PrimeField::Elem>(nr.get_ui()),
                     static_cast<PrimeField::Elem>(dr.get_ui()));
}

} // namespace casal
