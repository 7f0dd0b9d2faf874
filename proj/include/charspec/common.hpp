#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace charspec {

using BigInt = mpz_class;

// Error hierarchy. Each condition named by the operation contracts gets its
// own type so callers (and the CLI exit-code mapping) can discriminate.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotAUnit : Error {
    using Error::Error;
};
struct IncompatiblePrecision : Error {
    using Error::Error;
};
struct ZeroAtPrecision : Error {
    using Error::Error;
};
struct DegreeCapExceeded : Error {
    using Error::Error;
};
struct NotTorsionAtPrecision : Error {
    using Error::Error;
};
struct DegenerateSpecialization : Error {
    using Error::Error;
};
struct AvoidanceImpossible : Error {
    using Error::Error;
};
struct PrimeNotAvoided : Error {
    using Error::Error;
};
struct InseparableAtPrecision : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"), position(position) {}
    std::size_t position;
};

// p^n as a BigInt.
inline BigInt prime_power(long p, int n) {
    BigInt m;
    mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n));
    return m;
}

// Valuation of a residue r with 0 <= r < p^N. Returns N when r == 0, which
// callers must treat as "zero to working precision", never as exact zero.
inline int residue_valuation(const BigInt& r, long p, int precision) {
    if (r == 0) return precision;
    BigInt q = r, rem;
    int v = 0;
    while (v < precision) {
        mpz_fdiv_qr_ui(q.get_mpz_t(), rem.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(p));
        if (rem != 0) break;
        ++v;
    }
    return v;
}

inline bool is_small_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Global run parameters shared by the harness and CLI.
struct RunConfig {
    long prime = 3;
    int p_precision = 40;  // N, count of p-adic digits
    int t_precision = 64;  // D, T-degree cap
    std::uint64_t seed = 0;
    int n_max = 20;

    void validate() const {
        if (prime < 3 || !is_small_prime(prime)) throw Error("prime must be an odd prime >= 3");
        if (p_precision < 10) throw Error("p-precision must be >= 10");
        if (t_precision < 2) throw Error("t-precision must be >= 2");
        if (n_max < 1) throw Error("n-max must be >= 1");
    }
};

// splitmix64; drives the deterministic unit sequences a_n.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace charspec
