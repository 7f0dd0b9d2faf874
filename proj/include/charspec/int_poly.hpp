#pragma once

#include <string>
#include <vector>

#include "charspec/power_series.hpp"

namespace charspec {

/// Exact polynomial in Z[T]. This is the form inputs live in before any
/// precision is chosen, so a computation can be rerun at a higher (N, D)
/// when a result comes back uncertified.
struct IntPoly {
    std::vector<BigInt> c;  // little-endian, trimmed

    IntPoly() = default;
    explicit IntPoly(std::vector<BigInt> coeffs) : c(std::move(coeffs)) { trim(); }
    static IntPoly constant(const BigInt& v) { return IntPoly({v}); }
    static IntPoly variable() { return IntPoly({BigInt(0), BigInt(1)}); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly pow(int e) const;
    bool operator==(const IntPoly& o) const { return c == o.c; }

    PowerSeries to_series(long prime, int p_precision, int t_precision) const;
    /// Requires the reduction mod p^N to be monic distinguished.
    DistinguishedPoly to_distinguished(long prime, int p_precision) const;

    std::string to_string() const;
};

}  // namespace charspec
