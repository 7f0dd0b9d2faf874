#pragma once

#include <optional>
#include <string>
#include <vector>

#include "charspec/common.hpp"
#include "charspec/padic.hpp"

namespace charspec {

/// Element of Lambda = Z_p[[T]] truncated at T-degree D, with coefficients
/// known modulo p^N. Arithmetic is the ring arithmetic of (Z/p^N)[T]/(T^D).
class PowerSeries {
  public:
    PowerSeries(long prime, int p_precision, int t_precision);

    static PowerSeries constant(long prime, int p_precision, int t_precision, const BigInt& c);
    static PowerSeries monomial(long prime, int p_precision, int t_precision, int degree, const BigInt& c = 1);
    static PowerSeries from_coeffs(long prime, int p_precision, int t_precision, std::vector<BigInt> coeffs);

    long prime() const { return prime_; }
    int p_precision() const { return pprec_; }
    int t_precision() const { return tprec_; }

    PAdicInt coeff(int i) const;
    const BigInt& residue(int i) const { return c_[static_cast<std::size_t>(i)]; }
    const std::vector<BigInt>& residues() const { return c_; }

    bool is_unit() const;
    bool is_zero_at_precision(int slack = 0) const;
    /// Largest index whose coefficient is nonzero at precision; -1 when none.
    int degree_at_precision() const;
    /// Minimal coefficient valuation (the mu of the series); p_precision when
    /// the series is zero at precision.
    int min_valuation() const;
    /// T-adic order at precision: least index with a nonzero coefficient.
    int t_order() const;

    PowerSeries operator+(const PowerSeries& o) const;
    PowerSeries operator-(const PowerSeries& o) const;
    PowerSeries operator*(const PowerSeries& o) const;
    PowerSeries operator-() const;
    PowerSeries scaled(const BigInt& c) const;

    /// Multiplicative inverse in (Z/p^N)[T]/(T^D); throws NotAUnit.
    PowerSeries inverse() const;

    /// Exact p-power division; requires every coefficient valuation >= mu.
    PowerSeries divided_by_p_power(int mu) const;

    PowerSeries truncated(int p_precision, int t_precision) const;

    bool operator==(const PowerSeries& o) const;
    bool operator!=(const PowerSeries& o) const { return !(*this == o); }

    std::string to_string(int max_terms = -1) const;

  private:
    long prime_;
    int pprec_, tprec_;
    std::vector<BigInt> c_;  // size tprec_, residues in [0, p^N)
};

/// Monic polynomial T^n + a_{n-1}T^{n-1} + ... + a_0 with every lower
/// coefficient in the maximal ideal (valuation >= 1).
class DistinguishedPoly {
  public:
    /// lower holds a_0..a_{n-1}; the leading 1 is implicit.
    DistinguishedPoly(long prime, int p_precision, std::vector<BigInt> lower);

    long prime() const { return prime_; }
    int p_precision() const { return pprec_; }
    int degree() const { return static_cast<int>(lower_.size()); }

    PAdicInt coeff(int i) const;
    const BigInt& lower_residue(int i) const { return lower_[static_cast<std::size_t>(i)]; }

    PowerSeries to_series(int t_precision) const;
    DistinguishedPoly truncated(int p_precision) const;

    bool operator==(const DistinguishedPoly& o) const;
    bool operator!=(const DistinguishedPoly& o) const { return !(*this == o); }

    std::string to_string() const;

  private:
    long prime_;
    int pprec_;
    std::vector<BigInt> lower_;
};

/// f = p^mu * unit * distinguished, exact in (Z/p^N)[T]/(T^D). The unit's
/// coefficients above effective_t_precision and the data below
/// effective_p_precision are the digits the preparation cannot pin down.
struct WeierstrassData {
    int mu = 0;
    PowerSeries unit;
    DistinguishedPoly distinguished;
    int effective_p_precision = 0;
    int effective_t_precision = 0;
};

/// Weierstrass preparation by fixed-point iteration on the division identity.
/// Throws ZeroAtPrecision when f vanishes at precision and DegreeCapExceeded
/// when no coefficient of f/p^mu is a unit below D.
WeierstrassData weierstrass_prepare(const PowerSeries& f);

struct DivisionResult {
    PowerSeries quotient;
    PowerSeries remainder;  // degree < divisor degree
};

/// Division with remainder by a distinguished polynomial (monic long
/// division; exact in the truncated ring).
DivisionResult weierstrass_divide(const PowerSeries& g, const DistinguishedPoly& f0);

/// Remainder-is-zero test used by divisibility checks: every remainder
/// coefficient must have valuation >= N - slack.
inline constexpr int kDivisibilitySlack = 5;

/// Largest k with g^k | f, by repeated division. Throws ZeroAtPrecision when
/// f vanishes at precision.
int multiplicity(const PowerSeries& f, const DistinguishedPoly& g, int slack = kDivisibilitySlack);

/// Distinguished irreducible factor with multiplicity. certified records
/// whether irreducibility was proved (Newton polygon purity, mod-p
/// irreducibility) or is taken on trust (user-supplied / unsplittable).
struct IrreducibleFactor {
    DistinguishedPoly poly;
    int multiplicity = 1;
    bool certified = false;
};

}  // namespace charspec
