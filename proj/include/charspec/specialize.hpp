#pragma once

#include <optional>
#include <string>

#include "charspec/char_ideal.hpp"
#include "charspec/power_series.hpp"

namespace charspec {

enum class FamilyKind {
    OutsideP,  // the L-family x_n = z + a_n p^n
    OverP,     // the E-family x_n = z^n + r + a_n p
};

/// Deterministic rule n -> a_n in Z_p^x. Either a fixed unit or a seeded
/// sweep over unit residues.
class UnitRule {
  public:
    static UnitRule constant(long c = 1);
    static UnitRule seeded(std::uint64_t seed);

    BigInt value(long prime, int n) const;
    std::string to_string() const;

  private:
    bool seeded_ = false;
    long const_ = 1;
    std::uint64_t seed_ = 0;
};

class SpecializationFamily {
  public:
    /// 𝓛-family; z must be a non-unit with mu(z) = 0 so that (p, z) is a
    /// parameter ideal.
    static SpecializationFamily outside_p(PowerSeries z, UnitRule a);
    /// 𝓔-family; same constraints on z, r is added verbatim (r = 0 allowed).
    static SpecializationFamily over_p(PowerSeries z, PowerSeries r, UnitRule a);

    FamilyKind kind() const { return kind_; }
    const PowerSeries& z() const { return z_; }
    const PowerSeries& r() const { return r_; }
    const UnitRule& rule() const { return rule_; }
    int z_degree() const { return z_degree_; }  // degree of the distinguished part of z

  private:
    SpecializationFamily(FamilyKind k, PowerSeries z, PowerSeries r, UnitRule a);
    FamilyKind kind_;
    PowerSeries z_, r_;
    UnitRule rule_;
    int z_degree_;
};

struct SpecializationElement {
    int n = 0;
    PowerSeries x;
    WeierstrassData prepared;  // mu = 0 for elements of these families
};

/// x_n per the family kind, Weierstrass-prepared. Degenerate elements (unit
/// or zero at precision, or mu > 0) signal DegenerateSpecialization;
/// an n-th power escaping the T-window signals DegreeCapExceeded.
SpecializationElement element(const SpecializationFamily& fam, int n);

/// z for the 𝓛-family aimed at `target`: the target itself, after checking it
/// is distinct from every prime to avoid.
PowerSeries select_base_outside_p(const DistinguishedPoly& target, const std::vector<DistinguishedPoly>& avoid, int t_precision);

/// Over Lambda the prime-avoidance choice for the 𝓔-family degenerates to 0.
PowerSeries select_r_over_p(long prime, int p_precision, int t_precision);

struct QuotientReport {
    std::optional<long> valuation;  // v_p(|M/xM|); nullopt = NotFiniteAtPrecision
    long basis_rank = 0;            // module size times deg of the distinguished part of x
    bool certified = false;
};

/// v_p(|M/xM|) through the block route: reduce the presentation mod the
/// distinguished part of x, expand multiplication operators over the free
/// Z_p-basis 1, T, ..., T^{d-1} of Lambda/(x), take elementary divisors.
QuotientReport quotient_valuation(const PresentationModule& m, const SpecializationElement& x);

/// Checks the additive length formula: the quotient valuation of a
/// fundamental module equals the sum of per-prime single-generator quotient
/// valuations weighted by the local lengths. Throws PrimeNotAvoided when x
/// lies in a support prime of m.
bool length_formula_check(const FundamentalModule& m, const SpecializationElement& x);

}  // namespace charspec
