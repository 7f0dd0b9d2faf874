#include "charspec/specialize.hpp"

#include <algorithm>

namespace charspec {

UnitRule UnitRule::constant(long c) {
    UnitRule r;
    r.const_ = c;
    return r;
}

UnitRule UnitRule::seeded(std::uint64_t seed) {
    UnitRule r;
    r.seeded_ = true;
    r.seed_ = seed;
    return r;
}

BigInt UnitRule::value(long prime, int n) const {
    if (!seeded_) {
        if (const_ % prime == 0) throw Error("UnitRule: constant is not a unit mod p");
        return BigInt(const_);
    }
    std::uint64_t h = mix64(seed_ ^ (0x51ed2701ULL * static_cast<std::uint64_t>(n)));
    return BigInt(1 + static_cast<long>(h % static_cast<std::uint64_t>(prime - 1)));
}

std::string UnitRule::to_string() const {
    if (!seeded_) return "const:" + std::to_string(const_);
    return "seed:" + std::to_string(seed_);
}

SpecializationFamily::SpecializationFamily(FamilyKind k, PowerSeries z, PowerSeries r, UnitRule a)
    : kind_(k), z_(std::move(z)), r_(std::move(r)), rule_(std::move(a)), z_degree_(0) {
    WeierstrassData w = weierstrass_prepare(z_);
    if (w.mu != 0) throw DegenerateSpecialization("SpecializationFamily: z lies in (p)");
    if (w.distinguished.degree() < 1) throw DegenerateSpecialization("SpecializationFamily: z is a unit, (p, z) is not a parameter ideal");
    z_degree_ = w.distinguished.degree();
}

SpecializationFamily SpecializationFamily::outside_p(PowerSeries z, UnitRule a) {
    PowerSeries zero(z.prime(), z.p_precision(), z.t_precision());
    return SpecializationFamily(FamilyKind::OutsideP, std::move(z), std::move(zero), std::move(a));
}

SpecializationFamily SpecializationFamily::over_p(PowerSeries z, PowerSeries r, UnitRule a) {
    return SpecializationFamily(FamilyKind::OverP, std::move(z), std::move(r), std::move(a));
}

SpecializationElement element(const SpecializationFamily& fam, int n) {
    if (n < 1) throw Error("element: index must be >= 1");
    const PowerSeries& z = fam.z();
    const long p = z.prime();
    const int N = z.p_precision();
    const int D = z.t_precision();
    const BigInt a = fam.rule().value(p, n);

    PowerSeries x(p, N, D);
    if (fam.kind() == FamilyKind::OutsideP) {
        if (n >= N) throw DegenerateSpecialization("element: a_n p^n vanishes at working precision");
        x = z + PowerSeries::constant(p, N, D, a * prime_power(p, n));
    } else {
        if (static_cast<long>(n) * fam.z_degree() >= D) throw DegreeCapExceeded("element: z^n exceeds the T-precision window");
        PowerSeries zn = PowerSeries::constant(p, N, D, 1);
        for (int i = 0; i < n; ++i) zn = zn * z;
        x = zn + fam.r() + PowerSeries::constant(p, N, D, a * p);
    }

    if (x.is_zero_at_precision()) throw DegenerateSpecialization("element: x_n is zero at working precision");
    if (x.is_unit()) throw DegenerateSpecialization("element: x_n is a unit");
    WeierstrassData w = weierstrass_prepare(x);
    if (w.mu != 0) throw DegenerateSpecialization("element: x_n lies in (p)");
    if (w.distinguished.degree() < 1) throw DegenerateSpecialization("element: x_n has trivial distinguished part");
    return SpecializationElement{n, std::move(x), std::move(w)};
}

PowerSeries select_base_outside_p(const DistinguishedPoly& target, const std::vector<DistinguishedPoly>& avoid, int t_precision) {
    if (target.degree() < 1) throw Error("select_base_outside_p: target must have degree >= 1");
    for (const DistinguishedPoly& g : avoid) {
        if (g.degree() != target.degree()) continue;
        bool eq = true;
        const int w = std::min(g.p_precision(), target.p_precision());
        const BigInt m = prime_power(target.prime(), w);
        for (int i = 0; i < g.degree() && eq; ++i)
            if (g.lower_residue(i) % m != target.lower_residue(i) % m) eq = false;
        if (eq) throw AvoidanceImpossible("select_base_outside_p: target coincides with a prime to avoid");
    }
    // Distinct irreducibles generate distinct primes, so the target itself
    // already avoids every other prime in the list.
    return target.to_series(t_precision);
}

PowerSeries select_r_over_p(long prime, int p_precision, int t_precision) {
    return PowerSeries(prime, p_precision, t_precision);  // h = 1 over Lambda: r = 0
}

QuotientReport quotient_valuation(const PresentationModule& m, const SpecializationElement& x) {
    if (x.prepared.mu != 0) throw Error("quotient_valuation: specialization element has mu > 0");
    const DistinguishedPoly& f0 = x.prepared.distinguished;
    const int d = f0.degree();
    if (d < 1) throw Error("quotient_valuation: distinguished part must have degree >= 1");
    const int n = m.size();
    const long p = m.prime();
    const int N = std::min(m.p_precision(), f0.p_precision());
    const BigInt mod = prime_power(p, N);

    QuotientReport rep;
    rep.basis_rank = static_cast<long>(n) * d;

    // (x) = (f0) since the unit part changes nothing; Lambda/(f0) is free of
    // rank d over Z_p, so each reduced entry becomes a d x d multiplication
    // block over the basis 1, T, ..., T^{d-1}.
    PAdicMatrix big(p, N, static_cast<std::size_t>(n) * d, static_cast<std::size_t>(n) * d);
    BigInt t;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const PowerSeries rem = weierstrass_divide(m.entry(i, j), f0).remainder;
            std::vector<BigInt> col(static_cast<std::size_t>(d), BigInt(0));
            for (int r = 0; r < d; ++r) col[static_cast<std::size_t>(r)] = rem.residue(r);
            for (int k = 0; k < d; ++k) {
                for (int r = 0; r < d; ++r) big.set(static_cast<std::size_t>(i * d + r), static_cast<std::size_t>(j * d + k), col[static_cast<std::size_t>(r)]);
                if (k + 1 < d) {
                    // col <- (T * col) mod f0
                    BigInt top = col.back();
                    for (int r = d - 1; r > 0; --r) col[static_cast<std::size_t>(r)] = col[static_cast<std::size_t>(r - 1)];
                    col[0] = 0;
                    if (top != 0)
                        for (int r = 0; r < d; ++r) {
                            t = col[static_cast<std::size_t>(r)] - top * f0.lower_residue(r);
                            mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), mod.get_mpz_t());
                            col[static_cast<std::size_t>(r)] = t;
                        }
                }
            }
        }

    ElementaryDivisors ed = elementary_divisors(big);
    rep.certified = ed.certified;
    if (ed.certified) rep.valuation = ed.sum();
    return rep;
}

bool length_formula_check(const FundamentalModule& m, const SpecializationElement& x) {
    for (const auto& [g, f] : m.data.outside_p)
        if (multiplicity(x.x, g) > 0) throw PrimeNotAvoided("length_formula_check: x lies in a support prime");
    if (x.prepared.mu != 0) throw PrimeNotAvoided("length_formula_check: x lies in (p)");

    const long p = m.presentation.prime();
    const int N = m.presentation.p_precision();
    const int D = m.presentation.t_precision();

    QuotientReport lhs = quotient_valuation(m.presentation, x);
    if (!lhs.certified) throw Error("length_formula_check: uncertified quotient on the left-hand side");

    long rhs = 0;
    if (!m.data.over_p.empty()) {
        PresentationModule unit_p = PresentationModule::diagonal({PowerSeries::constant(p, N, D, p)});
        QuotientReport q = quotient_valuation(unit_p, x);
        if (!q.certified) throw Error("length_formula_check: uncertified quotient at (p)");
        for (int e : m.data.over_p) rhs += static_cast<long>(e) * *q.valuation;
    }
    for (const auto& [g, f] : m.data.outside_p) {
        PresentationModule unit_g = PresentationModule::diagonal({g.to_series(D)});
        QuotientReport q = quotient_valuation(unit_g, x);
        if (!q.certified) throw Error("length_formula_check: uncertified quotient at an outside-p prime");
        rhs += static_cast<long>(f) * *q.valuation;
    }
    return lhs.valuation == rhs;
}

}  // namespace charspec
