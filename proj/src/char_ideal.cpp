#include "charspec/char_ideal.hpp"

#include <algorithm>
#include <bit>

namespace charspec {

HeightOnePrime HeightOnePrime::over_p(long prime, int p_precision) { return HeightOnePrime(prime, p_precision); }

HeightOnePrime HeightOnePrime::outside_p(DistinguishedPoly g) {
    if (g.degree() < 1) throw Error("HeightOnePrime: outside-p generator must have degree >= 1");
    HeightOnePrime q(g.prime(), g.p_precision());
    q.g_ = std::move(g);
    return q;
}

const DistinguishedPoly& HeightOnePrime::generator() const {
    if (!g_) throw Error("HeightOnePrime: (p) has no distinguished generator");
    return *g_;
}

std::string HeightOnePrime::to_string() const {
    if (is_over_p()) return "(" + std::to_string(prime_) + ")";
    return "(" + g_->to_string() + ")";
}

PowerSeries determinant(const std::vector<std::vector<PowerSeries>>& m) {
    const std::size_t n = m.size();
    if (n == 0) throw Error("determinant: empty matrix");
    for (const auto& row : m)
        if (row.size() != n) throw Error("determinant: matrix must be square");
    if (n > 14) throw Error("determinant: presentation too large for the expansion kernel");

    const PowerSeries& probe = m[0][0];
    if (n == 1) return probe;

    // dp[mask] = determinant of the top rows against the column set `mask`.
    const std::size_t full = (std::size_t{1} << n) - 1;
    std::vector<PowerSeries> dp(full + 1, PowerSeries(probe.prime(), probe.p_precision(), probe.t_precision()));
    dp[0] = PowerSeries::constant(probe.prime(), probe.p_precision(), probe.t_precision(), 1);
    for (std::size_t mask = 1; mask <= full; ++mask) {
        const int r = std::popcount(mask) - 1;
        PowerSeries acc(probe.prime(), probe.p_precision(), probe.t_precision());
        int pos = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (!(mask & (std::size_t{1} << j))) continue;
            const PowerSeries term = m[static_cast<std::size_t>(r)][j] * dp[mask ^ (std::size_t{1} << j)];
            acc = (pos % 2 == 0) ? acc + term : acc - term;
            ++pos;
        }
        dp[mask] = acc;
    }
    return dp[full];
}

PresentationModule::PresentationModule(std::vector<std::vector<PowerSeries>> rows)
    : m_(std::move(rows)), det_(determinant(m_)) {
    // Degree guard: a conservative bound on deg(det) must stay inside the
    // T-window or the determinant silently wraps.
    long bound = 0;
    for (const auto& row : m_) {
        int rowmax = 0;
        for (const auto& e : row) rowmax = std::max(rowmax, std::max(0, e.degree_at_precision()));
        bound += rowmax;
    }
    if (bound >= det_.t_precision()) throw DegreeCapExceeded("PresentationModule: determinant may exceed the T-precision window");
    if (det_.is_zero_at_precision()) throw NotTorsionAtPrecision("PresentationModule: determinant vanishes at working precision");
}

PresentationModule PresentationModule::diagonal(std::vector<PowerSeries> entries) {
    const std::size_t n = entries.size();
    if (n == 0) throw Error("diagonal: need at least one entry");
    std::vector<std::vector<PowerSeries>> rows;
    const PowerSeries zero(entries[0].prime(), entries[0].p_precision(), entries[0].t_precision());
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<PowerSeries> row(n, zero);
        row[i] = entries[i];
        rows.push_back(std::move(row));
    }
    return PresentationModule(std::move(rows));
}

PresentationModule PresentationModule::block_diagonal(const PresentationModule& a, const PresentationModule& b) {
    const int n = a.size() + b.size();
    const PowerSeries zero(a.prime(), a.p_precision(), a.t_precision());
    std::vector<std::vector<PowerSeries>> rows(static_cast<std::size_t>(n), std::vector<PowerSeries>(static_cast<std::size_t>(n), zero));
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = a.entry(i, j);
    for (int i = 0; i < b.size(); ++i)
        for (int j = 0; j < b.size(); ++j) rows[static_cast<std::size_t>(a.size() + i)][static_cast<std::size_t>(a.size() + j)] = b.entry(i, j);
    return PresentationModule(std::move(rows));
}

PowerSeries fitting_generator(const PresentationModule& m) { return m.determinant(); }

CharacteristicIdeal characteristic_ideal(const PresentationModule& m, const std::vector<DistinguishedPoly>& known_factors) {
    const PowerSeries gen = fitting_generator(m);
    WeierstrassData w = weierstrass_prepare(gen);

    CharacteristicIdeal out;
    out.mu = w.mu;

    // Peel the supplied factors first, then hand the cofactor to the splitter.
    PowerSeries rest = w.distinguished.to_series(gen.t_precision());
    std::vector<DistinguishedPoly> seen;
    for (const DistinguishedPoly& g : known_factors) {
        if (g.degree() < 1) continue;
        bool dup = false;
        for (const auto& s : seen)
            if (s.p_precision() == g.p_precision() && s == g) dup = true;
        if (dup) continue;
        seen.push_back(g);
        int k = 0;
        while (true) {
            DivisionResult d = weierstrass_divide(rest, g);
            if (!d.remainder.is_zero_at_precision(kDivisibilitySlack)) break;
            rest = d.quotient;
            ++k;
        }
        if (k > 0) out.factors.push_back({g, k, certify_irreducible(g)});
    }

    const int deg_rest = rest.degree_at_precision();
    if (deg_rest >= 1) {
        std::vector<BigInt> lower;
        for (int i = 0; i < deg_rest; ++i) lower.push_back(rest.residue(i));
        if (!rest.coeff(deg_rest).is_unit()) throw Error("characteristic_ideal: distinguished cofactor lost monicity");
        DistinguishedPoly cof(gen.prime(), gen.p_precision(), std::move(lower));
        FactorResult fr = factor_distinguished(cof);
        for (auto& f : fr.factors) out.factors.push_back(std::move(f));
        for (auto& r : fr.residuals) out.residuals.push_back(std::move(r));
    }

    std::sort(out.factors.begin(), out.factors.end(), [](const IrreducibleFactor& a, const IrreducibleFactor& b) {
        if (a.poly.degree() != b.poly.degree()) return a.poly.degree() < b.poly.degree();
        for (int i = 0; i < a.poly.degree(); ++i) {
            if (a.poly.lower_residue(i) != b.poly.lower_residue(i)) return a.poly.lower_residue(i) < b.poly.lower_residue(i);
        }
        return false;
    });
    return out;
}

int local_length(const PresentationModule& m, const HeightOnePrime& q) {
    const PowerSeries gen = fitting_generator(m);
    if (q.is_over_p()) return weierstrass_prepare(gen).mu;
    return multiplicity(gen, q.generator());
}

FundamentalModule fundamental_module(long prime, int p_precision, int t_precision, const FundamentalData& data,
                                     bool allow_unverified) {
    std::vector<PowerSeries> diag;
    for (int e : data.over_p) {
        if (e < 1) throw Error("fundamental_module: exponent at (p) must be >= 1");
        diag.push_back(PowerSeries::constant(prime, p_precision, t_precision, prime_power(prime, e)));
    }
    for (const auto& [g, f] : data.outside_p) {
        if (f < 1) throw Error("fundamental_module: exponent must be >= 1");
        if (g.degree() < 1) throw Error("fundamental_module: factor must have degree >= 1");
        if (!allow_unverified && !certify_irreducible(g))
            throw Error("fundamental_module: factor not certified irreducible (pass allow_unverified to accept)");
        if (f * g.degree() >= t_precision) throw DegreeCapExceeded("fundamental_module: factor power exceeds T-precision");
        PowerSeries pw = PowerSeries::constant(prime, p_precision, t_precision, 1);
        const PowerSeries gs = g.to_series(t_precision);
        for (int i = 0; i < f; ++i) pw = pw * gs;
        diag.push_back(pw);
    }
    if (diag.empty()) diag.push_back(PowerSeries::constant(prime, p_precision, t_precision, 1));
    return FundamentalModule{PresentationModule::diagonal(std::move(diag)), data};
}

std::vector<PrimeComparison> compare_at_primes(const PresentationModule& m, const PresentationModule& n,
                                               const std::vector<HeightOnePrime>& primes) {
    std::vector<PrimeComparison> out;
    for (const HeightOnePrime& q : primes) {
        PrimeComparison c{q, local_length(m, q), local_length(n, q), false};
        c.inclusion = c.len_n >= c.len_m;  // containment of principal ideals in the DVR at q
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace charspec
