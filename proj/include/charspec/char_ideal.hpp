#pragma once

#include <string>
#include <utility>
#include <vector>

#include "charspec/factor.hpp"
#include "charspec/power_series.hpp"

namespace charspec {

/// Height-one prime of Lambda: (p), or (g) for a distinguished irreducible g.
class HeightOnePrime {
  public:
    static HeightOnePrime over_p(long prime, int p_precision);
    static HeightOnePrime outside_p(DistinguishedPoly g);

    bool is_over_p() const { return !g_.has_value(); }
    const DistinguishedPoly& generator() const;
    long prime() const { return prime_; }

    std::string to_string() const;

  private:
    HeightOnePrime(long prime, int p_precision) : prime_(prime), pprec_(p_precision) {}
    long prime_;
    int pprec_;
    std::optional<DistinguishedPoly> g_;
};

/// Torsion Lambda-module presented by a square matrix (rows are relations,
/// M = Lambda^n / rowspan). The determinant is the torsion witness and is
/// computed once at construction.
class PresentationModule {
  public:
    explicit PresentationModule(std::vector<std::vector<PowerSeries>> rows);

    static PresentationModule diagonal(std::vector<PowerSeries> entries);
    static PresentationModule block_diagonal(const PresentationModule& a, const PresentationModule& b);

    int size() const { return static_cast<int>(m_.size()); }
    const PowerSeries& entry(int i, int j) const { return m_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    const PowerSeries& determinant() const { return det_; }

    long prime() const { return det_.prime(); }
    int p_precision() const { return det_.p_precision(); }
    int t_precision() const { return det_.t_precision(); }

  private:
    std::vector<std::vector<PowerSeries>> m_;
    PowerSeries det_;
};

/// Determinant over the truncated ring, by Laplace expansion with subset
/// memoization. Guarded to modest sizes; presentations here are small.
PowerSeries determinant(const std::vector<std::vector<PowerSeries>>& m);

/// Generator p^mu * prod g_i^{m_i} of the characteristic ideal, up to a unit.
/// residuals carries any part the factorizer could not split (recorded, never
/// silently dropped).
struct CharacteristicIdeal {
    int mu = 0;
    std::vector<IrreducibleFactor> factors;
    std::vector<DistinguishedPoly> residuals;

    int lambda() const {
        int s = 0;
        for (const auto& f : factors) s += f.multiplicity * f.poly.degree();
        for (const auto& r : residuals) s += r.degree();
        return s;
    }
};

PowerSeries fitting_generator(const PresentationModule& m);

CharacteristicIdeal characteristic_ideal(const PresentationModule& m, const std::vector<DistinguishedPoly>& known_factors = {});

int local_length(const PresentationModule& m, const HeightOnePrime& q);

/// Data of a fundamental module; (e_i) exponents at (p), (g_i, f_i) pairs
/// outside p.
struct FundamentalData {
    std::vector<int> over_p;
    std::vector<std::pair<DistinguishedPoly, int>> outside_p;
};

struct FundamentalModule {
    PresentationModule presentation;
    FundamentalData data;
};

/// Diagonal presentation diag(p^{e_1}, ..., g_1^{f_1}, ...). Non-certified
/// g's are rejected unless allow_unverified is set.
FundamentalModule fundamental_module(long prime, int p_precision, int t_precision, const FundamentalData& data,
                                     bool allow_unverified = false);

struct PrimeComparison {
    HeightOnePrime prime;
    int len_m = 0;
    int len_n = 0;
    bool inclusion = false;  // char(N)_q contained in char(M)_q
};

std::vector<PrimeComparison> compare_at_primes(const PresentationModule& m, const PresentationModule& n,
                                               const std::vector<HeightOnePrime>& primes);

}  // namespace charspec
