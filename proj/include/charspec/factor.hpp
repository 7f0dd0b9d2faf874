#pragma once

#include <vector>

#include "charspec/power_series.hpp"

namespace charspec {

/// Factorization of a distinguished polynomial into distinguished factors.
/// Certification is best-effort: Newton-polygon purity and mod-p
/// irreducibility after an integer-slope twist are proved; anything the
/// splitting machinery cannot reach is returned with certified = false, and
/// pieces abandoned to precision exhaustion land in residuals.
struct FactorResult {
    std::vector<IrreducibleFactor> factors;
    std::vector<DistinguishedPoly> residuals;
    int verified_p_precision = 0;  // precision of the product == input check

    bool complete() const { return residuals.empty(); }
};

FactorResult factor_distinguished(const DistinguishedPoly& f0);

/// Cheap irreducibility certificates only: degree one, or Newton polygon
/// purity (single segment with coprime endpoints, Eisenstein included).
bool certify_irreducible(const DistinguishedPoly& g);

}  // namespace charspec
