#pragma once

#include <climits>
#include <optional>
#include <string>
#include <vector>

#include "charspec/int_poly.hpp"
#include "charspec/specialize.hpp"

namespace charspec {

/// Exact (precision-free) presentation matrix; instantiated at whatever
/// (N, D) a run needs, and re-instantiated larger when a quotient report
/// comes back uncertified.
struct ModuleSpec {
    std::vector<std::vector<IntPoly>> rows;

    static ModuleSpec diagonal(std::vector<IntPoly> entries);
    ModuleSpec block_with(const ModuleSpec& other) const;
    int size() const { return static_cast<int>(rows.size()); }
};

PresentationModule instantiate(const ModuleSpec& spec, long prime, int p_precision, int t_precision);

/// Exact family data for 𝓛 (z) and 𝓔 (z, r) specializations.
struct FamilySpec {
    FamilyKind kind = FamilyKind::OutsideP;
    IntPoly z;
    IntPoly r;  // OverP only
    UnitRule rule = UnitRule::constant(1);

    std::string label() const;
};

SpecializationFamily instantiate(const FamilySpec& spec, long prime, int p_precision, int t_precision);

enum class Verdict { Agree, DivergenceDetected, Inconclusive };

std::string to_string(Verdict v);

struct DeltaPoint {
    int n = 0;
    std::optional<long> v_m, v_n;  // certified valuations, or nothing
    bool skipped = false;          // x_n hit a support prime / degenerate
    std::string note;

    std::optional<long> delta() const {
        if (skipped || !v_m || !v_n) return std::nullopt;
        return *v_n - *v_m;
    }
};

struct FamilyTrace {
    std::string label;
    std::vector<DeltaPoint> points;
    std::optional<double> slope;  // least-squares over the certified tail
    bool bounded = false;
    int certified_count = 0;
    int skipped_count = 0;
};

struct TheoremReport {
    FamilyKind theorem = FamilyKind::OutsideP;
    std::vector<PrimeComparison> side_a;
    bool side_a_all = false;
    std::vector<FamilyTrace> side_b;
    bool side_b_bounded = false;
    long c_estimate = 0;       // as a p-valuation
    double worst_slope = 0.0;  // most negative family slope
    Verdict verdict = Verdict::Inconclusive;
    std::vector<int> skipped;
    int precision_used = 0;  // largest N an evaluation needed
};

/// |slope| below this counts as bounded; true slopes are integers.
inline constexpr double kSlopeNoise = 0.25;

/// Verify the outside-p specialization theorem on (M, N): side (a) via
/// char-ideal inclusions at the targets, side (b) via the deficiency
/// sequence delta(n) over one 𝓛-family per target.
TheoremReport check_outside_p(const ModuleSpec& m, const ModuleSpec& n, const std::vector<IntPoly>& targets, int n_max,
                              const RunConfig& cfg);

/// Same for the over-p theorem with the 𝓔-family x_n = z^n + a_n p and the
/// mu-invariants on side (a).
TheoremReport check_over_p(const ModuleSpec& m, const ModuleSpec& n, const IntPoly& z, int n_max, const RunConfig& cfg);

/// max(0, -min delta(n)) over certified points with n <= n_cap: the smallest
/// v_p(c) that makes every observed ratio integral.
long estimate_constant(const TheoremReport& report, int n_cap = INT_MAX);

}  // namespace charspec
