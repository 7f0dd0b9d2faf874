#include "charspec/factor.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace charspec {
namespace {

// ---------------------------------------------------------------------------
// F_p[U] arithmetic. Coefficients little-endian in [0, p), no leading zeros.
// ---------------------------------------------------------------------------

using FPoly = std::vector<long>;

long fp_inv(long a, long p) {
    long t = 0, nt = 1, r = p, nr = a % p;
    while (nr != 0) {
        long q = r / nr;
        std::swap(t, nt);
        nt -= q * t;
        std::swap(r, nr);
        nr -= q * r;
    }
    return ((t % p) + p) % p;
}

void fp_trim(FPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int fp_deg(const FPoly& a) { return static_cast<int>(a.size()) - 1; }

FPoly fp_add(const FPoly& a, const FPoly& b, long p) {
    FPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        long s = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r[i] = s % p;
    }
    fp_trim(r);
    return r;
}

FPoly fp_sub(const FPoly& a, const FPoly& b, long p) {
    FPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        long s = (i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0);
        r[i] = ((s % p) + p) % p;
    }
    fp_trim(r);
    return r;
}

FPoly fp_mul(const FPoly& a, const FPoly& b, long p) {
    if (a.empty() || b.empty()) return {};
    FPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    fp_trim(r);
    return r;
}

// a = q*b + r with deg r < deg b; b nonzero.
void fp_divmod(const FPoly& a, const FPoly& b, long p, FPoly& q, FPoly& r) {
    q.clear();
    r = a;
    fp_trim(r);
    if (b.empty()) throw Error("fp_divmod: division by zero");
    long linv = fp_inv(b.back(), p);
    if (fp_deg(r) >= fp_deg(b)) q.assign(static_cast<std::size_t>(fp_deg(r) - fp_deg(b) + 1), 0);
    while (fp_deg(r) >= fp_deg(b)) {
        int k = fp_deg(r) - fp_deg(b);
        long f = (r.back() * linv) % p;
        q[static_cast<std::size_t>(k)] = f;
        for (std::size_t i = 0; i < b.size(); ++i) {
            long v = r[static_cast<std::size_t>(k) + i] - f * b[i] % p;
            r[static_cast<std::size_t>(k) + i] = ((v % p) + p) % p;
        }
        fp_trim(r);
    }
    fp_trim(q);
}

FPoly fp_mod(const FPoly& a, const FPoly& b, long p) {
    FPoly q, r;
    fp_divmod(a, b, p, q, r);
    return r;
}

FPoly fp_monic(FPoly a, long p) {
    fp_trim(a);
    if (a.empty()) return a;
    long inv = fp_inv(a.back(), p);
    for (long& x : a) x = (x * inv) % p;
    return a;
}

FPoly fp_gcd(FPoly a, FPoly b, long p) {
    fp_trim(a);
    fp_trim(b);
    while (!b.empty()) {
        FPoly r = fp_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return fp_monic(a, p);
}

// s*a + t*b = gcd(a, b) (gcd monic).
void fp_exgcd(const FPoly& a, const FPoly& b, long p, FPoly& g, FPoly& s, FPoly& t) {
    FPoly r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
    fp_trim(r0);
    fp_trim(r1);
    while (!r1.empty()) {
        FPoly q, r;
        fp_divmod(r0, r1, p, q, r);
        r0 = std::move(r1);
        r1 = std::move(r);
        FPoly ns = fp_sub(s0, fp_mul(q, s1, p), p);
        s0 = std::move(s1);
        s1 = std::move(ns);
        FPoly nt = fp_sub(t0, fp_mul(q, t1, p), p);
        t0 = std::move(t1);
        t1 = std::move(nt);
    }
    long inv = r0.empty() ? 1 : fp_inv(r0.back(), p);
    auto scale = [&](FPoly v) {
        for (long& x : v) x = (x * inv) % p;
        return v;
    };
    g = scale(r0);
    s = scale(s0);
    t = scale(t0);
}

FPoly fp_derivative(const FPoly& a, long p) {
    FPoly r;
    for (std::size_t i = 1; i < a.size(); ++i) r.push_back((static_cast<long>(i) % p) * a[i] % p);
    fp_trim(r);
    return r;
}

FPoly fp_powmod(FPoly base, BigInt e, const FPoly& mod, long p) {
    FPoly r = {1};
    base = fp_mod(base, mod, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = fp_mod(fp_mul(r, base, p), mod, p);
        e >>= 1;
        if (e > 0) base = fp_mod(fp_mul(base, base, p), mod, p);
    }
    return r;
}

// Berlekamp: distinct monic irreducible factors of a monic squarefree f.
std::vector<FPoly> berlekamp_squarefree(const FPoly& f, long p) {
    int d = fp_deg(f);
    if (d <= 0) return {};
    if (d == 1) return {fp_monic(f, p)};

    // Frobenius matrix: column i holds U^{p*i} mod f.
    std::vector<FPoly> frob(static_cast<std::size_t>(d));
    FPoly up = fp_powmod(FPoly{0, 1}, BigInt(p), f, p);
    frob[0] = {1};
    for (int i = 1; i < d; ++i) frob[static_cast<std::size_t>(i)] = fp_mod(fp_mul(frob[static_cast<std::size_t>(i - 1)], up, p), f, p);

    // (Q - I) x = 0 over F_p; columns indexed by i, rows by coefficient.
    std::vector<std::vector<long>> m(static_cast<std::size_t>(d), std::vector<long>(static_cast<std::size_t>(d), 0));
    for (int i = 0; i < d; ++i) {
        for (int r = 0; r < d; ++r) {
            long v = r < static_cast<int>(frob[static_cast<std::size_t>(i)].size()) ? frob[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)] : 0;
            if (r == i) v = ((v - 1) % p + p) % p;
            m[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] = v;
        }
    }
    // Row-reduce, collect nullspace basis.
    std::vector<int> pivot_col(static_cast<std::size_t>(d), -1);
    int rank = 0;
    for (int c = 0; c < d && rank < d; ++c) {
        int pr = -1;
        for (int r = rank; r < d; ++r)
            if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        std::swap(m[static_cast<std::size_t>(pr)], m[static_cast<std::size_t>(rank)]);
        long inv = fp_inv(m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)], p);
        for (int j = 0; j < d; ++j) m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)] = m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)] * inv % p;
        for (int r = 0; r < d; ++r) {
            if (r == rank) continue;
            long f2 = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            if (f2 == 0) continue;
            for (int j = 0; j < d; ++j) {
                long v = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] - f2 * m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)] % p;
                m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] = ((v % p) + p) % p;
            }
        }
        pivot_col[static_cast<std::size_t>(rank)] = c;
        ++rank;
    }
    std::vector<bool> is_pivot(static_cast<std::size_t>(d), false);
    for (int r = 0; r < rank; ++r) is_pivot[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] = true;
    std::vector<FPoly> basis;
    for (int c = 0; c < d; ++c) {
        if (is_pivot[static_cast<std::size_t>(c)]) continue;
        FPoly v(static_cast<std::size_t>(d), 0);
        v[static_cast<std::size_t>(c)] = 1;
        for (int r = 0; r < rank; ++r) {
            long coef = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            if (coef != 0) v[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] = ((-coef) % p + p) % p;
        }
        fp_trim(v);
        basis.push_back(std::move(v));
    }

    std::size_t target = basis.size();  // number of irreducible factors
    std::vector<FPoly> factors = {fp_monic(f, p)};
    for (const FPoly& v : basis) {
        if (factors.size() >= target) break;
        if (fp_deg(v) < 1) continue;  // the constants split nothing
        std::vector<FPoly> next;
        for (const FPoly& g : factors) {
            if (fp_deg(g) <= 1) {
                next.push_back(g);
                continue;
            }
            FPoly rest = g;
            for (long c = 0; c < p && fp_deg(rest) > 0; ++c) {
                FPoly vc = v;
                if (vc.empty()) vc = {0};
                vc[0] = ((vc[0] - c) % p + p) % p;
                fp_trim(vc);
                FPoly h = fp_gcd(rest, vc, p);
                if (fp_deg(h) > 0 && fp_deg(h) < fp_deg(rest)) {
                    next.push_back(h);
                    FPoly q, r;
                    fp_divmod(rest, h, p, q, r);
                    rest = fp_monic(q, p);
                }
            }
            if (fp_deg(rest) > 0) next.push_back(rest);
        }
        factors = std::move(next);
    }
    for (FPoly& g : factors) g = fp_monic(g, p);
    std::sort(factors.begin(), factors.end());
    return factors;
}

FPoly fp_pth_root(const FPoly& f, long p) {
    // Over F_p the Frobenius is the identity on coefficients.
    FPoly r;
    for (std::size_t i = 0; i < f.size(); i += static_cast<std::size_t>(p)) r.push_back(f[i]);
    return r;
}

void fp_distinct_irreducibles(const FPoly& f, long p, std::vector<FPoly>& out) {
    if (fp_deg(f) <= 0) return;
    FPoly df = fp_derivative(f, p);
    if (df.empty()) {
        fp_distinct_irreducibles(fp_pth_root(f, p), p, out);
        return;
    }
    FPoly g = fp_gcd(f, df, p);
    FPoly rad, r;
    fp_divmod(f, g, p, rad, r);
    for (FPoly& q : berlekamp_squarefree(fp_monic(rad, p), p))
        if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(std::move(q));
    if (fp_deg(g) > 0) fp_distinct_irreducibles(g, p, out);
}

// Monic f -> [(irreducible, multiplicity)], deterministic order.
std::vector<std::pair<FPoly, int>> fp_factor(const FPoly& f, long p) {
    std::vector<FPoly> irr;
    fp_distinct_irreducibles(fp_monic(f, p), p, irr);
    std::sort(irr.begin(), irr.end(), [](const FPoly& a, const FPoly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::vector<std::pair<FPoly, int>> out;
    FPoly cur = fp_monic(f, p);
    for (const FPoly& q : irr) {
        int e = 0;
        while (true) {
            FPoly quo, rem;
            fp_divmod(cur, q, p, quo, rem);
            if (!rem.empty()) break;
            cur = std::move(quo);
            ++e;
        }
        if (e > 0) out.emplace_back(q, e);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Monic polynomials over Z/p^W; coefficient vectors little-endian, the
// leading coefficient is stored (always 1 for the polys handled here).
// ---------------------------------------------------------------------------

struct ZPoly {
    long p = 3;
    int W = 1;  // working p-precision
    std::vector<BigInt> c;

    int deg() const { return static_cast<int>(c.size()) - 1; }
    BigInt modulus() const { return prime_power(p, W); }
};

ZPoly z_reduce(ZPoly a, int W) {
    a.W = W;
    BigInt m = prime_power(a.p, W);
    for (BigInt& e : a.c) mpz_fdiv_r(e.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return a;
}

ZPoly z_mul(const ZPoly& a, const ZPoly& b) {
    int W = std::min(a.W, b.W);
    ZPoly r{a.p, W, std::vector<BigInt>(a.c.size() + b.c.size() - 1, BigInt(0))};
    BigInt m = prime_power(a.p, W);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) mpz_addmul(r.c[i + j].get_mpz_t(), a.c[i].get_mpz_t(), b.c[j].get_mpz_t());
    for (BigInt& e : r.c) mpz_fdiv_r(e.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

// a = q*b + r for monic b; exact in Z/p^W.
void z_divmod_monic(const ZPoly& a, const ZPoly& b, ZPoly& q, ZPoly& r) {
    int W = std::min(a.W, b.W);
    BigInt m = prime_power(a.p, W);
    r = z_reduce(a, W);
    q = ZPoly{a.p, W, {}};
    if (a.deg() < b.deg()) return;
    q.c.assign(static_cast<std::size_t>(a.deg() - b.deg() + 1), BigInt(0));
    BigInt t;
    for (int i = a.deg(); i >= b.deg(); --i) {
        BigInt lead = r.c[static_cast<std::size_t>(i)];
        if (lead == 0) continue;
        int k = i - b.deg();
        q.c[static_cast<std::size_t>(k)] = lead;
        for (int j = 0; j <= b.deg(); ++j) {
            t = r.c[static_cast<std::size_t>(k + j)] - lead * b.c[static_cast<std::size_t>(j)];
            mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
            r.c[static_cast<std::size_t>(k + j)] = t;
        }
    }
    while (!r.c.empty() && r.c.back() == 0) r.c.pop_back();
}

bool z_is_zero(const ZPoly& a, int slack) {
    for (const BigInt& e : a.c)
        if (residue_valuation(e, a.p, a.W) < a.W - slack) return false;
    return true;
}

FPoly z_mod_p(const ZPoly& a) {
    FPoly r;
    for (const BigInt& e : a.c) r.push_back(static_cast<long>(mpz_fdiv_ui(e.get_mpz_t(), static_cast<unsigned long>(a.p))));
    fp_trim(r);
    return r;
}

ZPoly z_from_fp(const FPoly& f, long p, int W) {
    ZPoly r{p, W, {}};
    for (long x : f) r.c.emplace_back(x);
    if (r.c.empty()) r.c.emplace_back(0);
    return r;
}

// Taylor shift: h(U + c).
ZPoly z_translate(const ZPoly& h, const BigInt& cval) {
    ZPoly r = h;
    BigInt m = r.modulus();
    int d = r.deg();
    BigInt t;
    for (int k = 0; k < d; ++k)
        for (int j = d - 1; j >= k; --j) {
            t = r.c[static_cast<std::size_t>(j)] + cval * r.c[static_cast<std::size_t>(j + 1)];
            mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
            r.c[static_cast<std::size_t>(j)] = t;
        }
    return r;
}

// Hensel lift of a two-factor coprime splitting f = A*B mod p to mod p^W.
void hensel_pair(const ZPoly& f, const FPoly& abar, const FPoly& bbar, ZPoly& A, ZPoly& B) {
    const long p = f.p;
    const int W = f.W;
    FPoly g, s, t;
    fp_exgcd(abar, bbar, p, g, s, t);
    if (fp_deg(g) != 0) throw Error("hensel_pair: factors not coprime mod p");

    A = z_from_fp(abar, p, W);
    B = z_from_fp(bbar, p, W);
    BigInt pk(1);
    for (int k = 1; k < W; ++k) {
        pk *= p;
        ZPoly AB = z_mul(A, B);
        ZPoly E{p, W, std::vector<BigInt>(std::max(f.c.size(), AB.c.size()), BigInt(0))};
        BigInt m = f.modulus();
        for (std::size_t i = 0; i < E.c.size(); ++i) {
            BigInt v = (i < f.c.size() ? f.c[i] : BigInt(0)) - (i < AB.c.size() ? AB.c[i] : BigInt(0));
            mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
            E.c[i] = v;
        }
        bool zero = true;
        for (const BigInt& e : E.c)
            if (e != 0) {
                zero = false;
                break;
            }
        if (zero) break;
        FPoly ebar;
        for (const BigInt& e : E.c) {
            BigInt v = e / pk;
            ebar.push_back(static_cast<long>(mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p))));
        }
        fp_trim(ebar);
        // deltaA*bbar + deltaB*abar = ebar with deg deltaA < deg abar.
        FPoly se = fp_mul(s, ebar, p);
        FPoly qq, deltaB;
        fp_divmod(se, bbar, p, qq, deltaB);
        FPoly deltaA = fp_add(fp_mul(t, ebar, p), fp_mul(qq, abar, p), p);
        for (std::size_t i = 0; i < deltaA.size(); ++i)
            if (static_cast<int>(i) < static_cast<int>(A.c.size()) - 1) A.c[i] += pk * deltaA[i];
        for (std::size_t i = 0; i < deltaB.size(); ++i)
            if (static_cast<int>(i) < static_cast<int>(B.c.size()) - 1) B.c[i] += pk * deltaB[i];
        A = z_reduce(A, W);
        B = z_reduce(B, W);
    }
}

int z_val(const BigInt& e, long p, int W) { return residue_valuation(e, p, W); }

// Lower Newton hull of {(i, val c_i)}; returns vertex indices.
std::vector<std::pair<int, int>> newton_hull(const ZPoly& h) {
    std::vector<std::pair<int, int>> pts;
    for (int i = 0; i <= h.deg(); ++i) {
        int v = z_val(h.c[static_cast<std::size_t>(i)], h.p, h.W);
        pts.emplace_back(i, v);
    }
    std::vector<std::pair<int, int>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            // keep strictly convex lower hull
            long cross = static_cast<long>(b.first - a.first) * (pt.second - a.second) - static_cast<long>(pt.first - a.first) * (b.second - a.second);
            if (cross <= 0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    return hull;
}

enum class Status { Certified, Unverified, Residual };

struct WorkFactor {
    ZPoly poly;
    Status status;
};

constexpr int kMinWorkingPrecision = 6;
constexpr int kMaxDepth = 64;

// Twist h(T) -> h(p^s U) / p^{s d}; exact when the hull lies above the
// supporting line of slope s through (d, 0). Costs s*d digits of precision.
ZPoly z_twist(const ZPoly& h, int s) {
    int d = h.deg();
    int Wn = h.W - s * d;
    ZPoly r{h.p, Wn, std::vector<BigInt>(h.c.size())};
    for (int i = 0; i <= d; ++i) {
        BigInt pw = prime_power(h.p, s * (d - i));
        r.c[static_cast<std::size_t>(i)] = h.c[static_cast<std::size_t>(i)] / pw;
    }
    return z_reduce(r, Wn);
}

ZPoly z_untwist(const ZPoly& f, int s) {
    int d = f.deg();
    ZPoly r{f.p, f.W, std::vector<BigInt>(f.c.size())};
    for (int i = 0; i <= d; ++i) r.c[static_cast<std::size_t>(i)] = f.c[static_cast<std::size_t>(i)] * prime_power(f.p, s * (d - i));
    return z_reduce(r, f.W);
}

std::vector<WorkFactor> factor_rec(ZPoly h, int depth);

// h monic with unit constant term after an integer-slope twist; factor by
// reduction mod p, Hensel-lift the pairwise-coprime prime-power parts, then
// refine each part. Factors are of the twisted polynomial.
std::vector<WorkFactor> factor_unit_twisted(const ZPoly& hhat, int depth) {
    const long p = hhat.p;
    FPoly fbar = z_mod_p(hhat);
    auto parts = fp_factor(fbar, p);

    std::vector<std::pair<ZPoly, std::pair<FPoly, int>>> lifted;
    if (parts.size() == 1) {
        lifted.emplace_back(hhat, parts[0]);
    } else {
        // peel parts off one at a time
        ZPoly rest = hhat;
        for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
            FPoly abar = {1};
            for (int e = 0; e < parts[i].second; ++e) abar = fp_mul(abar, parts[i].first, p);
            FPoly bbar = {1};
            for (std::size_t j = i + 1; j < parts.size(); ++j)
                for (int e = 0; e < parts[j].second; ++e) bbar = fp_mul(bbar, parts[j].first, p);
            ZPoly A, B;
            hensel_pair(rest, abar, bbar, A, B);
            lifted.emplace_back(A, parts[i]);
            rest = B;
        }
        lifted.emplace_back(rest, parts.back());
    }

    std::vector<WorkFactor> out;
    for (auto& [H, part] : lifted) {
        const auto& [qbar, e] = part;
        if (e == 1) {
            out.push_back({H, Status::Certified});  // irreducible mod p
        } else if (fp_deg(qbar) == 1) {
            // repeated linear residual factor: recenter at the mod-p root and
            // re-enter the polygon machinery
            BigInt root = ((-qbar[0]) % p + p) % p;
            ZPoly shifted = z_translate(H, root);
            for (WorkFactor& wf : factor_rec(shifted, depth + 1)) {
                wf.poly = z_translate(wf.poly, -root);  // undo the recentering: U -> U - root
                out.push_back(wf);
            }
        } else {
            out.push_back({H, Status::Unverified});
        }
    }
    return out;
}

// h monic distinguished (all lower coefficient valuations >= 1) over Z/p^W.
std::vector<WorkFactor> factor_rec(ZPoly h, int depth) {
    std::vector<WorkFactor> out;
    if (h.deg() <= 0) return out;
    if (depth > kMaxDepth || h.W < kMinWorkingPrecision) {
        out.push_back({h, Status::Residual});
        return out;
    }
    const long p = h.p;

    // strip the T-power part
    int v = 0;
    while (v < h.deg() && h.c[static_cast<std::size_t>(v)] == 0) ++v;
    if (v > 0) {
        for (int k = 0; k < v; ++k) out.push_back({ZPoly{p, h.W, {BigInt(0), BigInt(1)}}, Status::Certified});
        h.c.erase(h.c.begin(), h.c.begin() + v);
    }
    int d = h.deg();
    if (d == 0) return out;
    if (d == 1) {
        out.push_back({h, Status::Certified});
        return out;
    }

    auto hull = newton_hull(h);
    const int v0 = hull.front().second;

    if (hull.size() == 2) {
        // single segment from (0, v0) to (d, 0)
        if (std::gcd(v0, d) == 1) {
            out.push_back({h, Status::Certified});  // polygon purity
            return out;
        }
        if (v0 % d == 0) {
            int s = v0 / d;
            if (h.W - s * d < kMinWorkingPrecision) {
                out.push_back({h, Status::Residual});
                return out;
            }
            ZPoly hhat = z_twist(h, s);
            for (WorkFactor& wf : factor_unit_twisted(hhat, depth)) {
                wf.poly = z_untwist(wf.poly, s);
                out.push_back(wf);
            }
            return out;
        }
        out.push_back({h, Status::Unverified});  // fractional slope, impure
        return out;
    }

    // several segments: split off an end segment with integer slope
    const auto& pl = hull[1];                  // leftmost interior vertex
    const auto& pr = hull[hull.size() - 2];    // rightmost interior vertex
    const int slope_l_num = v0 - pl.second, slope_l_den = pl.first;
    const int slope_r_num = pr.second, slope_r_den = d - pr.first;

    if (slope_r_num % slope_r_den == 0) {
        int s = slope_r_num / slope_r_den;
        if (h.W - s * d >= kMinWorkingPrecision) {
            ZPoly hhat = z_twist(h, s);
            FPoly fbar = z_mod_p(hhat);
            // fbar = U^{i1} * ebar with ebar(0) != 0
            std::size_t i1 = 0;
            while (i1 < fbar.size() && fbar[i1] == 0) ++i1;
            FPoly ubar(i1 + 1, 0);
            ubar[i1] = 1;
            FPoly ebar(fbar.begin() + static_cast<long>(i1), fbar.end());
            ZPoly A, B;
            hensel_pair(hhat, ubar, ebar, A, B);
            // B (degree d - i1) carries the slope-s part; the complement
            // comes back out of h by exact division.
            ZPoly HB = z_untwist(B, s);
            ZPoly q, r;
            z_divmod_monic(z_reduce(h, HB.W), HB, q, r);
            if (z_is_zero(r, kDivisibilitySlack)) {
                auto left = factor_rec(q, depth + 1);
                auto right = factor_rec(HB, depth + 1);
                out.insert(out.end(), left.begin(), left.end());
                out.insert(out.end(), right.begin(), right.end());
                return out;
            }
        }
    }
    if (slope_l_num % slope_l_den == 0) {
        int s = slope_l_num / slope_l_den;
        if (h.W - v0 >= kMinWorkingPrecision) {
            // reverse-and-scale: g(U) = sum_j (c_j p^{s j - v0}) U^{d-j} has a
            // unit leading coefficient, and its mod-p reduction is
            // U^{d-i1} * ebar; the lift of ebar reverses back to the
            // slope-s part of h.
            int Wn = h.W - v0;
            ZPoly g{p, Wn, std::vector<BigInt>(static_cast<std::size_t>(d + 1))};
            for (int j = 0; j <= d; ++j) {
                int shift = s * j - v0;
                BigInt cj = h.c[static_cast<std::size_t>(j)];
                BigInt scaled = shift >= 0 ? BigInt(cj * prime_power(p, shift)) : BigInt(cj / prime_power(p, -shift));
                g.c[static_cast<std::size_t>(d - j)] = scaled;
            }
            g = z_reduce(g, Wn);
            // monicize
            BigInt lead = g.c.back(), inv, m = g.modulus();
            mpz_invert(inv.get_mpz_t(), lead.get_mpz_t(), m.get_mpz_t());
            for (BigInt& e : g.c) {
                e *= inv;
                mpz_fdiv_r(e.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
            }
            FPoly gbar = z_mod_p(g);
            std::size_t i1 = 0;
            while (i1 < gbar.size() && gbar[i1] == 0) ++i1;
            if (i1 > 0 && i1 < gbar.size()) {
                FPoly ubar(i1 + 1, 0);
                ubar[i1] = 1;
                FPoly ebar(gbar.begin() + static_cast<long>(i1), gbar.end());
                ZPoly A, B;
                hensel_pair(g, ubar, ebar, A, B);
                // B has unit roots eta = p^s / theta; map back to the factor
                // with roots theta: H(T) = unit * T^{deg B} * B(p^s / T).
                int db = B.deg();
                ZPoly H{p, Wn, std::vector<BigInt>(static_cast<std::size_t>(db + 1))};
                for (int k = 0; k <= db; ++k) H.c[static_cast<std::size_t>(db - k)] = B.c[static_cast<std::size_t>(k)] * prime_power(p, s * k);
                H = z_reduce(H, Wn);
                BigInt lead2 = H.c.back(), inv2, m2 = H.modulus();
                mpz_invert(inv2.get_mpz_t(), lead2.get_mpz_t(), m2.get_mpz_t());
                for (BigInt& e : H.c) {
                    e *= inv2;
                    mpz_fdiv_r(e.get_mpz_t(), e.get_mpz_t(), m2.get_mpz_t());
                }
                ZPoly q, r;
                z_divmod_monic(z_reduce(h, Wn), H, q, r);
                if (z_is_zero(r, kDivisibilitySlack)) {
                    auto left = factor_rec(q, depth + 1);
                    auto right = factor_rec(H, depth + 1);
                    out.insert(out.end(), left.begin(), left.end());
                    out.insert(out.end(), right.begin(), right.end());
                    return out;
                }
            }
        }
    }
    out.push_back({h, Status::Unverified});
    return out;
}

DistinguishedPoly z_to_distinguished(const ZPoly& f) {
    std::vector<BigInt> lower(f.c.begin(), f.c.end() - 1);
    return DistinguishedPoly(f.p, f.W, std::move(lower));
}

}  // namespace

bool certify_irreducible(const DistinguishedPoly& g) {
    const int d = g.degree();
    if (d < 1) return false;
    if (d == 1) return true;
    ZPoly h{g.prime(), g.p_precision(), {}};
    for (int i = 0; i < d; ++i) h.c.push_back(g.lower_residue(i));
    h.c.emplace_back(1);
    if (h.c[0] == 0) return false;  // divisible by T
    auto hull = newton_hull(h);
    return hull.size() == 2 && std::gcd(hull.front().second, d) == 1;
}

FactorResult factor_distinguished(const DistinguishedPoly& f0) {
    if (f0.degree() < 1) throw Error("factor_distinguished: degree must be >= 1");
    const long p = f0.prime();
    const int N = f0.p_precision();

    ZPoly h{p, N, {}};
    for (int i = 0; i < f0.degree(); ++i) h.c.push_back(f0.lower_residue(i));
    h.c.emplace_back(1);

    std::vector<WorkFactor> raw = factor_rec(h, 0);

    FactorResult out;
    out.verified_p_precision = N;
    for (const WorkFactor& wf : raw) out.verified_p_precision = std::min(out.verified_p_precision, wf.poly.W);

    // merge equal factors (compared at the common precision), deterministic order
    std::vector<WorkFactor> merged;
    std::vector<int> mult;
    for (const WorkFactor& wf : raw) {
        if (wf.status == Status::Residual) continue;
        bool found = false;
        for (std::size_t i = 0; i < merged.size(); ++i) {
            const ZPoly& a = merged[i].poly;
            if (a.deg() != wf.poly.deg()) continue;
            int Wc = std::min(a.W, wf.poly.W);
            BigInt m = prime_power(p, Wc);
            bool eq = true;
            for (std::size_t k = 0; k < a.c.size() && eq; ++k) {
                BigInt x = a.c[k] % m, y = wf.poly.c[k] % m;
                if (x != y) eq = false;
            }
            if (eq) {
                ++mult[i];
                if (wf.status == Status::Unverified) merged[i].status = Status::Unverified;
                found = true;
                break;
            }
        }
        if (!found) {
            merged.push_back(wf);
            mult.push_back(1);
        }
    }
    std::vector<std::size_t> order(merged.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (merged[a].poly.deg() != merged[b].poly.deg()) return merged[a].poly.deg() < merged[b].poly.deg();
        return merged[a].poly.c < merged[b].poly.c;
    });
    for (std::size_t i : order)
        out.factors.push_back({z_to_distinguished(merged[i].poly), mult[i], merged[i].status == Status::Certified});
    for (const WorkFactor& wf : raw)
        if (wf.status == Status::Residual) out.residuals.push_back(z_to_distinguished(wf.poly));

    // re-multiplication check at the verified precision
    {
        int Wc = out.verified_p_precision;
        ZPoly prod{p, Wc, {BigInt(1)}};
        for (std::size_t i = 0; i < out.factors.size(); ++i) {
            ZPoly zf{p, Wc, {}};
            const DistinguishedPoly& dp = out.factors[i].poly;
            for (int k = 0; k < dp.degree(); ++k) zf.c.push_back(dp.lower_residue(k));
            zf.c.emplace_back(1);
            zf = z_reduce(zf, Wc);
            for (int e = 0; e < out.factors[i].multiplicity; ++e) prod = z_mul(prod, zf);
        }
        for (const DistinguishedPoly& dp : out.residuals) {
            ZPoly zf{p, Wc, {}};
            for (int k = 0; k < dp.degree(); ++k) zf.c.push_back(dp.lower_residue(k));
            zf.c.emplace_back(1);
            prod = z_mul(prod, z_reduce(zf, Wc));
        }
        ZPoly target = z_reduce(h, Wc);
        ZPoly diff{p, Wc, std::vector<BigInt>(std::max(prod.c.size(), target.c.size()), BigInt(0))};
        BigInt m = prime_power(p, Wc);
        for (std::size_t i = 0; i < diff.c.size(); ++i) {
            BigInt a = i < prod.c.size() ? prod.c[i] : BigInt(0);
            BigInt b = i < target.c.size() ? target.c[i] : BigInt(0);
            BigInt x = a - b;
            mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
            diff.c[i] = x;
        }
        if (!z_is_zero(diff, kDivisibilitySlack)) throw Error("factor_distinguished: product check failed");
    }
    return out;
}

}  // namespace charspec
