#include "charspec/power_series.hpp"

#include <algorithm>
#include <sstream>

namespace charspec {

PowerSeries::PowerSeries(long prime, int p_precision, int t_precision)
    : prime_(prime), pprec_(p_precision), tprec_(t_precision), c_(static_cast<std::size_t>(t_precision), BigInt(0)) {
    if (prime_ < 3 || !is_small_prime(prime_)) throw Error("PowerSeries: prime must be an odd prime >= 3");
    if (pprec_ < 1 || tprec_ < 1) throw Error("PowerSeries: precisions must be >= 1");
}

PowerSeries PowerSeries::constant(long prime, int p_precision, int t_precision, const BigInt& c) {
    PowerSeries f(prime, p_precision, t_precision);
    BigInt m = prime_power(prime, p_precision);
    f.c_[0] = c;
    mpz_fdiv_r(f.c_[0].get_mpz_t(), f.c_[0].get_mpz_t(), m.get_mpz_t());
    return f;
}

PowerSeries PowerSeries::monomial(long prime, int p_precision, int t_precision, int degree, const BigInt& c) {
    if (degree < 0 || degree >= t_precision) throw DegreeCapExceeded("monomial: degree outside T-precision window");
    PowerSeries f(prime, p_precision, t_precision);
    BigInt m = prime_power(prime, p_precision);
    f.c_[static_cast<std::size_t>(degree)] = c;
    auto& e = f.c_[static_cast<std::size_t>(degree)];
    mpz_fdiv_r(e.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return f;
}

PowerSeries PowerSeries::from_coeffs(long prime, int p_precision, int t_precision, std::vector<BigInt> coeffs) {
    if (static_cast<int>(coeffs.size()) > t_precision) throw DegreeCapExceeded("from_coeffs: more coefficients than T-precision");
    PowerSeries f(prime, p_precision, t_precision);
    BigInt m = prime_power(prime, p_precision);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        f.c_[i] = std::move(coeffs[i]);
        mpz_fdiv_r(f.c_[i].get_mpz_t(), f.c_[i].get_mpz_t(), m.get_mpz_t());
    }
    return f;
}

PAdicInt PowerSeries::coeff(int i) const {
    if (i < 0 || i >= tprec_) throw Error("PowerSeries::coeff: index out of range");
    return PAdicInt(prime_, pprec_, c_[static_cast<std::size_t>(i)]);
}

bool PowerSeries::is_unit() const { return mpz_fdiv_ui(c_[0].get_mpz_t(), static_cast<unsigned long>(prime_)) != 0; }

bool PowerSeries::is_zero_at_precision(int slack) const {
    for (const BigInt& e : c_)
        if (residue_valuation(e, prime_, pprec_) < pprec_ - slack) return false;
    return true;
}

int PowerSeries::degree_at_precision() const {
    for (int i = tprec_ - 1; i >= 0; --i)
        if (c_[static_cast<std::size_t>(i)] != 0) return i;
    return -1;
}

int PowerSeries::min_valuation() const {
    int best = pprec_;
    for (const BigInt& e : c_) {
        best = std::min(best, residue_valuation(e, prime_, pprec_));
        if (best == 0) break;
    }
    return best;
}

int PowerSeries::t_order() const {
    for (int i = 0; i < tprec_; ++i)
        if (c_[static_cast<std::size_t>(i)] != 0) return i;
    return tprec_;
}

namespace {
void check_compatible(const PowerSeries& a, const PowerSeries& b) {
    if (a.prime() != b.prime() || a.p_precision() != b.p_precision() || a.t_precision() != b.t_precision())
        throw IncompatiblePrecision("PowerSeries: operands disagree on (prime, N, D)");
}
}  // namespace

PowerSeries PowerSeries::operator+(const PowerSeries& o) const {
    check_compatible(*this, o);
    PowerSeries out(prime_, pprec_, tprec_);
    BigInt m = prime_power(prime_, pprec_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        out.c_[i] = c_[i] + o.c_[i];
        mpz_fdiv_r(out.c_[i].get_mpz_t(), out.c_[i].get_mpz_t(), m.get_mpz_t());
    }
    return out;
}

PowerSeries PowerSeries::operator-(const PowerSeries& o) const {
    check_compatible(*this, o);
    PowerSeries out(prime_, pprec_, tprec_);
    BigInt m = prime_power(prime_, pprec_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        out.c_[i] = c_[i] - o.c_[i];
        mpz_fdiv_r(out.c_[i].get_mpz_t(), out.c_[i].get_mpz_t(), m.get_mpz_t());
    }
    return out;
}

PowerSeries PowerSeries::operator*(const PowerSeries& o) const {
    check_compatible(*this, o);
    PowerSeries out(prime_, pprec_, tprec_);
    BigInt m = prime_power(prime_, pprec_);
    BigInt acc;
    for (int k = 0; k < tprec_; ++k) {
        acc = 0;
        for (int i = std::max(0, k - (tprec_ - 1)); i <= k; ++i)
            mpz_addmul(acc.get_mpz_t(), c_[static_cast<std::size_t>(i)].get_mpz_t(), o.c_[static_cast<std::size_t>(k - i)].get_mpz_t());
        mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
        out.c_[static_cast<std::size_t>(k)] = acc;
    }
    return out;
}

PowerSeries PowerSeries::operator-() const {
    PowerSeries out(prime_, pprec_, tprec_);
    BigInt m = prime_power(prime_, pprec_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        out.c_[i] = -c_[i];
        mpz_fdiv_r(out.c_[i].get_mpz_t(), out.c_[i].get_mpz_t(), m.get_mpz_t());
    }
    return out;
}

PowerSeries PowerSeries::scaled(const BigInt& c) const {
    PowerSeries out(prime_, pprec_, tprec_);
    BigInt m = prime_power(prime_, pprec_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        out.c_[i] = c_[i] * c;
        mpz_fdiv_r(out.c_[i].get_mpz_t(), out.c_[i].get_mpz_t(), m.get_mpz_t());
    }
    return out;
}

PowerSeries PowerSeries::inverse() const {
    if (!is_unit()) throw NotAUnit("PowerSeries::inverse: constant term not a unit");
    PowerSeries out(prime_, pprec_, tprec_);
    BigInt m = prime_power(prime_, pprec_);
    BigInt v0;
    mpz_invert(v0.get_mpz_t(), c_[0].get_mpz_t(), m.get_mpz_t());
    out.c_[0] = v0;
    BigInt acc;
    for (int k = 1; k < tprec_; ++k) {
        acc = 0;
        for (int j = 1; j <= k; ++j)
            mpz_addmul(acc.get_mpz_t(), c_[static_cast<std::size_t>(j)].get_mpz_t(), out.c_[static_cast<std::size_t>(k - j)].get_mpz_t());
        acc = -acc * v0;
        mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
        out.c_[static_cast<std::size_t>(k)] = acc;
    }
    return out;
}

PowerSeries PowerSeries::divided_by_p_power(int mu) const {
    if (mu == 0) return *this;
    if (mu < 0 || mu >= pprec_) throw Error("divided_by_p_power: exponent out of range");
    BigInt pv = prime_power(prime_, mu);
    PowerSeries out(prime_, pprec_, tprec_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (mpz_divisible_p(c_[i].get_mpz_t(), pv.get_mpz_t()) == 0)
            throw Error("divided_by_p_power: coefficient valuation below exponent");
        out.c_[i] = c_[i] / pv;
    }
    return out;
}

PowerSeries PowerSeries::truncated(int p_precision, int t_precision) const {
    if (p_precision > pprec_ || t_precision > tprec_) throw IncompatiblePrecision("PowerSeries::truncated: cannot raise precision");
    PowerSeries out(prime_, p_precision, t_precision);
    BigInt m = prime_power(prime_, p_precision);
    for (int i = 0; i < t_precision; ++i) {
        out.c_[static_cast<std::size_t>(i)] = c_[static_cast<std::size_t>(i)];
        auto& e = out.c_[static_cast<std::size_t>(i)];
        mpz_fdiv_r(e.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    }
    return out;
}

bool PowerSeries::operator==(const PowerSeries& o) const {
    check_compatible(*this, o);
    return c_ == o.c_;
}

std::string PowerSeries::to_string(int max_terms) const {
    std::ostringstream os;
    bool first = true;
    int printed = 0;
    for (int i = 0; i < tprec_; ++i) {
        const BigInt& e = c_[static_cast<std::size_t>(i)];
        if (e == 0) continue;
        if (max_terms >= 0 && printed >= max_terms) {
            os << (first ? "..." : " + ...");
            return os.str();
        }
        if (!first) os << " + ";
        if (i == 0)
            os << e.get_str();
        else {
            if (e != 1) os << e.get_str() << "*";
            os << "T";
            if (i > 1) os << "^" << i;
        }
        first = false;
        ++printed;
    }
    if (first) os << "0";
    return os.str();
}

DistinguishedPoly::DistinguishedPoly(long prime, int p_precision, std::vector<BigInt> lower)
    : prime_(prime), pprec_(p_precision), lower_(std::move(lower)) {
    if (prime_ < 3 || !is_small_prime(prime_)) throw Error("DistinguishedPoly: prime must be an odd prime >= 3");
    if (pprec_ < 1) throw Error("DistinguishedPoly: precision must be >= 1");
    BigInt m = prime_power(prime_, pprec_);
    for (BigInt& e : lower_) {
        mpz_fdiv_r(e.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
        if (mpz_fdiv_ui(e.get_mpz_t(), static_cast<unsigned long>(prime_)) != 0)
            throw Error("DistinguishedPoly: lower coefficient is a unit");
    }
}

PAdicInt DistinguishedPoly::coeff(int i) const {
    if (i < 0 || i > degree()) throw Error("DistinguishedPoly::coeff: index out of range");
    if (i == degree()) return PAdicInt(prime_, pprec_, 1);
    return PAdicInt(prime_, pprec_, lower_[static_cast<std::size_t>(i)]);
}

PowerSeries DistinguishedPoly::to_series(int t_precision) const {
    if (degree() >= t_precision) throw DegreeCapExceeded("DistinguishedPoly::to_series: degree above T-precision");
    std::vector<BigInt> coeffs = lower_;
    coeffs.push_back(1);
    return PowerSeries::from_coeffs(prime_, pprec_, t_precision, std::move(coeffs));
}

DistinguishedPoly DistinguishedPoly::truncated(int p_precision) const {
    if (p_precision > pprec_) throw IncompatiblePrecision("DistinguishedPoly::truncated: cannot raise precision");
    return DistinguishedPoly(prime_, p_precision, lower_);
}

bool DistinguishedPoly::operator==(const DistinguishedPoly& o) const {
    if (prime_ != o.prime_ || pprec_ != o.pprec_) throw IncompatiblePrecision("DistinguishedPoly: comparing across precisions");
    return lower_ == o.lower_;
}

std::string DistinguishedPoly::to_string() const {
    std::ostringstream os;
    int n = degree();
    if (n == 0) return "1";
    os << "T";
    if (n > 1) os << "^" << n;
    for (int i = n - 1; i >= 0; --i) {
        const BigInt& e = lower_[static_cast<std::size_t>(i)];
        if (e == 0) continue;
        os << " + ";
        if (e != 1 || i == 0) {
            os << e.get_str();
            if (i > 0) os << "*";
        }
        if (i >= 1) {
            os << "T";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

namespace {

// q and r with g = q*f + r, deg r < n, for f with a unit coefficient at index
// n and all lower coefficients in (p). Fixed point of
//   q = Uinv * shift_down_n(g - q * f_low)
// where f = f_low + T^n * U; each pass multiplies the correction by f_low,
// whose coefficients all have valuation >= 1, so the iteration stabilizes
// after at most N passes.
struct SeriesDivision {
    PowerSeries quotient;
    PowerSeries remainder;
};

PowerSeries shift_down(const PowerSeries& f, int n) {
    std::vector<BigInt> c(static_cast<std::size_t>(f.t_precision()), BigInt(0));
    for (int i = n; i < f.t_precision(); ++i) c[static_cast<std::size_t>(i - n)] = f.residue(i);
    return PowerSeries::from_coeffs(f.prime(), f.p_precision(), f.t_precision(), std::move(c));
}

PowerSeries low_part(const PowerSeries& f, int n) {
    std::vector<BigInt> c(static_cast<std::size_t>(f.t_precision()), BigInt(0));
    for (int i = 0; i < n && i < f.t_precision(); ++i) c[static_cast<std::size_t>(i)] = f.residue(i);
    return PowerSeries::from_coeffs(f.prime(), f.p_precision(), f.t_precision(), std::move(c));
}

SeriesDivision divide_by_unit_index(const PowerSeries& g, const PowerSeries& f, int n) {
    const PowerSeries f_low = low_part(f, n);
    const PowerSeries unit_inv = shift_down(f, n).inverse();
    PowerSeries q(g.prime(), g.p_precision(), g.t_precision());
    const bool low_zero = f_low.is_zero_at_precision(0);
    for (int pass = 0; pass <= g.p_precision(); ++pass) {
        PowerSeries y = g - q * f_low;
        PowerSeries qnew = unit_inv * shift_down(y, n);
        if (qnew == q) break;
        q = qnew;
        if (low_zero) break;
    }
    PowerSeries r = low_part(g - q * f_low, n);
    return {q, r};
}

}  // namespace

WeierstrassData weierstrass_prepare(const PowerSeries& f) {
    const int mu = f.min_valuation();
    if (mu >= f.p_precision()) throw ZeroAtPrecision("weierstrass_prepare: input is zero at working precision");
    const PowerSeries g = f.divided_by_p_power(mu);

    int n = -1;
    for (int i = 0; i < g.t_precision(); ++i)
        if (g.coeff(i).is_unit()) {
            n = i;
            break;
        }
    if (n < 0) throw DegreeCapExceeded("weierstrass_prepare: no unit coefficient below T-precision");

    // T^n = Q*g + R with deg R < n; then f0 = T^n - R is distinguished and
    // u = Q^{-1} satisfies g = u*f0 exactly in the truncated ring.
    SeriesDivision d = divide_by_unit_index(PowerSeries::monomial(g.prime(), g.p_precision(), g.t_precision(), n), g, n);
    std::vector<BigInt> lower(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) lower[static_cast<std::size_t>(i)] = (-d.remainder.coeff(i)).residue();
    DistinguishedPoly f0(g.prime(), g.p_precision(), std::move(lower));
    PowerSeries u = d.quotient.inverse();

    WeierstrassData out{mu, u, f0, f.p_precision() - mu, f.t_precision() - n};
    return out;
}

DivisionResult weierstrass_divide(const PowerSeries& g, const DistinguishedPoly& f0) {
    if (g.prime() != f0.prime()) throw IncompatiblePrecision("weierstrass_divide: prime mismatch");
    const int n = f0.degree();
    const int D = g.t_precision();
    const int N = std::min(g.p_precision(), f0.p_precision());
    const long p = g.prime();
    const BigInt m = prime_power(p, N);

    std::vector<BigInt> rem(g.residues());
    for (BigInt& e : rem) mpz_fdiv_r(e.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    std::vector<BigInt> quo(static_cast<std::size_t>(D), BigInt(0));
    BigInt t;
    for (int i = D - 1; i >= n; --i) {
        BigInt lead = rem[static_cast<std::size_t>(i)];
        if (lead == 0) continue;
        quo[static_cast<std::size_t>(i - n)] = lead;
        rem[static_cast<std::size_t>(i)] = 0;
        for (int j = 0; j < n; ++j) {
            t = rem[static_cast<std::size_t>(i - n + j)] - lead * f0.lower_residue(j);
            mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
            rem[static_cast<std::size_t>(i - n + j)] = t;
        }
    }
    return {PowerSeries::from_coeffs(p, N, D, std::move(quo)), PowerSeries::from_coeffs(p, N, D, std::move(rem))};
}

int multiplicity(const PowerSeries& f, const DistinguishedPoly& g, int slack) {
    if (f.is_zero_at_precision()) throw ZeroAtPrecision("multiplicity: series is zero at working precision");
    if (g.degree() < 1) throw Error("multiplicity: divisor must have degree >= 1");
    PowerSeries cur = f;
    int k = 0;
    while (true) {
        if (cur.is_zero_at_precision()) break;
        DivisionResult d = weierstrass_divide(cur, g);
        if (!d.remainder.is_zero_at_precision(slack)) break;
        cur = d.quotient;
        ++k;
        if (k > f.t_precision()) throw Error("multiplicity: runaway division");
    }
    return k;
}

}  // namespace charspec
