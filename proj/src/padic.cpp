#include "charspec/padic.hpp"

#include <algorithm>

namespace charspec {

PAdicInt::PAdicInt(long prime, int precision, BigInt value) : prime_(prime), precision_(precision), residue_(std::move(value)) {
    if (prime_ < 3 || !is_small_prime(prime_)) throw Error("PAdicInt: prime must be an odd prime >= 3");
    if (precision_ < 1) throw Error("PAdicInt: precision must be >= 1");
    BigInt m = prime_power(prime_, precision_);
    mpz_fdiv_r(residue_.get_mpz_t(), residue_.get_mpz_t(), m.get_mpz_t());
}

std::optional<int> PAdicInt::valuation() const {
    int v = residue_valuation(residue_, prime_, precision_);
    if (v >= precision_) return std::nullopt;
    return v;
}

bool PAdicInt::is_unit() const {
    return mpz_fdiv_ui(residue_.get_mpz_t(), static_cast<unsigned long>(prime_)) != 0;
}

PAdicInt PAdicInt::unit_inverse() const {
    if (!is_unit()) throw NotAUnit("invert_unit: element has positive valuation");
    BigInt m = prime_power(prime_, precision_);
    BigInt inv;
    if (mpz_invert(inv.get_mpz_t(), residue_.get_mpz_t(), m.get_mpz_t()) == 0)
        throw NotAUnit("invert_unit: no inverse modulo p^N");
    return PAdicInt(prime_, precision_, inv);
}

PAdicInt PAdicInt::truncated(int precision) const {
    if (precision > precision_) throw IncompatiblePrecision("truncated: cannot raise precision");
    return PAdicInt(prime_, precision, residue_);
}

namespace {
int common_precision(const PAdicInt& a, const PAdicInt& b) {
    if (a.prime() != b.prime()) throw IncompatiblePrecision("PAdicInt: prime mismatch");
    return std::min(a.precision(), b.precision());
}
}  // namespace

PAdicInt PAdicInt::operator+(const PAdicInt& o) const {
    return PAdicInt(prime_, common_precision(*this, o), residue_ + o.residue_);
}

PAdicInt PAdicInt::operator-(const PAdicInt& o) const {
    return PAdicInt(prime_, common_precision(*this, o), residue_ - o.residue_);
}

PAdicInt PAdicInt::operator*(const PAdicInt& o) const {
    return PAdicInt(prime_, common_precision(*this, o), residue_ * o.residue_);
}

PAdicInt PAdicInt::operator-() const { return PAdicInt(prime_, precision_, -residue_); }

bool PAdicInt::operator==(const PAdicInt& o) const {
    if (prime_ != o.prime_ || precision_ != o.precision_) throw IncompatiblePrecision("PAdicInt: comparing across precisions");
    return residue_ == o.residue_;
}

std::optional<int> val_p(const PAdicInt& x) { return x.valuation(); }

PAdicInt invert_unit(const PAdicInt& x) { return x.unit_inverse(); }

PAdicMatrix::PAdicMatrix(long prime, int precision, std::size_t rows, std::size_t cols)
    : prime_(prime), precision_(precision), rows_(rows), cols_(cols), a_(rows * cols, BigInt(0)) {
    if (precision_ < 1) throw Error("PAdicMatrix: precision must be >= 1");
}

PAdicInt PAdicMatrix::at(std::size_t i, std::size_t j) const { return PAdicInt(prime_, precision_, a_[i * cols_ + j]); }

void PAdicMatrix::set(std::size_t i, std::size_t j, const BigInt& value) {
    BigInt m = prime_power(prime_, precision_);
    BigInt& e = a_[i * cols_ + j];
    e = value;
    mpz_fdiv_r(e.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
}

void PAdicMatrix::set(std::size_t i, std::size_t j, const PAdicInt& value) {
    if (value.prime() != prime_) throw IncompatiblePrecision("PAdicMatrix: prime mismatch");
    if (value.precision() < precision_) throw IncompatiblePrecision("PAdicMatrix: entry precision too low");
    set(i, j, value.residue());
}

PAdicMatrix PAdicMatrix::operator*(const PAdicMatrix& o) const {
    if (prime_ != o.prime_ || precision_ != o.precision_) throw IncompatiblePrecision("PAdicMatrix: operand mismatch");
    if (cols_ != o.rows_) throw Error("PAdicMatrix: dimension mismatch");
    PAdicMatrix out(prime_, precision_, rows_, o.cols_);
    BigInt m = prime_power(prime_, precision_);
    BigInt acc;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < o.cols_; ++j) {
            acc = 0;
            for (std::size_t k = 0; k < cols_; ++k) mpz_addmul(acc.get_mpz_t(), a_[i * cols_ + k].get_mpz_t(), o.a_[k * o.cols_ + j].get_mpz_t());
            mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
            out.a_[i * o.cols_ + j] = acc;
        }
    return out;
}

ElementaryDivisors elementary_divisors(const PAdicMatrix& m) {
    if (m.rows() != m.cols()) throw Error("elementary_divisors: matrix must be square");
    const long p = m.prime();
    const int N = m.precision();
    const std::size_t n = m.rows();
    const BigInt mod = prime_power(p, N);

    std::vector<BigInt> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m.residue_at(i, j);

    ElementaryDivisors out;
    out.certified = true;
    BigInt t, f;
    for (std::size_t s = 0; s < n; ++s) {
        // Minimal-valuation pivot, ties by lowest (row, col).
        int best = N + 1;
        std::size_t pi = s, pj = s;
        for (std::size_t i = s; i < n; ++i)
            for (std::size_t j = s; j < n; ++j) {
                int v = residue_valuation(a[i * n + j], p, N);
                if (v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (best >= N) {
            // Remaining block is zero at working precision: the tail divisors
            // cannot be told apart from p^N. Report them at the cap, uncertified.
            for (std::size_t r = s; r < n; ++r) out.valuations.push_back(N);
            out.certified = false;
            break;
        }
        if (pi != s)
            for (std::size_t j = 0; j < n; ++j) std::swap(a[s * n + j], a[pi * n + j]);
        if (pj != s)
            for (std::size_t i = 0; i < n; ++i) std::swap(a[i * n + s], a[i * n + pj]);

        const int v = best;
        // pivot = p^v * u with u a unit; divide rows/cols through by the unit part.
        BigInt pv = prime_power(p, v);
        BigInt u = a[s * n + s] / pv;
        BigInt uinv;
        mpz_invert(uinv.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());

        for (std::size_t i = s + 1; i < n; ++i) {
            BigInt& lead = a[i * n + s];
            if (lead == 0) continue;
            f = (lead / pv) * uinv;  // exact: v is minimal in the block
            mpz_fdiv_r(f.get_mpz_t(), f.get_mpz_t(), mod.get_mpz_t());
            for (std::size_t j = s; j < n; ++j) {
                t = a[i * n + j] - f * a[s * n + j];
                mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), mod.get_mpz_t());
                a[i * n + j] = t;
            }
        }
        for (std::size_t j = s + 1; j < n; ++j) {
            BigInt& lead = a[s * n + j];
            if (lead == 0) continue;
            f = (lead / pv) * uinv;
            mpz_fdiv_r(f.get_mpz_t(), f.get_mpz_t(), mod.get_mpz_t());
            for (std::size_t i = s; i < n; ++i) {
                t = a[i * n + j] - f * a[i * n + s];
                mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), mod.get_mpz_t());
                a[i * n + j] = t;
            }
        }
        out.valuations.push_back(v);
    }
    return out;
}

}  // namespace charspec
