#pragma once

#include <optional>
#include <vector>

#include "charspec/common.hpp"

namespace charspec {

/// Element of Z_p known modulo p^N. Immutable after construction; the residue
/// is always normalized to [0, p^N). A residue of 0 means "zero to working
/// precision" and is never promoted to an exact zero.
class PAdicInt {
  public:
    PAdicInt(long prime, int precision, BigInt value);

    long prime() const { return prime_; }
    int precision() const { return precision_; }
    const BigInt& residue() const { return residue_; }

    /// Largest k <= N with p^k | residue; nullopt flags zero-to-precision.
    std::optional<int> valuation() const;
    bool is_zero_at_precision() const { return residue_ == 0; }
    bool is_unit() const;

    /// Two-sided inverse modulo p^N; throws NotAUnit when valuation > 0.
    PAdicInt unit_inverse() const;

    /// Same value viewed at a lower precision. Raising precision is not
    /// possible (the missing digits are gone) and throws.
    PAdicInt truncated(int precision) const;

    PAdicInt operator+(const PAdicInt& o) const;
    PAdicInt operator-(const PAdicInt& o) const;
    PAdicInt operator*(const PAdicInt& o) const;
    PAdicInt operator-() const;

    /// Exact residue equality; requires matching prime and precision.
    bool operator==(const PAdicInt& o) const;
    bool operator!=(const PAdicInt& o) const { return !(*this == o); }

  private:
    long prime_;
    int precision_;
    BigInt residue_;
};

std::optional<int> val_p(const PAdicInt& x);
PAdicInt invert_unit(const PAdicInt& x);

/// Rectangular matrix over Z_p; all entries share (prime, precision).
class PAdicMatrix {
  public:
    PAdicMatrix(long prime, int precision, std::size_t rows, std::size_t cols);

    long prime() const { return prime_; }
    int precision() const { return precision_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    PAdicInt at(std::size_t i, std::size_t j) const;
    const BigInt& residue_at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    void set(std::size_t i, std::size_t j, const BigInt& value);
    void set(std::size_t i, std::size_t j, const PAdicInt& value);

    PAdicMatrix operator*(const PAdicMatrix& o) const;

  private:
    long prime_;
    int precision_;
    std::size_t rows_, cols_;
    std::vector<BigInt> a_;
};

/// Smith-form pivot valuations. When certified, the sum equals v_p(det) and
/// the cokernel has exactly p^sum elements; an uncertified result means some
/// pivot was indistinguishable from zero at working precision.
struct ElementaryDivisors {
    std::vector<int> valuations;  // nondecreasing, each <= precision
    bool certified = false;

    long sum() const {
        long s = 0;
        for (int v : valuations) s += v;
        return s;
    }
};

/// p-adic Gaussian elimination with minimal-valuation pivoting, ties broken
/// by lowest (row, col). Square matrices only.
ElementaryDivisors elementary_divisors(const PAdicMatrix& m);

}  // namespace charspec
