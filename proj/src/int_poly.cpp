#include "charspec/int_poly.hpp"

#include <sstream>

namespace charspec {

IntPoly IntPoly::operator+(const IntPoly& o) const {
    std::vector<BigInt> r(std::max(c.size(), o.c.size()), BigInt(0));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < c.size()) r[i] += c[i];
        if (i < o.c.size()) r[i] += o.c[i];
    }
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
    std::vector<BigInt> r(std::max(c.size(), o.c.size()), BigInt(0));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < c.size()) r[i] += c[i];
        if (i < o.c.size()) r[i] -= o.c[i];
    }
    return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
    if (c.empty() || o.c.empty()) return IntPoly();
    std::vector<BigInt> r(c.size() + o.c.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < o.c.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), c[i].get_mpz_t(), o.c[j].get_mpz_t());
    return IntPoly(std::move(r));
}

IntPoly IntPoly::pow(int e) const {
    IntPoly r = IntPoly::constant(1);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

PowerSeries IntPoly::to_series(long prime, int p_precision, int t_precision) const {
    if (degree() >= t_precision) throw DegreeCapExceeded("IntPoly: degree above T-precision");
    return PowerSeries::from_coeffs(prime, p_precision, t_precision, c);
}

DistinguishedPoly IntPoly::to_distinguished(long prime, int p_precision) const {
    if (degree() < 0) throw Error("IntPoly: zero polynomial is not distinguished");
    const BigInt m = prime_power(prime, p_precision);
    BigInt lead = c.back() % m;
    if (lead < 0) lead += m;
    if (lead != 1) throw Error("IntPoly: not monic modulo p^N");
    std::vector<BigInt> lower(c.begin(), c.end() - 1);
    return DistinguishedPoly(prime, p_precision, std::move(lower));
}

std::string IntPoly::to_string() const {
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const BigInt& e = c[static_cast<std::size_t>(i)];
        if (e == 0) continue;
        BigInt a = e;
        if (!first)
            os << (a < 0 ? " - " : " + ");
        else if (a < 0)
            os << "-";
        if (a < 0) a = -a;
        if (i == 0 || a != 1) os << a.get_str();
        if (i >= 1) {
            if (a != 1) os << "*";
            os << "T";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace charspec
