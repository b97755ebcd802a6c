#include "arbordyn/zpoly.hpp"

#include <stdexcept>

namespace arbordyn {

ZPoly operator+(const ZPoly& a, const ZPoly& b) {
    std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < a.c_.size()) c[i] += a.c_[i];
        if (i < b.c_.size()) c[i] += b.c_[i];
    }
    return ZPoly(std::move(c));
}

ZPoly operator-(const ZPoly& a, const ZPoly& b) {
    std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < a.c_.size()) c[i] += a.c_[i];
        if (i < b.c_.size()) c[i] -= b.c_[i];
    }
    return ZPoly(std::move(c));
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return ZPoly();
    std::vector<BigInt> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return ZPoly(std::move(c));
}

ZPoly ZPoly::operator*(const BigInt& s) const {
    std::vector<BigInt> c(c_);
    for (auto& v : c) v *= s;
    return ZPoly(std::move(c));
}

ZPoly ZPoly::operator-() const { return *this * BigInt(-1); }

ZPoly ZPoly::derivative() const {
    if (c_.size() <= 1) return ZPoly();
    std::vector<BigInt> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * static_cast<long>(i);
    return ZPoly(std::move(c));
}

BigInt ZPoly::eval(const BigInt& v) const {
    BigInt r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = r * v + c_[i];
    return r;
}

BigRat ZPoly::eval(const BigRat& v) const {
    BigRat r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = r * v + BigRat(c_[i]);
    return r;
}

ZPoly compose(const ZPoly& f, const ZPoly& g) {
    ZPoly r;
    for (int i = f.degree(); i >= 0; --i) r = r * g + ZPoly::constant(f[static_cast<size_t>(i)]);
    return r;
}

ZPoly iterate(const ZPoly& f, unsigned n) {
    ZPoly r = ZPoly::x();
    for (unsigned i = 0; i < n; ++i) r = compose(f, r);
    return r;
}

// Resultant as the Bareiss determinant of the Sylvester matrix. Exact and
// simple; the degrees in this project stay small (disc of iterates up to
// degree 8 and invariant checks on small random pairs).
BigInt resultant(const ZPoly& f, const ZPoly& g) {
    int m = f.degree(), n = g.degree();
    if (m < 0 || n < 0) return 0;
    if (m == 0 && n == 0) return 1;
    size_t dim = static_cast<size_t>(m + n);
    std::vector<std::vector<BigInt>> a(dim, std::vector<BigInt>(dim, BigInt(0)));
    for (int row = 0; row < n; ++row)
        for (int k = 0; k <= m; ++k) a[static_cast<size_t>(row)][static_cast<size_t>(row + k)] = f[static_cast<size_t>(m - k)];
    for (int row = 0; row < m; ++row)
        for (int k = 0; k <= n; ++k) a[static_cast<size_t>(n + row)][static_cast<size_t>(row + k)] = g[static_cast<size_t>(n - k)];

    BigInt prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < dim; ++k) {
        if (a[k][k] == 0) {
            size_t pivot = k + 1;
            while (pivot < dim && a[pivot][k] == 0) ++pivot;
            if (pivot == dim) return 0;
            std::swap(a[k], a[pivot]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < dim; ++i) {
            for (size_t j = k + 1; j < dim; ++j) {
                BigInt t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign > 0 ? a[dim - 1][dim - 1] : -a[dim - 1][dim - 1];
}

BigInt discriminant(const ZPoly& f) {
    int d = f.degree();
    if (d < 1) throw std::invalid_argument("discriminant: constant polynomial");
    BigInt res = resultant(f, f.derivative());
    BigInt q;
    mpz_divexact(q.get_mpz_t(), res.get_mpz_t(), f.lc().get_mpz_t());
    long e = static_cast<long>(d) * (d - 1) / 2;
    return (e % 2 == 0) ? q : -q;
}

}  // namespace arbordyn
