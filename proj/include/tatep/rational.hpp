#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

namespace tatep {

using Rational = mpq_class;

/// Parses "p/q", "p" or "-p/q". Decimal points are rejected.
Rational parse_rational(const std::string& s);

/// Canonical "p/q" (or "p" when q = 1).
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

/// Exact Gaussian rational a + b i.
struct ComplexQ {
    Rational re, im;

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_one() const { return re == 1 && sgn(im) == 0; }
    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    friend bool operator==(const ComplexQ& a, const ComplexQ& b) { return a.re == b.re && a.im == b.im; }
    friend ComplexQ operator+(const ComplexQ& a, const ComplexQ& b) { return {a.re + b.re, a.im + b.im}; }
    friend ComplexQ operator-(const ComplexQ& a, const ComplexQ& b) { return {a.re - b.re, a.im - b.im}; }
    friend ComplexQ operator*(const ComplexQ& a, const ComplexQ& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    ComplexQ conj() const { return {re, -im}; }
    Rational norm2() const { return re * re + im * im; }
};

}  // namespace tatep
