#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

namespace pedd {

using Rational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

/// Complex number with exact rational real and imaginary parts.
/// Coefficient domain for all system construction; converted to
/// floating complex only at the solver boundary.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(long r) : re(r) {}
    GaussianRational(long num, long den) : re(Rational(num, den)) {}

    static GaussianRational unit_imaginary() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conjugate() const { return {re, -im}; }
    Rational norm2() const { return re * re + im * im; }

    Complex to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    GaussianRational operator-() const { return {-re, -im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        Rational n2 = b.norm2();  // division by zero propagates from cpp_rational
        GaussianRational num = a * b.conjugate();
        return {num.re / n2, num.im / n2};
    }
    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

std::string to_string(const Rational& r);

/// Renders e.g. "3/4", "-i", "2*i", "1/2+3*i". Mixed values are not
/// parenthesized here; the polynomial printer adds parens when needed.
std::string to_string(const GaussianRational& z);

/// Nearest small-denominator rational within atol, via continued fractions.
std::optional<Rational> rationalize(double x, double atol = 1e-9, std::int64_t max_den = 4096);
std::optional<GaussianRational> rationalize(const Complex& z, double atol = 1e-9,
                                            std::int64_t max_den = 4096);

/// Literal like `3`, `-1/2`, `i`, `2i`, `1/2-3/4i`, `1+2*i`.
GaussianRational parse_complex_literal(const std::string& text);

}  // namespace pedd
