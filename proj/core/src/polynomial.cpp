#include "pedd/polynomial.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "pedd/errors.hpp"

namespace pedd {

std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string to_string(const GaussianRational& z) {
    if (z.is_zero()) return "0";
    std::string out;
    if (z.re != 0) out += to_string(z.re);
    if (z.im != 0) {
        if (z.im == 1) {
            out += out.empty() ? "i" : "+i";
        } else if (z.im == -1) {
            out += "-i";
        } else {
            std::string ims = to_string(z.im);
            if (!out.empty() && ims[0] != '-') out += "+";
            out += ims + "*i";
        }
    }
    return out;
}

std::optional<Rational> rationalize(double x, double atol, std::int64_t max_den) {
    if (!std::isfinite(x)) return std::nullopt;
    // continued-fraction convergents
    double v = x;
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int iter = 0; iter < 64; ++iter) {
        double fl = std::floor(v);
        if (fl > 9e17 || fl < -9e17) return std::nullopt;
        std::int64_t a = static_cast<std::int64_t>(fl);
        std::int64_t p2 = a * p1 + p0;
        std::int64_t q2 = a * q1 + q0;
        if (q2 > max_den || q2 < 0) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double approx = static_cast<double>(p1) / static_cast<double>(q1);
        if (std::abs(approx - x) <= atol) return Rational(p1, q1);
        double frac = v - fl;
        if (frac < 1e-15) break;
        v = 1.0 / frac;
    }
    if (q1 > 0 && std::abs(static_cast<double>(p1) / static_cast<double>(q1) - x) <= atol)
        return Rational(p1, q1);
    return std::nullopt;
}

std::optional<GaussianRational> rationalize(const Complex& z, double atol, std::int64_t max_den) {
    auto re = rationalize(z.real(), atol, max_den);
    auto im = rationalize(z.imag(), atol, max_den);
    if (!re || !im) return std::nullopt;
    return GaussianRational{*re, *im};
}

GaussianRational parse_complex_literal(const std::string& text) {
    GaussianRational value;
    std::size_t pos = 0;
    auto fail = [&](const std::string& msg) -> void {
        throw ParseError(msg + " in '" + text + "'", pos);
    };
    bool any = false;
    while (pos < text.size()) {
        int sign = 1;
        while (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            if (text[pos] == '-') sign = -sign;
            ++pos;
        }
        if (pos >= text.size()) fail("dangling sign");
        bool have_digits = false;
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) {
            have_digits = true;
            ++pos;
        }
        Rational mag(1);
        if (have_digits) {
            std::string num = text.substr(start, pos - start);
            auto slash = num.find('/');
            try {
                if (slash == std::string::npos) {
                    mag = Rational(num);
                } else {
                    Rational den(num.substr(slash + 1));
                    if (den == 0) fail("zero denominator");
                    mag = Rational(num.substr(0, slash)) / den;
                }
            } catch (const ParseError&) {
                throw;
            } catch (const std::exception&) {
                fail("bad rational literal");
            }
        }
        if (pos < text.size() && text[pos] == '*') ++pos;
        if (pos < text.size() && (text[pos] == 'i' || text[pos] == 'I')) {
            ++pos;
            value.im += sign * mag;
        } else {
            if (!have_digits) fail("expected a number");
            value.re += sign * mag;
        }
        any = true;
    }
    if (!any) throw ParseError("empty literal in '" + text + "'", 0);
    return value;
}

namespace {

// one monomial with sign pulled out front: [-]c*x0^2*x1
void print_term(std::ostringstream& os, bool first, const Exponents& e, const GaussianRational& c,
                const std::vector<std::string>& vars) {
    GaussianRational coeff = c;
    bool negative = coeff.im == 0 ? coeff.re < 0 : (coeff.re == 0 && coeff.im < 0);
    if (negative) coeff = -coeff;
    if (first) {
        if (negative) os << "-";
    } else {
        os << (negative ? " - " : " + ");
    }
    bool any_var = exponent_degree(e) > 0;
    bool mixed = coeff.re != 0 && coeff.im != 0;
    bool unit = (coeff == GaussianRational(1));
    std::string cs = to_string(coeff);
    if (!any_var) {
        os << (mixed ? "(" + cs + ")" : cs);
        return;
    }
    if (!unit) {
        os << (mixed ? "(" + cs + ")" : cs) << "*";
    }
    bool printed = false;
    for (std::size_t v = 0; v < e.size(); ++v) {
        if (e[v] == 0) continue;
        if (printed) os << "*";
        os << vars[v];
        if (e[v] > 1) os << "^" << e[v];
        printed = true;
    }
}

}  // namespace

std::string to_string(const RationalPoly& p, const std::vector<std::string>& variables) {
    if (static_cast<int>(variables.size()) != p.variable_count())
        throw std::invalid_argument("variable name list does not match variable count");
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        print_term(os, first, e, c, variables);
        first = false;
    }
    return os.str();
}

}  // namespace pedd
