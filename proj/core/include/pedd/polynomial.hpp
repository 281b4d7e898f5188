#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pedd/errors.hpp"
#include "pedd/rational.hpp"

namespace pedd {

using Exponents = std::vector<int>;
using ComplexPoint = std::vector<Complex>;

inline int exponent_degree(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), 0);
}

/// Graded lexicographic, descending: higher total degree first, then
/// lexicographically larger exponent vector first (x0 beats x1, ...).
/// Map iteration order equals canonical print order.
struct GrlexDescending {
    bool operator()(const Exponents& a, const Exponents& b) const {
        int da = exponent_degree(a), db = exponent_degree(b);
        if (da != db) return da > db;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

namespace detail {
inline bool coeff_is_zero(const GaussianRational& c) { return c.is_zero(); }
inline bool coeff_is_zero(const Complex& c) { return c == Complex{0.0, 0.0}; }
}  // namespace detail

/// Sparse multivariate polynomial: exponent vector -> nonzero coefficient.
/// The zero polynomial has an empty term map. Immutable in practice: all
/// operations return new values, so sharing across threads is safe.
template <class C>
class Polynomial {
public:
    using TermMap = std::map<Exponents, C, GrlexDescending>;

    explicit Polynomial(int variable_count) : nvars_(variable_count) {
        if (variable_count < 0) throw std::invalid_argument("negative variable count");
    }

    static Polynomial zero(int nvars) { return Polynomial(nvars); }

    static Polynomial constant(int nvars, C value) {
        Polynomial p(nvars);
        p.add_term(Exponents(nvars, 0), std::move(value));
        return p;
    }

    static Polynomial variable(int nvars, int index) {
        if (index < 0 || index >= nvars) throw std::invalid_argument("variable index out of range");
        Exponents e(nvars, 0);
        e[index] = 1;
        Polynomial p(nvars);
        p.add_term(std::move(e), C(1));
        return p;
    }

    int variable_count() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(Exponents e, C coeff) {
        if (static_cast<int>(e.size()) != nvars_)
            throw std::invalid_argument("exponent vector length mismatch");
        if (detail::coeff_is_zero(coeff)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(std::move(e), std::move(coeff));
        } else {
            it->second += coeff;
            if (detail::coeff_is_zero(it->second)) terms_.erase(it);
        }
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        a.check_same_vars(b);
        Polynomial r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        a.check_same_vars(b);
        Polynomial r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    Polynomial operator-() const {
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_same_vars(b);
        Polynomial r(a.nvars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(a.nvars_);
                for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(std::move(e), ca * cb);
            }
        }
        return r;
    }
    friend Polynomial operator*(const C& s, const Polynomial& p) {
        Polynomial r(p.nvars_);
        for (const auto& [e, c] : p.terms_) r.add_term(e, s * c);
        return r;
    }

    Polynomial pow(int k) const {
        if (k < 0) throw std::invalid_argument("negative exponent");
        Polynomial r = constant(nvars_, C(1));
        for (int i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    /// Formal partial derivative; each surviving term drops one degree.
    Polynomial partial_derivative(int i) const {
        if (i < 0 || i >= nvars_) throw std::invalid_argument("derivative index out of range");
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exponents e2 = e;
            e2[i] -= 1;
            r.add_term(std::move(e2), c * C(e[i]));
        }
        return r;
    }

    int total_degree() const {
        if (terms_.empty()) throw std::invalid_argument("degree of the zero polynomial is undefined");
        return exponent_degree(terms_.begin()->first);  // grlex-descending: first term is maximal
    }

    /// (max term degree, all terms share it). Throws on the zero polynomial.
    std::pair<int, bool> degree_and_homogeneity() const {
        int deg = total_degree();
        int low = exponent_degree(terms_.rbegin()->first);
        return {deg, deg == low};
    }

    /// Term-wise evaluation using per-variable power tables.
    template <class V>
    V evaluate_as(std::span<const V> x) const {
        if (static_cast<int>(x.size()) != nvars_)
            throw std::invalid_argument("point dimension mismatch");
        int maxdeg = terms_.empty() ? 0 : total_degree();
        // powers[i * (maxdeg+1) + k] = x_i^k
        std::vector<V> powers(static_cast<std::size_t>(nvars_) * (maxdeg + 1), V(1));
        for (int i = 0; i < nvars_; ++i)
            for (int k = 1; k <= maxdeg; ++k)
                powers[i * (maxdeg + 1) + k] = powers[i * (maxdeg + 1) + k - 1] * x[i];
        V acc(0);
        for (const auto& [e, c] : terms_) {
            V t = convert_coeff<V>(c);
            for (int i = 0; i < nvars_; ++i)
                if (e[i] > 0) t *= powers[i * (maxdeg + 1) + e[i]];
            acc += t;
        }
        return acc;
    }

private:
    template <class V>
    static V convert_coeff(const C& c) {
        if constexpr (std::is_same_v<C, GaussianRational> && std::is_same_v<V, Complex>) {
            return c.to_complex();
        } else {
            return V(c);
        }
    }

    void check_same_vars(const Polynomial& o) const {
        if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
    }

    int nvars_;
    TermMap terms_;
};

using RationalPoly = Polynomial<GaussianRational>;
using ComplexPoly = Polynomial<Complex>;

inline ComplexPoly to_complex(const RationalPoly& p) {
    ComplexPoly r(p.variable_count());
    for (const auto& [e, c] : p.terms()) r.add_term(e, c.to_complex());
    return r;
}

inline Complex evaluate(const RationalPoly& p, const ComplexPoint& x) {
    return p.evaluate_as<Complex>(std::span<const Complex>(x));
}
inline Complex evaluate(const ComplexPoly& p, const ComplexPoint& x) {
    return p.evaluate_as<Complex>(std::span<const Complex>(x));
}
/// Exact evaluation over the rational-complex domain.
inline GaussianRational evaluate_exact(const RationalPoly& p,
                                       const std::vector<GaussianRational>& x) {
    return p.evaluate_as<GaussianRational>(std::span<const GaussianRational>(x));
}

/// p with x_chart_var set to 1 and that variable removed.
template <class C>
Polynomial<C> dehomogenize(const Polynomial<C>& p, int chart_var) {
    int n = p.variable_count();
    if (chart_var < 0 || chart_var >= n) throw std::invalid_argument("chart variable out of range");
    Polynomial<C> r(n - 1);
    for (const auto& [e, c] : p.terms()) {
        Exponents e2;
        e2.reserve(n - 1);
        for (int i = 0; i < n; ++i)
            if (i != chart_var) e2.push_back(e[i]);
        r.add_term(std::move(e2), c);
    }
    return r;
}

/// p(x + a): Taylor shift by binomial expansion per variable.
template <class C>
Polynomial<C> translate(const Polynomial<C>& p, std::span<const C> a) {
    int n = p.variable_count();
    if (static_cast<int>(a.size()) != n) throw std::invalid_argument("shift dimension mismatch");
    Polynomial<C> r(n);
    for (const auto& [e, c] : p.terms()) {
        Polynomial<C> term = Polynomial<C>::constant(n, c);
        for (int i = 0; i < n; ++i) {
            if (e[i] == 0) continue;
            Polynomial<C> lin = Polynomial<C>::variable(n, i) + Polynomial<C>::constant(n, a[i]);
            term = term * lin.pow(e[i]);
        }
        r = r + term;
    }
    return r;
}

/// Extend p to nvars_new variables; original variable i becomes variable i + offset.
template <class C>
Polynomial<C> embed(const Polynomial<C>& p, int nvars_new, int offset = 0) {
    int n = p.variable_count();
    if (offset < 0 || offset + n > nvars_new) throw std::invalid_argument("bad embedding");
    Polynomial<C> r(nvars_new);
    for (const auto& [e, c] : p.terms()) {
        Exponents e2(nvars_new, 0);
        for (int i = 0; i < n; ++i) e2[i + offset] = e[i];
        r.add_term(std::move(e2), c);
    }
    return r;
}

/// Square or non-square list of polynomials over a shared variable set.
struct PolynomialSystem {
    int variable_count = 0;
    std::vector<RationalPoly> equations;

    bool is_square() const {
        return static_cast<int>(equations.size()) == variable_count;
    }
    std::vector<int> degrees() const {
        std::vector<int> d;
        d.reserve(equations.size());
        for (const auto& p : equations) d.push_back(p.total_degree());
        return d;
    }
    long bezout_number() const {
        long b = 1;
        for (int d : degrees()) b *= d;
        return b;
    }
};

/// Parses the expression grammar: integer and rational literals (`3`, `3/4`),
/// declared variable names, `+ - * ^ ( )`. The bare identifier `i`, when it is
/// not a declared variable, denotes the imaginary unit. No implicit
/// multiplication. Returns the expanded sparse form over exact rationals.
RationalPoly parse_polynomial(std::string_view text, const std::vector<std::string>& variables);

/// Canonical form: graded-lexicographic term order, parseable back to an
/// equal term map.
std::string to_string(const RationalPoly& p, const std::vector<std::string>& variables);

}  // namespace pedd
