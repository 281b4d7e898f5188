#include <cctype>
#include <string>
#include <vector>

#include "pedd/polynomial.hpp"

namespace pedd {

namespace {

// expr   := term (('+'|'-') term)*
// term   := factor ('*' factor)*
// factor := ('+'|'-')* atom ['^' integer]
// atom   := number | identifier | '(' expr ')'
// number := digits ['/' digits]
// The identifier `i`, unless declared as a variable, is the imaginary unit.
class Parser {
public:
    Parser(std::string_view text, const std::vector<std::string>& variables)
        : text_(text), vars_(variables) {}

    RationalPoly parse() {
        RationalPoly p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    int nvars() const { return static_cast<int>(vars_.size()); }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    RationalPoly expr() {
        RationalPoly p = term();
        while (true) {
            if (eat('+')) {
                p = p + term();
            } else if (eat('-')) {
                p = p - term();
            } else {
                return p;
            }
        }
    }

    RationalPoly term() {
        RationalPoly p = factor();
        while (eat('*')) p = p * factor();
        return p;
    }

    RationalPoly factor() {
        bool negate = false;
        while (true) {
            if (eat('-')) {
                negate = !negate;
            } else if (eat('+')) {
                // no-op
            } else {
                break;
            }
        }
        RationalPoly p = atom();
        if (eat('^')) {
            long k = integer_literal("exponent");
            p = p.pow(static_cast<int>(k));
        }
        return negate ? -p : p;
    }

    RationalPoly atom() {
        char c = peek();
        if (c == '(') {
            eat('(');
            RationalPoly p = expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rational num(integer_literal("number"));
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                long den = integer_literal("denominator");
                if (den == 0) fail("zero denominator");
                num /= den;
            }
            return RationalPoly::constant(nvars(), GaussianRational(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            std::string name = identifier();
            for (int v = 0; v < nvars(); ++v)
                if (vars_[v] == name) return RationalPoly::variable(nvars(), v);
            if (name == "i")
                return RationalPoly::constant(nvars(), GaussianRational::unit_imaginary());
            pos_ = start;
            fail("unknown variable name '" + name + "'");
        }
        fail("expected a number, variable, or '('");
    }

    std::string identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    long integer_literal(const std::string& what) {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected " + what);
        if (pos_ - start > 18) fail(what + " literal too long");
        return std::stol(std::string(text_.substr(start, pos_ - start)));
    }

    std::string_view text_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

}  // namespace

RationalPoly parse_polynomial(std::string_view text, const std::vector<std::string>& variables) {
    for (std::size_t a = 0; a < variables.size(); ++a)
        for (std::size_t b = a + 1; b < variables.size(); ++b)
            if (variables[a] == variables[b])
                throw std::invalid_argument("duplicate variable name '" + variables[a] + "'");
    return Parser(text, variables).parse();
}

}  // namespace pedd
