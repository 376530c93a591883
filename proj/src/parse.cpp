#include "symfi/parse.hpp"

#include "symfi/errors.hpp"

#include <cctype>

namespace symfi {

namespace {

struct Parser {
    const std::string &s;
    std::size_t pos = 0;

    explicit Parser(const std::string &text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) throw syntax_error(std::string("expected '") + c + "'", pos);
    }

    Rat number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw syntax_error("expected a number", pos);
        std::string num = s.substr(start, pos - start);
        if (pos < s.size() && s[pos] == '/') {
            std::size_t save = pos++;
            std::size_t dstart = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == dstart) {
                pos = save; // a lone '/' is not part of the literal
            } else {
                num += "/" + s.substr(dstart, pos - dstart);
            }
        }
        return rat_from_string(num);
    }

    long exponent() {
        skip_ws();
        bool paren = accept('(');
        bool neg = false;
        if (paren) {
            if (accept('-'))
                neg = true;
            else
                accept('+');
        }
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw syntax_error("expected an integer exponent", pos);
        long e = std::stol(s.substr(start, pos - start));
        if (paren) expect(')');
        if (neg && e != 0) throw negative_exponent();
        return e;
    }

    BiPoly primary() {
        skip_ws();
        if (pos >= s.size()) throw syntax_error("unexpected end of input", pos);
        char c = s[pos];
        if (c == '(') {
            ++pos;
            BiPoly e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return BiPoly(number());
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            std::string name = s.substr(start, pos - start);
            if (name == "x") return BiPoly::var_x();
            if (name == "y") return BiPoly::var_y();
            throw unknown_variable(name);
        }
        throw syntax_error(std::string("unexpected character '") + c + "'", pos);
    }

    BiPoly factor() {
        BiPoly base = primary();
        skip_ws();
        if (accept('^')) {
            long e = exponent();
            return bipoly_pow(base, static_cast<unsigned>(e));
        }
        return base;
    }

    BiPoly unary() {
        int sign = 1;
        for (;;) {
            if (accept('-'))
                sign = -sign;
            else if (accept('+'))
                ;
            else
                break;
        }
        BiPoly f = factor();
        return sign < 0 ? -f : f;
    }

    BiPoly term() {
        BiPoly acc = unary();
        while (accept('*')) acc = acc * unary();
        return acc;
    }

    BiPoly expr() {
        BiPoly acc = term();
        for (;;) {
            if (accept('+'))
                acc = acc + term();
            else if (accept('-'))
                acc = acc - term();
            else
                break;
        }
        return acc;
    }
};

} // namespace

BiPoly parse_poly(const std::string &text) {
    Parser p(text);
    BiPoly r = p.expr();
    if (!p.eof()) throw syntax_error("trailing input", p.pos);
    return r;
}

std::pair<BiPoly, BiPoly> parse_field_spec(const std::string &text) {
    auto semi = text.find(';');
    if (semi == std::string::npos)
        throw syntax_error("field spec needs two polynomials separated by ';'", text.size());
    auto strip_label = [](std::string part, const char *label) {
        std::size_t i = 0;
        while (i < part.size() && std::isspace(static_cast<unsigned char>(part[i]))) ++i;
        if (i < part.size() && (part[i] == label[0] || part[i] == std::toupper(label[0]))) {
            std::size_t j = i + 1;
            while (j < part.size() && std::isspace(static_cast<unsigned char>(part[j]))) ++j;
            if (j < part.size() && part[j] == '=') return part.substr(j + 1);
        }
        return part;
    };
    std::string a_text = strip_label(text.substr(0, semi), "a");
    std::string b_text = strip_label(text.substr(semi + 1), "b");
    return {parse_poly(a_text), parse_poly(b_text)};
}

} // namespace symfi
