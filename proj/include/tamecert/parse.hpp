#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "tamecert/certificate.hpp"

namespace tamecert {

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

// Recursive descent over
//   poly   := ['-'] term (('+'|'-') term)*
//   term   := [coeff] ['*'] factor ('*'? factor)* | coeff
//   coeff  := nat ['/' nat]
//   factor := ('x'|'y'|'z'|'(' poly ')') ['^' nat]
//   map    := '(' poly ',' poly ',' poly ')'
//   word   := atom (';' atom)*
//   atom   := 'pi' | 'beta' | 'beta_inv' | 'theta' '(' nat ')' | 'id' | map
template <class Field>
class Parser {
public:
    using P = Polynomial<Field>;
    static constexpr std::uint64_t max_exponent = 1u << 20;

    Parser(std::string_view text, Field f, TermBudget budget = {})
        : text_(text), field_(std::move(f)), budget_(budget) {}

    P polynomial() {
        auto p = parse_poly();
        expect_end();
        return p;
    }
    Endomorphism<Field> map() {
        auto m = parse_map();
        expect_end();
        return m;
    }
    Word<Field> word() {
        auto w = parse_word();
        expect_end();
        return w;
    }

    // a0 ; theta ; a1 ; ... with affine items (maps, pi, id) between theta
    // markers. Missing items are the identity and adjacent items multiply.
    AlternatingWord<Field> alternating(unsigned default_n) {
        AlternatingWord<Field> out;
        out.N = default_n;
        std::optional<unsigned> seen_n;
        auto current = AffineMap<Field>::identity(field_);
        for (;;) {
            skip_space();
            auto [line, col] = position();
            auto id = peek_identifier();
            if (id == "theta") {
                take_identifier();
                skip_space();
                if (peek() == '(') {
                    take();
                    auto n = parse_nat();
                    expect(')');
                    if (seen_n && *seen_n != n) throw ParseError("theta parameters differ", line, col);
                    seen_n = static_cast<unsigned>(n);
                }
                out.alphas.push_back(current);
                current = AffineMap<Field>::identity(field_);
            } else {
                auto w = parse_atom();
                for (const auto& atom : w.atoms()) {
                    auto e = atom_endomorphism(atom, field_);
                    auto a = e.as_affine();
                    if (!a) throw ParseError("expected an affine map or theta", line, col);
                    current = current * *a;
                }
            }
            skip_space();
            if (peek() != ';') break;
            take();
        }
        out.alphas.push_back(current);
        if (seen_n) out.N = *seen_n;
        expect_end();
        return out;
    }

private:
    std::string_view text_;
    Field field_;
    TermBudget budget_;
    std::size_t pos_ = 0;

    std::pair<std::size_t, std::size_t> position() const {
        std::size_t line = 1, col = 1;
        for (std::size_t t = 0; t < pos_ && t < text_.size(); ++t) {
            if (text_[t] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        return {line, col};
    }

    [[noreturn]] void fail(const std::string& msg) const {
        auto [line, col] = position();
        throw ParseError(msg, line, col);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char take() { return text_[pos_++]; }

    void expect(char c) {
        skip_space();
        if (peek() != c) fail(std::string("expected '") + c + "'" + found());
        take();
    }
    void expect_end() {
        skip_space();
        if (pos_ != text_.size()) fail("unexpected trailing input" + found());
    }
    std::string found() const {
        if (pos_ >= text_.size()) return ", found end of input";
        return std::string(", found '") + text_[pos_] + "'";
    }

    std::string_view peek_identifier() const {
        std::size_t end = pos_;
        while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) ++end;
        return text_.substr(pos_, end - pos_);
    }
    std::string_view take_identifier() {
        auto id = peek_identifier();
        pos_ += id.size();
        return id;
    }

    std::uint64_t parse_nat() {
        skip_space();
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a number" + found());
        std::uint64_t v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            if (v > (std::numeric_limits<std::uint64_t>::max() - 9) / 10) fail("number too large");
            v = v * 10 + static_cast<std::uint64_t>(take() - '0');
        }
        return v;
    }

    mpz_class parse_integer() {
        skip_space();
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) take();
        if (start == pos_) fail("expected a number" + found());
        return mpz_class(std::string(text_.substr(start, pos_ - start)));
    }

    typename Field::value_type parse_coeff() {
        auto [line, col] = position();
        auto num = parse_integer();
        mpz_class den = 1;
        skip_space();
        if (peek() == '/') {
            take();
            den = parse_integer();
            if (den == 0) throw ParseError("division by zero", line, col);
        }
        try {
            return field_.from_fraction(num, den);
        } catch (const NotInvertible&) {
            throw ParseError("literal " + num.get_str() + "/" + den.get_str() + " is not invertible over " +
                                 field_.name(),
                             line, col);
        }
    }

    std::uint64_t parse_exponent() {
        skip_space();
        if (peek() != '^') return 1;
        take();
        auto e = parse_nat();
        if (e > max_exponent) fail("exponent too large");
        return e;
    }

    bool at_factor() {
        skip_space();
        char c = peek();
        return c == 'x' || c == 'y' || c == 'z' || c == '(';
    }

    P parse_factor() {
        skip_space();
        char c = peek();
        P base(field_);
        if (c == 'x' || c == 'y' || c == 'z') {
            take();
            if (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
                --pos_;
                fail("unknown identifier '" + std::string(peek_identifier()) + "'");
            }
            base = P::variable(field_, c - 'x');
        } else if (c == '(') {
            take();
            base = parse_poly();
            expect(')');
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            fail("unknown identifier '" + std::string(peek_identifier()) + "'");
        } else {
            fail("expected a variable or '('" + found());
        }
        return pow(base, parse_exponent(), budget_);
    }

    P parse_term() {
        skip_space();
        P acc = P::constant(field_, field_.one());
        bool any = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            acc = P::constant(field_, parse_coeff());
            any = true;
        }
        for (;;) {
            skip_space();
            bool star = false;
            if (peek() == '*') {
                take();
                star = true;
            }
            if (!at_factor()) {
                if (star) fail("expected a factor after '*'" + found());
                break;
            }
            acc = mul(acc, parse_factor(), budget_);
            any = true;
        }
        if (!any) fail("expected a term" + found());
        return acc;
    }

    P parse_poly() {
        skip_space();
        bool negative = false;
        if (peek() == '-') {
            take();
            negative = true;
        } else if (peek() == '+') {
            take();
        }
        P acc = parse_term();
        if (negative) acc = -acc;
        for (;;) {
            skip_space();
            char c = peek();
            if (c != '+' && c != '-') break;
            take();
            auto t = parse_term();
            acc = c == '+' ? acc + t : acc - t;
            budget_.check(acc.size(), "parse");
        }
        return acc;
    }

    Endomorphism<Field> parse_map() {
        expect('(');
        auto a = parse_poly();
        expect(',');
        auto b = parse_poly();
        expect(',');
        auto c = parse_poly();
        expect(')');
        return Endomorphism<Field>(a, b, c);
    }

    Word<Field> parse_atom() {
        skip_space();
        if (peek() == '(') {
            auto m = parse_map();
            if (auto a = m.as_affine()) return Word<Field>::affine(*a);
            return Word<Field>::raw(m);
        }
        auto id = peek_identifier();
        if (id.empty()) fail("expected a word atom" + found());
        if (id == "pi") {
            take_identifier();
            return Word<Field>::pi(field_);
        }
        if (id == "beta") {
            take_identifier();
            return Word<Field>::beta(field_);
        }
        if (id == "beta_inv") {
            take_identifier();
            return Word<Field>::beta_inv(field_);
        }
        if (id == "id") {
            take_identifier();
            return Word<Field>(field_);
        }
        if (id == "theta") {
            take_identifier();
            expect('(');
            auto n = parse_nat();
            if (n > 1000) fail("theta parameter too large");
            expect(')');
            return Word<Field>::theta(field_, static_cast<unsigned>(n));
        }
        fail("unknown identifier '" + std::string(id) + "'");
    }

    Word<Field> parse_word() {
        Word<Field> w = parse_atom();
        for (;;) {
            skip_space();
            if (peek() != ';') break;
            take();
            w += parse_atom();
        }
        return w;
    }
};

template <class Field>
Polynomial<Field> parse_polynomial(std::string_view text, const Field& f, const TermBudget& budget = {}) {
    return Parser<Field>(text, f, budget).polynomial();
}

template <class Field>
Endomorphism<Field> parse_map(std::string_view text, const Field& f, const TermBudget& budget = {}) {
    return Parser<Field>(text, f, budget).map();
}

template <class Field>
Word<Field> parse_word(std::string_view text, const Field& f, const TermBudget& budget = {}) {
    return Parser<Field>(text, f, budget).word();
}

template <class Field>
AlternatingWord<Field> parse_alternating_word(std::string_view text, const Field& f, unsigned default_n = 3) {
    return Parser<Field>(text, f).alternating(default_n);
}

}  // namespace tamecert
