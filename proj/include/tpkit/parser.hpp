#pragma once

#include "tpkit/scalar_expr.hpp"

#include <cctype>
#include <string>

namespace tpkit {

// Recursive-descent parser for the scalar expression grammar:
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := base ("^" integer)?
//   base   := rational | variable | "(" expr ")" | "-" base
// Whitespace is insignificant. Parsing then printing then re-parsing is the
// identity on canonical forms.
class ExprParser {
public:
    ExprParser(std::string text, ChartPtr chart)
        : text_(std::move(text)), chart_(std::move(chart)) {}

    ScalarExpr parse() {
        ScalarExpr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input '" + std::string(1, text_[pos_]) + "'", pos_);
        return e;
    }

private:
    ScalarExpr parse_expr() {
        ScalarExpr e = parse_term();
        while (true) {
            skip_ws();
            if (accept('+')) e = e + parse_term();
            else if (accept('-')) e = e - parse_term();
            else return e;
        }
    }

    ScalarExpr parse_term() {
        ScalarExpr e = parse_factor();
        while (true) {
            skip_ws();
            if (accept('*')) e = e * parse_factor();
            else if (accept('/')) {
                std::size_t at = pos_;
                ScalarExpr d = parse_factor();
                if (d.is_zero()) throw ParseError("division by zero", at);
                e = e / d;
            } else return e;
        }
    }

    ScalarExpr parse_factor() {
        ScalarExpr b = parse_base();
        skip_ws();
        if (accept('^')) {
            skip_ws();
            bool neg = accept('-');
            std::size_t at = pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                throw ParseError("expected integer exponent", at);
            long long e = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                e = e * 10 + (text_[pos_] - '0');
                if (e > 1000) throw ParseError("exponent too large", at);
                ++pos_;
            }
            if (neg && b.is_zero()) throw ParseError("zero raised to a negative power", at);
            b = b.pow(static_cast<int>(neg ? -e : e));
        }
        return b;
    }

    ScalarExpr parse_base() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == '-') {
            ++pos_;
            return -parse_base();
        }
        if (c == '(') {
            ++pos_;
            ScalarExpr e = parse_expr();
            skip_ws();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                digits += text_[pos_++];
            return ScalarExpr::constant(chart_, Rational(Integer(digits)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t at = pos_;
            std::string ident;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ident += text_[pos_++];
            auto idx = chart_->var_index(ident);
            if (!idx)
                throw ParseError("unknown variable '" + ident + "' on chart " + chart_->name(), at);
            return ScalarExpr::var(chart_, *idx);
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string text_;
    ChartPtr chart_;
    std::size_t pos_ = 0;
};

inline ScalarExpr parse_expr(const std::string& text, const ChartPtr& chart) {
    return ExprParser(text, chart).parse();
}

} // namespace tpkit
