#include "rbx/parser.hpp"

#include <cctype>
#include <utility>
#include <vector>

namespace rbx {

ParseError::ParseError(const std::string& msg, int line_, int col_)
    : DomainError(msg + " (line " + std::to_string(line_) + ", column " + std::to_string(col_) + ")"),
      line(line_), col(col_) {}

namespace {

enum class TokKind { ident, integer, plus, minus, star, caret, slash, lparen, rparen, lbracket, rbracket, comma, end };

struct Token {
    TokKind kind;
    std::string text;
    int line;
    int col;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    const auto push = [&](TokKind k, std::string t) { out.push_back({k, std::move(t), line, col}); };
    while (i < text.size()) {
        const char ch = text[i];
        if (ch == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++col;
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                ++j;
            push(TokKind::integer, text.substr(i, j - i));
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            push(TokKind::ident, text.substr(i, j - i));
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        TokKind kind;
        switch (ch) {
        case '+': kind = TokKind::plus; break;
        case '-': kind = TokKind::minus; break;
        case '*': kind = TokKind::star; break;
        case '^': kind = TokKind::caret; break;
        case '/': kind = TokKind::slash; break;
        case '(': kind = TokKind::lparen; break;
        case ')': kind = TokKind::rparen; break;
        case '[': kind = TokKind::lbracket; break;
        case ']': kind = TokKind::rbracket; break;
        case ',': kind = TokKind::comma; break;
        default:
            throw ParseError(std::string("unexpected character '") + ch + "'", line, col);
        }
        push(kind, std::string(1, ch));
        ++col;
        ++i;
    }
    out.push_back({TokKind::end, "", line, col});
    return out;
}

class Parser {
public:
    Parser(const std::string& text, const AlgebraDescriptor& alg)
        : toks_(tokenize(text)), alg_(alg) {}

    RBExpression parse() {
        RBExpression e = element();
        expect(TokKind::end, "end of input");
        return e;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        const std::size_t i = pos_ + ahead;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    const Token& advance() { return toks_[pos_++]; }
    bool accept(TokKind k) {
        if (peek().kind != k)
            return false;
        ++pos_;
        return true;
    }
    const Token& expect(TokKind k, const std::string& what) {
        if (peek().kind != k)
            throw ParseError("expected " + what, peek().line, peek().col);
        return advance();
    }
    [[noreturn]] void fail(const std::string& msg, const Token& at) const {
        throw ParseError(msg, at.line, at.col);
    }

    int small_int(const Token& tok) const {
        if (tok.text.size() > 6)
            fail("exponent too large", tok);
        return std::stoi(tok.text);
    }

    RBExpression element() {
        std::vector<RBExpression> parts;
        bool negative = accept(TokKind::minus);
        parts.push_back(signed_term(negative));
        while (peek().kind == TokKind::plus || peek().kind == TokKind::minus) {
            negative = advance().kind == TokKind::minus;
            parts.push_back(signed_term(negative));
        }
        return parts.size() == 1 ? std::move(parts.front()) : RBExpression::sum(std::move(parts));
    }

    RBExpression signed_term(bool negative) {
        RBExpression t = term();
        return negative ? RBExpression::scale(Scalar(-1), std::move(t)) : std::move(t);
    }

    RBExpression term() {
        AlgebraElement elem = AlgebraElement::one(alg_);
        bool elem_used = false;
        std::vector<RBExpression> expr_factors;

        const auto eat_factor = [&]() {
            auto [e, x] = factor();
            if (e.has_value()) {
                elem = mul(elem, *e);
                elem_used = true;
            } else {
                expr_factors.push_back(std::move(*x));
            }
        };

        eat_factor();
        while (true) {
            if (accept(TokKind::star)) {
                eat_factor();
                continue;
            }
            // trailing /s^k clause
            if (peek().kind == TokKind::slash && peek(1).kind == TokKind::ident) {
                const Token& slash = advance();
                const Token& name = advance();
                if (name.text != "s")
                    fail("only the denominator symbol s may follow '/'", name);
                int k = 1;
                if (accept(TokKind::caret)) {
                    const Token& e = expect(TokKind::integer, "integer exponent");
                    k = small_int(e);
                    if (k < 1)
                        fail("denominator exponent must be positive", e);
                }
                if (!alg_.has_denominator())
                    fail("no denominator declared for this algebra", slash);
                elem = mul(elem, AlgebraElement::s_inverse_power(alg_, k));
                elem_used = true;
                continue;
            }
            break;
        }

        if (expr_factors.empty())
            return RBExpression::leaf(std::move(elem));
        if (elem_used)
            expr_factors.insert(expr_factors.begin(), RBExpression::leaf(std::move(elem)));
        return expr_factors.size() == 1 ? std::move(expr_factors.front())
                                        : RBExpression::product(std::move(expr_factors));
    }

    // A factor is either a plain algebra element or a sub-expression (P, T or
    // parenthesized group).
    std::pair<std::optional<AlgebraElement>, std::optional<RBExpression>> factor() {
        const Token& tok = peek();
        if (tok.kind == TokKind::integer)
            return {rational_factor(), std::nullopt};
        if (tok.kind == TokKind::lparen) {
            advance();
            RBExpression e = element();
            expect(TokKind::rparen, "')'");
            return {std::nullopt, std::move(e)};
        }
        if (tok.kind != TokKind::ident)
            fail("expected a factor", tok);
        if (tok.text == "P") {
            advance();
            expect(TokKind::lparen, "'(' after P");
            RBExpression e = element();
            expect(TokKind::rparen, "')'");
            return {std::nullopt, RBExpression::apply_p(std::move(e))};
        }
        if (tok.text == "T") {
            advance();
            expect(TokKind::lbracket, "'[' after T");
            std::vector<RBExpression> slots;
            slots.push_back(element());
            while (accept(TokKind::comma))
                slots.push_back(element());
            expect(TokKind::rbracket, "']'");
            // T[e0,...,ek] = e0 * P(e1 * P(... P(ek) ...))
            RBExpression acc = std::move(slots.back());
            for (std::size_t i = slots.size() - 1; i-- > 0;)
                acc = RBExpression::product(
                    {std::move(slots[i]), RBExpression::apply_p(std::move(acc))});
            return {std::nullopt, std::move(acc)};
        }
        return {symbol_factor(), std::nullopt};
    }

    std::optional<AlgebraElement> rational_factor() {
        const Token& num = advance();
        std::string text = num.text;
        if (peek().kind == TokKind::slash && peek(1).kind == TokKind::integer) {
            advance();
            text += "/" + advance().text;
        }
        return AlgebraElement::constant(alg_, Scalar::from_string(text));
    }

    std::optional<AlgebraElement> symbol_factor() {
        const Token& name = advance();
        int exponent = 1;
        if (accept(TokKind::caret)) {
            const bool neg = accept(TokKind::minus);
            const Token& e = expect(TokKind::integer, "integer exponent");
            exponent = small_int(e);
            if (neg)
                exponent = -exponent;
        }
        if (name.text == "s") {
            if (!alg_.has_denominator())
                fail("no denominator declared for this algebra", name);
            if (exponent >= 0)
                return pow(AlgebraElement::s_polynomial(alg_), exponent);
            return AlgebraElement::s_inverse_power(alg_, -exponent);
        }
        const int var = alg_.var_index(name.text);
        if (var < 0)
            fail("unknown variable '" + name.text + "'", name);
        if (exponent >= 0) {
            BasisKey key = BasisKey::unit(alg_.var_count());
            key.exponents[static_cast<std::size_t>(var)] = exponent;
            return AlgebraElement::monomial(alg_, std::move(key));
        }
        // Negative exponents only denote fractions when s is this variable.
        if (!alg_.has_denominator() || alg_.denom_var() != var || !alg_.denominator_is_variable())
            fail("exponent out of range for descriptor", name);
        return AlgebraElement::s_inverse_power(alg_, -exponent);
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const AlgebraDescriptor& alg_;
};

} // namespace

RBExpression parse_expression(const std::string& text, const AlgebraDescriptor& alg) {
    return Parser(text, alg).parse();
}

AlgebraElement evaluate_plain(const RBExpression& e) {
    switch (e.kind()) {
    case RBExpression::Kind::leaf:
        return e.leaf_element();
    case RBExpression::Kind::scale:
        return evaluate_plain(e.children().front()).scaled(e.scalar());
    case RBExpression::Kind::sum: {
        AlgebraElement acc = evaluate_plain(e.children().front());
        for (std::size_t i = 1; i < e.children().size(); ++i)
            acc = acc + evaluate_plain(e.children()[i]);
        return acc;
    }
    case RBExpression::Kind::product: {
        AlgebraElement acc = evaluate_plain(e.children().front());
        for (std::size_t i = 1; i < e.children().size(); ++i)
            acc = mul(acc, evaluate_plain(e.children()[i]));
        return acc;
    }
    case RBExpression::Kind::p_apply:
        throw DomainError("expected a plain element, found an operator application");
    }
    throw InternalError("unreachable expression kind");
}

UnivariatePoly univariate_from_element(const AlgebraElement& e, int var) {
    std::vector<Scalar> coeffs;
    for (const auto& [key, c] : e.terms()) {
        if (!key.is_polynomial())
            throw DomainError("denominator polynomial must be a plain polynomial");
        for (std::size_t i = 0; i < key.exponents.size(); ++i)
            if (static_cast<int>(i) != var && key.exponents[i] != 0)
                throw DomainError("denominator polynomial must be univariate");
        const auto deg = static_cast<std::size_t>(key.exponents[static_cast<std::size_t>(var)]);
        if (coeffs.size() <= deg)
            coeffs.resize(deg + 1, Scalar(0));
        coeffs[deg] = c;
    }
    return UnivariatePoly(std::move(coeffs));
}

} // namespace rbx
