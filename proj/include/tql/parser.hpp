#pragma once

#include <charconv>
#include <string>
#include <utility>
#include <vector>

#include "tql/ast.hpp"
#include "tql/lexer.hpp"

namespace tql {

// ---------------------------------------------------------------------------
// Recursive-descent parser
//
// Fixed resolutions on top of the grammar: * binds above + and -, all three
// left-associative; postfix [..] binds tightest and chains left to right;
// predicates use ! above && above ||, with parentheses allowed. Bracket
// content is disambiguated by one token of lookahead: an attribute followed
// by -> is a rename, by a comparator a predicate, by ; or ] a projection;
// a leading ! or ( is always a predicate. A trailing ; after the last
// statement is permitted.
// ---------------------------------------------------------------------------

namespace detail {

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    TqlProgram parse_program() {
        TqlProgram program;
        while (!at(TokKind::Eof)) {
            program.stmts.push_back(parse_stmt());
            if (at(TokKind::Semi)) {
                next();
            } else if (!at(TokKind::Eof)) {
                throw err("expected ';' or end of input after a statement");
            }
        }
        return program;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    const Token& cur() const { return toks_[pos_]; }
    const Token& ahead(std::size_t k) const {
        const std::size_t i = pos_ + k;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    bool at(TokKind k) const { return cur().kind == k; }
    Token next() { return toks_[pos_++]; }
    Token expect(TokKind k, const char* what) {
        if (!at(k))
            throw SyntaxError(cur().span, std::string("expected ") + what + ", found " +
                                              tok_kind_name(cur().kind));
        return next();
    }
    SyntaxError err(const std::string& message) const {
        return SyntaxError(cur().span, message + ", found " + tok_kind_name(cur().kind));
    }

    static bool is_cmp(TokKind k) {
        return k == TokKind::EqEq || k == TokKind::NotEq || k == TokKind::Gt ||
               k == TokKind::Ge || k == TokKind::Lt || k == TokKind::Le;
    }
    static Cmp to_cmp(TokKind k) {
        switch (k) {
            case TokKind::EqEq: return Cmp::Eq;
            case TokKind::NotEq: return Cmp::Ne;
            case TokKind::Gt: return Cmp::Gt;
            case TokKind::Ge: return Cmp::Ge;
            case TokKind::Lt: return Cmp::Lt;
            default: return Cmp::Le;
        }
    }

    TqlStmt parse_stmt() {
        const Span span = cur().span;
        if (at(TokKind::KwReturn)) {
            next();
            return tql_return(parse_expr(), span);
        }
        const Token var = expect(TokKind::Ident, "a statement (variable or 'return')");
        if (at(TokKind::Colon)) {
            next();
            expect(TokKind::LBrace, "'{'");
            std::vector<TqlPrp> tp = parse_tp();
            expect(TokKind::RBrace, "'}'");
            if (at(TokKind::Assign)) {
                next();
                return tql_assign_typed(var.text, std::move(tp), parse_expr(), span);
            }
            return tql_free_decl_typed(var.text, std::move(tp), span);
        }
        if (at(TokKind::Assign)) {
            next();
            return tql_assign(var.text, parse_expr(), span);
        }
        return tql_free_decl(var.text, span);
    }

    TqlExprPtr parse_expr() {
        TqlExprPtr left = parse_product();
        while (at(TokKind::Plus) || at(TokKind::Minus)) {
            const Token op = next();
            left = tql_binary(op.kind == TokKind::Plus ? TqlBop::Union : TqlBop::Difference,
                              left, parse_product(), op.span);
        }
        return left;
    }

    TqlExprPtr parse_product() {
        TqlExprPtr left = parse_postfix();
        while (at(TokKind::Star)) {
            const Token op = next();
            left = tql_binary(TqlBop::Product, left, parse_postfix(), op.span);
        }
        return left;
    }

    TqlExprPtr parse_postfix() {
        TqlExprPtr e = parse_primary();
        while (at(TokKind::LBracket)) {
            const Token bracket = next();
            e = parse_bracket(std::move(e), bracket.span);
            expect(TokKind::RBracket, "']'");
        }
        return e;
    }

    TqlExprPtr parse_primary() {
        if (at(TokKind::Ident)) {
            const Token t = next();
            return tql_var(t.text, t.span);
        }
        if (at(TokKind::Lit)) {
            const Token t = next();
            return tql_dataset(t.text, t.span);
        }
        throw err("expected a variable or dataset literal");
    }

    // Content of expr[...]: rename, predicate, or projection.
    TqlExprPtr parse_bracket(TqlExprPtr input, Span span) {
        if (at(TokKind::Bang) || at(TokKind::LParen))
            return tql_filter(std::move(input), parse_pred(), span);
        if (at(TokKind::Attr)) {
            const TokKind after = ahead(1).kind;
            if (after == TokKind::Arrow) {
                const Token from = next();
                next();  // ->
                const Token to = expect(TokKind::Attr, "an attribute after '->'");
                return tql_rename(std::move(input), from.text, to.text, span);
            }
            if (is_cmp(after)) return tql_filter(std::move(input), parse_pred(), span);
            if (after == TokKind::Semi || after == TokKind::RBracket) {
                std::vector<std::string> attrs;
                attrs.push_back(next().text);
                while (at(TokKind::Semi)) {
                    next();
                    attrs.push_back(expect(TokKind::Attr, "an attribute").text);
                }
                return tql_projection(std::move(input), std::move(attrs), span);
            }
            throw SyntaxError(ahead(1).span,
                              std::string("expected '->', a comparator, ';' or ']' after an "
                                          "attribute, found ") +
                                  tok_kind_name(after));
        }
        throw err("expected an attribute, '!' or '(' inside brackets");
    }

    std::vector<TqlPrp> parse_tp() {
        std::vector<TqlPrp> tp;
        tp.push_back(parse_prp());
        while (at(TokKind::Semi)) {
            next();
            tp.push_back(parse_prp());
        }
        return tp;
    }

    TqlPrp parse_prp() {
        const Span span = cur().span;
        if (at(TokKind::Exists) || at(TokKind::Forall)) {
            const bool exists = next().kind == TokKind::Exists;
            expect(TokKind::LParen, "'('");
            PredicatePtr p = parse_pred();
            expect(TokKind::RParen, "')'");
            return exists ? prp_exists(std::move(p), span) : prp_forall(std::move(p), span);
        }
        if (at(TokKind::LBracket)) {
            next();
            const Token attr = expect(TokKind::Attr, "an attribute");
            expect(TokKind::RBracket, "']'");
            return prp_attribute(attr.text, span);
        }
        throw err("expected a property: \\/(..), /\\(..) or ['..']");
    }

    PredicatePtr parse_pred() { return parse_or(); }

    PredicatePtr parse_or() {
        PredicatePtr left = parse_and();
        while (at(TokKind::OrOr)) {
            next();
            left = pred_or(std::move(left), parse_and());
        }
        return left;
    }

    PredicatePtr parse_and() {
        PredicatePtr left = parse_pred_atom();
        while (at(TokKind::AndAnd)) {
            next();
            left = pred_and(std::move(left), parse_pred_atom());
        }
        return left;
    }

    PredicatePtr parse_pred_atom() {
        if (at(TokKind::Bang)) {
            next();
            return pred_not(parse_pred_atom());
        }
        if (at(TokKind::LParen)) {
            next();
            PredicatePtr p = parse_pred();
            expect(TokKind::RParen, "')'");
            return p;
        }
        const Token lhs = expect(TokKind::Attr, "an attribute");
        if (!is_cmp(cur().kind)) throw err("expected a comparator");
        const Cmp cmp = to_cmp(next().kind);
        if (at(TokKind::Attr)) return attr_cmp_attr(lhs.text, cmp, next().text);
        bool negative = false;
        if (at(TokKind::Minus)) {
            next();
            negative = true;
        }
        const Token num = expect(TokKind::Num, "an attribute or number");
        double value = 0.0;
        std::from_chars(num.text.data(), num.text.data() + num.text.size(), value);
        return attr_cmp_val(lhs.text, cmp, Value(negative ? -value : value));
    }
};

}  // namespace detail

inline TqlProgram parse(std::vector<Token> tokens) {
    return detail::Parser(std::move(tokens)).parse_program();
}

inline TqlProgram parse_source(const std::string& source) { return parse(tokenize(source)); }

}  // namespace tql
