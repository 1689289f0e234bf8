#pragma once

#include <cctype>
#include <charconv>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tql {

// 1-based source position. Columns count bytes within the line.
struct Span {
    std::size_t line = 1;
    std::size_t column = 1;

    bool operator==(const Span& o) const { return line == o.line && column == o.column; }
};

/// Lexical or parse failure, carrying the source position it points at.
struct SyntaxError : std::runtime_error {
    Span span;

    SyntaxError(Span s, const std::string& message) : std::runtime_error(message), span(s) {}
};

enum class TokKind {
    Ident,
    Attr,      // 'single-quoted'
    Lit,       // "double-quoted"
    Num,
    KwReturn,
    Plus,
    Minus,
    Star,
    EqEq,
    NotEq,
    Gt,
    Ge,
    Lt,
    Le,
    Bang,
    AndAnd,
    OrOr,
    Arrow,     // ->
    Semi,
    Colon,
    Assign,    // =
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Exists,    // the \/ symbol
    Forall,    // the /\ symbol
    Eof,
};

inline const char* tok_kind_name(TokKind k) {
    switch (k) {
        case TokKind::Ident: return "identifier";
        case TokKind::Attr: return "attribute";
        case TokKind::Lit: return "dataset literal";
        case TokKind::Num: return "number";
        case TokKind::KwReturn: return "'return'";
        case TokKind::Plus: return "'+'";
        case TokKind::Minus: return "'-'";
        case TokKind::Star: return "'*'";
        case TokKind::EqEq: return "'=='";
        case TokKind::NotEq: return "'!='";
        case TokKind::Gt: return "'>'";
        case TokKind::Ge: return "'>='";
        case TokKind::Lt: return "'<'";
        case TokKind::Le: return "'<='";
        case TokKind::Bang: return "'!'";
        case TokKind::AndAnd: return "'&&'";
        case TokKind::OrOr: return "'||'";
        case TokKind::Arrow: return "'->'";
        case TokKind::Semi: return "';'";
        case TokKind::Colon: return "':'";
        case TokKind::Assign: return "'='";
        case TokKind::LBrace: return "'{'";
        case TokKind::RBrace: return "'}'";
        case TokKind::LBracket: return "'['";
        case TokKind::RBracket: return "']'";
        case TokKind::LParen: return "'('";
        case TokKind::RParen: return "')'";
        case TokKind::Exists: return "'\\/'";
        case TokKind::Forall: return "'/\\'";
        case TokKind::Eof: return "end of input";
    }
    return "?";
}

struct Token {
    TokKind kind;
    std::string text;  // source slice without quotes for Attr/Lit
    Span span;
};

/// Maximal-munch tokenizer. Whitespace and `--` line comments are skipped.
/// The result always ends with an Eof token.
inline std::vector<Token> tokenize(const std::string& source) {
    std::vector<Token> out;
    std::size_t i = 0, line = 1, column = 1;
    const std::size_t n = source.size();

    const auto peek = [&](std::size_t ahead) -> char {
        return i + ahead < n ? source[i + ahead] : '\0';
    };
    const auto advance = [&] {
        if (source[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
        ++i;
    };
    const auto push = [&](TokKind kind, std::string text, Span span) {
        out.push_back({kind, std::move(text), span});
    };

    while (i < n) {
        const char c = source[i];
        const Span here{line, column};

        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance();
            continue;
        }
        if (c == '-' && peek(1) == '-') {
            while (i < n && source[i] != '\n') advance();
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string text;
            while (i < n && (std::isalnum(static_cast<unsigned char>(source[i])) ||
                             source[i] == '_')) {
                text += source[i];
                advance();
            }
            const TokKind kind = text == "return" ? TokKind::KwReturn : TokKind::Ident;
            push(kind, std::move(text), here);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string text;
            while (i < n && std::isdigit(static_cast<unsigned char>(source[i]))) {
                text += source[i];
                advance();
            }
            if (i < n && source[i] == '.' &&
                std::isdigit(static_cast<unsigned char>(peek(1)))) {
                text += source[i];
                advance();
                while (i < n && std::isdigit(static_cast<unsigned char>(source[i]))) {
                    text += source[i];
                    advance();
                }
            }
            if (i < n && (source[i] == 'e' || source[i] == 'E')) {
                std::size_t digits_at = (peek(1) == '+' || peek(1) == '-') ? 2 : 1;
                if (std::isdigit(static_cast<unsigned char>(peek(digits_at)))) {
                    for (std::size_t k = 0; k < digits_at; ++k) {
                        text += source[i];
                        advance();
                    }
                    while (i < n && std::isdigit(static_cast<unsigned char>(source[i]))) {
                        text += source[i];
                        advance();
                    }
                }
            }
            double value = 0.0;
            const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
            if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
                throw SyntaxError(here, "number '" + text + "' is out of range");
            push(TokKind::Num, std::move(text), here);
            continue;
        }
        if (c == '\'' || c == '"') {
            const char quote = c;
            advance();
            std::string text;
            while (i < n && source[i] != quote && source[i] != '\n') {
                text += source[i];
                advance();
            }
            if (i >= n || source[i] != quote)
                throw SyntaxError(here, std::string("unterminated ") +
                                            (quote == '\'' ? "attribute" : "dataset") +
                                            " literal");
            advance();
            push(quote == '\'' ? TokKind::Attr : TokKind::Lit, std::move(text), here);
            continue;
        }

        const auto two = [&](char second) { return peek(1) == second; };
        switch (c) {
            case '+': advance(); push(TokKind::Plus, "+", here); continue;
            case '-':
                advance();
                if (i < n && source[i] == '>') {
                    advance();
                    push(TokKind::Arrow, "->", here);
                } else {
                    push(TokKind::Minus, "-", here);
                }
                continue;
            case '*': advance(); push(TokKind::Star, "*", here); continue;
            case '=':
                advance();
                if (i < n && source[i] == '=') {
                    advance();
                    push(TokKind::EqEq, "==", here);
                } else {
                    push(TokKind::Assign, "=", here);
                }
                continue;
            case '!':
                advance();
                if (i < n && source[i] == '=') {
                    advance();
                    push(TokKind::NotEq, "!=", here);
                } else {
                    push(TokKind::Bang, "!", here);
                }
                continue;
            case '>':
                advance();
                if (i < n && source[i] == '=') {
                    advance();
                    push(TokKind::Ge, ">=", here);
                } else {
                    push(TokKind::Gt, ">", here);
                }
                continue;
            case '<':
                advance();
                if (i < n && source[i] == '=') {
                    advance();
                    push(TokKind::Le, "<=", here);
                } else {
                    push(TokKind::Lt, "<", here);
                }
                continue;
            case '&':
                if (!two('&')) throw SyntaxError(here, "expected '&&'");
                advance();
                advance();
                push(TokKind::AndAnd, "&&", here);
                continue;
            case '|':
                if (!two('|')) throw SyntaxError(here, "expected '||'");
                advance();
                advance();
                push(TokKind::OrOr, "||", here);
                continue;
            case '\\':
                if (!two('/')) throw SyntaxError(here, "expected '\\/'");
                advance();
                advance();
                push(TokKind::Exists, "\\/", here);
                continue;
            case '/':
                if (!two('\\')) throw SyntaxError(here, "expected '/\\'");
                advance();
                advance();
                push(TokKind::Forall, "/\\", here);
                continue;
            case ';': advance(); push(TokKind::Semi, ";", here); continue;
            case ':': advance(); push(TokKind::Colon, ":", here); continue;
            case '{': advance(); push(TokKind::LBrace, "{", here); continue;
            case '}': advance(); push(TokKind::RBrace, "}", here); continue;
            case '[': advance(); push(TokKind::LBracket, "[", here); continue;
            case ']': advance(); push(TokKind::RBracket, "]", here); continue;
            case '(': advance(); push(TokKind::LParen, "(", here); continue;
            case ')': advance(); push(TokKind::RParen, ")", here); continue;
            default:
                throw SyntaxError(here, std::string("unrecognized character '") + c + "'");
        }
    }
    out.push_back({TokKind::Eof, "", Span{line, column}});
    return out;
}

}  // namespace tql
