#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "dpe/common.hpp"

namespace dpe::minilang {

struct Token {
    enum class Kind { ident, keyword, int_lit, str_lit, punct, eof };
    Kind kind;
    std::string text;
    int line = 1;
    int column = 1;
};

inline bool is_keyword(const std::string& s) {
    static const char* kws[] = {"fn", "int", "bool", "str", "if", "else", "while",
                                "for", "in", "return", "true", "false", "inf"};
    for (const char* k : kws)
        if (s == k) return true;
    return false;
}

// Tokenize a source unit. Two-character operators are single tokens.
inline std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i + k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };
    while (i < src.size()) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        int tl = line, tc = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            std::string word = src.substr(i, j - i);
            advance(j - i);
            out.push_back({is_keyword(word) ? Token::Kind::keyword : Token::Kind::ident,
                           std::move(word), tl, tc});
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            std::string digits = src.substr(i, j - i);
            advance(j - i);
            out.push_back({Token::Kind::int_lit, std::move(digits), tl, tc});
            continue;
        }
        if (c == '"') {
            std::string text;
            std::size_t j = i + 1;
            for (;;) {
                if (j >= src.size()) fail(errc::syntax_error, "unterminated string literal", tl, tc);
                char d = src[j];
                if (d == '"') break;
                if (d == '\\') {
                    if (j + 1 >= src.size())
                        fail(errc::syntax_error, "unterminated escape", tl, tc);
                    char e = src[j + 1];
                    switch (e) {
                    case 'n': text += '\n'; break;
                    case 't': text += '\t'; break;
                    case 'r': text += '\r'; break;
                    case '"': text += '"'; break;
                    case '\\': text += '\\'; break;
                    default:
                        fail(errc::syntax_error, std::string("unknown escape \\") + e, tl, tc);
                    }
                    j += 2;
                    continue;
                }
                if (d == '\n') fail(errc::syntax_error, "newline in string literal", tl, tc);
                text += d;
                ++j;
            }
            advance(j + 1 - i);
            out.push_back({Token::Kind::str_lit, std::move(text), tl, tc});
            continue;
        }
        static const char* two_char[] = {"+=", "-=", "*=", "/=", "==", "!=",
                                         "<=", ">=", "&&", "||"};
        bool matched = false;
        if (i + 1 < src.size()) {
            std::string pair = src.substr(i, 2);
            for (const char* op : two_char) {
                if (pair == op) {
                    advance(2);
                    out.push_back({Token::Kind::punct, pair, tl, tc});
                    matched = true;
                    break;
                }
            }
        }
        if (matched) continue;
        static const std::string singles = "(){}[];,=+-*/%<>!";
        if (singles.find(c) != std::string::npos) {
            advance(1);
            out.push_back({Token::Kind::punct, std::string(1, c), tl, tc});
            continue;
        }
        fail(errc::syntax_error, std::string("unexpected character '") + c + "'", tl, tc);
    }
    out.push_back({Token::Kind::eof, "", line, col});
    return out;
}

} // namespace dpe::minilang
