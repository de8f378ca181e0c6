#include "lexer.hpp"

#include <cctype>

namespace dlal::detail {

namespace {

bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0, line = 1, col = 1;

    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
                ++col;
            }
        }
    };
    auto starts = [&](std::string_view s) { return text.substr(i, s.size()) == s; };
    auto push = [&](Tok kind, std::size_t len) {
        out.push_back({kind, std::string(text.substr(i, len)), line, col});
        advance(len);
    };

    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (starts("--")) {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            std::string word(text.substr(i, j - i));
            push(word == "forall" ? Tok::Forall : Tok::Ident, j - i);
            continue;
        }
        // Multi-byte and multi-character symbols first.
        if (starts("/\\")) { push(Tok::BigLambda, 2); continue; }
        if (starts("->")) { push(Tok::Arrow, 2); continue; }
        if (starts("-o")) { push(Tok::Lolli, 2); continue; }
        if (starts("=>")) { push(Tok::Implies, 2); continue; }
        if (starts("\xC2\xA7-")) { push(Tok::SectionBar, 3); continue; }
        if (starts("\xC2\xA7")) { push(Tok::Section, 2); continue; }
        if (starts("$-")) { push(Tok::SectionBar, 2); continue; }
        if (starts("\xCE\xBB")) { push(Tok::Lambda, 2); continue; }      // λ
        if (starts("\xCE\x9B")) { push(Tok::BigLambda, 2); continue; }   // Λ
        if (starts("\xE2\x88\x80")) { push(Tok::Forall, 3); continue; }  // ∀
        if (starts("\xE2\x86\x92")) { push(Tok::Arrow, 3); continue; }   // →
        if (starts("\xE2\x8A\xB8")) { push(Tok::Lolli, 3); continue; }   // ⊸
        if (starts("\xE2\x87\x92")) { push(Tok::Implies, 3); continue; } // ⇒
        switch (c) {
            case '\\': push(Tok::Lambda, 1); continue;
            case ':': push(Tok::Colon, 1); continue;
            case '.': push(Tok::Dot, 1); continue;
            case '(': push(Tok::LParen, 1); continue;
            case ')': push(Tok::RParen, 1); continue;
            case '[': push(Tok::LBracket, 1); continue;
            case ']': push(Tok::RBracket, 1); continue;
            case '!': push(Tok::Bang, 1); continue;
            case '$': push(Tok::Section, 1); continue;
            default: break;
        }
        throw ParseError(line, col, "unexpected character '" + std::string(1, c) + "'");
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

const char* describe(Tok kind) {
    switch (kind) {
        case Tok::Ident: return "identifier";
        case Tok::Forall: return "'forall'";
        case Tok::Lambda: return "'\\'";
        case Tok::BigLambda: return "'/\\'";
        case Tok::Colon: return "':'";
        case Tok::Dot: return "'.'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBracket: return "'['";
        case Tok::RBracket: return "']'";
        case Tok::Arrow: return "'->'";
        case Tok::Lolli: return "'-o'";
        case Tok::Implies: return "'=>'";
        case Tok::Bang: return "'!'";
        case Tok::Section: return "'\xC2\xA7'";
        case Tok::SectionBar: return "'\xC2\xA7-'";
        case Tok::End: return "end of input";
    }
    return "?";
}

const Token& TokenStream::peek(std::size_t ahead) const {
    std::size_t k = pos_ + ahead;
    return k < tokens_.size() ? tokens_[k] : tokens_.back();
}

Token TokenStream::next() {
    Token t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
}

Token TokenStream::expect(Tok kind) {
    if (!at(kind)) fail(std::string("expected ") + describe(kind));
    return next();
}

bool TokenStream::accept(Tok kind) {
    if (!at(kind)) return false;
    next();
    return true;
}

void TokenStream::fail(const std::string& what) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.column, what + ", found " + found);
}

}  // namespace dlal::detail
