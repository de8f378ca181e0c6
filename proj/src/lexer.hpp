#pragma once

// Tokenizer shared by the System F, DLAL type and pseudo-term parsers.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dlal/fterm.hpp"

namespace dlal::detail {

enum class Tok {
    Ident,
    Forall,      // forall, ∀
    Lambda,      // \, λ
    BigLambda,   // /\, Λ
    Colon,
    Dot,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Arrow,       // ->, →
    Lolli,       // -o, ⊸
    Implies,     // =>, ⇒
    Bang,        // !
    Section,     // §, $
    SectionBar,  // §-, $-
    End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view text);

const char* describe(Tok kind);

class TokenStream {
public:
    explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    const Token& peek(std::size_t ahead = 0) const;
    bool at(Tok kind) const { return peek().kind == kind; }
    Token next();
    Token expect(Tok kind);
    bool accept(Tok kind);
    [[noreturn]] void fail(const std::string& what) const;

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace dlal::detail
