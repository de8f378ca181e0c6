#include "dlal/encodings.hpp"

#include <regex>
#include <stdexcept>

namespace dlal::encodings {

namespace {

constexpr const char* kWord = "(forall a. (a -> a) -> (a -> a) -> a -> a)";
constexpr const char* kNum = "(forall a. (a -> a) -> a -> a)";

std::string with_types(std::string text) {
    auto replace_all = [&](const std::string& from, const std::string& to) {
        for (std::size_t pos = 0; (pos = text.find(from, pos)) != std::string::npos; pos += to.size())
            text.replace(pos, from.size(), to);
    };
    replace_all("W", kWord);
    replace_all("N", kNum);
    return text;
}

std::string rev_source() {
    return "\\l:W. /\\b. \\so:b -> b. \\si:b -> b. "
           "l [b -> b] (\\a:b -> b. \\x:b. a (so x)) (\\a:b -> b. \\x:b. a (si x)) ((/\\c. \\z:c. z) [b])";
}

std::string double_source() {
    return "\\m:N. /\\a. \\f:a -> a. \\x:a. m [a] f (m [a] f x)";
}

}  // namespace

FTypePtr word_type() { return parse_type(kWord); }

FTypePtr numeral_type() { return parse_type(kNum); }

FTermPtr word(std::string_view bits) {
    std::string body = "x";
    for (auto it = bits.rbegin(); it != bits.rend(); ++it) {
        if (*it != '0' && *it != '1') throw std::invalid_argument("word letters must be 0 or 1");
        body = std::string(*it == '0' ? "so" : "si") + " (" + body + ")";
    }
    return parse_term("/\\a. \\so:a -> a. \\si:a -> a. \\x:a. " + body);
}

FTermPtr numeral(unsigned n) {
    std::string body = "x";
    for (unsigned i = 0; i < n; ++i) body = "f (" + body + ")";
    return parse_term("/\\a. \\f:a -> a. \\x:a. " + body);
}

FTermPtr identity() { return parse_term("/\\a. \\x:a. x"); }

FTermPtr rev() { return parse_term(with_types(rev_source())); }

FTermPtr rev_applied(std::string_view bits) { return FTerm::app(rev(), word(bits)); }

FTermPtr concat() {
    return parse_term(with_types(
        "\\u:W. \\v:W. /\\a. \\so:a -> a. \\si:a -> a. \\x:a. u [a] so si (v [a] so si x)"));
}

FTermPtr compose() {
    return parse_term(with_types("\\f:W -> W. \\g:W -> W. \\w:W. f (g w)"));
}

FTermPtr rev_twice() {
    return parse_term(with_types("\\w:W. (" + rev_source() + ") ((" + rev_source() + ") w)"));
}

FTermPtr double_numeral() { return parse_term(with_types(double_source())); }

FTermPtr exp() {
    return parse_term(with_types("\\n:N. n [N] (" + double_source() + ") (/\\a. \\f:a -> a. \\x:a. f x)"));
}

std::vector<Entry> corpus() {
    std::vector<Entry> out = {
        {"id", "polymorphic identity", identity(), true},
        {"rev", "word reversal", rev(), true},
        {"rev1010", "reversal applied to the word 1010", rev_applied("1010"), true},
        {"concat", "word concatenation", concat(), true},
        {"compose", "composition of word functions", compose(), true},
        {"revrev", "reversal applied twice", rev_twice(), true},
        {"concat-words", "concatenation of 10 and 011",
         FTerm::app(FTerm::app(concat(), word("10")), word("011")), true},
        {"double", "numeral doubling", double_numeral(), true},
        {"exp", "numeral iterating doubling", exp(), false},
    };
    for (const char* w : {"", "0", "1", "01", "1010", "0110", "11111111"})
        out.push_back({"word:" + std::string(w), "Church word", word(w), true});
    for (unsigned k : {0u, 1u, 2u, 3u}) out.push_back({"numeral:" + std::to_string(k), "Church numeral", numeral(k), true});
    return out;
}

FTermPtr lookup(std::string_view name) {
    if (name.substr(0, 5) == "word:") return word(name.substr(5));
    if (name.substr(0, 8) == "numeral:") return numeral(static_cast<unsigned>(std::stoul(std::string(name.substr(8)))));
    for (auto& e : corpus())
        if (e.name == name) return e.term;
    throw std::invalid_argument("unknown corpus entry '" + std::string(name) + "'");
}

const char* const word_dlal = "forall a. (a -o a) => (a -o a) => §(a -o a)";
const char* const numeral_dlal = "forall a. (a -o a) => §(a -o a)";

std::string expand_dlal_abbreviations(std::string_view text) {
    static const std::regex w("\\bW\\b"), n("\\bN\\b");
    std::string s(text);
    s = std::regex_replace(s, w, "(" + std::string(word_dlal) + ")");
    return std::regex_replace(s, n, "(" + std::string(numeral_dlal) + ")");
}

}  // namespace dlal::encodings
