#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dlal/fterm.hpp"

namespace dlal::encodings {

/// forall a. (a -> a) -> (a -> a) -> a -> a
FTypePtr word_type();

/// forall a. (a -> a) -> a -> a
FTypePtr numeral_type();

/// Church word over {0,1}; the first letter is applied outermost.
FTermPtr word(std::string_view bits);

FTermPtr numeral(unsigned n);

FTermPtr identity();

/// Reversal by a single higher-order iteration.
FTermPtr rev();

FTermPtr rev_applied(std::string_view bits);

/// Word concatenation, W -> W -> W.
FTermPtr concat();

/// \f:W->W. \g:W->W. \w:W. f (g w)
FTermPtr compose();

/// \w:W. rev (rev w)
FTermPtr rev_twice();

/// Numeral doubling; uses its argument twice.
FTermPtr double_numeral();

/// \n:N. n [N] double one
FTermPtr exp();

struct Entry {
    std::string name;
    std::string description;
    FTermPtr term;
    bool expected_typable;
};

/// Named corpus; `word:BITS` and `numeral:K` are also accepted by lookup().
std::vector<Entry> corpus();

/// Resolves a corpus name; throws std::invalid_argument when unknown.
FTermPtr lookup(std::string_view name);

/// Plain DLAL word and numeral types.
extern const char* const word_dlal;
extern const char* const numeral_dlal;

/// Replaces the standalone identifiers W and N by the DLAL word and numeral types.
std::string expand_dlal_abbreviations(std::string_view text);

}  // namespace dlal::encodings
