#pragma once

#include "dlal/dtype.hpp"
#include "lexer.hpp"

namespace dlal::detail {

DTypePtr parse_dtype(TokenStream& ts);

}  // namespace dlal::detail
