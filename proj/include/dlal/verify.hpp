#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dlal/constraints.hpp"
#include "dlal/instantiate.hpp"
#include "dlal/pseudo.hpp"

namespace dlal {

/// Word over {§, §-}, stored as +1 / -1.
using DoorWord = std::vector<int>;

/// Doors on the path from `top` down to `target`, `top` included and
/// `target` excluded. Empty when target == top.
DoorWord doors(const PseudoTerm& t, NodeId top, NodeId target);

int door_sum(const DoorWord& w);
bool weakly_well_bracketed(const DoorWord& w);
bool well_bracketed(const DoorWord& w);
std::string to_string(const DoorWord& w);

struct Violation {
    std::string condition;  // regular, local typing, bracketing, bang, scope
    std::string clause;     // i, ii, iii or empty
    Occurrence path;
    std::string detail;
};

/// "bracketing (iii) at 0.0: ..."
std::string to_string(const Violation& v);

using CheckResult = std::optional<Violation>;

CheckResult check_regular(const PseudoTerm& t);

struct ConcreteTyping {
    /// Output type per node; null above a failure.
    std::vector<DTypePtr> types;
    CheckResult violation;

    const DTypePtr& type(NodeId n) const { return types.at(n); }
};

ConcreteTyping check_local_typing(const PseudoTerm& t);

CheckResult check_bracketing(const PseudoTerm& t);

/// Requires a successful local typing of t.
CheckResult check_bang(const PseudoTerm& t, const ConcreteTyping& lt);
CheckResult check_scope(const PseudoTerm& t, const ConcreteTyping& lt);

/// local typing, bracketing, bang, scope, regular; first violation wins.
CheckResult verify_all(const PseudoTerm& t);

class SearchCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SearchOptions {
    std::int64_t bound = 2;
    /// Maximal number of candidate instantiations.
    std::uint64_t cap = 5'000'000;
};

/// Every instantiation of the free decoration of m with integers in
/// [-bound, bound] that is admissible and passes verify_all, in
/// enumeration order.
std::vector<Instantiation> bounded_search(const FTermPtr& m, const SearchOptions& options = {},
                                          const TypeContext& ctx = {});

/// Number of candidates bounded_search would enumerate, saturating at
/// UINT64_MAX.
std::uint64_t search_space(const PTerm& t, std::int64_t bound);

}  // namespace dlal
