#pragma once

#include <map>
#include <string>
#include <string_view>

#include "dlal/arena.hpp"
#include "dlal/dtype.hpp"
#include "dlal/fterm.hpp"

namespace dlal {

/// Node of a concrete pseudo-term over DLAL* types. Each door node holds a
/// single § (Door) or §- (AuxDoor).
struct SNode {
    enum class Kind { Var, Lam, App, TLam, TApp, Door, AuxDoor };

    Kind kind;
    std::string name{};  // Var, Lam: term variable; TLam: type binder
    DTypePtr type{};     // Var, Lam: input type of the variable; TApp: argument
    NodeId child[2] = {kNoNode, kNoNode};
    NodeId parent = kNoNode;
};

class PseudoTerm : public TermArena<SNode> {};

using DTypeContext = std::map<std::string, DTypePtr>;

/// Same term grammar as System F with two prefix door operators, `§` and
/// `§-` (ASCII `$`, `$-`), and DLAL* annotations. A door applies to the
/// following atom or abstraction: `§ f x` is `(§ f) x`.
/// Free variables take their types from `free`.
PseudoTerm parse_pseudo(std::string_view text, const DTypeContext& free = {});

/// Output is accepted by parse_pseudo.
std::string to_string(const PseudoTerm& t);
std::string to_string(const PseudoTerm& t, NodeId top);

FTermPtr erase(const PseudoTerm& t);
FTermPtr erase(const PseudoTerm& t, NodeId top);

/// Free variables of the whole term with their types.
DTypeContext free_variables(const PseudoTerm& t);

}  // namespace dlal
