#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "dlal/fterm.hpp"

namespace dlal {

struct DType;
using DTypePtr = std::shared_ptr<const DType>;

/// Concrete DLAL types. One representation serves both surface forms:
/// the starred form uses `!A -o B` (Bang only as a lolli domain), the
/// plain form uses `A => B`.
struct DType {
    enum class Kind { Var, Lolli, Implies, Forall, Section, Bang };

    Kind kind;
    std::string name;  // Var: variable; Forall: binder
    DTypePtr left;     // Lolli, Implies: domain
    DTypePtr right;    // Lolli, Implies: codomain; Forall, Section, Bang: body

    static DTypePtr var(std::string name);
    static DTypePtr lolli(DTypePtr dom, DTypePtr cod);
    static DTypePtr implies(DTypePtr dom, DTypePtr cod);
    static DTypePtr forall(std::string binder, DTypePtr body);
    static DTypePtr section(DTypePtr body);
    static DTypePtr bang(DTypePtr body);
    /// §^k body
    static DTypePtr sections(unsigned k, DTypePtr body);
};

/// Raised when a type has ! outside a lolli domain (starred form) or when a
/// plain-form operation meets a !.
class BadModality : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

DTypePtr parse_dtype(std::string_view text);

/// Uses §, !, -o, =>, "forall a.".
std::string to_string(const DTypePtr& t);

bool alpha_equal(const DTypePtr& a, const DTypePtr& b);
std::set<std::string> free_type_vars(const DTypePtr& t);
DTypePtr subst_dtype(const DTypePtr& t, const std::string& var, const DTypePtr& replacement);

/// Removes §, ! and reads both arrows as ->.
FTypePtr erase(const DTypePtr& t);

/// (A => B)* = !A* -o B*.
DTypePtr star(const DTypePtr& t);

/// !A -o B becomes A => B; throws BadModality on any other !.
DTypePtr star_inverse(const DTypePtr& t);

/// Depth of a plain-form type; throws BadModality on !.
unsigned depth(const DTypePtr& t);

/// No negative occurrence of forall.
bool is_pi1(const DTypePtr& t);

/// True for !A.
inline bool is_bang(const DTypePtr& t) { return t->kind == DType::Kind::Bang; }

/// The linear type D° of an input type: §A for !A, D itself otherwise.
DTypePtr circ(const DTypePtr& d);

}  // namespace dlal
