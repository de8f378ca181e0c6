#pragma once

#include <memory>
#include <set>
#include <string>

#include "dlal/fterm.hpp"
#include "dlal/params.hpp"

namespace dlal {

struct PSkel;
using PSkelPtr = std::shared_ptr<const PSkel>;

/// Linear p-type: §^c F.
struct LinearPType {
    LinComb c;
    PSkelPtr skel;
};

/// Bang p-type: §^{b,c} F. With b = 1 it instantiates to !§^{c-1} F.
struct BangPType {
    BoolParam b;
    LinComb c;
    PSkelPtr skel;

    /// The linear p-type §^c F.
    LinearPType circ() const { return {c, skel}; }
};

/// Skeleton: a | D -o A | forall a. A
struct PSkel {
    enum class Kind { Var, Arrow, Forall };

    Kind kind;
    std::string name;  // Var: variable; Forall: binder
    BangPType dom;     // Arrow
    LinearPType cod;   // Arrow: codomain; Forall: body

    static PSkelPtr var(std::string name);
    static PSkelPtr arrow(BangPType dom, LinearPType cod);
    static PSkelPtr forall(std::string binder, LinearPType body);
};

/// Free decorations: every combination is a single fresh parameter.
LinearPType linear_free_decoration(const FTypePtr& t, ParamPool& pool);
BangPType bang_free_decoration(const FTypePtr& t, ParamPool& pool);

FTypePtr erase(const LinearPType& t);
FTypePtr erase(const BangPType& t);
FTypePtr erase(const PSkelPtr& t);

/// B[A/a]: each §^{c'} a becomes §^{c'+c} F and each §^{b,c'} a becomes
/// §^{b,c'+c} F, where A = §^c F.
LinearPType ptype_subst(const LinearPType& b, const std::string& var, const LinearPType& a);
BangPType ptype_subst(const BangPType& b, const std::string& var, const LinearPType& a);

std::set<std::string> free_type_vars(const LinearPType& t);
std::set<std::string> free_type_vars(const BangPType& t);

/// Printed as {c}F and {b,c}F.
std::string to_string(const LinearPType& t);
std::string to_string(const BangPType& t);

/// Visits every linear node (combination) and every bang node of a p-type.
struct PTypeVisitor {
    virtual ~PTypeVisitor() = default;
    virtual void linear(const LinearPType&) {}
    virtual void bang(const BangPType&) {}
};
void walk(const LinearPType& t, PTypeVisitor& v);
void walk(const BangPType& t, PTypeVisitor& v);

}  // namespace dlal
