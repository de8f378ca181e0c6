#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dlal/instantiate.hpp"
#include "dlal/pterm.hpp"

namespace dlal {

/// One constraint over parameters.
///   BoolEq    b1 = b2
///   BoolConst b1 = value
///   BoolImpl  b1 = 1 => b2 = 1
///   LinEq     lhs = rhs
///   LinGeq    lhs >= k
///   LinEq0    lhs = k        (k = 0 except for goal atoms)
///   Mixed     b1 = 1 => lhs >= k
struct Atom {
    enum class Kind { BoolEq, BoolConst, BoolImpl, LinEq, LinGeq, LinEq0, Mixed };

    Kind kind;
    BoolParam b1{};
    BoolParam b2{};
    bool value = false;
    LinComb lhs{};
    LinComb rhs{};
    std::int64_t k = 0;

    static Atom bool_eq(BoolParam a, BoolParam b);
    static Atom bool_const(BoolParam b, bool v);
    static Atom bool_impl(BoolParam a, BoolParam b);
    static Atom lin_eq(LinComb a, LinComb b);
    static Atom lin_geq(LinComb c, std::int64_t k);
    static Atom lin_eq0(LinComb c, std::int64_t k = 0);
    static Atom mixed(BoolParam b, LinComb c, std::int64_t k = 1);

    friend bool operator==(const Atom&, const Atom&) = default;
    friend auto operator<=>(const Atom&, const Atom&) = default;
};

enum class AtomClass { Boolean, Linear, Mixed };

AtomClass class_of(const Atom& a);

/// "B", "L" or "M".
const char* class_tag(AtomClass c);

std::string to_string(const Atom& a);

/// Orders the sides of equations and cancels shared terms.
Atom normalize(const Atom& a);

/// True for atoms every assignment satisfies (0 >= 0, c = c, ...).
bool is_tautology(const Atom& a);

bool holds(const Atom& a, const Instantiation& phi);

/// An atom with its origin: a rule tag and the occurrence it was generated at.
struct Constraint {
    Atom atom;
    std::string rule;
    Occurrence path;
};

/// Constraint set partitioned into boolean, linear and mixed atoms.
/// Tautologies and repeated atoms are dropped; the first provenance wins.
class ConstraintStore {
public:
    bool add(Constraint c);
    void add_all(const std::vector<Constraint>& cs);

    const std::vector<Constraint>& boolean() const { return boolean_; }
    const std::vector<Constraint>& linear() const { return linear_; }
    const std::vector<Constraint>& mixed() const { return mixed_; }
    std::size_t size() const { return boolean_.size() + linear_.size() + mixed_.size(); }

    /// All constraints ordered by occurrence path, then by insertion.
    std::vector<const Constraint*> ordered() const;

    std::set<BoolParam> bool_params() const;
    std::set<IntParam> int_params() const;

    /// First atom `phi` violates, if any.
    const Constraint* first_violation(const Instantiation& phi) const;

private:
    std::vector<Constraint> boolean_, linear_, mixed_;
    std::vector<std::pair<AtomClass, std::size_t>> order_;
    std::set<Atom> seen_;
};

/// One line per atom: `CLASS | ATOM | RULE | PATH`.
std::string dump(const ConstraintStore& store);

/// U(E1, E2); nullopt when the skeletons differ.
std::optional<std::vector<Atom>> unify(const LinearPType& a, const LinearPType& b);
std::optional<std::vector<Atom>> unify(const BangPType& a, const BangPType& b);
std::optional<std::vector<Atom>> unify(const PSkelPtr& a, const PSkelPtr& b);

/// M(E): c >= 0 for every combination, b = 1 => c >= 1 for every bang node.
std::vector<Atom> admissibility(const LinearPType& a);
std::vector<Atom> admissibility(const BangPType& d);

/// Atoms forcing `a` to instantiate to the DLAL* type `goal` (linear);
/// nullopt when the shapes differ. Bound variables match up to renaming.
std::optional<std::vector<Atom>> match_goal(const LinearPType& a, const DTypePtr& goal);

/// p-term with the output p-type of every node.
struct TypedPTerm {
    PTerm term;
    std::vector<LinearPType> types;

    const LinearPType& type(NodeId n) const { return types.at(n); }
    const LinearPType& conclusion() const { return types.at(term.root()); }
};

struct LocalTyping {
    TypedPTerm typed;
    std::vector<Constraint> constraints;
};

/// Output p-types and Ltype(t). Throws std::logic_error if a unification
/// is undefined.
LocalTyping local_typing(PTerm t);

/// Door parameters on the path from `top` (inclusive) to `target` (exclusive).
std::vector<IntParam> doors(const PTerm& t, NodeId top, NodeId target);

LinComb lsum(const std::vector<IntParam>& word);

/// Non-trivial prefix sums >= 0; bracket adds the total = 0.
std::vector<Atom> wbracket(const std::vector<IntParam>& word);
std::vector<Atom> bracket(const std::vector<IntParam>& word);

std::vector<Constraint> gen_bracketing(const TypedPTerm& t);
std::vector<Constraint> gen_bang(const TypedPTerm& t);
std::vector<Constraint> gen_scope(const TypedPTerm& t);

struct Generated {
    ParamPool pool;
    TypedPTerm typed;
    ConstraintStore store;
};

/// Free decoration, local typing and the three boxing generators.
Generated gen_all(const FTermPtr& m, const TypeContext& ctx = {});

}  // namespace dlal
