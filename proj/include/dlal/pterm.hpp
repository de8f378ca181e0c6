#pragma once

#include <map>
#include <set>
#include <string>

#include "dlal/arena.hpp"
#include "dlal/fterm.hpp"
#include "dlal/ptype.hpp"

namespace dlal {

/// Node of a parameterized pseudo-term:
///   x^D | \x^D. t | (t) u | /\a. t | (t) A | §^m t
struct PNode {
    enum class Kind { Var, Lam, App, TLam, TApp, Door };

    Kind kind;
    std::string name;      // Var, Lam: term variable; TLam: type binder
    BangPType var_type;    // Var, Lam
    LinearPType type_arg;  // TApp
    IntParam door;         // Door
    NodeId child[2] = {kNoNode, kNoNode};
    NodeId parent = kNoNode;
};

class PTerm : public TermArena<PNode> {
public:
    /// Decoration shared by all occurrences of each variable (bound or free).
    const std::map<std::string, BangPType>& variables() const { return variables_; }
    const std::set<std::string>& free_variables() const { return free_; }

    /// Number of occurrences of each variable.
    const std::map<std::string, unsigned>& occurrence_counts() const { return counts_; }

    std::set<IntParam> int_params() const;
    std::set<BoolParam> bool_params() const;

private:
    friend PTerm free_decoration(const FTermPtr&, ParamPool&, const TypeContext&);

    std::map<std::string, BangPType> variables_;
    std::set<std::string> free_;
    std::map<std::string, unsigned> counts_;
};

/// The free decoration <M>. M is alpha-normalized first, so binder names in
/// the result may differ from the input. Throws TypeError if M is ill-typed.
PTerm free_decoration(const FTermPtr& m, ParamPool& pool, const TypeContext& ctx = {});

FTermPtr erase(const PTerm& t);
FTermPtr erase(const PTerm& t, NodeId top);

std::string to_string(const PTerm& t);

}  // namespace dlal
