#include "dlal/constraints.hpp"

#include <stdexcept>

namespace dlal {

namespace {

void collect_names(const PSkelPtr& s, std::set<std::string>& out) {
    switch (s->kind) {
        case PSkel::Kind::Var: out.insert(s->name); return;
        case PSkel::Kind::Arrow:
            collect_names(s->dom.skel, out);
            collect_names(s->cod.skel, out);
            return;
        case PSkel::Kind::Forall:
            out.insert(s->name);
            collect_names(s->cod.skel, out);
            return;
    }
}

LinearPType rename(const LinearPType& a, const std::string& from, const std::string& to) {
    return ptype_subst(a, from, LinearPType{LinComb(), PSkel::var(to)});
}

bool unify_skel(const PSkelPtr& a, const PSkelPtr& b, std::vector<Atom>& out);

bool unify_linear(const LinearPType& a, const LinearPType& b, std::vector<Atom>& out) {
    out.push_back(Atom::lin_eq(a.c, b.c));
    return unify_skel(a.skel, b.skel, out);
}

bool unify_bang(const BangPType& a, const BangPType& b, std::vector<Atom>& out) {
    out.push_back(Atom::bool_eq(a.b, b.b));
    out.push_back(Atom::lin_eq(a.c, b.c));
    return unify_skel(a.skel, b.skel, out);
}

bool unify_skel(const PSkelPtr& a, const PSkelPtr& b, std::vector<Atom>& out) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case PSkel::Kind::Var: return a->name == b->name;
        case PSkel::Kind::Arrow: return unify_bang(a->dom, b->dom, out) && unify_linear(a->cod, b->cod, out);
        case PSkel::Kind::Forall: {
            if (a->name == b->name) return unify_linear(a->cod, b->cod, out);
            std::set<std::string> used;
            collect_names(a->cod.skel, used);
            collect_names(b->cod.skel, used);
            std::string fresh = a->name;
            for (int i = 1; used.count(fresh); ++i) fresh = a->name + "_" + std::to_string(i);
            return unify_linear(rename(a->cod, a->name, fresh), rename(b->cod, b->name, fresh), out);
        }
    }
    return false;
}

using Renaming = std::map<std::string, std::string>;

// §^k A' with A' not a section.
std::pair<std::int64_t, DTypePtr> strip_sections(DTypePtr t) {
    std::int64_t k = 0;
    for (; t->kind == DType::Kind::Section; t = t->right) ++k;
    return {k, t};
}

bool match_skel(const PSkelPtr& f, const DTypePtr& g, Renaming& names, std::vector<Atom>& out);

bool match_linear(const LinearPType& a, const DTypePtr& g, Renaming& names, std::vector<Atom>& out) {
    auto [k, rest] = strip_sections(g);
    out.push_back(Atom::lin_eq0(a.c, k));
    return match_skel(a.skel, rest, names, out);
}

bool match_skel(const PSkelPtr& f, const DTypePtr& g, Renaming& names, std::vector<Atom>& out) {
    switch (f->kind) {
        case PSkel::Kind::Var: {
            if (g->kind != DType::Kind::Var) return false;
            auto it = names.find(f->name);
            return (it == names.end() ? f->name : it->second) == g->name;
        }
        case PSkel::Kind::Arrow: {
            if (g->kind != DType::Kind::Lolli) return false;
            const BangPType& d = f->dom;
            bool bang = is_bang(g->left);
            auto [k, rest] = strip_sections(bang ? g->left->right : g->left);
            out.push_back(Atom::bool_const(d.b, bang));
            out.push_back(Atom::lin_eq0(d.c, k + bang));
            return match_skel(d.skel, rest, names, out) && match_linear(f->cod, g->right, names, out);
        }
        case PSkel::Kind::Forall: {
            if (g->kind != DType::Kind::Forall) return false;
            Renaming inner = names;
            inner[f->name] = g->name;
            return match_linear(f->cod, g->right, inner, out);
        }
    }
    return false;
}

struct Admissibility : PTypeVisitor {
    std::vector<Atom> out;
    void linear(const LinearPType& a) override { out.push_back(Atom::lin_geq(a.c, 0)); }
    void bang(const BangPType& d) override {
        out.push_back(Atom::lin_geq(d.c, 0));
        out.push_back(Atom::mixed(d.b, d.c, 1));
    }
};

class Typer {
public:
    explicit Typer(PTerm t) {
        result_.typed.term = std::move(t);
        result_.typed.types.resize(result_.typed.term.size());
    }

    LocalTyping run() {
        const PTerm& t = result_.typed.term;
        type(t.root());
        std::set<std::string> done;
        for (NodeId n = 0; n < t.size(); ++n) {
            const PNode& nd = t.node(n);
            if (nd.kind != PNode::Kind::Var || t.occurrence_counts().at(nd.name) < 2) continue;
            if (done.insert(nd.name).second) emit(Atom::bool_const(nd.var_type.b, true), "ltype:multi", n);
        }
        return std::move(result_);
    }

private:
    void emit(Atom a, const char* rule, NodeId n) {
        result_.constraints.push_back(Constraint{std::move(a), rule, result_.typed.term.occurrence(n)});
    }

    void emit_all(const std::vector<Atom>& atoms, const char* rule, NodeId n) {
        for (const auto& a : atoms) emit(a, rule, n);
    }

    const LinearPType& type(NodeId n) {
        const PTerm& t = result_.typed.term;
        const PNode& nd = t.node(n);
        LinearPType out;
        switch (nd.kind) {
            case PNode::Kind::Door: {
                const LinearPType& a = type(nd.child[0]);
                out = LinearPType{LinComb(nd.door) + a.c, a.skel};
                emit(Atom::lin_geq(out.c, 0), "ltype:door", n);
                break;
            }
            case PNode::Kind::Var:
                out = nd.var_type.circ();
                emit_all(admissibility(nd.var_type), "ltype:var", n);
                break;
            case PNode::Kind::Lam: {
                const LinearPType& a = type(nd.child[0]);
                out = LinearPType{LinComb(), PSkel::arrow(nd.var_type, a)};
                emit_all(admissibility(nd.var_type), "ltype:lam", n);
                break;
            }
            case PNode::Kind::App: {
                LinearPType f = type(nd.child[0]);
                const LinearPType& a = type(nd.child[1]);
                if (f.skel->kind != PSkel::Kind::Arrow) throw std::logic_error("operator is not an arrow");
                emit(Atom::lin_eq0(f.c), "ltype:app", n);
                auto u = unify(f.skel->dom.circ(), a);
                if (!u) throw std::logic_error("undefined unification at " + to_string(t.occurrence(n)));
                emit_all(*u, "ltype:app", n);
                out = f.skel->cod;
                break;
            }
            case PNode::Kind::TLam: {
                const LinearPType& a = type(nd.child[0]);
                out = LinearPType{LinComb(), PSkel::forall(nd.name, a)};
                break;
            }
            case PNode::Kind::TApp: {
                const LinearPType& f = type(nd.child[0]);
                if (f.skel->kind != PSkel::Kind::Forall) throw std::logic_error("operator is not a forall");
                emit(Atom::lin_eq0(f.c), "ltype:tapp", n);
                emit_all(admissibility(nd.type_arg), "ltype:tapp", n);
                out = ptype_subst(f.skel->cod, f.skel->name, nd.type_arg);
                break;
            }
        }
        return result_.typed.types[n] = std::move(out);
    }

    LocalTyping result_;
};

// Binder of a variable occurrence, or kNoNode when free.
NodeId binder(const PTerm& t, NodeId var) {
    const std::string& x = t.node(var).name;
    for (NodeId a = t.node(var).parent; a != kNoNode; a = t.node(a).parent)
        if (t.node(a).kind == PNode::Kind::Lam && t.node(a).name == x) return a;
    return kNoNode;
}

void push(std::vector<Constraint>& out, const std::vector<Atom>& atoms, const char* rule, Occurrence path) {
    for (const auto& a : atoms) out.push_back(Constraint{a, rule, path});
}

}  // namespace

std::optional<std::vector<Atom>> unify(const LinearPType& a, const LinearPType& b) {
    std::vector<Atom> out;
    if (!unify_linear(a, b, out)) return std::nullopt;
    return out;
}

std::optional<std::vector<Atom>> unify(const BangPType& a, const BangPType& b) {
    std::vector<Atom> out;
    if (!unify_bang(a, b, out)) return std::nullopt;
    return out;
}

std::optional<std::vector<Atom>> unify(const PSkelPtr& a, const PSkelPtr& b) {
    std::vector<Atom> out;
    if (!unify_skel(a, b, out)) return std::nullopt;
    return out;
}

std::vector<Atom> admissibility(const LinearPType& a) {
    Admissibility v;
    walk(a, v);
    return std::move(v.out);
}

std::vector<Atom> admissibility(const BangPType& d) {
    Admissibility v;
    walk(d, v);
    return std::move(v.out);
}

std::optional<std::vector<Atom>> match_goal(const LinearPType& a, const DTypePtr& goal) {
    Renaming names;
    std::vector<Atom> out;
    if (!match_linear(a, goal, names, out)) return std::nullopt;
    return out;
}

LocalTyping local_typing(PTerm t) { return Typer(std::move(t)).run(); }

std::vector<IntParam> doors(const PTerm& t, NodeId top, NodeId target) {
    std::vector<IntParam> out;
    if (target == top) return out;
    NodeId n = t.node(target).parent;
    for (;; n = t.node(n).parent) {
        if (n == kNoNode) throw std::out_of_range("occurrence is not below the given subterm");
        if (t.node(n).kind == PNode::Kind::Door) out.push_back(t.node(n).door);
        if (n == top) break;
    }
    return {out.rbegin(), out.rend()};
}

LinComb lsum(const std::vector<IntParam>& word) {
    LinComb s;
    for (IntParam m : word) s += LinComb(m);
    return s;
}

std::vector<Atom> wbracket(const std::vector<IntParam>& word) {
    std::vector<Atom> out;
    LinComb s;
    for (IntParam m : word) {
        s += LinComb(m);
        out.push_back(Atom::lin_geq(s, 0));
    }
    return out;
}

std::vector<Atom> bracket(const std::vector<IntParam>& word) {
    std::vector<Atom> out = wbracket(word);
    out.push_back(Atom::lin_eq0(lsum(word)));
    return out;
}

std::vector<Constraint> gen_bracketing(const TypedPTerm& typed) {
    const PTerm& t = typed.term;
    std::vector<Constraint> out;
    for (NodeId n : t.subtree(t.root())) {
        const PNode& nd = t.node(n);
        if (nd.kind == PNode::Kind::Var) {
            NodeId lam = binder(t, n);
            if (lam == kNoNode) push(out, bracket(doors(t, t.root(), n)), "bracket:i", t.occurrence(n));
            else push(out, bracket(doors(t, t.node(lam).child[0], n)), "bracket:iii", t.occurrence(n));
        } else if (nd.kind == PNode::Kind::Lam) {
            push(out, wbracket(doors(t, t.root(), n)), "bracket:ii", t.occurrence(n));
        }
    }
    return out;
}

std::vector<Constraint> gen_bang(const TypedPTerm& typed) {
    const PTerm& t = typed.term;
    std::vector<Constraint> out;
    for (NodeId n : t.subtree(t.root())) {
        const PNode& app = t.node(n);
        if (app.kind != PNode::Kind::App) continue;
        const LinearPType& f = typed.type(app.child[0]);
        if (f.skel->kind != PSkel::Kind::Arrow) throw std::logic_error("operator is not an arrow");
        BoolParam b = f.skel->dom.b;
        NodeId u = app.child[1];
        std::vector<NodeId> inner = t.subtree(u);

        std::vector<NodeId> free_occ;
        for (NodeId v : inner)
            if (t.node(v).kind == PNode::Kind::Var && !t.contains(u, binder(t, v))) free_occ.push_back(v);
        NodeId x = free_occ.size() == 1 ? free_occ[0] : kNoNode;
        if (free_occ.size() > 1) out.push_back(Constraint{Atom::bool_const(b, false), "bang:i", t.occurrence(u)});
        if (x != kNoNode)
            out.push_back(Constraint{Atom::bool_impl(b, t.node(x).var_type.b), "bang:i", t.occurrence(u)});

        for (NodeId v : inner) {
            if (v == u || v == x) continue;
            out.push_back(Constraint{Atom::mixed(b, lsum(doors(t, u, v)), 1), "bang:ii", t.occurrence(v)});
        }
        // A negative door chain right above x expands to intermediate
        // subterms that the atoms above do not reach.
        if (x != kNoNode)
            out.push_back(Constraint{Atom::mixed(b, lsum(doors(t, u, x)), 0), "bang:x", t.occurrence(x)});
    }
    return out;
}

std::vector<Constraint> gen_scope(const TypedPTerm& typed) {
    const PTerm& t = typed.term;
    std::vector<Constraint> out;
    for (NodeId n : t.subtree(t.root())) {
        const PNode& lam = t.node(n);
        if (lam.kind != PNode::Kind::TLam) continue;
        NodeId u = lam.child[0];
        for (NodeId v : t.subtree(u))
            if (free_type_vars(typed.type(v)).count(lam.name))
                push(out, wbracket(doors(t, u, v)), "scope", t.occurrence(v));
    }
    return out;
}

Generated gen_all(const FTermPtr& m, const TypeContext& ctx) {
    Generated g;
    LocalTyping lt = local_typing(free_decoration(m, g.pool, ctx));
    g.typed = std::move(lt.typed);
    g.store.add_all(lt.constraints);
    g.store.add_all(gen_bracketing(g.typed));
    g.store.add_all(gen_bang(g.typed));
    g.store.add_all(gen_scope(g.typed));
    return g;
}

}  // namespace dlal
