#include "dlal/verify.hpp"

#include <limits>
#include <map>

namespace dlal {

DoorWord doors(const PseudoTerm& t, NodeId top, NodeId target) {
    DoorWord out;
    if (target == top) return out;
    for (NodeId n = t.node(target).parent;; n = t.node(n).parent) {
        if (n == kNoNode) throw std::out_of_range("occurrence is not below the given subterm");
        if (t.node(n).kind == SNode::Kind::Door) out.push_back(1);
        if (t.node(n).kind == SNode::Kind::AuxDoor) out.push_back(-1);
        if (n == top) break;
    }
    return {out.rbegin(), out.rend()};
}

int door_sum(const DoorWord& w) {
    int s = 0;
    for (int d : w) s += d;
    return s;
}

bool weakly_well_bracketed(const DoorWord& w) {
    int s = 0;
    for (int d : w)
        if ((s += d) < 0) return false;
    return true;
}

bool well_bracketed(const DoorWord& w) { return weakly_well_bracketed(w) && door_sum(w) == 0; }

std::string to_string(const DoorWord& w) {
    if (w.empty()) return "ε";
    std::string out;
    for (int d : w) out += d > 0 ? "§" : "§-";
    return out;
}

std::string to_string(const Violation& v) {
    std::string out = v.condition;
    if (!v.clause.empty()) out += " (" + v.clause + ")";
    out += " at " + to_string(v.path);
    if (!v.detail.empty()) out += ": " + v.detail;
    return out;
}

namespace {

NodeId binder(const PseudoTerm& t, NodeId var) {
    const std::string& x = t.node(var).name;
    for (NodeId a = t.node(var).parent; a != kNoNode; a = t.node(a).parent)
        if (t.node(a).kind == SNode::Kind::Lam && t.node(a).name == x) return a;
    return kNoNode;
}

Violation violation(const PseudoTerm& t, const char* condition, const char* clause, NodeId n, std::string detail) {
    return Violation{condition, clause, t.occurrence(n), std::move(detail)};
}

class Typer {
public:
    explicit Typer(const PseudoTerm& t) : t_(t) { out_.types.resize(t.size()); }

    ConcreteTyping run() {
        if (t_.size() == 0) return std::move(out_);
        if (type(t_.root())) check_occurrences();
        if (!out_.violation) check_eigenvariables();
        return std::move(out_);
    }

private:
    bool fail(NodeId n, std::string detail, const char* clause = "i") {
        out_.violation = violation(t_, "local typing", clause, n, std::move(detail));
        return false;
    }

    bool type(NodeId n) {
        const SNode& nd = t_.node(n);
        DTypePtr out;
        switch (nd.kind) {
            case SNode::Kind::Var: {
                NodeId b = binder(t_, n);
                if (b != kNoNode && !alpha_equal(t_.node(b).type, nd.type))
                    return fail(n, "occurrence of " + nd.name + " disagrees with its binder");
                if (nd.type->kind == DType::Kind::Bang && is_bang(nd.type->right))
                    return fail(n, "ill-formed input type " + to_string(nd.type));
                out = circ(nd.type);
                break;
            }
            case SNode::Kind::Door:
                if (!type(nd.child[0])) return false;
                out = DType::section(out_.types[nd.child[0]]);
                break;
            case SNode::Kind::AuxDoor: {
                if (!type(nd.child[0])) return false;
                const DTypePtr& a = out_.types[nd.child[0]];
                if (a->kind != DType::Kind::Section) return fail(n, "§- applied to " + to_string(a));
                out = a->right;
                break;
            }
            case SNode::Kind::Lam:
                if (!type(nd.child[0])) return false;
                out = DType::lolli(nd.type, out_.types[nd.child[0]]);
                break;
            case SNode::Kind::App: {
                if (!type(nd.child[0]) || !type(nd.child[1])) return false;
                const DTypePtr& f = out_.types[nd.child[0]];
                const DTypePtr& a = out_.types[nd.child[1]];
                if (f->kind != DType::Kind::Lolli) return fail(n, "operator of type " + to_string(f));
                if (!alpha_equal(circ(f->left), a))
                    return fail(n, "operand of type " + to_string(a) + " against " + to_string(f->left));
                out = f->right;
                break;
            }
            case SNode::Kind::TLam:
                if (!type(nd.child[0])) return false;
                out = DType::forall(nd.name, out_.types[nd.child[0]]);
                break;
            case SNode::Kind::TApp: {
                if (!type(nd.child[0])) return false;
                const DTypePtr& f = out_.types[nd.child[0]];
                if (f->kind != DType::Kind::Forall) return fail(n, "type application to " + to_string(f));
                if (is_bang(nd.type)) return fail(n, "bang type argument " + to_string(nd.type));
                out = subst_dtype(f->right, f->name, nd.type);
                break;
            }
        }
        out_.types[n] = std::move(out);
        return true;
    }

    void check_occurrences() {
        std::map<std::pair<NodeId, std::string>, int> count;
        for (NodeId n : t_.subtree(t_.root()))
            if (t_.node(n).kind == SNode::Kind::Var) ++count[{binder(t_, n), t_.node(n).name}];
        for (NodeId n : t_.subtree(t_.root())) {
            const SNode& nd = t_.node(n);
            if (nd.kind != SNode::Kind::Var || count[{binder(t_, n), nd.name}] < 2 || is_bang(nd.type)) continue;
            fail(n, nd.name + " occurs more than once with linear type " + to_string(nd.type), "ii");
            return;
        }
    }

    void check_eigenvariables() {
        for (NodeId n : t_.subtree(t_.root())) {
            const SNode& lam = t_.node(n);
            if (lam.kind != SNode::Kind::TLam) continue;
            for (NodeId v : t_.subtree(n)) {
                const SNode& x = t_.node(v);
                if (x.kind != SNode::Kind::Var || t_.contains(n, binder(t_, v))) continue;
                if (free_type_vars(x.type).count(lam.name)) {
                    fail(v, lam.name + " is free in the type of " + x.name, "iii");
                    return;
                }
            }
        }
    }

    const PseudoTerm& t_;
    ConcreteTyping out_;
};

}  // namespace

CheckResult check_regular(const PseudoTerm& t) {
    if (t.size() == 0) return std::nullopt;
    for (NodeId n : t.subtree(t.root())) {
        const SNode& nd = t.node(n);
        if (nd.kind != SNode::Kind::Door && nd.kind != SNode::Kind::AuxDoor) continue;
        const SNode& c = t.node(nd.child[0]);
        if ((c.kind == SNode::Kind::Door || c.kind == SNode::Kind::AuxDoor) && c.kind != nd.kind)
            return violation(t, "regular", "", n, "adjacent opposite doors");
    }
    return std::nullopt;
}

ConcreteTyping check_local_typing(const PseudoTerm& t) { return Typer(t).run(); }

CheckResult check_bracketing(const PseudoTerm& t) {
    for (NodeId n : t.subtree(t.root())) {
        const SNode& nd = t.node(n);
        if (nd.kind == SNode::Kind::Var) {
            NodeId lam = binder(t, n);
            bool free = lam == kNoNode;
            DoorWord w = free ? doors(t, t.root(), n) : doors(t, t.node(lam).child[0], n);
            if (!well_bracketed(w))
                return violation(t, "bracketing", free ? "i" : "iii", n, to_string(w) + " is not well-bracketed");
        } else if (nd.kind == SNode::Kind::Lam) {
            DoorWord w = doors(t, t.root(), n);
            if (!weakly_well_bracketed(w))
                return violation(t, "bracketing", "ii", n, to_string(w) + " is not weakly well-bracketed");
        }
    }
    return std::nullopt;
}

CheckResult check_bang(const PseudoTerm& t, const ConcreteTyping& lt) {
    for (NodeId n : t.subtree(t.root())) {
        const SNode& app = t.node(n);
        if (app.kind != SNode::Kind::App) continue;
        const DTypePtr& f = lt.type(app.child[0]);
        if (f->kind != DType::Kind::Lolli || !is_bang(f->left)) continue;
        NodeId u = app.child[1];
        std::vector<NodeId> inner = t.subtree(u);

        NodeId x = kNoNode;
        for (NodeId v : inner) {
            if (t.node(v).kind != SNode::Kind::Var || t.contains(u, binder(t, v))) continue;
            if (x != kNoNode) return violation(t, "bang", "i", u, "more than one free variable occurrence");
            x = v;
        }
        if (x != kNoNode && !is_bang(t.node(x).type))
            return violation(t, "bang", "i", u, "free variable " + t.node(x).name + " has linear type");
        for (NodeId v : inner) {
            if (v == u || v == x) continue;
            DoorWord w = doors(t, u, v);
            if (door_sum(w) < 1)
                return violation(t, "bang", "ii", v, "s(" + to_string(w) + ") < 1 inside the bang subterm");
        }
    }
    return std::nullopt;
}

CheckResult check_scope(const PseudoTerm& t, const ConcreteTyping& lt) {
    for (NodeId n : t.subtree(t.root())) {
        const SNode& lam = t.node(n);
        if (lam.kind != SNode::Kind::TLam) continue;
        NodeId u = lam.child[0];
        for (NodeId v : t.subtree(u)) {
            if (!free_type_vars(lt.type(v)).count(lam.name)) continue;
            DoorWord w = doors(t, u, v);
            if (!weakly_well_bracketed(w))
                return violation(t, "scope", "", v,
                                 "depends on " + lam.name + " under " + to_string(w));
        }
    }
    return std::nullopt;
}

CheckResult verify_all(const PseudoTerm& t) {
    ConcreteTyping lt = check_local_typing(t);
    if (lt.violation) return lt.violation;
    if (auto v = check_bracketing(t)) return v;
    if (auto v = check_bang(t, lt)) return v;
    if (auto v = check_scope(t, lt)) return v;
    return check_regular(t);
}

std::uint64_t search_space(const PTerm& t, std::int64_t bound) {
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 1;
    auto mul = [&](std::uint64_t k) { total = total > kMax / k ? kMax : total * k; };
    for (std::size_t i = 0; i < t.int_params().size(); ++i) mul(static_cast<std::uint64_t>(2 * bound + 1));
    for (std::size_t i = 0; i < t.bool_params().size(); ++i) mul(2);
    return total;
}

std::vector<Instantiation> bounded_search(const FTermPtr& m, const SearchOptions& options, const TypeContext& ctx) {
    if (options.bound < 0) throw std::invalid_argument("negative bound");
    ParamPool pool;
    PTerm t = free_decoration(m, pool, ctx);
    std::uint64_t space = search_space(t, options.bound);
    if (space > options.cap)
        throw SearchCapExceeded("bounded search over " + std::to_string(t.int_params().size()) + " integer and " +
                                std::to_string(t.bool_params().size()) + " boolean parameters exceeds the cap of " +
                                std::to_string(options.cap) + " candidates");

    std::set<IntParam> int_set = t.int_params();
    std::set<BoolParam> bool_set = t.bool_params();
    std::vector<IntParam> ints(int_set.begin(), int_set.end());
    std::vector<BoolParam> bools(bool_set.begin(), bool_set.end());
    Instantiation phi;
    for (IntParam p : ints) phi.integers[p] = -options.bound;
    for (BoolParam b : bools) phi.booleans[b] = false;

    std::vector<Instantiation> out;
    for (;;) {
        if (!admissibility_violation(t, phi) && !verify_all(instantiate(t, phi))) out.push_back(phi);
        // odometer: booleans vary fastest, then integers
        std::size_t i = 0;
        for (; i < bools.size(); ++i) {
            bool& v = phi.booleans[bools[i]];
            v = !v;
            if (v) break;
        }
        if (i < bools.size()) continue;
        std::size_t j = 0;
        for (; j < ints.size(); ++j) {
            std::int64_t& v = phi.integers[ints[j]];
            if (v < options.bound) {
                ++v;
                break;
            }
            v = -options.bound;
        }
        if (j == ints.size()) break;
    }
    return out;
}

}  // namespace dlal
