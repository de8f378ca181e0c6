#include "dlal/pterm.hpp"

#include <sstream>
#include <stdexcept>

namespace dlal {

std::string to_string(const Occurrence& path) {
    if (path.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) out += '.';
        out += char('0' + path[i]);
    }
    return out;
}

namespace {

struct Decorator {
    PTerm& out;
    ParamPool& pool;
    std::map<std::string, BangPType>& vars;
    std::map<std::string, unsigned>& counts;
    const TypeContext& ctx;

    // Allocates the door first so ids stay in pre-order.
    NodeId build(const FTermPtr& m) {
        PNode d{PNode::Kind::Door, {}, {}, {}, pool.fresh_door()};
        NodeId top = out.add(std::move(d));
        NodeId inner = kNoNode;
        switch (m->kind) {
            case FTerm::Kind::Var: {
                auto it = vars.find(m->name);
                if (it == vars.end()) {
                    auto ct = ctx.find(m->name);
                    if (ct == ctx.end()) throw TypeError("unbound variable '" + m->name + "'");
                    it = vars.emplace(m->name, bang_free_decoration(ct->second, pool)).first;
                }
                ++counts[m->name];
                inner = out.add(PNode{PNode::Kind::Var, m->name, it->second, {}, {}});
                break;
            }
            case FTerm::Kind::Lam: {
                BangPType dt = bang_free_decoration(m->type, pool);
                vars[m->name] = dt;
                counts.try_emplace(m->name, 0);
                inner = out.add(PNode{PNode::Kind::Lam, m->name, dt, {}, {}});
                out.link(inner, 0, build(m->fun));
                break;
            }
            case FTerm::Kind::App: {
                inner = out.add(PNode{PNode::Kind::App, {}, {}, {}, {}});
                out.link(inner, 0, build(m->fun));
                out.link(inner, 1, build(m->arg));
                break;
            }
            case FTerm::Kind::TLam: {
                inner = out.add(PNode{PNode::Kind::TLam, m->name, {}, {}, {}});
                out.link(inner, 0, build(m->fun));
                break;
            }
            case FTerm::Kind::TApp: {
                inner = out.add(PNode{PNode::Kind::TApp, {}, {}, {}, {}});
                NodeId f = build(m->fun);
                out.mutable_node(inner).type_arg = linear_free_decoration(m->type, pool);
                out.link(inner, 0, f);
                break;
            }
        }
        out.link(top, 0, inner);
        return top;
    }
};

FTermPtr erase_node(const PTerm& t, NodeId n) {
    const PNode& nd = t.node(n);
    switch (nd.kind) {
        case PNode::Kind::Door: return erase_node(t, nd.child[0]);
        case PNode::Kind::Var: return FTerm::var(nd.name);
        case PNode::Kind::Lam: return FTerm::lam(nd.name, erase(nd.var_type), erase_node(t, nd.child[0]));
        case PNode::Kind::App: return FTerm::app(erase_node(t, nd.child[0]), erase_node(t, nd.child[1]));
        case PNode::Kind::TLam: return FTerm::tlam(nd.name, erase_node(t, nd.child[0]));
        case PNode::Kind::TApp: return FTerm::tapp(erase_node(t, nd.child[0]), erase(nd.type_arg));
    }
    throw std::logic_error("bad p-term node");
}

void print(std::ostream& os, const PTerm& t, NodeId n) {
    const PNode& nd = t.node(n);
    switch (nd.kind) {
        case PNode::Kind::Door:
            os << "§^" << to_string(nd.door) << ' ';
            print(os, t, nd.child[0]);
            return;
        case PNode::Kind::Var: os << nd.name; return;
        case PNode::Kind::Lam:
            os << "(\\" << nd.name << ':' << to_string(nd.var_type) << ". ";
            print(os, t, nd.child[0]);
            os << ')';
            return;
        case PNode::Kind::App:
            os << '(';
            print(os, t, nd.child[0]);
            os << ") (";
            print(os, t, nd.child[1]);
            os << ')';
            return;
        case PNode::Kind::TLam:
            os << "(/\\" << nd.name << ". ";
            print(os, t, nd.child[0]);
            os << ')';
            return;
        case PNode::Kind::TApp:
            os << '(';
            print(os, t, nd.child[0]);
            os << ") [" << to_string(nd.type_arg) << ']';
            return;
    }
}

struct ParamCollector : PTypeVisitor {
    std::set<IntParam>* ints;
    std::set<BoolParam>* bools;
    void linear(const LinearPType& a) override {
        if (ints)
            for (const auto& [p, k] : a.c.terms()) ints->insert(p);
    }
    void bang(const BangPType& d) override {
        if (ints)
            for (const auto& [p, k] : d.c.terms()) ints->insert(p);
        if (bools) bools->insert(d.b);
    }
};

}  // namespace

std::set<IntParam> PTerm::int_params() const {
    std::set<IntParam> out;
    ParamCollector c;
    c.ints = &out;
    c.bools = nullptr;
    for (NodeId n = 0; n < size(); ++n) {
        const PNode& nd = node(n);
        if (nd.kind == PNode::Kind::Door) out.insert(nd.door);
        if (nd.kind == PNode::Kind::TApp) walk(nd.type_arg, c);
    }
    for (const auto& [x, d] : variables_) walk(d, c);
    return out;
}

std::set<BoolParam> PTerm::bool_params() const {
    std::set<BoolParam> out;
    ParamCollector c;
    c.ints = nullptr;
    c.bools = &out;
    for (NodeId n = 0; n < size(); ++n)
        if (node(n).kind == PNode::Kind::TApp) walk(node(n).type_arg, c);
    for (const auto& [x, d] : variables_) walk(d, c);
    return out;
}

PTerm free_decoration(const FTermPtr& m, ParamPool& pool, const TypeContext& ctx) {
    typecheck(m, ctx);
    FTermPtr norm = alpha_normalize(m, ctx);
    PTerm out;
    Decorator d{out, pool, out.variables_, out.counts_, ctx};
    out.set_root(d.build(norm));
    for (const auto& x : free_vars(norm)) out.free_.insert(x);
    return out;
}

FTermPtr erase(const PTerm& t) { return erase_node(t, t.root()); }

FTermPtr erase(const PTerm& t, NodeId top) { return erase_node(t, top); }

std::string to_string(const PTerm& t) {
    std::ostringstream os;
    print(os, t, t.root());
    return os.str();
}

}  // namespace dlal
