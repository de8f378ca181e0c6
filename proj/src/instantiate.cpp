#include "dlal/instantiate.hpp"

namespace dlal {

bool Instantiation::get(BoolParam b) const {
    auto it = booleans.find(b);
    return it != booleans.end() && it->second;
}

std::int64_t Instantiation::get(IntParam p) const {
    auto it = integers.find(p);
    return it == integers.end() ? 0 : it->second;
}

std::int64_t Instantiation::eval(const LinComb& c) const {
    return c.evaluate<std::int64_t>([&](IntParam p) { return get(p); });
}

namespace {

struct AdmissibilityCheck : PTypeVisitor {
    const Instantiation& phi;
    std::optional<std::string> violation;

    explicit AdmissibilityCheck(const Instantiation& p) : phi(p) {}

    void linear(const LinearPType& a) override {
        if (!violation && phi.eval(a.c) < 0) violation = to_string(a.c) + " >= 0";
    }
    void bang(const BangPType& d) override {
        if (violation) return;
        std::int64_t c = phi.eval(d.c);
        if (c < 0) violation = to_string(d.c) + " >= 0";
        else if (phi.get(d.b) && c < 1)
            violation = to_string(d.b) + " = 1 => " + to_string(d.c) + " >= 1";
    }
};

DTypePtr skeleton(const PSkelPtr& s, const Instantiation& phi) {
    switch (s->kind) {
        case PSkel::Kind::Var: return DType::var(s->name);
        case PSkel::Kind::Arrow:
            return DType::lolli(instantiate(s->dom, phi), instantiate(s->cod, phi));
        case PSkel::Kind::Forall: return DType::forall(s->name, instantiate(s->cod, phi));
    }
    throw std::logic_error("bad skeleton");
}

void require(const std::optional<std::string>& v) {
    if (v) throw InadmissibleInstantiation("inadmissible instantiation: " + *v);
}

class Builder {
public:
    Builder(const PTerm& t, const Instantiation& phi, std::vector<NodeId>* image)
        : t_(t), phi_(phi), image_(image) {
        for (const auto& [x, d] : t.variables()) vars_[x] = instantiate(d, phi);
        if (image_) image_->assign(t.size(), kNoNode);
    }

    NodeId build(NodeId n) {
        const PNode& nd = t_.node(n);
        NodeId out = kNoNode;
        switch (nd.kind) {
            case PNode::Kind::Door: {
                out = build(nd.child[0]);
                std::int64_t k = phi_.get(nd.door);
                auto kind = k > 0 ? SNode::Kind::Door : SNode::Kind::AuxDoor;
                for (std::int64_t i = 0; i < (k > 0 ? k : -k); ++i) {
                    NodeId d = out_.add(SNode{kind});
                    out_.link(d, 0, out);
                    out = d;
                }
                break;
            }
            case PNode::Kind::Var:
                out = out_.add(SNode{SNode::Kind::Var, nd.name, vars_.at(nd.name)});
                break;
            case PNode::Kind::Lam: {
                NodeId body = build(nd.child[0]);
                out = out_.add(SNode{SNode::Kind::Lam, nd.name, vars_.at(nd.name)});
                out_.link(out, 0, body);
                break;
            }
            case PNode::Kind::App: {
                NodeId f = build(nd.child[0]);
                NodeId u = build(nd.child[1]);
                out = out_.add(SNode{SNode::Kind::App});
                out_.link(out, 0, f);
                out_.link(out, 1, u);
                break;
            }
            case PNode::Kind::TLam: {
                NodeId body = build(nd.child[0]);
                out = out_.add(SNode{SNode::Kind::TLam, nd.name});
                out_.link(out, 0, body);
                break;
            }
            case PNode::Kind::TApp: {
                NodeId f = build(nd.child[0]);
                out = out_.add(SNode{SNode::Kind::TApp, {}, instantiate(nd.type_arg, phi_)});
                out_.link(out, 0, f);
                break;
            }
        }
        if (image_) (*image_)[n] = out;
        return out;
    }

    PseudoTerm finish(NodeId root) {
        out_.set_root(root);
        return std::move(out_);
    }

private:
    const PTerm& t_;
    const Instantiation& phi_;
    std::vector<NodeId>* image_;
    std::map<std::string, DTypePtr> vars_;
    PseudoTerm out_;
};

}  // namespace

std::optional<std::string> admissibility_violation(const LinearPType& a, const Instantiation& phi) {
    AdmissibilityCheck c(phi);
    walk(a, c);
    return c.violation;
}

std::optional<std::string> admissibility_violation(const BangPType& d, const Instantiation& phi) {
    AdmissibilityCheck c(phi);
    walk(d, c);
    return c.violation;
}

std::optional<std::string> admissibility_violation(const PTerm& t, const Instantiation& phi) {
    AdmissibilityCheck c(phi);
    for (NodeId n = 0; n < t.size() && !c.violation; ++n)
        if (t.node(n).kind == PNode::Kind::TApp) walk(t.node(n).type_arg, c);
    for (const auto& [x, d] : t.variables())
        if (!c.violation) walk(d, c);
    return c.violation;
}

DTypePtr instantiate(const LinearPType& a, const Instantiation& phi) {
    std::int64_t c = phi.eval(a.c);
    if (c < 0) require(admissibility_violation(a, phi));
    return DType::sections(static_cast<unsigned>(c), skeleton(a.skel, phi));
}

DTypePtr instantiate(const BangPType& d, const Instantiation& phi) {
    std::int64_t c = phi.eval(d.c);
    bool b = phi.get(d.b);
    if (c < 0 || (b && c < 1)) require(admissibility_violation(d, phi));
    DTypePtr f = skeleton(d.skel, phi);
    if (b) return DType::bang(DType::sections(static_cast<unsigned>(c - 1), f));
    return DType::sections(static_cast<unsigned>(c), f);
}

PseudoTerm instantiate(const PTerm& t, const Instantiation& phi, std::vector<NodeId>* image) {
    require(admissibility_violation(t, phi));
    Builder b(t, phi, image);
    return b.finish(b.build(t.root()));
}

}  // namespace dlal
