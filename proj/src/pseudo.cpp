#include "dlal/pseudo.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

#include "dtype_parse.hpp"
#include "lexer.hpp"

namespace dlal {

namespace {

using detail::Tok;

class PseudoParser {
public:
    PseudoParser(std::string_view text, const DTypeContext& free)
        : ts_(detail::tokenize(text)), free_(free) {}

    NodeId term() {
        if (ts_.at(Tok::Lambda) || ts_.at(Tok::BigLambda)) return abstraction();
        NodeId head = prefix();
        for (;;) {
            if (ts_.accept(Tok::LBracket)) {
                DTypePtr arg = detail::parse_dtype(ts_);
                ts_.expect(Tok::RBracket);
                NodeId n = out_.add(SNode{SNode::Kind::TApp, {}, std::move(arg)});
                out_.link(n, 0, head);
                head = n;
            } else if (ts_.at(Tok::Ident) || ts_.at(Tok::LParen) || ts_.at(Tok::Section) ||
                       ts_.at(Tok::SectionBar)) {
                head = application(head, prefix());
            } else if (ts_.at(Tok::Lambda) || ts_.at(Tok::BigLambda)) {
                head = application(head, abstraction());
            } else {
                return head;
            }
        }
    }

    PseudoTerm finish(NodeId root) {
        if (!ts_.at(Tok::End)) ts_.fail("expected end of input");
        out_.set_root(root);
        return std::move(out_);
    }

private:
    NodeId application(NodeId f, NodeId u) {
        NodeId n = out_.add(SNode{SNode::Kind::App});
        out_.link(n, 0, f);
        out_.link(n, 1, u);
        return n;
    }

    NodeId abstraction() {
        if (ts_.accept(Tok::Lambda)) {
            std::string name = ts_.expect(Tok::Ident).text;
            ts_.expect(Tok::Colon);
            DTypePtr annot = detail::parse_dtype(ts_);
            ts_.expect(Tok::Dot);
            scope_.emplace_back(name, annot);
            NodeId body = term();
            scope_.pop_back();
            NodeId n = out_.add(SNode{SNode::Kind::Lam, std::move(name), std::move(annot)});
            out_.link(n, 0, body);
            return n;
        }
        ts_.expect(Tok::BigLambda);
        std::string name = ts_.expect(Tok::Ident).text;
        ts_.expect(Tok::Dot);
        NodeId body = term();
        NodeId n = out_.add(SNode{SNode::Kind::TLam, std::move(name)});
        out_.link(n, 0, body);
        return n;
    }

    NodeId prefix() {
        if (ts_.at(Tok::Section) || ts_.at(Tok::SectionBar)) {
            auto kind = ts_.next().kind == Tok::Section ? SNode::Kind::Door : SNode::Kind::AuxDoor;
            NodeId body = (ts_.at(Tok::Lambda) || ts_.at(Tok::BigLambda)) ? abstraction() : prefix();
            NodeId n = out_.add(SNode{kind});
            out_.link(n, 0, body);
            return n;
        }
        if (ts_.accept(Tok::LParen)) {
            NodeId t = term();
            ts_.expect(Tok::RParen);
            return t;
        }
        if (ts_.at(Tok::Ident)) {
            detail::Token tok = ts_.next();
            DTypePtr type = lookup(tok.text);
            if (!type) throw ParseError(tok.line, tok.column, "unbound variable '" + tok.text + "'");
            return out_.add(SNode{SNode::Kind::Var, tok.text, std::move(type)});
        }
        ts_.fail("expected term");
    }

    DTypePtr lookup(const std::string& x) const {
        for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
            if (it->first == x) return it->second;
        auto it = free_.find(x);
        return it == free_.end() ? nullptr : it->second;
    }

    detail::TokenStream ts_;
    const DTypeContext& free_;
    std::vector<std::pair<std::string, DTypePtr>> scope_;
    PseudoTerm out_;
};

// Printing levels: 0 = term (abstractions extend right), 1 = application
// spine, 2 = operand, 3 = door body.
void print(std::ostream& os, const PseudoTerm& t, NodeId n, int level) {
    const SNode& nd = t.node(n);
    auto open = [&](int need) {
        bool p = level > need;
        if (p) os << '(';
        return p;
    };
    switch (nd.kind) {
        case SNode::Kind::Var: os << nd.name; return;
        case SNode::Kind::Door:
        case SNode::Kind::AuxDoor: {
            bool p = level == 2;
            if (p) os << '(';
            os << (nd.kind == SNode::Kind::Door ? "§ " : "§- ");
            const SNode& c = t.node(nd.child[0]);
            bool abs = c.kind == SNode::Kind::Lam || c.kind == SNode::Kind::TLam;
            // An abstraction under a door in operator position would swallow
            // the operand, so it needs parentheses unless this is a tail.
            print(os, t, nd.child[0], abs && (level == 0 || p) ? 0 : 3);
            if (p) os << ')';
            return;
        }
        case SNode::Kind::Lam: {
            bool p = open(0);
            os << '\\' << nd.name << ':' << to_string(nd.type) << ". ";
            print(os, t, nd.child[0], 0);
            if (p) os << ')';
            return;
        }
        case SNode::Kind::TLam: {
            bool p = open(0);
            os << "/\\" << nd.name << ". ";
            print(os, t, nd.child[0], 0);
            if (p) os << ')';
            return;
        }
        case SNode::Kind::App: {
            bool p = open(1);
            print(os, t, nd.child[0], 1);
            os << ' ';
            print(os, t, nd.child[1], 2);
            if (p) os << ')';
            return;
        }
        case SNode::Kind::TApp: {
            bool p = open(1);
            print(os, t, nd.child[0], 1);
            os << " [" << to_string(nd.type) << ']';
            if (p) os << ')';
            return;
        }
    }
}

FTermPtr erase_node(const PseudoTerm& t, NodeId n) {
    const SNode& nd = t.node(n);
    switch (nd.kind) {
        case SNode::Kind::Door:
        case SNode::Kind::AuxDoor: return erase_node(t, nd.child[0]);
        case SNode::Kind::Var: return FTerm::var(nd.name);
        case SNode::Kind::Lam: return FTerm::lam(nd.name, erase(nd.type), erase_node(t, nd.child[0]));
        case SNode::Kind::App: return FTerm::app(erase_node(t, nd.child[0]), erase_node(t, nd.child[1]));
        case SNode::Kind::TLam: return FTerm::tlam(nd.name, erase_node(t, nd.child[0]));
        case SNode::Kind::TApp: return FTerm::tapp(erase_node(t, nd.child[0]), erase(nd.type));
    }
    throw std::logic_error("bad pseudo-term node");
}

}  // namespace

PseudoTerm parse_pseudo(std::string_view text, const DTypeContext& free) {
    PseudoParser p(text, free);
    NodeId root = p.term();
    return p.finish(root);
}

std::string to_string(const PseudoTerm& t) { return to_string(t, t.root()); }

std::string to_string(const PseudoTerm& t, NodeId top) {
    std::ostringstream os;
    print(os, t, top, 0);
    return os.str();
}

FTermPtr erase(const PseudoTerm& t) { return erase_node(t, t.root()); }

FTermPtr erase(const PseudoTerm& t, NodeId top) { return erase_node(t, top); }

DTypeContext free_variables(const PseudoTerm& t) {
    DTypeContext out;
    for (NodeId n : t.subtree(t.root())) {
        const SNode& nd = t.node(n);
        if (nd.kind != SNode::Kind::Var) continue;
        bool bound = false;
        for (NodeId a = nd.parent; a != kNoNode && !bound; a = t.node(a).parent)
            bound = t.node(a).kind == SNode::Kind::Lam && t.node(a).name == nd.name;
        if (!bound) out.emplace(nd.name, nd.type);
    }
    return out;
}

}  // namespace dlal
