#include "dlal/ptype.hpp"

#include <sstream>
#include <stdexcept>

namespace dlal {

std::string to_string(IntParam p) { return (p.door ? "m" : "n") + std::to_string(p.id); }

std::string to_string(BoolParam p) { return "b" + std::to_string(p.id); }

LinComb& LinComb::operator+=(const LinComb& other) {
    for (const auto& [p, k] : other.terms_) terms_[p] += k;
    return *this;
}

std::string to_string(const LinComb& c) {
    if (c.is_zero()) return "0";
    std::string out;
    for (const auto& [p, k] : c.terms()) {
        if (!out.empty()) out += " + ";
        if (k != 1) out += std::to_string(k) + "*";
        out += to_string(p);
    }
    return out;
}

PSkelPtr PSkel::var(std::string name) {
    return std::make_shared<const PSkel>(PSkel{Kind::Var, std::move(name), {}, {}});
}

PSkelPtr PSkel::arrow(BangPType dom, LinearPType cod) {
    return std::make_shared<const PSkel>(PSkel{Kind::Arrow, {}, std::move(dom), std::move(cod)});
}

PSkelPtr PSkel::forall(std::string binder, LinearPType body) {
    return std::make_shared<const PSkel>(PSkel{Kind::Forall, std::move(binder), {}, std::move(body)});
}

namespace {

PSkelPtr skeleton(const FTypePtr& t, ParamPool& pool) {
    switch (t->kind) {
        case FType::Kind::Var: return PSkel::var(t->name);
        case FType::Kind::Arrow:
            return PSkel::arrow(bang_free_decoration(t->dom, pool), linear_free_decoration(t->body, pool));
        case FType::Kind::Forall: return PSkel::forall(t->name, linear_free_decoration(t->body, pool));
    }
    throw std::logic_error("bad type");
}

PSkelPtr subst_skel(const PSkelPtr& s, const std::string& var, const LinearPType& a, LinComb& extra) {
    switch (s->kind) {
        case PSkel::Kind::Var:
            if (s->name == var) {
                extra = a.c;
                return a.skel;
            }
            return s;
        case PSkel::Kind::Arrow:
            return PSkel::arrow(ptype_subst(s->dom, var, a), ptype_subst(s->cod, var, a));
        case PSkel::Kind::Forall:
            if (s->name == var) return s;
            if (free_type_vars(a).count(s->name))
                throw std::logic_error("p-type substitution would capture '" + s->name + "'");
            return PSkel::forall(s->name, ptype_subst(s->cod, var, a));
    }
    return s;
}

void ftv_skel(const PSkelPtr& s, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (s->kind) {
        case PSkel::Kind::Var:
            if (!bound.count(s->name)) out.insert(s->name);
            return;
        case PSkel::Kind::Arrow:
            ftv_skel(s->dom.skel, bound, out);
            ftv_skel(s->cod.skel, bound, out);
            return;
        case PSkel::Kind::Forall: {
            bool fresh = bound.insert(s->name).second;
            ftv_skel(s->cod.skel, bound, out);
            if (fresh) bound.erase(s->name);
            return;
        }
    }
}

void print_skel(std::ostream& os, const PSkelPtr& s);

void print_linear(std::ostream& os, const LinearPType& t) {
    os << '{' << to_string(t.c) << '}';
    bool parens = t.skel->kind != PSkel::Kind::Var;
    if (parens) os << '(';
    print_skel(os, t.skel);
    if (parens) os << ')';
}

void print_bang(std::ostream& os, const BangPType& t) {
    os << '{' << to_string(t.b) << ',' << to_string(t.c) << '}';
    bool parens = t.skel->kind != PSkel::Kind::Var;
    if (parens) os << '(';
    print_skel(os, t.skel);
    if (parens) os << ')';
}

void print_skel(std::ostream& os, const PSkelPtr& s) {
    switch (s->kind) {
        case PSkel::Kind::Var: os << s->name; return;
        case PSkel::Kind::Arrow:
            print_bang(os, s->dom);
            os << " -o ";
            print_linear(os, s->cod);
            return;
        case PSkel::Kind::Forall:
            os << "forall " << s->name << ". ";
            print_linear(os, s->cod);
            return;
    }
}

void walk_skel(const PSkelPtr& s, PTypeVisitor& v) {
    switch (s->kind) {
        case PSkel::Kind::Var: return;
        case PSkel::Kind::Arrow:
            walk(s->dom, v);
            walk(s->cod, v);
            return;
        case PSkel::Kind::Forall:
            walk(s->cod, v);
            return;
    }
}

}  // namespace

LinearPType linear_free_decoration(const FTypePtr& t, ParamPool& pool) {
    LinComb c(pool.fresh_type());
    return {std::move(c), skeleton(t, pool)};
}

BangPType bang_free_decoration(const FTypePtr& t, ParamPool& pool) {
    BoolParam b = pool.fresh_bool();
    LinComb c(pool.fresh_type());
    return {b, std::move(c), skeleton(t, pool)};
}

FTypePtr erase(const PSkelPtr& s) {
    switch (s->kind) {
        case PSkel::Kind::Var: return FType::var(s->name);
        case PSkel::Kind::Arrow: return FType::arrow(erase(s->dom), erase(s->cod));
        case PSkel::Kind::Forall: return FType::forall(s->name, erase(s->cod));
    }
    throw std::logic_error("bad skeleton");
}

FTypePtr erase(const LinearPType& t) { return erase(t.skel); }

FTypePtr erase(const BangPType& t) { return erase(t.skel); }

LinearPType ptype_subst(const LinearPType& b, const std::string& var, const LinearPType& a) {
    LinComb extra;
    PSkelPtr s = subst_skel(b.skel, var, a, extra);
    return {b.c + extra, std::move(s)};
}

BangPType ptype_subst(const BangPType& b, const std::string& var, const LinearPType& a) {
    LinComb extra;
    PSkelPtr s = subst_skel(b.skel, var, a, extra);
    return {b.b, b.c + extra, std::move(s)};
}

std::set<std::string> free_type_vars(const LinearPType& t) {
    std::set<std::string> bound, out;
    ftv_skel(t.skel, bound, out);
    return out;
}

std::set<std::string> free_type_vars(const BangPType& t) {
    std::set<std::string> bound, out;
    ftv_skel(t.skel, bound, out);
    return out;
}

std::string to_string(const LinearPType& t) {
    std::ostringstream os;
    print_linear(os, t);
    return os.str();
}

std::string to_string(const BangPType& t) {
    std::ostringstream os;
    print_bang(os, t);
    return os.str();
}

void walk(const LinearPType& t, PTypeVisitor& v) {
    v.linear(t);
    walk_skel(t.skel, v);
}

void walk(const BangPType& t, PTypeVisitor& v) {
    v.bang(t);
    walk_skel(t.skel, v);
}

}  // namespace dlal
