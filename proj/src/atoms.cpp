#include <algorithm>
#include <sstream>

#include "dlal/constraints.hpp"

namespace dlal {

Atom Atom::bool_eq(BoolParam a, BoolParam b) { return Atom{Kind::BoolEq, a, b}; }

Atom Atom::bool_const(BoolParam b, bool v) { return Atom{Kind::BoolConst, b, {}, v}; }

Atom Atom::bool_impl(BoolParam a, BoolParam b) { return Atom{Kind::BoolImpl, a, b}; }

Atom Atom::lin_eq(LinComb a, LinComb b) { return Atom{Kind::LinEq, {}, {}, false, std::move(a), std::move(b)}; }

Atom Atom::lin_geq(LinComb c, std::int64_t k) { return Atom{Kind::LinGeq, {}, {}, false, std::move(c), {}, k}; }

Atom Atom::lin_eq0(LinComb c, std::int64_t k) { return Atom{Kind::LinEq0, {}, {}, false, std::move(c), {}, k}; }

Atom Atom::mixed(BoolParam b, LinComb c, std::int64_t k) {
    return Atom{Kind::Mixed, b, {}, false, std::move(c), {}, k};
}

AtomClass class_of(const Atom& a) {
    switch (a.kind) {
        case Atom::Kind::BoolEq:
        case Atom::Kind::BoolConst:
        case Atom::Kind::BoolImpl: return AtomClass::Boolean;
        case Atom::Kind::LinEq:
        case Atom::Kind::LinGeq:
        case Atom::Kind::LinEq0: return AtomClass::Linear;
        case Atom::Kind::Mixed: return AtomClass::Mixed;
    }
    return AtomClass::Linear;
}

const char* class_tag(AtomClass c) {
    switch (c) {
        case AtomClass::Boolean: return "B";
        case AtomClass::Linear: return "L";
        case AtomClass::Mixed: return "M";
    }
    return "?";
}

std::string to_string(const Atom& a) {
    std::string b1 = to_string(a.b1), b2 = to_string(a.b2);
    switch (a.kind) {
        case Atom::Kind::BoolEq: return b1 + " = " + b2;
        case Atom::Kind::BoolConst: return b1 + (a.value ? " = 1" : " = 0");
        case Atom::Kind::BoolImpl: return b1 + " = 1 => " + b2 + " = 1";
        case Atom::Kind::LinEq: return to_string(a.lhs) + " = " + to_string(a.rhs);
        case Atom::Kind::LinGeq: return to_string(a.lhs) + " >= " + std::to_string(a.k);
        case Atom::Kind::LinEq0: return to_string(a.lhs) + " = " + std::to_string(a.k);
        case Atom::Kind::Mixed: return b1 + " = 1 => " + to_string(a.lhs) + " >= " + std::to_string(a.k);
    }
    return "?";
}

Atom normalize(const Atom& a) {
    Atom out = a;
    switch (a.kind) {
        case Atom::Kind::BoolEq:
            if (out.b2 < out.b1) std::swap(out.b1, out.b2);
            break;
        case Atom::Kind::LinEq: {
            LinComb l, r;
            for (const auto& [p, k] : a.lhs.terms()) {
                auto it = a.rhs.terms().find(p);
                std::int64_t other = it == a.rhs.terms().end() ? 0 : it->second;
                for (std::int64_t i = other; i < k; ++i) l += LinComb(p);
            }
            for (const auto& [p, k] : a.rhs.terms()) {
                auto it = a.lhs.terms().find(p);
                std::int64_t other = it == a.lhs.terms().end() ? 0 : it->second;
                for (std::int64_t i = other; i < k; ++i) r += LinComb(p);
            }
            if (r < l) std::swap(l, r);
            out.lhs = std::move(l);
            out.rhs = std::move(r);
            break;
        }
        default: break;
    }
    return out;
}

bool is_tautology(const Atom& a) {
    switch (a.kind) {
        case Atom::Kind::BoolEq:
        case Atom::Kind::BoolImpl: return a.b1 == a.b2;
        case Atom::Kind::BoolConst: return false;
        case Atom::Kind::LinEq: return normalize(a).lhs.is_zero() && normalize(a).rhs.is_zero();
        case Atom::Kind::LinGeq:
        case Atom::Kind::Mixed: return a.lhs.is_zero() && a.k <= 0;
        case Atom::Kind::LinEq0: return a.lhs.is_zero() && a.k == 0;
    }
    return false;
}

bool holds(const Atom& a, const Instantiation& phi) {
    switch (a.kind) {
        case Atom::Kind::BoolEq: return phi.get(a.b1) == phi.get(a.b2);
        case Atom::Kind::BoolConst: return phi.get(a.b1) == a.value;
        case Atom::Kind::BoolImpl: return !phi.get(a.b1) || phi.get(a.b2);
        case Atom::Kind::LinEq: return phi.eval(a.lhs) == phi.eval(a.rhs);
        case Atom::Kind::LinGeq: return phi.eval(a.lhs) >= a.k;
        case Atom::Kind::LinEq0: return phi.eval(a.lhs) == a.k;
        case Atom::Kind::Mixed: return !phi.get(a.b1) || phi.eval(a.lhs) >= a.k;
    }
    return false;
}

bool ConstraintStore::add(Constraint c) {
    c.atom = normalize(c.atom);
    if (is_tautology(c.atom) || !seen_.insert(c.atom).second) return false;
    AtomClass cls = class_of(c.atom);
    auto& bucket = cls == AtomClass::Boolean ? boolean_ : cls == AtomClass::Linear ? linear_ : mixed_;
    order_.emplace_back(cls, bucket.size());
    bucket.push_back(std::move(c));
    return true;
}

void ConstraintStore::add_all(const std::vector<Constraint>& cs) {
    for (const auto& c : cs) add(c);
}

std::vector<const Constraint*> ConstraintStore::ordered() const {
    std::vector<const Constraint*> out;
    out.reserve(order_.size());
    for (auto [cls, i] : order_) {
        const auto& bucket = cls == AtomClass::Boolean ? boolean_ : cls == AtomClass::Linear ? linear_ : mixed_;
        out.push_back(&bucket[i]);
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Constraint* a, const Constraint* b) { return a->path < b->path; });
    return out;
}

std::set<BoolParam> ConstraintStore::bool_params() const {
    std::set<BoolParam> out;
    for (const auto* c : ordered()) {
        const Atom& a = c->atom;
        if (a.kind == Atom::Kind::LinEq || a.kind == Atom::Kind::LinGeq || a.kind == Atom::Kind::LinEq0) continue;
        out.insert(a.b1);
        if (a.kind == Atom::Kind::BoolEq || a.kind == Atom::Kind::BoolImpl) out.insert(a.b2);
    }
    return out;
}

std::set<IntParam> ConstraintStore::int_params() const {
    std::set<IntParam> out;
    for (const auto* c : ordered()) {
        for (const auto& [p, k] : c->atom.lhs.terms()) out.insert(p);
        for (const auto& [p, k] : c->atom.rhs.terms()) out.insert(p);
    }
    return out;
}

const Constraint* ConstraintStore::first_violation(const Instantiation& phi) const {
    for (const auto* c : ordered())
        if (!holds(c->atom, phi)) return c;
    return nullptr;
}

std::string dump(const ConstraintStore& store) {
    std::ostringstream os;
    for (const auto* c : store.ordered())
        os << class_tag(class_of(c->atom)) << " | " << to_string(c->atom) << " | " << c->rule << " | "
           << to_string(c->path) << '\n';
    return os.str();
}

}  // namespace dlal
