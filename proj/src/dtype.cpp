#include "dlal/dtype.hpp"

#include <algorithm>
#include <sstream>
#include <utility>
#include <vector>

#include "dtype_parse.hpp"
#include "names.hpp"

namespace dlal {

DTypePtr DType::var(std::string name) {
    return std::make_shared<const DType>(DType{Kind::Var, std::move(name), nullptr, nullptr});
}
DTypePtr DType::lolli(DTypePtr dom, DTypePtr cod) {
    return std::make_shared<const DType>(DType{Kind::Lolli, {}, std::move(dom), std::move(cod)});
}
DTypePtr DType::implies(DTypePtr dom, DTypePtr cod) {
    return std::make_shared<const DType>(DType{Kind::Implies, {}, std::move(dom), std::move(cod)});
}
DTypePtr DType::forall(std::string binder, DTypePtr body) {
    return std::make_shared<const DType>(DType{Kind::Forall, std::move(binder), nullptr, std::move(body)});
}
DTypePtr DType::section(DTypePtr body) {
    return std::make_shared<const DType>(DType{Kind::Section, {}, nullptr, std::move(body)});
}
DTypePtr DType::bang(DTypePtr body) {
    return std::make_shared<const DType>(DType{Kind::Bang, {}, nullptr, std::move(body)});
}
DTypePtr DType::sections(unsigned k, DTypePtr body) {
    while (k-- > 0) body = section(std::move(body));
    return body;
}

// ---------------------------------------------------------------------------
// Parsing and printing
// ---------------------------------------------------------------------------

namespace detail {

namespace {

DTypePtr parse_prefix(TokenStream& ts) {
    if (ts.accept(Tok::Bang)) return DType::bang(parse_prefix(ts));
    if (ts.accept(Tok::Section)) return DType::section(parse_prefix(ts));
    if (ts.accept(Tok::LParen)) {
        DTypePtr t = parse_dtype(ts);
        ts.expect(Tok::RParen);
        return t;
    }
    if (ts.at(Tok::Ident)) return DType::var(ts.next().text);
    ts.fail("expected type");
}

}  // namespace

DTypePtr parse_dtype(TokenStream& ts) {
    if (ts.accept(Tok::Forall)) {
        std::string name = ts.expect(Tok::Ident).text;
        ts.expect(Tok::Dot);
        return DType::forall(std::move(name), parse_dtype(ts));
    }
    DTypePtr lhs = parse_prefix(ts);
    if (ts.accept(Tok::Lolli)) return DType::lolli(lhs, parse_dtype(ts));
    if (ts.accept(Tok::Implies)) return DType::implies(lhs, parse_dtype(ts));
    return lhs;
}

}  // namespace detail

DTypePtr parse_dtype(std::string_view text) {
    detail::TokenStream ts(detail::tokenize(text));
    DTypePtr t = detail::parse_dtype(ts);
    if (!ts.at(detail::Tok::End)) ts.fail("expected end of input");
    return t;
}

namespace {

int prec(const DTypePtr& t) {
    switch (t->kind) {
        case DType::Kind::Forall: return 0;
        case DType::Kind::Lolli:
        case DType::Kind::Implies: return 1;
        case DType::Kind::Section:
        case DType::Kind::Bang: return 2;
        case DType::Kind::Var: return 3;
    }
    return 0;
}

void print(std::ostream& os, const DTypePtr& t, int ctx) {
    bool parens = prec(t) < ctx;
    if (parens) os << '(';
    switch (t->kind) {
        case DType::Kind::Var: os << t->name; break;
        case DType::Kind::Lolli:
        case DType::Kind::Implies:
            print(os, t->left, 2);
            os << (t->kind == DType::Kind::Lolli ? " -o " : " => ");
            print(os, t->right, 1);
            break;
        case DType::Kind::Forall:
            os << "forall " << t->name << ". ";
            print(os, t->right, 0);
            break;
        case DType::Kind::Section:
            os << "\xC2\xA7";
            print(os, t->right, 2);
            break;
        case DType::Kind::Bang:
            os << '!';
            print(os, t->right, 2);
            break;
    }
    if (parens) os << ')';
}

using Env = std::vector<std::pair<std::string, std::string>>;

bool alpha(const DTypePtr& a, const DTypePtr& b, Env& env) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case DType::Kind::Var:
            for (auto it = env.rbegin(); it != env.rend(); ++it) {
                if (it->first == a->name || it->second == b->name)
                    return it->first == a->name && it->second == b->name;
            }
            return a->name == b->name;
        case DType::Kind::Lolli:
        case DType::Kind::Implies:
            return alpha(a->left, b->left, env) && alpha(a->right, b->right, env);
        case DType::Kind::Forall: {
            env.emplace_back(a->name, b->name);
            bool r = alpha(a->right, b->right, env);
            env.pop_back();
            return r;
        }
        case DType::Kind::Section:
        case DType::Kind::Bang:
            return alpha(a->right, b->right, env);
    }
    return false;
}

void ftv(const DTypePtr& t, std::set<std::string>& bound, std::set<std::string>& out) {
    if (!t) return;
    switch (t->kind) {
        case DType::Kind::Var:
            if (!bound.count(t->name)) out.insert(t->name);
            return;
        case DType::Kind::Forall: {
            bool fresh = bound.insert(t->name).second;
            ftv(t->right, bound, out);
            if (fresh) bound.erase(t->name);
            return;
        }
        default:
            ftv(t->left, bound, out);
            ftv(t->right, bound, out);
    }
}

DTypePtr rebuild(const DTypePtr& t, DTypePtr left, DTypePtr right) {
    if (left == t->left && right == t->right) return t;
    return std::make_shared<const DType>(DType{t->kind, t->name, std::move(left), std::move(right)});
}

bool pi1(const DTypePtr& t, bool positive) {
    switch (t->kind) {
        case DType::Kind::Var: return true;
        case DType::Kind::Forall: return positive && pi1(t->right, positive);
        case DType::Kind::Lolli:
        case DType::Kind::Implies: return pi1(t->left, !positive) && pi1(t->right, positive);
        case DType::Kind::Section:
        case DType::Kind::Bang: return pi1(t->right, positive);
    }
    return true;
}

}  // namespace

std::string to_string(const DTypePtr& t) {
    std::ostringstream os;
    print(os, t, 0);
    return os.str();
}

bool alpha_equal(const DTypePtr& a, const DTypePtr& b) {
    Env env;
    return alpha(a, b, env);
}

std::set<std::string> free_type_vars(const DTypePtr& t) {
    std::set<std::string> bound, out;
    ftv(t, bound, out);
    return out;
}

DTypePtr subst_dtype(const DTypePtr& t, const std::string& var, const DTypePtr& replacement) {
    switch (t->kind) {
        case DType::Kind::Var:
            return t->name == var ? replacement : t;
        case DType::Kind::Forall: {
            if (t->name == var) return t;
            auto fv = free_type_vars(t->right);
            if (!fv.count(var)) return t;
            auto rfv = free_type_vars(replacement);
            if (!rfv.count(t->name)) return rebuild(t, nullptr, subst_dtype(t->right, var, replacement));
            std::set<std::string> avoid = fv;
            avoid.insert(rfv.begin(), rfv.end());
            avoid.insert(var);
            std::string fresh = detail::fresh_variant(t->name, avoid);
            auto body = subst_dtype(t->right, t->name, DType::var(fresh));
            return DType::forall(fresh, subst_dtype(body, var, replacement));
        }
        default:
            return rebuild(t, t->left ? subst_dtype(t->left, var, replacement) : nullptr,
                           subst_dtype(t->right, var, replacement));
    }
}

FTypePtr erase(const DTypePtr& t) {
    switch (t->kind) {
        case DType::Kind::Var: return FType::var(t->name);
        case DType::Kind::Lolli:
        case DType::Kind::Implies: return FType::arrow(erase(t->left), erase(t->right));
        case DType::Kind::Forall: return FType::forall(t->name, erase(t->right));
        case DType::Kind::Section:
        case DType::Kind::Bang: return erase(t->right);
    }
    return nullptr;
}

DTypePtr star(const DTypePtr& t) {
    switch (t->kind) {
        case DType::Kind::Var: return t;
        case DType::Kind::Implies: return DType::lolli(DType::bang(star(t->left)), star(t->right));
        case DType::Kind::Bang: throw BadModality("! does not occur in plain DLAL types: " + to_string(t));
        default: return rebuild(t, t->left ? star(t->left) : nullptr, star(t->right));
    }
}

DTypePtr star_inverse(const DTypePtr& t) {
    switch (t->kind) {
        case DType::Kind::Var: return t;
        case DType::Kind::Lolli:
            if (is_bang(t->left)) return DType::implies(star_inverse(t->left->right), star_inverse(t->right));
            return DType::lolli(star_inverse(t->left), star_inverse(t->right));
        case DType::Kind::Bang: throw BadModality("! outside a lolli domain in " + to_string(t));
        default: return rebuild(t, t->left ? star_inverse(t->left) : nullptr, star_inverse(t->right));
    }
}

unsigned depth(const DTypePtr& t) {
    switch (t->kind) {
        case DType::Kind::Var: return 0;
        case DType::Kind::Forall: return depth(t->right);
        case DType::Kind::Lolli: return std::max(depth(t->left), depth(t->right));
        case DType::Kind::Section: return depth(t->right) + 1;
        case DType::Kind::Implies: return std::max(depth(t->left) + 1, depth(t->right));
        case DType::Kind::Bang: throw BadModality("depth is defined on plain DLAL types; found " + to_string(t));
    }
    return 0;
}

bool is_pi1(const DTypePtr& t) { return pi1(t, true); }

DTypePtr circ(const DTypePtr& d) { return is_bang(d) ? DType::section(d->right) : d; }

}  // namespace dlal
