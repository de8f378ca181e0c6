#include "dlal/fterm.hpp"

#include <functional>
#include <sstream>
#include <utility>

#include "lexer.hpp"
#include "names.hpp"

namespace dlal {

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

FTypePtr FType::var(std::string name) {
    return std::make_shared<const FType>(FType{Kind::Var, std::move(name), nullptr, nullptr});
}

FTypePtr FType::arrow(FTypePtr dom, FTypePtr cod) {
    return std::make_shared<const FType>(FType{Kind::Arrow, {}, std::move(dom), std::move(cod)});
}

FTypePtr FType::forall(std::string binder, FTypePtr body) {
    return std::make_shared<const FType>(FType{Kind::Forall, std::move(binder), nullptr, std::move(body)});
}

FTermPtr FTerm::var(std::string name) {
    return std::make_shared<const FTerm>(FTerm{Kind::Var, std::move(name), nullptr, nullptr, nullptr});
}

FTermPtr FTerm::lam(std::string name, FTypePtr annot, FTermPtr body) {
    return std::make_shared<const FTerm>(
        FTerm{Kind::Lam, std::move(name), std::move(annot), std::move(body), nullptr});
}

FTermPtr FTerm::app(FTermPtr fun, FTermPtr arg) {
    return std::make_shared<const FTerm>(FTerm{Kind::App, {}, nullptr, std::move(fun), std::move(arg)});
}

FTermPtr FTerm::tlam(std::string binder, FTermPtr body) {
    return std::make_shared<const FTerm>(FTerm{Kind::TLam, std::move(binder), nullptr, std::move(body), nullptr});
}

FTermPtr FTerm::tapp(FTermPtr fun, FTypePtr arg) {
    return std::make_shared<const FTerm>(FTerm{Kind::TApp, {}, std::move(arg), std::move(fun), nullptr});
}

FTermPtr app_n(FTermPtr f, std::initializer_list<FTermPtr> args) {
    for (const auto& a : args) f = FTerm::app(std::move(f), a);
    return f;
}

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

namespace {

void collect_ftv(const FTypePtr& t, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (t->kind) {
        case FType::Kind::Var:
            if (!bound.count(t->name)) out.insert(t->name);
            return;
        case FType::Kind::Arrow:
            collect_ftv(t->dom, bound, out);
            collect_ftv(t->body, bound, out);
            return;
        case FType::Kind::Forall: {
            bool fresh = bound.insert(t->name).second;
            collect_ftv(t->body, bound, out);
            if (fresh) bound.erase(t->name);
            return;
        }
    }
}

void collect_type_names(const FTypePtr& t, std::set<std::string>& out) {
    if (!t) return;
    if (t->kind != FType::Kind::Arrow) out.insert(t->name);
    collect_type_names(t->dom, out);
    collect_type_names(t->body, out);
}

bool alpha_equal_impl(const FTypePtr& a, const FTypePtr& b, std::vector<std::pair<std::string, std::string>>& env) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case FType::Kind::Var:
            for (auto it = env.rbegin(); it != env.rend(); ++it) {
                if (it->first == a->name || it->second == b->name)
                    return it->first == a->name && it->second == b->name;
            }
            return a->name == b->name;
        case FType::Kind::Arrow:
            return alpha_equal_impl(a->dom, b->dom, env) && alpha_equal_impl(a->body, b->body, env);
        case FType::Kind::Forall: {
            env.emplace_back(a->name, b->name);
            bool r = alpha_equal_impl(a->body, b->body, env);
            env.pop_back();
            return r;
        }
    }
    return false;
}

int type_prec(const FTypePtr& t) {
    switch (t->kind) {
        case FType::Kind::Var: return 2;
        case FType::Kind::Arrow: return 1;
        case FType::Kind::Forall: return 0;
    }
    return 0;
}

void print_type(std::ostream& os, const FTypePtr& t, int ctx) {
    bool parens = type_prec(t) < ctx;
    if (parens) os << '(';
    switch (t->kind) {
        case FType::Kind::Var: os << t->name; break;
        case FType::Kind::Arrow:
            print_type(os, t->dom, 2);
            os << " -> ";
            print_type(os, t->body, 1);
            break;
        case FType::Kind::Forall:
            os << "forall " << t->name << ". ";
            print_type(os, t->body, 0);
            break;
    }
    if (parens) os << ')';
}

}  // namespace

std::set<std::string> free_type_vars(const FTypePtr& t) {
    std::set<std::string> bound, out;
    collect_ftv(t, bound, out);
    return out;
}

bool alpha_equal(const FTypePtr& a, const FTypePtr& b) {
    std::vector<std::pair<std::string, std::string>> env;
    return alpha_equal_impl(a, b, env);
}

FTypePtr subst_type(const FTypePtr& t, const std::string& var, const FTypePtr& replacement) {
    switch (t->kind) {
        case FType::Kind::Var:
            return t->name == var ? replacement : t;
        case FType::Kind::Arrow: {
            auto d = subst_type(t->dom, var, replacement);
            auto c = subst_type(t->body, var, replacement);
            if (d == t->dom && c == t->body) return t;
            return FType::arrow(std::move(d), std::move(c));
        }
        case FType::Kind::Forall: {
            if (t->name == var) return t;
            auto fv = free_type_vars(t->body);
            if (!fv.count(var)) return t;
            auto rfv = free_type_vars(replacement);
            if (!rfv.count(t->name)) return FType::forall(t->name, subst_type(t->body, var, replacement));
            std::set<std::string> avoid = fv;
            avoid.insert(rfv.begin(), rfv.end());
            avoid.insert(var);
            std::string fresh = detail::fresh_variant(t->name, avoid);
            auto body = subst_type(t->body, t->name, FType::var(fresh));
            return FType::forall(fresh, subst_type(body, var, replacement));
        }
    }
    return t;
}

std::string to_string(const FTypePtr& t) {
    std::ostringstream os;
    print_type(os, t, 0);
    return os.str();
}

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

namespace {

void print_term(std::ostream& os, const FTermPtr& t, int ctx);

// ctx: 0 = anywhere, 1 = operator position, 2 = operand position
void print_term(std::ostream& os, const FTermPtr& t, int ctx) {
    switch (t->kind) {
        case FTerm::Kind::Var:
            os << t->name;
            return;
        case FTerm::Kind::Lam:
        case FTerm::Kind::TLam: {
            bool parens = ctx != 0;
            if (parens) os << '(';
            if (t->kind == FTerm::Kind::Lam) {
                os << '\\' << t->name << ':';
                print_type(os, t->type, 0);
                os << ". ";
            } else {
                os << "/\\" << t->name << ". ";
            }
            print_term(os, t->fun, 0);
            if (parens) os << ')';
            return;
        }
        case FTerm::Kind::App:
        case FTerm::Kind::TApp: {
            bool parens = ctx == 2;
            if (parens) os << '(';
            print_term(os, t->fun, 1);
            if (t->kind == FTerm::Kind::App) {
                os << ' ';
                print_term(os, t->arg, 2);
            } else {
                os << " [";
                print_type(os, t->type, 0);
                os << ']';
            }
            if (parens) os << ')';
            return;
        }
    }
}

void collect_fv(const FTermPtr& t, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (t->kind) {
        case FTerm::Kind::Var:
            if (!bound.count(t->name)) out.insert(t->name);
            return;
        case FTerm::Kind::Lam: {
            bool fresh = bound.insert(t->name).second;
            collect_fv(t->fun, bound, out);
            if (fresh) bound.erase(t->name);
            return;
        }
        case FTerm::Kind::App:
            collect_fv(t->fun, bound, out);
            collect_fv(t->arg, bound, out);
            return;
        case FTerm::Kind::TLam:
        case FTerm::Kind::TApp:
            collect_fv(t->fun, bound, out);
            return;
    }
}

void collect_names(const FTermPtr& t, std::set<std::string>& out) {
    if (!t) return;
    if (t->kind == FTerm::Kind::Var || t->kind == FTerm::Kind::Lam || t->kind == FTerm::Kind::TLam)
        out.insert(t->name);
    collect_type_names(t->type, out);
    collect_names(t->fun, out);
    collect_names(t->arg, out);
}

using NameEnv = std::vector<std::pair<std::string, std::string>>;

bool lookup_pair(const NameEnv& env, const std::string& a, const std::string& b) {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
        if (it->first == a || it->second == b) return it->first == a && it->second == b;
    }
    return a == b;
}

bool type_alpha_env(const FTypePtr& a, const FTypePtr& b, const NameEnv& tenv) {
    NameEnv env = tenv;
    return alpha_equal_impl(a, b, env);
}

bool term_alpha(const FTermPtr& a, const FTermPtr& b, NameEnv& env, NameEnv& tenv) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case FTerm::Kind::Var:
            return lookup_pair(env, a->name, b->name);
        case FTerm::Kind::Lam: {
            if (!type_alpha_env(a->type, b->type, tenv)) return false;
            env.emplace_back(a->name, b->name);
            bool r = term_alpha(a->fun, b->fun, env, tenv);
            env.pop_back();
            return r;
        }
        case FTerm::Kind::App:
            return term_alpha(a->fun, b->fun, env, tenv) && term_alpha(a->arg, b->arg, env, tenv);
        case FTerm::Kind::TLam: {
            tenv.emplace_back(a->name, b->name);
            bool r = term_alpha(a->fun, b->fun, env, tenv);
            tenv.pop_back();
            return r;
        }
        case FTerm::Kind::TApp:
            return type_alpha_env(a->type, b->type, tenv) && term_alpha(a->fun, b->fun, env, tenv);
    }
    return false;
}

}  // namespace

std::string to_string(const FTermPtr& t) {
    std::ostringstream os;
    print_term(os, t, 0);
    return os.str();
}

std::size_t term_size(const FTermPtr& t) {
    switch (t->kind) {
        case FTerm::Kind::Var: return 1;
        case FTerm::Kind::App: return 1 + term_size(t->fun) + term_size(t->arg);
        default: return 1 + term_size(t->fun);
    }
}

std::set<std::string> free_vars(const FTermPtr& t) {
    std::set<std::string> bound, out;
    collect_fv(t, bound, out);
    return out;
}

bool alpha_equal(const FTermPtr& a, const FTermPtr& b) {
    NameEnv env, tenv;
    return term_alpha(a, b, env, tenv);
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

std::string position_message(std::size_t line, std::size_t column, const std::string& message) {
    std::ostringstream os;
    os << line << ':' << column << ": " << message;
    return os.str();
}

class FParser {
public:
    explicit FParser(std::string_view text) : ts_(detail::tokenize(text)) {}

    FTypePtr type() {
        if (ts_.accept(detail::Tok::Forall)) {
            std::string name = ts_.expect(detail::Tok::Ident).text;
            ts_.expect(detail::Tok::Dot);
            return FType::forall(std::move(name), type());
        }
        FTypePtr lhs = atype();
        if (ts_.accept(detail::Tok::Arrow)) return FType::arrow(lhs, type());
        return lhs;
    }

    FTermPtr term() {
        if (ts_.accept(detail::Tok::Lambda)) {
            std::string name = ts_.expect(detail::Tok::Ident).text;
            ts_.expect(detail::Tok::Colon);
            FTypePtr annot = type();
            ts_.expect(detail::Tok::Dot);
            return FTerm::lam(std::move(name), std::move(annot), term());
        }
        if (ts_.accept(detail::Tok::BigLambda)) {
            std::string name = ts_.expect(detail::Tok::Ident).text;
            ts_.expect(detail::Tok::Dot);
            return FTerm::tlam(std::move(name), term());
        }
        FTermPtr head = atom();
        for (;;) {
            if (ts_.accept(detail::Tok::LBracket)) {
                FTypePtr arg = type();
                ts_.expect(detail::Tok::RBracket);
                head = FTerm::tapp(std::move(head), std::move(arg));
            } else if (ts_.at(detail::Tok::Ident) || ts_.at(detail::Tok::LParen)) {
                head = FTerm::app(std::move(head), atom());
            } else if (ts_.at(detail::Tok::Lambda) || ts_.at(detail::Tok::BigLambda)) {
                // A trailing abstraction extends as far right as possible.
                head = FTerm::app(std::move(head), term());
            } else {
                return head;
            }
        }
    }

    void finish() {
        if (!ts_.at(detail::Tok::End)) ts_.fail("expected end of input");
    }

private:
    FTypePtr atype() {
        if (ts_.accept(detail::Tok::LParen)) {
            FTypePtr t = type();
            ts_.expect(detail::Tok::RParen);
            return t;
        }
        if (ts_.at(detail::Tok::Ident)) return FType::var(ts_.next().text);
        ts_.fail("expected type");
    }

    FTermPtr atom() {
        if (ts_.accept(detail::Tok::LParen)) {
            FTermPtr t = term();
            ts_.expect(detail::Tok::RParen);
            return t;
        }
        if (ts_.at(detail::Tok::Ident)) return FTerm::var(ts_.next().text);
        ts_.fail("expected term");
    }

    detail::TokenStream ts_;
};

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(position_message(line, column, message)), line_(line), column_(column) {}

FTypePtr parse_type(std::string_view text) {
    FParser p(text);
    FTypePtr t = p.type();
    p.finish();
    return t;
}

FTermPtr parse_term(std::string_view text) {
    FParser p(text);
    FTermPtr t = p.term();
    p.finish();
    return t;
}

// ---------------------------------------------------------------------------
// Typechecking
// ---------------------------------------------------------------------------

namespace {

FTypePtr check(const FTermPtr& t, TypeContext& ctx) {
    switch (t->kind) {
        case FTerm::Kind::Var: {
            auto it = ctx.find(t->name);
            if (it == ctx.end()) throw TypeError("unbound variable '" + t->name + "'");
            return it->second;
        }
        case FTerm::Kind::Lam: {
            auto saved = ctx.find(t->name) != ctx.end() ? std::optional<FTypePtr>(ctx[t->name]) : std::nullopt;
            ctx[t->name] = t->type;
            FTypePtr body = check(t->fun, ctx);
            if (saved) ctx[t->name] = *saved; else ctx.erase(t->name);
            return FType::arrow(t->type, body);
        }
        case FTerm::Kind::App: {
            FTypePtr f = check(t->fun, ctx);
            FTypePtr a = check(t->arg, ctx);
            if (f->kind != FType::Kind::Arrow)
                throw TypeError("application of non-function of type " + to_string(f) + " in " + to_string(t));
            if (!alpha_equal(f->dom, a))
                throw TypeError("annotation mismatch: expected " + to_string(f->dom) + ", got " + to_string(a) +
                                " in " + to_string(t));
            return f->body;
        }
        case FTerm::Kind::TLam: {
            for (const auto& x : free_vars(t->fun)) {
                auto it = ctx.find(x);
                if (it != ctx.end() && free_type_vars(it->second).count(t->name))
                    throw TypeError("eigenvariable condition violated: '" + t->name + "' is free in the type of '" +
                                    x + "'");
            }
            return FType::forall(t->name, check(t->fun, ctx));
        }
        case FTerm::Kind::TApp: {
            FTypePtr f = check(t->fun, ctx);
            if (f->kind != FType::Kind::Forall)
                throw TypeError("type application of non-forall type " + to_string(f) + " in " + to_string(t));
            return subst_type(f->body, f->name, t->type);
        }
    }
    throw TypeError("malformed term");
}

}  // namespace

FTypePtr typecheck(const FTermPtr& t, const TypeContext& ctx) {
    TypeContext work = ctx;
    return check(t, work);
}

// ---------------------------------------------------------------------------
// Alpha normalization
// ---------------------------------------------------------------------------

namespace {

class Renamer {
public:
    explicit Renamer(detail::NameSupply& names) : names_(names) {}

    FTypePtr type(const FTypePtr& t, std::map<std::string, std::string>& tenv) {
        switch (t->kind) {
            case FType::Kind::Var: {
                auto it = tenv.find(t->name);
                return it == tenv.end() ? t : FType::var(it->second);
            }
            case FType::Kind::Arrow:
                return FType::arrow(type(t->dom, tenv), type(t->body, tenv));
            case FType::Kind::Forall: {
                std::string fresh = names_.fresh(t->name);
                auto saved = swap_in(tenv, t->name, fresh);
                auto body = type(t->body, tenv);
                restore(tenv, t->name, saved);
                return FType::forall(fresh, body);
            }
        }
        return t;
    }

    FTermPtr term(const FTermPtr& t, std::map<std::string, std::string>& env,
                  std::map<std::string, std::string>& tenv) {
        switch (t->kind) {
            case FTerm::Kind::Var: {
                auto it = env.find(t->name);
                return it == env.end() ? t : FTerm::var(it->second);
            }
            case FTerm::Kind::Lam: {
                auto annot = type(t->type, tenv);
                std::string fresh = names_.fresh(t->name);
                auto saved = swap_in(env, t->name, fresh);
                auto body = term(t->fun, env, tenv);
                restore(env, t->name, saved);
                return FTerm::lam(fresh, annot, body);
            }
            case FTerm::Kind::App:
                return FTerm::app(term(t->fun, env, tenv), term(t->arg, env, tenv));
            case FTerm::Kind::TLam: {
                std::string fresh = names_.fresh(t->name);
                auto saved = swap_in(tenv, t->name, fresh);
                auto body = term(t->fun, env, tenv);
                restore(tenv, t->name, saved);
                return FTerm::tlam(fresh, body);
            }
            case FTerm::Kind::TApp:
                return FTerm::tapp(term(t->fun, env, tenv), type(t->type, tenv));
        }
        return t;
    }

private:
    static std::optional<std::string> swap_in(std::map<std::string, std::string>& env, const std::string& k,
                                              const std::string& v) {
        std::optional<std::string> saved;
        if (auto it = env.find(k); it != env.end()) saved = it->second;
        env[k] = v;
        return saved;
    }

    static void restore(std::map<std::string, std::string>& env, const std::string& k,
                        const std::optional<std::string>& saved) {
        if (saved) env[k] = *saved; else env.erase(k);
    }

    detail::NameSupply& names_;
};

}  // namespace

FTermPtr alpha_normalize(const FTermPtr& t, const TypeContext& ctx) {
    detail::NameSupply names;
    for (const auto& x : free_vars(t)) names.reserve(x);
    for (const auto& [x, ty] : ctx) {
        names.reserve(x);
        for (const auto& a : free_type_vars(ty)) names.reserve(a);
    }
    // Free type variables of the annotations stay as they are.
    std::function<void(const FTermPtr&, std::set<std::string>&)> scan_ftv;
    scan_ftv = [&](const FTermPtr& u, std::set<std::string>& bound) {
        if (!u) return;
        if (u->type) {
            for (const auto& a : free_type_vars(u->type))
                if (!bound.count(a)) names.reserve(a);
        }
        if (u->kind == FTerm::Kind::TLam) {
            bool fresh = bound.insert(u->name).second;
            scan_ftv(u->fun, bound);
            if (fresh) bound.erase(u->name);
            return;
        }
        scan_ftv(u->fun, bound);
        scan_ftv(u->arg, bound);
    };
    std::set<std::string> bound;
    scan_ftv(t, bound);

    Renamer r(names);
    std::map<std::string, std::string> env, tenv;
    return r.term(t, env, tenv);
}

// ---------------------------------------------------------------------------
// Reduction
// ---------------------------------------------------------------------------

FuelExhausted::FuelExhausted(std::uint64_t steps)
    : std::runtime_error("fuel exhausted after " + std::to_string(steps) + " beta steps"), steps_(steps) {}

namespace {

class Reducer {
public:
    explicit Reducer(detail::NameSupply& names) : names_(names) {}

    // Fresh copy of `t` with every binder renamed, so that copies never share
    // binder names with each other or with the host term.
    FTermPtr fresh_copy(const FTermPtr& t) {
        Renamer r(names_);
        std::map<std::string, std::string> env, tenv;
        return r.term(t, env, tenv);
    }

    FTermPtr subst(const FTermPtr& t, const std::string& x, const FTermPtr& n) {
        switch (t->kind) {
            case FTerm::Kind::Var:
                return t->name == x ? fresh_copy(n) : t;
            case FTerm::Kind::Lam:
                if (t->name == x) return t;
                return FTerm::lam(t->name, t->type, subst(t->fun, x, n));
            case FTerm::Kind::App:
                return FTerm::app(subst(t->fun, x, n), subst(t->arg, x, n));
            case FTerm::Kind::TLam:
                return FTerm::tlam(t->name, subst(t->fun, x, n));
            case FTerm::Kind::TApp:
                return FTerm::tapp(subst(t->fun, x, n), t->type);
        }
        return t;
    }

    FTermPtr tsubst(const FTermPtr& t, const std::string& a, const FTypePtr& ty) {
        switch (t->kind) {
            case FTerm::Kind::Var:
                return t;
            case FTerm::Kind::Lam:
                return FTerm::lam(t->name, subst_type(t->type, a, ty), tsubst(t->fun, a, ty));
            case FTerm::Kind::App:
                return FTerm::app(tsubst(t->fun, a, ty), tsubst(t->arg, a, ty));
            case FTerm::Kind::TLam:
                if (t->name == a) return t;
                return FTerm::tlam(t->name, tsubst(t->fun, a, ty));
            case FTerm::Kind::TApp:
                return FTerm::tapp(tsubst(t->fun, a, ty), subst_type(t->type, a, ty));
        }
        return t;
    }

    // One leftmost-outermost step; returns nullptr when `t` is normal.
    FTermPtr step(const FTermPtr& t, bool& counted) {
        switch (t->kind) {
            case FTerm::Kind::Var:
                return nullptr;
            case FTerm::Kind::Lam: {
                auto b = step(t->fun, counted);
                return b ? FTerm::lam(t->name, t->type, b) : nullptr;
            }
            case FTerm::Kind::TLam: {
                auto b = step(t->fun, counted);
                return b ? FTerm::tlam(t->name, b) : nullptr;
            }
            case FTerm::Kind::App: {
                if (t->fun->kind == FTerm::Kind::Lam) {
                    counted = true;
                    return subst(t->fun->fun, t->fun->name, t->arg);
                }
                if (auto f = step(t->fun, counted)) return FTerm::app(f, t->arg);
                if (auto a = step(t->arg, counted)) return FTerm::app(t->fun, a);
                return nullptr;
            }
            case FTerm::Kind::TApp: {
                if (t->fun->kind == FTerm::Kind::TLam) {
                    counted = false;
                    return tsubst(t->fun->fun, t->fun->name, t->type);
                }
                auto f = step(t->fun, counted);
                return f ? FTerm::tapp(f, t->type) : nullptr;
            }
        }
        return nullptr;
    }

private:
    detail::NameSupply& names_;
};

}  // namespace

NormalForm beta_normalize(const FTermPtr& t, std::uint64_t fuel) {
    detail::NameSupply names;
    std::set<std::string> all;
    collect_names(t, all);
    for (const auto& n : all) names.reserve(n);

    Reducer red(names);
    NormalForm nf{red.fresh_copy(t), 0};
    for (;;) {
        bool counted = false;
        auto next = red.step(nf.term, counted);
        if (!next) return nf;
        if (counted) {
            if (nf.steps == fuel) throw FuelExhausted(nf.steps);
            ++nf.steps;
        }
        nf.term = std::move(next);
    }
}

}  // namespace dlal
