#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dlal {

// ---------------------------------------------------------------------------
// System F types
// ---------------------------------------------------------------------------

struct FType;
using FTypePtr = std::shared_ptr<const FType>;

struct FType {
    enum class Kind { Var, Arrow, Forall };

    Kind kind;
    std::string name;  // Var: variable, Forall: binder
    FTypePtr dom;      // Arrow: domain
    FTypePtr body;     // Arrow: codomain, Forall: body

    static FTypePtr var(std::string name);
    static FTypePtr arrow(FTypePtr dom, FTypePtr cod);
    static FTypePtr forall(std::string binder, FTypePtr body);
};

std::set<std::string> free_type_vars(const FTypePtr& t);
bool alpha_equal(const FTypePtr& a, const FTypePtr& b);

/// Capture-avoiding substitution t[replacement/var].
FTypePtr subst_type(const FTypePtr& t, const std::string& var, const FTypePtr& replacement);

std::string to_string(const FTypePtr& t);

// ---------------------------------------------------------------------------
// Church-annotated System F terms
// ---------------------------------------------------------------------------

struct FTerm;
using FTermPtr = std::shared_ptr<const FTerm>;

struct FTerm {
    enum class Kind { Var, Lam, App, TLam, TApp };

    Kind kind;
    std::string name;  // Var, Lam: term variable; TLam: type binder
    FTypePtr type;     // Lam: annotation; TApp: type argument
    FTermPtr fun;      // Lam, TLam: body; App, TApp: operator
    FTermPtr arg;      // App: operand

    static FTermPtr var(std::string name);
    static FTermPtr lam(std::string name, FTypePtr annot, FTermPtr body);
    static FTermPtr app(FTermPtr fun, FTermPtr arg);
    static FTermPtr tlam(std::string binder, FTermPtr body);
    static FTermPtr tapp(FTermPtr fun, FTypePtr arg);
};

/// Application spine helper: app(f, a1, a2, ...).
FTermPtr app_n(FTermPtr f, std::initializer_list<FTermPtr> args);

std::string to_string(const FTermPtr& t);

/// Number of term nodes; type annotations are not counted.
std::size_t term_size(const FTermPtr& t);

/// Free term variables.
std::set<std::string> free_vars(const FTermPtr& t);

/// Alpha-equivalence on terms, including their type annotations.
bool alpha_equal(const FTermPtr& a, const FTermPtr& b);

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

FTypePtr parse_type(std::string_view text);
FTermPtr parse_term(std::string_view text);

// ---------------------------------------------------------------------------
// Typechecking
// ---------------------------------------------------------------------------

class TypeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Types of free term variables.
using TypeContext = std::map<std::string, FTypePtr>;

/// Church typing; enforces the eigenvariable condition.
FTypePtr typecheck(const FTermPtr& t, const TypeContext& ctx = {});

/// Renames every term and type binder (including the binders of forall types
/// inside annotations) so that all of them are pairwise distinct and distinct
/// from the free names of the term.
FTermPtr alpha_normalize(const FTermPtr& t, const TypeContext& ctx = {});

// ---------------------------------------------------------------------------
// Reduction
// ---------------------------------------------------------------------------

struct NormalForm {
    FTermPtr term;
    std::uint64_t steps = 0;  // term-level beta steps
};

class FuelExhausted : public std::runtime_error {
public:
    explicit FuelExhausted(std::uint64_t steps);
    std::uint64_t steps() const { return steps_; }

private:
    std::uint64_t steps_;
};

/// Leftmost-outermost normalization. Type redexes are contracted but not
/// counted; `fuel` bounds the number of counted steps.
NormalForm beta_normalize(const FTermPtr& t, std::uint64_t fuel);

}  // namespace dlal
