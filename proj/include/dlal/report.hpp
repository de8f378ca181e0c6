#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dlal/constraints.hpp"
#include "dlal/pseudo.hpp"

namespace dlal {

enum class Status { Typable, Untypable, IllTyped, Error };

/// typable, untypable, ill-typed, error
const char* to_string(Status s);

/// 0, 1, 2, 3 in the order above.
int exit_code(Status s);

struct CheckOptions {
    bool verify = false;
    bool minimize = false;
    bool dump_constraints = false;
    /// Plain DLAL type the conclusion must take.
    std::optional<std::string> goal;
    /// Arguments (corpus names or term sources) applied before normalization.
    std::optional<std::vector<std::string>> normalize;
    std::uint64_t fuel = 10'000'000;
    /// Runs bounded_search at this bound as a cross-check.
    std::optional<std::int64_t> bound;
    std::uint64_t search_cap = 5'000'000;
};

struct Report {
    Status status = Status::Error;
    /// Phase that decided a non-typable status: parse, typecheck, goal,
    /// boolean, linear, internal.
    std::string phase;
    std::string diagnostic;

    FTermPtr term;
    FTypePtr system_f_type;

    /// Conclusion in plain form.
    DTypePtr type;
    unsigned depth = 0;
    bool pi1 = false;
    std::optional<PseudoTerm> decoration;

    std::size_t boolean = 0, linear = 0, mixed = 0;
    std::size_t int_params = 0, bool_params = 0;
    std::size_t lp_rows = 0;

    /// Certificate atoms when untypable, verify violation otherwise.
    std::vector<std::string> violations;
    std::optional<std::string> verify;
    std::vector<std::string> constraints;

    std::optional<std::uint64_t> steps;
    FTermPtr normal_form;

    std::optional<std::size_t> search_found;
    std::string search_note;

    std::chrono::microseconds generation{0}, boolean_time{0}, linear_time{0}, scaling_time{0}, verify_time{0};
};

/// Resolves a corpus name (rev, word:1010, ...) or parses a term.
FTermPtr resolve_term(std::string_view text);

Report run_check(const FTermPtr& term, const CheckOptions& options = {});

/// Parses and typechecks first; failures give status ill-typed.
Report run_check_source(std::string_view source, const CheckOptions& options = {});

/// "normalizes in O(|M|^4) steps" for Π1 conclusions, the inapplicability
/// note otherwise.
std::string bound_statement(const Report& r);

enum class Format { Text, Json };

std::string emit_report(const Report& r, Format format);

}  // namespace dlal
