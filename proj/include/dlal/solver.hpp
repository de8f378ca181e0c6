#pragma once

#include <gmpxx.h>

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dlal/constraints.hpp"

namespace dlal {

using Rational = mpq_class;
using BoolAssignment = std::map<BoolParam, bool>;

struct BooleanResult {
    /// Minimal solution; empty when unsatisfiable.
    std::optional<BoolAssignment> assignment;
    /// Parameter derived both 0 and 1.
    BoolParam conflict{};
    /// Atoms deriving conflict = 1, from a constant to the conflict, followed
    /// by the atom forcing conflict = 0.
    std::vector<Constraint> trace;
};

/// Saturation from the b = 1 atoms through equalities (both directions) and
/// implications. Parameters not derived 1 are 0.
BooleanResult solve_boolean_minimal(const std::vector<Constraint>& atoms);

/// c >= k for each guard b = 1 => c >= k with psi(b) = 1.
std::vector<Constraint> apply_guards(const BoolAssignment& psi, const std::vector<Constraint>& mixed);

/// sum coeffs * x (= | >=) rhs
struct LinearRow {
    std::map<IntParam, Rational> coeffs;
    bool equality = false;
    Rational rhs;
    const Constraint* origin = nullptr;
};

LinearRow to_row(const Atom& a, const Constraint* origin = nullptr);

struct LpResult {
    bool feasible = false;
    std::map<IntParam, Rational> values;
    /// Optimal phase-1 objective (sum of artificials); positive iff infeasible.
    Rational infeasibility;
    /// Rows with a nonzero multiplier in the phase-1 dual (a Farkas
    /// certificate when infeasible).
    std::vector<std::size_t> certificate;
    std::size_t pivots = 0;
};

/// Exact two-phase simplex with Bland's rule; free variables are split into
/// differences of nonnegative ones. When `minimize` is non-empty a second
/// phase minimizes the sum of those variables.
LpResult lp_feasible(const std::vector<LinearRow>& rows, const std::vector<IntParam>& minimize = {});

/// Multiplies by the least common multiple of the denominators.
/// Throws std::overflow_error if a value leaves the int64 range.
std::map<IntParam, std::int64_t> scale_to_integers(const std::map<IntParam, Rational>& values);

struct SolveOptions {
    bool minimize = false;
};

struct Solution {
    enum class Status { Solved, BooleanUnsat, LinearUnsat };

    Status status = Status::Solved;
    Instantiation phi;

    /// Boolean phase diagnostics.
    BoolParam conflict{};
    /// Conflict derivation (boolean phase) or certificate atoms (linear phase).
    std::vector<Constraint> certificate;
    Rational infeasibility;

    std::size_t guarded = 0;      // mixed atoms turned into linear ones
    std::size_t lp_rows = 0;      // linear system size handed to the simplex
    std::size_t pivots = 0;
    std::chrono::microseconds boolean_time{0}, linear_time{0}, scaling_time{0};
};

const char* to_string(Solution::Status s);

Solution solve_all(const ConstraintStore& store, const SolveOptions& options = {});

}  // namespace dlal
