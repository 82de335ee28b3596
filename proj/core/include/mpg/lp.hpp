#pragma once

#include "mpg/rational.hpp"

#include <optional>
#include <vector>

namespace mpg {

enum class Relation { LessEq, Equal, GreaterEq };

struct LpConstraint {
    std::vector<Rat> coeffs;  // one per variable
    Relation rel = Relation::LessEq;
    Rat rhs;
};

struct LpVariable {
    std::optional<Rat> lower;  // nullopt: unbounded below
    std::optional<Rat> upper;  // nullopt: unbounded above
};

enum class LpObjective { Maximize, Minimize };

struct LinearProgram {
    std::vector<LpVariable> vars;
    std::vector<LpConstraint> constraints;
    std::vector<Rat> objective;  // one coefficient per variable
    LpObjective direction = LpObjective::Maximize;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<Rat> assignment;  // per variable, Optimal only
    Rat objective;                // Optimal only
};

/// Exact rational two-phase simplex with Bland's anti-cycling rule.
/// Deterministic; the returned assignment satisfies every constraint exactly.
LpResult solve_lp(const LinearProgram& lp);

}  // namespace mpg
