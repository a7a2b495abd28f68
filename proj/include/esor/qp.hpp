#pragma once

#include <cstddef>
#include <vector>

#include "esor/linalg.hpp"

namespace esor {

// min 0.5*v'Hv + q'v   s.t.  G v >= w,  lo <= v <= hi.
// H must be symmetric positive definite; problems here never exceed 4
// variables and 8 general rows, so the solver enumerates active sets exactly.
struct QpProblem {
    Mat H;
    Vec q;
    Mat G;      // zero rows allowed
    Vec w;
    Vec lo, hi; // may be empty (no box) or hold +-infinity per entry
};

enum class QpStatus { Optimal, Infeasible };

// Constraints are indexed as one combined list: the general rows of G first,
// then the finite lower bounds, then the finite upper bounds. `active` and
// `multipliers` use that indexing; inactive rows carry a zero multiplier.
struct QpSolution {
    QpStatus status = QpStatus::Infeasible;
    Vec x;
    double objective = 0.0;
    std::vector<std::size_t> active;
    Vec multipliers;
};

// Throws DomainError when the problem violates its structural contract
// (asymmetric or non-PD H, size mismatches, more than 8 rows / 4 variables).
void validate(const QpProblem& p);

QpSolution solve_qp(const QpProblem& p);

} // namespace esor
