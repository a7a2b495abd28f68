#include "esor/qp.hpp"

#include <cmath>
#include <limits>

namespace esor {

namespace {

constexpr double kPrimalTol = 1e-8;
constexpr double kDualTol = 1e-10;
constexpr double kObjTieTol = 1e-12;

struct Row {
    Vec coeff;
    double rhs;
};

// H = L L' with positive diagonal, else not positive definite.
bool cholesky_pd(const Mat& H) {
    const std::size_t n = H.rows;
    Mat L(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = H(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
            if (i == j) {
                if (s <= 0.0) return false;
                L(i, i) = std::sqrt(s);
            } else {
                L(i, j) = s / L(j, j);
            }
        }
    }
    return true;
}

double objective_of(const QpProblem& p, const Vec& v) {
    return 0.5 * dot(v, p.H * v) + dot(p.q, v);
}

} // namespace

void validate(const QpProblem& p) {
    const std::size_t n = p.H.rows;
    if (n == 0 || p.H.cols != n) throw DomainError("qp: H must be square and non-empty");
    if (n > 4) throw DomainError("qp: more than 4 decision variables");
    if (p.q.size() != n) throw DomainError("qp: q size mismatch");
    if (p.G.rows > 8) throw DomainError("qp: more than 8 general constraint rows");
    if (p.G.rows > 0 && p.G.cols != n) throw DomainError("qp: G column count mismatch");
    if (p.w.size() != p.G.rows) throw DomainError("qp: w size mismatch");
    if (!p.lo.empty() && p.lo.size() != n) throw DomainError("qp: lo size mismatch");
    if (!p.hi.empty() && p.hi.size() != n) throw DomainError("qp: hi size mismatch");
    check_finite(p.H, "qp cost matrix");
    check_finite(p.q, "qp cost vector");
    if (p.G.rows > 0) {
        check_finite(p.G, "qp constraint matrix");
        check_finite(p.w, "qp constraint rhs");
    }

    double scale = 1.0;
    for (double v : p.H.a) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(p.H(i, j) - p.H(j, i)) > 1e-12 * scale)
                throw DomainError("qp: H not symmetric");
    if (!cholesky_pd(p.H)) throw DomainError("qp: H not positive definite");
}

QpSolution solve_qp(const QpProblem& p) {
    validate(p);
    const std::size_t n = p.H.rows;

    std::vector<Row> rows;
    for (std::size_t i = 0; i < p.G.rows; ++i) {
        Row r;
        r.coeff.assign(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) r.coeff[j] = p.G(i, j);
        r.rhs = p.w[i];
        rows.push_back(std::move(r));
    }
    for (std::size_t j = 0; j < p.lo.size(); ++j) {
        if (!std::isfinite(p.lo[j])) continue;
        Row r;
        r.coeff.assign(n, 0.0);
        r.coeff[j] = 1.0;
        r.rhs = p.lo[j];
        rows.push_back(std::move(r));
    }
    for (std::size_t j = 0; j < p.hi.size(); ++j) {
        if (!std::isfinite(p.hi[j])) continue;
        Row r;
        r.coeff.assign(n, 0.0);
        r.coeff[j] = -1.0;
        r.rhs = -p.hi[j];
        rows.push_back(std::move(r));
    }
    const std::size_t m = rows.size();

    QpSolution best;
    best.status = QpStatus::Infeasible;
    double best_obj = std::numeric_limits<double>::infinity();

    std::vector<std::size_t> subset;
    const auto try_subset = [&]() {
        const std::size_t k = subset.size();
        // KKT system: [H  -A'; A  0] [v; lambda] = [-q; rhs]
        Mat K(n + k, n + k, 0.0);
        Vec b(n + k, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) K(i, j) = p.H(i, j);
            b[i] = -p.q[i];
        }
        for (std::size_t s = 0; s < k; ++s) {
            const Row& r = rows[subset[s]];
            for (std::size_t j = 0; j < n; ++j) {
                K(j, n + s) = -r.coeff[j];
                K(n + s, j) = r.coeff[j];
            }
            b[n + s] = r.rhs;
        }
        Vec sol;
        try {
            sol = linear_solve(K, b);
        } catch (const SingularMatrixError&) {
            return; // dependent rows in this candidate set
        }
        Vec v(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(n));
        for (std::size_t s = 0; s < k; ++s)
            if (sol[n + s] < -kDualTol) return;
        for (const Row& r : rows)
            if (dot(r.coeff, v) - r.rhs < -kPrimalTol) return;

        const double obj = objective_of(p, v);
        if (obj < best_obj - kObjTieTol) {
            best_obj = obj;
            best.status = QpStatus::Optimal;
            best.x = v;
            best.objective = obj;
            best.active = subset;
            best.multipliers.assign(m, 0.0);
            for (std::size_t s = 0; s < k; ++s) best.multipliers[subset[s]] = sol[n + s];
        }
    };

    // Candidate active sets in (size, lexicographic) order; the strict
    // improvement test above then makes the lowest-index set win ties.
    const auto next_combination = [m](std::vector<std::size_t>& c) {
        const std::size_t k = c.size();
        std::size_t i = k;
        while (i-- > 0) {
            if (c[i] < m - k + i) {
                ++c[i];
                for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
                return true;
            }
        }
        return false;
    };

    const std::size_t kmax = std::min(n, m);
    for (std::size_t k = 0; k <= kmax; ++k) {
        subset.resize(k);
        for (std::size_t i = 0; i < k; ++i) subset[i] = i;
        do {
            try_subset();
        } while (k > 0 && next_combination(subset));
        // A feasible unconstrained minimizer is already the global optimum.
        if (k == 0 && best.status == QpStatus::Optimal) return best;
    }

    return best;
}

} // namespace esor
