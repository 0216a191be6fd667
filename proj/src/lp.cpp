#include "kset/lp.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

#include "kset/errors.hpp"

namespace kset::lp {

namespace {

constexpr double kTol = 1e-9;

struct Tableau {
    int m, ncols;                       // rows, structural+slack+artificial columns
    std::vector<std::vector<double>> t; // m x (ncols+1), last column is rhs
    std::vector<int> basis;             // basic column per row

    double& rhs(int i) { return t[i][ncols]; }
};

// Reduced cost of column j under objective c (length ncols).
double reduced_cost(const Tableau& tb, const std::vector<double>& c, int j) {
    double rc = c[j];
    for (int i = 0; i < tb.m; ++i) {
        double cb = c[tb.basis[i]];
        if (cb != 0.0) rc -= cb * tb.t[i][j];
    }
    return rc;
}

void pivot(Tableau& tb, int row, int col) {
    double piv = tb.t[row][col];
    for (int j = 0; j <= tb.ncols; ++j) tb.t[row][j] /= piv;
    for (int i = 0; i < tb.m; ++i) {
        if (i == row) continue;
        double f = tb.t[i][col];
        if (f == 0.0) continue;
        for (int j = 0; j <= tb.ncols; ++j) tb.t[i][j] -= f * tb.t[row][j];
    }
    tb.basis[row] = col;
}

// Minimizes c . x from the current basic feasible point. Bland's rule:
// lowest-index entering column, lowest basis index on ratio ties.
// Returns false on unboundedness.
bool run_simplex(Tableau& tb, const std::vector<double>& c, const std::vector<bool>& allowed) {
    for (;;) {
        int enter = -1;
        for (int j = 0; j < tb.ncols; ++j) {
            if (!allowed[j]) continue;
            if (reduced_cost(tb, c, j) < -kTol) {
                enter = j;
                break;
            }
        }
        if (enter < 0) return true;

        int leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < tb.m; ++i) {
            double a = tb.t[i][enter];
            if (a <= kTol) continue;
            double ratio = tb.t[i][tb.ncols] / a;
            if (ratio < best_ratio - kTol ||
                (ratio < best_ratio + kTol && (leave < 0 || tb.basis[i] < tb.basis[leave]))) {
                best_ratio = ratio;
                leave = i;
            }
        }
        if (leave < 0) return false;
        pivot(tb, leave, enter);
    }
}

}  // namespace

Result solve(const std::vector<double>& objective, const std::vector<Row>& rows, bool maximize) {
    const int n = static_cast<int>(objective.size());
    const int m = static_cast<int>(rows.size());
    for (const auto& r : rows) {
        if (static_cast<int>(r.coeffs.size()) != n) {
            throw ValidationError("LP row length does not match objective length");
        }
    }

    int n_slack = 0;
    for (const auto& r : rows) {
        if (r.rel != Rel::Eq) ++n_slack;
    }
    const int ncols = n + n_slack + m;  // structural, slack, artificial
    Tableau tb;
    tb.m = m;
    tb.ncols = ncols;
    tb.t.assign(m, std::vector<double>(ncols + 1, 0.0));
    tb.basis.assign(m, 0);

    int slack_at = n;
    for (int i = 0; i < m; ++i) {
        double sign = 1.0;
        double slack_coef = 0.0;
        if (rows[i].rel == Rel::Le) slack_coef = 1.0;
        if (rows[i].rel == Rel::Ge) slack_coef = -1.0;
        if (rows[i].rhs < 0.0) sign = -1.0;
        for (int j = 0; j < n; ++j) tb.t[i][j] = sign * rows[i].coeffs[j];
        if (rows[i].rel != Rel::Eq) tb.t[i][slack_at++] = sign * slack_coef;
        tb.t[i][n + n_slack + i] = 1.0;  // artificial, basic at start
        tb.rhs(i) = sign * rows[i].rhs;
        tb.basis[i] = n + n_slack + i;
    }

    // Phase 1: minimize the artificial total.
    std::vector<double> c1(ncols, 0.0);
    for (int i = 0; i < m; ++i) c1[n + n_slack + i] = 1.0;
    std::vector<bool> all_cols(ncols, true);
    run_simplex(tb, c1, all_cols);

    double infeas = 0.0;
    for (int i = 0; i < m; ++i) {
        if (tb.basis[i] >= n + n_slack) infeas += tb.rhs(i);
    }
    if (infeas > 1e-8) return {Status::Infeasible, {}, 0.0};

    // Drive remaining zero-level artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
        if (tb.basis[i] < n + n_slack) continue;
        for (int j = 0; j < n + n_slack; ++j) {
            if (std::abs(tb.t[i][j]) > 1e-7) {
                pivot(tb, i, j);
                break;
            }
        }
    }

    // Phase 2 with artificials locked out.
    std::vector<double> c2(ncols, 0.0);
    for (int j = 0; j < n; ++j) c2[j] = maximize ? -objective[j] : objective[j];
    std::vector<bool> allowed(ncols, true);
    for (int j = n + n_slack; j < ncols; ++j) allowed[j] = false;
    if (!run_simplex(tb, c2, allowed)) return {Status::Unbounded, {}, 0.0};

    Result res;
    res.status = Status::Optimal;
    res.x.assign(n, 0.0);
    for (int i = 0; i < m; ++i) {
        if (tb.basis[i] < n) res.x[tb.basis[i]] = tb.rhs(i);
    }
    res.value = 0.0;
    for (int j = 0; j < n; ++j) res.value += objective[j] * res.x[j];
    return res;
}

}  // namespace kset::lp
