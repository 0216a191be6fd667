#ifndef KSET_LP_HPP
#define KSET_LP_HPP

#include <optional>
#include <vector>

namespace kset::lp {

enum class Rel { Le, Eq, Ge };

struct Row {
    std::vector<double> coeffs;
    Rel rel;
    double rhs;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status;
    std::vector<double> x;  // only meaningful when Optimal
    double value = 0.0;
};

/// Dense two-phase primal simplex with Bland's anti-cycling rule.
/// Minimizes (or maximizes) objective . x subject to the rows and x >= 0.
Result solve(const std::vector<double>& objective, const std::vector<Row>& rows,
             bool maximize = false);

}  // namespace kset::lp

#endif
