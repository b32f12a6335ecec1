#pragma once

#include <cstddef>
#include <vector>

namespace hyperarr {

struct LpSolution {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  double objective = 0.0;
  std::vector<double> z;
};

/// maximize c·z subject to A z <= b, z >= 0.
///
/// Dense two-phase tableau simplex with Bland's rule. Throws
/// Error{NumericFailure} if the iteration cap is hit or a pivot breaks down.
LpSolution simplex_maximize(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                            const std::vector<double>& c);

}  // namespace hyperarr
