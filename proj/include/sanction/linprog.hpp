#ifndef SANCTION_LINPROG_HPP
#define SANCTION_LINPROG_HPP

#include <optional>
#include <vector>

namespace sanction {

// Dense linear feasibility: find x >= 0 with A_eq x = b_eq and A_le x <= b_le.
// Solved by a phase-I simplex with Bland's rule; small problems only (the
// enforcement searches are ~20 rows by ~200 columns).
struct LpProblem {
  enum class Rel { Eq, Le };
  struct Row {
    std::vector<double> a;
    double rhs = 0.0;
    Rel rel = Rel::Eq;
  };
  int nvars = 0;
  std::vector<Row> rows;

  void add_eq(std::vector<double> a, double rhs) { rows.push_back({std::move(a), rhs, Rel::Eq}); }
  void add_le(std::vector<double> a, double rhs) { rows.push_back({std::move(a), rhs, Rel::Le}); }
};

// A feasible point, or nullopt when the phase-I optimum stays above tol.
std::optional<std::vector<double>> lp_feasible_point(const LpProblem& lp, double tol = 1e-9);

}  // namespace sanction

#endif
