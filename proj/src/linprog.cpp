#include "sanction/linprog.hpp"

#include <cmath>
#include <cstddef>

#include "sanction/errors.hpp"

namespace sanction {

std::optional<std::vector<double>> lp_feasible_point(const LpProblem& lp, double tol) {
  const int m = static_cast<int>(lp.rows.size());
  const int n = lp.nvars;
  int nslack = 0;
  for (const auto& r : lp.rows)
    if (r.rel == LpProblem::Rel::Le) ++nslack;

  // Columns: n structural, nslack slacks, then one artificial per row that
  // lacks an identity column after sign normalization.
  const int ncols_base = n + nslack;
  std::vector<double> T;  // tableau rows, ncols columns each (set below)
  std::vector<int> basis(m, -1);

  // First pass: equality rows with slack identities where possible.
  std::vector<std::vector<double>> rows(m);
  std::vector<double> rhs(m);
  {
    int si = 0;
    for (int i = 0; i < m; ++i) {
      const auto& r = lp.rows[i];
      if (static_cast<int>(r.a.size()) != n)
        throw ValidationError("lp: row width does not match nvars");
      rows[i].assign(ncols_base, 0.0);
      for (int j = 0; j < n; ++j) rows[i][j] = r.a[j];
      rhs[i] = r.rhs;
      if (r.rel == LpProblem::Rel::Le) {
        rows[i][n + si] = 1.0;
        ++si;
      }
      if (rhs[i] < 0.0) {
        for (double& v : rows[i]) v = -v;
        rhs[i] = -rhs[i];
      }
    }
  }

  // Identity columns from nonnegative-rhs slack rows become the initial basis;
  // everything else gets an artificial.
  int nart = 0;
  for (int i = 0; i < m; ++i) {
    int ident = -1;
    for (int j = n; j < ncols_base; ++j) {
      if (rows[i][j] == 1.0) {
        bool clean = true;
        for (int k = 0; k < m && clean; ++k)
          if (k != i && rows[k][j] != 0.0) clean = false;
        if (clean) {
          ident = j;
          break;
        }
      }
    }
    if (ident >= 0)
      basis[i] = ident;
    else
      ++nart;
  }
  const int ncols = ncols_base + nart;
  T.assign(static_cast<size_t>(m) * ncols, 0.0);
  std::vector<double> b = rhs;
  {
    int ai = 0;
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < ncols_base; ++j) T[static_cast<size_t>(i) * ncols + j] = rows[i][j];
      if (basis[i] < 0) {
        T[static_cast<size_t>(i) * ncols + ncols_base + ai] = 1.0;
        basis[i] = ncols_base + ai;
        ++ai;
      }
    }
  }

  // Phase-I objective: minimize the sum of artificials. Reduced cost row
  // z[j] = sum over artificial-basis rows of T[i][j].
  std::vector<double> z(ncols, 0.0);
  double obj = 0.0;
  for (int i = 0; i < m; ++i) {
    if (basis[i] >= ncols_base) {
      for (int j = 0; j < ncols; ++j) z[j] += T[static_cast<size_t>(i) * ncols + j];
      obj += b[i];
    }
  }

  const double pivot_eps = 1e-11;
  const long max_iters = 200L + 20L * (m + ncols);
  for (long iter = 0; iter < max_iters; ++iter) {
    if (obj <= tol) break;
    // Bland's rule: smallest improving column index.
    int enter = -1;
    for (int j = 0; j < ncols_base; ++j) {
      if (z[j] > pivot_eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;  // optimum reached

    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < m; ++i) {
      const double a = T[static_cast<size_t>(i) * ncols + enter];
      if (a > pivot_eps) {
        const double ratio = b[i] / a;
        if (leave < 0 || ratio < best - 1e-15 ||
            (std::fabs(ratio - best) <= 1e-15 && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
    }
    if (leave < 0) break;  // unbounded column cannot happen in phase I; bail out

    // Pivot on (leave, enter).
    const double piv = T[static_cast<size_t>(leave) * ncols + enter];
    for (int j = 0; j < ncols; ++j) T[static_cast<size_t>(leave) * ncols + j] /= piv;
    b[leave] /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave) continue;
      const double f = T[static_cast<size_t>(i) * ncols + enter];
      if (f == 0.0) continue;
      for (int j = 0; j < ncols; ++j)
        T[static_cast<size_t>(i) * ncols + j] -= f * T[static_cast<size_t>(leave) * ncols + j];
      b[i] -= f * b[leave];
      if (b[i] < 0.0 && b[i] > -1e-12) b[i] = 0.0;
    }
    {
      const double f = z[enter];
      for (int j = 0; j < ncols; ++j) z[j] -= f * T[static_cast<size_t>(leave) * ncols + j];
      obj -= f * b[leave];
      if (obj < 0.0) obj = 0.0;
    }
    basis[leave] = enter;
  }

  // Recompute the artificial mass directly; the incremental obj can drift.
  double residual = 0.0;
  for (int i = 0; i < m; ++i)
    if (basis[i] >= ncols_base) residual += b[i];
  if (residual > tol) return std::nullopt;

  std::vector<double> x(n, 0.0);
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = b[i];
  return x;
}

}  // namespace sanction
