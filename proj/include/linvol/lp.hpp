#pragma once

// Exact rational linear programming for small dense problems.
//
// Two-phase tableau simplex with Bland's anti-cycling rule. Every strict
// inequality in this library is handled by the max-slack reformulation:
// maximise an extra variable eps subject to `lhs >= rhs + eps`, then test
// the optimum for eps > 0. Exactness matters because the feasibility
// boundary is exactly where floating-point answers become ambiguous.

#include <cstddef>
#include <optional>
#include <vector>

#include "numeric.hpp"

namespace linvol::lp {

enum class Sense { LessEq, Equal, GreaterEq };

struct Constraint {
  std::vector<Rational> coeffs;
  Sense sense = Sense::LessEq;
  Rational rhs = 0;
};

struct Problem {
  std::size_t numVars = 0;
  std::vector<bool> freeVar;  // empty means all variables are >= 0
  std::vector<Constraint> rows;
  std::vector<Rational> objective;  // maximised

  explicit Problem(std::size_t n = 0) : numVars(n), freeVar(n, false), objective(n, 0) {}

  void add(std::vector<Rational> coeffs, Sense sense, Rational rhs) {
    coeffs.resize(numVars, 0);
    rows.push_back({std::move(coeffs), sense, std::move(rhs)});
  }
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  Rational value = 0;
  std::vector<Rational> x;
};

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), t_(rows + 1, std::vector<Rational>(cols + 1, 0)), basis_(rows, 0) {}

  Rational& at(std::size_t r, std::size_t c) { return t_[r][c]; }
  Rational& rhs(std::size_t r) { return t_[r][n_]; }
  Rational& cost(std::size_t c) { return t_[m_][c]; }
  Rational& objectiveValue() { return t_[m_][n_]; }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    Rational p = t_[pr][pc];
    for (auto& v : t_[pr]) v /= p;
    for (std::size_t r = 0; r <= m_; ++r) {
      if (r == pr || t_[r][pc] == 0) continue;
      Rational f = t_[r][pc];
      for (std::size_t c = 0; c <= n_; ++c)
        if (t_[pr][c] != 0) t_[r][c] -= f * t_[pr][c];
    }
    basis_[pr] = pc;
  }

  /// Runs simplex iterations on the current cost row (reduced costs stored as
  /// `cost(c)`, maximisation: enter while some reduced cost is > 0).
  /// `allowed[c]` masks columns that may enter. Returns false if unbounded.
  bool optimise(const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = n_;
      for (std::size_t c = 0; c < n_; ++c)
        if (allowed[c] && cost(c) > 0) {
          enter = c;
          break;
        }
      if (enter == n_) return true;
      std::size_t leave = m_;
      Rational best;
      for (std::size_t r = 0; r < m_; ++r) {
        if (at(r, enter) <= 0) continue;
        Rational ratio = rhs(r) / at(r, enter);
        if (leave == m_ || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  void dropRow(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --m_;
  }

 private:
  std::size_t m_, n_;
  std::vector<std::vector<Rational>> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Maximises `objective . x` subject to the problem's rows.
inline Solution maximize(const Problem& problem) {
  const std::size_t n = problem.numVars;
  std::vector<bool> isFree = problem.freeVar;
  isFree.resize(n, false);

  // Column layout: original (split into +/- for free variables), then one
  // slack/surplus per inequality row, then one artificial per row.
  std::vector<std::size_t> plusCol(n), minusCol(n, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    plusCol[j] = cols++;
    if (isFree[j]) minusCol[j] = cols++;
  }
  const std::size_t structural = cols;
  const std::size_t m = problem.rows.size();
  std::vector<std::size_t> slackCol(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i)
    if (problem.rows[i].sense != Sense::Equal) slackCol[i] = cols++;
  const std::size_t firstArtificial = cols;
  cols += m;

  detail::Tableau tab(m, cols);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = problem.rows[i];
    int flip = row.rhs < 0 ? -1 : 1;
    for (std::size_t j = 0; j < n; ++j) {
      Rational a = j < row.coeffs.size() ? row.coeffs[j] : Rational(0);
      tab.at(i, plusCol[j]) = flip * a;
      if (isFree[j]) tab.at(i, minusCol[j]) = -flip * a;
    }
    if (slackCol[i] != SIZE_MAX)
      tab.at(i, slackCol[i]) = (row.sense == Sense::LessEq ? 1 : -1) * flip;
    tab.rhs(i) = flip * row.rhs;
    tab.at(i, firstArtificial + i) = 1;
    tab.basis()[i] = firstArtificial + i;
  }

  // Phase 1: maximise -(sum of artificials). Reduced costs in canonical form
  // are the column sums of the constraint rows.
  for (std::size_t c = 0; c < firstArtificial; ++c) {
    Rational s = 0;
    for (std::size_t i = 0; i < m; ++i) s += tab.at(i, c);
    tab.cost(c) = s;
  }
  {
    Rational s = 0;
    for (std::size_t i = 0; i < m; ++i) s += tab.rhs(i);
    tab.objectiveValue() = s;
  }
  std::vector<bool> allowed(cols, true);
  tab.optimise(allowed);
  if (tab.objectiveValue() != 0) return {Status::Infeasible, 0, {}};

  // Drive artificials out of the basis; drop redundant rows.
  for (std::size_t r = 0; r < tab.rows();) {
    if (tab.basis()[r] < firstArtificial) {
      ++r;
      continue;
    }
    std::size_t enter = SIZE_MAX;
    for (std::size_t c = 0; c < firstArtificial; ++c)
      if (tab.at(r, c) != 0) {
        enter = c;
        break;
      }
    if (enter == SIZE_MAX) {
      tab.dropRow(r);
    } else {
      tab.pivot(r, enter);
      ++r;
    }
  }

  // Phase 2 with the real objective.
  std::vector<Rational> c(cols, 0);
  for (std::size_t j = 0; j < n; ++j) {
    c[plusCol[j]] = problem.objective[j];
    if (isFree[j]) c[minusCol[j]] = -problem.objective[j];
  }
  for (std::size_t col = 0; col < cols; ++col) {
    Rational reduced = c[col];
    for (std::size_t r = 0; r < tab.rows(); ++r) reduced -= c[tab.basis()[r]] * tab.at(r, col);
    tab.cost(col) = reduced;
  }
  {
    Rational z = 0;
    for (std::size_t r = 0; r < tab.rows(); ++r) z += c[tab.basis()[r]] * tab.rhs(r);
    tab.objectiveValue() = -z;
  }
  for (std::size_t col = firstArtificial; col < cols; ++col) allowed[col] = false;
  if (!tab.optimise(allowed)) return {Status::Unbounded, 0, {}};

  std::vector<Rational> colValue(cols, 0);
  for (std::size_t r = 0; r < tab.rows(); ++r) colValue[tab.basis()[r]] = tab.rhs(r);
  Solution sol;
  sol.status = Status::Optimal;
  sol.x.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    sol.x[j] = colValue[plusCol[j]];
    if (isFree[j]) sol.x[j] -= colValue[minusCol[j]];
  }
  sol.value = 0;
  for (std::size_t j = 0; j < n; ++j) sol.value += problem.objective[j] * sol.x[j];
  (void)structural;
  return sol;
}

/// Result of a strict-feasibility test by slack maximisation.
struct StrictResult {
  bool feasible = false;
  Rational slack = 0;  // optimal eps (capped at 1)
  std::vector<Rational> x;
};

/// Decides whether {x : strict rows hold with `> rhs`, weak rows hold} is
/// non-empty. `strict` rows are read as `coeffs . x >= rhs + eps`; `weak`
/// rows keep their own sense. Free/nonnegative flags come from `base`.
/// eps is capped at 1 so homogeneous systems stay bounded.
inline StrictResult strictFeasible(const Problem& base, const std::vector<Constraint>& strict) {
  const std::size_t n = base.numVars;
  Problem p(n + 1);
  for (std::size_t j = 0; j < n; ++j) p.freeVar[j] = j < base.freeVar.size() && base.freeVar[j];
  p.freeVar[n] = true;
  for (const auto& row : base.rows) {
    auto coeffs = row.coeffs;
    coeffs.resize(n + 1, 0);
    p.rows.push_back({coeffs, row.sense, row.rhs});
  }
  for (const auto& row : strict) {
    auto coeffs = row.coeffs;
    coeffs.resize(n, 0);
    coeffs.push_back(-1);
    p.rows.push_back({coeffs, Sense::GreaterEq, row.rhs});
  }
  std::vector<Rational> cap(n + 1, 0);
  cap[n] = 1;
  p.rows.push_back({cap, Sense::LessEq, 1});
  p.objective.assign(n + 1, 0);
  p.objective[n] = 1;

  Solution s = maximize(p);
  StrictResult r;
  if (s.status != Status::Optimal) return r;
  r.slack = s.x[n];
  r.feasible = r.slack > 0;
  r.x.assign(s.x.begin(), s.x.begin() + static_cast<std::ptrdiff_t>(n));
  return r;
}

}  // namespace linvol::lp
