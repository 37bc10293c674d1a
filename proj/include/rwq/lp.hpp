// Copyright 2026 The rwq Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace rwq::lp {

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

/// A linear program in the form
///   minimize c'x  subject to  a_i'x (<=|>=|=) b_i,  x >= 0.
class LinearProgram {
 public:
  struct Row {
    std::vector<std::pair<int, double>> terms;
    Sense sense;
    double rhs;
  };

  int AddVariable(double objective = 0.0) {
    objective_.push_back(objective);
    return static_cast<int>(objective_.size()) - 1;
  }

  void SetObjective(int var, double coefficient) { objective_[var] = coefficient; }

  void AddConstraint(std::vector<std::pair<int, double>> terms, Sense sense,
                     double rhs) {
    rows_.push_back({std::move(terms), sense, rhs});
  }

  int num_variables() const { return static_cast<int>(objective_.size()); }
  int num_constraints() const { return static_cast<int>(rows_.size()); }
  const std::vector<double>& objective() const { return objective_; }
  const std::vector<Row>& rows() const { return rows_; }

  double Evaluate(const std::vector<double>& x) const {
    double total = 0;
    for (int j = 0; j < num_variables(); ++j) total += objective_[j] * x[j];
    return total;
  }

  /// Largest absolute violation of any constraint or bound by `x`.
  double MaxViolation(const std::vector<double>& x) const {
    double worst = 0;
    for (double v : x) worst = std::max(worst, -v);
    for (const Row& row : rows_) {
      double lhs = 0;
      for (auto [j, a] : row.terms) lhs += a * x[j];
      double gap = lhs - row.rhs;
      switch (row.sense) {
        case Sense::kLessEqual: worst = std::max(worst, gap); break;
        case Sense::kGreaterEqual: worst = std::max(worst, -gap); break;
        case Sense::kEqual: worst = std::max(worst, std::abs(gap)); break;
      }
    }
    return worst;
  }

 private:
  std::vector<double> objective_;
  std::vector<Row> rows_;
};

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct Solution {
  Status status = Status::kIterationLimit;
  std::vector<double> values;
  double objective = 0;
  int iterations = 0;
};

struct SimplexOptions {
  double pivot_tolerance = 1e-9;
  double optimality_tolerance = 1e-10;
  double feasibility_tolerance = 1e-9;
  int max_iterations = 100000;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_switch = 50;
};

namespace internal {

// Dense two-phase primal simplex on a full tableau. Columns are laid out as
// [structural | slack/surplus | artificial | rhs].
class Tableau {
 public:
  Tableau(const LinearProgram& lp, const SimplexOptions& options)
      : lp_(lp), opt_(options) {
    m_ = lp.num_constraints();
    n_ = lp.num_variables();
    int slacks = 0, artificials = 0;
    for (const auto& row : lp.rows()) {
      Sense s = Normalized(row);
      if (s != Sense::kEqual) ++slacks;
      if (s != Sense::kLessEqual) ++artificials;
    }
    first_slack_ = n_;
    first_artificial_ = n_ + slacks;
    cols_ = n_ + slacks + artificials;
    width_ = cols_ + 1;
    data_.assign(static_cast<std::size_t>(m_ + 1) * width_, 0.0);
    basis_.assign(m_, -1);

    int slack = first_slack_, artificial = first_artificial_;
    for (int i = 0; i < m_; ++i) {
      const auto& row = lp.rows()[i];
      double sign = row.rhs < 0 ? -1.0 : 1.0;
      for (auto [j, a] : row.terms) at(i, j) += sign * a;
      at(i, cols_) = sign * row.rhs;
      Sense s = Normalized(row);
      if (s == Sense::kLessEqual) {
        at(i, slack) = 1.0;
        basis_[i] = slack++;
      } else {
        if (s == Sense::kGreaterEqual) at(i, slack++) = -1.0;
        at(i, artificial) = 1.0;
        basis_[i] = artificial++;
      }
    }
  }

  Solution Solve() {
    Solution out;
    // Phase one: minimize the sum of artificials.
    std::vector<double> phase_one(cols_, 0.0);
    for (int j = first_artificial_; j < cols_; ++j) phase_one[j] = 1.0;
    LoadCosts(phase_one);
    Status status = Iterate(/*allow_artificial=*/true, out.iterations);
    if (status == Status::kIterationLimit) {
      out.status = status;
      return out;
    }
    if (-at(m_, cols_) > opt_.feasibility_tolerance * std::max(1.0, RhsScale())) {
      out.status = Status::kInfeasible;
      return out;
    }
    DriveOutArtificials();

    std::vector<double> costs(cols_, 0.0);
    for (int j = 0; j < n_; ++j) costs[j] = lp_.objective()[j];
    LoadCosts(costs);
    status = Iterate(/*allow_artificial=*/false, out.iterations);
    out.status = status;
    if (status != Status::kOptimal) return out;

    out.values = RefinedPrimal();
    out.objective = lp_.Evaluate(out.values);
    return out;
  }

 private:
  static Sense Normalized(const LinearProgram::Row& row) {
    if (row.rhs >= 0 || row.sense == Sense::kEqual) return row.sense;
    return row.sense == Sense::kLessEqual ? Sense::kGreaterEqual : Sense::kLessEqual;
  }

  double& at(int i, int j) { return data_[static_cast<std::size_t>(i) * width_ + j]; }
  double at(int i, int j) const { return data_[static_cast<std::size_t>(i) * width_ + j]; }

  double RhsScale() const {
    double scale = 0;
    for (int i = 0; i < m_; ++i) scale = std::max(scale, std::abs(at(i, cols_)));
    return scale;
  }

  // Objective row holds reduced costs d_j = c_j - c_B' B^-1 A_j and -z.
  void LoadCosts(const std::vector<double>& costs) {
    for (int j = 0; j <= cols_; ++j) at(m_, j) = j < cols_ ? costs[j] : 0.0;
    for (int i = 0; i < m_; ++i) {
      double cb = costs[basis_[i]];
      if (cb == 0) continue;
      for (int j = 0; j <= cols_; ++j) at(m_, j) -= cb * at(i, j);
    }
  }

  Status Iterate(bool allow_artificial, int& iterations) {
    int limit = allow_artificial ? cols_ : first_artificial_;
    int degenerate_run = 0;
    while (true) {
      if (iterations >= opt_.max_iterations) return Status::kIterationLimit;
      bool bland = degenerate_run >= opt_.degenerate_switch;
      int enter = -1;
      double best = -opt_.optimality_tolerance;
      for (int j = 0; j < limit; ++j) {
        double d = at(m_, j);
        if (d < best) {
          enter = j;
          if (bland) break;
          best = d;
        }
      }
      if (enter < 0) return Status::kOptimal;

      int leave = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        double a = at(i, enter);
        if (a <= opt_.pivot_tolerance) continue;
        double r = at(i, cols_) / a;
        if (r < ratio - 1e-12 ||
            (r <= ratio + 1e-12 && leave >= 0 && basis_[i] < basis_[leave])) {
          ratio = r;
          leave = i;
        }
      }
      if (leave < 0) return Status::kUnbounded;
      degenerate_run = ratio <= 1e-12 ? degenerate_run + 1 : 0;
      Pivot(leave, enter);
      ++iterations;
    }
  }

  void Pivot(int row, int col) {
    double inv = 1.0 / at(row, col);
    for (int j = 0; j <= cols_; ++j) at(row, j) *= inv;
    at(row, col) = 1.0;
    for (int i = 0; i <= m_; ++i) {
      if (i == row) continue;
      double factor = at(i, col);
      if (factor == 0) continue;
      for (int j = 0; j <= cols_; ++j) at(i, j) -= factor * at(row, j);
      at(i, col) = 0.0;
    }
    basis_[row] = col;
  }

  // Artificials left basic at level zero are pivoted onto any structural or
  // slack column with a usable entry; rows without one are redundant and
  // keep their artificial pinned at zero.
  void DriveOutArtificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      int best = -1;
      double magnitude = opt_.pivot_tolerance;
      for (int j = 0; j < first_artificial_; ++j) {
        if (std::abs(at(i, j)) > magnitude) {
          magnitude = std::abs(at(i, j));
          best = j;
        }
      }
      if (best >= 0) Pivot(i, best);
    }
  }

  // Recomputes the basic solution from the original data by solving
  // B x_B = b with partial pivoting, removing drift accumulated in the
  // tableau.
  std::vector<double> RefinedPrimal() const {
    std::vector<double> b(m_), matrix(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const auto& row = lp_.rows()[i];
      double sign = row.rhs < 0 ? -1.0 : 1.0;
      b[i] = sign * row.rhs;
      std::vector<double> dense(cols_, 0.0);
      for (auto [j, a] : row.terms) dense[j] += sign * a;
      // Reconstruct slack/artificial entries of the original row.
      RestoreAuxiliary(i, dense);
      for (int k = 0; k < m_; ++k) matrix[static_cast<std::size_t>(i) * m_ + k] = dense[basis_[k]];
    }
    std::vector<double> xb = b;
    std::vector<int> perm(m_);
    for (int i = 0; i < m_; ++i) perm[i] = i;
    bool singular = false;
    for (int c = 0; c < m_ && !singular; ++c) {
      int p = c;
      for (int r = c + 1; r < m_; ++r) {
        if (std::abs(matrix[static_cast<std::size_t>(r) * m_ + c]) >
            std::abs(matrix[static_cast<std::size_t>(p) * m_ + c])) p = r;
      }
      double pivot = matrix[static_cast<std::size_t>(p) * m_ + c];
      if (std::abs(pivot) < 1e-14) {
        singular = true;
        break;
      }
      if (p != c) {
        for (int k = 0; k < m_; ++k) {
          std::swap(matrix[static_cast<std::size_t>(p) * m_ + k],
                    matrix[static_cast<std::size_t>(c) * m_ + k]);
        }
        std::swap(xb[p], xb[c]);
      }
      for (int r = c + 1; r < m_; ++r) {
        double f = matrix[static_cast<std::size_t>(r) * m_ + c] / pivot;
        if (f == 0) continue;
        for (int k = c; k < m_; ++k) {
          matrix[static_cast<std::size_t>(r) * m_ + k] -= f * matrix[static_cast<std::size_t>(c) * m_ + k];
        }
        xb[r] -= f * xb[c];
      }
    }
    if (!singular) {
      for (int c = m_ - 1; c >= 0; --c) {
        double sum = xb[c];
        for (int k = c + 1; k < m_; ++k) sum -= matrix[static_cast<std::size_t>(c) * m_ + k] * xb[k];
        xb[c] = sum / matrix[static_cast<std::size_t>(c) * m_ + c];
      }
    } else {
      for (int i = 0; i < m_; ++i) xb[i] = at(i, cols_);
    }
    std::vector<double> x(n_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) x[basis_[i]] = std::max(0.0, xb[i]);
    }
    return x;
  }

  void RestoreAuxiliary(int row_index, std::vector<double>& dense) const {
    int slack = first_slack_, artificial = first_artificial_;
    for (int i = 0; i < m_; ++i) {
      Sense s = Normalized(lp_.rows()[i]);
      int my_slack = -1, my_artificial = -1;
      if (s == Sense::kLessEqual) {
        my_slack = slack++;
      } else {
        if (s == Sense::kGreaterEqual) my_slack = slack++;
        my_artificial = artificial++;
      }
      if (i != row_index) continue;
      if (my_slack >= 0) dense[my_slack] = s == Sense::kLessEqual ? 1.0 : -1.0;
      if (my_artificial >= 0) dense[my_artificial] = 1.0;
      return;
    }
  }

  const LinearProgram& lp_;
  SimplexOptions opt_;
  int m_ = 0, n_ = 0, cols_ = 0, width_ = 0;
  int first_slack_ = 0, first_artificial_ = 0;
  std::vector<double> data_;
  std::vector<int> basis_;
};

}  // namespace internal

/// Solves `lp` with a dense two-phase primal simplex. Dantzig pricing, with
/// a fall back to Bland's rule after a run of degenerate pivots.
inline Solution Solve(const LinearProgram& lp, const SimplexOptions& options = {}) {
  return internal::Tableau(lp, options).Solve();
}

}  // namespace rwq::lp
