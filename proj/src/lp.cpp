#include "cachegame/lp.hpp"

#include <stdexcept>

namespace cachegame {

// With B = A + shift > 0, the row player's problem is
//   maximize sum(w)  s.t.  B^T w <= 1, w >= 0,
// giving value(B) = 1/sum(w) and row mix w * value(B). The slack duals of
// the optimal tableau give the column mix the same way.
MatrixGameSolution solve_matrix_game(const Matrix& payoff) {
  if (payoff.empty() || payoff[0].empty()) throw std::invalid_argument("empty payoff matrix");
  const std::size_t rows = payoff.size();
  const std::size_t cols = payoff[0].size();
  for (const auto& r : payoff) {
    if (r.size() != cols) throw std::invalid_argument("ragged payoff matrix");
  }

  mpq_class lowest = payoff[0][0].raw();
  for (const auto& r : payoff) {
    for (const auto& v : r) {
      if (v.raw() < lowest) lowest = v.raw();
    }
  }
  const mpq_class shift = mpq_class(1) - lowest;

  // Constraint i <-> game column i; variables 0..rows-1 are w, then slacks.
  const std::size_t nvars = rows + cols;
  const std::size_t rhs = nvars;
  std::vector<std::vector<mpq_class>> t(cols + 1, std::vector<mpq_class>(nvars + 1));
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows; ++r) t[c][r] = payoff[r][c].raw() + shift;
    t[c][rows + c] = 1;
    t[c][rhs] = 1;
  }
  auto& obj = t[cols];
  for (std::size_t r = 0; r < rows; ++r) obj[r] = -1;

  std::vector<std::size_t> basis(cols);
  for (std::size_t c = 0; c < cols; ++c) basis[c] = rows + c;

  MatrixGameSolution out;
  bool bland = false;
  while (true) {
    // Entering variable: most negative reduced cost, or the lowest index
    // with negative reduced cost while in a degenerate stretch.
    std::size_t enter = nvars;
    for (std::size_t j = 0; j < nvars; ++j) {
      if (sgn(obj[j]) >= 0) continue;
      if (enter == nvars || (!bland && obj[j] < obj[enter])) enter = j;
      if (bland) break;
    }
    if (enter == nvars) break;

    std::size_t leave = cols;
    mpq_class best_ratio;
    for (std::size_t i = 0; i < cols; ++i) {
      if (sgn(t[i][enter]) <= 0) continue;
      mpq_class ratio = t[i][rhs] / t[i][enter];
      if (leave == cols || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == cols) throw std::logic_error("unbounded matrix-game LP");
    bland = sgn(best_ratio) == 0;

    const mpq_class pivot = t[leave][enter];
    for (auto& v : t[leave]) v /= pivot;
    for (std::size_t i = 0; i <= cols; ++i) {
      if (i == leave || sgn(t[i][enter]) == 0) continue;
      const mpq_class factor = t[i][enter];
      for (std::size_t j = 0; j <= nvars; ++j) {
        if (sgn(t[leave][j]) != 0) t[i][j] -= factor * t[leave][j];
      }
    }
    basis[leave] = enter;
    ++out.pivots;
  }

  const mpq_class total = obj[rhs];
  const mpq_class game_value = 1 / total;
  out.value = Rational(mpq_class(game_value - shift));
  out.row_mix.assign(rows, Rational(0));
  for (std::size_t i = 0; i < cols; ++i) {
    if (basis[i] < rows) out.row_mix[basis[i]] = Rational(mpq_class(t[i][rhs] * game_value));
  }
  out.col_mix.assign(cols, Rational(0));
  for (std::size_t c = 0; c < cols; ++c) out.col_mix[c] = Rational(mpq_class(obj[rows + c] * game_value));
  return out;
}

Rational row_guarantee(const Matrix& payoff, const std::vector<Rational>& row_mix) {
  Rational best;
  for (std::size_t c = 0; c < payoff[0].size(); ++c) {
    Rational v;
    for (std::size_t r = 0; r < payoff.size(); ++r) v += row_mix[r] * payoff[r][c];
    if (c == 0 || v > best) best = v;
  }
  return best;
}

Rational col_guarantee(const Matrix& payoff, const std::vector<Rational>& col_mix) {
  Rational worst;
  for (std::size_t r = 0; r < payoff.size(); ++r) {
    Rational v;
    for (std::size_t c = 0; c < payoff[r].size(); ++c) v += col_mix[c] * payoff[r][c];
    if (r == 0 || v < worst) worst = v;
  }
  return worst;
}

}  // namespace cachegame

namespace cachegame {

// Same LP as solve_matrix_game with a fixed shift of 1. Variables 0..rows-1
// are w; variable rows + c is the slack of constraint (column) c.
IncrementalMatrixGame::IncrementalMatrixGame(std::size_t rows) : rows_(rows), obj_(rows, mpq_class(-1)) {
  if (rows == 0) throw std::invalid_argument("empty payoff matrix");
}

void IncrementalMatrixGame::pivot(std::size_t row, std::size_t col) {
  const mpq_class p = t_[row][col];
  for (auto& v : t_[row]) {
    if (sgn(v) != 0) v /= p;
  }
  rhs_[row] /= p;
  const auto& pr = t_[row];
  auto eliminate = [&](std::vector<mpq_class>& r, mpq_class& b) {
    if (sgn(r[col]) == 0) return;
    const mpq_class f = r[col];
    for (std::size_t j = 0; j < pr.size(); ++j) {
      if (sgn(pr[j]) != 0) r[j] -= f * pr[j];
    }
    b -= f * rhs_[row];
  };
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (i != row) eliminate(t_[i], rhs_[i]);
  }
  eliminate(obj_, obj_value_);
  basis_[row] = col;
  ++pivots_;
}

void IncrementalMatrixGame::add_column(const std::vector<Rational>& payoffs) {
  if (payoffs.size() != rows_) throw std::invalid_argument("column length does not match the row count");
  const std::size_t slack = rows_ + basis_.size();
  for (auto& r : t_) r.emplace_back(0);
  obj_.emplace_back(0);

  std::vector<mpq_class> fresh(slack + 1);
  for (std::size_t r = 0; r < rows_; ++r) fresh[r] = payoffs[r].raw() + 1;
  fresh[slack] = 1;
  mpq_class b = 1;
  for (std::size_t i = 0; i < t_.size(); ++i) {
    const mpq_class f = fresh[basis_[i]];
    if (sgn(f) == 0) continue;
    for (std::size_t j = 0; j < fresh.size(); ++j) {
      if (sgn(t_[i][j]) != 0) fresh[j] -= f * t_[i][j];
    }
    b -= f * rhs_[i];
  }
  t_.push_back(std::move(fresh));
  rhs_.push_back(b);
  basis_.push_back(slack);

  // The objective row stays dual feasible; dual simplex restores primal
  // feasibility. Lowest-index choices after a degenerate pivot.
  bool bland = false;
  while (true) {
    std::size_t leave = t_.size();
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (sgn(rhs_[i]) >= 0) continue;
      if (leave == t_.size() || (bland ? basis_[i] < basis_[leave] : rhs_[i] < rhs_[leave])) leave = i;
    }
    if (leave == t_.size()) break;
    const auto& lr = t_[leave];
    std::size_t enter = lr.size();
    mpq_class best;
    for (std::size_t j = 0; j < lr.size(); ++j) {
      if (sgn(lr[j]) >= 0) continue;
      mpq_class ratio = obj_[j] / -lr[j];
      if (enter == lr.size() || ratio < best) {
        enter = j;
        best = ratio;
      }
    }
    if (enter == lr.size()) throw std::logic_error("infeasible matrix-game LP");
    bland = sgn(best) == 0;
    pivot(leave, enter);
  }

  // Only the first column leaves negative reduced costs behind.
  bland = false;
  while (true) {
    std::size_t enter = obj_.size();
    for (std::size_t j = 0; j < obj_.size(); ++j) {
      if (sgn(obj_[j]) >= 0) continue;
      if (enter == obj_.size() || (!bland && obj_[j] < obj_[enter])) enter = j;
      if (bland) break;
    }
    if (enter == obj_.size()) break;
    std::size_t leave = t_.size();
    mpq_class best;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (sgn(t_[i][enter]) <= 0) continue;
      mpq_class ratio = rhs_[i] / t_[i][enter];
      if (leave == t_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == t_.size()) throw std::logic_error("unbounded matrix-game LP");
    bland = sgn(best) == 0;
    pivot(leave, enter);
  }
}

MatrixGameSolution IncrementalMatrixGame::solution() const {
  if (basis_.empty()) throw std::logic_error("no columns");
  MatrixGameSolution out;
  const mpq_class game_value = 1 / obj_value_;
  out.value = Rational(mpq_class(game_value - 1));
  out.row_mix.assign(rows_, Rational(0));
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (basis_[i] < rows_) out.row_mix[basis_[i]] = Rational(mpq_class(rhs_[i] * game_value));
  }
  out.col_mix.assign(basis_.size(), Rational(0));
  for (std::size_t c = 0; c < basis_.size(); ++c) out.col_mix[c] = Rational(mpq_class(obj_[rows_ + c] * game_value));
  out.pivots = pivots_;
  return out;
}

}  // namespace cachegame
