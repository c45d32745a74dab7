#pragma once

#include <cstddef>
#include <vector>

#include "cachegame/rational.hpp"

namespace cachegame {

/// Row-major payoff matrix; the row player minimizes, the column player
/// maximizes.
using Matrix = std::vector<std::vector<Rational>>;

struct MatrixGameSolution {
  Rational value;
  std::vector<Rational> row_mix;
  std::vector<Rational> col_mix;
  int pivots = 0;
};

/// Exact minimax solution of a zero-sum matrix game by rational simplex.
/// Throws std::invalid_argument on an empty or ragged matrix.
MatrixGameSolution solve_matrix_game(const Matrix& payoff);

/// Matrix game grown one column at a time, for payoffs in [0, 1]. Each new
/// column is a new constraint on the row player's LP; the previous optimal
/// tableau is kept and repaired by dual simplex.
class IncrementalMatrixGame {
 public:
  explicit IncrementalMatrixGame(std::size_t rows);

  /// Adds a column (one payoff per row) and re-optimizes.
  void add_column(const std::vector<Rational>& payoffs);
  MatrixGameSolution solution() const;
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return basis_.size(); }
  int pivots() const { return pivots_; }

 private:
  void pivot(std::size_t row, std::size_t col);
  std::size_t rows_;
  std::vector<std::vector<mpq_class>> t_;
  std::vector<mpq_class> rhs_;
  std::vector<mpq_class> obj_;
  mpq_class obj_value_;
  std::vector<std::size_t> basis_;
  int pivots_ = 0;
};

/// max over columns of (row_mix^T A): the best the column player can get.
Rational row_guarantee(const Matrix& payoff, const std::vector<Rational>& row_mix);
/// min over rows of (A col_mix): the least the column player secures.
Rational col_guarantee(const Matrix& payoff, const std::vector<Rational>& col_mix);

}  // namespace cachegame
