#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "combalg/rational.hpp"

namespace combalg {

/// Sparse row: column index -> nonzero entry.
using SparseRow = std::map<std::size_t, Rational>;

/// Incrementally maintained reduced row echelon form over the rationals.
class EchelonForm {
 public:
  explicit EchelonForm(std::size_t ncols) : ncols_(ncols) {}

  std::size_t ncols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }

  /// Adds a row; returns false when it was dependent on the rows already present.
  bool add_row(SparseRow row);

  /// Basis of {v : A v = 0}, one vector per free column in increasing column order.
  std::vector<std::vector<Rational>> nullspace() const;

  /// Rows read sum_j a_j x_j = b with b stored in the last column `rhs`. Returns the
  /// solution with free variables zero (entry `rhs` unused), or nothing when inconsistent.
  std::optional<std::vector<Rational>> solve_augmented(std::size_t rhs) const;

  /// Pivot column -> normalized row (pivot entry 1, zero in every other pivot column).
  const std::map<std::size_t, SparseRow>& rows() const { return rows_; }

 private:
  std::size_t ncols_;
  std::map<std::size_t, SparseRow> rows_;
};

}  // namespace combalg
