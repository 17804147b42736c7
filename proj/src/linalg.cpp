#include "combalg/linalg.hpp"

#include <stdexcept>

namespace combalg {

namespace {

/// row -= factor * other
void axpy(SparseRow& row, const Rational& factor, const SparseRow& other) {
  for (const auto& [col, value] : other) {
    auto it = row.find(col);
    if (it == row.end()) {
      row.emplace(col, -factor * value);
    } else {
      it->second -= factor * value;
      if (sgn(it->second) == 0) row.erase(it);
    }
  }
}

}  // namespace

bool EchelonForm::add_row(SparseRow row) {
  for (auto it = row.begin(); it != row.end();) {
    if (it->first >= ncols_) throw std::out_of_range("row entry beyond column count");
    if (sgn(it->second) == 0)
      it = row.erase(it);
    else
      ++it;
  }
  for (const auto& [pivot, prow] : rows_) {
    auto it = row.find(pivot);
    if (it == row.end()) continue;
    Rational factor = it->second;
    axpy(row, factor, prow);
  }
  if (row.empty()) return false;
  const std::size_t pivot = row.begin()->first;
  const Rational lead = row.begin()->second;
  for (auto& [col, value] : row) value /= lead;
  for (auto& [other_pivot, prow] : rows_) {
    auto it = prow.find(pivot);
    if (it == prow.end()) continue;
    Rational factor = it->second;
    axpy(prow, factor, row);
  }
  rows_.emplace(pivot, std::move(row));
  return true;
}

std::vector<std::vector<Rational>> EchelonForm::nullspace() const {
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < ncols_; ++free) {
    if (rows_.count(free)) continue;
    std::vector<Rational> v(ncols_);
    v[free] = 1;
    for (const auto& [pivot, prow] : rows_) {
      auto it = prow.find(free);
      if (it != prow.end()) v[pivot] = -it->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rational>> EchelonForm::solve_augmented(std::size_t rhs) const {
  if (rhs + 1 != ncols_) throw std::invalid_argument("right-hand side must be the last column");
  if (rows_.count(rhs)) return std::nullopt;
  std::vector<Rational> x(ncols_);
  for (const auto& [pivot, prow] : rows_) {
    auto it = prow.find(rhs);
    if (it != prow.end()) x[pivot] = it->second;
  }
  return x;
}

}  // namespace combalg
