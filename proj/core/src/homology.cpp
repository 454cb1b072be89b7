#include "kml/homology.hpp"

#include <algorithm>
#include <cstdlib>

#include "kml/error.hpp"

namespace kml {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw InternalError("integer elimination overflow");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_sub_overflow(a, b, &r)) throw InternalError("integer elimination overflow");
  return r;
}

// column_j -= f * column_k, in both the reduced matrix and the transform.
void axpy(IntMatrix& m, std::size_t j, std::size_t k, std::int64_t f) {
  for (auto& row : m) row[j] = checked_sub(row[j], checked_mul(f, row[k]));
}

void swap_columns(IntMatrix& m, std::size_t j, std::size_t k) {
  for (auto& row : m) std::swap(row[j], row[k]);
}

void negate_column(IntMatrix& m, std::size_t j) {
  for (auto& row : m) row[j] = -row[j];
}

}  // namespace

ColumnEchelon::ColumnEchelon(IntMatrix a) : a_(std::move(a)), l_(a_) {
  const std::size_t m = l_.size();
  const std::size_t n = m ? l_[0].size() : 0;
  u_.assign(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t k = 0; k < n; ++k) u_[k][k] = 1;
  std::size_t col = 0;
  for (std::size_t r = 0; r < m && col < n; ++r) {
    // Euclid across columns col..n-1 of row r.
    while (true) {
      std::size_t best = n;
      for (std::size_t j = col; j < n; ++j) {
        if (l_[r][j] != 0 && (best == n || std::llabs(l_[r][j]) < std::llabs(l_[r][best]))) best = j;
      }
      if (best == n) break;
      if (best != col) {
        swap_columns(l_, best, col);
        swap_columns(u_, best, col);
      }
      bool done = true;
      for (std::size_t j = col + 1; j < n; ++j) {
        if (l_[r][j] == 0) continue;
        const std::int64_t f = l_[r][j] / l_[r][col];
        axpy(l_, j, col, f);
        axpy(u_, j, col, f);
        if (l_[r][j] != 0) done = false;
      }
      if (done) break;
    }
    if (l_[r][col] == 0) continue;
    if (l_[r][col] < 0) {
      negate_column(l_, col);
      negate_column(u_, col);
    }
    pivot_row_.push_back(r);
    ++col;
  }
}

bool ColumnEchelon::unit_pivots() const {
  for (std::size_t k = 0; k < pivot_row_.size(); ++k) {
    if (l_[pivot_row_[k]][k] != 1) return false;
  }
  return true;
}

std::vector<std::int64_t> ColumnEchelon::residual(const std::vector<std::int64_t>& b) const {
  if (b.size() != rows()) throw InvalidArgument("ColumnEchelon: right-hand side has the wrong length");
  std::vector<std::int64_t> y(rank(), 0);
  std::vector<std::int64_t> out;
  std::size_t k = 0;
  for (std::size_t r = 0; r < rows(); ++r) {
    std::int64_t rest = b[r];
    for (std::size_t c = 0; c < k; ++c) rest = checked_sub(rest, checked_mul(l_[r][c], y[c]));
    if (k < rank() && pivot_row_[k] == r) {
      y[k] = rest / l_[r][k];
      ++k;
    } else {
      out.push_back(rest);
    }
  }
  return out;
}

std::optional<std::vector<std::int64_t>> ColumnEchelon::solve(const std::vector<std::int64_t>& b) const {
  if (b.size() != rows()) throw InvalidArgument("ColumnEchelon: right-hand side has the wrong length");
  std::vector<std::int64_t> y(rank(), 0);
  std::size_t k = 0;
  for (std::size_t r = 0; r < rows(); ++r) {
    std::int64_t rest = b[r];
    for (std::size_t c = 0; c < k; ++c) rest = checked_sub(rest, checked_mul(l_[r][c], y[c]));
    if (k < rank() && pivot_row_[k] == r) {
      if (rest % l_[r][k] != 0) return std::nullopt;
      y[k] = rest / l_[r][k];
      ++k;
    } else if (rest != 0) {
      return std::nullopt;
    }
  }
  const std::size_t n = u_.size();
  std::vector<std::int64_t> x(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < rank(); ++c) x[i] += checked_mul(u_[i][c], y[c]);
  }
  return x;
}

}  // namespace kml
