#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace kml {

using IntMatrix = std::vector<std::vector<std::int64_t>>;  ///< row-major

/// Column echelon form L = A U with U unimodular: row by row, the entries to
/// the right of each new pivot are cleared by Euclidean column operations,
/// and pivots are made positive.
class ColumnEchelon {
 public:
  explicit ColumnEchelon(IntMatrix a);

  std::size_t rows() const { return l_.size(); }
  std::size_t rank() const { return pivot_row_.size(); }
  const IntMatrix& reduced() const { return l_; }
  /// Whether every pivot is 1 (the cokernel of A is torsion-free).
  bool unit_pivots() const;

  /// Some integer x with A x = b, if one exists.
  std::optional<std::vector<std::int64_t>> solve(const std::vector<std::int64_t>& b) const;
  /// Residual of b on the non-pivot rows after forward substitution; linear
  /// in b when unit_pivots(), and zero exactly when A x = b is solvable then.
  std::vector<std::int64_t> residual(const std::vector<std::int64_t>& b) const;

 private:
  IntMatrix a_;
  IntMatrix l_;
  IntMatrix u_;
  std::vector<std::size_t> pivot_row_;  ///< row of the pivot in column k
};

}  // namespace kml
