#pragma once

// Exact integer linear algebra: Smith normal form and finitely generated
// abelian groups.
//
// Convention used throughout: a relation matrix has one column per generator
// and one row per relation. Its cokernel is Z^cols modulo the row span.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace charvar {

using Integer = mpz_class;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const std::vector<Integer>& entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  bool is_zero() const;
  IntMatrix transpose() const;

  /// Appends a row; `row.size()` must equal cols().
  void append_row(const std::vector<Integer>& row);

  std::string to_string() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

/// Fraction-free (Bareiss) determinant of a square matrix.
Integer determinant(const IntMatrix& m);

/// M = U * D * V with U, V unimodular and D diagonal with d_i >= 0,
/// d_i | d_{i+1}. The inverses of U and V are kept alongside since the
/// elimination produces them for free.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  IntMatrix U_inv;
  IntMatrix V_inv;
  std::size_t rank = 0;

  /// The min(rows, cols) diagonal entries of D.
  std::vector<Integer> diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Rows form a basis of the integer right kernel {x in Z^cols : m x = 0}.
IntMatrix kernel_basis(const IntMatrix& m);

/// Z^r + Z/d_1 + ... + Z/d_t in invariant-factor form (d_i >= 2, d_i | d_{i+1}).
/// The representation is canonical, so equality is structural.
class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;

  /// Throws InvalidParameter unless `torsion` is already an invariant-factor chain.
  FgAbelianGroup(std::size_t free_rank, std::vector<Integer> torsion);

  /// Canonicalizes an arbitrary direct sum of cyclic groups. An order of 0
  /// contributes a copy of Z, an order of 1 contributes nothing.
  static FgAbelianGroup from_cyclic(std::size_t free_rank, const std::vector<Integer>& orders);

  static FgAbelianGroup trivial() { return {}; }
  static FgAbelianGroup free(std::size_t rank) { return FgAbelianGroup(rank, {}); }
  static FgAbelianGroup cyclic(const Integer& order);

  std::size_t free_rank() const noexcept { return free_rank_; }
  const std::vector<Integer>& torsion() const noexcept { return torsion_; }

  bool is_trivial() const noexcept { return free_rank_ == 0 && torsion_.empty(); }
  bool is_finite() const noexcept { return free_rank_ == 0; }
  bool is_torsion_free() const noexcept { return torsion_.empty(); }

  /// Cardinality; nullopt when the group is infinite.
  std::optional<Integer> order() const;

  FgAbelianGroup torsion_subgroup() const { return FgAbelianGroup(0, torsion_); }
  FgAbelianGroup direct_sum(const FgAbelianGroup& other) const;
  /// Direct sum of `copies` copies of this group.
  FgAbelianGroup power(std::size_t copies) const;

  /// "0", "Z", "Z^2 + Z/2 + Z/6", ...
  std::string to_string() const;
  /// Inverse of to_string().
  static FgAbelianGroup parse(const std::string& text);

  friend bool operator==(const FgAbelianGroup&, const FgAbelianGroup&) = default;

 private:
  std::size_t free_rank_ = 0;
  std::vector<Integer> torsion_;
};

/// Z^cols modulo the row span of `relations`.
FgAbelianGroup cokernel(const IntMatrix& relations);

/// Hom(a, b), computed factor by factor.
FgAbelianGroup hom_group(const FgAbelianGroup& a, const FgAbelianGroup& b);

}  // namespace charvar
