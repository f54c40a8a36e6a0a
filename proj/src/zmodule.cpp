#include "charvar/zmodule.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <utility>

#include "charvar/errors.hpp"

namespace charvar {

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw Error(ErrorKind::InvalidParameter, "ragged matrix literal");
    }
    for (long v : row) entries_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<Integer>& entries) {
  IntMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Integer& v) { return v == 0; });
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

void IntMatrix::append_row(const std::vector<Integer>& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) {
    throw Error(ErrorKind::InvalidParameter, "row length does not match column count");
  }
  entries_.insert(entries_.end(), row.begin(), row.end());
  ++rows_;
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    out << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) out << (c ? ", " : "") << (*this)(r, c).get_str();
    out << ']';
  }
  out << ']';
  return out.str();
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::ShapeMismatch, "matrix product dimension mismatch");
  }
  IntMatrix p(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) p(i, j) += a(i, k) * b(k, j);
    }
  return p;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "determinant of a non-square matrix");
  }
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(swap_row, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Smith normal form
//
// Elimination on a working copy A with the invariant M = U * A * V and
// A = U_inv * M * V_inv. A row operation A <- E A updates U <- U E^-1 and
// U_inv <- E U_inv; column operations mirror this on V.

namespace {

class SmithEliminator {
 public:
  explicit SmithEliminator(const IntMatrix& m)
      : a_(m),
        u_(IntMatrix::identity(m.rows())),
        u_inv_(IntMatrix::identity(m.rows())),
        v_(IntMatrix::identity(m.cols())),
        v_inv_(IntMatrix::identity(m.cols())) {}

  SmithForm run() {
    const std::size_t limit = std::min(a_.rows(), a_.cols());
    std::size_t t = 0;
    for (; t < limit; ++t) {
      if (!move_smallest_to(t)) break;
      reduce_pivot(t);
      if (a_(t, t) < 0) negate_row(t);
    }
    return SmithForm{std::move(u_), std::move(a_), std::move(v_), std::move(u_inv_),
                     std::move(v_inv_), t};
  }

 private:
  // Moves the nonzero entry of least magnitude in A[t.., t..] onto (t, t).
  // Returns false if the block is zero.
  bool move_smallest_to(std::size_t t) {
    std::size_t best_r = 0, best_c = 0;
    bool found = false;
    for (std::size_t r = t; r < a_.rows(); ++r)
      for (std::size_t c = t; c < a_.cols(); ++c) {
        const Integer& v = a_(r, c);
        if (v == 0) continue;
        if (!found || abs(v) < abs(a_(best_r, best_c))) {
          best_r = r;
          best_c = c;
          found = true;
        }
      }
    if (!found) return false;
    if (best_r != t) swap_rows(t, best_r);
    if (best_c != t) swap_cols(t, best_c);
    return true;
  }

  void reduce_pivot(std::size_t t) {
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < a_.rows(); ++i) {
        if (a_(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a_(i, t).get_mpz_t(), a_(t, t).get_mpz_t());
        if (q != 0) add_row_multiple(i, t, -q);
        if (a_(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < a_.cols(); ++j) {
        if (a_(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a_(t, j).get_mpz_t(), a_(t, t).get_mpz_t());
        if (q != 0) add_col_multiple(j, t, -q);
        if (a_(t, j) != 0) clean = false;
      }
      if (!clean) {
        move_smallest_in_cross(t);
        continue;
      }
      // Row and column are clear; enforce divisibility of the remainder.
      bool divisible = true;
      for (std::size_t i = t + 1; i < a_.rows() && divisible; ++i)
        for (std::size_t j = t + 1; j < a_.cols(); ++j) {
          if (!mpz_divisible_p(a_(i, j).get_mpz_t(), a_(t, t).get_mpz_t())) {
            add_row_multiple(t, i, Integer(1));
            divisible = false;
            break;
          }
        }
      if (divisible) return;
    }
  }

  // Pivot row/column still has nonzero remainders: bring the smallest of
  // them onto the diagonal.
  void move_smallest_in_cross(std::size_t t) {
    std::size_t best_r = t, best_c = t;
    for (std::size_t i = t + 1; i < a_.rows(); ++i)
      if (a_(i, t) != 0 && abs(a_(i, t)) < abs(a_(best_r, best_c))) {
        best_r = i;
        best_c = t;
      }
    for (std::size_t j = t + 1; j < a_.cols(); ++j)
      if (a_(t, j) != 0 && abs(a_(t, j)) < abs(a_(best_r, best_c))) {
        best_r = t;
        best_c = j;
      }
    if (best_r != t) swap_rows(t, best_r);
    if (best_c != t) swap_cols(t, best_c);
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < a_.cols(); ++c) std::swap(a_(i, c), a_(j, c));
    for (std::size_t r = 0; r < u_.rows(); ++r) std::swap(u_(r, i), u_(r, j));
    for (std::size_t c = 0; c < u_inv_.cols(); ++c) std::swap(u_inv_(i, c), u_inv_(j, c));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < a_.rows(); ++r) std::swap(a_(r, i), a_(r, j));
    for (std::size_t c = 0; c < v_.cols(); ++c) std::swap(v_(i, c), v_(j, c));
    for (std::size_t r = 0; r < v_inv_.rows(); ++r) std::swap(v_inv_(r, i), v_inv_(r, j));
  }

  // row_i += k * row_j
  void add_row_multiple(std::size_t i, std::size_t j, const Integer& k) {
    for (std::size_t c = 0; c < a_.cols(); ++c) a_(i, c) += k * a_(j, c);
    for (std::size_t r = 0; r < u_.rows(); ++r) u_(r, j) -= k * u_(r, i);
    for (std::size_t c = 0; c < u_inv_.cols(); ++c) u_inv_(i, c) += k * u_inv_(j, c);
  }

  // col_j += k * col_i
  void add_col_multiple(std::size_t j, std::size_t i, const Integer& k) {
    for (std::size_t r = 0; r < a_.rows(); ++r) a_(r, j) += k * a_(r, i);
    for (std::size_t c = 0; c < v_.cols(); ++c) v_(i, c) -= k * v_(j, c);
    for (std::size_t r = 0; r < v_inv_.rows(); ++r) v_inv_(r, j) += k * v_inv_(r, i);
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a_.cols(); ++c) a_(i, c) = -a_(i, c);
    for (std::size_t r = 0; r < u_.rows(); ++r) u_(r, i) = -u_(r, i);
    for (std::size_t c = 0; c < u_inv_.cols(); ++c) u_inv_(i, c) = -u_inv_(i, c);
  }

  IntMatrix a_;
  IntMatrix u_;
  IntMatrix u_inv_;
  IntMatrix v_;
  IntMatrix v_inv_;
};

}  // namespace

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> out;
  const std::size_t n = std::min(D.rows(), D.cols());
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(D(i, i));
  return out;
}

SmithForm smith_normal_form(const IntMatrix& m) { return SmithEliminator(m).run(); }

IntMatrix kernel_basis(const IntMatrix& m) {
  // m = U D V, so m x = 0 iff D (V x) = 0 iff (V x)_j = 0 for j < rank.
  // The kernel is spanned by the trailing columns of V^-1.
  const SmithForm snf = smith_normal_form(m);
  IntMatrix basis(m.cols() - snf.rank, m.cols());
  for (std::size_t k = snf.rank; k < m.cols(); ++k)
    for (std::size_t c = 0; c < m.cols(); ++c) basis(k - snf.rank, c) = snf.V_inv(c, k);
  return basis;
}

// ---------------------------------------------------------------------------
// FgAbelianGroup

FgAbelianGroup::FgAbelianGroup(std::size_t free_rank, std::vector<Integer> torsion)
    : free_rank_(free_rank), torsion_(std::move(torsion)) {
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2) {
      throw Error(ErrorKind::InvalidParameter, "torsion coefficient below 2: " + torsion_[i].get_str());
    }
    if (i > 0 && !mpz_divisible_p(torsion_[i].get_mpz_t(), torsion_[i - 1].get_mpz_t())) {
      throw Error(ErrorKind::InvalidParameter, "torsion coefficients do not form a divisibility chain");
    }
  }
}

FgAbelianGroup FgAbelianGroup::from_cyclic(std::size_t free_rank, const std::vector<Integer>& orders) {
  const FgAbelianGroup rest = cokernel(IntMatrix::diagonal(orders));
  return FgAbelianGroup(free_rank + rest.free_rank_, rest.torsion_);
}

FgAbelianGroup FgAbelianGroup::cyclic(const Integer& order) { return from_cyclic(0, {order}); }

std::optional<Integer> FgAbelianGroup::order() const {
  if (free_rank_ > 0) return std::nullopt;
  Integer n = 1;
  for (const auto& d : torsion_) n *= d;
  return n;
}

FgAbelianGroup FgAbelianGroup::direct_sum(const FgAbelianGroup& other) const {
  std::vector<Integer> orders = torsion_;
  orders.insert(orders.end(), other.torsion_.begin(), other.torsion_.end());
  return from_cyclic(free_rank_ + other.free_rank_, orders);
}

FgAbelianGroup FgAbelianGroup::power(std::size_t copies) const {
  std::vector<Integer> orders;
  orders.reserve(torsion_.size() * copies);
  for (std::size_t i = 0; i < copies; ++i) orders.insert(orders.end(), torsion_.begin(), torsion_.end());
  return from_cyclic(free_rank_ * copies, orders);
}

std::string FgAbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::string out;
  if (free_rank_ == 1) out = "Z";
  if (free_rank_ > 1) out = "Z^" + std::to_string(free_rank_);
  for (const auto& d : torsion_) {
    if (!out.empty()) out += " + ";
    out += "Z/" + d.get_str();
  }
  return out;
}

FgAbelianGroup FgAbelianGroup::parse(const std::string& text) {
  std::string compact;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') compact += ch;
  if (compact == "0" || compact == "1" || compact == "trivial") return {};
  std::size_t free = 0;
  std::vector<Integer> orders;
  std::size_t pos = 0;
  while (pos <= compact.size()) {
    std::size_t end = compact.find('+', pos);
    if (end == std::string::npos) end = compact.size();
    const std::string term = compact.substr(pos, end - pos);
    if (term == "Z") {
      free += 1;
    } else if (term.rfind("Z^", 0) == 0 && term.size() > 2) {
      free += std::stoul(term.substr(2));
    } else if (term.rfind("Z/", 0) == 0 && term.size() > 2) {
      Integer d;
      if (d.set_str(term.substr(2), 10) != 0 || d < 1) {
        throw Error(ErrorKind::FormatError, "bad cyclic factor '" + term + "'");
      }
      orders.push_back(d);
    } else {
      throw Error(ErrorKind::FormatError, "bad abelian group term '" + term + "'");
    }
    pos = end + 1;
  }
  return from_cyclic(free, orders);
}

FgAbelianGroup cokernel(const IntMatrix& relations) {
  const SmithForm snf = smith_normal_form(relations);
  std::vector<Integer> torsion;
  for (const auto& d : snf.diagonal())
    if (d > 1) torsion.push_back(d);
  return FgAbelianGroup(relations.cols() - snf.rank, std::move(torsion));
}

FgAbelianGroup hom_group(const FgAbelianGroup& a, const FgAbelianGroup& b) {
  // Hom(Z, B) = B; Hom(Z/d, Z) = 0; Hom(Z/d, Z/e) = Z/gcd(d, e).
  std::size_t free = a.free_rank() * b.free_rank();
  std::vector<Integer> orders;
  for (std::size_t i = 0; i < a.free_rank(); ++i)
    orders.insert(orders.end(), b.torsion().begin(), b.torsion().end());
  for (const auto& d : a.torsion())
    for (const auto& e : b.torsion()) orders.push_back(gcd(d, e));
  return FgAbelianGroup::from_cyclic(free, orders);
}

}  // namespace charvar
