#pragma once

// Independent reference computations for the tests. Nothing here calls the
// Smith normal form or the library's group arithmetic.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "charvar/zmodule.hpp"

namespace oracle {

using charvar::IntMatrix;
using charvar::Integer;

// Cofactor expansion; only used on matrices up to 4x4.
inline Integer det_expand(const std::vector<std::vector<Integer>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Integer total = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Integer>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Integer> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    const Integer term = m[0][c] * det_expand(minor);
    total += (c % 2 == 0) ? term : Integer(-term);
  }
  return total;
}

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Determinantal divisors: d_k = gcd of all k x k minors; the invariant
/// factors are d_k / d_{k-1} while d_k != 0.
inline std::vector<Integer> invariant_factors_by_minors(const IntMatrix& m) {
  std::vector<Integer> out;
  Integer previous = 1;
  const std::size_t kmax = std::min(m.rows(), m.cols());
  for (std::size_t k = 1; k <= kmax; ++k) {
    Integer g = 0;
    for_each_subset(m.rows(), k, [&](const std::vector<std::size_t>& rs) {
      for_each_subset(m.cols(), k, [&](const std::vector<std::size_t>& cs) {
        std::vector<std::vector<Integer>> sub(k, std::vector<Integer>(k));
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b) sub[a][b] = m(rs[a], cs[b]);
        Integer d = det_expand(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      });
    });
    if (g == 0) break;
    out.push_back(g / previous);
    previous = g;
  }
  return out;
}

/// Elements of Z/m_1 x ... x Z/m_t (every m_i >= 1), as residue tuples.
inline std::vector<std::vector<long>> elements(const std::vector<long>& moduli) {
  std::vector<std::vector<long>> out{{}};
  for (long m : moduli) {
    std::vector<std::vector<long>> next;
    for (const auto& e : out)
      for (long v = 0; v < m; ++v) {
        auto f = e;
        f.push_back(v);
        next.push_back(f);
      }
    out = std::move(next);
  }
  return out;
}

/// Number of homomorphisms Z/a_1 x ... x Z/a_s -> Z/b_1 x ... x Z/b_t, counted
/// by enumerating every assignment of generator images and testing a_i x = 0.
inline long count_homs(const std::vector<long>& source, const std::vector<long>& target) {
  const auto elems = elements(target);
  std::vector<long> per_generator;
  for (long a : source) {
    long ok = 0;
    for (const auto& x : elems) {
      bool killed = true;
      for (std::size_t i = 0; i < x.size(); ++i)
        if ((a * x[i]) % target[i] != 0) killed = false;
      if (killed) ++ok;
    }
    per_generator.push_back(ok);
  }
  // Assignments are independent across generators of a direct sum.
  long total = 1;
  for (long c : per_generator) total *= c;
  return total;
}

/// Histogram order -> count of elements in Z/m_1 x ... x Z/m_t.
inline std::map<long, long> order_histogram(const std::vector<long>& moduli) {
  std::map<long, long> h;
  for (const auto& x : elements(moduli)) {
    long ord = 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const long o = moduli[i] / std::gcd(moduli[i], x[i]);
      ord = std::lcm(ord, o);
    }
    ++h[ord];
  }
  return h;
}

/// Order histogram of Z^n / rowspan(m) for a nonsingular square m with small
/// |det| = N: the lattice contains N Z^n, so the quotient is (Z/N)^n / H with
/// H the image of the rows, found by closure.
inline std::map<long, long> quotient_order_histogram(const IntMatrix& m, long big_n) {
  const std::size_t n = m.cols();
  auto encode = [&](const std::vector<long>& v) {
    long code = 0;
    for (long x : v) code = code * big_n + x;
    return code;
  };
  std::vector<std::vector<long>> gens;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<long> g(n);
    for (std::size_t c = 0; c < n; ++c) {
      Integer v = m(r, c) % big_n;
      if (v < 0) v += big_n;
      g[c] = v.get_si();
    }
    gens.push_back(g);
  }
  std::vector<std::vector<long>> h{std::vector<long>(n, 0)};
  std::map<long, bool> seen{{encode(h[0]), true}};
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (const auto& g : gens) {
      std::vector<long> s(n);
      for (std::size_t c = 0; c < n; ++c) s[c] = (h[i][c] + g[c]) % big_n;
      if (!seen[encode(s)]) {
        seen[encode(s)] = true;
        h.push_back(s);
      }
    }
  }
  std::map<long, long> hist;
  const auto all = elements(std::vector<long>(n, big_n));
  for (const auto& x : all) {
    long k = 1;
    while (true) {
      std::vector<long> y(n);
      for (std::size_t c = 0; c < n; ++c) y[c] = (k * x[c]) % big_n;
      if (seen.count(encode(y)) && seen[encode(y)]) break;
      ++k;
    }
    ++hist[k];
  }
  // Every coset was counted |H| times.
  for (auto& [k, v] : hist) v /= static_cast<long>(h.size());
  return hist;
}

using C = std::complex<double>;
using M2 = std::array<std::array<C, 2>, 2>;

inline M2 mul(const M2& a, const M2& b) {
  M2 r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return r;
}

inline M2 adj(const M2& a) { return M2{{{std::conj(a[0][0]), std::conj(a[1][0])}, {std::conj(a[0][1]), std::conj(a[1][1])}}}; }

inline M2 commutator(const M2& a, const M2& b) { return mul(mul(mul(a, b), adj(a)), adj(b)); }

}  // namespace oracle
