#pragma once

// Seeded random matrices for the Monte-Carlo suites.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "charvar/matrixrep.hpp"

namespace charvar {

using Rng = std::mt19937_64;

/// Haar-distributed element of U(n) (QR of a complex Ginibre matrix with the
/// phases of R's diagonal absorbed).
Matrix haar_unitary(int n, Rng& rng);

/// Haar element of SU(n): a Haar unitary divided by an n-th root of its determinant.
Matrix haar_special_unitary(int n, Rng& rng);

/// Diagonal entries uniform on the circle; for SU the last entry fixes det = 1.
std::vector<Complex> random_circle_diagonal(int n, bool special, Rng& rng);

struct CommutingSample {
  MatrixRep rep;
  Matrix conjugator;                          // shared Q
  std::vector<std::vector<Complex>> diagonals; // D_i, one per matrix
};

/// count commuting matrices Q D_i Q* in U(n) or SU(n).
CommutingSample random_commuting_sample(int n, std::size_t count, Target target, Rng& rng);

/// `samples` independent tuples, each a representation of free_abelian(count).
/// Deterministic in the seed. Errors: InvalidParameter.
std::vector<MatrixRep> random_commuting_tuple(int n, std::size_t count, Target target, std::uint64_t seed,
                                              std::size_t samples = 1);

/// Commuting pair in PU(2) = SO(3) of obstruction class 0 or 1, with random
/// scalar phases on the representatives.
MatrixRep random_so3_commuting_pair(int obstruction, Rng& rng);

/// Haar tuple in U(n), a representation of the free group.
MatrixRep random_free_rep(std::size_t rank, int n, Rng& rng);

/// Genus-g surface representation in U(n) with every b_i = I.
MatrixRep random_surface_rep(std::size_t genus, int n, Rng& rng);

}  // namespace charvar
