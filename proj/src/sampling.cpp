#include "charvar/sampling.hpp"

#include <cmath>
#include <numbers>

#include "charvar/errors.hpp"

namespace charvar {

namespace {

Complex circle_point(Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, angle(rng));
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

}  // namespace

Matrix haar_unitary(int n, Rng& rng) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "matrix size must be positive");
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= std::abs(d) > 0 ? d / std::abs(d) : Complex(1.0, 0.0);
  }
  return q;
}

Matrix haar_special_unitary(int n, Rng& rng) {
  Matrix u = haar_unitary(n, rng);
  const Complex det = u.determinant();
  return u / std::polar(1.0, std::arg(det) / n);
}

std::vector<Complex> random_circle_diagonal(int n, bool special, Rng& rng) {
  std::vector<Complex> d(static_cast<std::size_t>(n));
  Complex product(1.0, 0.0);
  for (int i = 0; i < n; ++i) {
    d[i] = circle_point(rng);
    if (i + 1 < n) product *= d[i];
  }
  if (special) d.back() = std::conj(product) / std::abs(product);
  return d;
}

CommutingSample random_commuting_sample(int n, std::size_t count, Target target, Rng& rng) {
  if (n < 1 || count < 1) throw Error(ErrorKind::InvalidParameter, "n and count must be at least 1");
  if (target.kind == TargetKind::PU || target.n != n) {
    throw Error(ErrorKind::InvalidParameter, "commuting samples target U(n) or SU(n) of the requested size");
  }
  const bool special = target.kind == TargetKind::SU;
  const Matrix q = haar_unitary(n, rng);
  std::vector<Matrix> mats;
  std::vector<std::vector<Complex>> diags;
  for (std::size_t i = 0; i < count; ++i) {
    auto d = random_circle_diagonal(n, special, rng);
    Eigen::VectorXcd v(n);
    for (int j = 0; j < n; ++j) v(j) = d[j];
    mats.push_back(q * v.asDiagonal() * q.adjoint());
    diags.push_back(std::move(d));
  }
  return CommutingSample{MatrixRep(target, std::move(mats)), q, std::move(diags)};
}

std::vector<MatrixRep> random_commuting_tuple(int n, std::size_t count, Target target, std::uint64_t seed,
                                              std::size_t samples) {
  Rng rng(seed);
  std::vector<MatrixRep> out;
  out.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) out.push_back(random_commuting_sample(n, count, target, rng).rep);
  return out;
}

MatrixRep random_so3_commuting_pair(int obstruction, Rng& rng) {
  if (obstruction != 0 && obstruction != 1) throw Error(ErrorKind::InvalidParameter, "SO(3) class is 0 or 1");
  const Matrix q = haar_unitary(2, rng);
  Matrix a, b;
  if (obstruction == 0) {
    auto da = random_circle_diagonal(2, true, rng);
    auto db = random_circle_diagonal(2, true, rng);
    a = Matrix::Zero(2, 2);
    b = Matrix::Zero(2, 2);
    a(0, 0) = da[0], a(1, 1) = da[1];
    b(0, 0) = db[0], b(1, 1) = db[1];
  } else {
    const Complex i(0, 1);
    a = i * pauli_x();
    b = i * pauli_y();
  }
  a = circle_point(rng) * (q * a * q.adjoint());
  b = circle_point(rng) * (q * b * q.adjoint());
  return MatrixRep(Target{TargetKind::PU, 2}, {a, b});
}

MatrixRep random_free_rep(std::size_t rank, int n, Rng& rng) {
  std::vector<Matrix> mats;
  for (std::size_t i = 0; i < rank; ++i) mats.push_back(haar_unitary(n, rng));
  return MatrixRep(Target{TargetKind::U, n}, std::move(mats));
}

MatrixRep random_surface_rep(std::size_t genus, int n, Rng& rng) {
  if (genus < 1) throw Error(ErrorKind::InvalidParameter, "genus must be at least 1");
  std::vector<Matrix> mats;
  for (std::size_t i = 0; i < genus; ++i) {
    mats.push_back(haar_unitary(n, rng));
    mats.push_back(Matrix::Identity(n, n));
  }
  return MatrixRep(Target{TargetKind::U, n}, std::move(mats));
}

}  // namespace charvar
