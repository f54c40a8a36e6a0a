#include "charvar/matrixrep.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <numbers>
#include <random>
#include <sstream>

#include "charvar/errors.hpp"

namespace charvar {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string fmt_double(double v) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << v;
  return out.str();
}

// Principal argument in (-pi, pi].
double principal_arg(Complex z) {
  const double a = std::arg(z);
  return a <= -std::numbers::pi ? std::numbers::pi : a;
}

double angle_in_0_2pi(Complex z) {
  double a = std::arg(z);
  if (a < 0) a += kTwoPi;
  if (a >= kTwoPi) a -= kTwoPi;
  return a;
}

// exp(2 pi i j / n), with j reduced mod n first.
Complex root_of_unity(long j, int n) {
  const long r = ((j % n) + n) % n;
  return std::polar(1.0, kTwoPi * static_cast<double>(r) / n);
}

}  // namespace

// ---------------------------------------------------------------------------
// Targets and membership

Target Target::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string kind;
  in >> kind;
  if (kind == "SO3") return {TargetKind::PU, 2};
  int n = 0;
  if (!(in >> n) || n < 1) {
    throw Error(ErrorKind::InvalidParameter, "target must look like 'U 2', 'SU 3' or 'PU 2'");
  }
  std::string rest;
  if (in >> rest) throw Error(ErrorKind::InvalidParameter, "trailing tokens in target '" + std::string(text) + "'");
  if (kind == "U") return {TargetKind::U, n};
  if (kind == "SU") return {TargetKind::SU, n};
  if (kind == "PU" || kind == "PSU") return {TargetKind::PU, n};
  throw Error(ErrorKind::InvalidParameter, "unknown matrix target '" + kind + "'");
}

std::string Target::to_string() const {
  switch (kind) {
    case TargetKind::U: return "U " + std::to_string(n);
    case TargetKind::SU: return "SU " + std::to_string(n);
    case TargetKind::PU: return "PU " + std::to_string(n);
  }
  return "?";
}

double unitarity_defect(const Matrix& m) {
  return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).norm();
}

double distance_to_unit_scalar(const Matrix& m, Complex* scalar) {
  const Complex mean = m.trace() / static_cast<double>(m.rows());
  const Complex zeta = std::abs(mean) > 0 ? mean / std::abs(mean) : Complex(1.0, 0.0);
  if (scalar) *scalar = zeta;
  return (m - zeta * Matrix::Identity(m.rows(), m.cols())).norm();
}

MatrixRep::MatrixRep(Target target, std::vector<Matrix> matrices, double tolerance)
    : target_(target), matrices_(std::move(matrices)), tolerance_(tolerance) {
  if (!(tolerance_ > 0)) throw Error(ErrorKind::InvalidParameter, "tolerance must be positive");
  const int n = target_.n;
  for (std::size_t i = 0; i < matrices_.size(); ++i) {
    const Matrix& m = matrices_[i];
    if (m.rows() != n || m.cols() != n) {
      throw Error(ErrorKind::ShapeMismatch, "matrix " + std::to_string(i) + " is not " + std::to_string(n) +
                                                "x" + std::to_string(n));
    }
    const double defect = unitarity_defect(m);
    if (defect > tolerance_ * n) {
      throw Error(ErrorKind::NotUnitary, "matrix " + std::to_string(i) + " has ||M*M - I|| = " + fmt_double(defect));
    }
    if (target_.kind == TargetKind::SU) {
      const double det_err = std::abs(m.determinant() - Complex(1.0, 0.0));
      if (det_err > tolerance_) {
        throw Error(ErrorKind::NotDetOne, "matrix " + std::to_string(i) + " has |det - 1| = " + fmt_double(det_err));
      }
    }
  }
}

Matrix evaluate_word(const Word& w, std::span<const Matrix> generators) {
  if (generators.empty()) {
    if (!w.empty()) throw Error(ErrorKind::ShapeMismatch, "word evaluated without generators");
    return Matrix::Identity(1, 1);
  }
  const auto n = generators.front().rows();
  Matrix out = Matrix::Identity(n, n);
  for (const auto& l : w.letters()) {
    if (l.generator >= generators.size()) throw Error(ErrorKind::ShapeMismatch, "word uses a missing generator");
    if (l.exponent > 0) {
      out = out * generators[l.generator];
    } else {
      out = out * generators[l.generator].adjoint();
    }
  }
  return out;
}

RelatorCheck check_representation(const MatrixRep& rep, const Presentation& p) {
  if (rep.size() != p.generator_count()) {
    throw Error(ErrorKind::ShapeMismatch, std::to_string(rep.size()) + " matrices for " +
                                              std::to_string(p.generator_count()) + " generators");
  }
  RelatorCheck out;
  out.ok = true;
  const double bound = rep.tolerance() * rep.n();
  for (const auto& rel : p.relators()) {
    const Matrix w = evaluate_word(rel, rep.matrices());
    const double r = rep.target().kind == TargetKind::PU
                         ? distance_to_unit_scalar(w)
                         : (w - Matrix::Identity(rep.n(), rep.n())).norm();
    out.residuals.push_back(r);
    if (!(r <= bound)) out.ok = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lifting to R x SU(n)

LiftedRep::LiftedRep(int n, std::vector<double> base_angles, std::vector<Matrix> su_base, std::vector<long> sheets)
    : n_(n), base_angles_(std::move(base_angles)), su_base_(std::move(su_base)), sheets_(std::move(sheets)) {
  if (n_ < 1) throw Error(ErrorKind::InvalidParameter, "lift dimension must be positive");
  if (su_base_.size() != base_angles_.size() || sheets_.size() != base_angles_.size()) {
    throw Error(ErrorKind::ShapeMismatch, "lift components have different lengths");
  }
}

double LiftedRep::real_part(std::size_t i) const {
  return base_angles_.at(i) + kTwoPi * static_cast<double>(sheets_.at(i)) / n_;
}

Matrix LiftedRep::su_part(std::size_t i) const { return su_base_.at(i) * root_of_unity(-sheets_.at(i), n_); }

std::vector<double> LiftedRep::real_parts() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = real_part(i);
  return out;
}

std::vector<Matrix> LiftedRep::su_parts() const {
  std::vector<Matrix> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(su_part(i));
  return out;
}

std::vector<Matrix> LiftedRep::project() const {
  std::vector<Matrix> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(std::polar(1.0, real_part(i)) * su_part(i));
  return out;
}

LiftedRep lift_to_universal_cover(const MatrixRep& rep, const Presentation& p) {
  if (rep.target().kind == TargetKind::PU) {
    throw Error(ErrorKind::InvalidParameter, "lifting to R x SU(n) needs a U(n) or SU(n) representation");
  }
  if (!is_exponent_canceling(p).flag) {
    throw Error(ErrorKind::NotExponentCanceling, "some relator has a nonzero exponent sum");
  }
  const RelatorCheck check = check_representation(rep, p);
  if (!check.ok) {
    const double worst = *std::max_element(check.residuals.begin(), check.residuals.end());
    throw Error(ErrorKind::NotARepresentation, "relator residual " + fmt_double(worst));
  }
  const int n = rep.n();
  std::vector<double> angles;
  std::vector<Matrix> su;
  for (const Matrix& g : rep.matrices()) {
    const double x = principal_arg(g.determinant()) / n;
    angles.push_back(x);
    su.push_back(std::polar(1.0, -x) * g);
  }
  return LiftedRep(n, std::move(angles), std::move(su), std::vector<long>(rep.size(), 0));
}

double LiftDiagnostics::max_relator_residual() const {
  double m = 0;
  for (double r : real_residuals) m = std::max(m, r);
  for (double r : su_residuals) m = std::max(m, r);
  return m;
}

LiftDiagnostics lift_relator_residuals(const LiftedRep& lift, const Presentation& p) {
  if (lift.size() != p.generator_count()) throw Error(ErrorKind::ShapeMismatch, "lift and presentation differ in size");
  LiftDiagnostics d;
  const auto su = lift.su_parts();
  const auto real = lift.real_parts();
  for (const auto& rel : p.relators()) {
    double sum = 0;
    for (const auto& l : rel.letters()) sum += l.exponent * real[l.generator];
    d.real_residuals.push_back(std::abs(sum));
    d.su_residuals.push_back((evaluate_word(rel, su) - Matrix::Identity(lift.n(), lift.n())).norm());
  }
  return d;
}

LiftDiagnostics lift_diagnostics(const LiftedRep& lift, const MatrixRep& rep, const Presentation& p) {
  LiftDiagnostics d = lift_relator_residuals(lift, p);
  const auto projected = lift.project();
  for (std::size_t i = 0; i < projected.size(); ++i) {
    d.roundtrip = std::max(d.roundtrip, (projected[i] - rep.matrices()[i]).norm());
  }
  return d;
}

LiftedRep deck_act(std::span<const long> phi, const LiftedRep& lift, const Presentation& p) {
  if (phi.size() != lift.size() || lift.size() != p.generator_count()) {
    throw Error(ErrorKind::ShapeMismatch, "deck vector, lift and presentation differ in size");
  }
  for (std::size_t r = 0; r < p.relators().size(); ++r) {
    long net = 0;
    for (const auto& l : p.relators()[r].letters()) net += l.exponent * phi[l.generator];
    if (net != 0) {
      throw Error(ErrorKind::NotAHomomorphism, "relator " + std::to_string(r) + " has net deck sum " + std::to_string(net));
    }
  }
  std::vector<long> sheets = lift.sheets();
  for (std::size_t i = 0; i < sheets.size(); ++i) sheets[i] += phi[i];
  return LiftedRep(lift.n(), lift.base_angles(), lift.su_base(), std::move(sheets));
}

// ---------------------------------------------------------------------------
// Obstruction class

ObstructionClass obstruction_class(const MatrixRep& rep, std::size_t genus, std::span<const int> branches) {
  const int n = rep.n();
  if (n < 2) throw Error(ErrorKind::InvalidParameter, "obstruction class needs n >= 2");
  if (genus < 1) throw Error(ErrorKind::InvalidParameter, "genus must be at least 1");
  if (rep.size() != 2 * genus) {
    throw Error(ErrorKind::ShapeMismatch, "genus " + std::to_string(genus) + " needs " + std::to_string(2 * genus) +
                                              " matrices, got " + std::to_string(rep.size()));
  }
  if (!branches.empty() && branches.size() != rep.size()) {
    throw Error(ErrorKind::ShapeMismatch, "one branch choice per generator");
  }
  std::vector<Matrix> lifts;
  lifts.reserve(rep.size());
  for (std::size_t i = 0; i < rep.size(); ++i) {
    const Matrix& m = rep.matrices()[i];
    const int branch = branches.empty() ? 0 : branches[i];
    const Complex root = std::polar(1.0, principal_arg(m.determinant()) / n) * root_of_unity(branch, n);
    lifts.push_back(m / root);
  }
  Matrix product = Matrix::Identity(n, n);
  for (std::size_t i = 0; i < genus; ++i) {
    const Matrix& a = lifts[2 * i];
    const Matrix& b = lifts[2 * i + 1];
    product = product * a * b * a.adjoint() * b.adjoint();
  }
  const double bound = rep.tolerance() * n;
  Complex zeta;
  const double scalar_residual = distance_to_unit_scalar(product, &zeta);
  if (!(scalar_residual <= bound)) {
    throw Error(ErrorKind::NotARepresentation,
                "commutator product is not scalar (residual " + fmt_double(scalar_residual) + ")");
  }
  const double turns = angle_in_0_2pi(zeta) * n / kTwoPi;
  const long k = static_cast<long>(std::llround(turns)) % n;
  const double residual = (product - root_of_unity(k, n) * Matrix::Identity(n, n)).norm();
  if (!(residual <= bound)) {
    throw Error(ErrorKind::AmbiguousClass, "scalar is " + fmt_double(residual) + " away from the nearest root of unity");
  }
  return ObstructionClass{k, n, residual};
}

// ---------------------------------------------------------------------------
// Simultaneous eigenbasis

namespace {

double off_diagonal_norm(const Matrix& m) {
  Matrix off = m;
  off.diagonal().setZero();
  return off.norm();
}

// Unitary whose columns diagonalize the normal matrix m.
Matrix normal_eigenbasis(const Matrix& m) {
  Eigen::ComplexSchur<Matrix> schur(m);
  return schur.matrixU();
}

struct Attempt {
  Matrix basis;
  double residual;
};

Attempt residual_of(const Matrix& q, const Matrix& a, const Matrix& b) {
  const double ra = off_diagonal_norm(q.adjoint() * a * q);
  const double rb = off_diagonal_norm(q.adjoint() * b * q);
  return {q, std::max(ra, rb)};
}

Attempt refine_by_clusters(const Matrix& a, const Matrix& b, double cluster_threshold) {
  const auto n = a.rows();
  const Matrix u = normal_eigenbasis(a);
  const Matrix t = u.adjoint() * a * u;

  // Union-find over eigenvalues closer than the threshold (chord ~ angle).
  std::vector<Eigen::Index> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Eigen::Index i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (std::abs(t(i, i) - t(j, j)) <= cluster_threshold) parent[find(i)] = find(j);

  Matrix q(n, n);
  Eigen::Index col = 0;
  std::vector<bool> done(n, false);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index root = find(i);
    if (done[root]) continue;
    done[root] = true;
    std::vector<Eigen::Index> members;
    for (Eigen::Index j = 0; j < n; ++j)
      if (find(j) == root) members.push_back(j);
    Matrix block(n, static_cast<Eigen::Index>(members.size()));
    for (std::size_t c = 0; c < members.size(); ++c) block.col(static_cast<Eigen::Index>(c)) = u.col(members[c]);
    if (members.size() == 1) {
      q.col(col++) = block.col(0);
      continue;
    }
    const Matrix restricted = block.adjoint() * b * block;
    const Matrix w = normal_eigenbasis(restricted);
    const Matrix rotated = block * w;
    for (Eigen::Index c = 0; c < rotated.cols(); ++c) q.col(col++) = rotated.col(c);
  }
  return residual_of(q, a, b);
}

}  // namespace

SimultaneousEigenbasis simultaneous_eigenvalues(const Matrix& a, const Matrix& b, double tol, double cluster_threshold) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw Error(ErrorKind::ShapeMismatch, "simultaneous diagonalization needs two square matrices of one size");
  }
  const double comm = (a * b - b * a).norm();
  if (comm > tol) throw Error(ErrorKind::NotCommuting, "||AB - BA|| = " + fmt_double(comm));

  const double accept = 10.0 * cluster_threshold * static_cast<double>(a.rows());
  Attempt best = refine_by_clusters(a, b, cluster_threshold);
  bool ill = false;
  if (best.residual > accept) {
    std::mt19937_64 gen(0x5eed);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    const Complex c = std::polar(1.0, angle(gen)) * std::sqrt(2.0);
    Attempt fallback = residual_of(normal_eigenbasis(a + c * b), a, b);
    if (fallback.residual < best.residual) best = fallback;
    ill = best.residual > accept;
  }

  SimultaneousEigenbasis out;
  const Matrix da = best.basis.adjoint() * a * best.basis;
  const Matrix db = best.basis.adjoint() * b * best.basis;
  std::vector<Eigen::Index> order(a.rows());
  std::iota(order.begin(), order.end(), 0);
  std::vector<EigenPair> raw;
  for (Eigen::Index i = 0; i < a.rows(); ++i) raw.push_back({da(i, i), db(i, i)});
  std::sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    const double ax = angle_in_0_2pi(raw[x].a), ay = angle_in_0_2pi(raw[y].a);
    if (ax != ay) return ax < ay;
    return angle_in_0_2pi(raw[x].b) < angle_in_0_2pi(raw[y].b);
  });
  out.basis.resize(a.rows(), a.cols());
  for (std::size_t i = 0; i < order.size(); ++i) {
    out.pairs.push_back(raw[order[i]]);
    out.basis.col(static_cast<Eigen::Index>(i)) = best.basis.col(order[i]);
  }
  out.residual = best.residual;
  out.ill_conditioned = ill;
  return out;
}

double multiset_distance(std::span<const EigenPair> x, std::span<const EigenPair> y) {
  if (x.size() != y.size()) return std::numeric_limits<double>::infinity();
  auto cost = [&](std::size_t i, std::size_t j) { return std::abs(x[i].a - y[j].a) + std::abs(x[i].b - y[j].b); };
  if (x.size() <= 7) {
    std::vector<std::size_t> perm(x.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
      double worst = 0;
      for (std::size_t i = 0; i < perm.size(); ++i) worst = std::max(worst, cost(i, perm[i]));
      best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return x.empty() ? 0.0 : best;
  }
  // Greedy matching for larger multisets.
  std::vector<bool> used(y.size(), false);
  double worst = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::size_t pick = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < y.size(); ++j)
      if (!used[j] && cost(i, j) < best) {
        best = cost(i, j);
        pick = j;
      }
    used[pick] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// SU(2) trace coordinates

TraceCoordinates su2_commuting_invariant(const Matrix& a, const Matrix& b, double tol) {
  for (const Matrix* m : {&a, &b}) {
    if (m->rows() != 2 || m->cols() != 2) throw Error(ErrorKind::ShapeMismatch, "SU(2) elements are 2x2");
    const double defect = unitarity_defect(*m);
    if (defect > 2 * tol) throw Error(ErrorKind::NotUnitary, "||M*M - I|| = " + fmt_double(defect));
    const double det_err = std::abs(m->determinant() - Complex(1.0, 0.0));
    if (det_err > tol) throw Error(ErrorKind::NotDetOne, "|det - 1| = " + fmt_double(det_err));
  }
  const Complex tx = a.trace();
  const Complex ty = b.trace();
  const Complex tz = (a * b).trace();
  TraceCoordinates c;
  c.x = tx.real();
  c.y = ty.real();
  c.z = tz.real();
  c.kappa = c.x * c.x + c.y * c.y + c.z * c.z - c.x * c.y * c.z - 4.0;
  c.max_imag = std::max({std::abs(tx.imag()), std::abs(ty.imag()), std::abs(tz.imag())});
  return c;
}

}  // namespace charvar
