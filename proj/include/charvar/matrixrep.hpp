#pragma once

// Numerical representations into U(n), SU(n) and PU(n).
//
// PU(n) elements are carried as unitary representatives; two representatives
// are the same point when they differ by a scalar.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "charvar/presentation.hpp"

namespace charvar {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kDefaultTolerance = 1e-9;

enum class TargetKind { U, SU, PU };

struct Target {
  TargetKind kind = TargetKind::U;
  int n = 1;

  /// "U 2", "SU 3", "PU 2"; "SO3" is an alias of "PU 2".
  static Target parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const Target&, const Target&) = default;
};

/// ||M* M - I||_F
double unitarity_defect(const Matrix& m);

/// Frobenius distance from `m` to the nearest unit scalar matrix, and that scalar.
double distance_to_unit_scalar(const Matrix& m, Complex* scalar = nullptr);

class MatrixRep {
 public:
  /// Validates shapes and group membership: every matrix n x n with
  /// ||M*M - I||_F <= tol * n (NotUnitary), and |det - 1| <= tol for SU
  /// targets (NotDetOne).
  MatrixRep(Target target, std::vector<Matrix> matrices, double tolerance = kDefaultTolerance);

  const Target& target() const noexcept { return target_; }
  int n() const noexcept { return target_.n; }
  const std::vector<Matrix>& matrices() const noexcept { return matrices_; }
  std::size_t size() const noexcept { return matrices_.size(); }
  double tolerance() const noexcept { return tolerance_; }

 private:
  Target target_;
  std::vector<Matrix> matrices_;
  double tolerance_;
};

/// Evaluates a word on unitary matrices (inverse = adjoint).
Matrix evaluate_word(const Word& w, std::span<const Matrix> generators);

struct RelatorCheck {
  bool ok = false;
  std::vector<double> residuals;  // Frobenius distance per relator
};

/// Each relator must evaluate within tol * n of I, or of some unit scalar for
/// PU targets. Throws ShapeMismatch when the generator counts differ.
RelatorCheck check_representation(const MatrixRep& rep, const Presentation& p);

/// A point of Hom(Gamma, R x SU(n)) covering a U(n) representation under
/// (x, h) -> e^{ix} h.
///
/// Stored as the principal lift (x = Arg(det g)/n, Arg in (-pi, pi]) plus an
/// integer sheet per generator; sheet j contributes the deck element
/// (2 pi j/n, e^{-2 pi i j/n} I). Deck actions only touch the sheets.
class LiftedRep {
 public:
  LiftedRep(int n, std::vector<double> base_angles, std::vector<Matrix> su_base, std::vector<long> sheets);

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return base_angles_.size(); }
  const std::vector<long>& sheets() const noexcept { return sheets_; }
  const std::vector<double>& base_angles() const noexcept { return base_angles_; }
  const std::vector<Matrix>& su_base() const noexcept { return su_base_; }

  double real_part(std::size_t i) const;
  Matrix su_part(std::size_t i) const;
  std::vector<double> real_parts() const;
  std::vector<Matrix> su_parts() const;

  /// q(x, h) = e^{ix} h for every generator.
  std::vector<Matrix> project() const;

 private:
  int n_;
  std::vector<double> base_angles_;
  std::vector<Matrix> su_base_;
  std::vector<long> sheets_;
};

/// Constructive lift of a U(n) (or SU(n)) representation of an
/// exponent-canceling group to R x SU(n).
/// Errors: NotExponentCanceling, NotARepresentation, ShapeMismatch.
LiftedRep lift_to_universal_cover(const MatrixRep& rep, const Presentation& p);

struct LiftDiagnostics {
  std::vector<double> real_residuals;  // |net real part| per relator
  std::vector<double> su_residuals;    // ||R(h) - I||_F per relator
  double roundtrip = 0.0;              // max ||q(lift_i) - g_i||_F
  double max_relator_residual() const;
};

LiftDiagnostics lift_diagnostics(const LiftedRep& lift, const MatrixRep& rep, const Presentation& p);

/// Relator residuals of the lift alone (no source representation needed).
LiftDiagnostics lift_relator_residuals(const LiftedRep& lift, const Presentation& p);

/// Pointwise multiplication by the deck element phi (one integer per
/// generator). Throws NotAHomomorphism when some relator has nonzero net phi.
LiftedRep deck_act(std::span<const long> phi, const LiftedRep& lift, const Presentation& p);

struct ObstructionClass {
  long k = 0;          // class in Z/n
  int n = 0;
  double residual = 0; // ||prod [a~_i, b~_i] - e^{2 pi i k/n} I||_F
};

/// The class in Z/n of prod_i [a~_i, b~_i] for a PU(n) representation of the
/// genus-g surface group with generators ordered a1 b1 a2 b2 ...
///
/// Lifts divide each representative by an n-th root of its determinant;
/// `branches` (optional, one per generator) picks which root. Errors:
/// NotARepresentation (product not scalar), AmbiguousClass (scalar but not
/// within tolerance of an n-th root of unity), ShapeMismatch, InvalidParameter.
ObstructionClass obstruction_class(const MatrixRep& rep, std::size_t genus, std::span<const int> branches = {});

struct EigenPair {
  Complex a;
  Complex b;
};

struct SimultaneousEigenbasis {
  std::vector<EigenPair> pairs;  // sorted by (arg a, arg b), args in [0, 2 pi)
  Matrix basis;                  // unitary Q with Q* A Q, Q* B Q diagonal
  double residual = 0;           // max off-diagonal Frobenius norm after conjugation
  bool ill_conditioned = false;
};

/// Joint eigenvalues of commuting unitaries. A is diagonalized first and B is
/// then diagonalized on each A-eigenspace (eigenvalues within
/// `cluster_threshold` in angle are one eigenspace). If that fails to
/// diagonalize both, a random linear combination is tried; if that also
/// fails the result is flagged ill-conditioned.
/// Throws NotCommuting when ||AB - BA||_F > tol.
SimultaneousEigenbasis simultaneous_eigenvalues(const Matrix& a, const Matrix& b, double tol = kDefaultTolerance,
                                                double cluster_threshold = 1e-7);

/// Max over matched pairs of |a - a'| + |b - b'|, minimized over matchings.
double multiset_distance(std::span<const EigenPair> x, std::span<const EigenPair> y);

struct TraceCoordinates {
  double x = 0;
  double y = 0;
  double z = 0;
  double kappa = 0;     // x^2 + y^2 + z^2 - xyz - 4
  double max_imag = 0;  // largest |Im| among the three traces
};

/// (tr A, tr B, tr AB, kappa) for A, B in SU(2). Errors: NotUnitary, NotDetOne.
TraceCoordinates su2_commuting_invariant(const Matrix& a, const Matrix& b, double tol = kDefaultTolerance);

}  // namespace charvar
