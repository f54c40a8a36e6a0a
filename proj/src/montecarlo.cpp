#include "charvar/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "charvar/errors.hpp"
#include "charvar/matrixrep.hpp"
#include "charvar/presentation.hpp"
#include "charvar/sampling.hpp"

namespace charvar {

namespace {

constexpr std::size_t kMaxMessages = 5;

// Per-suite seeds so that suites do not share random streams.
Rng suite_rng(std::uint64_t seed, std::uint64_t salt) { return Rng(seed * 0x9E3779B97F4A7C15ULL + salt); }

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << v;
  return out.str();
}

MatrixRep conjugate(const MatrixRep& rep, const Matrix& w) {
  std::vector<Matrix> mats;
  for (const auto& m : rep.matrices()) mats.push_back(w * m * w.adjoint());
  return MatrixRep(rep.target(), std::move(mats), rep.tolerance());
}

double max_real_difference(const LiftedRep& x, const LiftedRep& y) {
  double d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x.real_part(i) - y.real_part(i)));
  return d;
}

double max_projection_difference(const LiftedRep& x, const LiftedRep& y) {
  const auto px = x.project();
  const auto py = y.project();
  double d = 0;
  for (std::size_t i = 0; i < px.size(); ++i) d = std::max(d, (px[i] - py[i]).norm());
  return d;
}

bool bitwise_equal(const LiftedRep& x, const LiftedRep& y) {
  if (x.sheets() != y.sheets()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.real_part(i) != y.real_part(i)) return false;
    if (x.su_part(i) != y.su_part(i)) return false;
  }
  return true;
}

std::vector<EigenPair> pairs_of(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<EigenPair> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back({a[i], b[i]});
  return out;
}

Matrix diagonal(std::initializer_list<Complex> entries) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (auto e : entries) v(i++) = e;
  return v.asDiagonal();
}

}  // namespace

void SuiteResult::fail(std::string message) {
  ++failures;
  pass = false;
  if (messages.size() < kMaxMessages) messages.push_back(std::move(message));
}

void SuiteResult::metric(std::string key, double value) {
  for (auto& [k, v] : metrics) {
    if (k == key) {
      v = value;
      return;
    }
  }
  metrics.emplace_back(std::move(key), value);
}

double SuiteResult::metric_value(const std::string& key) const {
  for (const auto& [k, v] : metrics)
    if (k == key) return v;
  return std::nan("");
}

SuiteResult obstruction_suite(const SuiteOptions& opt, std::size_t conjugations, std::size_t branches) {
  SuiteResult r;
  r.name = "obstruction";
  Rng rng = suite_rng(opt.seed, 1);
  std::uniform_int_distribution<int> branch(0, 1);
  double worst_residual = 0;
  std::size_t realized[2] = {0, 0};

  auto examine = [&](const MatrixRep& rep, long expected, const std::string& label) {
    const long k = obstruction_class(rep, 1).k;
    ++r.checks;
    if (k != expected) {
      r.fail(label + ": class " + std::to_string(k) + ", expected " + std::to_string(expected));
      return;
    }
    ++realized[k];
    for (std::size_t c = 0; c < conjugations; ++c) {
      const ObstructionClass oc = obstruction_class(conjugate(rep, haar_unitary(2, rng)), 1);
      worst_residual = std::max(worst_residual, oc.residual);
      ++r.checks;
      if (oc.k != k) r.fail(label + ": class changed under conjugation " + std::to_string(c));
    }
    for (std::size_t b = 0; b < branches; ++b) {
      const int choice[2] = {branch(rng), branch(rng)};
      const ObstructionClass oc = obstruction_class(rep, 1, choice);
      worst_residual = std::max(worst_residual, oc.residual);
      ++r.checks;
      if (oc.k != k) r.fail(label + ": class changed under branch choice " + std::to_string(b));
    }
  };

  // Rotations by pi about the x and y axes, represented by i*sigma_x, i*sigma_y.
  Matrix sx(2, 2), sy(2, 2);
  sx << 0, Complex(0, 1), Complex(0, 1), 0;
  sy << 0, 1, -1, 0;
  examine(MatrixRep(Target{TargetKind::PU, 2}, {sx, sy}, opt.tolerance), 1, "pi-rotation fixture");

  for (std::size_t i = 0; i < opt.count; ++i) {
    const int cls = static_cast<int>(i % 2);
    try {
      examine(random_so3_commuting_pair(cls, rng), cls, "sample " + std::to_string(i));
    } catch (const Error& e) {
      r.fail("sample " + std::to_string(i) + ": " + e.what());
    }
  }
  r.samples = opt.count + 1;
  if (worst_residual > opt.tolerance) r.fail("residual " + fmt(worst_residual) + " above tolerance");
  if (realized[0] == 0 || realized[1] == 0) r.fail("both classes must be realized");
  r.metric("max_residual", worst_residual);
  r.metric("class0_samples", static_cast<double>(realized[0]));
  r.metric("class1_samples", static_cast<double>(realized[1]));
  return r;
}

SuiteResult lift_suite(const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "lift";
  Rng rng = suite_rng(opt.seed, 2);
  const Presentation f2 = standard_group(GroupKind::parse("free 2"));
  const Presentation z2 = standard_group(GroupKind::parse("free_abelian 2"));
  const Presentation s2 = standard_group(GroupKind::parse("surface 2"));
  double worst_relator = 0, worst_roundtrip = 0;
  for (int n : {2, 3}) {
    const Target target{TargetKind::U, n};
    for (std::size_t i = 0; i < opt.count; ++i) {
      const std::pair<const char*, MatrixRep> cases[] = {
          {"F2", random_free_rep(2, n, rng)},
          {"Z2", random_commuting_sample(n, 2, target, rng).rep},
          {"genus2", random_surface_rep(2, n, rng)},
      };
      const Presentation* ps[] = {&f2, &z2, &s2};
      for (std::size_t c = 0; c < 3; ++c) {
        const std::string label = std::string(cases[c].first) + " U(" + std::to_string(n) + ") #" + std::to_string(i);
        ++r.checks;
        try {
          const LiftedRep lift = lift_to_universal_cover(cases[c].second, *ps[c]);
          const LiftDiagnostics d = lift_diagnostics(lift, cases[c].second, *ps[c]);
          worst_relator = std::max(worst_relator, d.max_relator_residual());
          worst_roundtrip = std::max(worst_roundtrip, d.roundtrip);
          if (d.max_relator_residual() > 1e-10) r.fail(label + ": relator residual " + fmt(d.max_relator_residual()));
          if (d.roundtrip > 1e-12) r.fail(label + ": round trip " + fmt(d.roundtrip));
        } catch (const Error& e) {
          r.fail(label + ": " + e.what());
        }
      }
      r.samples += 3;
    }
  }
  r.metric("max_relator_residual", worst_relator);
  r.metric("max_roundtrip", worst_roundtrip);
  return r;
}

SuiteResult deck_suite(const SuiteOptions& opt, long bound) {
  SuiteResult r;
  r.name = "deck";
  Rng rng = suite_rng(opt.seed, 3);
  const Presentation z2 = standard_group(GroupKind::parse("free_abelian 2"));
  std::vector<std::vector<long>> phis;
  for (long a = -bound; a <= bound; ++a)
    for (long b = -bound; b <= bound; ++b) phis.push_back({a, b});

  double worst_projection = 0, worst_relator = 0;
  double min_separation = std::numeric_limits<double>::infinity();
  std::size_t axiom_failures = 0;
  for (std::size_t i = 0; i < opt.count; ++i) {
    const int n = 2 + static_cast<int>(i % 2);
    const MatrixRep rep = random_commuting_sample(n, 2, Target{TargetKind::U, n}, rng).rep;
    const LiftedRep lift = lift_to_universal_cover(rep, z2);
    std::vector<LiftedRep> acted;
    for (const auto& phi : phis) acted.push_back(deck_act(phi, lift, z2));
    for (std::size_t p = 0; p < phis.size(); ++p) {
      const LiftedRep& d = acted[p];
      worst_projection = std::max(worst_projection, max_projection_difference(d, lift));
      worst_relator = std::max(worst_relator, lift_relator_residuals(d, z2).max_relator_residual());
      ++r.checks;
      if (phis[p][0] != 0 || phis[p][1] != 0) {
        const double sep = max_real_difference(d, lift);
        min_separation = std::min(min_separation, sep);
        if (!(sep > 0)) r.fail("sample " + std::to_string(i) + ": nonzero deck vector fixed the real parts");
      }
      for (std::size_t q = 0; q < phis.size(); ++q) {
        const std::vector<long> sum = {phis[p][0] + phis[q][0], phis[p][1] + phis[q][1]};
        const LiftedRep once = deck_act(sum, lift, z2);
        const LiftedRep twice = deck_act(phis[p], acted[q], z2);
        ++r.checks;
        if (!bitwise_equal(once, twice)) {
          ++axiom_failures;
          r.fail("sample " + std::to_string(i) + ": deck(phi + psi) != deck(phi) deck(psi)");
        }
      }
    }
    ++r.samples;
  }
  if (worst_projection > 1e-12) r.fail("projection moved by " + fmt(worst_projection));
  if (worst_relator > 1e-10) r.fail("relator residual after deck action " + fmt(worst_relator));
  r.metric("max_projection_change", worst_projection);
  r.metric("max_relator_residual", worst_relator);
  r.metric("min_real_separation", std::isfinite(min_separation) ? min_separation : 0.0);
  r.metric("axiom_failures", static_cast<double>(axiom_failures));
  return r;
}

SuiteResult canonical_form_suite(const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "canonical_form";
  Rng rng = suite_rng(opt.seed, 4);
  const double match = 1e-8;
  double worst_construction = 0, worst_conjugation = 0;
  double closest_distinct = std::numeric_limits<double>::infinity();
  std::vector<EigenPair> previous;
  for (std::size_t i = 0; i < opt.count; ++i) {
    const CommutingSample s = random_commuting_sample(3, 2, Target{TargetKind::U, 3}, rng);
    const Matrix& a = s.rep.matrices()[0];
    const Matrix& b = s.rep.matrices()[1];
    const auto built = pairs_of(s.diagonals[0], s.diagonals[1]);
    ++r.checks;
    try {
      const auto e = simultaneous_eigenvalues(a, b, opt.tolerance);
      const double d0 = multiset_distance(e.pairs, built);
      worst_construction = std::max(worst_construction, d0);
      if (d0 > match) r.fail("sample " + std::to_string(i) + ": construction distance " + fmt(d0));
      const Matrix w = haar_unitary(3, rng);
      const auto e2 = simultaneous_eigenvalues(w * a * w.adjoint(), w * b * w.adjoint(), opt.tolerance);
      const double d1 = multiset_distance(e.pairs, e2.pairs);
      worst_conjugation = std::max(worst_conjugation, d1);
      ++r.checks;
      if (d1 > match) r.fail("sample " + std::to_string(i) + ": conjugation distance " + fmt(d1));
      if (e.ill_conditioned || e2.ill_conditioned) r.fail("sample " + std::to_string(i) + ": ill-conditioned");
      if (!previous.empty()) {
        // Independent samples are not conjugate, so their multisets must differ.
        const double dd = multiset_distance(e.pairs, previous);
        closest_distinct = std::min(closest_distinct, dd);
        ++r.checks;
        if (dd <= match) r.fail("sample " + std::to_string(i) + ": matches an unrelated sample");
      }
      previous = e.pairs;
    } catch (const Error& e) {
      r.fail("sample " + std::to_string(i) + ": " + e.what());
    }
    ++r.samples;
  }

  // Degenerate fixtures: A = I, and A with a repeated eigenvalue.
  const Complex i1(0, 1);
  const Matrix q = haar_unitary(3, rng);
  const struct {
    Matrix a, b;
    std::vector<EigenPair> expected;
  } fixtures[] = {
      {Matrix::Identity(3, 3), q * diagonal({1.0, -1.0, i1}) * q.adjoint(), {{1.0, 1.0}, {1.0, -1.0}, {1.0, i1}}},
      {q * diagonal({1.0, 1.0, i1}) * q.adjoint(), q * diagonal({-1.0, i1, 1.0}) * q.adjoint(),
       {{1.0, -1.0}, {1.0, i1}, {i1, 1.0}}},
  };
  double worst_degenerate = 0;
  for (const auto& f : fixtures) {
    ++r.checks;
    const auto e = simultaneous_eigenvalues(f.a, f.b, opt.tolerance);
    const double d = multiset_distance(e.pairs, f.expected);
    worst_degenerate = std::max(worst_degenerate, d);
    if (d > match || e.ill_conditioned) r.fail("degenerate fixture distance " + fmt(d));
  }
  r.metric("max_construction_distance", worst_construction);
  r.metric("max_conjugation_distance", worst_conjugation);
  r.metric("min_distinct_distance", std::isfinite(closest_distinct) ? closest_distinct : 0.0);
  r.metric("max_degenerate_distance", worst_degenerate);
  return r;
}

SuiteResult su2_trace_suite(const SuiteOptions& opt) {
  SuiteResult r;
  r.name = "su2_trace";
  Rng rng = suite_rng(opt.seed, 5);
  double worst_kappa = 0, worst_imag = 0;
  for (std::size_t i = 0; i < opt.count; ++i) {
    const CommutingSample s = random_commuting_sample(2, 2, Target{TargetKind::SU, 2}, rng);
    const TraceCoordinates t = su2_commuting_invariant(s.rep.matrices()[0], s.rep.matrices()[1], opt.tolerance);
    worst_kappa = std::max(worst_kappa, std::abs(t.kappa));
    worst_imag = std::max(worst_imag, t.max_imag);
    ++r.checks;
    if (std::abs(t.kappa) > opt.tolerance) r.fail("commuting pair " + std::to_string(i) + ": kappa " + fmt(t.kappa));
  }
  std::size_t separated = 0;
  for (std::size_t i = 0; i < opt.count; ++i) {
    const TraceCoordinates t = su2_commuting_invariant(haar_special_unitary(2, rng), haar_special_unitary(2, rng),
                                                       opt.tolerance);
    worst_imag = std::max(worst_imag, t.max_imag);
    if (std::abs(t.kappa) > 0.1) ++separated;
  }
  const double fraction = opt.count ? static_cast<double>(separated) / static_cast<double>(opt.count) : 1.0;
  ++r.checks;
  if (fraction < 0.99) r.fail("only " + std::to_string(separated) + " Haar pairs have |kappa| > 0.1");
  if (worst_imag > opt.tolerance) r.fail("trace imaginary part " + fmt(worst_imag));
  r.samples = 2 * opt.count;
  r.metric("max_abs_kappa_commuting", worst_kappa);
  r.metric("haar_fraction_kappa_above_0.1", fraction);
  r.metric("max_trace_imag", worst_imag);
  return r;
}

std::vector<SuiteResult> run_all_suites(const SuiteOptions& opt) {
  return {obstruction_suite(opt), lift_suite(opt), deck_suite(opt), canonical_form_suite(opt), su2_trace_suite(opt)};
}

}  // namespace charvar
