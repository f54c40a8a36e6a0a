#include "charvar/theorems.hpp"

#include <algorithm>
#include <array>

#include "charvar/errors.hpp"

namespace charvar {

namespace {

// Indexed by CitationId.
const std::vector<Citation>& table() {
  static const std::vector<Citation> t = {
      {"Lemma 3.1", "group of deck transformations is Hom(Γ, ker(p))"},
      {"Theorem 3.4", "normal covering maps with structure group Hom(Γ, ker(p))"},
      {"Example 3.11", "this is impossible"},
      {"Example 3.11", "homeomorphic to $S^2$"},
      {"Proposition 2.3", "if and only if the commutator subgroup DG is simply connected"},
      {"Proposition 2.2", "the universal covering map q has the form"},
      {"Remark 2.4", "the torsion subgroup of π1(G)"},
      {"Proposition 4.2", "are always surjective"},
      {"Corollary 4.4", "π1(𝔛_Γ(G)) ≅ π1(G)^r"},
      {"Corollary 4.5", "connected real reductive Lie group with $\\pi_1 (G)$ torsion-free"},
      {"Corollary 4.6", "that r ⩾ 3 and DG is orthogonal-free"},
      {"Corollary 4.6", "that r=1,2 and π1(G) is torsion-free"},
      {"Corollary 4.8", "maximal compact subgroup $K \\leqslant G$"},
      {"Corollary 4.6", "is path-connected for any $r\\geqslant 3$ and $H$ orthogonal-free"},
      {"Theorem 4.7", "simply connected for $g > 1$"},
      {"Eq. (HL)", "π0(Hom(Γ^g,G)) ≅ π0(𝔛_{Γ^g}(G)) ≅ π1(DG)"},
      {"Corollary 4.9", "π1(𝔛_{Γ^g}(G)) ≅ π1(G)^{2g}"},
      {"Corollary 4.10", "𝔛_{Γ^g}(SU(n)) is simply connected"},
      {"Appendix proposition", "π0(Hom(π1(Σ),G)) ≅ π1(DG)"},
      {"Theorem 5.1", "(S¹)^{2g} × ℂP^∞"},
      {"Theorem 5.2", "𝔛_{Γ^g}(SU) ≃ ℂP^∞"},
      {"Section 5", "Consequently, π1(𝔛_{Γ^g}(GL)) ≅ ℤ^{2g}"},
      {"Section 3", "embed Hom(Γ,G) ⊂ Hom(F_r,G) ≅ G^r"},
  };
  return t;
}

std::vector<Citation> cites(std::initializer_list<CitationId> ids) {
  std::vector<Citation> out;
  for (auto id : ids) out.push_back(citation(id));
  return out;
}

bool free_abelian_hypotheses(std::size_t r, const ReductiveDescriptor& g, std::string* failure) {
  if (r >= 3) {
    if (is_orthogonal_free(g)) return true;
    if (failure) *failure = "r >= 3 and DG is not orthogonal-free";
    return false;
  }
  if (pi1_is_torsion_free(g)) return true;
  if (failure) *failure = "pi1(G) = " + pi1(g).to_string() + " has torsion";
  return false;
}

ReportField pi0_for(const ClassTag& tag, const ReductiveDescriptor& g) {
  switch (tag.cls) {
    case GroupClass::Free:
      return ReportField::of_count(1, cites({CitationId::HomAsSubspace}), "Hom(F_r, G) = G^r is connected");
    case GroupClass::FreeAbelian: {
      const std::size_t r = tag.parameter;
      if (r <= 1) return ReportField::of_count(1, cites({CitationId::HomAsSubspace}), "Hom(Z^r, G) is G^r for r <= 1");
      std::string failure;
      if (free_abelian_hypotheses(r, g, &failure)) {
        return ReportField::of_count(1, cites({CitationId::FreeAbelianConnected, CitationId::SurjectiveCovers}));
      }
      if (r == 2 && g.field() == GroupField::Compact) return pi0_surface_rep_space(1, g);
      return ReportField::unknown(failure);
    }
    case GroupClass::Surface:
      if (tag.parameter == 1) return pi0_for(ClassTag{GroupClass::FreeAbelian, 2}, g);
      return pi0_surface_rep_space(static_cast<long>(tag.parameter), g);
    case GroupClass::Other:
      break;
  }
  return ReportField::unknown("presentation is not of free, free abelian or surface class");
}

}  // namespace

const Citation& citation(CitationId id) { return table().at(static_cast<std::size_t>(id)); }

const std::vector<Citation>& citation_table() { return table(); }

ReportField ReportField::of_group(FgAbelianGroup g, std::vector<Citation> c, std::string note) {
  ReportField f;
  f.known = true;
  f.group = std::move(g);
  f.citations = std::move(c);
  f.note = std::move(note);
  return f;
}

ReportField ReportField::of_count(Integer n, std::vector<Citation> c, std::string note) {
  ReportField f;
  f.known = true;
  f.count = std::move(n);
  f.citations = std::move(c);
  f.note = std::move(note);
  return f;
}

ReportField ReportField::unknown(std::string failed_hypothesis, std::vector<Citation> c) {
  ReportField f;
  f.citations = std::move(c);
  f.note = std::move(failed_hypothesis);
  return f;
}

CoveringStructure covering_structure_group(const Presentation& gamma, const FgAbelianGroup& cover_kernel,
                                           const ReductiveDescriptor& g) {
  const FgAbelianGroup p1 = pi1(g);
  if (!p1.is_torsion_free()) {
    const Citation& c = citation(CitationId::TorsionCounterexample);
    throw Error(ErrorKind::HypothesisNotMet, "pi1(G) = " + p1.to_string() +
                                                 " has torsion, so no covering structure is asserted (" + c.label +
                                                 ": \"" + c.anchor + "\")");
  }
  if (!cover_kernel.is_torsion_free() || cover_kernel.free_rank() > p1.free_rank()) {
    throw Error(ErrorKind::InvalidParameter,
                "cover kernel " + cover_kernel.to_string() + " is not a subgroup of pi1(G) = " + p1.to_string());
  }
  CoveringStructure out;
  out.kernel = cover_kernel;
  out.deck = hom_group(cokernel(abelianization_matrix(gamma)), cover_kernel);
  out.surjective = is_exponent_canceling(gamma).flag;
  out.citations = cites({CitationId::CoveringStructure, CitationId::GoldmanDeck});
  if (out.surjective) {
    out.citations.push_back(citation(CitationId::SurjectiveCovers));
  } else {
    out.note = "presentation is not exponent-canceling; surjectivity not established";
  }
  return out;
}

ClassTag resolve_class(const Presentation& gamma, const std::optional<ClassTag>& tag) {
  const auto recognized = recognize_class(gamma);
  if (!tag) return recognized.empty() ? ClassTag{} : recognized.front();
  if (tag->cls == GroupClass::Other) return *tag;

  const std::size_t expected_rank = tag->cls == GroupClass::Surface ? 2 * tag->parameter : tag->parameter;
  if (tag->cls == GroupClass::Surface && tag->parameter < 1) {
    throw Error(ErrorKind::ClassMismatch, "surface class needs genus >= 1");
  }
  const FgAbelianGroup ab = cokernel(abelianization_matrix(gamma));
  if (ab != FgAbelianGroup::free(expected_rank)) {
    throw Error(ErrorKind::ClassMismatch, "tag '" + tag->to_string() + "' needs abelianization Z^" +
                                              std::to_string(expected_rank) + ", presentation has " + ab.to_string());
  }
  if (!recognized.empty() && std::find(recognized.begin(), recognized.end(), *tag) == recognized.end()) {
    throw Error(ErrorKind::ClassMismatch, "tag '" + tag->to_string() + "' contradicts the recognized shape '" +
                                              recognized.front().to_string() + "'");
  }
  return *tag;
}

ReportField pi1_moduli(const Presentation& gamma, const ClassTag& tag, const ReductiveDescriptor& g) {
  const ClassTag t = resolve_class(gamma, tag);
  const FgAbelianGroup p1 = pi1(g);
  const bool torsion_free = p1.is_torsion_free();
  const std::string torsion_failure = "pi1(G) = " + p1.to_string() + " has torsion";

  switch (t.cls) {
    case GroupClass::Free:
      if (t.parameter == 0) return ReportField::of_group(FgAbelianGroup::trivial(), cites({CitationId::HomAsSubspace}));
      if (!torsion_free) return ReportField::unknown(torsion_failure, cites({CitationId::TorsionCounterexample}));
      return ReportField::of_group(p1.power(t.parameter), cites({CitationId::FreeGroups}));

    case GroupClass::FreeAbelian: {
      const std::size_t r = t.parameter;
      if (r == 0) return ReportField::of_group(FgAbelianGroup::trivial(), cites({CitationId::HomAsSubspace}));
      std::string failure;
      if (!free_abelian_hypotheses(r, g, &failure)) {
        return ReportField::unknown(failure, r <= 2 ? cites({CitationId::TorsionCounterexample}) : std::vector<Citation>{});
      }
      auto c = cites({r >= 3 ? CitationId::FreeAbelianOrthogonalFree : CitationId::FreeAbelianLowRank});
      const UnitaryMatch m = match_unitary(g);
      if (r == 2 && m.special && m.n == 2) c.push_back(citation(CitationId::SphereModuli));
      return ReportField::of_group(p1.power(r), std::move(c));
    }

    case GroupClass::Surface: {
      const std::size_t genus = t.parameter;
      if (genus == 1) {
        ReportField f = pi1_moduli(gamma, ClassTag{GroupClass::FreeAbelian, 2}, g);
        f.note = f.known ? "genus 1 handled as Z^2" : f.note;
        return f;
      }
      if (g.field() == GroupField::Complex) {
        if (!torsion_free) return ReportField::unknown(torsion_failure, cites({CitationId::TorsionCounterexample}));
        auto c = cites({CitationId::SurfaceReductive});
        if (p1.is_trivial()) c.push_back(citation(CitationId::SurfaceSimplyConnected));
        return ReportField::of_group(p1.power(2 * genus), std::move(c));
      }
      const UnitaryMatch m = match_unitary(g);
      if (m.unitary || m.special) return ReportField::of_group(p1.power(2 * genus), cites({CitationId::SurfaceUnitary}));
      return ReportField::unknown("compact G is not U(n) or SU(n)");
    }

    case GroupClass::Other:
      break;
  }
  return ReportField::unknown("presentation is not of free, free abelian or surface class");
}

ReportField pi0_surface_rep_space(long genus, const ReductiveDescriptor& g) {
  if (genus < 1) throw Error(ErrorKind::InvalidParameter, "genus must be at least 1");
  if (g.field() == GroupField::Complex && genus == 1) {
    return ReportField::unknown("genus 1 with a complex reductive group is not covered");
  }
  const FgAbelianGroup d = pi1_derived(g);
  const auto id = g.field() == GroupField::Compact ? CitationId::ComponentsCompact : CitationId::ComponentsReductive;
  return ReportField::of_count(*d.order(), cites({id}), "pi1(DG) = " + d.to_string());
}

StableTarget parse_stable_target(std::string_view text) {
  if (text == "SU") return StableTarget::SU;
  if (text == "U") return StableTarget::U;
  if (text == "GL") return StableTarget::GL;
  throw Error(ErrorKind::InvalidParameter, "stable target must be SU, U or GL");
}

StableFacts stable_moduli_facts(StableTarget target, long genus) {
  if (genus < 1) throw Error(ErrorKind::InvalidParameter, "genus must be at least 1");
  StableFacts f;
  f.target = target;
  f.genus = genus;
  const auto surface_rank = static_cast<std::size_t>(2 * genus);
  switch (target) {
    case StableTarget::SU:
      f.homotopy = {{1, FgAbelianGroup::trivial()}, {2, FgAbelianGroup::free(1)}};
      f.higher_vanish = true;
      f.homotopy_type = "K(Z,2) = CP^inf";
      f.citations = cites({CitationId::StableSpecialUnitary});
      break;
    case StableTarget::U:
      f.homotopy = {{1, FgAbelianGroup::free(surface_rank)}, {2, FgAbelianGroup::free(1)}};
      f.higher_vanish = true;
      f.homotopy_type = "(S^1)^" + std::to_string(surface_rank) + " x CP^inf";
      f.citations = cites({CitationId::StableUnitary});
      break;
    case StableTarget::GL:
      f.homotopy = {{1, FgAbelianGroup::free(surface_rank)}};
      f.citations = cites({CitationId::StableGeneralLinear});
      break;
  }
  return f;
}

InvariantReport analyze(const Presentation& gamma, const ReductiveDescriptor& g, const std::string& group_echo,
                        const std::string& target_echo, const std::optional<ClassTag>& tag) {
  InvariantReport r;
  r.group = group_echo;
  r.target = target_echo;
  const ClassTag t = resolve_class(gamma, tag);
  r.gamma_class = t.to_string();

  r.pi1_moduli = pi1_moduli(gamma, t, g);
  r.pi0_hom = pi0_for(t, g);
  r.pi0_moduli = r.pi0_hom;

  if (!r.pi1_moduli.known) r.hypothesis_failures.push_back("pi1_moduli: " + r.pi1_moduli.note);
  bool covering_failed = false;
  try {
    r.covering = covering_structure_group(gamma, pi1(g), g);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::HypothesisNotMet) throw;
    r.hypothesis_failures.push_back(std::string("covering: ") + e.what());
    covering_failed = true;
  }

  if (r.pi1_moduli.known && t.parameter > 0 &&
      (t.cls == GroupClass::Free || t.cls == GroupClass::FreeAbelian)) {
    r.real_reductive = true;
    r.pi1_moduli.citations.push_back(citation(t.cls == GroupClass::Free ? CitationId::FreeGroupsRealReductive
                                                                        : CitationId::FreeAbelianRealReductive));
  }

  std::vector<bool> used(citation_table().size(), false);
  auto mark = [&](const std::vector<Citation>& cs) {
    for (const auto& c : cs) {
      const auto it = std::find(citation_table().begin(), citation_table().end(), c);
      if (it != citation_table().end()) used[static_cast<std::size_t>(it - citation_table().begin())] = true;
    }
  };
  mark(r.pi0_hom.citations);
  mark(r.pi0_moduli.citations);
  mark(r.pi1_moduli.citations);
  if (r.covering) mark(r.covering->citations);
  if (covering_failed) used[static_cast<std::size_t>(CitationId::TorsionCounterexample)] = true;
  for (std::size_t i = 0; i < used.size(); ++i)
    if (used[i]) r.citations.push_back(citation_table()[i]);
  return r;
}

}  // namespace charvar
