#pragma once

// Hypothesis-checked dispatch from (group, Lie group) to topological
// invariants of representation spaces and character varieties.
//
// Every known value carries at least one citation from citation_table(); every
// unknown value names the hypothesis that failed.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "charvar/liegroup.hpp"
#include "charvar/presentation.hpp"
#include "charvar/zmodule.hpp"

namespace charvar {

enum class CitationId {
  GoldmanDeck,
  CoveringStructure,
  TorsionCounterexample,
  SphereModuli,
  TorsionFreeCriterion,
  UniversalCoverForm,
  TorsionOfPi1,
  SurjectiveCovers,
  FreeGroups,
  FreeGroupsRealReductive,
  FreeAbelianOrthogonalFree,
  FreeAbelianLowRank,
  FreeAbelianRealReductive,
  FreeAbelianConnected,
  SurfaceSimplyConnected,
  ComponentsCompact,
  SurfaceReductive,
  SurfaceUnitary,
  ComponentsReductive,
  StableUnitary,
  StableSpecialUnitary,
  StableGeneralLinear,
  HomAsSubspace,
};

struct Citation {
  std::string label;   // display label of the cited result
  std::string anchor;  // verbatim phrase from the cited result

  friend bool operator==(const Citation&, const Citation&) = default;
};

const Citation& citation(CitationId id);
const std::vector<Citation>& citation_table();

/// A report field: known (group or count) or unknown with a reason.
struct ReportField {
  bool known = false;
  std::optional<FgAbelianGroup> group;
  std::optional<Integer> count;
  std::vector<Citation> citations;
  std::string note;

  static ReportField of_group(FgAbelianGroup g, std::vector<Citation> cites, std::string note = {});
  static ReportField of_count(Integer n, std::vector<Citation> cites, std::string note = {});
  static ReportField unknown(std::string failed_hypothesis, std::vector<Citation> cites = {});

  friend bool operator==(const ReportField&, const ReportField&) = default;
};

struct CoveringStructure {
  FgAbelianGroup kernel;  // ker(p) of the chosen cover
  FgAbelianGroup deck;    // Hom(Gamma, ker p)
  bool surjective = false;
  std::vector<Citation> citations;
  std::string note;

  friend bool operator==(const CoveringStructure&, const CoveringStructure&) = default;
};

/// Deck group of Hom(Gamma, H) -> Hom(Gamma, G) for the cover with kernel
/// `cover_kernel` (a subgroup of pi1(G), hence free of rank <= k).
/// surjective is true exactly when the presentation is exponent-canceling.
/// Errors: HypothesisNotMet when pi1(G) has torsion; InvalidParameter when
/// cover_kernel cannot be a subgroup of pi1(G).
CoveringStructure covering_structure_group(const Presentation& gamma, const FgAbelianGroup& cover_kernel,
                                           const ReductiveDescriptor& g);

/// The class used for dispatch. A caller tag is checked against the
/// abelianization and, for recognized standard shapes, against the shape;
/// without a tag the first recognized shape is used (Other if none).
/// Errors: ClassMismatch.
ClassTag resolve_class(const Presentation& gamma, const std::optional<ClassTag>& tag);

ReportField pi1_moduli(const Presentation& gamma, const ClassTag& tag, const ReductiveDescriptor& g);

/// |pi1(DG)| components. Errors: InvalidParameter (genus < 1).
ReportField pi0_surface_rep_space(long genus, const ReductiveDescriptor& g);

enum class StableTarget { SU, U, GL };

StableTarget parse_stable_target(std::string_view text);

struct StableFacts {
  StableTarget target = StableTarget::SU;
  long genus = 1;
  std::vector<std::pair<int, FgAbelianGroup>> homotopy;  // (k, pi_k) for listed k
  bool higher_vanish = false;  // pi_k = 0 for every unlisted k >= 1
  std::string homotopy_type;   // empty when not determined
  std::vector<Citation> citations;
};

/// Lookup of the stable moduli spaces. Errors: InvalidParameter (genus < 1).
StableFacts stable_moduli_facts(StableTarget target, long genus);

struct InvariantReport {
  std::string group;   // query echo
  std::string target;  // query echo
  std::string gamma_class;
  ReportField pi0_hom;
  ReportField pi0_moduli;
  ReportField pi1_moduli;
  std::optional<CoveringStructure> covering;
  std::vector<std::string> hypothesis_failures;
  /// The pi1 result also holds for real reductive groups with this maximal compact.
  bool real_reductive = false;
  std::vector<Citation> citations;  // union of all cited results, in table order

  friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

/// Runs every applicable result. The covering is the universal one
/// (kernel pi1(G)); when pi1(G) has torsion the covering is omitted. An
/// unknown pi1_moduli and an omitted covering are each recorded in
/// hypothesis_failures.
InvariantReport analyze(const Presentation& gamma, const ReductiveDescriptor& g, const std::string& group_echo,
                        const std::string& target_echo, const std::optional<ClassTag>& tag = std::nullopt);

}  // namespace charvar
