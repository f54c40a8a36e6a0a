#include <doctest.h>

#include <algorithm>
#include <set>

#include "charvar/errors.hpp"
#include "charvar/liegroup.hpp"
#include "charvar/theorems.hpp"

using namespace charvar;

namespace {

Presentation std_group(const std::string& spec) { return standard_group(GroupKind::parse(spec)); }

ClassTag tag(const std::string& s) { return ClassTag::parse(s); }

bool cites(const ReportField& f, CitationId id) {
  return std::find(f.citations.begin(), f.citations.end(), citation(id)) != f.citations.end();
}

bool in_table(const Citation& c) {
  const auto& t = citation_table();
  return std::find(t.begin(), t.end(), c) != t.end();
}

void check_field(const ReportField& f) {
  if (f.known) {
    CHECK_FALSE(f.citations.empty());
    CHECK((f.group.has_value() || f.count.has_value()));
  } else {
    CHECK_FALSE(f.note.empty());
  }
  for (const auto& c : f.citations) CHECK(in_table(c));
}

const char* kTargets[] = {"U 1", "U 2", "U 3", "SU 2", "SU 3", "PSU 2", "PU 3", "GL 2", "SL 3", "PGL 2",
                          "torus 2", "U 2 x SU 2", "U 2 x PSU 2", "GL 2 x GL 3", "ctorus 1"};
const char* kGroups[] = {"free 0", "free 1", "free 3", "free_abelian 1", "free_abelian 2", "free_abelian 3",
                         "surface 1", "surface 2", "surface 3", "raag 3 1-2", "central_ext_surface 2"};

}  // namespace

TEST_CASE("citation table") {
  const auto& t = citation_table();
  CHECK(t.size() == 23);
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& c : t) {
    CHECK_FALSE(c.label.empty());
    CHECK_FALSE(c.anchor.empty());
    CHECK(seen.insert({c.label, c.anchor}).second);
  }
  CHECK(&citation(CitationId::GoldmanDeck) == &t.front());
  CHECK(&citation(CitationId::HomAsSubspace) == &t.back());
}

TEST_CASE("pi1 of moduli: fixtures") {
  SUBCASE("free groups into U(n)") {
    for (int r = 0; r <= 5; ++r)
      for (int n = 1; n <= 5; ++n) {
        const auto f = pi1_moduli(std_group("free " + std::to_string(r)), tag("free " + std::to_string(r)),
                                  named_group("U " + std::to_string(n)));
        REQUIRE(f.known);
        CHECK(*f.group == FgAbelianGroup::free(r));
        if (r > 0) CHECK(cites(f, CitationId::FreeGroups));
      }
  }
  SUBCASE("surface groups into GL(n)") {
    for (int g = 1; g <= 4; ++g)
      for (int n = 1; n <= 5; ++n) {
        const std::string gs = std::to_string(g);
        const auto f = pi1_moduli(std_group("surface " + gs), tag("surface " + gs), named_group("GL " + std::to_string(n)));
        REQUIRE(f.known);
        CHECK(*f.group == FgAbelianGroup::free(2 * g));
      }
  }
  SUBCASE("commuting pairs in SU(2)") {
    const auto f = pi1_moduli(std_group("free_abelian 2"), tag("free_abelian 2"), named_group("SU 2"));
    REQUIRE(f.known);
    CHECK(f.group->is_trivial());
    CHECK(cites(f, CitationId::SphereModuli));
  }
  SUBCASE("orthogonal factor blocks the rank 3 case") {
    const ReductiveDescriptor spin7(GroupField::Compact, 0, {SimpleType(LieFamily::B, 3)}, {});
    const auto f = pi1_moduli(std_group("free_abelian 3"), tag("free_abelian 3"), spin7);
    CHECK_FALSE(f.known);
    CHECK(f.note.find("orthogonal") != std::string::npos);
    // The same group is fine for r <= 2, where only torsion-freeness matters.
    CHECK(pi1_moduli(std_group("free_abelian 2"), tag("free_abelian 2"), spin7).known);
  }
  SUBCASE("torsion in pi1 blocks free groups") {
    const auto f = pi1_moduli(std_group("free 2"), tag("free 2"), named_group("PSU 2"));
    CHECK_FALSE(f.known);
    CHECK(cites(f, CitationId::TorsionCounterexample));
  }
  SUBCASE("compact surfaces need U(n) or SU(n)") {
    CHECK(pi1_moduli(std_group("surface 2"), tag("surface 2"), named_group("U 3")).group == FgAbelianGroup::free(4));
    CHECK(pi1_moduli(std_group("surface 2"), tag("surface 2"), named_group("SU 3")).group->is_trivial());
    CHECK_FALSE(pi1_moduli(std_group("surface 2"), tag("surface 2"), named_group("torus 1 x SU 2")).known);
    CHECK_FALSE(pi1_moduli(std_group("surface 2"), tag("surface 2"), named_group("PSU 2")).known);
  }
  SUBCASE("genus one follows the free abelian rule") {
    const auto a = pi1_moduli(std_group("surface 1"), tag("surface 1"), named_group("PSU 3"));
    const auto b = pi1_moduli(std_group("free_abelian 2"), tag("free_abelian 2"), named_group("PSU 3"));
    CHECK(a.known == b.known);
    CHECK(pi1_moduli(std_group("surface 1"), tag("surface 1"), named_group("U 2")).group == FgAbelianGroup::free(2));
  }
  SUBCASE("other classes are unknown") {
    const auto f = pi1_moduli(std_group("raag 3 1-2"), tag("other"), named_group("U 2"));
    CHECK_FALSE(f.known);
  }
}

TEST_CASE("pi1 of moduli agrees with the deck group of the universal cover") {
  for (int r = 0; r <= 4; ++r)
    for (const char* t : kTargets) {
      const auto g = named_group(t);
      const auto f = pi1_moduli(std_group("free " + std::to_string(r)), tag("free " + std::to_string(r)), g);
      if (!f.known) {
        CHECK_FALSE(pi1_is_torsion_free(g));
        continue;
      }
      CHECK(*f.group == hom_group(FgAbelianGroup::free(r), pi1(g)));
      if (!pi1_is_torsion_free(g)) continue;
      const auto cover = covering_structure_group(std_group("free " + std::to_string(r)), pi1(g), g);
      CHECK(cover.deck == *f.group);
    }
}

TEST_CASE("covering structure group") {
  const auto u3 = named_group("U 3");
  const auto c = covering_structure_group(std_group("surface 2"), FgAbelianGroup::free(1), u3);
  CHECK(c.deck == FgAbelianGroup::free(4));
  CHECK(c.surjective);

  const auto trivial = covering_structure_group(parse_presentation("gens a; rel a;"), FgAbelianGroup::free(1), u3);
  CHECK(trivial.deck.is_trivial());
  CHECK_FALSE(trivial.surjective);
  CHECK_FALSE(trivial.note.empty());

  // A torsion abelianization maps trivially into the free kernel.
  CHECK(covering_structure_group(parse_presentation("gens a; rel a^3;"), FgAbelianGroup::free(1), u3).deck.is_trivial());

  try {
    covering_structure_group(std_group("free 2"), FgAbelianGroup::cyclic(2), named_group("PSU 2"));
    FAIL("expected HypothesisNotMet");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::HypothesisNotMet);
  }
  CHECK_THROWS_AS(covering_structure_group(std_group("free 2"), FgAbelianGroup::free(2), u3), Error);
  CHECK_THROWS_AS(covering_structure_group(std_group("free 2"), FgAbelianGroup::cyclic(2), u3), Error);
  // Intermediate cover: the trivial kernel.
  CHECK(covering_structure_group(std_group("free 2"), FgAbelianGroup(), u3).deck.is_trivial());
}

TEST_CASE("components of surface representation spaces") {
  CHECK(*pi0_surface_rep_space(2, named_group("PSU 2")).count == 2);
  CHECK(*pi0_surface_rep_space(1, named_group("PSU 2")).count == 2);
  CHECK(*pi0_surface_rep_space(2, named_group("PGL 3")).count == 3);
  CHECK(cites(pi0_surface_rep_space(2, named_group("PGL 3")), CitationId::ComponentsReductive));
  CHECK(cites(pi0_surface_rep_space(2, named_group("PSU 2")), CitationId::ComponentsCompact));
  CHECK_FALSE(pi0_surface_rep_space(1, named_group("PGL 3")).known);
  for (int g = 1; g <= 4; ++g)
    for (int n = 1; n <= 4; ++n) CHECK(*pi0_surface_rep_space(g, named_group("SU " + std::to_string(n))).count == 1);
  for (const char* t : kTargets) {
    const auto g = named_group(t);
    const auto f = pi0_surface_rep_space(3, g);
    REQUIRE(f.known);
    CHECK(*f.count == *pi1_derived(g).order());
    if (pi1_derived(g).is_trivial()) CHECK(*f.count == 1);
  }
  CHECK_THROWS_AS(pi0_surface_rep_space(0, named_group("U 2")), Error);
}

TEST_CASE("class resolution") {
  CHECK(resolve_class(std_group("surface 2"), std::nullopt) == tag("surface 2"));
  CHECK(resolve_class(std_group("raag 3 1-2"), std::nullopt) == tag("other"));
  CHECK(resolve_class(std_group("free_abelian 2"), tag("surface 1")) == tag("surface 1"));
  auto mismatch = [](const Presentation& p, const char* t) {
    try {
      resolve_class(p, tag(t));
    } catch (const Error& e) {
      return e.kind() == ErrorKind::ClassMismatch;
    }
    return false;
  };
  CHECK(mismatch(std_group("surface 2"), "free 4"));
  CHECK(mismatch(std_group("free 3"), "free 2"));
  CHECK(mismatch(parse_presentation("gens a; rel a^2;"), "free_abelian 1"));
  // Tagging an unrecognized exponent-canceling presentation is the caller's claim.
  CHECK(resolve_class(parse_presentation("gens x y; rel [x,y]^2;"), tag("free_abelian 2")) == tag("free_abelian 2"));
}

TEST_CASE("stable moduli facts") {
  const auto su = stable_moduli_facts(StableTarget::SU, 3);
  REQUIRE(su.homotopy.size() == 2);
  CHECK(su.homotopy[0] == std::pair<int, FgAbelianGroup>{1, FgAbelianGroup()});
  CHECK(su.homotopy[1] == std::pair<int, FgAbelianGroup>{2, FgAbelianGroup::free(1)});
  CHECK(su.higher_vanish);
  CHECK_FALSE(su.citations.empty());

  const auto u = stable_moduli_facts(StableTarget::U, 1);
  REQUIRE(u.homotopy.size() == 2);
  CHECK(u.homotopy[0] == std::pair<int, FgAbelianGroup>{1, FgAbelianGroup::free(2)});
  CHECK(u.homotopy[1] == std::pair<int, FgAbelianGroup>{2, FgAbelianGroup::free(1)});
  CHECK(u.higher_vanish);

  const auto gl = stable_moduli_facts(StableTarget::GL, 2);
  REQUIRE(gl.homotopy.size() == 1);
  CHECK(gl.homotopy[0] == std::pair<int, FgAbelianGroup>{1, FgAbelianGroup::free(4)});
  CHECK_FALSE(gl.higher_vanish);
  CHECK(gl.homotopy_type.empty());

  CHECK(parse_stable_target("U") == StableTarget::U);
  CHECK_THROWS_AS(parse_stable_target("PSU"), Error);
  CHECK_THROWS_AS(stable_moduli_facts(StableTarget::SU, 0), Error);
}

TEST_CASE("report invariants over a grid") {
  for (const char* gname : kGroups)
    for (const char* tname : kTargets) {
      const auto r = analyze(std_group(gname), named_group(tname), gname, tname);
      check_field(r.pi0_hom);
      check_field(r.pi0_moduli);
      check_field(r.pi1_moduli);
      for (const auto& c : r.citations) CHECK(in_table(c));
      // Report citations collect every field's citations, in table order.
      std::vector<std::size_t> positions;
      for (const auto& c : r.citations) {
        const auto& t = citation_table();
        positions.push_back(std::find(t.begin(), t.end(), c) - t.begin());
      }
      CHECK(std::is_sorted(positions.begin(), positions.end()));
      for (const auto* f : {&r.pi0_hom, &r.pi0_moduli, &r.pi1_moduli})
        for (const auto& c : f->citations)
          CHECK(std::find(r.citations.begin(), r.citations.end(), c) != r.citations.end());
      const bool torsion_free = pi1_is_torsion_free(named_group(tname));
      CHECK(r.covering.has_value() == torsion_free);
      CHECK(r.hypothesis_failures.empty() == (torsion_free && r.pi1_moduli.known));
      if (r.real_reductive) CHECK(r.pi1_moduli.known);
    }
}

TEST_CASE("analyze examples") {
  SUBCASE("surface into GL") {
    const auto r = analyze(std_group("surface 2"), named_group("GL 3"), "surface 2", "GL 3");
    CHECK(*r.pi1_moduli.group == FgAbelianGroup::free(4));
    CHECK(r.hypothesis_failures.empty());
    CHECK(r.covering->deck == FgAbelianGroup::free(4));
    CHECK_FALSE(r.real_reductive);
  }
  SUBCASE("free group into PSU(2)") {
    const auto r = analyze(std_group("free 2"), named_group("PSU 2"), "free 2", "PSU 2");
    CHECK_FALSE(r.pi1_moduli.known);
    CHECK_FALSE(r.covering.has_value());
    CHECK_FALSE(r.hypothesis_failures.empty());
    CHECK(std::find(r.citations.begin(), r.citations.end(), citation(CitationId::TorsionCounterexample)) !=
          r.citations.end());
  }
  SUBCASE("Z^3 into SU(2)") {
    const auto r = analyze(std_group("free_abelian 3"), named_group("SU 2"), "free_abelian 3", "SU 2");
    CHECK(r.pi1_moduli.group->is_trivial());
    CHECK(cites(r.pi1_moduli, CitationId::FreeAbelianOrthogonalFree));
    CHECK(*r.pi0_hom.count == 1);
  }
  SUBCASE("free groups have connected representation spaces") {
    const auto r = analyze(std_group("free 2"), named_group("PSU 2"), "free 2", "PSU 2");
    CHECK(*r.pi0_hom.count == 1);
    CHECK(*r.pi0_moduli.count == 1);
  }
  SUBCASE("compact surfaces count components by pi1 of the derived group") {
    const auto r = analyze(std_group("surface 2"), named_group("PU 3"), "surface 2", "PU 3");
    CHECK(*r.pi0_hom.count == 3);
    CHECK(*r.pi0_moduli.count == 3);
  }
  SUBCASE("deterministic") {
    const auto a = analyze(std_group("surface 2"), named_group("U 2"), "surface 2", "U 2");
    const auto b = analyze(std_group("surface 2"), named_group("U 2"), "surface 2", "U 2");
    CHECK(a == b);
  }
}
