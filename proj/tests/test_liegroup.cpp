#include <doctest.h>

#include <numeric>
#include <random>

#include "charvar/errors.hpp"
#include "charvar/liegroup.hpp"
#include "oracles.hpp"

using namespace charvar;

namespace {

std::vector<long> torsion_of(const FgAbelianGroup& g) {
  std::vector<long> out;
  for (const auto& t : g.torsion()) out.push_back(t.get_si());
  return out;
}

// Invariant factors of the relation matrix of pi1 built straight from the
// descriptor data, via gcd of minors: columns e_1..e_k, z_1..z_m.
FgAbelianGroup pi1_by_minors(const ReductiveDescriptor& g) {
  const std::size_t k = g.torus_rank();
  const auto& gens = g.central_generators();
  IntMatrix rel(gens.size(), k + gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    for (std::size_t i = 0; i < k; ++i) {
      mpq_class v = gens[j].element.torus_part[i] * gens[j].order;
      v.canonicalize();
      REQUIRE(v.get_den() == 1);
      rel(j, i) = -v.get_num();
    }
    rel(j, k + j) = gens[j].order;
  }
  const auto factors = oracle::invariant_factors_by_minors(rel);
  std::vector<Integer> torsion;
  for (const auto& f : factors)
    if (f != 1) torsion.push_back(f);
  return FgAbelianGroup(rel.cols() - factors.size(), torsion);
}

// Elements of Z = sum Z/o_j whose torus part vanishes, bucketed by order.
std::map<long, long> derived_histogram_by_enumeration(const ReductiveDescriptor& g) {
  std::vector<long> orders;
  for (const auto& gen : g.central_generators()) orders.push_back(gen.order);
  std::map<long, long> hist;
  for (const auto& a : oracle::elements(orders)) {
    bool torus_trivial = true;
    for (std::size_t i = 0; i < g.torus_rank(); ++i) {
      mpq_class t = 0;
      for (std::size_t j = 0; j < a.size(); ++j) t += g.central_generators()[j].element.torus_part[i] * a[j];
      t.canonicalize();
      if (t.get_den() != 1) torus_trivial = false;
    }
    if (!torus_trivial) continue;
    long ord = 1;
    for (std::size_t j = 0; j < a.size(); ++j) ord = std::lcm(ord, orders[j] / std::gcd(orders[j], a[j]));
    ++hist[ord];
  }
  return hist;
}

long label_order(const CenterLabel& label, const std::vector<long>& moduli) {
  long ord = 1;
  for (std::size_t i = 0; i < moduli.size(); ++i) ord = std::lcm(ord, moduli[i] / std::gcd(moduli[i], label[i]));
  return ord;
}

const SimpleType kPool[] = {
    {LieFamily::A, 1}, {LieFamily::A, 2}, {LieFamily::A, 3}, {LieFamily::A, 5}, {LieFamily::B, 3},
    {LieFamily::C, 2}, {LieFamily::D, 4}, {LieFamily::D, 5}, {LieFamily::E6, 6}, {LieFamily::G2, 2},
};

std::optional<ReductiveDescriptor> random_descriptor(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> k_dist(0, 2), f_count(0, 2), pick(0, std::size(kPool) - 1), m_dist(0, 2);
  std::uniform_int_distribution<long> den(1, 6), any(0, 1000);
  const std::size_t k = k_dist(rng);
  std::vector<SimpleType> factors;
  for (std::size_t i = f_count(rng); i > 0; --i) factors.push_back(kPool[pick(rng)]);
  std::vector<CentralGenerator> gens;
  for (std::size_t j = m_dist(rng); j > 0; --j) {
    CentralElement e;
    long ord = 1;
    for (std::size_t i = 0; i < k; ++i) {
      const long d = den(rng);
      mpq_class q(any(rng) % d, d);
      q.canonicalize();
      ord = std::lcm(ord, q.get_den().get_si());
      e.torus_part.push_back(q);
    }
    for (const auto& f : factors) {
      CenterLabel label;
      for (long m : f.center_moduli()) label.push_back(any(rng) % m);
      ord = std::lcm(ord, label_order(label, f.center_moduli()));
      e.factor_parts.push_back(label);
    }
    CHECK(element_order(e, factors) == ord);
    if (ord == 1) continue;
    gens.push_back({e, ord});
  }
  try {
    return ReductiveDescriptor(GroupField::Compact, k, factors, gens);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DescriptorInvalid);
    return std::nullopt;
  }
}

}  // namespace

TEST_CASE("simple type centers") {
  CHECK(SimpleType(LieFamily::A, 1).center_moduli() == std::vector<long>{2});
  CHECK(SimpleType(LieFamily::A, 4).center_moduli() == std::vector<long>{5});
  CHECK(SimpleType(LieFamily::B, 3).center_moduli() == std::vector<long>{2});
  CHECK(SimpleType(LieFamily::C, 3).center_moduli() == std::vector<long>{2});
  CHECK(SimpleType(LieFamily::D, 5).center_moduli() == std::vector<long>{4});
  CHECK(SimpleType(LieFamily::D, 4).center_moduli() == std::vector<long>{2, 2});
  CHECK(SimpleType(LieFamily::E6, 6).center_moduli() == std::vector<long>{3});
  CHECK(SimpleType(LieFamily::E7, 7).center_moduli() == std::vector<long>{2});
  CHECK(SimpleType(LieFamily::E8, 8).center_moduli().empty());
  CHECK(SimpleType(LieFamily::F4, 4).center_moduli().empty());
  CHECK(SimpleType(LieFamily::G2, 2).center_moduli().empty());
  CHECK(SimpleType::parse("D 4") == SimpleType(LieFamily::D, 4));
  CHECK(SimpleType::parse("E 6").to_string() == "E 6");
  CHECK_THROWS_AS(SimpleType(LieFamily::E6, 5), Error);
  CHECK_THROWS_AS(SimpleType(LieFamily::D, 2), Error);
}

TEST_CASE("pi1 of named unitary groups") {
  for (long n = 1; n <= 6; ++n) {
    const std::string ns = std::to_string(n);
    const auto u = named_group("U " + ns);
    const auto su = named_group("SU " + ns);
    const auto psu = named_group("PSU " + ns);
    CHECK(pi1(u) == FgAbelianGroup::free(1));
    CHECK(pi1_by_minors(u) == FgAbelianGroup::free(1));
    CHECK(pi1(su).is_trivial());
    CHECK(pi1(psu) == FgAbelianGroup::from_cyclic(0, {n}));
    CHECK(pi1_by_minors(psu) == pi1(psu));
    CHECK(pi1_derived(u).is_trivial());
    CHECK(pi1_derived(psu) == pi1(psu));
    CHECK(match_unitary(u).unitary);
    CHECK(match_unitary(u).n == n);
    CHECK(match_unitary(su).special);
    CHECK(match_unitary(su).n == n);
    if (n > 1) {
      CHECK_FALSE(match_unitary(psu).unitary);
      CHECK_FALSE(match_unitary(psu).special);
    }
    CHECK(pi1(named_group("GL " + ns)) == pi1(u));
    CHECK(named_group("GL " + ns).field() == GroupField::Complex);
    CHECK(pi1(named_group("PGL " + ns)) == pi1(psu));
  }
  CHECK(named_group("SO3") == named_group("PSU 2"));
  CHECK(pi1(named_group("torus 3")) == FgAbelianGroup::free(3));
  CHECK(named_group("U3") == named_group("U 3"));
}

TEST_CASE("U(2) descriptor") {
  const auto u2 = named_group("U 2");
  CHECK(u2.torus_rank() == 1);
  CHECK(u2.factors() == std::vector<SimpleType>{SimpleType(LieFamily::A, 1)});
  REQUIRE(u2.central_generators().size() == 1);
  CHECK(u2.central_generators()[0].order == 2);
  CHECK(u2.central_generators()[0].element.torus_part[0] == mpq_class(1, 2));
  CHECK(u2.central_generators()[0].element.factor_parts[0] == CenterLabel{1});
}

TEST_CASE("descriptor corpus: torsion of pi1 is pi1 of the derived group") {
  std::mt19937_64 rng(21);
  int accepted = 0;
  for (int trial = 0; trial < 400 && accepted < 120; ++trial) {
    const auto g = random_descriptor(rng);
    if (!g) continue;
    ++accepted;
    const auto p = pi1(*g);
    CHECK(p.free_rank() == g->torus_rank());
    CHECK(p == pi1_by_minors(*g));
    CHECK(FgAbelianGroup(0, p.torsion()) == pi1_derived(*g));
    CHECK(oracle::order_histogram(torsion_of(pi1_derived(*g))) == derived_histogram_by_enumeration(*g));
    CHECK(pi1_is_torsion_free(*g) == p.torsion().empty());
    if (is_orthogonal_free(*g)) CHECK(pi1_is_torsion_free(*g));
    CHECK(universal_cover(*g).kernel == p);
    CHECK(parse_descriptor(g->to_text()) == *g);
  }
  CHECK(accepted >= 50);
}

TEST_CASE("pi1 is additive over products") {
  const char* names[] = {"U 2", "SU 3", "PSU 2", "PU 3", "torus 1", "U 4", "PSU 4"};
  for (const char* a : names) {
    for (const char* b : names) {
      const auto ga = named_group(a);
      const auto gb = named_group(b);
      const auto prod = ga.product(gb);
      CHECK(pi1(prod) == pi1(ga).direct_sum(pi1(gb)));
      CHECK(pi1_derived(prod) == pi1_derived(ga).direct_sum(pi1_derived(gb)));
      CHECK(named_group(std::string(a) + " x " + b) == prod);
    }
  }
  CHECK_THROWS_AS(named_group("U 2").product(named_group("GL 2")), Error);
}

TEST_CASE("orthogonal freeness") {
  CHECK(is_orthogonal_free(named_group("SU 2")));
  CHECK(is_orthogonal_free(named_group("U 3")));
  CHECK_FALSE(is_orthogonal_free(named_group("PSU 2")));
  const ReductiveDescriptor spin(GroupField::Compact, 0, {SimpleType(LieFamily::B, 3)}, {});
  CHECK_FALSE(is_orthogonal_free(spin));
  CHECK(pi1_is_torsion_free(spin));
  const ReductiveDescriptor sp(GroupField::Compact, 0, {SimpleType(LieFamily::C, 2)}, {});
  CHECK(is_orthogonal_free(sp));
}

TEST_CASE("descriptor validation") {
  auto kind = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::FormatError;
  };
  const SimpleType a1(LieFamily::A, 1);
  // Stated order does not match.
  CHECK(kind([&] { ReductiveDescriptor(GroupField::Compact, 0, {a1}, {{{{}, {{1}}}, 3}}); }) ==
        ErrorKind::DescriptorInvalid);
  // Two copies of the same generator are dependent.
  CHECK(kind([&] {
          ReductiveDescriptor(GroupField::Compact, 0, {a1}, {{{{}, {{1}}}, 2}, {{{}, {{1}}}, 2}});
        }) == ErrorKind::DescriptorInvalid);
  // Wrong label arity, wrong torus length.
  CHECK(kind([&] { ReductiveDescriptor(GroupField::Compact, 0, {a1}, {{{{}, {{1, 0}}}, 2}}); }) ==
        ErrorKind::DescriptorInvalid);
  CHECK(kind([&] {
          ReductiveDescriptor(GroupField::Compact, 1, {a1}, {{{{mpq_class(1, 2), mpq_class(1, 2)}, {{1}}}, 2}});
        }) ==
        ErrorKind::DescriptorInvalid);

  CHECK(kind([] { parse_descriptor("torus 1\n"); }) == ErrorKind::FormatError);
  CHECK(kind([] { parse_descriptor("field compact\nfactor A 1\ncentral order=3 parts=1\n"); }) ==
        ErrorKind::DescriptorInvalid);
  CHECK(kind([] { named_group("Sp 2"); }) == ErrorKind::InvalidParameter);
  CHECK(kind([] { named_group("U 0"); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("descriptor text round trip") {
  const char* text =
      "# U(2)\n"
      "field compact\n"
      "torus 1\n"
      "factor A 1\n"
      "central order=2 torus=1/2 parts=1\n";
  const auto g = parse_descriptor(text);
  CHECK(g == named_group("U 2"));
  CHECK(parse_descriptor(g.to_text()) == g);

  const auto spin8 = parse_descriptor("field complex\nfactor D 4\ncentral order=2 parts=0:1\n");
  CHECK(spin8.field() == GroupField::Complex);
  CHECK(pi1(spin8) == FgAbelianGroup::cyclic(2));
  CHECK(parse_descriptor(spin8.to_text()) == spin8);

  for (const char* n : {"U 3 x PSU 2", "GL 2 x SL 3", "torus 2 x SU 2", "PU 4"}) {
    const auto d = named_group(n);
    CHECK(parse_descriptor(d.to_text()) == d);
  }
}
