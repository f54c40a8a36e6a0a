#include <doctest.h>

#include <random>

#include "charvar/errors.hpp"
#include "charvar/presentation.hpp"

using namespace charvar;

namespace {

Presentation std_group(const char* spec) { return standard_group(GroupKind::parse(spec)); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::FormatError;
}

Word random_word(std::mt19937_64& rng, std::size_t gens, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len), g(0, gens - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  std::vector<Letter> letters;
  for (std::size_t i = len(rng); i > 0; --i) letters.push_back({g(rng), sign(rng) ? 1 : -1});
  return Word(letters);
}

}  // namespace

TEST_CASE("parse fixtures") {
  const Presentation z2 = parse_presentation("gens a b; rel [a,b];");
  CHECK(z2.generator_names() == std::vector<std::string>{"a", "b"});
  REQUIRE(z2.relators().size() == 1);
  CHECK(z2.relators()[0] == Word({{0, 1}, {1, 1}, {0, -1}, {1, -1}}));

  const Presentation s2 = parse_presentation("gens a1 b1 a2 b2; rel [a1,b1][a2,b2];");
  CHECK(s2.generator_count() == 4);
  CHECK(s2.relators()[0].length() == 8);
  CHECK(is_exponent_canceling(s2).flag);

  CHECK(kind_of([] { parse_presentation("gens a; rel b;"); }) == ErrorKind::UnknownGenerator);
}

TEST_CASE("parse grammar details") {
  const Presentation p = parse_presentation(
      "# comment line\n"
      "gens x y ;\n"
      "rel x^3 ;  # trailing comment\n"
      "rel (x y)^-2 ;\n"
      "rel x x^-1 ;\n"
      "rel 1 ;\n");
  REQUIRE(p.relators().size() == 4);
  CHECK(p.relators()[0] == Word::generator(0).power(3));
  CHECK(p.relators()[1] == Word({{1, -1}, {0, -1}, {1, -1}, {0, -1}}));
  CHECK(p.relators()[2].empty());
  CHECK(p.relators()[3].empty());
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse_presentation("gens a b;\nrel a ^ ;");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() > 1);
  }
  CHECK(kind_of([] { parse_presentation("gens a a;"); }) != ErrorKind::UnknownGenerator);
  CHECK(kind_of([] { parse_presentation("rel a;"); }) == ErrorKind::SyntaxError);
  CHECK(kind_of([] { parse_presentation("gens a; rel [a;"); }) == ErrorKind::SyntaxError);
  CHECK(kind_of([] { parse_presentation("gens a; rel a"); }) == ErrorKind::SyntaxError);
}

TEST_CASE("words are freely reduced") {
  const Word w({{0, 1}, {1, 1}, {1, -1}, {0, -1}, {2, 1}});
  CHECK(w == Word::generator(2));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const Word x = random_word(rng, 3, 12);
    CHECK(Word(x.letters()) == x);
    CHECK((x * x.inverse()).empty());
    for (std::size_t k = 0; k + 1 < x.length(); ++k) {
      const auto& a = x.letters()[k];
      const auto& b = x.letters()[k + 1];
      CHECK_FALSE((a.generator == b.generator && a.exponent == -b.exponent));
    }
  }
}

TEST_CASE("print then parse is the identity") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 100; ++i) {
    std::vector<Word> rels;
    for (int r = 0; r < 3; ++r) rels.push_back(random_word(rng, 3, 10));
    const Presentation p({"a", "b", "c"}, rels);
    CHECK(parse_presentation(p.to_text()) == p);
  }
  for (const char* spec : {"free 0", "free 3", "free_abelian 3", "surface 2", "central_ext_surface 2", "raag 3 1-2 2-3"}) {
    const Presentation p = std_group(spec);
    CHECK(parse_presentation(p.to_text()) == p);
  }
}

TEST_CASE("abelianization matrix") {
  const IntMatrix s3 = abelianization_matrix(std_group("surface 3"));
  CHECK(s3.rows() == 1);
  CHECK(s3.cols() == 6);
  CHECK(s3.is_zero());
  CHECK(cokernel(s3) == FgAbelianGroup::free(6));

  CHECK(abelianization_matrix(parse_presentation("gens a; rel a^2;")) == IntMatrix{{2}});
  CHECK(cokernel(abelianization_matrix(parse_presentation("gens a; rel a^2;"))) == FgAbelianGroup::cyclic(2));
  CHECK(abelianization_matrix(parse_presentation("gens a b; rel a b a b^-1;")) == IntMatrix{{2, 0}});
}

TEST_CASE("exponent canceling") {
  const auto s = is_exponent_canceling(std_group("surface 2"));
  CHECK(s.flag);
  CHECK(s.rank == 4u);
  const auto k = is_exponent_canceling(parse_presentation("gens a b; rel a b a b^-1;"));
  CHECK_FALSE(k.flag);
  CHECK_FALSE(k.rank.has_value());
  const auto f = is_exponent_canceling(std_group("free 3"));
  CHECK(f.flag);
  CHECK(f.rank == 3u);
}

TEST_CASE("standard groups") {
  const Presentation z3 = std_group("free_abelian 3");
  CHECK(z3.generator_count() == 3);
  CHECK(z3.relators().size() == 3);
  CHECK(z3.relators()[0] == Word::commutator(Word::generator(0), Word::generator(1)));
  CHECK(z3.relators()[1] == Word::commutator(Word::generator(0), Word::generator(2)));
  CHECK(z3.relators()[2] == Word::commutator(Word::generator(1), Word::generator(2)));

  const Presentation s1 = std_group("surface 1");
  CHECK(s1.generator_count() == 2);
  CHECK(s1.relators() == std::vector<Word>{Word::commutator(Word::generator(0), Word::generator(1))});

  const Presentation path = std_group("raag 3 1-2 2-3");
  CHECK(path.relators().size() == 2);
  CHECK(path.relators()[0] == Word::commutator(Word::generator(0), Word::generator(1)));
  CHECK(path.relators()[1] == Word::commutator(Word::generator(1), Word::generator(2)));

  const Presentation ce = std_group("central_ext_surface 2");
  CHECK(ce.generator_count() == 5);
  CHECK(ce.relators().size() == 5);

  for (const char* spec : {"free 0", "free 4", "free_abelian 4", "surface 3", "raag 4 1-2 3-4 1-4"}) {
    CHECK(is_exponent_canceling(std_group(spec)).flag);
  }

  CHECK(kind_of([] { std_group("surface 0"); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([] { std_group("central_ext_surface 0"); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([] { std_group("raag 3 1-1"); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([] { std_group("raag 3 1-4"); }) == ErrorKind::InvalidParameter);
  CHECK(kind_of([] { std_group("raag 3 1-2 2-1"); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("exponent canceling is closed under free and direct products") {
  const char* specs[] = {"free 2", "free_abelian 2", "surface 2", "raag 3 1-2", "free 0"};
  for (const char* x : specs) {
    for (const char* y : specs) {
      const Presentation a = std_group(x);
      const Presentation b = std_group(y);
      const Presentation fp = a.free_product(b);
      const Presentation dp = a.direct_product(b);
      CHECK(is_exponent_canceling(fp).flag);
      CHECK(is_exponent_canceling(dp).flag);
      CHECK(is_exponent_canceling(dp).rank == a.generator_count() + b.generator_count());
      CHECK(cokernel(abelianization_matrix(dp)) == FgAbelianGroup::free(a.generator_count() + b.generator_count()));
    }
  }
}

TEST_CASE("central extension of a surface group") {
  // The literal presentation keeps z with relator z^-1 prod[a_i,b_i], which has
  // nonzero z exponent; substituting z gives an exponent-canceling one of rank 2g.
  for (std::size_t g = 1; g <= 3; ++g) {
    const Presentation lit = standard_group({GroupFamily::CentralExtSurface, g, {}});
    CHECK(lit.generator_count() == 2 * g + 1);
    CHECK(lit.relators().size() == 2 * g + 1);
    CHECK_FALSE(is_exponent_canceling(lit).flag);
    CHECK(cokernel(abelianization_matrix(lit)) == FgAbelianGroup::free(2 * g));

    Word product;
    for (std::size_t i = 0; i < g; ++i)
      product = product * Word::commutator(Word::generator(2 * i), Word::generator(2 * i + 1));
    std::vector<Word> rels;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < 2 * g; ++i) {
      names.push_back(lit.generator_names()[i]);
      rels.push_back(Word::commutator(product, Word::generator(i)));
    }
    const auto e = is_exponent_canceling(Presentation(names, rels));
    CHECK(e.flag);
    CHECK(e.rank == 2 * g);
  }
}

TEST_CASE("exponent canceling implies free abelianization of full rank") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    std::vector<Word> rels;
    for (int r = 0; r < 2; ++r) {
      const Word w = random_word(rng, 3, 6);
      rels.push_back(i % 2 ? Word::commutator(w, random_word(rng, 3, 4)) : w);
    }
    const Presentation p({"a", "b", "c"}, rels);
    const auto e = is_exponent_canceling(p);
    if (e.flag) CHECK(cokernel(abelianization_matrix(p)) == FgAbelianGroup::free(*e.rank));
  }
}

TEST_CASE("class recognition") {
  auto has = [](const Presentation& p, const char* tag) {
    const auto tags = recognize_class(p);
    return std::find(tags.begin(), tags.end(), ClassTag::parse(tag)) != tags.end();
  };
  CHECK(has(std_group("free 3"), "free 3"));
  CHECK(has(std_group("free_abelian 3"), "free_abelian 3"));
  CHECK(has(std_group("surface 2"), "surface 2"));
  CHECK(has(std_group("surface 1"), "free_abelian 2"));
  CHECK(has(std_group("free_abelian 2"), "surface 1"));
  CHECK(has(std_group("free 1"), "free_abelian 1"));
  CHECK(recognize_class(std_group("central_ext_surface 2")).empty());
  CHECK(recognize_class(parse_presentation("gens a; rel a^2;")).empty());
  CHECK(has(parse_presentation("gens p q r; rel [p,q]; rel [p,r]; rel [q,r];"), "free_abelian 3"));
}
