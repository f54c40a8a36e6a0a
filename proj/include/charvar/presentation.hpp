#pragma once

// Finitely presented groups: words, the text format, abelianization and the
// exponent-canceling test.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "charvar/zmodule.hpp"

namespace charvar {

struct Letter {
  std::size_t generator = 0;
  int exponent = 1;  // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A word in the free group, always stored freely reduced.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);

  static Word generator(std::size_t index, int exponent = 1);
  static Word commutator(const Word& x, const Word& y);

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  Word inverse() const;
  Word power(long exponent) const;
  Word operator*(const Word& rhs) const;

  /// Net exponent of each generator; `generator_count` sizes the result.
  std::vector<long> exponent_sums(std::size_t generator_count) const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

class Presentation {
 public:
  Presentation() = default;
  /// Throws InvalidParameter on duplicate/empty names, UnknownGenerator on
  /// relators that reference a generator index out of range.
  Presentation(std::vector<std::string> generator_names, std::vector<Word> relators);

  const std::vector<std::string>& generator_names() const noexcept { return names_; }
  const std::vector<Word>& relators() const noexcept { return relators_; }
  std::size_t generator_count() const noexcept { return names_.size(); }

  std::optional<std::size_t> generator_index(std::string_view name) const;

  /// Renders in the text format accepted by parse_presentation().
  std::string to_text() const;
  std::string word_to_text(const Word& w) const;

  /// Free product of the two groups (generators of `other` are renamed on clash).
  Presentation free_product(const Presentation& other) const;
  /// Direct product: free product plus commutators between the two generator sets.
  Presentation direct_product(const Presentation& other) const;

  friend bool operator==(const Presentation&, const Presentation&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<Word> relators_;
};

/// Text format:
///
///     gens a b c ;
///     rel [a,b] ;
///     rel a b a^-1 b^-1 c^2 ;
///
/// Juxtaposition is product, `^n` / `^-n` are powers, `[x,y]` is x y x^-1 y^-1,
/// parentheses group. `#` starts a comment running to end of line.
Presentation parse_presentation(std::string_view text);

/// Entry (i, j) is the net exponent of generator j in relator i. Its
/// cokernel is the abelianization.
IntMatrix abelianization_matrix(const Presentation& p);

struct ExponentCanceling {
  bool flag = false;
  std::optional<std::size_t> rank;
};

ExponentCanceling is_exponent_canceling(const Presentation& p);

/// Standard group families.
enum class GroupFamily { Free, FreeAbelian, Surface, CentralExtSurface, Raag };

struct GroupKind {
  GroupFamily family = GroupFamily::Free;
  std::size_t parameter = 0;  // r, g, or vertex count for a RAAG
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // RAAG only, 0-based

  /// Parses "free 2", "free_abelian 3", "surface 2", "central_ext_surface 1",
  /// "raag 3 1-2 2-3" (1-based vertex labels in edges).
  static GroupKind parse(std::string_view text);
  std::string to_string() const;
};

/// The standard presentation of the requested group. Surface generators are
/// ordered a1 b1 a2 b2 ...; the central extension appends z.
Presentation standard_group(const GroupKind& kind);

/// Presentation-shape classes used by the theorem engine.
enum class GroupClass { Free, FreeAbelian, Surface, Other };

struct ClassTag {
  GroupClass cls = GroupClass::Other;
  std::size_t parameter = 0;  // r for free / free abelian, g for surface

  static ClassTag parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const ClassTag&, const ClassTag&) = default;
};

/// Every tag under which the presentation is recognized structurally as a
/// standard shape. Free of rank 1 is also free abelian of rank 1, and the
/// genus-1 surface is also free abelian of rank 2.
std::vector<ClassTag> recognize_class(const Presentation& p);

}  // namespace charvar
