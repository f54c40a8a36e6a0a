#pragma once

// Compact and complex reductive groups presented as (T^k x G_1 x ... x G_l) / Z,
// with G_i simply connected simple and Z a finite central subgroup given by
// independent cyclic generators.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "charvar/zmodule.hpp"

namespace charvar {

using Rational = mpq_class;

enum class LieFamily { A, B, C, D, E6, E7, E8, F4, G2 };

/// Simply connected simple group by Cartan type.
///
/// Centers and the labels used for their elements:
///   A_n: Z/(n+1), label k <-> exp(2 pi i k/(n+1)) I in SU(n+1)
///   B_n, C_n, E7: Z/2
///   D_n, n odd: Z/4
///   D_n, n even: Z/2 x Z/2, label s:v with v = 1 on the vector class -I;
///     which half-spin class is s = 1 is a fixed, arbitrary convention
///   E6: Z/3
///   E8, F4, G2: trivial
class SimpleType {
 public:
  SimpleType(LieFamily family, int rank);

  LieFamily family() const noexcept { return family_; }
  int rank() const noexcept { return rank_; }

  /// Moduli of the cyclic decomposition of the center (empty when trivial).
  std::vector<long> center_moduli() const;
  FgAbelianGroup center() const;

  /// "A 2", "E 6", ...
  std::string to_string() const;
  static SimpleType parse(std::string_view text);

  friend bool operator==(const SimpleType&, const SimpleType&) = default;

 private:
  LieFamily family_;
  int rank_;
};

/// An element of the center of a simple factor, as residues against
/// center_moduli().
using CenterLabel = std::vector<long>;

struct CentralElement {
  std::vector<Rational> torus_part;         // length k, entries in [0, 1)
  std::vector<CenterLabel> factor_parts;    // one per simple factor

  friend bool operator==(const CentralElement&, const CentralElement&) = default;
};

struct CentralGenerator {
  CentralElement element;
  long order = 1;

  friend bool operator==(const CentralGenerator&, const CentralGenerator&) = default;
};

enum class GroupField { Compact, Complex };

class ReductiveDescriptor {
 public:
  ReductiveDescriptor() = default;
  /// Normalizes torus parts into [0, 1) and residues into range, then
  /// validates: throws DescriptorInvalid if a stated order is wrong or the
  /// generators are not independent.
  ReductiveDescriptor(GroupField field, std::size_t torus_rank, std::vector<SimpleType> factors,
                      std::vector<CentralGenerator> central_generators);

  GroupField field() const noexcept { return field_; }
  std::size_t torus_rank() const noexcept { return torus_rank_; }
  const std::vector<SimpleType>& factors() const noexcept { return factors_; }
  const std::vector<CentralGenerator>& central_generators() const noexcept { return generators_; }

  /// Z as an abstract group.
  FgAbelianGroup central_subgroup() const;

  /// Direct product; both operands must share a field.
  ReductiveDescriptor product(const ReductiveDescriptor& other) const;

  /// Descriptor file text; parse_descriptor() inverts it.
  std::string to_text() const;

  friend bool operator==(const ReductiveDescriptor&, const ReductiveDescriptor&) = default;

 private:
  GroupField field_ = GroupField::Compact;
  std::size_t torus_rank_ = 0;
  std::vector<SimpleType> factors_;
  std::vector<CentralGenerator> generators_;
};

/// Descriptor file format, one directive per line, `#` comments:
///
///     field compact
///     torus 1
///     factor A 1
///     central order=2 torus=1/2 parts=1
///
/// `torus=` takes k comma-separated rationals, `parts=` one label per simple
/// factor separated by commas; a D_even label is written `s:v`.
ReductiveDescriptor parse_descriptor(std::string_view text);

/// Order of an element of (Q/Z)^k x prod center(G_i).
long element_order(const CentralElement& e, const std::vector<SimpleType>& factors);

/// pi_1(G), the kernel of the universal cover.
FgAbelianGroup pi1(const ReductiveDescriptor& g);

/// pi_1(DG): the elements of Z with trivial torus part.
FgAbelianGroup pi1_derived(const ReductiveDescriptor& g);

bool pi1_is_torsion_free(const ReductiveDescriptor& g);

/// DG is a product of simply connected type-A and type-C factors.
bool is_orthogonal_free(const ReductiveDescriptor& g);

struct UniversalCover {
  GroupField field = GroupField::Compact;
  std::size_t torus_rank = 0;
  std::vector<SimpleType> factors;
  FgAbelianGroup kernel;
};

UniversalCover universal_cover(const ReductiveDescriptor& g);

/// "U 3", "SU 2", "PSU 2", "PU 4", "GL 3", "SL 2", "PGL 3", "SO3", "torus 2",
/// "ctorus 2" (complex torus), and products joined by " x ".
ReductiveDescriptor named_group(std::string_view name);

/// Structural recognition used by the surface-group dispatch: the compact
/// groups isomorphic to U(n) or SU(n) in this presentation style.
struct UnitaryMatch {
  bool unitary = false;       // U(n)
  bool special = false;       // SU(n)
  int n = 0;
};

UnitaryMatch match_unitary(const ReductiveDescriptor& g);

}  // namespace charvar
