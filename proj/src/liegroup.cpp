#include "charvar/liegroup.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "charvar/errors.hpp"

namespace charvar {

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> words(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

long positive_mod(long a, long m) {
  const long r = a % m;
  return r < 0 ? r + m : r;
}

Rational frac_part(const Rational& x) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Rational r = x - Rational(fl);
  r.canonicalize();
  return r;
}

long parse_long(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::InvalidParameter, std::string("bad ") + what + " '" + s + "'");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// SimpleType

SimpleType::SimpleType(LieFamily family, int rank) : family_(family), rank_(rank) {
  bool ok = rank >= 1;
  switch (family) {
    case LieFamily::A:
    case LieFamily::B:
    case LieFamily::C: break;
    case LieFamily::D: ok = rank >= 3; break;
    case LieFamily::E6: ok = rank == 6; break;
    case LieFamily::E7: ok = rank == 7; break;
    case LieFamily::E8: ok = rank == 8; break;
    case LieFamily::F4: ok = rank == 4; break;
    case LieFamily::G2: ok = rank == 2; break;
  }
  if (!ok) throw Error(ErrorKind::InvalidParameter, "invalid rank " + std::to_string(rank) + " for type " + to_string());
}

std::vector<long> SimpleType::center_moduli() const {
  switch (family_) {
    case LieFamily::A: return {rank_ + 1L};
    case LieFamily::B:
    case LieFamily::C:
    case LieFamily::E7: return {2};
    case LieFamily::D: return rank_ % 2 == 1 ? std::vector<long>{4} : std::vector<long>{2, 2};
    case LieFamily::E6: return {3};
    case LieFamily::E8:
    case LieFamily::F4:
    case LieFamily::G2: return {};
  }
  return {};
}

FgAbelianGroup SimpleType::center() const {
  std::vector<Integer> orders;
  for (long m : center_moduli()) orders.emplace_back(m);
  return FgAbelianGroup::from_cyclic(0, orders);
}

std::string SimpleType::to_string() const {
  switch (family_) {
    case LieFamily::A: return "A " + std::to_string(rank_);
    case LieFamily::B: return "B " + std::to_string(rank_);
    case LieFamily::C: return "C " + std::to_string(rank_);
    case LieFamily::D: return "D " + std::to_string(rank_);
    case LieFamily::E6: return "E 6";
    case LieFamily::E7: return "E 7";
    case LieFamily::E8: return "E 8";
    case LieFamily::F4: return "F 4";
    case LieFamily::G2: return "G 2";
  }
  return "?";
}

SimpleType SimpleType::parse(std::string_view text) {
  std::string compact;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  if (compact.size() < 2) throw Error(ErrorKind::InvalidParameter, "bad simple type '" + std::string(text) + "'");
  const char fam = static_cast<char>(std::toupper(static_cast<unsigned char>(compact[0])));
  const int rank = static_cast<int>(parse_long(compact.substr(1), "simple type rank"));
  switch (fam) {
    case 'A': return {LieFamily::A, rank};
    case 'B': return {LieFamily::B, rank};
    case 'C': return {LieFamily::C, rank};
    case 'D': return {LieFamily::D, rank};
    case 'E':
      if (rank == 6) return {LieFamily::E6, 6};
      if (rank == 7) return {LieFamily::E7, 7};
      if (rank == 8) return {LieFamily::E8, 8};
      break;
    case 'F': return {LieFamily::F4, rank};
    case 'G': return {LieFamily::G2, rank};
    default: break;
  }
  throw Error(ErrorKind::InvalidParameter, "bad simple type '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Central elements

long element_order(const CentralElement& e, const std::vector<SimpleType>& factors) {
  long order = 1;
  for (const auto& x : e.torus_part) {
    Rational r = frac_part(x);
    order = std::lcm(order, r.get_den().get_si());
  }
  for (std::size_t f = 0; f < factors.size() && f < e.factor_parts.size(); ++f) {
    const auto moduli = factors[f].center_moduli();
    for (std::size_t c = 0; c < moduli.size() && c < e.factor_parts[f].size(); ++c) {
      const long m = moduli[c];
      const long r = positive_mod(e.factor_parts[f][c], m);
      order = std::lcm(order, m / std::gcd(m, r));
    }
  }
  return order;
}

namespace {

// Coordinates of an element in the finite group (Z/N)^k x prod Z/m, where N
// clears every torus denominator.
std::vector<Integer> finite_coordinates(const CentralElement& e, long n_clear) {
  std::vector<Integer> coords;
  for (const auto& x : e.torus_part) {
    Rational scaled = x * Rational(n_clear);
    scaled.canonicalize();
    coords.push_back(scaled.get_num());
  }
  for (const auto& label : e.factor_parts)
    for (long v : label) coords.emplace_back(v);
  return coords;
}

std::vector<Integer> ambient_moduli(std::size_t k, const std::vector<SimpleType>& factors, long n_clear) {
  std::vector<Integer> moduli(k, Integer(n_clear));
  for (const auto& f : factors)
    for (long m : f.center_moduli()) moduli.emplace_back(m);
  return moduli;
}

}  // namespace

// ---------------------------------------------------------------------------
// ReductiveDescriptor

ReductiveDescriptor::ReductiveDescriptor(GroupField field, std::size_t torus_rank,
                                         std::vector<SimpleType> factors,
                                         std::vector<CentralGenerator> central_generators)
    : field_(field),
      torus_rank_(torus_rank),
      factors_(std::move(factors)),
      generators_(std::move(central_generators)) {
  for (auto& gen : generators_) {
    auto& e = gen.element;
    if (gen.order < 1) throw Error(ErrorKind::DescriptorInvalid, "central generator order must be positive");
    if (e.torus_part.empty() && torus_rank_ > 0) e.torus_part.assign(torus_rank_, Rational(0));
    if (e.factor_parts.empty() && !factors_.empty()) {
      for (const auto& f : factors_) e.factor_parts.emplace_back(f.center_moduli().size(), 0L);
    }
    if (e.torus_part.size() != torus_rank_) {
      throw Error(ErrorKind::DescriptorInvalid, "torus part has wrong length");
    }
    if (e.factor_parts.size() != factors_.size()) {
      throw Error(ErrorKind::DescriptorInvalid, "factor parts do not match the simple factors");
    }
    for (auto& x : e.torus_part) x = frac_part(x);
    for (std::size_t f = 0; f < factors_.size(); ++f) {
      const auto moduli = factors_[f].center_moduli();
      auto& label = e.factor_parts[f];
      if (moduli.empty() && label.size() == 1 && label[0] == 0) label.clear();
      if (label.size() != moduli.size()) {
        throw Error(ErrorKind::DescriptorInvalid, "center label for " + factors_[f].to_string() +
                                                      " needs " + std::to_string(moduli.size()) +
                                                      " component(s)");
      }
      for (std::size_t c = 0; c < moduli.size(); ++c) label[c] = positive_mod(label[c], moduli[c]);
    }
    const long actual = element_order(e, factors_);
    if (actual != gen.order) {
      throw Error(ErrorKind::DescriptorInvalid, "central generator declared with order " +
                                                    std::to_string(gen.order) + " has order " +
                                                    std::to_string(actual));
    }
  }

  // Independence: |<gens>| must equal the product of the orders. With
  // A = (Z/N)^k x prod Z/m, |<gens>| = |A| / |A / <gens>|.
  long n_clear = 1;
  Integer product = 1;
  for (const auto& gen : generators_) {
    n_clear = std::lcm(n_clear, gen.order);
    product *= gen.order;
  }
  const auto moduli = ambient_moduli(torus_rank_, factors_, n_clear);
  IntMatrix rel(0, moduli.size());
  Integer ambient = 1;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    std::vector<Integer> row(moduli.size(), Integer(0));
    row[i] = moduli[i];
    ambient *= moduli[i];
    rel.append_row(row);
  }
  for (const auto& gen : generators_) rel.append_row(finite_coordinates(gen.element, n_clear));
  const Integer quotient = *cokernel(rel).order();
  if (ambient / quotient != product) {
    throw Error(ErrorKind::DescriptorInvalid, "central generators are not independent (subgroup order " +
                                                  Integer(ambient / quotient).get_str() +
                                                  ", product of orders " + product.get_str() + ")");
  }
}

FgAbelianGroup ReductiveDescriptor::central_subgroup() const {
  std::vector<Integer> orders;
  for (const auto& gen : generators_) orders.emplace_back(gen.order);
  return FgAbelianGroup::from_cyclic(0, orders);
}

ReductiveDescriptor ReductiveDescriptor::product(const ReductiveDescriptor& other) const {
  if (field_ != other.field_) {
    throw Error(ErrorKind::InvalidParameter, "cannot multiply a compact and a complex descriptor");
  }
  std::vector<SimpleType> factors = factors_;
  factors.insert(factors.end(), other.factors_.begin(), other.factors_.end());
  std::vector<CentralGenerator> gens;
  for (auto gen : generators_) {
    gen.element.torus_part.resize(torus_rank_ + other.torus_rank_, Rational(0));
    for (const auto& f : other.factors_) gen.element.factor_parts.emplace_back(f.center_moduli().size(), 0L);
    gens.push_back(std::move(gen));
  }
  for (const auto& src : other.generators_) {
    CentralGenerator gen;
    gen.order = src.order;
    gen.element.torus_part.assign(torus_rank_, Rational(0));
    gen.element.torus_part.insert(gen.element.torus_part.end(), src.element.torus_part.begin(),
                                  src.element.torus_part.end());
    for (const auto& f : factors_) gen.element.factor_parts.emplace_back(f.center_moduli().size(), 0L);
    gen.element.factor_parts.insert(gen.element.factor_parts.end(), src.element.factor_parts.begin(),
                                    src.element.factor_parts.end());
    gens.push_back(std::move(gen));
  }
  return ReductiveDescriptor(field_, torus_rank_ + other.torus_rank_, std::move(factors), std::move(gens));
}

std::string ReductiveDescriptor::to_text() const {
  std::ostringstream out;
  out << "field " << (field_ == GroupField::Compact ? "compact" : "complex") << '\n';
  out << "torus " << torus_rank_ << '\n';
  for (const auto& f : factors_) out << "factor " << f.to_string() << '\n';
  for (const auto& gen : generators_) {
    out << "central order=" << gen.order << " torus=";
    for (std::size_t i = 0; i < gen.element.torus_part.size(); ++i) {
      out << (i ? "," : "") << gen.element.torus_part[i].get_str();
    }
    out << " parts=";
    for (std::size_t f = 0; f < gen.element.factor_parts.size(); ++f) {
      const auto& label = gen.element.factor_parts[f];
      out << (f ? "," : "");
      if (label.empty()) out << '0';
      for (std::size_t c = 0; c < label.size(); ++c) out << (c ? ":" : "") << label[c];
    }
    out << '\n';
  }
  return out.str();
}

ReductiveDescriptor parse_descriptor(std::string_view text) {
  GroupField field = GroupField::Compact;
  std::size_t torus_rank = 0;
  std::vector<SimpleType> factors;
  std::vector<CentralGenerator> gens;
  bool saw_field = false;
  std::size_t line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    const auto toks = words(line);
    if (toks.empty()) continue;
    auto fail = [&](const std::string& msg) -> Error {
      return Error(ErrorKind::FormatError, "descriptor line " + std::to_string(line_no) + ": " + msg);
    };
    const std::string& key = toks[0];
    if (key == "field") {
      if (toks.size() != 2 || (toks[1] != "compact" && toks[1] != "complex")) {
        throw fail("expected 'field compact' or 'field complex'");
      }
      field = toks[1] == "compact" ? GroupField::Compact : GroupField::Complex;
      saw_field = true;
    } else if (key == "torus" || key == "torus_rank") {
      if (toks.size() != 2) throw fail("expected 'torus <k>'");
      const long k = parse_long(toks[1], "torus rank");
      if (k < 0) throw fail("negative torus rank");
      torus_rank = static_cast<std::size_t>(k);
    } else if (key == "factor") {
      if (toks.size() < 2) throw fail("expected 'factor <type> <rank>'");
      std::string spec;
      for (std::size_t i = 1; i < toks.size(); ++i) spec += toks[i];
      factors.push_back(SimpleType::parse(spec));
    } else if (key == "central") {
      CentralGenerator gen;
      bool saw_order = false;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        const auto eq = toks[i].find('=');
        if (eq == std::string::npos) throw fail("expected key=value, got '" + toks[i] + "'");
        const std::string k = toks[i].substr(0, eq);
        const std::string v = toks[i].substr(eq + 1);
        if (k == "order") {
          gen.order = parse_long(v, "order");
          saw_order = true;
        } else if (k == "torus") {
          if (v.empty()) continue;
          for (const auto& item : split(v, ',')) {
            Rational q;
            if (q.set_str(item, 10) != 0) throw fail("bad rational '" + item + "'");
            q.canonicalize();
            gen.element.torus_part.push_back(q);
          }
        } else if (k == "parts") {
          if (v.empty()) continue;
          for (const auto& item : split(v, ',')) {
            CenterLabel label;
            for (const auto& c : split(item, ':')) label.push_back(parse_long(c, "center label"));
            gen.element.factor_parts.push_back(std::move(label));
          }
        } else {
          throw fail("unknown key '" + k + "'");
        }
      }
      if (!saw_order) throw fail("central generator needs order=");
      gens.push_back(std::move(gen));
    } else {
      throw fail("unknown directive '" + key + "'");
    }
  }
  if (!saw_field) throw Error(ErrorKind::FormatError, "descriptor is missing a 'field' line");
  return ReductiveDescriptor(field, torus_rank, std::move(factors), std::move(gens));
}

// ---------------------------------------------------------------------------
// Fundamental groups

FgAbelianGroup pi1(const ReductiveDescriptor& g) {
  // Generators: the torus lattice e_1..e_k and lifts z_1..z_m of the central
  // generators. Relation j: n_j z_j - sum_i (n_j v_j)_i e_i = 0.
  const std::size_t k = g.torus_rank();
  const auto& gens = g.central_generators();
  IntMatrix rel(gens.size(), k + gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    const long n = gens[j].order;
    for (std::size_t i = 0; i < k; ++i) {
      Rational scaled = gens[j].element.torus_part[i] * Rational(n);
      scaled.canonicalize();
      rel(j, i) = -scaled.get_num();
    }
    rel(j, k + j) = n;
  }
  return cokernel(rel);
}

FgAbelianGroup pi1_derived(const ReductiveDescriptor& g) {
  // Kernel of Z = sum Z/n_j -> (Q/Z)^k. Lift to the lattice
  // K = {b in Z^m : sum_j b_j N v_j = 0 mod N}, which contains
  // L = sum n_j Z; the answer is K / L.
  const auto& gens = g.central_generators();
  const std::size_t m = gens.size();
  const std::size_t k = g.torus_rank();
  if (m == 0) return FgAbelianGroup::trivial();

  long n_clear = 1;
  for (const auto& gen : gens) n_clear = std::lcm(n_clear, gen.order);

  // (b, c) with B b + N c = 0, B[i][j] = N v_j,i.
  IntMatrix system(k, m + k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      Rational scaled = gens[j].element.torus_part[i] * Rational(n_clear);
      scaled.canonicalize();
      system(i, j) = scaled.get_num();
    }
    system(i, m + i) = n_clear;
  }
  const IntMatrix kernel = kernel_basis(system);

  // Spanning set for K (projection of the kernel, plus L for good measure),
  // reduced to a basis via the row space of its Smith form.
  IntMatrix span(0, m);
  for (std::size_t r = 0; r < kernel.rows(); ++r) {
    std::vector<Integer> row(m);
    for (std::size_t j = 0; j < m; ++j) row[j] = kernel(r, j);
    span.append_row(row);
  }
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Integer> row(m, Integer(0));
    row[j] = gens[j].order;
    span.append_row(row);
  }
  // span = U D V, so the row space is spanned by d_l V_l for l < m, and
  // L = diag(n) has K-coordinates C = diag(n) V^-1 D^-1.
  const SmithForm snf = smith_normal_form(span);
  if (snf.rank != m) throw Error(ErrorKind::DescriptorInvalid, "central lattice lost rank");
  IntMatrix coords(m, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t l = 0; l < m; ++l) {
      Integer num = Integer(gens[j].order) * snf.V_inv(j, l);
      const Integer& d = snf.D(l, l);
      if (!mpz_divisible_p(num.get_mpz_t(), d.get_mpz_t())) {
        throw Error(ErrorKind::DescriptorInvalid, "central lattice is not a superlattice of L");
      }
      mpz_divexact(coords(j, l).get_mpz_t(), num.get_mpz_t(), d.get_mpz_t());
    }
  return cokernel(coords);
}

bool pi1_is_torsion_free(const ReductiveDescriptor& g) { return pi1_derived(g).is_trivial(); }

bool is_orthogonal_free(const ReductiveDescriptor& g) {
  const bool types_ok = std::all_of(g.factors().begin(), g.factors().end(), [](const SimpleType& s) {
    return s.family() == LieFamily::A || s.family() == LieFamily::C;
  });
  return types_ok && pi1_derived(g).is_trivial();
}

UniversalCover universal_cover(const ReductiveDescriptor& g) {
  return UniversalCover{g.field(), g.torus_rank(), g.factors(), pi1(g)};
}

// ---------------------------------------------------------------------------
// Named groups

namespace {

ReductiveDescriptor single_named(const std::string& family, long n) {
  auto need = [&](long lo) {
    if (n < lo) throw Error(ErrorKind::InvalidParameter, family + " needs parameter >= " + std::to_string(lo));
  };
  const bool complex = family == "GL" || family == "SL" || family == "PGL" || family == "ctorus";
  const GroupField field = complex ? GroupField::Complex : GroupField::Compact;

  if (family == "torus" || family == "ctorus") {
    need(0);
    return ReductiveDescriptor(field, static_cast<std::size_t>(n), {}, {});
  }
  need(1);
  const int rank = static_cast<int>(n - 1);
  if (family == "U" || family == "GL") {
    if (n == 1) return ReductiveDescriptor(field, 1, {}, {});
    // (t, h) -> t h has kernel generated by (exp(2 pi i/n), exp(-2 pi i/n) I).
    CentralGenerator gen{CentralElement{{Rational(1, n)}, {{n - 1}}}, n};
    return ReductiveDescriptor(field, 1, {SimpleType(LieFamily::A, rank)}, {gen});
  }
  if (family == "SU" || family == "SL") {
    if (n == 1) return ReductiveDescriptor(field, 0, {}, {});
    return ReductiveDescriptor(field, 0, {SimpleType(LieFamily::A, rank)}, {});
  }
  if (family == "PSU" || family == "PU" || family == "PGL") {
    if (n == 1) return ReductiveDescriptor(field, 0, {}, {});
    CentralGenerator gen{CentralElement{{}, {{1}}}, n};
    return ReductiveDescriptor(field, 0, {SimpleType(LieFamily::A, rank)}, {gen});
  }
  throw Error(ErrorKind::InvalidParameter, "unknown group name '" + family + "'");
}

}  // namespace

ReductiveDescriptor named_group(std::string_view name) {
  const auto toks = words(name);
  std::vector<std::vector<std::string>> parts(1);
  for (const auto& t : toks) {
    if (t == "x" || t == "*") {
      parts.emplace_back();
    } else {
      parts.back().push_back(t);
    }
  }
  std::optional<ReductiveDescriptor> result;
  for (const auto& p : parts) {
    ReductiveDescriptor d;
    if (p.size() == 1 && p[0] == "SO3") {
      d = single_named("PSU", 2);
    } else if (p.size() == 2) {
      d = single_named(p[0], parse_long(p[1], "group parameter"));
    } else if (p.size() == 1) {
      // Accept the compact spelling "U3", "PSU2", ...
      const auto digit = p[0].find_first_of("0123456789");
      if (digit == std::string::npos || digit == 0) {
        throw Error(ErrorKind::InvalidParameter, "bad group name '" + std::string(name) + "'");
      }
      d = single_named(p[0].substr(0, digit), parse_long(p[0].substr(digit), "group parameter"));
    } else {
      throw Error(ErrorKind::InvalidParameter, "bad group name '" + std::string(name) + "'");
    }
    result = result ? result->product(d) : d;
  }
  return *result;
}

UnitaryMatch match_unitary(const ReductiveDescriptor& g) {
  if (g.field() != GroupField::Compact) return {};
  std::vector<const CentralGenerator*> nontrivial;
  for (const auto& gen : g.central_generators())
    if (gen.order > 1) nontrivial.push_back(&gen);
  const auto& factors = g.factors();
  if (factors.size() > 1) return {};
  if (factors.size() == 1 && factors[0].family() != LieFamily::A) return {};
  const int n = factors.empty() ? 1 : factors[0].rank() + 1;

  if (g.torus_rank() == 0 && nontrivial.empty()) return {false, true, n};
  if (g.torus_rank() != 1) return {};
  if (nontrivial.empty()) return factors.empty() ? UnitaryMatch{true, false, 1} : UnitaryMatch{};
  if (factors.empty() || nontrivial.size() != 1) return {};
  // (T x SU(n)) / <(a/n, zeta^c)> is U(n) exactly when both a and c are
  // units mod n: then the kernel of the universal cover is infinite cyclic
  // on an element whose center component generates Z/n.
  const CentralGenerator& gen = *nontrivial.front();
  if (gen.order != n) return {};
  Rational a = gen.element.torus_part[0] * Rational(n);
  a.canonicalize();
  if (a.get_den() != 1) return {};
  const long a_num = a.get_num().get_si();
  const long c = gen.element.factor_parts[0][0];
  if (std::gcd(a_num, static_cast<long>(n)) != 1 || std::gcd(c, static_cast<long>(n)) != 1) return {};
  return {true, false, n};
}

}  // namespace charvar
