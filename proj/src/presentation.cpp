#include "charvar/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "charvar/errors.hpp"

namespace charvar {

// ---------------------------------------------------------------------------
// Word

namespace {

void reduce_into(std::vector<Letter>& out, const Letter& l) {
  if (!out.empty() && out.back().generator == l.generator && out.back().exponent == -l.exponent) {
    out.pop_back();
  } else {
    out.push_back(l);
  }
}

}  // namespace

Word::Word(std::vector<Letter> letters) {
  for (const auto& l : letters) {
    if (l.exponent != 1 && l.exponent != -1) {
      throw Error(ErrorKind::InvalidParameter, "letter exponent must be +1 or -1");
    }
    reduce_into(letters_, l);
  }
}

Word Word::generator(std::size_t index, int exponent) { return Word({Letter{index, exponent}}); }

Word Word::commutator(const Word& x, const Word& y) { return x * y * x.inverse() * y.inverse(); }

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    w.letters_.push_back(Letter{it->generator, -it->exponent});
  }
  return w;
}

Word Word::power(long exponent) const {
  const Word base = exponent < 0 ? inverse() : *this;
  Word w;
  for (long i = 0; i < std::labs(exponent); ++i) w = w * base;
  return w;
}

Word Word::operator*(const Word& rhs) const {
  Word w = *this;
  for (const auto& l : rhs.letters_) reduce_into(w.letters_, l);
  return w;
}

std::vector<long> Word::exponent_sums(std::size_t generator_count) const {
  std::vector<long> sums(generator_count, 0);
  for (const auto& l : letters_) {
    if (l.generator >= generator_count) {
      throw Error(ErrorKind::UnknownGenerator, "generator index out of range");
    }
    sums[l.generator] += l.exponent;
  }
  return sums;
}

// ---------------------------------------------------------------------------
// Presentation

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

bool is_keyword(std::string_view s) { return s == "gens" || s == "rel"; }

}  // namespace

Presentation::Presentation(std::vector<std::string> generator_names, std::vector<Word> relators)
    : names_(std::move(generator_names)), relators_(std::move(relators)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!is_identifier(n) || is_keyword(n)) {
      throw Error(ErrorKind::InvalidParameter, "invalid generator name '" + n + "'");
    }
    if (!seen.insert(n).second) {
      throw Error(ErrorKind::InvalidParameter, "duplicate generator name '" + n + "'");
    }
  }
  for (const auto& r : relators_)
    for (const auto& l : r.letters())
      if (l.generator >= names_.size()) {
        throw Error(ErrorKind::UnknownGenerator, "relator references generator index " +
                                                     std::to_string(l.generator));
      }
}

std::optional<std::size_t> Presentation::generator_index(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::string Presentation::word_to_text(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += names_.at(l.generator);
    if (l.exponent < 0) out += "^-1";
  }
  return out;
}

std::string Presentation::to_text() const {
  std::string out = "gens";
  for (const auto& n : names_) out += ' ' + n;
  out += ";\n";
  for (const auto& r : relators_) out += "rel " + word_to_text(r) + ";\n";
  return out;
}

Presentation Presentation::free_product(const Presentation& other) const {
  std::vector<std::string> names = names_;
  std::set<std::string> used(names.begin(), names.end());
  for (const auto& n : other.names_) {
    std::string candidate = n;
    for (int suffix = 2; used.count(candidate); ++suffix) candidate = n + "_" + std::to_string(suffix);
    used.insert(candidate);
    names.push_back(candidate);
  }
  std::vector<Word> relators = relators_;
  const std::size_t shift = names_.size();
  for (const auto& r : other.relators_) {
    std::vector<Letter> letters = r.letters();
    for (auto& l : letters) l.generator += shift;
    relators.emplace_back(std::move(letters));
  }
  return Presentation(std::move(names), std::move(relators));
}

Presentation Presentation::direct_product(const Presentation& other) const {
  Presentation fp = free_product(other);
  std::vector<Word> relators = fp.relators_;
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = 0; j < other.names_.size(); ++j)
      relators.push_back(Word::commutator(Word::generator(i), Word::generator(names_.size() + j)));
  return Presentation(fp.names_, std::move(relators));
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { Name, Int, Caret, Minus, LBracket, RBracket, Comma, LParen, RParen, Semi, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", line_, col_});
        return out;
      }
      const char c = src_[pos_];
      const std::size_t l = line_, col = col_;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          advance();
        out.push_back({Tok::Name, std::string(src_.substr(start, pos_ - start)), l, col});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        out.push_back({Tok::Int, std::string(src_.substr(start, pos_ - start)), l, col});
        continue;
      }
      Tok kind;
      switch (c) {
        case '^': kind = Tok::Caret; break;
        case '-': kind = Tok::Minus; break;
        case '[': kind = Tok::LBracket; break;
        case ']': kind = Tok::RBracket; break;
        case ',': kind = Tok::Comma; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case ';': kind = Tok::Semi; break;
        default:
          throw SyntaxError(l, col, std::string("unexpected character '") + c + "'");
      }
      advance();
      out.push_back({kind, std::string(1, c), l, col});
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Presentation run() {
    expect_keyword("gens");
    while (peek().kind == Tok::Name) {
      const Token& t = next();
      if (is_keyword(t.text)) throw SyntaxError(t.line, t.column, "keyword used as generator name");
      if (std::find(names_.begin(), names_.end(), t.text) != names_.end()) {
        throw SyntaxError(t.line, t.column, "duplicate generator '" + t.text + "'");
      }
      names_.push_back(t.text);
    }
    expect(Tok::Semi, "';' after generator list");
    std::vector<Word> relators;
    while (peek().kind != Tok::End) {
      expect_keyword("rel");
      relators.push_back(parse_word());
      expect(Tok::Semi, "';' after relator");
    }
    return Presentation(names_, std::move(relators));
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  void expect(Tok kind, const char* what) {
    const Token& t = peek();
    if (t.kind != kind) throw SyntaxError(t.line, t.column, std::string("expected ") + what);
    ++pos_;
  }

  void expect_keyword(const char* kw) {
    const Token& t = peek();
    if (t.kind != Tok::Name || t.text != kw) {
      throw SyntaxError(t.line, t.column, std::string("expected '") + kw + "'");
    }
    ++pos_;
  }

  static bool ends_word(Tok k) {
    return k == Tok::Semi || k == Tok::Comma || k == Tok::RBracket || k == Tok::RParen || k == Tok::End;
  }

  Word parse_word() {
    Word w;
    while (!ends_word(peek().kind)) w = w * parse_factor();
    return w;
  }

  Word parse_factor() {
    Word base = parse_atom();
    if (peek().kind != Tok::Caret) return base;
    next();
    bool negative = false;
    if (peek().kind == Tok::Minus) {
      next();
      negative = true;
    }
    const Token& t = peek();
    if (t.kind != Tok::Int) throw SyntaxError(t.line, t.column, "expected integer exponent");
    long e = 0;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), e);
    if (ec != std::errc() || e > 1000000) throw SyntaxError(t.line, t.column, "exponent out of range");
    next();
    return base.power(negative ? -e : e);
  }

  Word parse_atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Name: {
        next();
        if (is_keyword(t.text)) throw SyntaxError(t.line, t.column, "unexpected keyword '" + t.text + "'");
        auto it = std::find(names_.begin(), names_.end(), t.text);
        if (it == names_.end()) {
          throw Error(ErrorKind::UnknownGenerator, "line " + std::to_string(t.line) + ", column " +
                                                       std::to_string(t.column) + ": '" + t.text +
                                                       "' is not a declared generator");
        }
        return Word::generator(static_cast<std::size_t>(it - names_.begin()));
      }
      case Tok::Int:
        if (t.text != "1") throw SyntaxError(t.line, t.column, "only '1' may stand for the identity");
        next();
        return Word();
      case Tok::LBracket: {
        next();
        Word x = parse_word();
        expect(Tok::Comma, "',' inside commutator");
        Word y = parse_word();
        expect(Tok::RBracket, "']' closing commutator");
        return Word::commutator(x, y);
      }
      case Tok::LParen: {
        next();
        Word w = parse_word();
        expect(Tok::RParen, "')'");
        return w;
      }
      default:
        throw SyntaxError(t.line, t.column, "expected a generator, '[', '(' or '1'");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> names_;
};

}  // namespace

Presentation parse_presentation(std::string_view text) { return Parser(Lexer(text).run()).run(); }

// ---------------------------------------------------------------------------
// Abelianization

IntMatrix abelianization_matrix(const Presentation& p) {
  IntMatrix m(p.relators().size(), p.generator_count());
  for (std::size_t i = 0; i < p.relators().size(); ++i) {
    const auto sums = p.relators()[i].exponent_sums(p.generator_count());
    for (std::size_t j = 0; j < sums.size(); ++j) m(i, j) = sums[j];
  }
  return m;
}

ExponentCanceling is_exponent_canceling(const Presentation& p) {
  if (!abelianization_matrix(p).is_zero()) return {false, std::nullopt};
  return {true, p.generator_count()};
}

// ---------------------------------------------------------------------------
// Standard groups

namespace {

std::vector<std::string> tokenize_ws(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::size_t parse_count(const std::string& s, const char* what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::InvalidParameter, std::string("bad ") + what + " '" + s + "'");
  }
  return v;
}

std::vector<std::string> numbered(const char* stem, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

}  // namespace

GroupKind GroupKind::parse(std::string_view text) {
  const auto toks = tokenize_ws(text);
  if (toks.size() < 2) throw Error(ErrorKind::InvalidParameter, "group kind needs a family and a parameter");
  GroupKind k;
  const std::string& fam = toks[0];
  if (fam == "free") {
    k.family = GroupFamily::Free;
  } else if (fam == "free_abelian") {
    k.family = GroupFamily::FreeAbelian;
  } else if (fam == "surface") {
    k.family = GroupFamily::Surface;
  } else if (fam == "central_ext_surface") {
    k.family = GroupFamily::CentralExtSurface;
  } else if (fam == "raag") {
    k.family = GroupFamily::Raag;
  } else {
    throw Error(ErrorKind::InvalidParameter, "unknown group family '" + fam + "'");
  }
  k.parameter = parse_count(toks[1], "group parameter");
  if (k.family != GroupFamily::Raag && toks.size() != 2) {
    throw Error(ErrorKind::InvalidParameter, "unexpected trailing tokens in group kind");
  }
  for (std::size_t i = 2; i < toks.size(); ++i) {
    const auto dash = toks[i].find('-');
    if (dash == std::string::npos) throw Error(ErrorKind::InvalidParameter, "edge must look like 'i-j'");
    const std::size_t a = parse_count(toks[i].substr(0, dash), "edge endpoint");
    const std::size_t b = parse_count(toks[i].substr(dash + 1), "edge endpoint");
    if (a == 0 || b == 0) throw Error(ErrorKind::InvalidParameter, "edge endpoints are 1-based");
    k.edges.emplace_back(a - 1, b - 1);
  }
  return k;
}

std::string GroupKind::to_string() const {
  std::string out;
  switch (family) {
    case GroupFamily::Free: out = "free"; break;
    case GroupFamily::FreeAbelian: out = "free_abelian"; break;
    case GroupFamily::Surface: out = "surface"; break;
    case GroupFamily::CentralExtSurface: out = "central_ext_surface"; break;
    case GroupFamily::Raag: out = "raag"; break;
  }
  out += ' ' + std::to_string(parameter);
  for (const auto& [a, b] : edges) out += ' ' + std::to_string(a + 1) + '-' + std::to_string(b + 1);
  return out;
}

Presentation standard_group(const GroupKind& kind) {
  const std::size_t n = kind.parameter;
  switch (kind.family) {
    case GroupFamily::Free:
      return Presentation(numbered("x", n), {});
    case GroupFamily::FreeAbelian: {
      std::vector<Word> rels;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          rels.push_back(Word::commutator(Word::generator(i), Word::generator(j)));
      return Presentation(numbered("x", n), std::move(rels));
    }
    case GroupFamily::Surface:
    case GroupFamily::CentralExtSurface: {
      if (n == 0) throw Error(ErrorKind::InvalidParameter, "surface genus must be at least 1");
      std::vector<std::string> names;
      Word product;
      for (std::size_t i = 0; i < n; ++i) {
        names.push_back("a" + std::to_string(i + 1));
        names.push_back("b" + std::to_string(i + 1));
        product = product * Word::commutator(Word::generator(2 * i), Word::generator(2 * i + 1));
      }
      if (kind.family == GroupFamily::Surface) return Presentation(std::move(names), {product});
      const std::size_t z = names.size();
      names.push_back("z");
      std::vector<Word> rels{Word::generator(z, -1) * product};
      for (std::size_t i = 0; i < 2 * n; ++i)
        rels.push_back(Word::commutator(Word::generator(z), Word::generator(i)));
      return Presentation(std::move(names), std::move(rels));
    }
    case GroupFamily::Raag: {
      std::set<std::pair<std::size_t, std::size_t>> seen;
      std::vector<Word> rels;
      for (auto [a, b] : kind.edges) {
        if (a >= n || b >= n) throw Error(ErrorKind::InvalidParameter, "edge endpoint out of range");
        if (a == b) throw Error(ErrorKind::InvalidParameter, "graph has a loop");
        if (!seen.insert({std::min(a, b), std::max(a, b)}).second) {
          throw Error(ErrorKind::InvalidParameter, "graph has a repeated edge");
        }
        rels.push_back(Word::commutator(Word::generator(a), Word::generator(b)));
      }
      return Presentation(numbered("v", n), std::move(rels));
    }
  }
  throw Error(ErrorKind::InvalidParameter, "unknown group family");
}

// ---------------------------------------------------------------------------
// Class recognition

ClassTag ClassTag::parse(std::string_view text) {
  const auto toks = tokenize_ws(text);
  if (toks.size() == 1 && toks[0] == "other") return {GroupClass::Other, 0};
  if (toks.size() != 2) throw Error(ErrorKind::InvalidParameter, "class tag must be '<class> <n>' or 'other'");
  ClassTag t;
  if (toks[0] == "free") {
    t.cls = GroupClass::Free;
  } else if (toks[0] == "free_abelian") {
    t.cls = GroupClass::FreeAbelian;
  } else if (toks[0] == "surface") {
    t.cls = GroupClass::Surface;
  } else {
    throw Error(ErrorKind::InvalidParameter, "unknown class tag '" + toks[0] + "'");
  }
  t.parameter = parse_count(toks[1], "class parameter");
  if (t.cls == GroupClass::Surface && t.parameter == 0) {
    throw Error(ErrorKind::InvalidParameter, "surface genus must be at least 1");
  }
  return t;
}

std::string ClassTag::to_string() const {
  switch (cls) {
    case GroupClass::Free: return "free " + std::to_string(parameter);
    case GroupClass::FreeAbelian: return "free_abelian " + std::to_string(parameter);
    case GroupClass::Surface: return "surface " + std::to_string(parameter);
    case GroupClass::Other: return "other";
  }
  return "other";
}

namespace {

// x y x^-1 y^-1 with x != y single generators.
std::optional<std::pair<std::size_t, std::size_t>> as_generator_commutator(const std::vector<Letter>& w,
                                                                           std::size_t offset = 0) {
  if (w.size() < offset + 4) return std::nullopt;
  const Letter& a = w[offset];
  const Letter& b = w[offset + 1];
  const Letter& c = w[offset + 2];
  const Letter& d = w[offset + 3];
  if (a.exponent != 1 || b.exponent != 1 || c.exponent != -1 || d.exponent != -1) return std::nullopt;
  if (a.generator != c.generator || b.generator != d.generator || a.generator == b.generator) {
    return std::nullopt;
  }
  return std::make_pair(a.generator, b.generator);
}

bool is_free_abelian_shape(const Presentation& p) {
  const std::size_t r = p.generator_count();
  if (p.relators().size() != r * (r - 1) / 2) return false;
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& rel : p.relators()) {
    if (rel.length() != 4) return false;
    auto c = as_generator_commutator(rel.letters());
    if (!c) return false;
    if (!pairs.insert({std::min(c->first, c->second), std::max(c->first, c->second)}).second) return false;
  }
  return true;
}

bool is_surface_shape(const Presentation& p) {
  const std::size_t r = p.generator_count();
  if (r == 0 || r % 2 != 0 || p.relators().size() != 1) return false;
  const auto& letters = p.relators()[0].letters();
  if (letters.size() != 2 * r) return false;
  std::set<std::size_t> used;
  for (std::size_t off = 0; off < letters.size(); off += 4) {
    auto c = as_generator_commutator(letters, off);
    if (!c) return false;
    if (!used.insert(c->first).second || !used.insert(c->second).second) return false;
  }
  return used.size() == r;
}

}  // namespace

std::vector<ClassTag> recognize_class(const Presentation& p) {
  std::vector<ClassTag> tags;
  const std::size_t r = p.generator_count();
  const bool no_relations =
      std::all_of(p.relators().begin(), p.relators().end(), [](const Word& w) { return w.empty(); });
  if (no_relations) {
    tags.push_back({GroupClass::Free, r});
    if (r <= 1) tags.push_back({GroupClass::FreeAbelian, r});
    return tags;
  }
  if (r >= 2 && is_free_abelian_shape(p)) {
    tags.push_back({GroupClass::FreeAbelian, r});
    if (r == 2) tags.push_back({GroupClass::Surface, 1});
  } else if (is_surface_shape(p)) {
    tags.push_back({GroupClass::Surface, r / 2});
    if (r == 2) tags.push_back({GroupClass::FreeAbelian, 2});
  }
  return tags;
}

}  // namespace charvar
