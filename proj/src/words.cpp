#include "grouplab/words.hpp"

#include <algorithm>
#include <cctype>

#include "grouplab/errors.hpp"

namespace grouplab {

FreeWord FreeWord::from_letters(std::vector<std::int8_t> raw) {
  FreeWord w;
  for (std::int8_t l : raw) {
    if (!w.letters_.empty() && w.letters_.back() == -l)
      w.letters_.pop_back();
    else
      w.letters_.push_back(l);
  }
  return w;
}

FreeWord FreeWord::letter(int l) {
  FreeWord w;
  w.letters_.push_back(static_cast<std::int8_t>(l));
  return w;
}

FreeWord FreeWord::operator*(const FreeWord& o) const {
  std::vector<std::int8_t> raw = letters_;
  raw.insert(raw.end(), o.letters_.begin(), o.letters_.end());
  return from_letters(std::move(raw));
}

FreeWord FreeWord::inverse() const {
  FreeWord w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    w.letters_.push_back(static_cast<std::int8_t>(-*it));
  return w;
}

FreeWord FreeWord::pow(std::int64_t e) const {
  FreeWord base = e < 0 ? inverse() : *this;
  if (e < 0) e = -e;
  FreeWord acc;
  for (std::int64_t i = 0; i < e; ++i) acc = acc * base;
  return acc;
}

FreeWord FreeWord::commutator(const FreeWord& u, const FreeWord& v) {
  // [u,v] = u^-1 v^-1 u v, fixed globally
  return u.inverse() * v.inverse() * u * v;
}

WordCyclicForm FreeWord::cyclic_form() const {
  std::size_t lo = 0, hi = letters_.size();
  while (hi > lo + 1 && letters_[lo] == -letters_[hi - 1]) {
    ++lo;
    --hi;
  }
  WordCyclicForm out;
  out.conjugator.letters_.assign(letters_.begin(), letters_.begin() + lo);
  out.core.letters_.assign(letters_.begin() + lo, letters_.begin() + hi);
  return out;
}

WordRoot FreeWord::primitive_root() const {
  if (empty()) raise(ErrorKind::degenerate_input, "primitive root of the empty word");
  const WordCyclicForm cf = cyclic_form();
  const auto& core = cf.core.letters_;
  const auto len = core.size();
  for (std::size_t d = 1; d <= len; ++d) {
    if (len % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < len && periodic; ++i) periodic = core[i] == core[i % d];
    if (!periodic) continue;
    FreeWord q;
    q.letters_.assign(core.begin(), core.begin() + d);
    WordRoot r;
    r.root = cf.conjugator * q * cf.conjugator.inverse();
    r.exponent = static_cast<std::int64_t>(len / d);
    return r;
  }
  return WordRoot{*this, 1};
}

std::string FreeWord::str() const {
  if (letters_.empty()) return "1";
  std::string out;
  for (std::int8_t l : letters_) {
    switch (l) {
      case 1: out += 'x'; break;
      case -1: out += 'X'; break;
      case 2: out += 'y'; break;
      case -2: out += 'Y'; break;
    }
  }
  return out;
}

// --- parser ------------------------------------------------------------------

namespace {

struct WordParser {
  std::string_view text;
  std::size_t pos = 0;

  void skip() {
    while (pos < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == '*'))
      ++pos;
  }

  bool done() {
    skip();
    return pos >= text.size();
  }

  char peek() {
    skip();
    return pos < text.size() ? text[pos] : '\0';
  }

  std::int64_t integer() {
    skip();
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) neg = text[pos++] == '-';
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      raise(ErrorKind::parse_error, "expected exponent in word");
    std::int64_t v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      v = v * 10 + (text[pos++] - '0');
    return neg ? -v : v;
  }

  FreeWord atom() {
    const char c = peek();
    if (c == 'x') { ++pos; return FreeWord::letter(1); }
    if (c == 'X') { ++pos; return FreeWord::letter(-1); }
    if (c == 'y') { ++pos; return FreeWord::letter(2); }
    if (c == 'Y') { ++pos; return FreeWord::letter(-2); }
    if (c == '(') {
      ++pos;
      FreeWord w = word(")");
      if (peek() != ')') raise(ErrorKind::parse_error, "missing ')' in word");
      ++pos;
      return w;
    }
    if (c == '[') {
      ++pos;
      FreeWord u = word(",]");
      if (peek() != ',') raise(ErrorKind::parse_error, "missing ',' in commutator");
      ++pos;
      FreeWord v = word("]");
      if (peek() != ']') raise(ErrorKind::parse_error, "missing ']' in commutator");
      ++pos;
      return FreeWord::commutator(u, v);
    }
    if (c == '1') { ++pos; return FreeWord(); }
    raise(ErrorKind::parse_error, std::string("unexpected character '") + c + "' in word");
  }

  FreeWord term() {
    FreeWord w = atom();
    if (peek() == '^') {
      ++pos;
      w = w.pow(integer());
    }
    return w;
  }

  FreeWord word(std::string_view stop) {
    FreeWord w;
    while (!done() && stop.find(peek()) == std::string_view::npos) w = w * term();
    return w;
  }
};

}  // namespace

FreeWord FreeWord::parse(std::string_view text) {
  WordParser p{text};
  FreeWord w = p.word("");
  if (!p.done()) raise(ErrorKind::parse_error, "trailing characters in word");
  return w;
}

// --- evaluation and scans ------------------------------------------------------

std::uint32_t evaluate_word(const FreeWord& w, const FiniteGroup& g, std::uint32_t a,
                            std::uint32_t b) {
  const std::uint32_t sub[5] = {g.inv(b), g.inv(a), 0, a, b};  // index by letter+2
  std::uint32_t acc = 0;
  for (std::int8_t l : w.letters()) acc = g.mul(acc, sub[l + 2]);
  return acc;
}

IdentityScan satisfies_identity(const GroupPtr& g, const FreeWord& w, Exec exec) {
  g->require_tabled("satisfies_identity");
  const auto& reps = g->class_reps();
  const std::uint64_t n = g->order();
  const std::uint64_t total = reps.size() * n;

  IdentityScan out;
  if (w.empty()) {  // the trivial word holds everywhere
    out.holds = true;
    out.pairs_scanned = 0;
    return out;
  }
  const auto fail = first_index(exec, static_cast<std::int64_t>(total), [&](std::int64_t i) {
    const std::uint32_t a = reps[static_cast<std::size_t>(i / static_cast<std::int64_t>(n))];
    const auto b = static_cast<std::uint32_t>(i % static_cast<std::int64_t>(n));
    return evaluate_word(w, *g, a, b) != 0;
  });
  if (fail) {
    out.holds = false;
    out.witness = {reps[static_cast<std::size_t>(*fail / static_cast<std::int64_t>(n))],
                   static_cast<std::uint32_t>(*fail % static_cast<std::int64_t>(n))};
    out.pairs_scanned = static_cast<std::uint64_t>(*fail) + 1;
  } else {
    out.holds = true;
    out.pairs_scanned = total;
  }
  return out;
}

FreeWord combine_identities(const FreeWord& t1, const FreeWord& t2) {
  if (t1.empty() || t2.empty())
    raise(ErrorKind::degenerate_input, "combine_identities needs nontrivial words");
  FreeWord c = FreeWord::commutator(t1, t2);
  if (!c.empty()) return c;

  // t1 and t2 commute in F_2, so both are powers of a common primitive root.
  const auto r1 = t1.primitive_root();
  const auto r2 = t2.primitive_root();
  std::int64_t e2 = r2.exponent;
  if (r1.root != r2.root) {
    if (r1.root != r2.root.inverse())
      raise(ErrorKind::degenerate_input, "commuting words without a common root (internal)");
    e2 = -e2;
  }
  return r1.root.pow(r1.exponent * e2);
}

}  // namespace grouplab
