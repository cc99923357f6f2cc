#include "tglp/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "tglp/error.hpp"

namespace tglp {

Formula Formula::bottom() {
  static const Formula f{std::make_shared<const Node>(Node{Kind::Bottom, {}, {}, nullptr, nullptr, 1})};
  return f;
}

Formula Formula::var(std::string name) {
  return Formula{std::make_shared<const Node>(Node{Kind::Variable, std::move(name), {}, nullptr, nullptr, 1})};
}

Formula Formula::implies(Formula a, Formula b) {
  std::size_t size = 1 + a.size() + b.size();
  return Formula{std::make_shared<const Node>(Node{Kind::Implies, {}, {}, std::make_unique<Formula>(std::move(a)),
                                                   std::make_unique<Formula>(std::move(b)), size})};
}

Formula Formula::box(Ordinal index, Formula body) {
  std::size_t size = 1 + body.size();
  return Formula{std::make_shared<const Node>(
      Node{Kind::Box, {}, std::move(index), std::make_unique<Formula>(std::move(body)), nullptr, size})};
}

Formula Formula::top() { return implies(bottom(), bottom()); }

Formula Formula::negation(Formula a) { return implies(std::move(a), bottom()); }

Formula Formula::conjunction(Formula a, Formula b) {
  return negation(implies(std::move(a), negation(std::move(b))));
}

Formula Formula::disjunction(Formula a, Formula b) { return implies(negation(std::move(a)), std::move(b)); }

Formula Formula::diamond(Ordinal index, Formula body) {
  return negation(box(std::move(index), negation(std::move(body))));
}

Formula Formula::conjunction(const std::vector<Formula>& parts) {
  if (parts.empty()) return top();
  Formula acc = parts.back();
  for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) acc = conjunction(*it, acc);
  return acc;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Formula::Kind::Bottom:
      return std::strong_ordering::equal;
    case Formula::Kind::Variable:
      return a.name() <=> b.name();
    case Formula::Kind::Implies:
      if (auto c = a.left() <=> b.left(); c != 0) return c;
      return a.right() <=> b.right();
    case Formula::Kind::Box:
      if (auto c = compare(a.index(), b.index()); c != 0) return c;
      return a.left() <=> b.left();
  }
  return std::strong_ordering::equal;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  return (a <=> b) == 0;
}

bool is_negation(const Formula& f) { return f.is_implies() && f.right().is_bottom(); }

bool is_top(const Formula& f) { return f.is_implies() && f.left().is_bottom() && f.right().is_bottom(); }

namespace {

// Matches a & b, i.e. (a -> (b -> F)) -> F.
bool as_conjunction(const Formula& f, const Formula*& a, const Formula*& b) {
  if (!is_negation(f)) return false;
  const Formula& inner = f.left();
  if (!inner.is_implies() || !is_negation(inner.right())) return false;
  a = &inner.left();
  b = &inner.right().left();
  return true;
}

void print(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Bottom:
      out += 'F';
      return;
    case Formula::Kind::Variable:
      out += f.name();
      return;
    case Formula::Kind::Box:
      out += '[';
      out += f.index().to_string();
      out += ']';
      print(f.left(), out);
      return;
    case Formula::Kind::Implies:
      break;
  }
  if (is_top(f)) {
    out += 'T';
    return;
  }
  const Formula* a = nullptr;
  const Formula* b = nullptr;
  if (is_negation(f)) {
    const Formula& inner = f.left();
    if (inner.is_box() && is_negation(inner.left())) {
      out += '<';
      out += inner.index().to_string();
      out += '>';
      print(inner.left().left(), out);
      return;
    }
    if (as_conjunction(f, a, b)) {
      out += '(';
      print(*a, out);
      out += " & ";
      print(*b, out);
      out += ')';
      return;
    }
    out += '~';
    print(inner, out);
    return;
  }
  out += '(';
  print(f.left(), out);
  out += " -> ";
  print(f.right(), out);
  out += ')';
}

}  // namespace

std::string Formula::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

std::vector<Formula> conjuncts(const Formula& f) {
  std::vector<Formula> parts;
  const Formula* cur = &f;
  const Formula* a = nullptr;
  const Formula* b = nullptr;
  while (as_conjunction(*cur, a, b)) {
    parts.push_back(*a);
    cur = b;
  }
  parts.push_back(*cur);
  return parts;
}

// ---------------------------------------------------------------------------
// imp := or ('->' imp)? ; or := and ('|' and)* ; and := unary ('&' unary)*
// unary := '~' unary | '[' ord ']' unary | '<' ord '>' unary | atom
// atom := 'F' | 'T' | var | '(' imp ')'

namespace {

class FormulaReader {
 public:
  explicit FormulaReader(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = imp();
    if (peek() != '\0') fail("unexpected trailing input");
    return f;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(std::string_view tok) {
    skip_space();
    if (text_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  [[noreturn]] void fail(const std::string& what) { throw ParseError(what, pos_); }

  Formula imp() {
    Formula lhs = disj();
    if (accept("->")) return Formula::implies(std::move(lhs), imp());
    return lhs;
  }

  Formula disj() {
    Formula lhs = conj();
    while (accept("|")) lhs = Formula::disjunction(std::move(lhs), conj());
    return lhs;
  }

  Formula conj() {
    Formula lhs = unary();
    while (accept("&")) lhs = Formula::conjunction(std::move(lhs), unary());
    return lhs;
  }

  Ordinal index(char close) {
    skip_space();
    Ordinal o = parse_ordinal_prefix(text_, pos_);
    if (peek() != close) fail(std::string("expected '") + close + "' after modality index");
    ++pos_;
    return o;
  }

  Formula unary() {
    if (accept("~")) return Formula::negation(unary());
    if (accept("[")) {
      Ordinal o = index(']');
      return Formula::box(std::move(o), unary());
    }
    if (accept("<")) {
      Ordinal o = index('>');
      return Formula::diamond(std::move(o), unary());
    }
    return atom();
  }

  Formula atom() {
    char c = peek();
    if (c == 'F') {
      ++pos_;
      return Formula::bottom();
    }
    if (c == 'T') {
      ++pos_;
      return Formula::top();
    }
    if (c == '(') {
      ++pos_;
      Formula f = imp();
      expect(")");
      return f;
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::islower(static_cast<unsigned char>(text_[pos_])) ||
              std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      return Formula::var(std::string(text_.substr(start, pos_ - start)));
    }
    fail(c == '\0' ? "unexpected end of input" : "expected a formula");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void collect(const Formula& f, std::set<Formula>& out) {
  if (!out.insert(f).second) return;
  if (f.is_implies()) {
    collect(f.left(), out);
    collect(f.right(), out);
  } else if (f.is_box()) {
    collect(f.left(), out);
  }
}

template <class Fn>
void visit(const Formula& f, Fn&& fn) {
  fn(f);
  if (f.is_implies()) {
    visit(f.left(), fn);
    visit(f.right(), fn);
  } else if (f.is_box()) {
    visit(f.left(), fn);
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return FormulaReader(text).parse(); }

std::set<Formula> subformulas(const Formula& f) {
  std::set<Formula> out;
  collect(f, out);
  return out;
}

std::vector<Ordinal> modalities(const Formula& f) {
  std::set<Ordinal> seen;
  visit(f, [&](const Formula& g) {
    if (g.is_box()) seen.insert(g.index());
  });
  return {seen.begin(), seen.end()};
}

std::vector<std::string> variables(const Formula& f) {
  std::set<std::string> seen;
  visit(f, [&](const Formula& g) {
    if (g.is_var()) seen.insert(g.name());
  });
  return {seen.begin(), seen.end()};
}

std::optional<std::uint64_t> max_finite_index(const Formula& f) {
  std::optional<std::uint64_t> best;
  for (const auto& o : modalities(f)) {
    auto n = o.as_natural();
    if (!n) throw RangeError("modality index " + o.to_string() + " is not finite");
    best = std::max(best.value_or(0), *n);
  }
  return best;
}

Formula substitute(const Formula& f, const Substitution& sigma) {
  switch (f.kind()) {
    case Formula::Kind::Bottom:
      return f;
    case Formula::Kind::Variable: {
      auto it = sigma.find(f.name());
      return it == sigma.end() ? f : it->second;
    }
    case Formula::Kind::Implies:
      return Formula::implies(substitute(f.left(), sigma), substitute(f.right(), sigma));
    case Formula::Kind::Box:
      return Formula::box(f.index(), substitute(f.left(), sigma));
  }
  return f;
}

namespace {

bool match_into(const Formula& pattern, const Formula& target, Substitution& sigma) {
  if (pattern.is_var()) {
    auto [it, inserted] = sigma.emplace(pattern.name(), target);
    return inserted || it->second == target;
  }
  if (pattern.kind() != target.kind()) return false;
  switch (pattern.kind()) {
    case Formula::Kind::Bottom:
    case Formula::Kind::Variable:
      return true;
    case Formula::Kind::Implies:
      return match_into(pattern.left(), target.left(), sigma) && match_into(pattern.right(), target.right(), sigma);
    case Formula::Kind::Box:
      return pattern.index() == target.index() && match_into(pattern.left(), target.left(), sigma);
  }
  return false;
}

}  // namespace

std::optional<Substitution> match_variables(const Formula& pattern, const Formula& target) {
  Substitution sigma;
  if (!match_into(pattern, target, sigma)) return std::nullopt;
  return sigma;
}

CondensationMap::CondensationMap(std::vector<Ordinal> levels) : levels_(std::move(levels)) {
  for (std::size_t i = 1; i < levels_.size(); ++i)
    if (compare(levels_[i - 1], levels_[i]) != std::strong_ordering::less)
      throw RangeError("condensation map must be strictly increasing");
}

const Ordinal& CondensationMap::lift(const Ordinal& i) const {
  auto n = i.as_natural();
  if (!n || *n >= levels_.size())
    throw RangeError("index " + i.to_string() + " outside condensation map of size " +
                     std::to_string(levels_.size()));
  return levels_[*n];
}

Condensation condense(const Formula& f) {
  auto levels = modalities(f);
  std::map<Ordinal, std::uint64_t> position;
  for (std::size_t i = 0; i < levels.size(); ++i) position.emplace(levels[i], i);
  Formula g = map_indices(f, [&](const Ordinal& o) { return Ordinal::natural(position.at(o)); });
  return {std::move(g), CondensationMap(std::move(levels))};
}

Formula lift(const Formula& f, const CondensationMap& map) {
  return map_indices(f, [&](const Ordinal& o) { return map.lift(o); });
}

Formula big_m(const Formula& f) {
  auto top_index = max_finite_index(f);
  std::vector<Formula> parts;
  if (!top_index) return Formula::top();
  for (const auto& sub : subformulas(f)) {
    if (!sub.is_box()) continue;
    std::uint64_t n = *sub.index().as_natural();
    for (std::uint64_t m = n + 1; m <= *top_index; ++m)
      parts.push_back(Formula::implies(sub, Formula::box(m, sub.left())));
  }
  return Formula::conjunction(parts);
}

Formula m_plus(const Formula& f) {
  std::uint64_t top_index = max_finite_index(f).value_or(0);
  Formula m = big_m(f);
  std::vector<Formula> parts{m};
  for (std::uint64_t n = 0; n <= top_index; ++n) parts.push_back(Formula::box(n, m));
  return Formula::conjunction(parts);
}

}  // namespace tglp
