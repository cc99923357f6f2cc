#include "tglp/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "tglp/error.hpp"

namespace tglp {

Ordinal Ordinal::natural(std::uint64_t n) {
  Ordinal r;
  if (n > 0) r.terms_.push_back({Ordinal{}, n});
  return r;
}

Ordinal Ordinal::omega() { return power(natural(1)); }

Ordinal Ordinal::power(Ordinal exponent, std::uint64_t coefficient) {
  Ordinal r;
  if (coefficient > 0) r.terms_.push_back({std::move(exponent), coefficient});
  return r;
}

Ordinal Ordinal::from_terms(std::vector<OrdinalTerm> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0) throw RangeError("ordinal term with coefficient 0");
    if (i > 0 && compare(terms[i - 1].exponent, terms[i].exponent) != std::strong_ordering::greater)
      throw RangeError("ordinal exponents must be strictly decreasing");
  }
  Ordinal r;
  r.terms_ = std::move(terms);
  return r;
}

bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

std::optional<std::uint64_t> Ordinal::as_natural() const {
  if (terms_.empty()) return 0;
  if (is_finite()) return terms_[0].coefficient;
  return std::nullopt;
}

std::size_t Ordinal::rank() const {
  if (is_finite()) return 0;
  std::size_t r = 0;
  for (const auto& t : terms_) r = std::max(r, t.exponent.rank() + 1);
  return r;
}

namespace {

void print_exponent(const Ordinal& e, std::string& out) {
  if (e.is_finite()) {
    out += std::to_string(*e.as_natural());
  } else if (e == Ordinal::omega()) {
    out += 'w';
  } else {
    out += '(';
    out += e.to_string();
    out += ')';
  }
}

}  // namespace

std::string Ordinal::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    if (i > 0) out += '+';
    if (t.exponent.is_zero()) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += 'w';
    if (t.exponent != natural(1)) {
      out += '^';
      print_exponent(t.exponent, out);
    }
    if (t.coefficient > 1) {
      out += '*';
      out += std::to_string(t.coefficient);
    }
  }
  return out;
}

std::strong_ordering compare(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = compare(x[i].exponent, y[i].exponent); c != 0) return c;
    if (auto c = x[i].coefficient <=> y[i].coefficient; c != 0) return c;
  }
  return x.size() <=> y.size();
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) { return compare(a, b); }

bool operator==(const Ordinal& a, const Ordinal& b) { return a.terms_ == b.terms_; }

Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const auto& lead = b.terms().front();
  std::vector<OrdinalTerm> terms;
  for (const auto& t : a.terms()) {
    // Terms of a below the leading power of b are absorbed.
    if (compare(t.exponent, lead.exponent) == std::strong_ordering::less) break;
    terms.push_back(t);
  }
  auto rest = b.terms().begin();
  if (!terms.empty() && terms.back().exponent == lead.exponent) {
    if (terms.back().coefficient > std::numeric_limits<std::uint64_t>::max() - lead.coefficient)
      throw RangeError("ordinal coefficient overflow");
    terms.back().coefficient += lead.coefficient;
    ++rest;
  }
  terms.insert(terms.end(), rest, b.terms().end());
  return Ordinal::from_terms(std::move(terms));
}

Ordinal one_plus(const Ordinal& a) { return add(Ordinal::natural(1), a); }

Ordinal omega_left_multiply(const Ordinal& a) {
  std::vector<OrdinalTerm> terms;
  terms.reserve(a.terms().size());
  for (const auto& t : a.terms()) terms.push_back({one_plus(t.exponent), t.coefficient});
  return Ordinal::from_terms(std::move(terms));
}

bool is_omega_absorbing(const Ordinal& a) {
  if (a.is_zero()) return true;
  return compare(a.terms().back().exponent, Ordinal::omega()) != std::strong_ordering::less;
}

bool prec_prime(const OrdinalPair& p, const OrdinalPair& q) {
  auto c = compare(p.first, q.first);
  return c == std::strong_ordering::less || (c == 0 && p.second < q.second);
}

// ---------------------------------------------------------------------------
// Parser for:  ord := term ('+' term)* ; term := base ('*' nat)? ;
//              base := nat | 'w' | 'w' '^' atom ; atom := nat | 'w' | '(' ord ')'

namespace {

class OrdinalReader {
 public:
  OrdinalReader(std::string_view text, std::size_t pos) : text_(text), pos_(pos) {}

  Ordinal ord() {
    Ordinal sum = term();
    while (peek() == '+') {
      ++pos_;
      sum = add(sum, term());
    }
    return sum;
  }

  std::size_t pos() {
    skip_space();
    return pos_;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  [[noreturn]] void fail(const std::string& what) { throw ParseError(what, pos_); }

  std::uint64_t nat() {
    skip_space();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a natural number");
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      auto d = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) fail("number too large");
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  Ordinal term() {
    Ordinal b = base();
    if (peek() == '*') {
      ++pos_;
      std::size_t at = pos();
      std::uint64_t k = nat();
      if (k == 0) throw ParseError("coefficient 0", at);
      if (b.is_zero()) return b;
      // b is a single power omega^e * c here.
      auto t = b.terms().front();
      if (t.coefficient > std::numeric_limits<std::uint64_t>::max() / k) fail("coefficient overflow");
      return Ordinal::power(t.exponent, t.coefficient * k);
    }
    return b;
  }

  Ordinal base() {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return Ordinal::natural(nat());
    if (c != 'w') fail("expected an ordinal");
    ++pos_;
    if (peek() != '^') return Ordinal::omega();
    ++pos_;
    return Ordinal::power(atom());
  }

  Ordinal atom() {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return Ordinal::natural(nat());
    if (c == 'w') {
      ++pos_;
      return Ordinal::omega();
    }
    if (c == '(') {
      ++pos_;
      Ordinal inner = ord();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    fail("expected an exponent");
  }

  std::string_view text_;
  std::size_t pos_;
};

}  // namespace

Ordinal parse_ordinal_prefix(std::string_view text, std::size_t& pos) {
  OrdinalReader reader(text, pos);
  Ordinal r = reader.ord();
  pos = reader.pos();
  return r;
}

Ordinal parse_ordinal(std::string_view text) {
  std::size_t pos = 0;
  Ordinal r = parse_ordinal_prefix(text, pos);
  if (pos != text.size()) throw ParseError("unexpected trailing input", pos);
  return r;
}

}  // namespace tglp
