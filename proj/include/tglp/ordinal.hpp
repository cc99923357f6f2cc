#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tglp {

struct OrdinalTerm;

// An ordinal below epsilon_0 in Cantor normal form:
//   omega^e_1 * c_1 + ... + omega^e_k * c_k   with e_1 > ... > e_k and every c_i >= 1.
// The empty sum is 0. Values are always canonical, so equality is structural.
class Ordinal {
 public:
  Ordinal() = default;

  static Ordinal zero() { return {}; }
  static Ordinal natural(std::uint64_t n);
  static Ordinal omega();
  // omega^exponent * coefficient; coefficient 0 yields zero.
  static Ordinal power(Ordinal exponent, std::uint64_t coefficient = 1);
  // Builds from terms, throwing RangeError unless they are already canonical.
  static Ordinal from_terms(std::vector<OrdinalTerm> terms);

  const std::vector<OrdinalTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  std::optional<std::uint64_t> as_natural() const;

  // Nesting depth of exponents: 0 for naturals, 1 for omega^n sums, and so on.
  std::size_t rank() const;

  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
  friend bool operator==(const Ordinal& a, const Ordinal& b);

 private:
  std::vector<OrdinalTerm> terms_;
};

struct OrdinalTerm {
  Ordinal exponent;
  std::uint64_t coefficient = 1;

  friend bool operator==(const OrdinalTerm&, const OrdinalTerm&) = default;
};

// Lexicographic comparison of Cantor normal forms.
std::strong_ordering compare(const Ordinal& a, const Ordinal& b);

Ordinal parse_ordinal(std::string_view text);
// Parses the longest ordinal prefix starting at `pos` and advances `pos` past it.
Ordinal parse_ordinal_prefix(std::string_view text, std::size_t& pos);

// 1 + a.
Ordinal one_plus(const Ordinal& a);
// omega * a, distributing over the Cantor normal form from the left.
Ordinal omega_left_multiply(const Ordinal& a);
// omega * a == a. For a != 0 this holds exactly when the last term is at least omega^omega.
bool is_omega_absorbing(const Ordinal& a);

// Ordinal sum a + b. Used to normalise parsed sums.
Ordinal add(const Ordinal& a, const Ordinal& b);

struct OrdinalPair {
  Ordinal first;
  std::uint64_t second = 0;

  friend bool operator==(const OrdinalPair&, const OrdinalPair&) = default;
};

// <xi, n> before <zeta, m> iff xi < zeta, or xi == zeta and n < m.
// The induced order on pairs has type omega * alpha when the first components range below alpha.
bool prec_prime(const OrdinalPair& p, const OrdinalPair& q);

}  // namespace tglp
