#pragma once

// Coefficient ring R: either the rationals, or truncated power series
// Q[[l]]/(l^K) with maximal ideal m = (l). All arithmetic is exact.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nfs {

using Rational = mpq_class;

class RingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Which coefficient ring a computation runs over.
struct RingSpec {
  enum class Kind { Rationals, LocalSeries };

  Kind kind = Kind::Rationals;
  int order = 1;  // truncation order K; always 1 for Rationals

  static RingSpec rationals() { return {}; }
  static RingSpec local_series(int truncation_order);

  /// Number of stored coefficients (1 for Q, K otherwise).
  [[nodiscard]] int length() const { return order; }
  [[nodiscard]] bool is_local() const { return kind == Kind::LocalSeries; }

  /// "Q" or "Ql:K", the spelling used on the command line and in job files.
  [[nodiscard]] std::string to_string() const;
  static RingSpec parse(std::string_view text);

  friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

class RingElem {
 public:
  RingElem() = default;  // zero of Q
  explicit RingElem(RingSpec spec);
  RingElem(RingSpec spec, Rational constant);
  RingElem(RingSpec spec, std::vector<Rational> coeffs);

  /// lambda^power in the given ring (zero when power >= K).
  static RingElem lambda(RingSpec spec, int power = 1);

  [[nodiscard]] const RingSpec& spec() const { return spec_; }
  [[nodiscard]] std::span<const Rational> coeffs() const { return coeffs_; }
  [[nodiscard]] const Rational& operator[](std::size_t j) const { return coeffs_[j]; }

  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_unit() const { return sgn(coeffs_[0]) != 0; }
  [[nodiscard]] const Rational& residue() const { return coeffs_[0]; }
  /// Smallest j with a nonzero l^j coefficient; empty for zero.
  [[nodiscard]] std::optional<int> valuation() const;

  /// Two-sided inverse mod l^K via the geometric series of the l-part.
  [[nodiscard]] RingElem inverse() const;
  /// Divides by l; the residue must vanish. The top coefficient becomes 0.
  [[nodiscard]] RingElem divided_by_lambda() const;

  RingElem& operator+=(const RingElem& other);
  RingElem& operator-=(const RingElem& other);
  RingElem& operator*=(const RingElem& other);
  RingElem& operator*=(const Rational& scalar);

  friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
  friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }
  friend RingElem operator*(const RingElem& a, const RingElem& b);
  friend RingElem operator*(RingElem a, const Rational& s) { return a *= s; }
  friend RingElem operator*(const Rational& s, RingElem a) { return a *= s; }
  RingElem operator-() const;

  friend bool operator==(const RingElem& a, const RingElem& b);

  /// Exact text form, e.g. "3/2 + 1/4*l^2"; zero prints as "0".
  [[nodiscard]] std::string to_string() const;
  /// Inverse of to_string. Accepts sums of terms "c", "c*l", "c*l^j", "l^j".
  static RingElem parse(std::string_view text, RingSpec spec);

 private:
  void check_compatible(const RingElem& other) const;

  RingSpec spec_{};
  std::vector<Rational> coeffs_ = std::vector<Rational>(1);
};

// Free-function spellings of the ring operations.
RingElem ring_mul(const RingElem& a, const RingElem& b);
bool is_unit(const RingElem& a);
RingElem invert(const RingElem& a);
Rational residue(const RingElem& a);

/// Parses "p/q" or "p" into an exact rational, rejecting zero denominators.
Rational parse_rational(std::string_view text);
std::string rational_to_string(const Rational& q);

}  // namespace nfs
