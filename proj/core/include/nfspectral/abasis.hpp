#pragma once

// The graded Lie algebra of formal planar vector fields in the A-basis.
//
// A term A[s,d,q] stands for A_{k+l}^{k-l,q} with s = k+l, d = k-l,
// k >= -1, l >= 0 and q in {0,1}. Its filtration degree is s (Taylor degree
// s+1). Everything here is index arithmetic on structure constants; the
// monomial realization lives in oracle.hpp.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nfspectral/coeff.hpp"
#include "nfspectral/linalg.hpp"

namespace nfs {

class BasisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ATerm {
  int s = 0;
  int d = 0;
  int q = 0;

  [[nodiscard]] int k() const { return (s + d) / 2; }
  [[nodiscard]] int l() const { return (s - d) / 2; }
  [[nodiscard]] int degree() const { return s; }

  /// True when (s, d) name a basis element, ignoring q.
  static bool valid_indices(int s, int d);

  /// "A[s,d,q]"
  [[nodiscard]] std::string to_string() const;
  static ATerm parse(const std::string& text);

  friend auto operator<=>(const ATerm&, const ATerm&) = default;
};

struct SignedTerm {
  ATerm term;
  int sign = 1;
};

/// Reduces q mod 4 into {0,1}; A^{q+2} = -A^q supplies the sign.
/// Throws BasisError("not a basis element") on invalid (s, d).
SignedTerm canonicalize(int s, int d, int q);

/// Integer structure constants of [a, b], merged and with zero entries dropped.
std::vector<std::pair<ATerm, std::int64_t>> structure_constants(const ATerm& a, const ATerm& b);

/// Ordered basis of the graded piece G_p: ascending d in {-p-2, ..., p}, then q.
std::vector<ATerm> grade_basis(int p);
[[nodiscard]] inline std::size_t grade_dim(int p) { return static_cast<std::size_t>(2 * (p + 2)); }
/// Position of a canonical term inside grade_basis(term.s).
[[nodiscard]] inline std::size_t grade_index(const ATerm& t) {
  return static_cast<std::size_t>(((t.d + t.s + 2) / 2) * 2 + t.q);
}
ATerm grade_term(int p, std::size_t index);

/// A finite R-linear combination of canonical A-terms; no zero coefficients.
class AElement {
 public:
  using Map = std::map<ATerm, RingElem>;

  AElement() = default;
  explicit AElement(RingSpec spec) : spec_(spec) {}
  AElement(RingSpec spec, const ATerm& t, RingElem c);
  static AElement term(RingSpec spec, int s, int d, int q, const Rational& c = 1);

  [[nodiscard]] const RingSpec& spec() const { return spec_; }
  [[nodiscard]] const Map& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  /// Adds c * A[s,d,q] with q taken mod 4 and canonicalized.
  void add(int s, int d, int q, const RingElem& c);
  void add(const ATerm& canonical, const RingElem& c);
  [[nodiscard]] RingElem coefficient(const ATerm& t) const;

  [[nodiscard]] std::optional<int> min_degree() const;
  [[nodiscard]] std::optional<int> max_degree() const;
  [[nodiscard]] AElement graded_part(int s) const;
  /// Parts of degree in [lo, hi].
  [[nodiscard]] AElement degree_range(int lo, int hi) const;
  [[nodiscard]] AElement truncated(int max_degree) const { return degree_range(-1, max_degree); }

  /// Residue-field image, returned over Q.
  [[nodiscard]] AElement residue() const;
  /// Same coefficients viewed in another ring; Q elements embed as constants.
  [[nodiscard]] AElement embedded(RingSpec target) const;

  /// Coordinates of the degree-p part in grade_basis(p); requires a Q element
  /// or takes the l^power slice of an R element.
  [[nodiscard]] QVector grade_vector(int p, int power = 0) const;
  static AElement from_grade_vector(RingSpec spec, int p, const QVector& v);

  AElement& operator+=(const AElement& o);
  AElement& operator-=(const AElement& o);
  AElement& operator*=(const Rational& a);
  AElement& operator*=(const RingElem& a);
  /// this += a * o (companion interface for row_reduce_with)
  void add_scaled(const AElement& o, const Rational& a);
  void add_scaled(const AElement& o, const RingElem& a);

  friend AElement operator+(AElement a, const AElement& b) { return a += b; }
  friend AElement operator-(AElement a, const AElement& b) { return a -= b; }
  friend AElement operator*(AElement a, const Rational& s) { return a *= s; }
  friend AElement operator*(const RingElem& s, AElement a) { return a *= s; }
  AElement operator-() const;

  friend bool operator==(const AElement& a, const AElement& b) { return a.spec_ == b.spec_ && a.terms_ == b.terms_; }

  /// "c1*A[s,d,q] + c2*A[...]"; zero prints as "0".
  [[nodiscard]] std::string to_string() const;

 private:
  RingSpec spec_{};
  Map terms_;
};

/// [a, b] for single terms, coefficients 1, over the given ring.
AElement bracket_terms(const ATerm& a, const ATerm& b, RingSpec spec = RingSpec::rationals());
/// Bilinear bracket; terms of degree above max_degree are dropped.
AElement bracket(const AElement& x, const AElement& y, int max_degree = 1 << 20);
/// Degree-`degree` part of [x, y] only.
AElement bracket_at(const AElement& x, const AElement& y, int degree);

/// Dense matrix with entries in R.
struct RingMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<RingElem> entries;

  RingMatrix(std::size_t r, std::size_t c, RingSpec spec) : rows(r), cols(c), entries(r * c, RingElem(spec)) {}
  RingElem& operator()(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const RingElem& operator()(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  [[nodiscard]] QMatrix residue() const;
};

/// Matrix of t -> degree-`target` part of [x, t] from grade_basis(p) to grade_basis(target).
RingMatrix ad_matrix(const AElement& x, int p, int target);

}  // namespace nfs
