#pragma once

// Independent ground truth for the A-basis: realizes terms as polynomial
// vector fields over the Gaussian rationals Q(i), brackets them directly on
// monomials, and recomputes first-page and page data by brute-force row
// reduction. Nothing in here calls the structure-constant bracket except
// the checker that compares against it.

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "nfspectral/abasis.hpp"
#include "nfspectral/coeff.hpp"
#include "nfspectral/linalg.hpp"

namespace nfs::oracle {

struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
  static GaussianRational i_pow(int n);

  [[nodiscard]] bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b);
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;
  [[nodiscard]] std::string to_string() const;
};

enum class Component { X = 0, Y = 1 };

/// x^a y^b d/dx or d/dy.
struct Monomial {
  int a = 0;
  int b = 0;
  Component comp = Component::X;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Polynomial vector field with Gaussian-rational coefficients, canonical (no zeros).
class MonoVF {
 public:
  using Map = std::map<Monomial, GaussianRational>;

  void add(const Monomial& m, const GaussianRational& c);
  [[nodiscard]] const Map& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] GaussianRational coefficient(const Monomial& m) const;
  MonoVF& operator+=(const MonoVF& o);
  MonoVF& operator*=(const GaussianRational& c);
  friend MonoVF operator-(MonoVF a, const MonoVF& b);
  friend bool operator==(const MonoVF&, const MonoVF&) = default;
  [[nodiscard]] std::string to_string() const;

 private:
  Map terms_;
};

/// A[s,d,q] = i^q (x^{k+1} y^l d/dx + i^{2q} x^l y^{k+1} d/dy)
MonoVF to_monomials(const ATerm& t);
/// Linear extension over Q (the element must have rational coefficients).
MonoVF to_monomials(const AElement& e);

/// [f, g] = (f . grad) g - (g . grad) f, componentwise.
MonoVF mono_bracket(const MonoVF& f, const MonoVF& g);

/// (k, l) of the A-term whose realization contains the monomial.
std::pair<int, int> aterm_indices_for(const Monomial& m);

/// Decomposes a field into A-terms over Q; throws std::domain_error if the
/// field is not a Q-combination of A-terms (coefficients not conjugate-paired).
AElement from_monomials(const MonoVF& f);

struct StructureReport {
  int s_max = 0;
  std::size_t pairs_checked = 0;
  std::vector<std::pair<ATerm, ATerm>> mismatches;
  [[nodiscard]] bool ok() const { return mismatches.empty(); }
};

using TermBracket = std::function<AElement(const ATerm&, const ATerm&)>;

/// Compares the abstract bracket with the monomial bracket on every pair of
/// terms with lower index in [-1, s_max].
StructureReport check_structure_constants(int s_max, const TermBracket& abstract_bracket = {});

/// Reduced row echelon basis computed by the oracle's own elimination.
std::vector<QVector> echelon_basis(std::vector<QVector> vectors, std::size_t dim);

struct FirstPage {
  std::vector<QVector> kernel;  // echelon basis, coordinates in grade_basis(p)
  std::vector<QVector> image;
};

/// Kernel and image of ad(v0) on G_p, computed through the monomial realization.
FirstPage brute_force_first_page(const AElement& v0, int p);

struct PageSpaces {
  std::vector<QVector> transforms;  // leading terms of { t in W_p : [v,t] in W_{p+r} }
  std::vector<QVector> images;      // leading terms at p of [v,t] in W_p, t in W_{max(1,p-r+1)}
};

/// Brute-force chain-level page data for p = 0..N at page r >= 1; index p of
/// the result. Degree 0 is left empty (transformations start at degree 1).
std::vector<PageSpaces> brute_force_pages(const AElement& v, int truncation, int r);

}  // namespace nfs::oracle
