#pragma once

// Spectral-sequence normal forms for fields in the A-basis, truncated at
// filtration degree N.
//
// Page data is kept at chain level: every surviving transformation direction
// carries a lift t with [vbar, t] in W_{p+r}, and every image direction a lift
// u with gr_p [vbar, u] equal to it. Here vbar is the residue of the current
// field, and the differential at page r is gr_{p+r} [vbar, t] projected onto N.
// Lifts only matter up to the degree where they are used and are truncated
// there: T lifts at p+r, B lifts at p.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "nfspectral/abasis.hpp"
#include "nfspectral/coeff.hpp"
#include "nfspectral/linalg.hpp"

namespace nfs {

class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field is an AElement; its graded parts are the v_p.
using GradedField = AElement;

struct TransformGenerator {
  AElement element;  // homogeneous leading degree `degree`, may carry higher terms
  int degree = 1;
  int page = 0;
};

/// Spaces attached to one graded piece G_p, coordinates in grade_basis(p).
struct GradeSpaces {
  std::vector<QVector> normal;           // N_p, a subset of the first-page kernel basis
  std::vector<QVector> transforms;       // T_p leading parts, reduced row echelon
  std::vector<AElement> transform_lifts;  // over Q
  std::vector<QVector> image;            // B_p, complement of N_p in G_p
  std::vector<AElement> image_lifts;     // over Q
  BasisCoordinates coords;               // basis normal ++ image

  void refresh(int p);
  /// Coordinates of v in normal ++ image.
  [[nodiscard]] QVector split(const QVector& v) const { return coords.coordinates(v); }
};

struct PageState {
  int page = 1;
  int truncation = 0;
  AElement field;  // current v^r over R
  AElement vbar;   // residue of field, over Q
  std::vector<GradeSpaces> grades;  // index p = 0..truncation
  std::vector<TransformGenerator> log;

  [[nodiscard]] const GradeSpaces& at(int p) const { return grades.at(static_cast<std::size_t>(p)); }
  [[nodiscard]] std::size_t dim_normal(int p) const { return at(p).normal.size(); }
  [[nodiscard]] std::size_t dim_transforms(int p) const { return at(p).transforms.size(); }
};

/// Integer polynomial in t.
struct Polynomial {
  std::map<int, std::int64_t> terms;  // exponent -> nonzero coefficient

  void add(int exponent, std::int64_t c);
  [[nodiscard]] std::int64_t at_one() const;
  [[nodiscard]] bool is_zero() const { return terms.empty(); }
  /// "t^2+2t^4"; zero prints as "0".
  [[nodiscard]] std::string to_string() const;
  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

/// Page 1: N_p = T_p = ker ad(vbar_0) on G_p, B_p = its image.
PageState first_page(const GradedField& v, int truncation);

/// Matrix of d_p^r : T_p -> N_{p+r} (rows: N basis, columns: T basis).
QMatrix differential(const PageState& state, int p);

/// Passes to page r+1: T_p <- ker d_p^r, N_{p+r} <- N_{p+r} / im d_p^r.
void turn_page(PageState& state);
PageState turned(PageState state);

/// sum_m ad(t)^m v / m!, truncated at degree N.
AElement exp_ad(const AElement& t, const AElement& v, int truncation);

/// Removes the image components of the degree-n part of the field.
/// Requires state.page >= n.
void normalize_degree(PageState& state, int n);

struct NormalFormResult {
  GradedField field;
  PageState state;
  std::vector<TransformGenerator> log;
};

NormalFormResult unique_normal_form(const GradedField& v, int truncation);

/// Residue-level page structure of v through page r (r = 0 gives K_p = G_p + G_p).
PageState compute_pages(const GradedField& v, int truncation, int r);

/// sum_p (dim N_p - dim T_p) t^p for p = 0..p_max.
/// T_p is only reduced by differentials landing at or below the truncation, so
/// the top degrees of a truncated state still carry unreduced transforms.
Polynomial page_series(const PageState& state, int p_max);

/// True if the B-components of the degree-n part of the field vanish.
bool degree_is_normalized(const PageState& state, int n);

}  // namespace nfs
