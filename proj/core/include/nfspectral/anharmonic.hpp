#pragma once

// Classification of the anharmonic oscillator A[0,0,1] + ... into the cases
// A^r, A_r^q and A_r^inf, with closed-form E_infinity marker tables, Poincare
// series, index and codimension, cross-checked against the generic engine.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nfspectral/abasis.hpp"
#include "nfspectral/engine.hpp"
#include "nfspectral/markers.hpp"

namespace nfs {

class ClassificationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CaseLabel {
  enum class Variant { SupR, SubRSupQ, SubRInf, LinearOnly };
  Variant variant = Variant::LinearOnly;
  int r = 0;
  int q = 0;

  static CaseLabel sup_r(int r);
  static CaseLabel sub_r_sup_q(int r, int q);  // requires q > r
  static CaseLabel sub_r_inf(int r);
  static CaseLabel linear_only() { return {}; }

  /// "A^2", "A_1^3", "A_1^inf", "linear-only"
  [[nodiscard]] std::string to_string() const;
  static CaseLabel parse(const std::string& text);
  friend bool operator==(const CaseLabel&, const CaseLabel&) = default;
};

/// One row per p: markers of N: A_{2p}^{0,0}, N: A_{2p}^{0,1}, T: A_{2p}^{0,0}, T: A_{2p}^{0,1}.
using MarkerRow = std::array<Marker, 4>;

struct MarkerTable {
  std::vector<MarkerRow> rows;  // index p = 0..p_max
  bool truncated = false;       // emitted below the verified truncation degree

  /// Aligned text mirroring the E_infinity layout.
  [[nodiscard]] std::string to_text() const;
  friend bool operator==(const MarkerTable& a, const MarkerTable& b) { return a.rows == b.rows; }
};

struct SeriesReport {
  Polynomial P;
  std::int64_t index = 0;
  std::optional<std::int64_t> codim;  // empty means infinite
  [[nodiscard]] std::string codim_string() const { return codim ? std::to_string(*codim) : "inf"; }
};

struct Classification {
  CaseLabel label;
  NormalFormResult normal_form;
  int truncation = 0;
};

/// Normalizes through degree N and reads off the first unit beta coefficients.
Classification classify_detailed(const GradedField& v, int truncation);
CaseLabel classify(const GradedField& v, int truncation);

/// Closed-form table for rows p = 0..p_max.
MarkerTable einf_table(const CaseLabel& c, int p_max);
SeriesReport series(const CaseLabel& c);
std::int64_t index_summary(const CaseLabel& c);

/// Smallest truncation at which the engine determines the whole table.
int verified_truncation(const CaseLabel& c);

/// Table read off the engine markers for rows p = 0..N/2.
MarkerTable engine_table(const EngineMarkers& markers);

struct EngineComparison {
  CaseLabel label;
  GradedField normal_form;
  MarkerTable engine;
  MarkerTable closed_form;
  EngineMarkers markers;
  std::vector<std::string> mismatches;  // empty when everything agrees
  [[nodiscard]] bool agrees() const { return mismatches.empty(); }
};

/// Classifies v, computes engine markers and compares them with the closed form:
/// table rows, no odd-degree or off-axis survivors, series, codimension.
EngineComparison compare_with_engine(const GradedField& v, int truncation);

/// In case A_r^q: the N-marker of A_{2p}^{0,0} is zero exactly for
/// p in {2q-r+1..2q-1} and p > 2q, within the rows available.
bool tic_tac_toe_consistent(const CaseLabel& c, const MarkerTable& engine);

struct MadicLevel {
  int level = 0;
  CaseLabel label;
  Polynomial P;  // zero for linear-only
};

struct MadicReport {
  std::vector<MadicLevel> levels;
  /// sum_p u^p P_p(t), as text "t^2+t^4 + u*(t^2)".
  [[nodiscard]] std::string generating_function() const;
};

/// Level 0 classifies the residues; each further level divides the surviving
/// m-marked coefficients of degree >= 1 by l and classifies again, until
/// nothing nonlinear is left or the level budget runs out.
MadicReport madic_refine(const GradedField& v, int truncation, int levels);

/// Scales the first unit beta coefficient (beta^0_{2r} if it is a unit,
/// otherwise beta^1_{2r}) to 1.
GradedField scale_leading(const GradedField& v);

}  // namespace nfs
