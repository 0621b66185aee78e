#pragma once

// Coefficient markers for a normalized field.
//
// A surviving normal-form direction is marked by asking whether its residue
// coefficient shapes the page structure: the coefficient is flipped (a unit
// added where the residue is zero, the residue removed where it is not) and
// the residue-level page structure is recomputed on a window of 2N+2.
//   structure changes, residue zero     -> m
//   structure changes, residue nonzero  -> R\m
//   structure unchanged                 -> R
// Transformation directions are marked R at the pivots of T_p.

#include <optional>
#include <string>
#include <vector>

#include "nfspectral/abasis.hpp"
#include "nfspectral/engine.hpp"

namespace nfs {

enum class Marker { Zero, Ideal, Unit, Any };

/// "0", "m", "R\m", "R"
std::string to_string(Marker m);
Marker parse_marker(const std::string& text);

/// Pivot columns of N_p and T_p per degree, or a failed first page.
struct StructureSignature {
  bool failed = false;
  std::vector<std::vector<std::size_t>> normal;
  std::vector<std::vector<std::size_t>> transforms;
  friend bool operator==(const StructureSignature&, const StructureSignature&) = default;
};

StructureSignature structure_signature(const PageState& state);
/// Signature of the final residue-level pages of v on the given window.
StructureSignature structure_signature(const AElement& v, int window);

struct DirectionMarker {
  QVector direction;               // in grade_basis(p)
  std::optional<ATerm> term;       // set when the direction is a single basis term
  Marker marker = Marker::Zero;
};

struct EngineMarkers {
  int truncation = 0;
  int window = 0;
  std::vector<std::vector<DirectionMarker>> normal;      // degree 0..N
  std::vector<std::vector<DirectionMarker>> transforms;  // degree 0..N, pivots only
  Polynomial series;                                     // degrees 0..N
  std::size_t ideal_count = 0;                           // number of m-marked N directions

  /// Marker of the normal-form direction equal to `t`, Zero if it does not survive.
  [[nodiscard]] Marker normal_marker(const ATerm& t) const;
  [[nodiscard]] Marker transform_marker(const ATerm& t) const;
};

/// Markers of a field that is already in unique normal form through degree N.
EngineMarkers engine_markers(const AElement& normalized, int truncation);

}  // namespace nfs
