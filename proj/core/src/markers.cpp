#include "nfspectral/markers.hpp"

#include <stdexcept>

namespace nfs {

namespace {

std::size_t leading_index(const QVector& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) return i;
  throw std::logic_error("zero basis vector");
}

std::optional<ATerm> single_term(int p, const QVector& v) {
  std::optional<ATerm> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    if (out) return std::nullopt;
    out = grade_term(p, i);
  }
  return out;
}

Marker find_marker(const std::vector<std::vector<DirectionMarker>>& rows, const ATerm& t) {
  if (t.s < 0 || t.s >= static_cast<int>(rows.size())) return Marker::Zero;
  for (const auto& d : rows[static_cast<std::size_t>(t.s)])
    if (d.term && *d.term == t) return d.marker;
  return Marker::Zero;
}

}  // namespace

std::string to_string(Marker m) {
  switch (m) {
    case Marker::Zero: return "0";
    case Marker::Ideal: return "m";
    case Marker::Unit: return "R\\m";
    case Marker::Any: return "R";
  }
  return "?";
}

Marker parse_marker(const std::string& text) {
  if (text == "0") return Marker::Zero;
  if (text == "m") return Marker::Ideal;
  if (text == "R\\m") return Marker::Unit;
  if (text == "R") return Marker::Any;
  throw std::invalid_argument("unknown marker '" + text + "'");
}

StructureSignature structure_signature(const PageState& state) {
  StructureSignature sig;
  for (const auto& g : state.grades) {
    std::vector<std::size_t> n, t;
    for (const auto& v : g.normal) n.push_back(leading_index(v));
    for (const auto& v : g.transforms) t.push_back(leading_index(v));
    sig.normal.push_back(std::move(n));
    sig.transforms.push_back(std::move(t));
  }
  return sig;
}

StructureSignature structure_signature(const AElement& v, int window) {
  try {
    return structure_signature(compute_pages(v, window, window));
  } catch (const EngineError&) {
    StructureSignature sig;
    sig.failed = true;
    return sig;
  }
}

Marker EngineMarkers::normal_marker(const ATerm& t) const { return find_marker(normal, t); }
Marker EngineMarkers::transform_marker(const ATerm& t) const { return find_marker(transforms, t); }

EngineMarkers engine_markers(const AElement& normalized, int truncation) {
  EngineMarkers out;
  out.truncation = truncation;
  out.window = 2 * truncation + 2;
  const AElement vbar = normalized.residue().truncated(truncation);
  const PageState base = compute_pages(vbar, out.window, out.window);
  const StructureSignature reference = structure_signature(base);
  const RingSpec q = RingSpec::rationals();

  for (int p = 0; p <= truncation; ++p) {
    const GradeSpaces& g = base.at(p);
    const QVector coords = g.split(vbar.grade_vector(p));
    std::vector<DirectionMarker> row;
    for (std::size_t i = 0; i < g.normal.size(); ++i) {
      AElement flipped = vbar;
      AElement e = AElement::from_grade_vector(q, p, g.normal[i]);
      const bool zero = sgn(coords[i]) == 0;
      flipped.add_scaled(e, zero ? Rational(1) : Rational(-coords[i]));
      const bool changed = !(structure_signature(flipped, out.window) == reference);
      Marker m = !changed ? Marker::Any : (zero ? Marker::Ideal : Marker::Unit);
      if (m == Marker::Ideal) ++out.ideal_count;
      row.push_back({g.normal[i], single_term(p, g.normal[i]), m});
    }
    out.normal.push_back(std::move(row));

    std::vector<DirectionMarker> trow;
    for (const auto& t : g.transforms) {
      const std::size_t piv = leading_index(t);
      trow.push_back({t, grade_term(p, piv), Marker::Any});
    }
    out.transforms.push_back(std::move(trow));
  }
  out.series = page_series(base, truncation);
  return out;
}

}  // namespace nfs
