#include "nfspectral/anharmonic.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

namespace nfs {

namespace {

constexpr Marker Z = Marker::Zero;
constexpr Marker M = Marker::Ideal;
constexpr Marker U = Marker::Unit;
constexpr Marker A = Marker::Any;

const ATerm kRotation{0, 0, 1};

bool is_oscillator_linear_part(const AElement& v) {
  const AElement v0 = v.residue().graded_part(0);
  return v0.size() == 1 && v0.terms().begin()->first == kRotation;
}

std::string row_text(const MarkerRow& row) {
  std::string out;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += i == 2 ? " | " : " ";
    out += to_string(row[i]);
  }
  return out;
}

// Exact n-th root of a rational, if it exists.
std::optional<Rational> rational_root(const Rational& x, unsigned n) {
  if (sgn(x) < 0 && n % 2 == 0) return std::nullopt;
  mpz_class num = abs(x.get_num());
  mpz_class den = x.get_den();
  mpz_class rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n)) return std::nullopt;
  if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n)) return std::nullopt;
  Rational out(rn, rd);
  out.canonicalize();
  if (sgn(x) < 0) out = -out;
  return out;
}

// y^(1/n) for a unit y whose residue has an exact rational n-th root.
std::optional<RingElem> unit_root(const RingElem& y, unsigned n) {
  auto c0 = rational_root(y.residue(), n);
  if (!c0) return std::nullopt;
  const RingSpec spec = y.spec();
  RingElem z = y * Rational(1 / y.residue()) - RingElem(spec, Rational(1));
  RingElem sum(spec, Rational(1));
  RingElem power(spec, Rational(1));
  Rational binom = 1;
  const Rational e(1, n);
  for (int k = 1; k < spec.length(); ++k) {
    binom *= (e - (k - 1));
    binom /= k;
    power *= z;
    sum += power * binom;
  }
  return sum * *c0;
}

}  // namespace

CaseLabel CaseLabel::sup_r(int r) {
  if (r < 1) throw ClassificationError("case parameter r must be positive");
  return {Variant::SupR, r, 0};
}

CaseLabel CaseLabel::sub_r_sup_q(int r, int q) {
  if (r < 1) throw ClassificationError("case parameter r must be positive");
  if (q <= r) throw ClassificationError("A_r^q requires q > r");
  return {Variant::SubRSupQ, r, q};
}

CaseLabel CaseLabel::sub_r_inf(int r) {
  if (r < 1) throw ClassificationError("case parameter r must be positive");
  return {Variant::SubRInf, r, 0};
}

std::string CaseLabel::to_string() const {
  switch (variant) {
    case Variant::SupR: return "A^" + std::to_string(r);
    case Variant::SubRSupQ: return "A_" + std::to_string(r) + "^" + std::to_string(q);
    case Variant::SubRInf: return "A_" + std::to_string(r) + "^inf";
    case Variant::LinearOnly: return "linear-only";
  }
  return "?";
}

CaseLabel CaseLabel::parse(const std::string& text) {
  static const std::regex sup(R"(A\^(\d+))");
  static const std::regex sub(R"(A_(\d+)\^(\d+|inf))");
  std::smatch m;
  if (text == "linear-only") return linear_only();
  if (std::regex_match(text, m, sup)) return sup_r(std::stoi(m[1]));
  if (std::regex_match(text, m, sub)) {
    if (m[2] == "inf") return sub_r_inf(std::stoi(m[1]));
    return sub_r_sup_q(std::stoi(m[1]), std::stoi(m[2]));
  }
  throw ClassificationError("unknown case label '" + text + "'");
}

std::string MarkerTable::to_text() const {
  std::ostringstream out;
  out << "  p | N:A00  N:A01 | T:A00  T:A01\n";
  for (std::size_t p = 0; p < rows.size(); ++p) {
    out << (p < 10 ? "  " : " ") << p << " |";
    for (std::size_t i = 0; i < 4; ++i) {
      std::string cell = to_string(rows[p][i]);
      cell.resize(6, ' ');
      out << ' ' << cell << (i == 1 ? "|" : "");
    }
    out << '\n';
  }
  if (truncated) out << "(truncated, unverified beyond N)\n";
  return out.str();
}

// ---------------------------------------------------------------------------

Classification classify_detailed(const GradedField& v, int truncation) {
  if (truncation < 2 || truncation % 2 != 0) throw ClassificationError("truncation must be even and at least 2");
  if (!is_oscillator_linear_part(v)) {
    throw ClassificationError("linear part must be a unit multiple of A[0,0,1]");
  }
  Classification out;
  out.truncation = truncation;
  out.normal_form = unique_normal_form(v, truncation);
  const AElement& f = out.normal_form.field;
  auto unit_at = [&](int s, int q) { return f.coefficient(ATerm{2 * s, 0, q}).is_unit(); };
  for (int s = 1; 2 * s <= truncation; ++s) {
    if (unit_at(s, 0)) {
      out.label = CaseLabel::sup_r(s);
      return out;
    }
    if (unit_at(s, 1)) {
      for (int q = s + 1; 2 * q <= truncation; ++q) {
        if (unit_at(q, 0)) {
          out.label = CaseLabel::sub_r_sup_q(s, q);
          return out;
        }
      }
      out.label = CaseLabel::sub_r_inf(s);
      return out;
    }
  }
  out.label = CaseLabel::linear_only();
  return out;
}

CaseLabel classify(const GradedField& v, int truncation) { return classify_detailed(v, truncation).label; }

MarkerTable einf_table(const CaseLabel& c, int p_max) {
  MarkerTable t;
  const int r = c.r;
  const int q = c.q;
  for (int p = 0; p <= p_max; ++p) {
    MarkerRow row{Z, Z, Z, Z};
    if (p == 0) {
      row = {M, U, A, A};
    } else {
      switch (c.variant) {
        case CaseLabel::Variant::SupR:
          if (p < r) row = {M, M, Z, Z};
          else if (p == r) row = {U, A, A, Z};
          else if (p == 2 * r) row = {A, Z, Z, Z};
          break;
        case CaseLabel::Variant::SubRSupQ:
          if (p < r) row = {M, M, Z, Z};
          else if (p == r) row = {M, U, Z, A};
          else if (p < q) row = {M, Z, Z, Z};
          else if (p == q) row = {U, Z, Z, Z};
          else if (p <= 2 * q - r) row = {A, Z, Z, Z};
          else if (p == 2 * q) row = {A, Z, Z, Z};
          break;
        case CaseLabel::Variant::SubRInf:
          if (p < r) row = {M, M, Z, A};
          else if (p == r) row = {M, U, Z, A};
          else row = {M, Z, Z, A};
          break;
        case CaseLabel::Variant::LinearOnly:
          row = {M, M, A, A};
          break;
      }
    }
    t.rows.push_back(row);
  }
  return t;
}

SeriesReport series(const CaseLabel& c) {
  SeriesReport s;
  const int r = c.r;
  const int q = c.q;
  switch (c.variant) {
    case CaseLabel::Variant::SupR:
      for (int i = 1; i <= r - 1; ++i) s.P.add(2 * i, 2);
      s.P.add(2 * r, 1);
      s.P.add(4 * r, 1);
      s.codim = 2 * r - 1;
      break;
    case CaseLabel::Variant::SubRSupQ:
      for (int i = 1; i <= r - 1; ++i) s.P.add(2 * i, 2);
      s.P.add(2 * r, 1);
      for (int i = r + 1; i <= q - 1; ++i) s.P.add(2 * i, 1);
      for (int i = q; i <= 2 * q - r; ++i) s.P.add(2 * i, 1);
      s.P.add(4 * q, 1);
      s.codim = r + q - 1;
      break;
    case CaseLabel::Variant::SubRInf:
      for (int i = 1; i <= r; ++i) s.P.add(2 * i, 1);
      break;
    case CaseLabel::Variant::LinearOnly:
      break;
  }
  s.index = s.P.at_one();
  return s;
}

std::int64_t index_summary(const CaseLabel& c) {
  switch (c.variant) {
    case CaseLabel::Variant::SupR: return 2 * c.r;
    case CaseLabel::Variant::SubRSupQ: return 2 * c.q;
    case CaseLabel::Variant::SubRInf: return c.r;
    case CaseLabel::Variant::LinearOnly: return 0;
  }
  return 0;
}

int verified_truncation(const CaseLabel& c) {
  switch (c.variant) {
    case CaseLabel::Variant::SupR:
    case CaseLabel::Variant::SubRInf: return 4 * c.r + 2;
    case CaseLabel::Variant::SubRSupQ: return 4 * c.q + 2;
    case CaseLabel::Variant::LinearOnly: return 2;
  }
  return 2;
}

MarkerTable engine_table(const EngineMarkers& markers) {
  MarkerTable t;
  for (int p = 0; 2 * p <= markers.truncation; ++p) {
    const ATerm a0{2 * p, 0, 0};
    const ATerm a1{2 * p, 0, 1};
    t.rows.push_back({markers.normal_marker(a0), markers.normal_marker(a1), markers.transform_marker(a0),
                      markers.transform_marker(a1)});
  }
  return t;
}

EngineComparison compare_with_engine(const GradedField& v, int truncation) {
  Classification cls = classify_detailed(v, truncation);
  EngineComparison out;
  out.label = cls.label;
  out.normal_form = cls.normal_form.field;
  out.markers = engine_markers(cls.normal_form.field, truncation);
  out.engine = engine_table(out.markers);
  out.closed_form = einf_table(cls.label, truncation / 2);
  const bool truncated = truncation < verified_truncation(cls.label);
  out.engine.truncated = out.closed_form.truncated = truncated;

  auto& bad = out.mismatches;
  for (std::size_t p = 0; p < out.closed_form.rows.size(); ++p) {
    if (out.engine.rows[p] != out.closed_form.rows[p]) {
      bad.push_back("row " + std::to_string(p) + ": engine " + row_text(out.engine.rows[p]) + ", closed form " +
                    row_text(out.closed_form.rows[p]));
    }
  }
  for (int p = 0; p <= truncation; ++p) {
    const auto& nrow = out.markers.normal[static_cast<std::size_t>(p)];
    const auto& trow = out.markers.transforms[static_cast<std::size_t>(p)];
    if (p % 2 != 0) {
      if (!nrow.empty() || !trow.empty()) bad.push_back("degree " + std::to_string(p) + " is odd but not empty");
      continue;
    }
    for (const auto* row : {&nrow, &trow}) {
      for (const auto& d : *row) {
        if (!d.term || d.term->d != 0) {
          bad.push_back("degree " + std::to_string(p) + " has a survivor off the d = 0 axis");
        }
      }
    }
  }

  const SeriesReport expected = series(cls.label);
  Polynomial expected_p;
  for (const auto& [e, c] : expected.P.terms)
    if (e <= truncation) expected_p.add(e, c);
  if (!(out.markers.series == expected_p)) {
    bad.push_back("series: engine " + out.markers.series.to_string() + ", closed form " + expected_p.to_string());
  }
  if (expected.codim) {
    if (out.markers.ideal_count != static_cast<std::size_t>(*expected.codim)) {
      bad.push_back("codim: engine " + std::to_string(out.markers.ideal_count) + ", closed form " +
                    std::to_string(*expected.codim));
    }
  }
  if (cls.label.variant != CaseLabel::Variant::LinearOnly && !truncated &&
      out.markers.series.at_one() != index_summary(cls.label)) {
    bad.push_back("index: engine " + std::to_string(out.markers.series.at_one()) + ", closed form " +
                  std::to_string(index_summary(cls.label)));
  }
  if (!tic_tac_toe_consistent(cls.label, out.engine)) bad.push_back("Tic-Tac-Toe zero pattern violated");
  return out;
}

bool tic_tac_toe_consistent(const CaseLabel& c, const MarkerTable& engine) {
  if (c.variant != CaseLabel::Variant::SubRSupQ) return true;
  for (int p = 1; p < static_cast<int>(engine.rows.size()); ++p) {
    const bool expect_zero = (p >= 2 * c.q - c.r + 1 && p <= 2 * c.q - 1) || p > 2 * c.q;
    if ((engine.rows[static_cast<std::size_t>(p)][0] == Marker::Zero) != expect_zero) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

std::string MadicReport::generating_function() const {
  std::string out;
  for (const auto& l : levels) {
    if (l.P.is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (l.level == 0) {
      out += l.P.to_string();
    } else {
      out += (l.level == 1 ? "u" : "u^" + std::to_string(l.level)) + "*(" + l.P.to_string() + ")";
    }
  }
  return out.empty() ? "0" : out;
}

MadicReport madic_refine(const GradedField& v, int truncation, int levels) {
  const RingSpec spec = v.spec();
  if (levels < 1) throw ClassificationError("madic levels must be at least 1");
  if (levels > spec.length()) throw ClassificationError("madic levels exceed the ring truncation order");
  MadicReport out;
  AElement current = v;
  for (int level = 0; level < levels; ++level) {
    Classification cls = classify_detailed(current, truncation);
    const bool linear = cls.label.variant == CaseLabel::Variant::LinearOnly;
    out.levels.push_back({level, cls.label, linear ? Polynomial{} : series(cls.label).P});
    if (level + 1 >= levels) break;

    const EngineMarkers markers = engine_markers(cls.normal_form.field, truncation);
    const PageState& state = cls.normal_form.state;
    AElement next(spec);
    next.add(kRotation, RingElem(spec, Rational(1)));
    for (int p = 1; p <= truncation; ++p) {
      const GradeSpaces& g = state.at(p);
      for (const auto& d : markers.normal[static_cast<std::size_t>(p)]) {
        if (d.marker != Marker::Ideal) continue;
        auto it = std::find(g.normal.begin(), g.normal.end(), d.direction);
        if (it == g.normal.end()) throw std::logic_error("madic_refine: marker direction not in N");
        const auto i = static_cast<std::size_t>(it - g.normal.begin());
        std::vector<Rational> cs(static_cast<std::size_t>(spec.length()));
        for (int j = 0; j < spec.length(); ++j) cs[static_cast<std::size_t>(j)] = g.split(cls.normal_form.field.grade_vector(p, j))[i];
        RingElem c = RingElem(spec, std::move(cs)).divided_by_lambda();
        next.add_scaled(AElement::from_grade_vector(spec, p, d.direction), c);
      }
    }
    if (!next.max_degree() || *next.max_degree() < 1) break;
    current = std::move(next);
  }
  return out;
}

GradedField scale_leading(const GradedField& v) {
  if (auto lo = v.min_degree(); lo && *lo < 0) throw ClassificationError("constant terms are not supported");
  const auto top = v.max_degree();
  for (int s = 1; top && 2 * s <= *top; ++s) {
    RingElem beta = v.coefficient(ATerm{2 * s, 0, 0});
    if (!beta.is_unit()) beta = v.coefficient(ATerm{2 * s, 0, 1});
    if (!beta.is_unit()) continue;

    if (auto mu = unit_root(beta.inverse(), static_cast<unsigned>(2 * s))) {
      // Grading action of A[0,0,0]: the degree-p part scales by mu^p.
      AElement out(v.spec());
      RingElem power(v.spec(), Rational(1));
      for (int p = 0; p <= *top; ++p) {
        AElement part = v.graded_part(p);
        part *= power;
        out += part;
        power *= *mu;
      }
      return out;
    }
    AElement out = v;
    out *= beta.inverse();
    return out;
  }
  throw ClassificationError("no unit leading coefficient to scale");
}

}  // namespace nfs
