#include "nfspectral/engine.hpp"

#include <algorithm>
#include <utility>

namespace nfs {

namespace {

const RingSpec kQ = RingSpec::rationals();

struct ImageRow {
  QVector g;      // vector in G_q
  AElement lift;  // over Q
  ImageRow& operator*=(const Rational& a) {
    for (auto& x : g) x *= a;
    lift *= a;
    return *this;
  }
  void add_scaled(const ImageRow& o, const Rational& a) {
    axpy(g, a, o.g);
    lift.add_scaled(o.lift, a);
  }
};

QVector unit_vector(std::size_t dim, std::size_t i) {
  QVector v(dim);
  v[i] = 1;
  return v;
}

struct DifferentialData {
  QMatrix matrix;                 // N-coordinates, one column per T lift
  std::vector<QVector> b_coeffs;  // B-coordinates, one per T lift
};

DifferentialData differential_data(const PageState& state, int p) {
  const int q = p + state.page;
  if (p < 1 || q > state.truncation) throw std::out_of_range("differential: degree outside truncation window");
  const GradeSpaces& src = state.at(p);
  const GradeSpaces& dst = state.at(q);
  const std::size_t n_dim = dst.normal.size();
  DifferentialData out;
  out.matrix = QMatrix(n_dim, src.transforms.size());
  for (std::size_t i = 0; i < src.transform_lifts.size(); ++i) {
    QVector w = bracket_at(state.vbar, src.transform_lifts[i], q).grade_vector(q);
    QVector c = dst.split(w);
    for (std::size_t k = 0; k < n_dim; ++k) out.matrix(k, i) = c[k];
    out.b_coeffs.emplace_back(c.begin() + static_cast<std::ptrdiff_t>(n_dim), c.end());
  }
  return out;
}

AElement combine(const std::vector<AElement>& lifts, const QVector& coeffs) {
  AElement out(kQ);
  for (std::size_t j = 0; j < lifts.size(); ++j) out.add_scaled(lifts[j], coeffs[j]);
  return out;
}

// B-coordinates of each l^j slice of the degree-n part of the field.
std::vector<QVector> image_components(const PageState& state, int n) {
  const GradeSpaces& g = state.at(n);
  const std::size_t n_dim = g.normal.size();
  std::vector<QVector> slices;
  for (int j = 0; j < state.field.spec().length(); ++j) {
    QVector c = g.split(state.field.grade_vector(n, j));
    slices.emplace_back(c.begin() + static_cast<std::ptrdiff_t>(n_dim), c.end());
  }
  return slices;
}

}  // namespace

void GradeSpaces::refresh(int p) {
  std::vector<QVector> basis = normal;
  basis.insert(basis.end(), image.begin(), image.end());
  if (basis.size() != grade_dim(p)) throw std::logic_error("page bookkeeping: N and B do not span G_p");
  coords = BasisCoordinates(basis, grade_dim(p));
}

// ---------------------------------------------------------------------------

void Polynomial::add(int exponent, std::int64_t c) {
  if (c == 0) return;
  auto& slot = terms[exponent];
  slot += c;
  if (slot == 0) terms.erase(exponent);
}

std::int64_t Polynomial::at_one() const {
  std::int64_t s = 0;
  for (const auto& [e, c] : terms) s += c;
  return s;
}

std::string Polynomial::to_string() const {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms) {
    std::int64_t mag = c;
    if (c < 0) {
      out += "-";
      mag = -c;
    } else if (!out.empty()) {
      out += "+";
    }
    if (e == 0) {
      out += std::to_string(mag);
      continue;
    }
    if (mag != 1) out += std::to_string(mag);
    out += e == 1 ? "t" : "t^" + std::to_string(e);
  }
  return out;
}

// ---------------------------------------------------------------------------

PageState first_page(const GradedField& v, int truncation) {
  if (truncation < 0) throw EngineError("truncation degree must be nonnegative");
  if (auto lo = v.min_degree(); lo && *lo < 0) throw EngineError("constant terms are not supported");
  PageState state;
  state.page = 1;
  state.truncation = truncation;
  state.field = v.truncated(truncation);
  state.vbar = state.field.residue();
  const AElement v0 = state.vbar.graded_part(0);
  if (v0.is_zero()) throw EngineError("linear part must be nonzero");

  state.grades.resize(static_cast<std::size_t>(truncation) + 1);
  for (int p = 0; p <= truncation; ++p) {
    const std::size_t dim = grade_dim(p);
    const QMatrix a = ad_matrix(v0, p, p).residue();
    std::vector<QVector> ker = kernel(a);
    std::vector<QVector> columns = a.transposed().data;
    std::vector<AElement> lifts;
    for (std::size_t j = 0; j < dim; ++j) lifts.push_back(AElement::from_grade_vector(kQ, p, unit_vector(dim, j)));
    Echelon img = row_reduce_with(std::move(columns), lifts, dim);

    std::vector<QVector> both = ker;
    both.insert(both.end(), img.rows.begin(), img.rows.end());
    if (ker.size() + img.rank() != dim || row_reduce(both, dim).rank() != dim) {
      throw EngineError("non-semisimple linear part unsupported");
    }

    GradeSpaces& g = state.grades[static_cast<std::size_t>(p)];
    g.normal = ker;
    g.transforms = ker;
    for (const auto& k : ker) g.transform_lifts.push_back(AElement::from_grade_vector(kQ, p, k));
    g.image = std::move(img.rows);
    g.image_lifts = std::move(lifts);
    g.refresh(p);
  }
  return state;
}

QMatrix differential(const PageState& state, int p) { return differential_data(state, p).matrix; }

void turn_page(PageState& state) {
  const int r = state.page;
  const int n = state.truncation;
  std::vector<DifferentialData> data;
  for (int p = 1; p + r <= n; ++p) data.push_back(differential_data(state, p));

  for (int p = 1; p + r <= n; ++p) {
    const DifferentialData& d = data[static_cast<std::size_t>(p - 1)];
    GradeSpaces& src = state.grades[static_cast<std::size_t>(p)];
    GradeSpaces& dst = state.grades[static_cast<std::size_t>(p + r)];
    const std::size_t t_dim = src.transforms.size();
    if (t_dim == 0) continue;
    const std::size_t gq = grade_dim(p + r);

    // Corrected lifts: l_i - sum_j c_ij u_j has [vbar, .] with no B-part at degree p+r.
    std::vector<AElement> corrected;
    for (std::size_t i = 0; i < t_dim; ++i) {
      AElement l = src.transform_lifts[i];
      l.add_scaled(combine(dst.image_lifts, d.b_coeffs[i]), Rational(-1));
      corrected.push_back(l.truncated(p + r));
    }

    // Image: the N-projections, reduced in N-coordinates.
    std::vector<QVector> n_rows;
    std::vector<ImageRow> img;
    for (std::size_t i = 0; i < t_dim; ++i) {
      QVector col(dst.normal.size());
      QVector g(gq);
      for (std::size_t k = 0; k < dst.normal.size(); ++k) {
        col[k] = d.matrix(k, i);
        axpy(g, col[k], dst.normal[k]);
      }
      n_rows.push_back(std::move(col));
      img.push_back({std::move(g), corrected[i]});
    }
    Echelon ech = row_reduce_with(std::move(n_rows), img, dst.normal.size());

    // Kernel: new transformation directions.
    std::vector<QVector> ker = kernel(d.matrix);
    if (d.matrix.rows == 0) {
      ker.clear();
      for (std::size_t i = 0; i < t_dim; ++i) ker.push_back(unit_vector(t_dim, i));
    }
    std::vector<QVector> lead;
    std::vector<AElement> lifts;
    for (const auto& a : ker) {
      QVector g(grade_dim(p));
      for (std::size_t i = 0; i < t_dim; ++i) axpy(g, a[i], src.transforms[i]);
      lead.push_back(std::move(g));
      lifts.push_back(combine(corrected, a));
    }
    Echelon t_ech = row_reduce_with(std::move(lead), lifts, grade_dim(p));
    src.transforms = std::move(t_ech.rows);
    src.transform_lifts = std::move(lifts);

    if (ech.rank() > 0) {
      std::vector<QVector> kept;
      for (std::size_t f : ech.free_columns()) kept.push_back(dst.normal[f]);
      dst.normal = std::move(kept);
      for (auto& row : img) {
        dst.image.push_back(std::move(row.g));
        dst.image_lifts.push_back(std::move(row.lift));
      }
      dst.refresh(p + r);
    }
  }
  ++state.page;
}

PageState turned(PageState state) {
  turn_page(state);
  return state;
}

AElement exp_ad(const AElement& t, const AElement& v, int truncation) {
  if (auto lo = t.min_degree(); lo && *lo < 1) {
    throw EngineError("generator has a component of degree < 1 and would move the linear part");
  }
  AElement result = v.truncated(truncation);
  AElement term = result;
  for (int m = 1; !term.is_zero(); ++m) {
    term = bracket(t, term, truncation);
    term *= Rational(1, m);
    result += term;
  }
  return result;
}

bool degree_is_normalized(const PageState& state, int n) {
  for (const auto& s : image_components(state, n))
    if (!is_zero(s)) return false;
  return true;
}

void normalize_degree(PageState& state, int n) {
  if (n < 1 || n > state.truncation) throw std::out_of_range("normalize_degree: degree outside window");
  if (state.page < n) throw std::logic_error("normalize_degree: image at this degree is not complete yet");
  const RingSpec spec = state.field.spec();
  const GradeSpaces& g = state.at(n);
  for (int pass = 0; pass <= spec.length(); ++pass) {
    const auto slices = image_components(state, n);
    std::vector<RingElem> c;
    bool any = false;
    for (std::size_t j = 0; j < g.image.size(); ++j) {
      std::vector<Rational> cs(static_cast<std::size_t>(spec.length()));
      for (std::size_t k = 0; k < slices.size(); ++k) cs[k] = slices[k][j];
      c.emplace_back(spec, std::move(cs));
      any = any || !c.back().is_zero();
    }
    if (!any) return;

    std::map<int, AElement> by_degree;
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j].is_zero()) continue;
      const AElement& u = g.image_lifts[j];
      const int p = u.min_degree().value();
      auto it = by_degree.try_emplace(p, AElement(spec)).first;
      it->second.add_scaled(u.embedded(spec), c[j]);
    }
    AElement t(spec);
    for (const auto& [p, part] : by_degree) {
      t += part;
      state.log.push_back({part, p, n - p});
    }
    // The residue changes only in degrees >= n, which keeps every stored lift valid.
    state.field = exp_ad(t, state.field, state.truncation);
    state.vbar = state.field.residue();
  }
  throw std::logic_error("normalize_degree: image components did not vanish");
}

NormalFormResult unique_normal_form(const GradedField& v, int truncation) {
  PageState state = first_page(v, truncation);
  for (int n = 1; n <= truncation; ++n) {
    normalize_degree(state, n);
    turn_page(state);
  }
  if (state.field.spec().is_local()) {
    for (int pass = 0; pass <= state.field.spec().length(); ++pass) {
      bool changed = false;
      for (int n = 1; n <= truncation; ++n) {
        if (degree_is_normalized(state, n)) continue;
        normalize_degree(state, n);
        changed = true;
      }
      if (!changed) break;
    }
    for (int n = 1; n <= truncation; ++n) {
      if (!degree_is_normalized(state, n)) throw std::logic_error("unique_normal_form: cleanup did not converge");
    }
  }
  NormalFormResult out;
  out.field = state.field;
  out.log = state.log;
  out.state = std::move(state);
  return out;
}

PageState compute_pages(const GradedField& v, int truncation, int r) {
  if (r < 0) throw std::out_of_range("compute_pages: negative page");
  if (r == 0) {
    PageState state;
    state.page = 0;
    state.truncation = truncation;
    state.field = v.truncated(truncation);
    state.vbar = state.field.residue();
    state.grades.resize(static_cast<std::size_t>(truncation) + 1);
    for (int p = 0; p <= truncation; ++p) {
      GradeSpaces& g = state.grades[static_cast<std::size_t>(p)];
      for (std::size_t i = 0; i < grade_dim(p); ++i) {
        g.normal.push_back(unit_vector(grade_dim(p), i));
        g.transforms.push_back(unit_vector(grade_dim(p), i));
        g.transform_lifts.push_back(AElement::from_grade_vector(kQ, p, g.transforms.back()));
      }
      g.refresh(p);
    }
    return state;
  }
  PageState state = first_page(v.residue(), truncation);
  while (state.page < r) turn_page(state);
  return state;
}

Polynomial page_series(const PageState& state, int p_max) {
  Polynomial out;
  for (int p = 0; p <= std::min(p_max, state.truncation); ++p) {
    out.add(p, static_cast<std::int64_t>(state.dim_normal(p)) - static_cast<std::int64_t>(state.dim_transforms(p)));
  }
  return out;
}

}  // namespace nfs
