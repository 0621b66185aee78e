#include "nfspectral/oracle.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nfs::oracle {

GaussianRational GaussianRational::i_pow(int n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

std::string GaussianRational::to_string() const {
  return "(" + re.get_str() + (sgn(im) < 0 ? " - " : " + ") + Rational(abs(im)).get_str() + "i)";
}

void MonoVF::add(const Monomial& m, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

GaussianRational MonoVF::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussianRational{} : it->second;
}

MonoVF& MonoVF::operator+=(const MonoVF& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

MonoVF& MonoVF::operator*=(const GaussianRational& c) {
  MonoVF out;
  for (const auto& [m, x] : terms_) out.add(m, x * c);
  *this = std::move(out);
  return *this;
}

MonoVF operator-(MonoVF a, const MonoVF& b) {
  for (const auto& [m, c] : b.terms_) a.add(m, GaussianRational{} - c);
  return a;
}

std::string MonoVF::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << c.to_string() << "*x^" << m.a << "*y^" << m.b << (m.comp == Component::X ? "*dx" : "*dy");
  }
  return out.str();
}

MonoVF to_monomials(const ATerm& t) {
  const int k = t.k();
  const int l = t.l();
  MonoVF f;
  f.add({k + 1, l, Component::X}, GaussianRational::i_pow(t.q));
  f.add({l, k + 1, Component::Y}, GaussianRational::i_pow(3 * t.q));
  return f;
}

MonoVF to_monomials(const AElement& e) {
  MonoVF f;
  for (const auto& [t, c] : e.terms()) {
    for (std::size_t j = 1; j < c.coeffs().size(); ++j) {
      if (sgn(c[j]) != 0) throw std::domain_error("to_monomials: oracle works over Q only");
    }
    MonoVF g = to_monomials(t);
    g *= GaussianRational(c.residue());
    f += g;
  }
  return f;
}

MonoVF mono_bracket(const MonoVF& f, const MonoVF& g) {
  // (u . grad) w: for each term u = c x^a y^b e_i and w = c' x^a' y^b' e_j,
  // u_i * d/dx_i (x^a' y^b') contributes to component j.
  auto directional = [](const MonoVF& u, const MonoVF& w) {
    MonoVF out;
    for (const auto& [mu, cu] : u.terms()) {
      for (const auto& [mw, cw] : w.terms()) {
        const int exponent = mu.comp == Component::X ? mw.a : mw.b;
        if (exponent == 0) continue;
        Monomial m{mu.a + mw.a, mu.b + mw.b, mw.comp};
        if (mu.comp == Component::X) {
          m.a -= 1;
        } else {
          m.b -= 1;
        }
        out.add(m, cu * cw * GaussianRational(exponent));
      }
    }
    return out;
  };
  return directional(f, g) - directional(g, f);
}

std::pair<int, int> aterm_indices_for(const Monomial& m) {
  // d/dx part of A(k,l) is x^{k+1} y^l; d/dy part is x^l y^{k+1}.
  if (m.comp == Component::X) return {m.a - 1, m.b};
  return {m.b - 1, m.a};
}

AElement from_monomials(const MonoVF& f) {
  std::map<std::pair<int, int>, std::pair<GaussianRational, GaussianRational>> groups;
  for (const auto& [m, c] : f.terms()) {
    auto kl = aterm_indices_for(m);
    if (kl.first < -1 || kl.second < 0) throw std::domain_error("from_monomials: monomial outside A-basis");
    auto& slot = groups[kl];
    (m.comp == Component::X ? slot.first : slot.second) += c;
  }
  const RingSpec q = RingSpec::rationals();
  AElement out(q);
  for (const auto& [kl, cs] : groups) {
    const auto& [cx, cy] = cs;
    // a0 + i a1 = cx, a0 - i a1 = cy
    GaussianRational a0 = (cx + cy) * GaussianRational(Rational(1, 2));
    GaussianRational a1 = (cx - cy) * GaussianRational(0, Rational(-1, 2));
    if (sgn(a0.im) != 0 || sgn(a1.im) != 0) {
      throw std::domain_error("from_monomials: field is not a rational combination of A-terms");
    }
    const int s = kl.first + kl.second;
    const int d = kl.first - kl.second;
    out.add(s, d, 0, RingElem(q, a0.re));
    out.add(s, d, 1, RingElem(q, a1.re));
  }
  return out;
}

StructureReport check_structure_constants(int s_max, const TermBracket& abstract_bracket) {
  StructureReport report;
  report.s_max = s_max;
  std::vector<ATerm> terms;
  for (int s = -1; s <= s_max; ++s) {
    auto b = grade_basis(s);
    terms.insert(terms.end(), b.begin(), b.end());
  }
  std::vector<MonoVF> realized;
  realized.reserve(terms.size());
  for (const auto& t : terms) realized.push_back(to_monomials(t));
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = 0; j < terms.size(); ++j) {
      AElement abstract =
          abstract_bracket ? abstract_bracket(terms[i], terms[j]) : bracket_terms(terms[i], terms[j]);
      MonoVF direct = mono_bracket(realized[i], realized[j]);
      ++report.pairs_checked;
      if (!(to_monomials(abstract) == direct)) report.mismatches.emplace_back(terms[i], terms[j]);
    }
  }
  return report;
}

std::vector<QVector> echelon_basis(std::vector<QVector> rows, std::size_t dim) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < dim && r < rows.size(); ++c) {
    auto it = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(r), rows.end(),
                           [c](const QVector& v) { return sgn(v[c]) != 0; });
    if (it == rows.end()) continue;
    std::iter_swap(rows.begin() + static_cast<std::ptrdiff_t>(r), it);
    const Rational pivot = rows[r][c];
    for (auto& x : rows[r]) x /= pivot;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t j = 0; j < dim; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

namespace {

// Null space of the linear map given by its columns (each column a vector of length m).
std::vector<QVector> null_space(const std::vector<QVector>& columns, std::size_t m) {
  const std::size_t n = columns.size();
  std::vector<QVector> rows(m, QVector(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) rows[i][j] = columns[j][i];
  auto ech = echelon_basis(std::move(rows), n);
  std::vector<std::size_t> pivots;
  for (const auto& row : ech) {
    std::size_t c = 0;
    while (sgn(row[c]) == 0) ++c;
    pivots.push_back(c);
  }
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    QVector x(n);
    x[f] = 1;
    for (std::size_t i = 0; i < ech.size(); ++i) x[pivots[i]] = -ech[i][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

QVector coordinates_at(const AElement& e, int p) {
  QVector v(grade_dim(p));
  for (const auto& [t, c] : e.terms()) {
    if (t.s == p) v[grade_index(t)] = c.residue();
  }
  return v;
}

}  // namespace

FirstPage brute_force_first_page(const AElement& v0, int p) {
  const MonoVF lin = to_monomials(v0.residue());
  const auto basis = grade_basis(p);
  std::vector<QVector> columns;
  for (const auto& t : basis) {
    AElement img = from_monomials(mono_bracket(lin, to_monomials(t)));
    columns.push_back(coordinates_at(img, p));
  }
  FirstPage out;
  out.kernel = echelon_basis(null_space(columns, grade_dim(p)), grade_dim(p));
  out.image = echelon_basis(columns, grade_dim(p));
  return out;
}

std::vector<PageSpaces> brute_force_pages(const AElement& v, int truncation, int r) {
  const MonoVF field = to_monomials(v.residue().truncated(truncation));
  // [v, e] for every basis element e of degree 1..N, decomposed back into A-terms.
  std::map<int, std::vector<AElement>> images;
  for (int j = 1; j <= truncation; ++j) {
    for (const auto& t : grade_basis(j)) {
      images[j].push_back(from_monomials(mono_bracket(field, to_monomials(t))).truncated(truncation));
    }
  }

  // Columns indexed by basis elements of degrees lo..hi; rows by degrees in [row_lo, row_hi].
  auto build = [&](int lo, int hi, int row_lo, int row_hi) {
    std::vector<QVector> cols;
    for (int j = lo; j <= hi; ++j) {
      for (const auto& img : images[j]) {
        QVector col;
        for (int deg = row_lo; deg <= row_hi; ++deg) {
          QVector part = coordinates_at(img, deg);
          col.insert(col.end(), part.begin(), part.end());
        }
        cols.push_back(std::move(col));
      }
    }
    return cols;
  };
  auto offset_of = [](int lo, int deg) {
    std::size_t off = 0;
    for (int j = lo; j < deg; ++j) off += grade_dim(j);
    return off;
  };
  auto rows_dim = [](int lo, int hi) {
    std::size_t n = 0;
    for (int j = lo; j <= hi; ++j) n += grade_dim(j);
    return n;
  };

  std::vector<PageSpaces> out(static_cast<std::size_t>(truncation) + 1);
  for (int p = 1; p <= truncation; ++p) {
    const std::size_t gp = grade_dim(p);
    // Transformations: t in W_p with [v,t] vanishing in degrees p .. p+r-1 (capped at N).
    {
      const int hi = std::min(truncation, p + r - 1);
      auto cols = build(p, hi, p, hi);
      auto ker = null_space(cols, rows_dim(p, hi));
      std::vector<QVector> leading;
      for (const auto& x : ker) leading.emplace_back(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(gp));
      out[static_cast<std::size_t>(p)].transforms = echelon_basis(std::move(leading), gp);
    }
    // Images: t in W_lo, lo = max(1, p-r+1), with [v,t] vanishing below p; record degree p.
    {
      const int lo = std::max(1, p - r + 1);
      auto cols = build(lo, p, lo, p);
      const std::size_t below = rows_dim(lo, p) - gp;
      std::vector<QVector> lower;
      for (const auto& c : cols) lower.emplace_back(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(below));
      auto ker = below == 0 ? std::vector<QVector>{} : null_space(lower, below);
      std::vector<QVector> leading;
      if (below == 0) {
        for (const auto& c : cols) leading.emplace_back(c.end() - static_cast<std::ptrdiff_t>(gp), c.end());
      } else {
        for (const auto& x : ker) {
          QVector img(gp);
          for (std::size_t j = 0; j < cols.size(); ++j) {
            if (sgn(x[j]) == 0) continue;
            for (std::size_t i = 0; i < gp; ++i) img[i] += x[j] * cols[j][below + i];
          }
          leading.push_back(std::move(img));
        }
      }
      out[static_cast<std::size_t>(p)].images = echelon_basis(std::move(leading), gp);
      (void)offset_of;
    }
  }
  return out;
}

}  // namespace nfs::oracle
