#include "nfspectral/abasis.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

namespace nfs {

bool ATerm::valid_indices(int s, int d) {
  if ((s + d) % 2 != 0) return false;
  const int k = (s + d) / 2;
  const int l = (s - d) / 2;
  return k >= -1 && l >= 0;
}

std::string ATerm::to_string() const {
  return "A[" + std::to_string(s) + "," + std::to_string(d) + "," + std::to_string(q) + "]";
}

ATerm ATerm::parse(const std::string& text) {
  static const std::regex re(R"(\s*A\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw BasisError("malformed term '" + text + "'");
  auto st = canonicalize(std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]));
  if (st.sign != 1) throw BasisError("term '" + text + "' is not canonical (q must be 0 or 1)");
  return st.term;
}

SignedTerm canonicalize(int s, int d, int q) {
  if (!ATerm::valid_indices(s, d)) {
    throw BasisError("not a basis element: A[" + std::to_string(s) + "," + std::to_string(d) + "," +
                     std::to_string(q) + "]");
  }
  int r = ((q % 4) + 4) % 4;
  int sign = 1;
  if (r >= 2) {
    r -= 2;
    sign = -1;
  }
  return {ATerm{s, d, r}, sign};
}

std::vector<std::pair<ATerm, std::int64_t>> structure_constants(const ATerm& a, const ATerm& b) {
  // [A_{k+l}^{k-l,p}, A_{m+n}^{m-n,q}] = (m-k) A^{(k-l)+(m-n), p+q}
  //                                   + n A^{(m-n)-(k-l), q-p} - l A^{(k-l)-(m-n), p-q}
  const std::int64_t k = a.k(), l = a.l(), m = b.k(), n = b.l();
  const int da = a.d, db = b.d, p = a.q, q = b.q;
  const int s = a.s + b.s;
  struct Piece {
    std::int64_t factor;
    int d;
    int q;
  };
  const Piece pieces[3] = {{m - k, da + db, p + q}, {n, db - da, q - p}, {-l, da - db, p - q}};

  std::vector<std::pair<ATerm, std::int64_t>> out;
  for (const auto& pc : pieces) {
    if (pc.factor == 0) continue;
    SignedTerm st;
    try {
      st = canonicalize(s, pc.d, pc.q);
    } catch (const BasisError&) {
      throw std::logic_error("structure constant of [" + a.to_string() + ", " + b.to_string() +
                             "] has nonzero factor on an invalid index");
    }
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& e) { return e.first == st.term; });
    if (it == out.end()) {
      out.emplace_back(st.term, st.sign * pc.factor);
    } else {
      it->second += st.sign * pc.factor;
    }
  }
  std::erase_if(out, [](const auto& e) { return e.second == 0; });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ATerm> grade_basis(int p) {
  std::vector<ATerm> out;
  out.reserve(grade_dim(p));
  for (int d = -p - 2; d <= p; d += 2) {
    out.push_back({p, d, 0});
    out.push_back({p, d, 1});
  }
  return out;
}

ATerm grade_term(int p, std::size_t index) {
  return ATerm{p, -p - 2 + 2 * static_cast<int>(index / 2), static_cast<int>(index % 2)};
}

// ---------------------------------------------------------------------------

AElement::AElement(RingSpec spec, const ATerm& t, RingElem c) : spec_(spec) { add(t, c); }

AElement AElement::term(RingSpec spec, int s, int d, int q, const Rational& c) {
  AElement e(spec);
  e.add(s, d, q, RingElem(spec, c));
  return e;
}

void AElement::add(int s, int d, int q, const RingElem& c) {
  auto st = canonicalize(s, d, q);
  add(st.term, st.sign == 1 ? c : -c);
}

void AElement::add(const ATerm& t, const RingElem& c) {
  if (c.is_zero()) return;
  if (!(c.spec() == spec_)) throw RingError("incompatible ring contexts in AElement::add");
  auto [it, inserted] = terms_.try_emplace(t, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

RingElem AElement::coefficient(const ATerm& t) const {
  auto it = terms_.find(t);
  return it == terms_.end() ? RingElem(spec_) : it->second;
}

std::optional<int> AElement::min_degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first.s;
}

std::optional<int> AElement::max_degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first.s;
}

AElement AElement::degree_range(int lo, int hi) const {
  AElement out(spec_);
  auto it = terms_.lower_bound(ATerm{lo, -(1 << 28), 0});
  for (; it != terms_.end() && it->first.s <= hi; ++it) out.terms_.emplace_hint(out.terms_.end(), *it);
  return out;
}

AElement AElement::graded_part(int s) const { return degree_range(s, s); }

AElement AElement::residue() const {
  AElement out(RingSpec::rationals());
  for (const auto& [t, c] : terms_) {
    if (sgn(c.residue()) != 0) out.terms_.emplace_hint(out.terms_.end(), t, RingElem(out.spec_, c.residue()));
  }
  return out;
}

AElement AElement::embedded(RingSpec target) const {
  AElement out(target);
  for (const auto& [t, c] : terms_) {
    std::vector<Rational> cs(c.coeffs().begin(), c.coeffs().end());
    RingElem e(target, std::move(cs));
    if (!e.is_zero()) out.terms_.emplace_hint(out.terms_.end(), t, std::move(e));
  }
  return out;
}

QVector AElement::grade_vector(int p, int power) const {
  QVector v(grade_dim(p));
  auto it = terms_.lower_bound(ATerm{p, -(1 << 28), 0});
  for (; it != terms_.end() && it->first.s == p; ++it) {
    if (power < it->second.spec().length()) v[grade_index(it->first)] = it->second[static_cast<std::size_t>(power)];
  }
  return v;
}

AElement AElement::from_grade_vector(RingSpec spec, int p, const QVector& v) {
  AElement out(spec);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) != 0) out.terms_.emplace_hint(out.terms_.end(), grade_term(p, i), RingElem(spec, v[i]));
  }
  return out;
}

AElement& AElement::operator+=(const AElement& o) {
  for (const auto& [t, c] : o.terms_) add(t, c);
  return *this;
}

AElement& AElement::operator-=(const AElement& o) {
  for (const auto& [t, c] : o.terms_) add(t, -c);
  return *this;
}

AElement& AElement::operator*=(const Rational& a) {
  if (sgn(a) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [t, c] : terms_) c *= a;
  return *this;
}

AElement& AElement::operator*=(const RingElem& a) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= a;
    if (it->second.is_zero()) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

void AElement::add_scaled(const AElement& o, const Rational& a) {
  if (sgn(a) == 0) return;
  for (const auto& [t, c] : o.terms_) add(t, c * a);
}

void AElement::add_scaled(const AElement& o, const RingElem& a) {
  if (a.is_zero()) return;
  for (const auto& [t, c] : o.terms_) add(t, c * a);
}

AElement AElement::operator-() const {
  AElement out = *this;
  for (auto& [t, c] : out.terms_) c = -c;
  return out;
}

std::string AElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [t, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    std::string cs = c.to_string();
    if (cs.find_first_of(" ") != std::string::npos) cs = "(" + cs + ")";
    out << cs << "*" << t.to_string();
  }
  return out.str();
}

// ---------------------------------------------------------------------------

AElement bracket_terms(const ATerm& a, const ATerm& b, RingSpec spec) {
  AElement out(spec);
  for (const auto& [t, f] : structure_constants(a, b)) out.add(t, RingElem(spec, Rational(f)));
  return out;
}

AElement bracket(const AElement& x, const AElement& y, int max_degree) {
  if (!(x.spec() == y.spec())) throw RingError("incompatible ring contexts in bracket");
  AElement out(x.spec());
  for (const auto& [a, ca] : x.terms()) {
    if (a.s + y.min_degree().value_or(0) > max_degree) break;
    for (const auto& [b, cb] : y.terms()) {
      if (a.s + b.s > max_degree) break;
      auto sc = structure_constants(a, b);
      if (sc.empty()) continue;
      RingElem prod = ca * cb;
      if (prod.is_zero()) continue;
      for (const auto& [t, f] : sc) out.add(t, prod * Rational(f));
    }
  }
  return out;
}

AElement bracket_at(const AElement& x, const AElement& y, int degree) {
  if (!(x.spec() == y.spec())) throw RingError("incompatible ring contexts in bracket");
  AElement out(x.spec());
  const auto& ys = y.terms();
  for (const auto& [a, ca] : x.terms()) {
    const int want = degree - a.s;
    for (auto it = ys.lower_bound(ATerm{want, -(1 << 28), 0}); it != ys.end() && it->first.s == want; ++it) {
      auto sc = structure_constants(a, it->first);
      if (sc.empty()) continue;
      RingElem prod = ca * it->second;
      if (prod.is_zero()) continue;
      for (const auto& [t, f] : sc) out.add(t, prod * Rational(f));
    }
  }
  return out;
}

QMatrix RingMatrix::residue() const {
  QMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = (*this)(i, j).residue();
  return m;
}

RingMatrix ad_matrix(const AElement& x, int p, int target) {
  RingMatrix m(grade_dim(target), grade_dim(p), x.spec());
  const AElement xpart = x.graded_part(target - p);
  const auto basis = grade_basis(p);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    AElement col = bracket(xpart, AElement(x.spec(), basis[j], RingElem(x.spec(), Rational(1))));
    for (const auto& [t, c] : col.terms()) m(grade_index(t), j) = c;
  }
  return m;
}

}  // namespace nfs
