#include "nfspectral/linalg.hpp"

#include <stdexcept>

namespace nfs {

namespace {

struct CoeffRow {
  QVector v;
  CoeffRow& operator*=(const Rational& a) {
    for (auto& x : v) x *= a;
    return *this;
  }
  void add_scaled(const CoeffRow& o, const Rational& a) { axpy(v, a, o.v); }
};

}  // namespace

QMatrix QMatrix::from_rows(std::vector<QVector> rows, std::size_t cols) {
  QMatrix m;
  m.rows = rows.size();
  m.cols = cols;
  m.data = std::move(rows);
  for (const auto& r : m.data) {
    if (r.size() != cols) throw std::invalid_argument("QMatrix::from_rows: ragged rows");
  }
  return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVector>& columns, std::size_t rows) {
  QMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw std::invalid_argument("QMatrix::from_columns: bad column length");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

QMatrix QMatrix::transposed() const {
  QMatrix t(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t(j, i) = data[i][j];
  return t;
}

QVector QMatrix::apply(const QVector& x) const {
  QVector y(rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (sgn(data[i][j]) != 0 && sgn(x[j]) != 0) y[i] += data[i][j] * x[j];
  return y;
}

bool QMatrix::is_zero() const {
  for (const auto& r : data)
    if (!nfs::is_zero(r)) return false;
  return true;
}

bool is_zero(const QVector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

void axpy(QVector& y, const Rational& a, const QVector& x) {
  if (sgn(a) == 0) return;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (sgn(x[i]) != 0) y[i] += a * x[i];
}

std::vector<std::size_t> Echelon::free_columns() const {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t c = 0; c < dim; ++c) {
    if (k < pivots.size() && pivots[k] == c) {
      ++k;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

QVector Echelon::reduce(QVector v, QVector* coeffs) const {
  if (coeffs) coeffs->assign(rows.size(), Rational(0));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Rational f = v[pivots[i]];
    if (sgn(f) == 0) continue;
    axpy(v, -f, rows[i]);
    if (coeffs) (*coeffs)[i] = f;
  }
  return v;
}

bool Echelon::contains(const QVector& v) const { return is_zero(reduce(v)); }

Echelon row_reduce(std::vector<QVector> vectors, std::size_t dim) {
  Echelon out;
  out.dim = dim;
  std::size_t r = 0;
  for (std::size_t col = 0; col < dim && r < vectors.size(); ++col) {
    std::size_t piv = r;
    while (piv < vectors.size() && sgn(vectors[piv][col]) == 0) ++piv;
    if (piv == vectors.size()) continue;
    std::swap(vectors[r], vectors[piv]);
    Rational inv = 1 / vectors[r][col];
    for (auto& x : vectors[r]) x *= inv;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (i == r || sgn(vectors[i][col]) == 0) continue;
      Rational f = -vectors[i][col];
      axpy(vectors[i], f, vectors[r]);
    }
    out.pivots.push_back(col);
    ++r;
  }
  vectors.resize(r);
  out.rows = std::move(vectors);
  return out;
}

std::vector<QVector> kernel(const QMatrix& a) {
  Echelon e = row_reduce(a.data, a.cols);
  std::vector<QVector> basis;
  for (std::size_t f : e.free_columns()) {
    QVector x(a.cols);
    x[f] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) x[e.pivots[i]] = -e.rows[i][f];
    basis.push_back(std::move(x));
  }
  return row_reduce(std::move(basis), a.cols).rows;
}

std::size_t rank(const QMatrix& a) { return row_reduce(a.data, a.cols).rank(); }

std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
  std::vector<QVector> aug = a.data;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  Echelon e = row_reduce(std::move(aug), a.cols + 1);
  if (!e.pivots.empty() && e.pivots.back() == a.cols) return std::nullopt;
  QVector x(a.cols);
  for (std::size_t i = 0; i < e.rows.size(); ++i) x[e.pivots[i]] = e.rows[i][a.cols];
  return x;
}

BasisCoordinates::BasisCoordinates(const std::vector<QVector>& basis, std::size_t dim)
    : size_(basis.size()), dim_(dim) {
  std::vector<CoeffRow> comp(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    comp[i].v.assign(basis.size(), Rational(0));
    comp[i].v[i] = 1;
  }
  echelon_ = row_reduce_with(basis, comp, dim);
  if (echelon_.rank() != size_) throw std::invalid_argument("BasisCoordinates: dependent basis");
  to_coords_.reserve(comp.size());
  for (auto& c : comp) to_coords_.push_back(std::move(c.v));
}

QVector BasisCoordinates::coordinates(const QVector& v) const {
  QVector coeffs;
  QVector rem = echelon_.reduce(v, &coeffs);
  if (!is_zero(rem)) throw std::domain_error("BasisCoordinates: vector outside span");
  QVector out(size_);
  for (std::size_t i = 0; i < coeffs.size(); ++i) axpy(out, coeffs[i], to_coords_[i]);
  return out;
}

}  // namespace nfs
