#pragma once

// Dense exact linear algebra over Q: reduced row echelon forms, kernels,
// complements and solves. Matrices are small (graded pieces of a planar
// vector field algebra), so everything is dense and row-oriented.

#include <cstddef>
#include <optional>
#include <vector>

#include "nfspectral/coeff.hpp"

namespace nfs {

using QVector = std::vector<Rational>;

/// Row-major dense matrix over Q.
struct QMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<QVector> data;

  QMatrix() = default;
  QMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r, QVector(c)) {}
  static QMatrix from_rows(std::vector<QVector> rows, std::size_t cols);
  static QMatrix from_columns(const std::vector<QVector>& columns, std::size_t rows);

  Rational& operator()(std::size_t i, std::size_t j) { return data[i][j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data[i][j]; }

  [[nodiscard]] QMatrix transposed() const;
  [[nodiscard]] QVector apply(const QVector& x) const;
  [[nodiscard]] bool is_zero() const;

  friend bool operator==(const QMatrix&, const QMatrix&) = default;
};

[[nodiscard]] bool is_zero(const QVector& v);
/// y += a * x
void axpy(QVector& y, const Rational& a, const QVector& x);

/// A row space in reduced row echelon form.
struct Echelon {
  std::vector<QVector> rows;  // nonzero rows, pivot entries equal 1
  std::vector<std::size_t> pivots;
  std::size_t dim = 0;  // ambient dimension

  [[nodiscard]] std::size_t rank() const { return rows.size(); }
  /// Column indices that are not pivots.
  [[nodiscard]] std::vector<std::size_t> free_columns() const;
  /// Reduces v against the rows; returns the remainder and fills coeffs
  /// (one per row) so that v = remainder + sum coeffs[i] rows[i].
  QVector reduce(QVector v, QVector* coeffs = nullptr) const;
  [[nodiscard]] bool contains(const QVector& v) const;
};

/// Reduced row echelon form of the span of the given vectors.
Echelon row_reduce(std::vector<QVector> vectors, std::size_t dim);

/// RREF that carries a companion object through the same row operations.
/// Companion must support: Companion& c *= Rational; c.add_scaled(other, Rational).
/// Returns the indices of nonzero rows kept, in pivot order.
template <class Companion>
Echelon row_reduce_with(std::vector<QVector> rows, std::vector<Companion>& companions, std::size_t dim);

/// Basis of { x : A x = 0 } in reduced row echelon form.
std::vector<QVector> kernel(const QMatrix& a);
std::size_t rank(const QMatrix& a);
/// Some x with A x = b, or empty if inconsistent.
std::optional<QVector> solve(const QMatrix& a, const QVector& b);

/// Coordinates of v in a basis (the basis vectors need not be orthogonal or
/// echelon); throws if v is outside their span or the basis is dependent.
class BasisCoordinates {
 public:
  BasisCoordinates() = default;
  BasisCoordinates(const std::vector<QVector>& basis, std::size_t dim);
  [[nodiscard]] QVector coordinates(const QVector& v) const;
  [[nodiscard]] std::size_t size() const { return size_; }

 private:
  std::size_t size_ = 0;
  std::size_t dim_ = 0;
  Echelon echelon_;        // rows of [basis^T | I] style elimination result
  std::vector<QVector> to_coords_;  // one row per echelon row: coefficient combination
};

// ---------------------------------------------------------------------------

template <class Companion>
Echelon row_reduce_with(std::vector<QVector> rows, std::vector<Companion>& companions, std::size_t dim) {
  Echelon out;
  out.dim = dim;
  std::size_t r = 0;
  for (std::size_t col = 0; col < dim && r < rows.size(); ++col) {
    std::size_t piv = r;
    while (piv < rows.size() && sgn(rows[piv][col]) == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    std::swap(companions[r], companions[piv]);
    Rational inv = 1 / rows[r][col];
    for (auto& x : rows[r]) x *= inv;
    companions[r] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][col]) == 0) continue;
      Rational f = -rows[i][col];
      axpy(rows[i], f, rows[r]);
      companions[i].add_scaled(companions[r], f);
    }
    out.pivots.push_back(col);
    ++r;
  }
  rows.resize(r);
  companions.resize(r);
  out.rows = std::move(rows);
  return out;
}

}  // namespace nfs
