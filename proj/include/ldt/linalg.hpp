#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ldt/errors.hpp"
#include "ldt/vector.hpp"

namespace ldt::linalg {

using Dense = std::vector<Rational>;

struct SparseEntry {
  std::uint32_t index;
  Rational value;
};
using Sparse = std::vector<SparseEntry>;

inline Sparse to_sparse(std::span<const Rational> v) {
  Sparse s;
  for (std::uint32_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.push_back({i, v[i]});
  return s;
}

inline Rational dot(const Dense& a, const Sparse& b) {
  Rational acc;
  for (const auto& e : b)
    if (!a[e.index].is_zero()) acc += a[e.index] * e.value;
  return acc;
}

inline Rational dot(const Dense& a, const Dense& b) {
  Rational acc;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) acc += a[i] * b[i];
  return acc;
}

inline bool all_zero(const Dense& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

// Row-reduced echelon form of a set of row vectors.
struct Echelon {
  std::size_t dim = 0;
  std::vector<Dense> rows;           // reduced rows, rows[i][pivots[i]] == 1
  std::vector<std::size_t> pivots;   // strictly increasing

  [[nodiscard]] std::size_t rank() const { return rows.size(); }

  // Reduces v against the rows; the result is zero iff v is in the row space.
  [[nodiscard]] Dense reduce(Dense v) const {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Rational f = v[pivots[i]];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < dim; ++j)
        if (!rows[i][j].is_zero()) v[j] -= f * rows[i][j];
    }
    return v;
  }

  [[nodiscard]] bool in_span(const Vector& h) const {
    return all_zero(reduce(Dense(h.begin(), h.end())));
  }

  static Echelon of(std::span<const Vector> vectors, std::size_t dim) {
    Echelon e;
    e.dim = dim;
    std::vector<Dense> m;
    for (const auto& v : vectors) {
      if (v.dim() != dim) throw UsageError("dimension mismatch in echelon form");
      m.emplace_back(v.begin(), v.end());
    }
    std::size_t r = 0;
    for (std::size_t col = 0; col < dim && r < m.size(); ++col) {
      std::size_t piv = r;
      while (piv < m.size() && m[piv][col].is_zero()) ++piv;
      if (piv == m.size()) continue;
      std::swap(m[r], m[piv]);
      Rational inv = m[r][col].reciprocal();
      for (auto& x : m[r])
        if (!x.is_zero()) x *= inv;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == r || m[i][col].is_zero()) continue;
        Rational f = m[i][col];
        for (std::size_t j = col; j < dim; ++j)
          if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
      }
      e.pivots.push_back(col);
      ++r;
    }
    m.resize(r);
    e.rows = std::move(m);
    return e;
  }
};

// Coordinates on the kernel {x : <e, x> = 0 for all e in E}. Free coordinates
// of the echelon form parametrize the kernel: x_free = z and
// x_pivot = -sum_f R[pivot][f] z_f.
class Kernel {
 public:
  Kernel() = default;
  Kernel(std::span<const Vector> equalities, std::size_t dim) : ech_(Echelon::of(equalities, dim)) {
    std::vector<bool> is_pivot(dim, false);
    for (auto p : ech_.pivots) is_pivot[p] = true;
    slot_.assign(dim, -1);
    for (std::size_t j = 0; j < dim; ++j)
      if (!is_pivot[j]) {
        slot_[j] = static_cast<std::int64_t>(free_.size());
        free_.push_back(j);
      }
  }

  [[nodiscard]] std::size_t dim() const { return free_.size(); }
  [[nodiscard]] std::size_t ambient_dim() const { return ech_.dim; }

  // The functional x -> <a, x> restricted to the kernel, in z coordinates.
  [[nodiscard]] Dense project(const Vector& a) const {
    Dense out(free_.size());
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (!a[j].is_zero() && slot_[j] >= 0) out[static_cast<std::size_t>(slot_[j])] = a[j];
    for (std::size_t i = 0; i < ech_.rows.size(); ++i) {
      const Rational& ap = a[ech_.pivots[i]];
      if (ap.is_zero()) continue;
      const Dense& row = ech_.rows[i];
      for (std::size_t k = 0; k < free_.size(); ++k)
        if (!row[free_[k]].is_zero()) out[k] -= ap * row[free_[k]];
    }
    return out;
  }

  [[nodiscard]] Vector lift(const Dense& z) const {
    Vector x(ech_.dim);
    for (std::size_t k = 0; k < free_.size(); ++k) x[free_[k]] = z[k];
    for (std::size_t i = 0; i < ech_.rows.size(); ++i) {
      Rational acc;
      const Dense& row = ech_.rows[i];
      for (std::size_t k = 0; k < free_.size(); ++k)
        if (!row[free_[k]].is_zero() && !z[k].is_zero()) acc -= row[free_[k]] * z[k];
      x[ech_.pivots[i]] = acc;
    }
    return x;
  }

 private:
  Echelon ech_;
  std::vector<std::size_t> free_;
  std::vector<std::int64_t> slot_;
};

// Explicit inverse of a square basis matrix, updated in place by pivots.
class BasisInverse {
 public:
  BasisInverse() = default;

  // columns[k] is the k-th basis column (dense, length m). Returns nullopt if
  // the columns are singular.
  static std::optional<BasisInverse> of(const std::vector<Dense>& columns) {
    std::size_t m = columns.size();
    // Gauss-Jordan on [B | I], B stored row-major.
    std::vector<Dense> a(m, Dense(2 * m));
    for (std::size_t k = 0; k < m; ++k) {
      if (columns[k].size() != m) throw InternalError("basis column of wrong length");
      for (std::size_t i = 0; i < m; ++i) a[i][k] = columns[k][i];
      a[k][m + k] = 1;
    }
    for (std::size_t col = 0; col < m; ++col) {
      std::size_t piv = col;
      while (piv < m && a[piv][col].is_zero()) ++piv;
      if (piv == m) return std::nullopt;
      std::swap(a[col], a[piv]);
      Rational inv = a[col][col].reciprocal();
      for (auto& x : a[col])
        if (!x.is_zero()) x *= inv;
      for (std::size_t i = 0; i < m; ++i) {
        if (i == col || a[i][col].is_zero()) continue;
        Rational f = a[i][col];
        for (std::size_t j = col; j < 2 * m; ++j)
          if (!a[col][j].is_zero()) a[i][j] -= f * a[col][j];
      }
    }
    BasisInverse b;
    b.inv_.assign(m, Dense(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) b.inv_[i][j] = std::move(a[i][m + j]);
    return b;
  }

  [[nodiscard]] std::size_t size() const { return inv_.size(); }
  [[nodiscard]] const Dense& row(std::size_t i) const { return inv_[i]; }

  [[nodiscard]] Dense apply(const Sparse& v) const {
    Dense out(inv_.size());
    for (std::size_t i = 0; i < inv_.size(); ++i) out[i] = dot(inv_[i], v);
    return out;
  }

  [[nodiscard]] Dense apply(const Dense& v) const {
    Dense out(inv_.size());
    for (std::size_t i = 0; i < inv_.size(); ++i) out[i] = dot(inv_[i], v);
    return out;
  }

  // y^T = c^T B^{-1}
  [[nodiscard]] Dense left_apply(const Dense& c) const {
    std::size_t m = inv_.size();
    Dense y(m);
    for (std::size_t i = 0; i < m; ++i) {
      if (c[i].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!inv_[i][j].is_zero()) y[j] += c[i] * inv_[i][j];
    }
    return y;
  }

  // Replace basis position r by the column whose transformed image is u
  // (u = B^{-1} a_entering, u[r] != 0).
  void pivot(std::size_t r, const Dense& u) {
    Rational inv = u[r].reciprocal();
    Dense& pr = inv_[r];
    for (auto& x : pr)
      if (!x.is_zero()) x *= inv;
    for (std::size_t i = 0; i < inv_.size(); ++i) {
      if (i == r || u[i].is_zero()) continue;
      const Rational& f = u[i];
      for (std::size_t j = 0; j < pr.size(); ++j)
        if (!pr[j].is_zero()) inv_[i][j] -= f * pr[j];
    }
  }

 private:
  std::vector<Dense> inv_;
};

}  // namespace ldt::linalg
