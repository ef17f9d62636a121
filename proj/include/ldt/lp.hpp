#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ldt/errors.hpp"
#include "ldt/linalg.hpp"
#include "ldt/vector.hpp"

namespace ldt {

// Homogeneous constraints on x' in R^dim:
//   <v, x'> > 0 for v in strict, >= 0 for v in weak, = 0 for v in equalities.
struct HomogeneousSystem {
  std::size_t dim = 0;
  std::vector<Vector> strict;
  std::vector<Vector> weak;
  std::vector<Vector> equalities;

  void validate() const {
    if (dim == 0) throw UsageError("homogeneous system of dimension 0");
    for (const auto* group : {&strict, &weak, &equalities})
      for (const auto& v : *group)
        if (v.dim() != dim) throw UsageError("constraint of dimension " + std::to_string(v.dim()) + " in system of dimension " + std::to_string(dim));
  }

  // True iff w satisfies every constraint exactly (strict ones strictly).
  [[nodiscard]] bool satisfied_by(const Vector& w) const {
    for (const auto& v : strict)
      if (inner_product(v, w).sign() <= 0) return false;
    for (const auto& v : weak)
      if (inner_product(v, w).sign() < 0) return false;
    for (const auto& v : equalities)
      if (!inner_product(v, w).is_zero()) return false;
    return true;
  }
};

namespace lp {

using linalg::BasisInverse;
using linalg::Dense;
using linalg::Sparse;

// min cost^T p  s.t.  A p = rhs, p >= 0, with a feasible starting basis.
struct StandardForm {
  std::size_t rows = 0;
  std::vector<Sparse> columns;
  std::vector<Rational> cost;
  Dense rhs;
};

struct SimplexResult {
  std::vector<std::size_t> basis;
  Dense values;  // basic variable values, aligned with basis
  Dense duals;   // y with y^T B = cost_B^T; at optimum A^T y <= cost
  Rational objective;
  std::size_t pivots = 0;
};

inline void dump_tableau(std::ostream& os, const StandardForm& f, const std::vector<std::size_t>& basis) {
  os << "rows=" << f.rows << " cols=" << f.columns.size() << "\n";
  for (std::size_t r = 0; r < f.rows; ++r) {
    os << "r" << r << ":";
    for (std::size_t j = 0; j < f.columns.size(); ++j) {
      Rational v;
      for (const auto& e : f.columns[j])
        if (e.index == r) v = e.value;
      os << ' ' << v;
    }
    os << " | " << f.rhs[r] << "\n";
  }
  os << "cost:";
  for (const auto& c : f.cost) os << ' ' << c;
  os << "\nbasis:";
  for (auto b : basis) os << ' ' << b;
  os << "\n";
}

// Revised primal simplex with Bland's rule (least-index entering variable,
// least-index leaving variable on ratio ties). Terminates on every input.
inline SimplexResult primal_simplex(const StandardForm& f, std::vector<std::size_t> basis) {
  const std::size_t m = f.rows;
  const std::size_t n = f.columns.size();
  if (basis.size() != m) throw InternalError("simplex: basis size mismatch");

  std::vector<Dense> bcols;
  for (auto j : basis) {
    Dense c(m);
    for (const auto& e : f.columns[j]) c[e.index] = e.value;
    bcols.push_back(std::move(c));
  }
  auto binv_opt = BasisInverse::of(bcols);
  if (!binv_opt) throw InternalError("simplex: singular starting basis");
  BasisInverse binv = std::move(*binv_opt);
  Dense x = binv.apply(f.rhs);
  for (const auto& v : x)
    if (v.sign() < 0) throw InternalError("simplex: infeasible starting basis");

  std::vector<std::int64_t> pos(n, -1);
  for (std::size_t i = 0; i < m; ++i) pos[basis[i]] = static_cast<std::int64_t>(i);

  SimplexResult res;
  for (;;) {
    Dense cb(m);
    for (std::size_t i = 0; i < m; ++i) cb[i] = f.cost[basis[i]];
    Dense y = binv.left_apply(cb);

    std::optional<std::size_t> entering;
    for (std::size_t j = 0; j < n; ++j) {
      if (pos[j] >= 0) continue;
      Rational d = f.cost[j] - linalg::dot(y, f.columns[j]);
      if (d.sign() < 0) {
        entering = j;
        break;
      }
    }
    if (!entering) {
      res.duals = std::move(y);
      break;
    }

    Dense u = binv.apply(f.columns[*entering]);
    std::optional<std::size_t> leave;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (u[i].sign() <= 0) continue;
      Rational ratio = x[i] / u[i];
      if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (!leave) throw InternalError("simplex: unbounded program");

    std::size_t r = *leave;
    for (std::size_t i = 0; i < m; ++i)
      if (i != r && !u[i].is_zero()) x[i] -= best * u[i];
    x[r] = best;
    binv.pivot(r, u);
    pos[basis[r]] = -1;
    basis[r] = *entering;
    pos[*entering] = static_cast<std::int64_t>(r);
    ++res.pivots;
  }

  res.objective = Rational();
  for (std::size_t i = 0; i < m; ++i) res.objective += f.cost[basis[i]] * x[i];
  res.basis = std::move(basis);
  res.values = std::move(x);
  return res;
}

struct MaxMarginResult {
  Rational margin;  // t*
  Vector point;     // x' attaining it, inside the box [-1, 1]^dim
};

// Solves  max t  s.t. <a, x'> >= t (strict rows), <b, x'> >= 0 (weak rows,
// equalities as two weak rows), -1 <= x'_j <= 1. The program is solved through
// its LP dual
//   min sum(u + v)  s.t.  -sum lambda_i a_i - sum mu_k b_k + u - v = 0,
//                         sum lambda_i = 1,  lambda, mu, u, v >= 0,
// whose simplex multipliers at optimality are exactly (x', t*).
// Requires at least one strict row.
inline MaxMarginResult max_margin(const HomogeneousSystem& sys) {
  const std::size_t n = sys.dim;
  if (sys.strict.empty()) throw InternalError("max_margin needs a strict row");
  std::vector<const Vector*> weak;
  std::vector<Vector> negated;
  negated.reserve(sys.equalities.size());
  for (const auto& v : sys.weak) weak.push_back(&v);
  for (const auto& v : sys.equalities) {
    weak.push_back(&v);
    negated.push_back(-v);
  }
  for (const auto& v : negated) weak.push_back(&v);

  StandardForm f;
  f.rows = n + 1;
  f.rhs.assign(n + 1, Rational());
  f.rhs[n] = 1;
  auto neg_sparse = [&](const Vector& a, bool with_t) {
    Sparse s;
    for (std::uint32_t j = 0; j < n; ++j)
      if (!a[j].is_zero()) s.push_back({j, -a[j]});
    if (with_t) s.push_back({static_cast<std::uint32_t>(n), Rational(1)});
    return s;
  };
  for (const auto& a : sys.strict) {
    f.columns.push_back(neg_sparse(a, true));
    f.cost.emplace_back(0);
  }
  for (const auto* b : weak) {
    f.columns.push_back(neg_sparse(*b, false));
    f.cost.emplace_back(0);
  }
  const std::size_t u0 = f.columns.size();
  for (std::uint32_t j = 0; j < n; ++j) {
    f.columns.push_back({{j, Rational(1)}});
    f.cost.emplace_back(1);
  }
  const std::size_t v0 = f.columns.size();
  for (std::uint32_t j = 0; j < n; ++j) {
    f.columns.push_back({{j, Rational(-1)}});
    f.cost.emplace_back(1);
  }

  // lambda_0 = 1 and u_j - v_j = a_0j.
  std::vector<std::size_t> basis(n + 1);
  for (std::size_t j = 0; j < n; ++j) basis[j] = sys.strict[0][j].sign() >= 0 ? u0 + j : v0 + j;
  basis[n] = 0;

  SimplexResult r = primal_simplex(f, std::move(basis));
  MaxMarginResult out;
  out.point = Vector(n);
  for (std::size_t j = 0; j < n; ++j) out.point[j] = r.duals[j];
  out.margin = r.duals[n];
  if (out.margin != r.objective) throw InternalError("max_margin: duality gap");
  return out;
}

}  // namespace lp

// Exists x' satisfying all constraint groups simultaneously.
inline std::optional<Vector> interior_witness(const HomogeneousSystem& sys) {
  sys.validate();
  if (sys.strict.empty()) return Vector(sys.dim);
  for (const auto& v : sys.strict)
    if (v.is_zero()) return std::nullopt;
  auto r = lp::max_margin(sys);
  if (r.margin.sign() <= 0) return std::nullopt;
  if (!sys.satisfied_by(r.point)) throw InternalError("interior_witness: witness fails substitution");
  return r.point;
}

inline bool feasible(const HomogeneousSystem& sys) { return interior_witness(sys).has_value(); }

namespace lp {

// Decides whether a target lies in the cone generated by a fixed set of
// vectors, reusing the final basis of each query as the start of the next.
//
// Pivoting is the least-index criss-cross rule on  G lambda = target,
// lambda >= 0: the least-index negative basic variable leaves, the
// least-index nonbasic column with a negative entry in its row enters.
// When the generators do not span the space, unit "locked" columns complete
// the basis; they never leave, and a nonzero locked value means the target
// is outside the linear span.
class ConeMembership {
 public:
  enum class Verdict { Member, NotInCone, NotInSpan };

  struct Answer {
    Verdict verdict;
    Dense certificate;  // NotInCone: y with <g, y> >= 0 for all g and <target, y> < 0
  };

  ConeMembership() = default;

  ConeMembership(std::vector<Sparse> generators, std::size_t dim) : dim_(dim), gens_(std::move(generators)) {
    const std::size_t m = gens_.size();
    // Greedy independent subset by incremental elimination.
    std::vector<Dense> reduced;
    std::vector<std::size_t> lead;
    for (std::size_t j = 0; j < m && basis_.size() < dim_; ++j) {
      Dense v(dim_);
      for (const auto& e : gens_[j]) v[e.index] = e.value;
      for (std::size_t k = 0; k < reduced.size(); ++k) {
        if (v[lead[k]].is_zero()) continue;
        Rational f = v[lead[k]] / reduced[k][lead[k]];
        for (std::size_t i = 0; i < dim_; ++i)
          if (!reduced[k][i].is_zero()) v[i] -= f * reduced[k][i];
      }
      std::size_t l = 0;
      while (l < dim_ && v[l].is_zero()) ++l;
      if (l == dim_) continue;
      reduced.push_back(std::move(v));
      lead.push_back(l);
      basis_.push_back(j);
    }
    std::vector<bool> covered(dim_, false);
    for (auto l : lead) covered[l] = true;
    // Unit vectors on uncovered lead positions complete the echelon basis.
    for (std::size_t i = 0; i < dim_; ++i)
      if (!covered[i]) basis_.push_back(m + i);

    std::vector<Dense> cols;
    for (auto b : basis_) cols.push_back(column_dense(b));
    auto inv = BasisInverse::of(cols);
    if (!inv) throw InternalError("cone membership: singular initial basis");
    binv_ = std::move(*inv);
    pos_.assign(m, -1);
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] < m) pos_[basis_[i]] = static_cast<std::int64_t>(i);
  }

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] std::size_t pivots() const { return pivots_; }

  Answer test(const Dense& target) {
    const std::size_t m = gens_.size();
    Dense x = binv_.apply(target);
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i] >= m && !x[i].is_zero()) return {Verdict::NotInSpan, {}};

    // Criss-cross terminates; the bound only guards against a broken basis.
    const std::size_t guard = 1'000'000;
    for (std::size_t iter = 0; iter < guard; ++iter) {
      std::optional<std::size_t> r;
      for (std::size_t i = 0; i < basis_.size(); ++i)
        if (x[i].sign() < 0 && (!r || basis_[i] < basis_[*r])) r = i;
      if (!r) return {Verdict::Member, {}};

      const Dense& rho = binv_.row(*r);
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < m; ++j) {
        if (pos_[j] >= 0) continue;
        if (linalg::dot(rho, gens_[j]).sign() < 0) {
          entering = j;
          break;
        }
      }
      if (!entering) return {Verdict::NotInCone, rho};

      Dense u = binv_.apply(gens_[*entering]);
      Rational step = x[*r] / u[*r];
      for (std::size_t i = 0; i < basis_.size(); ++i)
        if (i != *r && !u[i].is_zero()) x[i] -= step * u[i];
      x[*r] = step;
      binv_.pivot(*r, u);
      pos_[basis_[*r]] = -1;
      basis_[*r] = *entering;
      pos_[*entering] = static_cast<std::int64_t>(*r);
      ++pivots_;
    }
    throw InternalError("cone membership: pivot guard exceeded");
  }

 private:
  [[nodiscard]] Dense column_dense(std::size_t b) const {
    Dense c(dim_);
    if (b < gens_.size()) {
      for (const auto& e : gens_[b]) c[e.index] = e.value;
    } else {
      c[b - gens_.size()] = 1;
    }
    return c;
  }

  std::size_t dim_ = 0;
  std::vector<Sparse> gens_;
  std::vector<std::size_t> basis_;
  std::vector<std::int64_t> pos_;
  BasisInverse binv_;
  std::size_t pivots_ = 0;
};

}  // namespace lp
}  // namespace ldt
