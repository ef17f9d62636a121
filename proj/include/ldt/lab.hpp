#pragma once

// Independent checks for the combinatorics behind the solver: exact
// Fourier-Motzkin feasibility, cell enumeration, exhaustive inference
// dimension, signed collisions among consecutive gaps and the cone
// certificates they yield.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <thread>
#include <unordered_map>
#include <vector>

#include "ldt/errors.hpp"
#include "ldt/inference.hpp"
#include "ldt/lp.hpp"
#include "ldt/oracle.hpp"
#include "ldt/random.hpp"
#include "ldt/vector.hpp"

namespace ldt::lab {

// ---------------------------------------------------------------------------
// Fourier-Motzkin

namespace detail {

struct FmRow {
  std::vector<Rational> a;
  bool strict = false;
  auto operator<=>(const FmRow&) const = default;
};

// Scale so the first nonzero coefficient is +-1; keeps duplicate rows equal.
inline void normalize(FmRow& r) {
  for (const auto& c : r.a) {
    if (c.is_zero()) continue;
    Rational s = c.abs().reciprocal();
    for (auto& v : r.a) v = v * s;
    return;
  }
}

inline bool all_zero(const std::vector<Rational>& a) {
  return std::all_of(a.begin(), a.end(), [](const Rational& v) { return v.is_zero(); });
}

}  // namespace detail

// Exact feasibility by substituting the equalities away and then eliminating
// one variable at a time, tracking strictness. No size caps.
inline bool fm_feasible_uncapped(const HomogeneousSystem& sys) {
  sys.validate();
  using detail::FmRow;
  std::vector<std::vector<Rational>> eqs;
  std::vector<FmRow> rows;
  auto coords = [](const Vector& v) { return std::vector<Rational>(v.begin(), v.end()); };
  for (const auto& v : sys.equalities) eqs.push_back(coords(v));
  for (const auto& v : sys.strict) rows.push_back({coords(v), true});
  for (const auto& v : sys.weak) rows.push_back({coords(v), false});

  std::size_t n = sys.dim;
  auto drop_var = [&](std::vector<Rational>& a, std::size_t j) { a.erase(a.begin() + static_cast<std::ptrdiff_t>(j)); };

  while (!eqs.empty()) {
    auto e = std::move(eqs.back());
    eqs.pop_back();
    std::size_t j = 0;
    while (j < n && e[j].is_zero()) ++j;
    if (j == n) continue;
    // x_j = -(1/e_j) sum_{k != j} e_k x_k
    auto substitute = [&](std::vector<Rational>& a) {
      if (a[j].is_zero()) return drop_var(a, j);
      Rational f = a[j] / e[j];
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) a[k] = a[k] - f * e[k];
      drop_var(a, j);
    };
    for (auto& q : eqs) substitute(q);
    for (auto& r : rows) substitute(r.a);
    --n;
  }

  std::set<FmRow> current;
  for (auto& r : rows) {
    if (detail::all_zero(r.a)) {
      if (r.strict) return false;
      continue;
    }
    detail::normalize(r);
    current.insert(std::move(r));
  }
  while (n > 0) {
    const std::size_t j = n - 1;
    std::vector<FmRow> pos, neg;
    std::set<FmRow> next;
    for (const auto& r : current) {
      int s = r.a[j].sign();
      if (s > 0) pos.push_back(r);
      else if (s < 0) neg.push_back(r);
      else {
        FmRow t = r;
        t.a.pop_back();
        next.insert(std::move(t));
      }
    }
    for (const auto& p : pos)
      for (const auto& q : neg) {
        FmRow c;
        c.strict = p.strict || q.strict;
        Rational wp = -q.a[j], wq = p.a[j];
        for (std::size_t k = 0; k < j; ++k) c.a.push_back(wp * p.a[k] + wq * q.a[k]);
        if (detail::all_zero(c.a)) {
          if (c.strict) return false;
          continue;
        }
        detail::normalize(c);
        next.insert(std::move(c));
      }
    current = std::move(next);
    --n;
  }
  return true;
}

inline constexpr std::size_t kFmMaxDim = 4;
inline constexpr std::size_t kFmMaxRows = 10;

inline bool fm_feasible(const HomogeneousSystem& sys) {
  const std::size_t rows = sys.strict.size() + sys.weak.size() + sys.equalities.size();
  if (sys.dim > kFmMaxDim || rows > kFmMaxRows)
    throw CapExceeded("fm_feasible: limited to dim <= 4 and <= 10 constraints (got dim " + std::to_string(sys.dim) +
                      ", " + std::to_string(rows) + " constraints)");
  return fm_feasible_uncapped(sys);
}

// Full cell of T and T - T at x: every label and every pairwise difference,
// without the sorted-chain reduction.
inline HomogeneousSystem full_cell(const std::vector<Vector>& T, const Vector& x) {
  HomogeneousSystem sys;
  sys.dim = x.dim();
  auto add = [&](const Vector& v) {
    switch (sign_of(inner_product(v, x))) {
      case Sign::Plus: sys.strict.push_back(v); break;
      case Sign::Minus: sys.strict.push_back(-v); break;
      case Sign::Zero: sys.equalities.push_back(v); break;
    }
  };
  for (const auto& h : T) add(h);
  for (std::size_t i = 0; i < T.size(); ++i)
    for (std::size_t j = i + 1; j < T.size(); ++j) add(T[j] - T[i]);
  return sys;
}

// Inference decided by Fourier-Motzkin over the full cell of T at x.
inline std::optional<Sign> fm_infer(const std::vector<Vector>& T, const Vector& x, const Vector& h) {
  if (h.is_zero()) return Sign::Zero;
  const HomogeneousSystem cell = full_cell(T, x);
  auto with = [&](const Vector& v, bool strict) {
    HomogeneousSystem s = cell;
    (strict ? s.strict : s.weak).push_back(v);
    return fm_feasible_uncapped(s);
  };
  switch (sign_of(inner_product(h, x))) {
    case Sign::Plus: return with(-h, false) ? std::nullopt : std::optional(Sign::Plus);
    case Sign::Minus: return with(h, false) ? std::nullopt : std::optional(Sign::Minus);
    case Sign::Zero: return (with(h, true) || with(-h, true)) ? std::nullopt : std::optional(Sign::Zero);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Cells

struct Cell {
  SignVector signs;
  Vector witness;
};

struct Arrangement {
  std::vector<Vector> H;       // the family the signs are taken over
  std::vector<Cell> cells;
  bool exact = true;           // false: sampled, cells.size() is a lower bound
};

// H followed by h_j - h_i for i < j.
inline std::vector<Vector> with_differences(const std::vector<Vector>& H) {
  std::vector<Vector> out = H;
  for (std::size_t i = 0; i < H.size(); ++i)
    for (std::size_t j = i + 1; j < H.size(); ++j) out.push_back(H[j] - H[i]);
  return out;
}

// Depth-first over sign assignments, pruning infeasible prefixes. The sign
// the parent's witness already realizes needs no feasibility call.
inline std::vector<Cell> enumerate_cells_exact(const std::vector<Vector>& H, std::size_t dim) {
  std::vector<Cell> out;
  HomogeneousSystem sys;
  sys.dim = dim;
  SignVector signs;
  auto rec = [&](auto&& self, const Vector& w) -> void {
    const std::size_t i = signs.size();
    if (i == H.size()) {
      out.push_back({signs, w});
      return;
    }
    const Vector& h = H[i];
    const Sign own = sign_of(inner_product(h, w));
    for (Sign s : {Sign::Minus, Sign::Zero, Sign::Plus}) {
      switch (s) {
        case Sign::Plus: sys.strict.push_back(h); break;
        case Sign::Minus: sys.strict.push_back(-h); break;
        case Sign::Zero: sys.equalities.push_back(h); break;
      }
      std::optional<Vector> child;
      if (s == own) child = w;
      else child = interior_witness(sys);
      if (child) {
        signs.push_back(s);
        self(self, *child);
        signs.pop_back();
      }
      if (s == Sign::Zero) sys.equalities.pop_back();
      else sys.strict.pop_back();
    }
  };
  rec(rec, Vector(dim));
  return out;
}

inline constexpr std::size_t kExactMaxDim = 3;
inline constexpr std::size_t kExactMaxHyperplanes = 8;

// Exact when dim <= 3 and |H| <= 8 (before adding differences); otherwise
// the distinct sign vectors among `samples` random integer points.
inline Arrangement enumerate_cells(const std::vector<Vector>& H, bool include_differences = false,
                                   std::uint64_t seed = 0, std::size_t samples = 10000) {
  if (H.empty()) throw UsageError("enumerate_cells: empty family");
  const std::size_t dim = H.front().dim();
  for (const auto& h : H)
    if (h.dim() != dim) throw UsageError("enumerate_cells: inconsistent dimensions");
  Arrangement arr;
  arr.H = include_differences ? with_differences(H) : H;
  if (dim <= kExactMaxDim && H.size() <= kExactMaxHyperplanes) {
    arr.cells = enumerate_cells_exact(arr.H, dim);
    return arr;
  }
  arr.exact = false;
  Rng rng(seed);
  std::map<SignVector, Vector> seen;
  for (std::size_t t = 0; t < samples; ++t) {
    Vector x(dim);
    for (std::size_t j = 0; j < dim; ++j) x[j] = Rational(rng.between(-1000, 1000));
    SignVector s;
    for (const auto& h : arr.H) s.push_back(sign_of(inner_product(h, x)));
    seen.try_emplace(std::move(s), std::move(x));
  }
  for (auto& [s, x] : seen) arr.cells.push_back({s, x});
  return arr;
}

// (2 e m)^n.
inline double arrangement_bound(std::size_t m, std::size_t n) {
  return std::pow(2.0 * std::numbers::e * static_cast<double>(m), static_cast<double>(n));
}

// sum_{s <= n} C(m, s) 2^s.
inline double finer_bound(std::size_t m, std::size_t n) {
  double total = 0, c = 1;
  for (std::size_t s = 0; s <= std::min(m, n); ++s) {
    total += c * std::ldexp(1.0, static_cast<int>(s));
    c = c * static_cast<double>(m - s) / static_cast<double>(s + 1);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Inference dimension

// The cell of T at x as the solver would build it from a sorted sample.
inline CellDescription cell_at(const std::vector<Vector>& T, const Vector& x) {
  if (T.empty()) {
    CellDescription c;
    c.dim = x.dim();
    c.constraints.dim = x.dim();
    return c;
  }
  HiddenPointOracle oracle(x);
  std::vector<Member> members;
  for (std::size_t i = 0; i < T.size(); ++i) members.push_back({static_cast<HyperplaneId>(i), T[i]});
  return cell_from_sample(build_sorted_sample(std::move(members), oracle));
}

inline constexpr std::size_t kInfDimMaxFamily = 10;

// True iff every d-subset S of H, at every cell of S and S - S, has a member
// inferred by the others. Vacuously true when d > |H|.
inline bool inference_dimension_exact(const std::vector<Vector>& H, std::size_t d,
                                      std::size_t threads = inference_threads()) {
  if (d == 0) throw UsageError("inference_dimension_exact: d must be positive");
  if (H.empty()) throw UsageError("inference_dimension_exact: empty family");
  const std::size_t dim = H.front().dim();
  if (H.size() > kInfDimMaxFamily || dim > kExactMaxDim)
    throw CapExceeded("inference_dimension_exact: limited to |H| <= 10 and dim <= 3");
  if (d > H.size()) return true;

  std::vector<std::vector<std::size_t>> subsets;
  std::vector<std::size_t> c(d);
  for (std::size_t i = 0; i < d; ++i) c[i] = i;
  for (;;) {
    subsets.push_back(c);
    std::size_t i = d;
    while (i > 0 && c[i - 1] == H.size() - d + i - 1) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < d; ++j) c[j] = c[j - 1] + 1;
  }

  auto subset_ok = [&](const std::vector<std::size_t>& idx) {
    std::vector<Vector> S;
    for (auto i : idx) S.push_back(H[i]);
    for (const auto& cell : enumerate_cells_exact(with_differences(S), dim)) {
      bool some = false;
      for (std::size_t k = 0; k < S.size() && !some; ++k) {
        std::vector<Vector> rest;
        for (std::size_t t = 0; t < S.size(); ++t)
          if (t != k) rest.push_back(S[t]);
        some = infer_sign(cell_at(rest, cell.witness), S[k]).has_value();
      }
      if (!some) return false;
    }
    return true;
  };

  std::atomic<bool> ok{true};
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t; ok && (t = next++) < subsets.size();)
      if (!subset_ok(subsets[t])) ok = false;
  };
  threads = std::max<std::size_t>(1, std::min(threads, subsets.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return ok;
}

// Smallest d in [1, |H| + 1] with inference_dimension_exact(H, d), by binary
// search over the monotone predicate.
inline std::size_t minimal_inference_dimension(const std::vector<Vector>& H) {
  std::size_t lo = 1, hi = H.size() + 1;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (inference_dimension_exact(H, mid)) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

// ---------------------------------------------------------------------------
// Signed collisions and cone certificates

// alpha over {-1, 0, +1}, one entry per consecutive gap h_{i+1} - h_i.
using SignedCombination = std::vector<int>;

inline std::vector<Vector> gaps(const std::vector<Vector>& sorted_h) {
  std::vector<Vector> g;
  for (std::size_t i = 0; i + 1 < sorted_h.size(); ++i) g.push_back(sorted_h[i + 1] - sorted_h[i]);
  return g;
}

inline Vector combine(const std::vector<Vector>& g, const SignedCombination& alpha) {
  Vector s(g.front().dim());
  for (std::size_t i = 0; i < g.size(); ++i)
    if (alpha[i] != 0) s = s + (alpha[i] > 0 ? g[i] : -g[i]);
  return s;
}

inline constexpr std::size_t kCollisionMaxM = 44;
inline constexpr std::size_t kCollisionMaxEntries = std::size_t{1} << 24;

// 2^{m-1} > (2e(2w+1)m/n)^n, compared in log2.
inline bool collision_threshold_holds(std::size_t m, std::size_t n, std::int64_t w) {
  double base = 2.0 * std::numbers::e * (2.0 * static_cast<double>(w) + 1.0) * static_cast<double>(m) / static_cast<double>(n);
  return static_cast<double>(m) - 1.0 > static_cast<double>(n) * std::log2(base);
}

namespace detail {

struct IntVecHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (auto c : v) h = derive_seed(h, static_cast<std::uint64_t>(c));
    return static_cast<std::size_t>(h);
  }
};

}  // namespace detail

// Distinct beta', beta'' in {0,1}^{m-1} with equal sum_i beta_i (h_{i+1} - h_i),
// returned as alpha = beta' - beta''. Subset sums of the first L gaps are
// hashed for L = 1, 2, ...; a new sum that meets an old one is a collision,
// so the first L admitting one is found and the search is exhaustive.
inline std::optional<SignedCombination> find_signed_collision(const std::vector<Vector>& sorted_h, std::int64_t w) {
  const std::size_t m = sorted_h.size();
  if (m < 2) return std::nullopt;
  if (m > kCollisionMaxM) throw CapExceeded("find_signed_collision: m is limited to 44");
  if (w <= 0) throw UsageError("find_signed_collision: w must be positive");
  const std::size_t dim = sorted_h.front().dim();
  for (const auto& h : sorted_h) {
    if (h.dim() != dim) throw UsageError("find_signed_collision: inconsistent dimensions");
    for (const auto& c : h)
      if (!c.is_integer()) throw UsageError("find_signed_collision: integer coordinates required");
    if (h.l1() > Rational(w)) throw UsageError("find_signed_collision: a vector exceeds the l1 bound w");
  }
  std::vector<std::vector<std::int64_t>> g;
  for (const auto& d : gaps(sorted_h)) {
    std::vector<std::int64_t> v;
    for (const auto& c : d) v.push_back(std::stoll(c.str()));
    g.push_back(std::move(v));
  }

  std::unordered_map<std::vector<std::int64_t>, std::uint64_t, detail::IntVecHash> sums;
  sums.emplace(std::vector<std::int64_t>(dim, 0), 0);
  for (std::size_t L = 0; L < g.size(); ++L) {
    if (2 * sums.size() > kCollisionMaxEntries) throw CapExceeded("find_signed_collision: search budget exhausted");
    std::vector<std::pair<std::vector<std::int64_t>, std::uint64_t>> fresh;
    fresh.reserve(sums.size());
    for (const auto& [v, mask] : sums) {
      auto u = v;
      for (std::size_t j = 0; j < dim; ++j) u[j] += g[L][j];
      const std::uint64_t umask = mask | (std::uint64_t{1} << L);
      if (auto it = sums.find(u); it != sums.end()) {
        SignedCombination alpha(g.size(), 0);
        for (std::size_t i = 0; i <= L; ++i)
          alpha[i] = static_cast<int>(it->second >> i & 1) - static_cast<int>(umask >> i & 1);
        return alpha;
      }
      fresh.emplace_back(std::move(u), umask);
    }
    for (auto& [u, mask] : fresh) sums.emplace(std::move(u), mask);
  }
  return std::nullopt;
}

struct ConeCertificate {
  std::size_t p = 0;                  // 1-based: h_{p+1} is certified from h_1..h_p
  std::vector<Rational> coefficients; // alpha_i + 1 for i < p
  SignedCombination alpha;            // normalized so alpha_p = -1
};

// h_{p+1} - h_1 = sum_{i<p} (alpha_i + 1)(h_{i+1} - h_i), with p the last
// nonzero index of alpha after negating so that alpha_p = -1.
inline ConeCertificate cone_certificate(const std::vector<Vector>& sorted_h, SignedCombination alpha) {
  const auto g = gaps(sorted_h);
  if (alpha.size() != g.size()) throw InternalError("cone_certificate: alpha has the wrong length");
  for (int a : alpha)
    if (a < -1 || a > 1) throw InternalError("cone_certificate: alpha entries must be in {-1, 0, 1}");
  auto last = std::find_if(alpha.rbegin(), alpha.rend(), [](int a) { return a != 0; });
  if (last == alpha.rend()) throw InternalError("cone_certificate: alpha is all zero");
  if (!combine(g, alpha).is_zero()) throw InternalError("cone_certificate: alpha is not a collision");
  if (*last == 1)
    for (auto& a : alpha) a = -a;

  ConeCertificate cert;
  cert.p = static_cast<std::size_t>(alpha.rend() - last);
  for (std::size_t i = 0; i + 1 < cert.p; ++i) cert.coefficients.emplace_back(alpha[i] + 1);
  Vector rhs(sorted_h.front().dim());
  for (std::size_t i = 0; i + 1 < cert.p; ++i) rhs = rhs + cert.coefficients[i] * g[i];
  if (sorted_h[cert.p] - sorted_h[0] != rhs) throw InternalError("cone_certificate: identity fails by substitution");
  cert.alpha = std::move(alpha);
  return cert;
}

// ---------------------------------------------------------------------------
// Orderings

struct OrderingCount {
  std::size_t distinct = 0;
  double bound = 0;  // (2e|S|^2)^n
};

// Distinct preorders of <s, x> over S among random integer points x.
inline OrderingCount check_ordering_count(const std::vector<Vector>& S, std::size_t trials, std::uint64_t seed = 0) {
  if (S.empty()) throw UsageError("check_ordering_count: empty family");
  const std::size_t dim = S.front().dim();
  Rng rng(seed);
  std::set<std::vector<std::size_t>> seen;
  for (std::size_t t = 0; t < trials; ++t) {
    Vector x(dim);
    for (std::size_t j = 0; j < dim; ++j) x[j] = Rational(rng.between(-1000, 1000));
    std::vector<Rational> v;
    for (const auto& s : S) v.push_back(inner_product(s, x));
    std::vector<Rational> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> rank;
    for (const auto& e : v)
      rank.push_back(static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), e) - sorted.begin()));
    seen.insert(std::move(rank));
  }
  OrderingCount out;
  out.distinct = seen.size();
  out.bound = arrangement_bound(S.size() * S.size(), dim);
  if (static_cast<double>(out.distinct) > out.bound) throw InternalError("check_ordering_count: bound violated");
  return out;
}

// ---------------------------------------------------------------------------
// Random inputs

inline Vector random_vector(Rng& rng, std::size_t dim, std::int64_t lo, std::int64_t hi) {
  Vector v(dim);
  for (std::size_t j = 0; j < dim; ++j) v[j] = Rational(rng.between(lo, hi));
  return v;
}

// dim in [1, max_dim], 1..max_rows rows of random kind, coordinates in [-2, 2].
inline HomogeneousSystem random_system(Rng& rng, std::size_t max_dim = 3, std::size_t max_rows = 6) {
  HomogeneousSystem sys;
  sys.dim = 1 + rng.below(max_dim);
  std::size_t rows = 1 + rng.below(max_rows);
  for (std::size_t r = 0; r < rows; ++r) {
    Vector v = random_vector(rng, sys.dim, -2, 2);
    switch (rng.below(3)) {
      case 0: sys.strict.push_back(std::move(v)); break;
      case 1: sys.weak.push_back(std::move(v)); break;
      default: sys.equalities.push_back(std::move(v)); break;
    }
  }
  return sys;
}

// Integer vector with ||v||_1 <= w.
inline Vector random_l1_vector(Rng& rng, std::size_t dim, std::int64_t w) {
  for (;;) {
    Vector v = random_vector(rng, dim, -w, w);
    if (v.l1() <= Rational(w)) return v;
  }
}

}  // namespace ldt::lab
