#pragma once

// Direct brute-force answers for each problem, computed from the raw
// instance, and seeded instance generators for benchmarks and tests.

#include <algorithm>
#include <array>
#include <map>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ldt/problems.hpp"
#include "ldt/random.hpp"

namespace ldt {

namespace brute_force {

inline bool ksum(const std::vector<Rational>& values, std::size_t k) {
  bool found = false;
  detail::for_each_combination(values.size(), k, [&](const std::vector<std::size_t>& c) {
    if (found) return;
    Rational s;
    for (auto i : c) s += values[i];
    found = s.is_zero();
  });
  return found;
}

inline bool subset_sum(const std::vector<Rational>& values, const Rational& target = Rational()) {
  const std::size_t n = values.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    Rational s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s += values[i];
    if (s == target) return true;
  }
  return false;
}

// Ascending groups of (i, j) with equal a_i + b_j; within a group, pairs
// appear in (i, j) lexicographic order.
inline std::vector<std::vector<std::pair<std::size_t, std::size_t>>> sorted_sumset(const std::vector<Rational>& A,
                                                                                   const std::vector<Rational>& B) {
  std::vector<std::pair<Rational, std::pair<std::size_t, std::size_t>>> sums;
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < B.size(); ++j) sums.push_back({A[i] + B[j], {i, j}});
  std::sort(sums.begin(), sums.end());
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out;
  for (std::size_t t = 0; t < sums.size(); ++t) {
    if (t == 0 || sums[t].first != sums[t - 1].first) out.emplace_back();
    out.back().push_back(sums[t].second);
  }
  return out;
}

inline bool kldt(const std::vector<Rational>& alpha, const std::vector<Rational>& values) {
  const std::size_t k = alpha.size() - 1, n = values.size();
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, std::size_t b, const Rational& acc) -> bool {
    if (b == k) return acc.is_zero();
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      used[i] = true;
      bool hit = self(self, b + 1, acc + alpha[b + 1] * values[i]);
      used[i] = false;
      if (hit) return true;
    }
    return false;
  };
  return rec(rec, 0, alpha[0]);
}

inline bool zero_triangle(const std::vector<Edge>& edges, const std::vector<Rational>& weights) {
  std::map<std::pair<std::size_t, std::size_t>, Rational> w;
  std::size_t nv = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    w[std::minmax(edges[i].u, edges[i].v)] = weights[i];
    nv = std::max({nv, edges[i].u, edges[i].v});
  }
  for (std::size_t a = 1; a <= nv; ++a)
    for (std::size_t b = a + 1; b <= nv; ++b)
      for (std::size_t c = b + 1; c <= nv; ++c) {
        auto ab = w.find({a, b}), bc = w.find({b, c}), ac = w.find({a, c});
        if (ab != w.end() && bc != w.end() && ac != w.end() && (ab->second + bc->second + ac->second).is_zero()) return true;
      }
  return false;
}

}  // namespace brute_force

// Integer values uniform in [-10n, 10n].
inline std::vector<Rational> random_values(Rng& rng, std::size_t n, std::size_t count) {
  const auto r = static_cast<std::int64_t>(10 * n);
  std::vector<Rational> v;
  for (std::size_t i = 0; i < count; ++i) v.emplace_back(rng.between(-r, r));
  return v;
}

struct KSumInstance {
  std::vector<Rational> values;
  std::size_t k;
};

// planted: k-1 random values fix the last member of a random k-subset.
// generic: resampled until brute force reports no zero k-sum.
inline KSumInstance generate_ksum(Rng& rng, std::size_t n, std::size_t k, bool planted) {
  for (;;) {
    KSumInstance inst{random_values(rng, n, n), k};
    if (planted) {
      auto idx = rng.sample(n, k);
      Rational s;
      for (std::size_t t = 0; t + 1 < k; ++t) s += inst.values[idx[t]];
      inst.values[idx[k - 1]] = -s;
      return inst;
    }
    if (!brute_force::ksum(inst.values, k)) return inst;
  }
}

inline std::vector<Rational> generate_subset_sum(Rng& rng, std::size_t n, bool planted) {
  for (;;) {
    auto v = random_values(rng, n, n);
    if (planted) {
      std::size_t size = 2 + rng.below(n - 1);
      auto idx = rng.sample(n, std::min(size, n));
      Rational s;
      for (std::size_t t = 0; t + 1 < idx.size(); ++t) s += v[idx[t]];
      v[idx.back()] = -s;
      return v;
    }
    if (!brute_force::subset_sum(v)) return v;
  }
}

inline std::pair<std::vector<Rational>, std::vector<Rational>> generate_sumset(Rng& rng, std::size_t n) {
  return {random_values(rng, n, n), random_values(rng, n, n)};
}

struct KLdtInstance {
  std::vector<Rational> alpha;
  std::vector<Rational> values;
};

// Nonzero coefficients in [-3, 3]; planted instances solve for alpha_0.
inline KLdtInstance generate_kldt(Rng& rng, std::size_t n, std::size_t k, bool planted) {
  for (;;) {
    KLdtInstance inst;
    inst.values = random_values(rng, n, n);
    inst.alpha.emplace_back(rng.between(-10 * static_cast<std::int64_t>(n), 10 * static_cast<std::int64_t>(n)));
    for (std::size_t i = 0; i < k; ++i) {
      std::int64_t a = rng.between(-3, 2);
      inst.alpha.emplace_back(a >= 0 ? a + 1 : a);
    }
    if (planted) {
      auto idx = rng.sample(n, k);
      Rational s;
      for (std::size_t t = 0; t < k; ++t) s += inst.alpha[t + 1] * inst.values[idx[t]];
      inst.alpha[0] = -s;
      return inst;
    }
    if (!brute_force::kldt(inst.alpha, inst.values)) return inst;
  }
}

struct TriangleInstance {
  std::vector<Edge> edges;
  std::vector<Rational> weights;
};

// G(n, 1/2) plus the triangle {1, 2, 3}; planted instances zero out a random
// triangle by solving for one edge weight.
inline TriangleInstance generate_triangles(Rng& rng, std::size_t n, bool planted) {
  for (;;) {
    TriangleInstance inst;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> id;
    for (std::size_t u = 1; u <= n; ++u)
      for (std::size_t v = u + 1; v <= n; ++v) {
        bool forced = u <= 3 && v <= 3;
        if (forced || rng.below(2) == 0) {
          id[{u, v}] = inst.edges.size();
          inst.edges.push_back({u, v});
        }
      }
    inst.weights = random_values(rng, n, inst.edges.size());
    if (planted) {
      std::vector<std::array<std::size_t, 3>> tris;
      for (std::size_t a = 1; a <= n; ++a)
        for (std::size_t b = a + 1; b <= n; ++b)
          for (std::size_t c = b + 1; c <= n; ++c)
            if (id.contains({a, b}) && id.contains({b, c}) && id.contains({a, c})) tris.push_back({a, b, c});
      auto t = tris[rng.below(tris.size())];
      std::size_t e0 = id.at({t[0], t[1]}), e1 = id.at({t[1], t[2]}), e2 = id.at({t[0], t[2]});
      inst.weights[e2] = -(inst.weights[e0] + inst.weights[e1]);
      return inst;
    }
    if (!brute_force::zero_triangle(inst.edges, inst.weights)) return inst;
  }
}

}  // namespace ldt
