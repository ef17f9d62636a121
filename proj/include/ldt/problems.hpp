#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ldt/errors.hpp"
#include "ldt/vector.hpp"

namespace ldt {

enum class ProblemKind { KSum, SubsetSum, SortSumset, KLdt, ZeroTriangles };
enum class AnswerKind { Decision, TotalOrder };

inline std::string to_string(ProblemKind k) {
  switch (k) {
    case ProblemKind::KSum: return "ksum";
    case ProblemKind::SubsetSum: return "subsetsum";
    case ProblemKind::SortSumset: return "sortab";
    case ProblemKind::KLdt: return "kldt";
    case ProblemKind::ZeroTriangles: return "triangles";
  }
  return "?";
}

struct Caps {
  std::size_t subset_sum_n = 16;
  std::size_t sumset_pairs = 256;        // |A| * |B|
  std::size_t family_size = 1'000'000;   // |H| for the combinatorial families
};

// Sign of (a_i + b_j) - (a_k + b_l) for two index pairs, read off one
// hyperplane of the sumset family.
struct PairRef {
  std::int64_t h = -1;
  std::int8_t orientation = 0;  // +1: h encodes p - q, -1: h encodes q - p
};

struct Encoding {
  ProblemKind kind = ProblemKind::KSum;
  AnswerKind answer_kind = AnswerKind::Decision;
  std::size_t dim = 0;
  std::vector<Vector> H;
  Vector x;  // the hidden point built from the instance
  // Decision problems: the input indices (or edge ids) each h sums over.
  std::vector<std::vector<std::size_t>> tuples;
  // Sorting A+B.
  std::size_t a_size = 0, b_size = 0;
  std::vector<PairRef> pair_table;  // (p * N + q) for p < q, N = a_size * b_size

  [[nodiscard]] std::size_t pair_count() const { return a_size * b_size; }
};

namespace detail {

inline void check_family_cap(double size, const Caps& caps, const std::string& what) {
  if (size > static_cast<double>(caps.family_size))
    throw CapExceeded(what + ": |H| would be " + std::to_string(static_cast<long long>(size)) + ", cap is " +
                      std::to_string(caps.family_size));
}

inline double binomial(std::size_t n, std::size_t k) {
  double r = 1;
  for (std::size_t i = 0; i < k; ++i) r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return r;
}

// Visits all k-subsets of [0, n) in lexicographic order.
template <typename F>
void for_each_combination(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  if (k > n) return;
  for (;;) {
    f(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

}  // namespace detail

// H = all weight-k 0/1 vectors; x = values.
inline Encoding encode_ksum(const std::vector<Rational>& values, std::size_t k, const Caps& caps = {}) {
  const std::size_t n = values.size();
  if (k < 1) throw UsageError("k-SUM: k must be at least 1");
  if (k > n) throw UsageError("k-SUM: k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
  detail::check_family_cap(detail::binomial(n, k), caps, "k-SUM");
  Encoding e;
  e.kind = ProblemKind::KSum;
  e.dim = n;
  e.x = Vector(values);
  detail::for_each_combination(n, k, [&](const std::vector<std::size_t>& c) {
    Vector h(n);
    for (auto i : c) h[i] = 1;
    e.H.push_back(std::move(h));
    e.tuples.push_back(c);
  });
  return e;
}

// H = {0,1}^n minus the zero vector. With a target T an extra coordinate
// holding -T is appended and every h gets a 1 there, so <h, x> = sum - T.
inline Encoding encode_subset_sum(const std::vector<Rational>& values, const std::optional<Rational>& target = std::nullopt,
                                  const Caps& caps = {}) {
  const std::size_t n = values.size();
  if (n < 1) throw UsageError("SUBSET-SUM: empty input");
  if (n > caps.subset_sum_n)
    throw CapExceeded("SUBSET-SUM: n = " + std::to_string(n) + " exceeds the cap of " + std::to_string(caps.subset_sum_n) +
                      " (|H| = 2^n - 1 grows exponentially)");
  detail::check_family_cap(std::ldexp(1.0, static_cast<int>(n)) - 1, caps, "SUBSET-SUM");
  Encoding e;
  e.kind = ProblemKind::SubsetSum;
  e.dim = target ? n + 1 : n;
  std::vector<Rational> xs = values;
  if (target) xs.push_back(-*target);
  e.x = Vector(std::move(xs));
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    Vector h(e.dim);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) {
        h[i] = 1;
        idx.push_back(i);
      }
    if (target) h[n] = 1;
    e.H.push_back(std::move(h));
    e.tuples.push_back(std::move(idx));
  }
  return e;
}

// x = (A, B); one hyperplane (e_i - e_k) (+) (e_j - e_l) per unordered pair
// of index pairs, up to sign, with duplicates merged.
inline Encoding encode_sort_sumset(const std::vector<Rational>& A, const std::vector<Rational>& B, const Caps& caps = {}) {
  if (A.empty() || B.empty()) throw UsageError("sorting A+B: both A and B must be nonempty");
  if (A.size() * B.size() > caps.sumset_pairs)
    throw CapExceeded("sorting A+B: |A|*|B| = " + std::to_string(A.size() * B.size()) + " exceeds the cap of " +
                      std::to_string(caps.sumset_pairs));
  Encoding e;
  e.kind = ProblemKind::SortSumset;
  e.answer_kind = AnswerKind::TotalOrder;
  e.a_size = A.size();
  e.b_size = B.size();
  e.dim = A.size() + B.size();
  std::vector<Rational> xs = A;
  xs.insert(xs.end(), B.begin(), B.end());
  e.x = Vector(std::move(xs));
  const std::size_t N = e.pair_count();
  e.pair_table.assign(N * N, PairRef{});
  std::map<Vector, std::int64_t> seen;
  for (std::size_t p = 0; p < N; ++p) {
    for (std::size_t q = p + 1; q < N; ++q) {
      std::size_t i = p / e.b_size, j = p % e.b_size, k = q / e.b_size, l = q % e.b_size;
      Vector v(e.dim);
      v[i] += 1;
      v[k] -= 1;
      v[e.a_size + j] += 1;
      v[e.a_size + l] -= 1;
      std::int8_t orient = 1;
      for (const auto& c : v)
        if (!c.is_zero()) {
          if (c.sign() < 0) {
            v = -v;
            orient = -1;
          }
          break;
        }
      if (v.is_zero()) throw InternalError("sumset: distinct index pairs gave a zero vector");
      auto [it, fresh] = seen.try_emplace(v, static_cast<std::int64_t>(e.H.size()));
      if (fresh) {
        e.H.push_back(v);
        e.tuples.push_back({p, q});
      }
      e.pair_table[p * N + q] = PairRef{it->second, orient};
    }
  }
  detail::check_family_cap(static_cast<double>(e.H.size()), caps, "sorting A+B");
  return e;
}

// phi(y) = alpha_0 + sum_i alpha_i y_i over ordered k-tuples of pairwise
// distinct indices. x = (alpha_0, alpha_1 a_1..alpha_1 a_n, ..., alpha_k a_n)
// and h has a 1 at coordinate 0 and one 1 per block, so <h, x> = phi.
inline Encoding encode_kldt(const std::vector<Rational>& alpha, const std::vector<Rational>& values, const Caps& caps = {}) {
  if (alpha.size() < 2) throw UsageError("k-LDT: need alpha_0 and at least one more coefficient");
  const std::size_t k = alpha.size() - 1;
  const std::size_t n = values.size();
  if (n < k) throw UsageError("k-LDT: need at least k = " + std::to_string(k) + " values for distinct indices");
  double count = 1;
  for (std::size_t i = 0; i < k; ++i) count *= static_cast<double>(n - i);
  detail::check_family_cap(count, caps, "k-LDT");
  Encoding e;
  e.kind = ProblemKind::KLdt;
  e.dim = n * k + 1;
  std::vector<Rational> xs{alpha[0]};
  for (std::size_t b = 0; b < k; ++b)
    for (std::size_t i = 0; i < n; ++i) xs.push_back(alpha[b + 1] * values[i]);
  e.x = Vector(std::move(xs));
  std::vector<std::size_t> tuple(k);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, std::size_t b) -> void {
    if (b == k) {
      Vector h(e.dim);
      h[0] = 1;
      for (std::size_t t = 0; t < k; ++t) h[1 + t * n + tuple[t]] = 1;
      e.H.push_back(std::move(h));
      e.tuples.push_back(tuple);
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      used[i] = true;
      tuple[b] = i;
      self(self, b + 1);
      used[i] = false;
    }
  };
  rec(rec, 0);
  return e;
}

struct Edge {
  std::size_t u, v;  // 1-indexed vertices
};

// x = edge weights; one hyperplane per triangle of the known graph.
inline Encoding encode_zero_triangles(const std::vector<Edge>& edges, const std::vector<Rational>& weights, const Caps& caps = {}) {
  if (edges.size() != weights.size()) throw UsageError("zero triangles: edges and weights differ in length");
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> id;
  std::map<std::size_t, std::set<std::size_t>> adj;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    if (u == 0 || v == 0) throw UsageError("zero triangles: vertices are 1-indexed");
    if (u == v) throw UsageError("zero triangles: self-loop at vertex " + std::to_string(u));
    auto key = std::minmax(u, v);
    if (!id.try_emplace(key, i).second)
      throw UsageError("zero triangles: duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
    adj[u].insert(v);
    adj[v].insert(u);
  }
  Encoding e;
  e.kind = ProblemKind::ZeroTriangles;
  e.dim = edges.size();
  e.x = Vector(weights);
  for (const auto& [u, nbrs] : adj)
    for (auto v : nbrs) {
      if (v <= u) continue;
      for (auto w : adj[v]) {
        if (w <= v || !nbrs.contains(w)) continue;
        std::vector<std::size_t> t{id.at({u, v}), id.at({v, w}), id.at({u, w})};
        std::sort(t.begin(), t.end());
        Vector h(e.dim);
        for (auto i : t) h[i] = 1;
        e.H.push_back(std::move(h));
        e.tuples.push_back(std::move(t));
      }
    }
  detail::check_family_cap(static_cast<double>(e.H.size()), caps, "zero triangles");
  return e;
}

struct Answer {
  AnswerKind kind = AnswerKind::Decision;
  bool decision = false;
  std::optional<std::size_t> witness;  // index into H of a zero entry
  // Ascending groups of 0-based (i, j) index pairs; ties share a group.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> order;

  friend bool operator==(const Answer&, const Answer&) = default;
};

inline Sign pair_relation(const Encoding& e, const SignVector& pattern, std::size_t p, std::size_t q) {
  if (p == q) return Sign::Zero;
  const std::size_t N = e.pair_count();
  bool swapped = p > q;
  if (swapped) std::swap(p, q);
  const PairRef& r = e.pair_table[p * N + q];
  Sign s = pattern.at(static_cast<std::size_t>(r.h));
  if (r.orientation < 0) s = negate(s);
  return swapped ? negate(s) : s;
}

// Decision problems: any zero entry. Sorting: the total preorder on sums,
// rebuilt from pairwise signs; an inconsistent pattern throws.
inline Answer extract_answer(const Encoding& e, const SignVector& pattern) {
  if (pattern.size() != e.H.size()) throw UsageError("extract_answer: pattern does not cover H");
  Answer a;
  a.kind = e.answer_kind;
  if (e.answer_kind == AnswerKind::Decision) {
    for (std::size_t i = 0; i < pattern.size(); ++i)
      if (pattern[i] == Sign::Zero) {
        a.decision = true;
        a.witness = i;
        break;
      }
    return a;
  }

  const std::size_t N = e.pair_count();
  std::vector<std::size_t> idx(N), tmp(N);
  for (std::size_t i = 0; i < N; ++i) idx[i] = i;
  for (std::size_t width = 1; width < N; width *= 2) {
    for (std::size_t lo = 0; lo < N; lo += 2 * width) {
      std::size_t mid = std::min(lo + width, N), hi = std::min(lo + 2 * width, N);
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) tmp[k++] = pair_relation(e, pattern, idx[i], idx[j]) != Sign::Plus ? idx[i++] : idx[j++];
      while (i < mid) tmp[k++] = idx[i++];
      while (j < hi) tmp[k++] = idx[j++];
    }
    std::swap(idx, tmp);
  }
  std::vector<std::size_t> group(N);
  for (std::size_t t = 0; t < N; ++t) {
    if (t == 0 || pair_relation(e, pattern, idx[t - 1], idx[t]) != Sign::Zero) a.order.emplace_back();
    group[t] = a.order.size() - 1;
    a.order.back().emplace_back(idx[t] / e.b_size, idx[t] % e.b_size);
  }
  for (std::size_t s = 0; s < N; ++s)
    for (std::size_t t = s + 1; t < N; ++t) {
      Sign want = group[s] == group[t] ? Sign::Zero : Sign::Minus;
      if (pair_relation(e, pattern, idx[s], idx[t]) != want)
        throw InternalError("sign pattern is not a total preorder on A+B; the solver produced an inconsistent answer");
    }
  return a;
}

// ---- instance files -------------------------------------------------------

namespace detail {

inline std::vector<std::string> content_lines(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto c = line.find('#'); c != std::string::npos) line.erase(c);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(line);
  }
  return out;
}

inline std::vector<Rational> parse_rationals(const std::string& line) {
  std::istringstream ss(line);
  std::vector<Rational> out;
  std::string tok;
  while (ss >> tok) out.push_back(Rational::parse(tok));
  return out;
}

}  // namespace detail

// One rational per line (any whitespace separation is accepted).
inline std::vector<Rational> read_values(std::istream& in) {
  std::vector<Rational> out;
  for (const auto& l : detail::content_lines(in))
    for (auto& r : detail::parse_rationals(l)) out.push_back(std::move(r));
  if (out.empty()) throw ParseError("instance has no values");
  return out;
}

// Two lines: the first is parsed as A, the second as B (or alpha and values).
inline std::pair<std::vector<Rational>, std::vector<Rational>> read_two_lines(std::istream& in) {
  auto lines = detail::content_lines(in);
  if (lines.size() != 2) throw ParseError("expected exactly two non-empty lines, found " + std::to_string(lines.size()));
  return {detail::parse_rationals(lines[0]), detail::parse_rationals(lines[1])};
}

// "u v weight" per line, 1-indexed vertices.
inline std::pair<std::vector<Edge>, std::vector<Rational>> read_edges(std::istream& in) {
  std::vector<Edge> edges;
  std::vector<Rational> weights;
  std::size_t lineno = 0;
  for (const auto& l : detail::content_lines(in)) {
    ++lineno;
    std::istringstream ss(l);
    std::string u, v, w, extra;
    if (!(ss >> u >> v >> w) || (ss >> extra)) throw ParseError("edge line " + std::to_string(lineno) + ": expected 'u v weight'");
    auto parse_vertex = [&](const std::string& s) {
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("edge line " + std::to_string(lineno) + ": bad vertex '" + s + "'");
      return static_cast<std::size_t>(std::stoull(s));
    };
    edges.push_back({parse_vertex(u), parse_vertex(v)});
    weights.push_back(Rational::parse(w));
  }
  return {edges, weights};
}

}  // namespace ldt
