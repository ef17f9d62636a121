#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "ldt/errors.hpp"
#include "ldt/linalg.hpp"
#include "ldt/lp.hpp"
#include "ldt/oracle.hpp"
#include "ldt/vector.hpp"

namespace ldt {

using HyperplaneId = std::int64_t;

struct Member {
  HyperplaneId id;
  Vector h;
};

// Outcome of labelling a sample and sorting it by <h, x>.
struct SortedSample {
  std::vector<Member> members;
  std::vector<Sign> labels;          // aligned with members
  std::vector<std::size_t> order;    // member indices, nondecreasing <h, x>
  std::vector<Sign> gap_signs;       // sign <h_(i+1) - h_(i), x>, each Zero or Plus

  [[nodiscard]] std::size_t size() const { return members.size(); }
  [[nodiscard]] std::size_t dim() const { return members.empty() ? 0 : members.front().h.dim(); }

  // Throws InternalError unless labels and gaps agree with the order.
  void check_consistent() const {
    if (labels.size() != members.size() || order.size() != members.size() ||
        gap_signs.size() + 1 != std::max<std::size_t>(members.size(), 1))
      throw InternalError("sorted sample: inconsistent sizes");
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      Sign g = gap_signs[i];
      if (g == Sign::Minus) throw InternalError("sorted sample: negative gap");
      Sign a = labels[order[i]];
      Sign b = labels[order[i + 1]];
      if (static_cast<int>(a) > static_cast<int>(b)) throw InternalError("sorted sample: labels contradict order");
      if (g == Sign::Zero && a != b) throw InternalError("sorted sample: tied values with different labels");
      if (a == Sign::Zero && b == Sign::Zero && g != Sign::Zero) throw InternalError("sorted sample: zero values not tied");
    }
  }
};

// Labels every member, then merge-sorts by comparison queries. Gap signs
// reuse a comparison the sort already made for that pair, else query it.
inline SortedSample build_sorted_sample(std::vector<Member> sample, HiddenPointOracle& oracle) {
  if (sample.empty()) throw UsageError("build_sorted_sample: empty sample");
  SortedSample s;
  s.members = std::move(sample);
  for (const auto& m : s.members) {
    if (m.h.dim() != oracle.dim()) throw UsageError("build_sorted_sample: dimension mismatch");
    s.labels.push_back(oracle.label_query(m.h, m.id));
  }

  std::map<std::pair<std::size_t, std::size_t>, Sign> seen;  // (a, b) -> sign <h_a - h_b, x>
  auto cmp = [&](std::size_t a, std::size_t b) {
    Sign r = oracle.comparison_query(s.members[a].h, s.members[b].h, s.members[a].id, s.members[b].id);
    seen[{a, b}] = r;
    return r;
  };

  std::vector<std::size_t> idx(s.members.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::vector<std::size_t> tmp(idx.size());
  // Bottom-up stable merge sort.
  for (std::size_t width = 1; width < idx.size(); width *= 2) {
    for (std::size_t lo = 0; lo < idx.size(); lo += 2 * width) {
      std::size_t mid = std::min(lo + width, idx.size());
      std::size_t hi = std::min(lo + 2 * width, idx.size());
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (cmp(idx[i], idx[j]) != Sign::Plus)
          tmp[k++] = idx[i++];
        else
          tmp[k++] = idx[j++];
      }
      while (i < mid) tmp[k++] = idx[i++];
      while (j < hi) tmp[k++] = idx[j++];
    }
    std::swap(idx, tmp);
  }
  s.order = std::move(idx);

  for (std::size_t i = 0; i + 1 < s.order.size(); ++i) {
    std::size_t lo = s.order[i], hi = s.order[i + 1];
    Sign g;
    if (auto it = seen.find({hi, lo}); it != seen.end())
      g = it->second;
    else if (auto it2 = seen.find({lo, hi}); it2 != seen.end())
      g = negate(it2->second);
    else
      g = cmp(hi, lo);
    s.gap_signs.push_back(g);
  }
  s.check_consistent();
  return s;
}

// The polyhedral cone P_S(x) of points agreeing with x on S and S - S, kept
// in reduced form: one constraint per label and one per consecutive gap.
struct CellDescription {
  std::size_t dim = 0;
  HomogeneousSystem constraints;
  // Strict rows that generate the same cone as constraints.strict: the
  // positive gaps plus the labels of the members nearest zero on each side.
  std::vector<Vector> generators;
  std::map<HyperplaneId, Sign> member_labels;
  std::optional<Vector> witness;
};

inline CellDescription cell_from_sample(const SortedSample& s) {
  s.check_consistent();
  CellDescription c;
  c.dim = s.dim();
  c.constraints.dim = c.dim;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Vector& h = s.members[i].h;
    c.member_labels[s.members[i].id] = s.labels[i];
    switch (s.labels[i]) {
      case Sign::Plus: c.constraints.strict.push_back(h); break;
      case Sign::Minus: c.constraints.strict.push_back(-h); break;
      case Sign::Zero: c.constraints.equalities.push_back(h); break;
    }
  }
  for (std::size_t i = 0; i + 1 < s.order.size(); ++i) {
    Vector d = s.members[s.order[i + 1]].h - s.members[s.order[i]].h;
    if (s.gap_signs[i] == Sign::Plus) {
      c.generators.push_back(d);
      c.constraints.strict.push_back(std::move(d));
    } else {
      c.constraints.equalities.push_back(std::move(d));
    }
  }
  // Largest negative and smallest positive member; every other label is
  // implied by these through the gap chain.
  std::optional<std::size_t> top_minus, bottom_plus;
  for (std::size_t i = 0; i < s.order.size(); ++i) {
    Sign l = s.labels[s.order[i]];
    if (l == Sign::Minus) top_minus = s.order[i];
    if (l == Sign::Plus && !bottom_plus) bottom_plus = s.order[i];
  }
  if (top_minus) c.generators.push_back(-s.members[*top_minus].h);
  if (bottom_plus) c.generators.push_back(s.members[*bottom_plus].h);
  return c;
}

inline const Vector& ensure_witness(CellDescription& cell) {
  if (!cell.witness) {
    auto w = interior_witness(cell.constraints);
    if (!w) throw InternalError("cell is empty; the hidden point should lie in it");
    cell.witness = std::move(w);
  }
  return *cell.witness;
}

// Decides by feasibility of the cell joined with each alternative sign.
inline std::optional<Sign> infer_sign(const CellDescription& cell, const Vector& h) {
  if (h.dim() != cell.dim) throw UsageError("infer_sign: dimension mismatch");
  if (h.is_zero()) return Sign::Zero;
  Vector w = cell.witness ? *cell.witness : [&] {
    auto opt = interior_witness(cell.constraints);
    if (!opt) throw InternalError("cell is empty; the hidden point should lie in it");
    return *opt;
  }();
  Sign b = sign_of(inner_product(h, w));
  auto with = [&](auto&& add) {
    HomogeneousSystem sys = cell.constraints;
    add(sys);
    return feasible(sys);
  };
  switch (b) {
    case Sign::Plus:
      if (!with([&](HomogeneousSystem& s) { s.weak.push_back(-h); })) return Sign::Plus;
      return std::nullopt;
    case Sign::Minus:
      if (!with([&](HomogeneousSystem& s) { s.weak.push_back(h); })) return Sign::Minus;
      return std::nullopt;
    case Sign::Zero:
      if (!with([&](HomogeneousSystem& s) { s.strict.push_back(h); }) &&
          !with([&](HomogeneousSystem& s) { s.strict.push_back(-h); }))
        return Sign::Zero;
      return std::nullopt;
  }
  return std::nullopt;
}

// Sound, incomplete tests that need no feasibility program over the cell:
// the span rule for zero-labelled members and the cone rule along the sorted
// positive (or negative) members.
inline std::optional<Sign> structural_infer(const SortedSample& s, const Vector& h) {
  if (h.dim() != s.dim()) throw UsageError("structural_infer: dimension mismatch");
  if (h.is_zero()) return Sign::Zero;

  std::vector<Vector> zeros;
  std::vector<std::size_t> plus, minus;  // sorted ascending by value
  for (auto i : s.order) {
    switch (s.labels[i]) {
      case Sign::Zero: zeros.push_back(s.members[i].h); break;
      case Sign::Plus: plus.push_back(i); break;
      case Sign::Minus: minus.push_back(i); break;
    }
  }
  if (!zeros.empty() && linalg::Echelon::of(zeros, h.dim()).in_span(h)) return Sign::Zero;

  auto cone_rule = [&](const std::vector<std::size_t>& chain, const Vector& anchor, bool ascending) {
    std::vector<linalg::Sparse> gens;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      const Vector& a = s.members[chain[i]].h;
      const Vector& b = s.members[chain[i + 1]].h;
      Vector d = ascending ? b - a : a - b;
      gens.push_back(linalg::to_sparse(d.coords()));
    }
    Vector target = h - anchor;
    if (target.is_zero()) return true;
    lp::ConeMembership cone(std::move(gens), h.dim());
    return cone.test(linalg::Dense(target.begin(), target.end())).verdict == lp::ConeMembership::Verdict::Member;
  };
  // h = p_1 + (nonnegative combination of positive-chain gaps) => <h,x> >= <p_1,x> > 0
  if (!plus.empty() && cone_rule(plus, s.members[plus.front()].h, true)) return Sign::Plus;
  // h = m_top - (nonnegative combination of negative-chain gaps) => <h,x> <= <m_top,x> < 0
  if (!minus.empty() && cone_rule(minus, s.members[minus.back()].h, false)) return Sign::Minus;
  return std::nullopt;
}

// Per-cell inference state. The cell is restricted to the kernel of its
// equalities; there a nonzero functional c has a constant sign on the cell
// iff c or -c lies in the cone of the strict generators. Candidates are first
// screened against points already known to lie in the cell's closure, then
// decided exactly by a warm-started cone-membership test whose failure yields
// a new such point.
class InferenceEngine {
 public:
  static constexpr std::size_t kPoolSize = 48;

  explicit InferenceEngine(const CellDescription& cell) : ambient_(cell.dim) {
    kernel_ = linalg::Kernel(cell.constraints.equalities, cell.dim);
    const std::size_t k = kernel_.dim();
    std::vector<linalg::Dense> projected;
    for (const auto& g : cell.generators) {
      linalg::Dense p = kernel_.project(g);
      if (linalg::all_zero(p)) throw InternalError("strict generator vanishes on the cell's span");
      normalize(p);
      projected.push_back(std::move(p));
    }
    std::sort(projected.begin(), projected.end());
    projected.erase(std::unique(projected.begin(), projected.end()), projected.end());

    if (k > 0) {
      HomogeneousSystem reduced;
      reduced.dim = k;
      for (const auto& p : projected) reduced.strict.emplace_back(p);
      auto w = interior_witness(reduced);
      if (!w) throw InternalError("cell is empty; the hidden point should lie in it");
      witness_.assign(w->begin(), w->end());
    }
    std::vector<linalg::Sparse> gens;
    for (const auto& p : projected) gens.push_back(linalg::to_sparse(p));
    cone_ = lp::ConeMembership(std::move(gens), k);
  }

  [[nodiscard]] std::size_t kernel_dim() const { return kernel_.dim(); }
  [[nodiscard]] Vector witness() const { return kernel_.lift(witness_); }
  [[nodiscard]] std::size_t lp_calls() const { return lp_calls_; }
  [[nodiscard]] std::size_t pool_hits() const { return pool_hits_; }

  std::optional<Sign> infer(const Vector& h) {
    if (h.dim() != ambient_) throw UsageError("infer: dimension mismatch");
    linalg::Dense c = kernel_.project(h);
    if (linalg::all_zero(c)) return Sign::Zero;
    int b = linalg::dot(c, witness_).sign();
    if (b == 0) return std::nullopt;  // witness is interior and c is not constant
    if (b < 0)
      for (auto& v : c) v = -v;
    for (std::size_t i = 0; i < pool_.size(); ++i) {
      if (linalg::dot(c, pool_[i]).sign() < 0) {
        if (i > 0) std::swap(pool_[i], pool_[i - 1]);
        ++pool_hits_;
        return std::nullopt;
      }
    }
    ++lp_calls_;
    auto ans = cone_.test(c);
    switch (ans.verdict) {
      case lp::ConeMembership::Verdict::Member: return b > 0 ? Sign::Plus : Sign::Minus;
      case lp::ConeMembership::Verdict::NotInSpan: return std::nullopt;
      case lp::ConeMembership::Verdict::NotInCone:
        if (pool_.size() == kPoolSize) pool_.pop_back();
        pool_.insert(pool_.begin() + static_cast<std::ptrdiff_t>(pool_.size() / 2), std::move(ans.certificate));
        return std::nullopt;
    }
    return std::nullopt;
  }

 private:
  // Scale to a primitive-ish representative so duplicates collapse.
  static void normalize(linalg::Dense& p) {
    for (const auto& v : p)
      if (!v.is_zero()) {
        Rational s = v.abs().reciprocal();
        for (auto& x : p)
          if (!x.is_zero()) x *= s;
        return;
      }
  }

  std::size_t ambient_;
  linalg::Kernel kernel_;
  linalg::Dense witness_;
  lp::ConeMembership cone_;
  std::vector<linalg::Dense> pool_;
  std::size_t lp_calls_ = 0;
  std::size_t pool_hits_ = 0;
};

struct InferenceOutcome {
  std::map<HyperplaneId, Sign> inferred;
  std::vector<HyperplaneId> undetermined;
};

inline std::size_t inference_threads() {
  if (const char* env = std::getenv("LDT_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  return 1;
}

// Decides every candidate. Sample members keep their queried labels. The
// result does not depend on evaluation order or thread count.
inline InferenceOutcome infer_set(const CellDescription& cell, const std::vector<Member>& remaining,
                                  std::size_t threads = inference_threads()) {
  std::vector<std::optional<Sign>> result(remaining.size());
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    if (remaining[i].h.dim() != cell.dim) throw UsageError("infer_set: dimension mismatch");
    if (auto it = cell.member_labels.find(remaining[i].id); it != cell.member_labels.end())
      result[i] = it->second;
    else
      todo.push_back(i);
  }
  if (!todo.empty()) {
    InferenceEngine base(cell);
    threads = std::max<std::size_t>(1, std::min(threads, todo.size() / 64 + 1));
    auto run = [&](InferenceEngine engine, std::size_t lo, std::size_t hi) {
      for (std::size_t t = lo; t < hi; ++t) result[todo[t]] = engine.infer(remaining[todo[t]].h);
    };
    if (threads == 1) {
      run(std::move(base), 0, todo.size());
    } else {
      std::vector<std::thread> pool;
      std::size_t chunk = (todo.size() + threads - 1) / threads;
      for (std::size_t t = 0; t < threads; ++t) {
        std::size_t lo = t * chunk, hi = std::min(todo.size(), lo + chunk);
        if (lo < hi) pool.emplace_back(run, base, lo, hi);
      }
      for (auto& th : pool) th.join();
    }
  }
  InferenceOutcome out;
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    if (result[i])
      out.inferred[remaining[i].id] = *result[i];
    else
      out.undetermined.push_back(remaining[i].id);
  }
  return out;
}

}  // namespace ldt
