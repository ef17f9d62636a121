#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "ldt/errors.hpp"
#include "ldt/inference.hpp"
#include "ldt/oracle.hpp"
#include "ldt/random.hpp"
#include "ldt/vector.hpp"

namespace ldt {

struct SolveConfig {
  std::uint64_t seed = 0;
  Rational sample_constant = 2;
  bool strict_comparison_mode = false;
  std::size_t max_rounds = 64;
  std::size_t threads = inference_threads();
};

// How the value of a hyperplane was obtained.
enum class Provenance : std::uint8_t { Sampled, Inferred, Labelled };

struct RoundTrace {
  std::size_t remaining = 0;    // |H_i|
  std::size_t sample = 0;       // |S_i|
  std::size_t inferred = 0;     // removed this round, sample included
  std::uint64_t label_queries = 0;
  std::uint64_t comparison_queries = 0;
};

struct SolveReport {
  SignVector pattern;                   // indexed by the caller's ids
  std::vector<Provenance> provenance;   // indexed by the caller's ids
  QueryLedger ledger;
  std::vector<RoundTrace> rounds;
  std::uint64_t seed = 0;
  std::size_t d_estimate = 0;
  std::size_t distinct = 0;             // |H| after deduplication
};

// ceil(c * n * log2(2 + n * w)), w the largest |coordinate| over the family.
inline std::size_t d_estimate(std::size_t dim, const Rational& max_abs_coord, const Rational& c) {
  if (c.sign() <= 0) throw UsageError("sample constant must be positive");
  double w = max_abs_coord.to_double();
  double n = static_cast<double>(dim);
  double v = c.to_double() * n * std::log2(2.0 + n * w);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(v)));
}

// Zero-error randomized comparison decision tree: while at least 2d
// hyperplanes are undecided, label and sort a uniform sample of 2d of them
// and remove everything the sample infers; label the rest directly.
inline SolveReport solve(const std::vector<Vector>& family, HiddenPointOracle& oracle, const SolveConfig& cfg) {
  if (family.empty()) throw UsageError("solve: empty hyperplane family");
  const std::size_t dim = family.front().dim();
  if (dim != oracle.dim()) throw UsageError("solve: family and oracle dimensions differ");

  std::vector<Vector> distinct;
  std::vector<std::size_t> alias(family.size());
  {
    std::map<Vector, std::size_t> index;
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (family[i].dim() != dim) throw UsageError("solve: inconsistent dimensions in family");
      auto [it, fresh] = index.try_emplace(family[i], distinct.size());
      if (fresh) distinct.push_back(family[i]);
      alias[i] = it->second;
    }
  }
  if (cfg.strict_comparison_mode) oracle.restrict_to(distinct);

  Rational w;
  for (const auto& h : distinct)
    if (h.linf() > w) w = h.linf();

  SolveReport rep;
  rep.seed = cfg.seed;
  rep.distinct = distinct.size();
  rep.d_estimate = d_estimate(dim, w, cfg.sample_constant);
  const std::size_t sample_size = 2 * rep.d_estimate;

  std::vector<std::optional<Sign>> value(distinct.size());
  std::vector<Provenance> prov(distinct.size(), Provenance::Labelled);
  std::vector<Member> remaining;
  remaining.reserve(distinct.size());
  for (std::size_t i = 0; i < distinct.size(); ++i) remaining.push_back({static_cast<HyperplaneId>(i), distinct[i]});

  Rng rng(cfg.seed);
  while (remaining.size() >= sample_size) {
    if (rep.rounds.size() == cfg.max_rounds) throw InternalError("solve: round limit exceeded");
    RoundTrace tr;
    tr.remaining = remaining.size();
    tr.sample = sample_size;
    const auto labels_before = oracle.ledger().label_count;
    const auto comparisons_before = oracle.ledger().comparison_count;

    std::vector<Member> sample;
    for (auto i : rng.sample(remaining.size(), sample_size)) sample.push_back(remaining[i]);
    SortedSample sorted = build_sorted_sample(std::move(sample), oracle);
    CellDescription cell = cell_from_sample(sorted);
    InferenceOutcome out = infer_set(cell, remaining, cfg.threads);

    for (const auto& [id, s] : out.inferred) {
      auto u = static_cast<std::size_t>(id);
      value[u] = s;
      prov[u] = cell.member_labels.contains(id) ? Provenance::Sampled : Provenance::Inferred;
    }
    tr.inferred = out.inferred.size();
    if (tr.inferred < sample_size) throw InternalError("solve: a round removed fewer hyperplanes than it sampled");

    std::vector<Member> next;
    next.reserve(out.undetermined.size());
    for (auto& m : remaining)
      if (!value[static_cast<std::size_t>(m.id)]) next.push_back(std::move(m));
    remaining = std::move(next);

    tr.label_queries = oracle.ledger().label_count - labels_before;
    tr.comparison_queries = oracle.ledger().comparison_count - comparisons_before;
    rep.rounds.push_back(tr);
  }

  for (const auto& m : remaining) {
    auto u = static_cast<std::size_t>(m.id);
    value[u] = oracle.label_query(m.h, m.id);
    prov[u] = Provenance::Labelled;
  }

  rep.pattern.resize(family.size());
  rep.provenance.resize(family.size());
  for (std::size_t i = 0; i < family.size(); ++i) {
    rep.pattern[i] = *value[alias[i]];
    rep.provenance[i] = prov[alias[i]];
  }
  rep.ledger = oracle.ledger();
  return rep;
}

inline bool decide(const SolveReport& report) {
  return std::find(report.pattern.begin(), report.pattern.end(), Sign::Zero) != report.pattern.end();
}

}  // namespace ldt
