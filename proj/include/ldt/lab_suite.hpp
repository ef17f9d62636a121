#pragma once

// Seeded verification suites over the lab primitives. Each returns one
// record per checked case.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "ldt/lab.hpp"
#include "ldt/report.hpp"

namespace ldt::lab {

inline Json vectors_json(const std::vector<Vector>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(v.str());
  return out;
}

inline bool witnesses_verify(const Arrangement& arr) {
  for (const auto& c : arr.cells)
    for (std::size_t i = 0; i < arr.H.size(); ++i)
      if (sign_of(inner_product(arr.H[i], c.witness)) != c.signs[i]) return false;
  return true;
}

inline LabRecord cell_record(const std::vector<Vector>& H, bool differences) {
  Arrangement arr = enumerate_cells(H, differences);
  const std::size_t m = arr.H.size(), n = H.front().dim();
  const double arrangement = arrangement_bound(m, n), finer = finer_bound(m, n);
  const double count = static_cast<double>(arr.cells.size());
  LabRecord r;
  r.check = "cells";
  r.parameters = {{"H", vectors_json(H)}, {"differences", differences}, {"m", m}, {"n", n}};
  r.observed = {{"cells", arr.cells.size()}, {"exact", arr.exact}};
  r.bound = {{"arrangement", arrangement}, {"finer", finer}};
  r.pass = arr.exact && count <= arrangement && count <= finer && witnesses_verify(arr);
  return r;
}

// Fixed small families, then random ones in the given dimension.
inline std::vector<LabRecord> suite_cells(std::size_t dim, std::uint64_t seed = 0, std::size_t random_families = 20) {
  if (dim < 1 || dim > kExactMaxDim) throw CapExceeded("lab cells: dim must be in [1, 3]");
  std::vector<LabRecord> out;
  if (dim == 1) out.push_back(cell_record({Vector{1}}, false));
  if (dim == 2) {
    out.push_back(cell_record({Vector{1, 0}, Vector{0, 1}}, false));
    out.push_back(cell_record({Vector{1, 0}, Vector{0, 1}, Vector{1, 1}}, false));
  }
  Rng rng(seed);
  for (std::size_t t = 0; t < random_families; ++t) {
    const bool differences = t % 2 == 1;
    const std::size_t size = 1 + rng.below(differences ? 4 : kExactMaxHyperplanes);
    std::vector<Vector> H;
    for (std::size_t i = 0; i < size; ++i) H.push_back(random_vector(rng, dim, -2, 2));
    out.push_back(cell_record(H, differences));
  }
  for (std::size_t size : {1, 2, 3}) {
    std::vector<Vector> S;
    for (std::size_t i = 0; i < size; ++i) S.push_back(random_vector(rng, dim, -2, 2));
    auto oc = check_ordering_count(S, 2000, rng.next());
    out.push_back({"orderings", {{"S", vectors_json(S)}, {"samples", 2000}}, {{"distinct", oc.distinct}},
                   {{"bound", oc.bound}}, static_cast<double>(oc.distinct) <= oc.bound});
  }
  return out;
}

// Smallest m <= 44 above the collision threshold, if any.
inline std::optional<std::size_t> threshold_m(std::size_t n, std::int64_t w) {
  for (std::size_t m = 2; m <= kCollisionMaxM; ++m)
    if (collision_threshold_holds(m, n, w)) return m;
  return std::nullopt;
}

// Families of m l1-bounded vectors positive at a random x, sorted by their
// value at x, with m just above the threshold. Each trial must find a
// collision, build a certificate, and the cell of h_1..h_p at x must infer
// h_{p+1} positive. With `distinct`, the family has no repeated vectors, so
// zero gaps cannot supply a trivial collision.
inline std::vector<LabRecord> suite_collision(std::int64_t w, std::size_t n, std::size_t trials, std::uint64_t seed = 0,
                                              bool distinct = false) {
  if (n < 1 || w < 1) throw UsageError("lab collision: n and w must be positive");
  auto m_opt = threshold_m(n, w);
  if (!m_opt) throw CapExceeded("lab collision: threshold exceeds m = 44 for n = " + std::to_string(n) + ", w = " + std::to_string(w));
  const std::size_t m = *m_opt;
  std::vector<LabRecord> out;
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    Vector x = random_vector(rng, n, -5, 5);
    while (x.is_zero()) x = random_vector(rng, n, -5, 5);
    std::vector<Vector> hs;
    for (std::size_t misses = 0; hs.size() < m;) {
      Vector h = random_l1_vector(rng, n, w);
      bool ok = inner_product(h, x).sign() > 0 && (!distinct || std::find(hs.begin(), hs.end(), h) == hs.end());
      if (ok) {
        hs.push_back(std::move(h));
        misses = 0;
      } else if (++misses == 100000) {
        throw UsageError("lab collision: too few distinct vectors with l1 norm <= w for m = " + std::to_string(m));
      }
    }
    std::stable_sort(hs.begin(), hs.end(), [&](const Vector& a, const Vector& b) { return inner_product(a, x) < inner_product(b, x); });

    LabRecord r;
    r.check = "collision";
    r.parameters = {{"trial", t}, {"n", n}, {"w", w}, {"m", m}, {"distinct", distinct}, {"x", x.str()}};
    r.bound = {{"threshold_holds", collision_threshold_holds(m, n, w)}};
    auto alpha = find_signed_collision(hs, w);
    bool ok = alpha.has_value() && combine(gaps(hs), *alpha).is_zero();
    Json obs = {{"found", alpha.has_value()}};
    if (ok) {
      obs["alpha"] = *alpha;
      try {
        auto cert = cone_certificate(hs, *alpha);
        bool nonneg = std::all_of(cert.coefficients.begin(), cert.coefficients.end(), [](const Rational& c) { return c.sign() >= 0; });
        std::vector<Vector> prefix(hs.begin(), hs.begin() + static_cast<std::ptrdiff_t>(cert.p));
        auto inferred = infer_sign(cell_at(prefix, x), hs[cert.p]);
        obs["p"] = cert.p;
        obs["certificate_verified"] = nonneg;
        obs["inferred_positive"] = inferred == Sign::Plus;
        ok = nonneg && inferred == Sign::Plus;
      } catch (const InternalError& e) {
        obs["certificate_error"] = e.what();
        ok = false;
      }
    }
    r.observed = std::move(obs);
    r.pass = ok;
    out.push_back(std::move(r));
  }
  return out;
}

// Nonzero integer vectors; dim in {1, 2}, 2 to 4 members.
inline std::vector<Vector> tiny_family(Rng& rng) {
  const std::size_t dim = 1 + rng.below(2);
  const std::size_t size = 2 + rng.below(3);
  std::vector<Vector> H;
  while (H.size() < size) {
    Vector v = random_vector(rng, dim, -2, 2);
    if (!v.is_zero()) H.push_back(std::move(v));
  }
  return H;
}

// The exhaustive check at every d in [1, |H| + 1] must be monotone.
inline std::vector<LabRecord> suite_infdim(std::size_t families, std::uint64_t seed = 0) {
  std::vector<LabRecord> out;
  Rng rng(seed);
  std::vector<std::vector<Vector>> fams = {{Vector{1}}, {Vector{1}, Vector{-1}}, {Vector{1, 0}, Vector{0, 1}, Vector{1, 1}}};
  while (fams.size() < families) fams.push_back(tiny_family(rng));
  fams.resize(families);
  for (const auto& H : fams) {
    std::vector<bool> verdicts;
    for (std::size_t d = 1; d <= H.size() + 1; ++d) verdicts.push_back(inference_dimension_exact(H, d));
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < verdicts.size(); ++i)
      if (verdicts[i] && !verdicts[i + 1]) monotone = false;
    auto first = std::find(verdicts.begin(), verdicts.end(), true);
    LabRecord r;
    r.check = "infdim";
    r.parameters = {{"H", vectors_json(H)}};
    r.observed = {{"verdicts", verdicts},
                  {"minimal_d", first == verdicts.end() ? Json(nullptr) : Json(first - verdicts.begin() + 1)}};
    r.bound = {{"monotone", true}};
    r.pass = monotone;
    out.push_back(std::move(r));
  }
  return out;
}

// A random cell: 1 to 4 sampled vectors with coordinates in [-2, 2] at a
// random x in [-3, 3]^dim. Every candidate in {-1, 0, 1}^dim plus a few
// random ones is decided by infer_set, infer_sign and Fourier-Motzkin over
// the unreduced cell; all three must agree.
inline bool crosscheck_cell(Rng& rng, Json* detail = nullptr) {
  const std::size_t dim = 1 + rng.below(3);
  const std::size_t size = 1 + rng.below(4);
  std::vector<Vector> T;
  for (std::size_t i = 0; i < size; ++i) T.push_back(random_vector(rng, dim, -2, 2));
  Vector x = random_vector(rng, dim, -3, 3);

  std::vector<Vector> candidates;
  std::size_t total = 1;
  for (std::size_t j = 0; j < dim; ++j) total *= 3;
  for (std::size_t c = 0; c < total; ++c) {
    Vector v(dim);
    std::size_t r = c;
    for (std::size_t j = 0; j < dim; ++j, r /= 3) v[j] = Rational(static_cast<std::int64_t>(r % 3) - 1);
    candidates.push_back(std::move(v));
  }
  for (int i = 0; i < 8; ++i) candidates.push_back(random_vector(rng, dim, -2, 2));

  CellDescription cell = cell_at(T, x);
  std::vector<Member> members;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    members.push_back({static_cast<HyperplaneId>(T.size() + i), candidates[i]});
  InferenceOutcome outcome = infer_set(cell, members, 1);

  bool agree = true;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    std::optional<Sign> engine;
    if (auto it = outcome.inferred.find(members[i].id); it != outcome.inferred.end()) engine = it->second;
    auto literal = infer_sign(cell, candidates[i]);
    auto fm = fm_infer(T, x, candidates[i]);
    if (engine != fm || literal != fm) {
      agree = false;
      if (detail)
        detail->push_back({{"T", vectors_json(T)}, {"x", x.str()}, {"h", candidates[i].str()},
                           {"engine", engine ? sign_string(*engine) : "?"}, {"infer_sign", literal ? sign_string(*literal) : "?"},
                           {"fm", fm ? sign_string(*fm) : "?"}});
    }
  }
  return agree;
}

inline std::vector<LabRecord> suite_crosscheck_lp(std::size_t trials, std::size_t cells, std::uint64_t seed = 0) {
  Rng rng(seed);
  std::size_t agree = 0;
  Json mismatches = Json::array();
  for (std::size_t t = 0; t < trials; ++t) {
    HomogeneousSystem sys = random_system(rng);
    bool a = feasible(sys), b = fm_feasible(sys);
    if (a == b) ++agree;
    else mismatches.push_back({{"trial", t}, {"simplex", a}, {"fm", b}});
  }
  std::vector<LabRecord> out;
  out.push_back({"crosscheck-lp", {{"trials", trials}, {"seed", seed}, {"max_dim", 3}, {"max_rows", 6}},
                 {{"agree", agree}, {"mismatches", mismatches}}, {{"required", trials}}, agree == trials});
  std::size_t cells_agree = 0;
  Json detail = Json::array();
  for (std::size_t t = 0; t < cells; ++t)
    if (crosscheck_cell(rng, &detail)) ++cells_agree;
  out.push_back({"crosscheck-infer", {{"cells", cells}, {"seed", seed}}, {{"agree", cells_agree}, {"mismatches", detail}},
                 {{"required", cells}}, cells_agree == cells});
  return out;
}

}  // namespace ldt::lab
