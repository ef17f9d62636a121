#pragma once

// Command implementations for the ldt executable. run() never exits the
// process, so tests can drive every command in-process.
//
// Exit codes: 0 success, 1 lab or verification failure, 2 parse or usage
// error, 3 size-cap refusal.

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "ldt/errors.hpp"
#include "ldt/instances.hpp"
#include "ldt/lab_suite.hpp"
#include "ldt/problems.hpp"
#include "ldt/report.hpp"
#include "ldt/solver.hpp"

namespace ldt::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kParse = 2, kCap = 3 };

struct Prepared {
  Encoding encoding;
  Json instance;
};

inline std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json caps_json(const Caps& c) {
  return {{"subset_sum_n", c.subset_sum_n}, {"sumset_pairs", c.sumset_pairs}, {"family_size", c.family_size}};
}

inline Prepared prepare(ProblemKind kind, const std::string& text, std::size_t k, const std::optional<Rational>& target,
                        const Caps& caps = {}) {
  std::istringstream in(text);
  Prepared p;
  Json inst;
  switch (kind) {
    case ProblemKind::KSum: {
      auto v = read_values(in);
      p.encoding = encode_ksum(v, k, caps);
      inst = {{"n", v.size()}, {"k", k}};
      break;
    }
    case ProblemKind::SubsetSum: {
      auto v = read_values(in);
      p.encoding = encode_subset_sum(v, target, caps);
      inst = {{"n", v.size()}};
      if (target) inst["target"] = target->str();
      break;
    }
    case ProblemKind::SortSumset: {
      auto [A, B] = read_two_lines(in);
      p.encoding = encode_sort_sumset(A, B, caps);
      inst = {{"n", A.size()}, {"a_size", A.size()}, {"b_size", B.size()}};
      break;
    }
    case ProblemKind::KLdt: {
      auto [alpha, values] = read_two_lines(in);
      p.encoding = encode_kldt(alpha, values, caps);
      inst = {{"n", values.size()}, {"k", alpha.empty() ? 0 : alpha.size() - 1}};
      break;
    }
    case ProblemKind::ZeroTriangles: {
      auto [edges, weights] = read_edges(in);
      p.encoding = encode_zero_triangles(edges, weights, caps);
      std::size_t nv = 0;
      for (const auto& e : edges) nv = std::max({nv, e.u, e.v});
      inst = {{"n", nv}, {"edges", edges.size()}};
      break;
    }
  }
  inst["dim"] = p.encoding.dim;
  inst["hyperplanes"] = p.encoding.H.size();
  inst["caps"] = caps_json(caps);
  p.instance = std::move(inst);
  return p;
}

struct SolveOptions {
  std::uint64_t seed = 0;
  Rational sample_constant = 2;
  bool strict_comparison = false;
  bool log_queries = false;
};

// An empty family (a graph without triangles) is answered without queries.
inline SolveReport solve_encoding(const Encoding& e, HiddenPointOracle& oracle, const SolveConfig& cfg) {
  if (!e.H.empty()) return solve(e.H, oracle, cfg);
  SolveReport rep;
  rep.seed = cfg.seed;
  rep.ledger = oracle.ledger();
  return rep;
}

inline RunReport run_solve(ProblemKind kind, Prepared prepared, const SolveOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  HiddenPointOracle oracle(prepared.encoding.x);
  if (opt.log_queries) oracle.enable_log();
  SolveConfig cfg;
  cfg.seed = opt.seed;
  cfg.sample_constant = opt.sample_constant;
  cfg.strict_comparison_mode = opt.strict_comparison;
  RunReport r;
  r.problem = kind;
  r.solve = solve_encoding(prepared.encoding, oracle, cfg);
  Answer a = extract_answer(prepared.encoding, r.solve.pattern);
  r.answer = answer_json(prepared.encoding, a);
  r.instance = std::move(prepared.instance);
  r.instance["distinct"] = r.solve.distinct;
  r.sample_constant = opt.sample_constant;
  r.strict_comparison = opt.strict_comparison;
  r.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline void print_text(std::ostream& out, const RunReport& r) {
  const Json& a = r.answer;
  if (a.contains("decision")) {
    out << "answer: " << (a["decision"].get<bool>() ? "true" : "false") << '\n';
    if (!a["witness"].is_null()) out << "witness: " << a["witness"].dump() << '\n';
  } else {
    out << "order:";
    for (const auto& g : a["order"]) {
      out << " [";
      bool first = true;
      for (const auto& p : g) {
        out << (first ? "" : ",") << '(' << p[0] << ',' << p[1] << ')';
        first = false;
      }
      out << ']';
    }
    out << '\n';
  }
  out << "hyperplanes: " << r.instance["hyperplanes"] << " (" << r.solve.distinct << " distinct)\n";
  out << "label queries: " << r.solve.ledger.label_count << '\n';
  out << "comparison queries: " << r.solve.ledger.comparison_count << '\n';
  out << "rounds: " << r.solve.rounds.size() << '\n';
  out << "seed: " << r.solve.seed << '\n';
}

inline ProblemKind problem_from_string(const std::string& s) {
  for (auto k : {ProblemKind::KSum, ProblemKind::SubsetSum, ProblemKind::SortSumset, ProblemKind::KLdt, ProblemKind::ZeroTriangles})
    if (to_string(k) == s) return k;
  throw UsageError("unknown problem '" + s + "'");
}

// ---- bench ------------------------------------------------------------------

struct BenchRow {
  std::size_t size = 0, trial = 0;
  bool planted = false;
  std::string answer;
  std::uint64_t label_q = 0, cmp_q = 0;
  std::size_t rounds = 0;
  bool correct = false;
};

inline constexpr const char* kBenchHeader = "size,trial,planted,answer,label_q,cmp_q,rounds,correct";

struct BenchOptions {
  ProblemKind problem = ProblemKind::KSum;
  std::vector<std::size_t> sizes;
  std::size_t trials = 10;
  std::size_t k = 3;
  std::uint64_t seed = 0;
  std::uint64_t instance_seed = 0;
  Rational sample_constant = 2;
};

// Instance and solver randomness come from separate streams, so one instance
// can be re-solved under many solver seeds.
inline BenchRow bench_trial(const BenchOptions& o, std::size_t size, std::size_t trial) {
  const std::uint64_t stream = (static_cast<std::uint64_t>(size) << 32) | trial;
  Rng rng(derive_seed(o.instance_seed, stream));
  const bool planted = o.problem != ProblemKind::SortSumset && trial % 2 == 0;
  Encoding e;
  bool expected = false;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> expected_order;
  switch (o.problem) {
    case ProblemKind::KSum: {
      auto inst = generate_ksum(rng, size, o.k, planted);
      e = encode_ksum(inst.values, o.k);
      expected = brute_force::ksum(inst.values, o.k);
      break;
    }
    case ProblemKind::SubsetSum: {
      auto v = generate_subset_sum(rng, size, planted);
      e = encode_subset_sum(v);
      expected = brute_force::subset_sum(v);
      break;
    }
    case ProblemKind::SortSumset: {
      auto [A, B] = generate_sumset(rng, size);
      e = encode_sort_sumset(A, B);
      expected_order = brute_force::sorted_sumset(A, B);
      break;
    }
    case ProblemKind::KLdt: {
      auto inst = generate_kldt(rng, size, o.k, planted);
      e = encode_kldt(inst.alpha, inst.values);
      expected = brute_force::kldt(inst.alpha, inst.values);
      break;
    }
    case ProblemKind::ZeroTriangles: {
      auto inst = generate_triangles(rng, size, planted);
      e = encode_zero_triangles(inst.edges, inst.weights);
      expected = brute_force::zero_triangle(inst.edges, inst.weights);
      break;
    }
  }
  HiddenPointOracle oracle(e.x);
  SolveConfig cfg;
  cfg.seed = derive_seed(o.seed, stream);
  cfg.sample_constant = o.sample_constant;
  cfg.threads = 1;
  SolveReport rep = solve_encoding(e, oracle, cfg);
  Answer a = extract_answer(e, rep.pattern);

  BenchRow row;
  row.size = size;
  row.trial = trial;
  row.planted = planted;
  row.label_q = rep.ledger.label_count;
  row.cmp_q = rep.ledger.comparison_count;
  row.rounds = rep.rounds.size();
  if (a.kind == AnswerKind::Decision) {
    row.answer = a.decision ? "true" : "false";
    row.correct = a.decision == expected;
  } else {
    row.answer = std::to_string(a.order.size()) + "groups";
    row.correct = a.order == expected_order;
  }
  return row;
}

// Rows in (size, trial) order whatever the thread count.
inline std::vector<BenchRow> run_bench(const BenchOptions& o, std::size_t threads = inference_threads()) {
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (auto s : o.sizes)
    for (std::size_t t = 0; t < o.trials; ++t) jobs.emplace_back(s, t);
  std::vector<BenchRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  auto worker = [&] {
    for (std::size_t j; (j = next++) < jobs.size();) {
      try {
        rows[j] = bench_trial(o, jobs[j].first, jobs[j].second);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  threads = std::max<std::size_t>(1, std::min(threads, jobs.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

inline std::string csv_row(const BenchRow& r) {
  std::ostringstream ss;
  ss << r.size << ',' << r.trial << ',' << (r.planted ? 1 : 0) << ',' << r.answer << ',' << r.label_q << ',' << r.cmp_q << ','
     << r.rounds << ',' << (r.correct ? "true" : "false");
  return ss.str();
}

// Mean total queries per size, and for k-SUM / SUBSET-SUM the ratio to the
// n log^2 n / n^2 log n model with the constant fitted at the smallest size.
inline void bench_summary(std::ostream& err, const BenchOptions& o, const std::vector<BenchRow>& rows) {
  auto model = [&](double n) {
    if (o.problem == ProblemKind::SubsetSum) return n * n * std::log2(n);
    return n * std::log2(n) * std::log2(n);
  };
  std::optional<double> C;
  for (auto s : o.sizes) {
    double sum = 0;
    std::size_t cnt = 0;
    for (const auto& r : rows)
      if (r.size == s) {
        sum += static_cast<double>(r.label_q + r.cmp_q);
        ++cnt;
      }
    if (cnt == 0) continue;
    double mean = sum / static_cast<double>(cnt);
    double m = model(static_cast<double>(s));
    if (!C) C = mean / m;
    err << "# size " << s << ": mean queries " << mean << ", mean / model " << mean / m << ", fitted C " << *C
        << ", C * model " << *C * m << '\n';
  }
}

// ---- entry point ------------------------------------------------------------

inline int emit_lab(std::ostream& out, const std::vector<LabRecord>& records) {
  bool ok = true;
  for (const auto& r : records) {
    out << to_json(r).dump() << '\n';
    ok = ok && r.pass;
  }
  return ok ? kOk : kFailure;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Point location in hyperplane arrangements with metered label and comparison queries"};
  app.require_subcommand(1);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance and print a report");
  std::string problem, input;
  std::size_t k = 3;
  SolveOptions sopt;
  std::string sample_constant = "2", target;
  bool json = false;
  solve_cmd->add_option("problem", problem, "ksum | subsetsum | sortab | kldt | triangles")
      ->required()
      ->check(CLI::IsMember({"ksum", "subsetsum", "sortab", "kldt", "triangles"}));
  solve_cmd->add_option("--input", input, "Instance file ('-' for stdin)")->required();
  solve_cmd->add_option("--k", k, "k for ksum (default 3)");
  solve_cmd->add_option("--seed", sopt.seed, "Solver seed (default 0)");
  solve_cmd->add_option("--sample-constant", sample_constant, "Rational c in d = c n log2(2 + n w) (default 2)");
  solve_cmd->add_option("--target", target, "subsetsum: find a subset summing to this rational");
  solve_cmd->add_flag("--json", json, "Print a JSON report");
  solve_cmd->add_flag("--log-queries", sopt.log_queries, "Include every query in the output");
  solve_cmd->add_flag("--strict-comparison", sopt.strict_comparison, "Reject queries outside H and H - H");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run seeded random trials and print CSV rows");
  BenchOptions bopt;
  std::string bench_problem = "ksum", bench_c = "2";
  std::optional<std::uint64_t> instance_seed;
  bench_cmd->add_option("--problem", bench_problem, "ksum | subsetsum | sortab | kldt | triangles")
      ->check(CLI::IsMember({"ksum", "subsetsum", "sortab", "kldt", "triangles"}));
  bench_cmd->add_option("--sizes", bopt.sizes, "Comma-separated sizes")->delimiter(',')->required();
  bench_cmd->add_option("--trials", bopt.trials, "Trials per size (default 10)");
  bench_cmd->add_option("--k", bopt.k, "k for ksum and kldt (default 3)");
  bench_cmd->add_option("--seed", bopt.seed, "Solver seed (default 0)");
  bench_cmd->add_option("--instance-seed", instance_seed, "Instance generator seed (default: --seed)");
  bench_cmd->add_option("--sample-constant", bench_c, "Rational sample constant (default 2)");

  // lab
  auto* lab_cmd = app.add_subcommand("lab", "Run a verification suite and print JSON records");
  lab_cmd->require_subcommand(1);
  std::uint64_t lab_seed = 0;
  lab_cmd->add_option("--seed", lab_seed, "Seed (default 0)");
  auto* cells_cmd = lab_cmd->add_subcommand("cells", "Exact cell counts against the arrangement bounds");
  std::size_t cells_dim = 2, cells_families = 20;
  cells_cmd->add_option("--dim", cells_dim, "Dimension 1..3 (default 2)");
  cells_cmd->add_option("--families", cells_families, "Random families (default 20)");
  auto* infdim_cmd = lab_cmd->add_subcommand("infdim", "Exhaustive inference dimension, monotone in d");
  std::size_t infdim_families = 20;
  infdim_cmd->add_option("--families", infdim_families, "Families (default 20)");
  auto* coll_cmd = lab_cmd->add_subcommand("collision", "Signed collisions and cone certificates above the threshold");
  std::int64_t coll_w = 2;
  std::size_t coll_n = 3, coll_trials = 100;
  coll_cmd->add_option("--w", coll_w, "l1 bound (default 2)");
  coll_cmd->add_option("--n", coll_n, "Dimension (default 3)");
  coll_cmd->add_option("--trials", coll_trials, "Trials (default 100)");
  bool coll_distinct = false;
  coll_cmd->add_flag("--distinct", coll_distinct, "Families without repeated vectors");
  auto* lp_cmd = lab_cmd->add_subcommand("crosscheck-lp", "Simplex feasibility and inference against Fourier-Motzkin");
  std::size_t lp_trials = 500, lp_cells = 100;
  lp_cmd->add_option("--trials", lp_trials, "Random systems (default 500)");
  lp_cmd->add_option("--cells", lp_cells, "Random cells for the inference check (default 100)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, er;
    int code = app.exit(e, o, er);
    out << o.str();
    err << er.str();
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*solve_cmd) {
      sopt.sample_constant = Rational::parse(sample_constant);
      if (sopt.sample_constant.sign() <= 0) throw UsageError("--sample-constant must be positive");
      std::optional<Rational> t;
      if (!target.empty()) {
        if (problem != "subsetsum") throw UsageError("--target applies to subsetsum only");
        t = Rational::parse(target);
      }
      const ProblemKind kind = problem_from_string(problem);
      RunReport r = run_solve(kind, prepare(kind, read_input(input), k, t), sopt);
      if (json) {
        out << to_json(r, true, sopt.log_queries).dump(2) << '\n';
      } else {
        print_text(out, r);
        if (sopt.log_queries) write_query_log(out, r.solve.ledger);
      }
      return kOk;
    }
    if (*bench_cmd) {
      bopt.problem = problem_from_string(bench_problem);
      bopt.sample_constant = Rational::parse(bench_c);
      if (bopt.sample_constant.sign() <= 0) throw UsageError("--sample-constant must be positive");
      bopt.instance_seed = instance_seed.value_or(bopt.seed);
      auto rows = run_bench(bopt);
      out << kBenchHeader << '\n';
      bool ok = true;
      for (const auto& r : rows) {
        out << csv_row(r) << '\n';
        ok = ok && r.correct;
      }
      bench_summary(err, bopt, rows);
      return ok ? kOk : kFailure;
    }
    if (*cells_cmd) return emit_lab(out, lab::suite_cells(cells_dim, lab_seed, cells_families));
    if (*infdim_cmd) return emit_lab(out, lab::suite_infdim(infdim_families, lab_seed));
    if (*coll_cmd) return emit_lab(out, lab::suite_collision(coll_w, coll_n, coll_trials, lab_seed, coll_distinct));
    if (*lp_cmd) return emit_lab(out, lab::suite_crosscheck_lp(lp_trials, lp_cells, lab_seed));
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kCap;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kFailure;
  }
  return kParse;
}

}  // namespace ldt::cli
