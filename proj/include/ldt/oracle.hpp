#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

#include "ldt/errors.hpp"
#include "ldt/vector.hpp"

namespace ldt {

enum class QueryKind : std::uint8_t { Label, Comparison };

struct QueryRecord {
  QueryKind kind;
  std::vector<std::int64_t> ids;  // hyperplane ids when known, else empty
  std::vector<Vector> operands;   // raw vectors, kept only when ids are missing
  Sign answer;
};

struct QueryLedger {
  std::uint64_t label_count = 0;
  std::uint64_t comparison_count = 0;
  std::optional<std::vector<QueryRecord>> log;

  [[nodiscard]] std::uint64_t total() const { return label_count + comparison_count; }
};

// The only channel to the hidden input. Answers sign queries and meters them;
// the secret itself never leaves this object.
class HiddenPointOracle {
 public:
  explicit HiddenPointOracle(Vector secret) : secret_(std::move(secret)) {}

  HiddenPointOracle(const HiddenPointOracle&) = delete;
  HiddenPointOracle& operator=(const HiddenPointOracle&) = delete;

  [[nodiscard]] std::size_t dim() const { return secret_.dim(); }
  [[nodiscard]] const QueryLedger& ledger() const { return ledger_; }

  void enable_log() {
    if (!ledger_.log) ledger_.log.emplace();
  }

  // Strict comparison-tree mode: every label query must be a member of
  // `family` and every comparison a difference of two members.
  void restrict_to(const std::vector<Vector>& family) {
    allowed_.emplace(family.begin(), family.end());
  }

  Sign label_query(const Vector& h, std::optional<std::int64_t> id = std::nullopt) {
    Vector::check_dims(h, secret_);
    check_allowed(h);
    Sign s = sign_of(inner_product(h, secret_));
    ++ledger_.label_count;
    record(QueryKind::Label, id ? std::vector<std::int64_t>{*id} : std::vector<std::int64_t>{}, {&h}, s);
    return s;
  }

  // sign(<h1 - h2, x>)
  Sign comparison_query(const Vector& h1, const Vector& h2, std::optional<std::int64_t> id1 = std::nullopt,
                        std::optional<std::int64_t> id2 = std::nullopt) {
    Vector::check_dims(h1, secret_);
    Vector::check_dims(h2, secret_);
    check_allowed(h1);
    check_allowed(h2);
    Sign s = sign_of_int(compare(inner_product(h1, secret_), inner_product(h2, secret_)));
    ++ledger_.comparison_count;
    std::vector<std::int64_t> ids;
    if (id1 && id2) ids = {*id1, *id2};
    record(QueryKind::Comparison, std::move(ids), {&h1, &h2}, s);
    return s;
  }

 private:
  void check_allowed(const Vector& h) const {
    if (allowed_ && !allowed_->contains(h))
      throw UsageError("strict comparison mode: queried vector " + h.str() + " is not in H");
  }

  void record(QueryKind kind, std::vector<std::int64_t> ids, std::initializer_list<const Vector*> ops, Sign s) {
    if (!ledger_.log) return;
    QueryRecord r{kind, std::move(ids), {}, s};
    if (r.ids.empty())
      for (const Vector* v : ops) r.operands.push_back(*v);
    ledger_.log->push_back(std::move(r));
  }

  Vector secret_;
  QueryLedger ledger_;
  std::optional<std::unordered_set<Vector>> allowed_;
};

}  // namespace ldt
