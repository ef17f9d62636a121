#pragma once

// Trusted-side evaluator with direct access to the hidden point. Tests and
// answer verification only; nothing under solver/inference includes this.

#include <vector>

#include "ldt/vector.hpp"

namespace ldt {

inline SignVector ground_truth_pattern(const std::vector<Vector>& family, const Vector& x) {
  SignVector out;
  out.reserve(family.size());
  for (const auto& h : family) out.push_back(sign_of(inner_product(h, x)));
  return out;
}

}  // namespace ldt
