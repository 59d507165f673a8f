#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mrb/linalg.hpp"

namespace mrb {

/// One failed law instance. `at` names the basis elements and labels the law
/// was evaluated on; `residual` is LHS minus RHS (empty when the law is not
/// vector valued, e.g. a dimension mismatch).
struct Violation {
  std::string law;
  std::vector<std::pair<std::string, std::string>> at;
  Vector residual;
};

struct Report {
  std::vector<Violation> violations;
  /// Number of individual law instances evaluated.
  std::size_t evaluated = 0;

  bool ok() const { return violations.empty(); }
  void add(std::string law, std::vector<std::pair<std::string, std::string>> at, Vector residual) {
    violations.push_back({std::move(law), std::move(at), std::move(residual)});
  }
  void merge(const Report& other) {
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
    evaluated += other.evaluated;
  }
};

}  // namespace mrb
