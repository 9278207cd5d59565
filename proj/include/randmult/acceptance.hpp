#pragma once

// The repository's integration gate: one result per acceptance criterion.

#include <cstdint>
#include <string>
#include <vector>

#include "randmult/rng.hpp"

namespace randmult {

enum class Status { Pass, Fail, Flag };

struct CriterionResult {
  std::string id;
  std::string title;
  Status status = Status::Fail;
  std::string detail;
  std::vector<std::string> notes;  // report-only lines printed under the result
  double seconds = 0.0;
};

// "1a", "1b", "2", ..., in execution order.
std::vector<std::string> acceptance_ids();

// Unknown ids throw InvalidArgument. Exceptions inside a check become Fail.
CriterionResult run_criterion(const std::string& id, std::uint64_t seed = kDefaultSeed);

std::string status_name(Status s);

// "PASS 3  exact counts: ... [0.12 s]" followed by indented notes.
std::string format_result(const CriterionResult& r);

}  // namespace randmult
