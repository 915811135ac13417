#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hfg/action.hpp"

namespace hfg {

std::string status_string(Agreement a);  // exact | homotopy | fail

struct SuiteOptions {
  Truncation t = Truncation::total(6);
  uint64_t seed = 7;
  int random_bases = 20;
};

// Every identity of the local models: sphere model disks, stabilization
// operators, transition maps, Phi_w calculus, basepoint moving and the graph
// action relations on the one-generator context.
std::vector<CheckResult> model_suite(const SuiteOptions& opt);

}  // namespace hfg
