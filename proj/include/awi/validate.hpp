#pragma once

#include <string>
#include <vector>

#include "awi/species.hpp"

namespace awi {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidateOptions {
  unsigned seed = 20240817;
  int sum_rule_draws = 100;
  int transient_population_draws = 6;
  int linear_response_draws = 4;
  int closed_form_draws = 200;
  double chi_raman = 0.0;
};

// The full oracle suite: sum rule (exact Lorentzian + randomized draws,
// including a chi_raman = 1e3 batch), transient steady-state equivalence,
// linear response vs the closed-form susceptibility, degenerate closed forms
// vs the direct solve, predicate/sign consistency, and threshold bracketing.
std::vector<CheckResult> run_validation(const SpeciesCatalog& catalog,
                                        const ValidateOptions& opts = {});

}  // namespace awi
