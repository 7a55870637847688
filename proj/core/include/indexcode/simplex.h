#pragma once

#include <vector>

namespace indexcode {

struct Feasibility {
  bool feasible = false;
  // A point with a x = b, x >= 0 when feasible.
  std::vector<double> x;
  bool exact = false;
};

// Phase-one simplex with Bland's rule for {x >= 0 : a x = b}. With `exact`
// the inputs are converted to rationals (doubles convert without rounding)
// and pivoting is done in exact arithmetic; otherwise doubles with a 1e-9
// tolerance.
Feasibility phase_one(const std::vector<std::vector<double>>& a,
                      const std::vector<double>& b, bool exact);

}  // namespace indexcode
