#pragma once

#include <cstdint>

namespace tsplan {

// Exact comparison of two ratios p1/c1 and p2/c2, i.e. the sign of
// p1*c2 - p2*c1. Operands must be finite and denominators positive;
// numerators may be zero. The comparison is exact for all double inputs
// (the cross products are evaluated in integer arithmetic), so equal
// ratios compare equal without any epsilon and a strict ordering is
// never flipped by rounding.
//
// Returns -1, 0 or +1.
int ratio_compare(double p1, double c1, double p2, double c2);

/// True iff p1/c1 < p2/c2.
inline bool ratio_less(double p1, double c1, double p2, double c2) {
  return ratio_compare(p1, c1, p2, c2) < 0;
}

}  // namespace tsplan
