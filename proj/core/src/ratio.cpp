#include "tsplan/ratio.hpp"

#include <cmath>

namespace tsplan {

namespace {

// Splits a finite double into an integer mantissa and a power-of-two
// exponent such that x == mantissa * 2^exponent.
std::int64_t decompose(double x, int& exponent) {
  if (x == 0.0) {
    exponent = 0;
    return 0;
  }
  int e = 0;
  double m = std::frexp(x, &e);  // x = m * 2^e with 0.5 <= |m| < 1
  exponent = e - 53;
  return static_cast<std::int64_t>(std::ldexp(m, 53));
}

int bit_length(unsigned __int128 v) {
  int n = 0;
  while (v != 0) {
    v >>= 1;
    ++n;
  }
  return n;
}

// Sign of a*2^ea - b*2^eb for exact 128-bit integers a, b.
int compare_scaled(__int128 a, int ea, __int128 b, int eb) {
  const int sa = a > 0 ? 1 : (a < 0 ? -1 : 0);
  const int sb = b > 0 ? 1 : (b < 0 ? -1 : 0);
  if (sa != sb) return sa > sb ? 1 : -1;
  if (sa == 0) return 0;

  const auto ua = static_cast<unsigned __int128>(sa > 0 ? a : -a);
  const auto ub = static_cast<unsigned __int128>(sb > 0 ? b : -b);
  const int mag_a = bit_length(ua) + ea;
  const int mag_b = bit_length(ub) + eb;
  if (mag_a != mag_b) return (mag_a > mag_b ? 1 : -1) * sa;

  // Same binade: shifting the operand with the larger exponent keeps the
  // result within bit_length of the other operand (<= 106 bits).
  unsigned __int128 va = ua;
  unsigned __int128 vb = ub;
  if (ea >= eb) {
    va <<= (ea - eb);
  } else {
    vb <<= (eb - ea);
  }
  if (va == vb) return 0;
  return (va > vb ? 1 : -1) * sa;
}

}  // namespace

int ratio_compare(double p1, double c1, double p2, double c2) {
  // Fast path: each rounded product is within one ulp of the true value,
  // so a gap beyond the combined rounding error decides the sign. Only
  // near-ties take the exact integer route. Sound for the non-negative
  // operands this comparator is specified for.
  const double lhs_approx = p1 * c2;
  const double rhs_approx = p2 * c1;
  if (lhs_approx >= 0.0 && rhs_approx >= 0.0) {
    const double gap = lhs_approx - rhs_approx;
    const double slack = 0x1.0p-50 * (lhs_approx + rhs_approx);
    if (gap > slack) return 1;
    if (gap < -slack) return -1;
  }

  int e1 = 0, e2 = 0, e3 = 0, e4 = 0;
  const std::int64_t m1 = decompose(p1, e1);
  const std::int64_t m2 = decompose(c2, e2);
  const std::int64_t m3 = decompose(p2, e3);
  const std::int64_t m4 = decompose(c1, e4);
  const __int128 lhs = static_cast<__int128>(m1) * m2;  // p1*c2, exact
  const __int128 rhs = static_cast<__int128>(m3) * m4;  // p2*c1, exact
  return compare_scaled(lhs, e1 + e2, rhs, e3 + e4);
}

}  // namespace tsplan
