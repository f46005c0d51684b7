#pragma once

namespace geotomo {

// Smooth compactly supported profile on (0,1): c * exp(-1/(x(1-x))),
// scaled so the square integrates to one.
double bump(double x);
double bump_prime(double x);
double bump_l2_normalizer();  // the constant c

}  // namespace geotomo
