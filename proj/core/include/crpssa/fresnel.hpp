#pragma once

#include <complex>

namespace crpssa {

// Fresnel integrals in the unnormalized convention
//   C(x) = int_0^x cos(t^2) dt,   S(x) = int_0^x sin(t^2) dt,
// both tending to sqrt(pi/8) as x -> infinity. Defined for finite x >= 0;
// negative arguments throw InputError.

double fresnel_c(double x);
double fresnel_s(double x);

// C(x) + i S(x) in one evaluation.
std::complex<double> fresnel_cs(double x);

inline constexpr double kFresnelLimit = 0.62665706865775012560;  // sqrt(pi/8)

}  // namespace crpssa
