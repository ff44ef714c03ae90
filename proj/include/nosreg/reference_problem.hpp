#pragma once

#include <array>
#include <vector>

#include "nosreg/chainmodel.hpp"
#include "nosreg/polesearch.hpp"

// Built-in reference problem: a fourth-order single-output plant
//
//   x1' = x2 + x1^2,  x2' = x3,  x3' = x4,  x4' = u,  y = x1
//
// tracking r(t) = cos(t). Its normal-form map T(x) = (h, L_f h, L_f^2 h,
// L_f^3 h) is globally invertible, and u = -L_f^4 h(x) + v renders the
// input-output map a chain of four integrators.
namespace nosreg::reference {

NonlinearPlant plant();

// L_f^4 h(x) = 24 x1^5 + 40 x1^3 x2 + 16 x1 x2^2 + 10 x1^2 x3 + 6 x2 x3 + 2 x1 x4
double lf4h(const Vec& x);

// T^{-1}: the plant state whose normal-form coordinates are xi.
Vec state_from_normal(const Vec& xi);

// Exosystem generating r = cos(t).
Exosystem exosystem();

// Normal-form initial condition of the reference design and its offset
// from the steady-state manifold.
inline const Vec kXi0{0.0, 2.0, -5.0, 4.0};
inline const Vec kNominalIc{-1.0, 2.0, -4.0, 4.0};
// Alternative plant initial condition with T(x) = (1, 3, 1, 16); its modal
// data does not pass the certificate for the reference pole sets.
inline const Vec kAltX0{1.0, 2.0, -5.0, -4.0};

// Reference pole sets, slowest to fastest.
inline const std::vector<double> kPoles1{-4.847, -4.017, -2.432, -0.1032};
inline const std::vector<double> kPoles2{-10.91, -6.55, -3.61, -2.73};
inline const std::vector<double> kPoles3{-15.79, -10.20, -4.63, -3.67};

// Pole bands the reference sets were drawn from.
inline const std::vector<Interval> kBands1{{-6.0, -4.5}, {-4.5, -3.0}, {-3.0, -1.5}, {-1.5, 0.0}};
inline const std::vector<Interval> kBands2{{-12.0, -9.0}, {-9.0, -6.0}, {-6.0, -3.0}, {-3.0, 0.0}};
inline const std::vector<Interval> kBands3{{-16.0, -12.0}, {-12.0, -8.0}, {-8.0, -4.0}, {-4.0, 0.0}};

}  // namespace nosreg::reference
