#pragma once

#include <Eigen/Dense>

#include "loopmode/constants.hpp"

namespace loopmode {

// Closed loop with a constant barrier: Region I (zero potential) spans
// a..0 with a < 0, Region II (potential V) spans 0..b, and x = a is
// identified with x = b.
struct SquareBarrierSpec {
    double energy;     // eV, 0 < E < potential
    double potential;  // V
    double a;          // nm, pre-barrier coordinate, a < 0
    double b;          // nm, barrier length, b > 0
};

struct SquareDerived {
    double k;      // nm^-1
    double beta;   // nm^-1
    double theta;  // rad, k*a (negative)
};

void validate(const SquareBarrierSpec& spec);  // throws std::domain_error

SquareDerived derive(const SquareBarrierSpec& spec, const ConstantsProfile& profile);

// Boundary-condition matrix acting on (A, B, C, D).
Eigen::Matrix4d build_matrix(double theta, double k, double beta, double a, double b);

// 2(beta^2 - k^2) sin(theta) sinh(beta b) + 4 k beta [1 - cos(theta) cosh(beta b)].
// For beta*b > kSquareScaledThreshold the e^{-beta b}-scaled value is
// returned instead (same zeros, no overflow out to the table's b = 50000).
double determinant_closed_form(double theta, double k, double beta, double b);

inline constexpr double kSquareScaledThreshold = 30.0;

// LU determinant of build_matrix; cross-validates the closed form.
double determinant_matrix(double theta, double k, double beta, double a, double b);

// Large-b limit of the determinant zero:
// theta = atan2(2 k beta, beta^2 - k^2) + n*pi, n <= 0.
double asymptotic_theta(double k, double beta, int branch);

}  // namespace loopmode
