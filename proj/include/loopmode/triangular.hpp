#pragma once

#include <Eigen/Dense>

#include "loopmode/airy.hpp"
#include "loopmode/constants.hpp"

namespace loopmode {

// Closed loop with a linear barrier: Region I (zero potential) spans
// 0..A, the barrier spans A..C with V falling linearly from V0 at A to 0
// at C, and x = C is identified with x = 0.  Theta = k*A is the free
// angle varied to locate modes.
struct TriangularBarrierSpec {
    double energy;          // eV, 0 < E < peak_potential
    double peak_potential;  // V
    double barrier_length;  // nm, L = C - A > 0
    double theta;           // rad
};

struct TriangularDerived {
    double k;      // nm^-1
    double A;      // nm, theta / k
    double C;      // nm, A + L
    double B;      // nm, turning point, C - (E/V0) L
    double gamma;  // nm^-1, (k0^2 V0 / L)^{1/3}
    double K;      // dimensionless, gamma * B
    double R;      // gamma / k
    double X;      // K - gamma A  (>= 0)
    double Y;      // K - gamma C  (<= 0)
};

void validate(const TriangularBarrierSpec& spec);  // throws std::domain_error

TriangularDerived derive(const TriangularBarrierSpec& spec, const ConstantsProfile& profile);

// Dimensionless boundary-condition matrix acting on (C1, C2, C3, C4).
Eigen::Matrix4d build_matrix(double theta, double X, double Y, double R);

// LU determinant of build_matrix (no closed form is used).
double determinant(double theta, double X, double Y, double R);

// (k0^2 V0)^{1/3} L^{2/3}; equals X - Y for every admissible energy.
double x_minus_y(double barrier_length, double peak_potential, const ConstantsProfile& profile);

// Transfer of (psi, psi') across the barrier from A to C, built from the
// Airy basis.  Cross-check for the RK4 integrator.
Eigen::Matrix2d airy_transfer(const TriangularDerived& d);

}  // namespace loopmode
