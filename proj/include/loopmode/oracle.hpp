#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "loopmode/constants.hpp"
#include "loopmode/square.hpp"
#include "loopmode/triangular.hpp"

namespace loopmode::oracle {

// Independent numerical cross-checks: a generic 4x4 determinant, RK4
// integration of the Schroedinger equation through piecewise-linear
// potentials, and the loop monodromy restatement of the mode condition.

double lu_determinant(const Eigen::Matrix4d& m);

// 2x2 transfer of (psi, psi') between two abscissae.
// Invariant: det(m) == 1 (Wronskian conservation).
struct TransferMatrix {
    Eigen::Matrix2d m;
};

// Piecewise-linear potential, clamped to the end values outside the nodes.
struct PiecewiseLinearPotential {
    std::vector<std::pair<double, double>> nodes;  // (x, V), x ascending
    double operator()(double x) const;
};

inline constexpr int kDefaultRk4Steps = 10000;

TransferMatrix integrate_transfer(const PiecewiseLinearPotential& potential, double energy,
                                  double x0, double x1, int steps,
                                  const ConstantsProfile& profile);

// Monodromy around the closed loop, barrier transfer composed after the
// free region: M = T_barrier * T_free.  Modes satisfy tr(M) = 2.
TransferMatrix loop_monodromy(const SquareBarrierSpec& spec, const ConstantsProfile& profile,
                              int steps_per_region = kDefaultRk4Steps);
TransferMatrix loop_monodromy(const TriangularBarrierSpec& spec, const ConstantsProfile& profile,
                              int steps_per_region = kDefaultRk4Steps);

}  // namespace loopmode::oracle
