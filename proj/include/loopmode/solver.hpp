#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "loopmode/constants.hpp"
#include "loopmode/square.hpp"
#include "loopmode/triangular.hpp"

namespace loopmode {

enum class Model { square, triangular };

enum class FreeParameter { theta, energy, barrier_height, barrier_length, pre_barrier_length };

struct RootBracket {
    double lo, hi;
    double det_lo, det_hi;
};

struct ModeRoot {
    FreeParameter free_parameter;
    double value;
    double residual;
    int branch_index;
};

struct ModeCoefficients {
    Eigen::Vector4d c;  // unit norm, largest-magnitude entry positive
    double residual;    // ||M c||
};

struct WavefunctionSample {
    double x;     // nm
    double psi;
    double dpsi;  // nm^-1
    int region;   // 1 or 2
};

struct WavefunctionTrace {
    std::vector<WavefunctionSample> samples;
    // psi and psi' mismatches at the inner junction and at the loop
    // closure; psi' gaps are divided by k so all four share psi's scale.
    std::array<double, 4> boundary_residuals;
    double max_abs_psi;
};

class NotAModeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class EvaluationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultStepsPerTwoPi = 10000;
inline constexpr int kRefineIterationCap = 200;

// One bracket per sign change on a uniform grid; exact grid zeros become
// degenerate brackets.  Throws EvaluationError on a non-finite value.
std::vector<RootBracket> scan_brackets(const std::function<double(double)>& det, double lo,
                                       double hi, int steps);

// Bisection with secant acceleration (secant steps only accepted inside
// the bracket) until width <= tol_x_rel*max(1,|x|) or |det| <= tol_f.
ModeRoot refine_root(const std::function<double(double)>& det, const RootBracket& bracket,
                     double tol_x_rel = 1e-12, double tol_f = 0.0);

// Fixed model parameters; the slot matching the free parameter is ignored
// during a solve.  fourth_is_theta selects whether the angle or the
// pre-barrier coordinate (a for square, A for triangular) is prescribed.
struct ProblemSpec {
    Model model;
    double energy = 0.0;
    double potential = 0.0;       // V_II or V0
    double barrier_length = 0.0;  // b or L
    double theta = 0.0;           // rad
    double pre_barrier = 0.0;     // nm, signed coordinate
    bool fourth_is_theta = true;
};

// Determinant as a function of one free parameter, everything re-derived
// at each trial value.  Square uses the overflow-safe closed form.
std::function<double(double)> determinant_function(const ProblemSpec& spec, FreeParameter free,
                                                   const ConstantsProfile& profile);

std::vector<ModeRoot> solve_free_parameter(const ProblemSpec& spec, FreeParameter free, double lo,
                                           double hi, const ConstantsProfile& profile,
                                           int steps = kDefaultStepsPerTwoPi);

struct SweepRow {
    double b;
    std::array<std::optional<double>, 2> theta;  // rad, per branch
};

// Table-style sweep over barrier lengths: both root families in
// (-2pi, 0), each solve seeded from the previous row by a continuation
// window of +-max(25%, 0.05 rad).
std::vector<SweepRow> sweep_square(double energy, double potential,
                                   const std::vector<double>& b_list,
                                   const ConstantsProfile& profile,
                                   int steps = kDefaultStepsPerTwoPi,
                                   std::vector<std::string>* warnings = nullptr);

// Unit-norm null direction of a (near-)singular 4x4 via SVD.
// Throws NotAModeError when smallest singular value > 1e-6 * ||M||.
ModeCoefficients nullspace_coefficients(const Eigen::Matrix4d& m);

WavefunctionTrace trace_wavefunction(const SquareBarrierSpec& spec, const ConstantsProfile& profile,
                                     const Eigen::Vector4d& coeffs, int samples_per_region);
WavefunctionTrace trace_wavefunction(const TriangularBarrierSpec& spec,
                                     const ConstantsProfile& profile,
                                     const Eigen::Vector4d& coeffs, int samples_per_region);

}  // namespace loopmode
