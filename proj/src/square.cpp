#include "loopmode/square.hpp"

#include <cmath>
#include <stdexcept>

#include "loopmode/oracle.hpp"

namespace loopmode {

void validate(const SquareBarrierSpec& spec) {
    if (!(spec.energy > 0.0)) throw std::domain_error("energy must be positive");
    if (!(spec.energy < spec.potential))
        throw std::domain_error("energy must be below barrier potential");
    if (!(spec.a < 0.0)) throw std::domain_error("pre-barrier coordinate a must be negative");
    if (!(spec.b > 0.0)) throw std::domain_error("barrier length b must be positive");
}

SquareDerived derive(const SquareBarrierSpec& spec, const ConstantsProfile& profile) {
    SquareDerived d;
    d.k = wavenumber(profile, spec.energy);
    d.beta = decay_constant(profile, spec.energy, spec.potential);
    d.theta = d.k * spec.a;
    return d;
}

Eigen::Matrix4d build_matrix(double theta, double k, double beta, double a, double b) {
    const double c = std::cos(theta), s = std::sin(theta);
    const double ep = std::exp(beta * b), em = std::exp(-beta * b);
    Eigen::Matrix4d m;
    m << 1.0, 0.0, -1.0, -1.0,                       //
        0.0, k, -beta, beta,                         //
        c, s, -ep, -em,                              //
        k * s, -k * c, beta * ep, -beta * em;
    (void)a;  // theta == k*a carries the a dependence
    return m;
}

double determinant_closed_form(double theta, double k, double beta, double b) {
    const double bb = beta * b;
    const double c = std::cos(theta), s = std::sin(theta);
    if (bb <= kSquareScaledThreshold) {
        return 2.0 * (beta * beta - k * k) * s * std::sinh(bb) +
               4.0 * k * beta * (1.0 - c * std::cosh(bb));
    }
    // e^{-beta b} * Det; positive rescaling keeps the zero set.
    const double e2 = std::exp(-2.0 * bb);
    return (beta * beta - k * k) * s * (1.0 - e2) + 4.0 * k * beta * std::exp(-bb) -
           2.0 * k * beta * c * (1.0 + e2);
}

double determinant_matrix(double theta, double k, double beta, double a, double b) {
    return oracle::lu_determinant(build_matrix(theta, k, beta, a, b));
}

double asymptotic_theta(double k, double beta, int branch) {
    return std::atan2(2.0 * k * beta, beta * beta - k * k) + branch * M_PI;
}

}  // namespace loopmode
