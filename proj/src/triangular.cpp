#include "loopmode/triangular.hpp"

#include <cmath>
#include <stdexcept>

#include "loopmode/oracle.hpp"

namespace loopmode {

void validate(const TriangularBarrierSpec& spec) {
    if (!(spec.energy > 0.0)) throw std::domain_error("energy must be positive");
    if (!(spec.energy < spec.peak_potential))
        throw std::domain_error("energy must be below peak potential");
    if (!(spec.barrier_length > 0.0))
        throw std::domain_error("barrier length must be positive");
}

TriangularDerived derive(const TriangularBarrierSpec& spec, const ConstantsProfile& profile) {
    validate(spec);
    const double L = spec.barrier_length;
    const double V0 = spec.peak_potential;
    TriangularDerived d;
    d.k = wavenumber(profile, spec.energy);
    d.A = spec.theta / d.k;
    d.C = d.A + L;
    d.B = d.C - (spec.energy / V0) * L;
    d.gamma = std::cbrt(profile.k0 * profile.k0 * V0 / L);
    d.K = d.gamma * d.B;
    d.R = d.gamma / d.k;
    d.X = d.K - d.gamma * d.A;
    d.Y = d.K - d.gamma * d.C;
    return d;
}

Eigen::Matrix4d build_matrix(double theta, double X, double Y, double R) {
    const AiryValues fx = airy_eval(X);
    const AiryValues fy = airy_eval(Y);
    const double c = std::cos(theta), s = std::sin(theta);
    Eigen::Matrix4d m;
    m << c, s, -fx.ai, -fx.bi,                    //
        -s, c, R * fx.aip, R * fx.bip,            //
        1.0, 0.0, -fy.ai, -fy.bi,                 //
        0.0, 1.0, R * fy.aip, R * fy.bip;
    return m;
}

double determinant(double theta, double X, double Y, double R) {
    return oracle::lu_determinant(build_matrix(theta, X, Y, R));
}

double x_minus_y(double barrier_length, double peak_potential, const ConstantsProfile& profile) {
    if (!(barrier_length > 0.0) || !(peak_potential > 0.0))
        throw std::domain_error("barrier length and peak potential must be positive");
    return std::cbrt(profile.k0 * profile.k0 * peak_potential) *
           std::cbrt(barrier_length * barrier_length);
}

Eigen::Matrix2d airy_transfer(const TriangularDerived& d) {
    // psi = C3 Ai(K - gamma x) + C4 Bi(K - gamma x); columns of the state
    // map follow from the basis values at the two ends.
    const AiryValues fa = airy_eval(d.X);
    const AiryValues fc = airy_eval(d.Y);
    Eigen::Matrix2d at_a, at_c;
    at_a << fa.ai, fa.bi, -d.gamma * fa.aip, -d.gamma * fa.bip;
    at_c << fc.ai, fc.bi, -d.gamma * fc.aip, -d.gamma * fc.bip;
    return at_c * at_a.inverse();
}

}  // namespace loopmode
