#include "loopmode/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace loopmode::oracle {

double lu_determinant(const Eigen::Matrix4d& m) {
    if (!m.allFinite()) throw std::invalid_argument("lu_determinant: non-finite entries");
    return Eigen::PartialPivLU<Eigen::Matrix4d>(m).determinant();
}

double PiecewiseLinearPotential::operator()(double x) const {
    if (nodes.empty()) return 0.0;
    if (x <= nodes.front().first) return nodes.front().second;
    if (x >= nodes.back().first) return nodes.back().second;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        if (x <= nodes[i].first) {
            const auto& [x0, v0] = nodes[i - 1];
            const auto& [x1, v1] = nodes[i];
            return v0 + (v1 - v0) * (x - x0) / (x1 - x0);
        }
    }
    return nodes.back().second;
}

TransferMatrix integrate_transfer(const PiecewiseLinearPotential& potential, double energy,
                                  double x0, double x1, int steps,
                                  const ConstantsProfile& profile) {
    if (steps < 100) throw std::invalid_argument("integrate_transfer: steps must be >= 100");
    if (!(x0 < x1)) throw std::invalid_argument("integrate_transfer: x0 must be below x1");
    const double h = (x1 - x0) / steps;
    if (x0 + h == x0) throw std::invalid_argument("integrate_transfer: step underflow");
    const double k0sq = profile.k0 * profile.k0;
    const auto rhs = [&](double x, const Eigen::Vector2d& y) -> Eigen::Vector2d {
        return {y[1], k0sq * (potential(x) - energy) * y[0]};
    };
    TransferMatrix t;
    for (int col = 0; col < 2; ++col) {
        Eigen::Vector2d y = Eigen::Vector2d::Unit(col);
        double x = x0;
        for (int i = 0; i < steps; ++i) {
            const Eigen::Vector2d k1 = rhs(x, y);
            const Eigen::Vector2d k2 = rhs(x + 0.5 * h, y + 0.5 * h * k1);
            const Eigen::Vector2d k3 = rhs(x + 0.5 * h, y + 0.5 * h * k2);
            const Eigen::Vector2d k4 = rhs(x + h, y + h * k3);
            y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            x = x0 + (i + 1) * h;
        }
        t.m.col(col) = y;
    }
    return t;
}

TransferMatrix loop_monodromy(const SquareBarrierSpec& spec, const ConstantsProfile& profile,
                              int steps_per_region) {
    validate(spec);
    PiecewiseLinearPotential zero{{{spec.a, 0.0}, {0.0, 0.0}}};
    PiecewiseLinearPotential barrier{{{0.0, spec.potential}, {spec.b, spec.potential}}};
    const TransferMatrix t_free =
        integrate_transfer(zero, spec.energy, spec.a, 0.0, steps_per_region, profile);
    const TransferMatrix t_barrier =
        integrate_transfer(barrier, spec.energy, 0.0, spec.b, steps_per_region, profile);
    return {t_barrier.m * t_free.m};
}

TransferMatrix loop_monodromy(const TriangularBarrierSpec& spec, const ConstantsProfile& profile,
                              int steps_per_region) {
    const TriangularDerived d = derive(spec, profile);
    if (!(d.A > 0.0)) throw std::domain_error("loop_monodromy: theta must place A above zero");
    PiecewiseLinearPotential zero{{{0.0, 0.0}, {d.A, 0.0}}};
    PiecewiseLinearPotential barrier{{{d.A, spec.peak_potential}, {d.C, 0.0}}};
    const TransferMatrix t_free =
        integrate_transfer(zero, spec.energy, 0.0, d.A, steps_per_region, profile);
    const TransferMatrix t_barrier =
        integrate_transfer(barrier, spec.energy, d.A, d.C, steps_per_region, profile);
    return {t_barrier.m * t_free.m};
}

}  // namespace loopmode::oracle
