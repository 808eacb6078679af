#include "loopmode/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace loopmode {

std::vector<RootBracket> scan_brackets(const std::function<double(double)>& det, double lo,
                                       double hi, int steps) {
    if (steps < 2) throw std::invalid_argument("scan_brackets: steps must be >= 2");
    if (!(lo < hi)) throw std::invalid_argument("scan_brackets: empty range");
    std::vector<RootBracket> brackets;
    double x_prev = lo;
    double f_prev = det(lo);
    if (!std::isfinite(f_prev)) {
        std::ostringstream msg;
        msg << "scan_brackets: non-finite determinant at " << lo;
        throw EvaluationError(msg.str());
    }
    for (int i = 1; i <= steps; ++i) {
        const double x = lo + (hi - lo) * i / steps;
        const double f = det(x);
        if (!std::isfinite(f)) {
            std::ostringstream msg;
            msg << "scan_brackets: non-finite determinant at " << x;
            throw EvaluationError(msg.str());
        }
        if (f_prev == 0.0) {
            brackets.push_back({x_prev, x_prev, 0.0, 0.0});
        } else if (f_prev * f < 0.0) {
            brackets.push_back({x_prev, x, f_prev, f});
        }
        x_prev = x;
        f_prev = f;
    }
    if (f_prev == 0.0) brackets.push_back({x_prev, x_prev, 0.0, 0.0});
    return brackets;
}

ModeRoot refine_root(const std::function<double(double)>& det, const RootBracket& bracket,
                     double tol_x_rel, double tol_f) {
    double lo = bracket.lo, hi = bracket.hi;
    double f_lo = bracket.det_lo, f_hi = bracket.det_hi;
    if (lo == hi) return {FreeParameter::theta, lo, f_lo, 0};
    if (!(lo < hi) || !(f_lo * f_hi < 0.0))
        throw std::invalid_argument("refine_root: invalid bracket");
    double x = lo, f = f_lo;
    for (int it = 0; it < kRefineIterationCap; ++it) {
        // secant proposal, bisection fallback
        double mid = 0.5 * (lo + hi);
        double cand = mid;
        if (f_hi != f_lo) {
            const double s = hi - f_hi * (hi - lo) / (f_hi - f_lo);
            if (s > lo && s < hi) cand = s;
        }
        x = cand;
        f = det(x);
        if (std::fabs(f) <= tol_f) return {FreeParameter::theta, x, f, 0};
        if (f == 0.0) return {FreeParameter::theta, x, 0.0, 0};
        if (f_lo * f < 0.0) {
            hi = x;
            f_hi = f;
        } else {
            lo = x;
            f_lo = f;
        }
        if (hi - lo <= tol_x_rel * std::max(1.0, std::fabs(x))) {
            const double mid2 = 0.5 * (lo + hi);
            return {FreeParameter::theta, mid2, det(mid2), 0};
        }
        // alternate a pure bisection step so a bad secant sequence
        // cannot stall the shrink
        if (it % 2 == 1 && cand != mid) {
            const double fm = det(mid);
            if (fm == 0.0) return {FreeParameter::theta, mid, 0.0, 0};
            if (f_lo * fm < 0.0) {
                hi = mid;
                f_hi = fm;
            } else {
                lo = mid;
                f_lo = fm;
            }
        }
    }
    throw EvaluationError("refine_root: iteration cap reached without convergence");
}

std::function<double(double)> determinant_function(const ProblemSpec& spec, FreeParameter free,
                                                   const ConstantsProfile& profile) {
    return [spec, free, profile](double v) -> double {
        ProblemSpec p = spec;
        switch (free) {
            case FreeParameter::theta:
                p.theta = v;
                p.fourth_is_theta = true;
                break;
            case FreeParameter::energy: p.energy = v; break;
            case FreeParameter::barrier_height: p.potential = v; break;
            case FreeParameter::barrier_length: p.barrier_length = v; break;
            case FreeParameter::pre_barrier_length:
                p.pre_barrier = v;
                p.fourth_is_theta = false;
                break;
        }
        if (p.model == Model::square) {
            const double k = wavenumber(profile, p.energy);
            const double beta = decay_constant(profile, p.energy, p.potential);
            const double theta = p.fourth_is_theta ? p.theta : k * p.pre_barrier;
            return determinant_closed_form(theta, k, beta, p.barrier_length);
        }
        TriangularBarrierSpec t{p.energy, p.potential, p.barrier_length, p.theta};
        if (!p.fourth_is_theta) t.theta = wavenumber(profile, p.energy) * p.pre_barrier;
        const TriangularDerived d = derive(t, profile);
        return determinant(t.theta, d.X, d.Y, d.R);
    };
}

std::vector<ModeRoot> solve_free_parameter(const ProblemSpec& spec, FreeParameter free, double lo,
                                           double hi, const ConstantsProfile& profile,
                                           int steps) {
    const auto det = determinant_function(spec, free, profile);
    const auto brackets = scan_brackets(det, lo, hi, steps);
    std::vector<ModeRoot> roots;
    for (const auto& b : brackets) {
        ModeRoot r = refine_root(det, b);
        r.free_parameter = free;
        r.branch_index = static_cast<int>(roots.size());
        roots.push_back(r);
    }
    return roots;
}

namespace {

std::optional<ModeRoot> refine_nearest(const std::function<double(double)>& det,
                                       const std::vector<RootBracket>& brackets, double seed) {
    if (brackets.empty()) return std::nullopt;
    const auto best =
        std::min_element(brackets.begin(), brackets.end(), [&](const auto& a, const auto& b) {
            return std::fabs(0.5 * (a.lo + a.hi) - seed) < std::fabs(0.5 * (b.lo + b.hi) - seed);
        });
    return refine_root(det, *best);
}

std::optional<ModeRoot> continue_root(const std::function<double(double)>& det, double seed,
                                      int steps) {
    // The determinant is 2pi-periodic, so the search window is clamped to
    // one principal period to keep a branch from latching onto a periodic
    // image of its neighbour.
    constexpr double kLo = -2.0 * M_PI + 1e-12, kHi = -1e-12;
    double half = std::max(0.25 * std::fabs(seed), 0.05);
    for (int attempt = 0; attempt < 2; ++attempt) {
        const double lo = std::max(kLo, seed - half), hi = std::min(kHi, seed + half);
        const int n = std::max(64, static_cast<int>(steps * (hi - lo) / (2.0 * M_PI)));
        if (auto r = refine_nearest(det, scan_brackets(det, lo, hi, n), seed)) return r;
        half *= 2.0;  // widen once
    }
    // fall back to a full-period scan, keeping the root nearest the seed
    return refine_nearest(det, scan_brackets(det, kLo, kHi, steps), seed);
}

}  // namespace

std::vector<SweepRow> sweep_square(double energy, double potential,
                                   const std::vector<double>& b_list,
                                   const ConstantsProfile& profile, int steps,
                                   std::vector<std::string>* warnings) {
    for (std::size_t i = 1; i < b_list.size(); ++i)
        if (!(b_list[i] > b_list[i - 1]))
            throw std::invalid_argument("sweep_square: b values must be strictly increasing");
    std::vector<SweepRow> rows;
    std::array<std::optional<double>, 2> prev = {std::nullopt, std::nullopt};
    for (const double b : b_list) {
        ProblemSpec spec{Model::square, energy, potential, b, 0.0, 0.0, true};
        const auto det = determinant_function(spec, FreeParameter::theta, profile);
        SweepRow row{b, {std::nullopt, std::nullopt}};
        if (!prev[0] && !prev[1]) {
            // first row: full scan of one period; family 0 is the root
            // nearest zero, family 1 the one nearest -2pi
            auto roots = solve_free_parameter(spec, FreeParameter::theta, -2.0 * M_PI + 1e-12,
                                              -1e-12, profile, steps);
            if (!roots.empty()) {
                row.theta[0] = roots.back().value;
                if (roots.size() > 1) row.theta[1] = roots.front().value;
            }
        } else {
            for (int fam = 0; fam < 2; ++fam) {
                if (!prev[fam]) continue;
                const auto r = continue_root(det, *prev[fam], steps);
                if (r) {
                    row.theta[fam] = r->value;
                } else if (warnings) {
                    std::ostringstream msg;
                    msg << "branch " << fam << " terminated at b = " << b;
                    warnings->push_back(msg.str());
                }
            }
        }
        prev = row.theta;
        rows.push_back(row);
    }
    return rows;
}

ModeCoefficients nullspace_coefficients(const Eigen::Matrix4d& m) {
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(m, Eigen::ComputeFullV);
    Eigen::Vector4d c = svd.matrixV().col(3);
    c.normalize();
    int imax = 0;
    c.cwiseAbs().maxCoeff(&imax);
    if (c[imax] < 0.0) c = -c;
    const double residual = (m * c).norm();
    if (residual > 1e-6 * m.norm())
        throw NotAModeError("nullspace_coefficients: matrix is not singular at this point");
    return {c, residual};
}

namespace {

WavefunctionTrace assemble(std::vector<WavefunctionSample> samples, double psi_gap0,
                           double dpsi_gap0, double psi_gap1, double dpsi_gap1, double k) {
    WavefunctionTrace t;
    t.samples = std::move(samples);
    t.max_abs_psi = 0.0;
    for (const auto& s : t.samples) t.max_abs_psi = std::max(t.max_abs_psi, std::fabs(s.psi));
    t.boundary_residuals = {std::fabs(psi_gap0), std::fabs(dpsi_gap0) / k, std::fabs(psi_gap1),
                            std::fabs(dpsi_gap1) / k};
    return t;
}

}  // namespace

WavefunctionTrace trace_wavefunction(const SquareBarrierSpec& spec, const ConstantsProfile& profile,
                                     const Eigen::Vector4d& coeffs, int samples_per_region) {
    validate(spec);
    const SquareDerived d = derive(spec, profile);
    const double A = coeffs[0], B = coeffs[1], C = coeffs[2], D = coeffs[3];
    const auto psi1 = [&](double x) { return A * std::cos(d.k * x) + B * std::sin(d.k * x); };
    const auto dpsi1 = [&](double x) {
        return d.k * (-A * std::sin(d.k * x) + B * std::cos(d.k * x));
    };
    const auto psi2 = [&](double x) {
        return C * std::exp(d.beta * x) + D * std::exp(-d.beta * x);
    };
    const auto dpsi2 = [&](double x) {
        return d.beta * (C * std::exp(d.beta * x) - D * std::exp(-d.beta * x));
    };
    std::vector<WavefunctionSample> samples;
    const int n = std::max(2, samples_per_region);
    for (int i = 0; i < n; ++i) {
        const double x = spec.a + (0.0 - spec.a) * i / (n - 1);
        samples.push_back({x, psi1(x), dpsi1(x), 1});
    }
    for (int i = 0; i < n; ++i) {
        const double x = spec.b * i / (n - 1);
        samples.push_back({x, psi2(x), dpsi2(x), 2});
    }
    return assemble(std::move(samples), psi1(0.0) - psi2(0.0), dpsi1(0.0) - dpsi2(0.0),
                    psi1(spec.a) - psi2(spec.b), dpsi1(spec.a) - dpsi2(spec.b), d.k);
}

WavefunctionTrace trace_wavefunction(const TriangularBarrierSpec& spec,
                                     const ConstantsProfile& profile,
                                     const Eigen::Vector4d& coeffs, int samples_per_region) {
    const TriangularDerived d = derive(spec, profile);
    const double C1 = coeffs[0], C2 = coeffs[1], C3 = coeffs[2], C4 = coeffs[3];
    const auto psi1 = [&](double x) { return C1 * std::cos(d.k * x) + C2 * std::sin(d.k * x); };
    const auto dpsi1 = [&](double x) {
        return d.k * (-C1 * std::sin(d.k * x) + C2 * std::cos(d.k * x));
    };
    const auto psi2 = [&](double x) {
        const AiryValues f = airy_eval(d.K - d.gamma * x);
        return C3 * f.ai + C4 * f.bi;
    };
    const auto dpsi2 = [&](double x) {
        const AiryValues f = airy_eval(d.K - d.gamma * x);
        return -d.gamma * (C3 * f.aip + C4 * f.bip);
    };
    std::vector<WavefunctionSample> samples;
    const int n = std::max(2, samples_per_region);
    for (int i = 0; i < n; ++i) {
        const double x = d.A * i / (n - 1);
        samples.push_back({x, psi1(x), dpsi1(x), 1});
    }
    for (int i = 0; i < n; ++i) {
        const double x = d.A + (d.C - d.A) * i / (n - 1);
        samples.push_back({x, psi2(x), dpsi2(x), 2});
    }
    return assemble(std::move(samples), psi1(d.A) - psi2(d.A), dpsi1(d.A) - dpsi2(d.A),
                    psi1(0.0) - psi2(d.C), dpsi1(0.0) - dpsi2(d.C), d.k);
}

}  // namespace loopmode
