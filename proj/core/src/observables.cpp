// Copyright 2026 The billiard-prop Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "billiard/observables.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "billiard/error.hpp"
#include "billiard/quadrature.hpp"

namespace billiard {

namespace {

constexpr double kPi = std::numbers::pi;

void require_two_particle(Shape shape) {
    if (shape != Shape::TwoParticleBox) {
        throw ValidationError(
            "covariance is defined for the two-particle box only");
    }
}

// Time-evolved coefficients c_k exp(-i E_k t / hbar).
std::vector<std::complex<double>> evolved_coefficients(const Superposition &s,
                                                       double t) {
    std::vector<std::complex<double>> out;
    out.reserve(s.terms().size());
    for (const auto &term : s.terms()) {
        const double phase = -term.state.energy() * t / term.state.spec().hbar;
        out.push_back(term.coeff * std::polar(1.0, phase));
    }
    return out;
}

// [1, x1, x2, x1^2, x2^2, x1 x2] weighted by |psi|^2 over [0, d]^2.
std::array<double, 6> particle_sums(const Superposition &s, double t,
                                    int order) {
    const auto coeffs = evolved_coefficients(s, t);
    const auto rule = gauss_legendre(order);
    const double d = s.spec().d;
    std::array<double, 6> acc{};
    for (std::size_t i = 0; i < rule->size(); ++i) {
        const double x1 = d * rule->nodes[i];
        for (std::size_t j = 0; j < rule->size(); ++j) {
            const double x2 = d * rule->nodes[j];
            std::complex<double> psi{};
            for (std::size_t k = 0; k < coeffs.size(); ++k) {
                psi += coeffs[k] * s.terms()[k].state.raw({x1, x2});
            }
            const double w = rule->weights[i] * rule->weights[j] * d * d *
                             std::norm(psi);
            acc[0] += w;
            acc[1] += w * x1;
            acc[2] += w * x2;
            acc[3] += w * x1 * x1;
            acc[4] += w * x2 * x2;
            acc[5] += w * x1 * x2;
        }
    }
    return acc;
}

MomentSet to_moments(const std::array<double, 6> &acc) {
    if (!(acc[0] > 0.0)) {
        throw ValidationError("state has zero probability on its domain");
    }
    return {acc[1] / acc[0], acc[2] / acc[0], acc[3] / acc[0], acc[4] / acc[0],
            acc[5] / acc[0]};
}

// [1, Xc, x, Xc x, Xc^2, x^2] weighted by |psi|^2 over the COM polygon. Each
// half (x >= 0, x <= 0) is integrated with its own iterated limits.
std::array<double, 6> com_sums(const Superposition &s, double t,
                               const ComDomain &domain, int order) {
    const auto coeffs = evolved_coefficients(s, t);
    const auto rule = gauss_legendre(order);
    const BoxSpec &spec = s.spec();
    const double M = spec.total_mass();
    const double d = spec.d;
    std::vector<double> norms;
    for (const auto &term : s.terms()) {
        norms.push_back(term.state.norm());
    }

    auto psi_at = [&](double Xc, double x) {
        std::complex<double> psi{};
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            psi += coeffs[k] * eval_com_eigen(s.terms()[k].state.qn(), spec, Xc, x);
        }
        return psi;
    };

    std::array<double, 6> acc{};
    auto half = [&](double x_lo, double x_hi, auto lower, auto upper) {
        for (std::size_t i = 0; i < rule->size(); ++i) {
            const double x = x_lo + (x_hi - x_lo) * rule->nodes[i];
            const double lo = lower(x);
            const double hi = upper(x);
            for (std::size_t j = 0; j < rule->size(); ++j) {
                const double Xc = lo + (hi - lo) * rule->nodes[j];
                const double w = rule->weights[i] * rule->weights[j] *
                                 (x_hi - x_lo) * (hi - lo) *
                                 std::norm(psi_at(Xc, x));
                acc[0] += w;
                acc[1] += w * Xc;
                acc[2] += w * x;
                acc[3] += w * Xc * x;
                acc[4] += w * Xc * Xc;
                acc[5] += w * x * x;
            }
        }
    };
    // x >= 0: m1 x / M <= Xc <= d - m2 x / M
    half(
        0.0, d, [&](double x) { return spec.m1 * x / M; },
        [&](double x) { return d - spec.m2 * x / M; });
    if (!domain.impenetrable) {
        // x <= 0: -m2 x / M <= Xc <= d + m1 x / M
        half(
            -d, 0.0, [&](double x) { return -spec.m2 * x / M; },
            [&](double x) { return d + spec.m1 * x / M; });
    }
    return acc;
}

ComMoments to_com_moments(const std::array<double, 6> &acc) {
    if (!(acc[0] > 0.0)) {
        throw ValidationError("state has zero probability on its domain");
    }
    return {acc[0],          acc[1] / acc[0], acc[2] / acc[0],
            acc[3] / acc[0], acc[4] / acc[0], acc[5] / acc[0]};
}

void check_estimate(double full, double half, double tol, const char *what) {
    const double estimate = std::abs(full - half);
    if (!(estimate <= tol)) {
        std::ostringstream msg;
        msg << what << ": quadrature estimate " << estimate
            << " exceeds tolerance " << tol;
        throw QuadratureError(msg.str(), estimate);
    }
}

double variance(const GaussianPacket &g) { return g.width * g.width; }

double momentum_variance(const GaussianPacket &g, double hbar) {
    return hbar * hbar * (1.0 + g.chirp * g.chirp) / (4.0 * g.width * g.width);
}

double xp_covariance(const GaussianPacket &g, double hbar) {
    return 0.5 * hbar * g.chirp;
}

} // namespace

MomentSet moments(const Superposition &state, double t,
                  const QuadConfig &quad) {
    require_two_particle(state.shape());
    const MomentSet full = to_moments(particle_sums(state, t, quad.order));
    const MomentSet half =
        to_moments(particle_sums(state, t, std::max(1, quad.order / 2)));
    const double d2 = state.spec().d * state.spec().d;
    check_estimate(full.e_x1x2, half.e_x1x2, quad.tol * d2, "moments");
    check_estimate(full.e_x1sq, half.e_x1sq, quad.tol * d2, "moments");
    check_estimate(full.e_x2sq, half.e_x2sq, quad.tol * d2, "moments");
    return full;
}

MomentSet moments(const GridState &state) {
    require_two_particle(state.domain().kind);
    std::array<double, 6> acc{};
    for (int i = 0; i < state.nx(); ++i) {
        for (int j = 0; j < state.ny(); ++j) {
            const Point2 p = state.node(i, j);
            const double w = state.weight(i, j) * std::norm(state.at(i, j));
            acc[0] += w;
            acc[1] += w * p.u;
            acc[2] += w * p.v;
            acc[3] += w * p.u * p.u;
            acc[4] += w * p.v * p.v;
            acc[5] += w * p.u * p.v;
        }
    }
    return to_moments(acc);
}

ComMoments com_moments(const Superposition &state, double t,
                       const ComDomain &domain, const QuadConfig &quad) {
    require_two_particle(state.shape());
    const ComMoments full =
        to_com_moments(com_sums(state, t, domain, quad.order));
    const ComMoments half = to_com_moments(
        com_sums(state, t, domain, std::max(1, quad.order / 2)));
    const double d2 = state.spec().d * state.spec().d;
    check_estimate(full.covariance(), half.covariance(), quad.tol * d2,
                   "com_moments");
    return full;
}

ComMoments com_moments(const GridState &state) {
    require_two_particle(state.domain().kind);
    const BoxSpec &spec = state.domain().spec;
    std::array<double, 6> acc{};
    for (int i = 0; i < state.nx(); ++i) {
        for (int j = 0; j < state.ny(); ++j) {
            const Point2 p = state.node(i, j);
            const ComCoords c = to_com(p.u, p.v, spec);
            const double w = state.weight(i, j) * std::norm(state.at(i, j));
            acc[0] += w;
            acc[1] += w * c.Xc;
            acc[2] += w * c.x;
            acc[3] += w * c.Xc * c.x;
            acc[4] += w * c.Xc * c.Xc;
            acc[5] += w * c.x * c.x;
        }
    }
    return to_com_moments(acc);
}

double covariance_direct(const Superposition &state, double t,
                         const QuadConfig &quad) {
    const ComDomain domain = com_domain(state.spec(), false);
    return com_moments(state, t, domain, quad).covariance();
}

double covariance_direct(const GridState &state) {
    return com_moments(state).covariance();
}

double covariance_expanded(const MomentSet &m, const BoxSpec &spec) noexcept {
    const double M = spec.total_mass();
    return (spec.m1 * m.var_x1() - spec.m2 * m.var_x2() +
            (spec.m2 - spec.m1) * m.cov_x1x2()) /
           M;
}

double covariance_expanded(const Superposition &state, double t,
                           const QuadConfig &quad) {
    return covariance_expanded(moments(state, t, quad), state.spec());
}

double covariance_expanded(const GridState &state) {
    return covariance_expanded(moments(state), state.domain().spec);
}

void FreeInitialState::validate() const {
    if (!(first.width > 0.0) || !(second.width > 0.0)) {
        throw ValidationError("Gaussian widths must be > 0");
    }
}

std::complex<double> FreeInitialState::amplitude(double x1, double x2,
                                                 double hbar) const {
    auto packet = [hbar](const GaussianPacket &g, double x) {
        const double dx = x - g.center;
        const double w2 = g.width * g.width;
        const std::complex<double> expo{-dx * dx / (4.0 * w2),
                                        g.chirp * dx * dx / (4.0 * w2) +
                                            g.momentum * dx / hbar};
        return std::pow(2.0 * kPi * w2, -0.25) * std::exp(expo);
    };
    return packet(first, x1) * packet(second, x2);
}

FreeCovariance free_covariance(const FreeInitialState &init,
                               const BoxSpec &spec) {
    init.validate();
    spec.validate();
    const double hbar = spec.hbar;
    const double m1 = spec.m1;
    const double m2 = spec.m2;
    const double M = spec.total_mass();
    const double mu = spec.reduced_mass();
    const GaussianPacket &g1 = init.first;
    const GaussianPacket &g2 = init.second;

    // Linear coefficients of Xc, x, P, p in (x1, x2) or (p1, p2).
    const std::array<double, 2> cXc{m1 / M, m2 / M};
    const std::array<double, 2> cx{1.0, -1.0};
    const std::array<double, 2> cP{1.0, 1.0};
    const std::array<double, 2> cp{m2 / M, -m1 / M};

    const std::array<double, 2> mean_x{g1.center, g2.center};
    const std::array<double, 2> mean_p{g1.momentum, g2.momentum};
    const std::array<double, 2> var_x{variance(g1), variance(g2)};
    const std::array<double, 2> var_p{momentum_variance(g1, hbar),
                                      momentum_variance(g2, hbar)};
    const std::array<double, 2> cov_xp{xp_covariance(g1, hbar),
                                       xp_covariance(g2, hbar)};

    auto mean = [](const std::array<double, 2> &c,
                   const std::array<double, 2> &m) {
        return c[0] * m[0] + c[1] * m[1];
    };
    // Particles are independent, so only same-particle covariances survive.
    auto second_moment = [&](const std::array<double, 2> &ca,
                             const std::array<double, 2> &ma,
                             const std::array<double, 2> &cb,
                             const std::array<double, 2> &mb,
                             const std::array<double, 2> &cov) {
        return ca[0] * cb[0] * cov[0] + ca[1] * cb[1] * cov[1] +
               mean(ca, ma) * mean(cb, mb);
    };

    const double e_Xc = mean(cXc, mean_x);
    const double e_x = mean(cx, mean_x);
    const double e_P = mean(cP, mean_p);
    const double e_p = mean(cp, mean_p);
    // Symmetrized products; Xc and p (and P and x) commute anyway.
    const double e_Xc_x = second_moment(cXc, mean_x, cx, mean_x, var_x);
    const double e_Xc_p = second_moment(cXc, mean_x, cp, mean_p, cov_xp);
    const double e_P_x = second_moment(cP, mean_p, cx, mean_x, cov_xp);
    const double e_P_p = second_moment(cP, mean_p, cp, mean_p, var_p);

    FreeCovariance out;
    out.constant = e_Xc_x - e_Xc * e_x;
    out.linear = e_Xc_p / mu + e_P_x / M - e_Xc * e_p / mu - e_P * e_x / M;
    out.quadratic = (e_P_p - e_P * e_p) / (M * mu);
    return out;
}

double covariance_free(const FreeInitialState &init, const BoxSpec &spec,
                       double t) {
    return free_covariance(init, spec)(t);
}

Superposition two_mode_example_state(const BoxSpec &spec) {
    const double c = 1.0 / std::numbers::sqrt2;
    Superposition s({{c, EigenState::make(Shape::TwoParticleBox, {1, 1}, spec)},
                     {c, EigenState::make(Shape::TwoParticleBox, {2, 2}, spec)}});
    return s;
}

double two_mode_energy_gap(const BoxSpec &spec) {
    return -3.0 * spec.hbar * spec.hbar * kPi * kPi /
           (2.0 * spec.d * spec.d * spec.reduced_mass());
}

double covariance_closed_form_example(const BoxSpec &spec, double t) {
    spec.validate();
    const double pi2 = kPi * kPi;
    const double pi4 = pi2 * pi2;
    const double M = spec.total_mass();
    const double c = std::cos(two_mode_energy_gap(spec) * t / spec.hbar);
    const double bracket = (668288.0 - 61440.0 * pi2) * c + 102400.0 * c * c +
                           8640.0 * pi2 - 4608.0 * pi4 + 50625.0;
    return -(spec.d * spec.d * (spec.m1 - spec.m2) / (165888.0 * pi4 * M)) *
           bracket;
}

bool is_two_mode_example(const Superposition &state) {
    if (state.empty() || state.shape() != Shape::TwoParticleBox ||
        state.terms().size() != 2) {
        return false;
    }
    const auto &a = state.terms()[0];
    const auto &b = state.terms()[1];
    const bool modes =
        (a.state.qn() == QuantumNumbers{1, 1} &&
         b.state.qn() == QuantumNumbers{2, 2}) ||
        (a.state.qn() == QuantumNumbers{2, 2} &&
         b.state.qn() == QuantumNumbers{1, 1});
    return modes && std::abs(a.coeff - b.coeff) <=
                        1e-12 * std::max(std::abs(a.coeff), 1.0);
}

} // namespace billiard
