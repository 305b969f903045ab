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

/**
 * @file
 * Position moments and the center-of-mass / relative-coordinate covariance
 * Cov(Xc, x, t) for the two-particle box, plus the free-particle result for
 * Gaussian packets.
 *
 * Two independent routes:
 *  - covariance_direct integrates Xc, x, Xc*x over the (Xc, x) polygon using
 *    the center-of-mass form of the eigenfunctions;
 *  - covariance_expanded integrates x1, x2 moments over [0, d]^2 using the
 *    particle-coordinate form and combines them as
 *      (m1 Var x1 - m2 Var x2 + (m2 - m1) Cov(x1, x2)) / M.
 */

#pragma once

#include <complex>

#include "billiard/eigenstates.hpp"
#include "billiard/geometry.hpp"
#include "billiard/grid_state.hpp"

namespace billiard {

struct QuadConfig {
    int order = kDefaultQuadOrder;
    /// Absolute tolerance (units of d^2) on the order vs order/2 estimate.
    double tol = 1e-10;
};

/// Moments of the joint density in particle coordinates.
struct MomentSet {
    double e_x1 = 0.0;
    double e_x2 = 0.0;
    double e_x1sq = 0.0;
    double e_x2sq = 0.0;
    double e_x1x2 = 0.0;

    [[nodiscard]] double var_x1() const noexcept { return e_x1sq - e_x1 * e_x1; }
    [[nodiscard]] double var_x2() const noexcept { return e_x2sq - e_x2 * e_x2; }
    [[nodiscard]] double cov_x1x2() const noexcept {
        return e_x1x2 - e_x1 * e_x2;
    }
};

/// Moments of the joint density in (Xc, x).
struct ComMoments {
    double probability = 0.0; ///< mass of |psi|^2 found on the domain
    double e_Xc = 0.0;
    double e_x = 0.0;
    double e_Xc_x = 0.0;
    double e_Xc_sq = 0.0;
    double e_x_sq = 0.0;

    [[nodiscard]] double covariance() const noexcept {
        return e_Xc_x - e_Xc * e_x;
    }
    [[nodiscard]] double var_Xc() const noexcept { return e_Xc_sq - e_Xc * e_Xc; }
    [[nodiscard]] double var_x() const noexcept { return e_x_sq - e_x * e_x; }
};

/// Expectations are normalized by the probability mass on the domain.
[[nodiscard]] MomentSet moments(const Superposition &state, double t,
                                const QuadConfig &quad = {});
[[nodiscard]] MomentSet moments(const GridState &state);

[[nodiscard]] ComMoments com_moments(const Superposition &state, double t,
                                     const ComDomain &domain,
                                     const QuadConfig &quad = {});
[[nodiscard]] ComMoments com_moments(const GridState &state);

[[nodiscard]] double covariance_direct(const Superposition &state, double t,
                                       const QuadConfig &quad = {});
[[nodiscard]] double covariance_direct(const GridState &state);

[[nodiscard]] double covariance_expanded(const MomentSet &m,
                                         const BoxSpec &spec) noexcept;
[[nodiscard]] double covariance_expanded(const Superposition &state, double t,
                                         const QuadConfig &quad = {});
[[nodiscard]] double covariance_expanded(const GridState &state);

/**
 * psi(x) = (2 pi w^2)^{-1/4} exp(-(1 - i chirp)(x - c)^2 / (4 w^2)
 *                               + i p (x - c) / hbar)
 * so <x> = c, Var x = w^2, <p> = p, Var p = hbar^2 (1 + chirp^2)/(4 w^2) and
 * the symmetrized position-momentum covariance is hbar chirp / 2.
 */
struct GaussianPacket {
    double center = 0.0;
    double width = 1.0;
    double momentum = 0.0;
    double chirp = 0.0;
};

/// Product of one Gaussian packet per particle.
struct FreeInitialState {
    GaussianPacket first;
    GaussianPacket second;

    void validate() const;
    [[nodiscard]] std::complex<double> amplitude(double x1, double x2,
                                                 double hbar) const;
};

/// Cov(t) = constant + linear t + quadratic t^2.
struct FreeCovariance {
    double constant = 0.0;
    double linear = 0.0;
    double quadratic = 0.0;

    [[nodiscard]] double operator()(double t) const noexcept {
        return constant + t * (linear + t * quadratic);
    }
};

/// Heisenberg-picture expansion with Xc(t) = Xc + P t / M, x(t) = x + p t / mu.
[[nodiscard]] FreeCovariance free_covariance(const FreeInitialState &init,
                                             const BoxSpec &spec);
[[nodiscard]] double covariance_free(const FreeInitialState &init,
                                     const BoxSpec &spec, double t);

/// (psi_11 + psi_22) / sqrt(2) in the two-particle box.
[[nodiscard]] Superposition two_mode_example_state(const BoxSpec &spec);

/// E_11 - E_22 = -3 hbar^2 pi^2 / (2 d^2 mu).
[[nodiscard]] double two_mode_energy_gap(const BoxSpec &spec);

/// Reference closed form for the two-mode example, evaluated as given:
/// -(d^2 (m1 - m2) / (165888 pi^4 M)) [(668288 - 61440 pi^2) c + 102400 c^2
///   + 8640 pi^2 - 4608 pi^4 + 50625], c = cos((E_11 - E_22) t / hbar).
[[nodiscard]] double covariance_closed_form_example(const BoxSpec &spec,
                                                   double t);

/// True if `state` is the two-mode example (1,1)+(2,2) with equal weights.
[[nodiscard]] bool is_two_mode_example(const Superposition &state);

} // namespace billiard
