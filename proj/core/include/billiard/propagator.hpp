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
 * Green's functions G(p, p', t) = sum_N psi_N(p) psi_N(p') exp(-i E_N t/hbar)
 * in two independent forms: a resummed product of theta_3 differences and
 * a truncated spectral double sum. Both are regularized by the same nome
 * damping epsilon, which is equivalent to evaluating at the complex time
 * t - i s with s = damping_time(spec, epsilon); each mode N is then scaled
 * by exp(-pi epsilon (N1^2 + N2^2)) in the square convention.
 */

#pragma once

#include <complex>

#include "billiard/eigenstates.hpp"
#include "billiard/geometry.hpp"
#include "billiard/grid_state.hpp"
#include "billiard/theta.hpp"

namespace billiard {

/// Imaginary-time shift s = 2 m1 d^2 epsilon / (pi hbar) matching the nome
/// damping epsilon.
[[nodiscard]] double damping_time(const BoxSpec &spec, double epsilon);

/**
 * Theta-form kernel. Points are in the shape's own coordinates ((y1, y2)
 * for the rectangle). Rhombus and triangle kernels are built in the rotated
 * coordinates u = x1 + x2, v = x1 - x2; the triangle kernel is the rhombus
 * kernel minus its image under x1' -> -x1'.
 */
[[nodiscard]] std::complex<double> greens_theta(Shape shape, Point2 p,
                                                Point2 p_prime, double t,
                                                const BoxSpec &spec,
                                                const ThetaParams &params);

/// Truncated eigenfunction sum over 1 <= N1, N2 <= n_cut (N1 < N2 for the
/// triangle) with damping matched to greens_theta at the same epsilon.
[[nodiscard]] std::complex<double>
greens_spectral_oracle(Shape shape, Point2 p, Point2 p_prime, double t,
                       const BoxSpec &spec, int n_cut, double epsilon);

/// Bound on |oracle(n_cut) - oracle(infinity)|, uniform in (p, p', t).
[[nodiscard]] double spectral_tail_bound(Shape shape, const BoxSpec &spec,
                                         int n_cut, double epsilon);

/// Smallest n_cut whose spectral_tail_bound is below `bound`.
[[nodiscard]] int spectral_cutoff(Shape shape, const BoxSpec &spec,
                                  double epsilon, double bound);

struct PropagateOptions {
    /// Rescale the result to unit norm. Off by default so damping loss shows.
    bool normalize = false;
};

/**
 * psi(p, t) = sum_j w_j G(p, p_j, t) psi(p_j, 0) with trapezoidal weights on
 * the lattice of `initial`. Uses theta-kernel tables shared across all node
 * pairs. The triangle and rhombus need equal spacing along both axes (see
 * GridState::uniform); other lattices fall back to pointwise kernels.
 */
[[nodiscard]] GridState propagate_grid(const GridState &initial, double t,
                                       const ThetaParams &params,
                                       PropagateOptions options = {});

/// Reference implementation: direct pointwise greens_theta for each pair.
[[nodiscard]] GridState propagate_grid_pointwise(const GridState &initial,
                                                 double t,
                                                 const ThetaParams &params);

/// Coefficients multiplied by exp(-i E_N t / hbar). Complex t gives the
/// damped evolution exp(-i E (t - i s)/hbar) used to match propagators.
[[nodiscard]] Superposition evolve_superposition(const Superposition &s,
                                                 double t);
[[nodiscard]] Superposition evolve_superposition(const Superposition &s,
                                                 std::complex<double> t);

} // namespace billiard
