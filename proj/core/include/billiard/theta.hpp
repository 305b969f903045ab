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
 * Jacobi theta_3 in the nome form
 *
 *     theta3(zeta, q) = 1 + 2 sum_{n>=1} cos(2 n zeta) q^{n^2}
 *
 * with truncation control and tail bounds. Real-time propagators sit on
 * |q| = 1 where the series diverges; they are evaluated at a damped nome
 * |q| = exp(-pi * factor * epsilon) and, if needed, extrapolated to
 * epsilon -> 0 with richardson_to_zero().
 */

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "billiard/geometry.hpp"

namespace billiard {

struct ThetaParams {
    int n_max = 20000;
    /// Stop once the term majorant 2 |q|^{n^2} cosh(2 n Im zeta) < tol.
    double tol = 1e-17;
    /// Nome damping used by the propagators (dimensionless, >= 0).
    double epsilon = 1e-3;
    /// Opt-in for |q| == 1; non-convergence then raises NonConvergentError.
    bool allow_unit_modulus = false;

    /// Throws ValidationError on n_max < 1, tol <= 0 or epsilon < 0.
    void validate() const;
};

/// Nome q = exp(log_q), stored in log form; q^{n^2} keeps full phase
/// accuracy for large n.
class Nome {
  public:
    Nome() = default;
    static Nome from_value(std::complex<double> q);
    static Nome from_log(std::complex<double> log_q);

    [[nodiscard]] std::complex<double> value() const noexcept;
    [[nodiscard]] std::complex<double> log() const noexcept { return log_q_; }
    [[nodiscard]] double modulus() const noexcept;
    [[nodiscard]] bool is_zero() const noexcept { return zero_; }
    /// q^{k} for integer k >= 0.
    [[nodiscard]] std::complex<double> power(double k) const noexcept;

  private:
    std::complex<double> log_q_{};
    bool zero_ = true;
};

struct ThetaValue {
    std::complex<double> value;
    /// Rigorous majorant of the dropped tail.
    double tail_bound = 0.0;
    /// Largest n included.
    int terms = 0;
    /// True if the loop stopped on tol, false if it hit n_max.
    bool reached_tol = false;
};

[[nodiscard]] ThetaValue theta3(std::complex<double> zeta, const Nome &q,
                                const ThetaParams &params);

/**
 * theta3 at many real arguments. Arguments within `merge_tol` of each other
 * share one evaluation, which makes lattice kernels cost O(distinct args).
 */
[[nodiscard]] std::vector<std::complex<double>>
theta3_batch(std::span<const double> args, const Nome &q,
             const ThetaParams &params, double merge_tol = 1e-13);

/// 2 |q|^{(n+1)^2} / (1 - |q|^{2n+3}): bound on the tail after n terms for
/// real zeta. Requires |q| < 1.
[[nodiscard]] double theta3_tail_bound(const Nome &q, int n);

/**
 * tau = -pi hbar t / (2 mass d^2) + i epsilon and q = exp(i pi factor tau),
 * so |q| = exp(-pi factor epsilon). factor is 1 or 2.
 */
[[nodiscard]] Nome nome_from_time(double t, double mass, double d,
                                  const BoxSpec &spec, int factor,
                                  double epsilon);

/// Polynomial (Neville) extrapolation of f(eps) to eps = 0.
[[nodiscard]] std::complex<double>
richardson_to_zero(std::span<const double> eps,
                   std::span<const std::complex<double>> values);

} // namespace billiard
