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
 * Closed-form Dirichlet eigenstates of the two-particle box and of the four
 * single-particle billiards, with numerical self-checks (boundary vanishing,
 * finite-difference Schrodinger residual, quadrature normalization).
 */

#pragma once

#include <complex>
#include <vector>

#include "billiard/geometry.hpp"

namespace billiard {

/// Both entries are >= 1. For the triangle N1 != N2, and (N2, N1) is the
/// same ray as (N1, N2) with opposite sign.
struct QuantumNumbers {
    int n1 = 1;
    int n2 = 1;

    friend bool operator==(const QuantumNumbers &,
                           const QuantumNumbers &) = default;
};

/// Throws ValidationError if qn is not admissible for the shape.
void validate_quantum_numbers(Shape shape, QuantumNumbers qn);

inline constexpr int kDefaultQuadOrder = 64;

[[nodiscard]] double energy(Shape shape, QuantumNumbers qn,
                            const BoxSpec &spec);

/// Unit-amplitude eigenfunction (no domain clipping, no normalization).
[[nodiscard]] double basis_value(Shape shape, QuantumNumbers qn,
                                 const BoxSpec &spec, Point2 p) noexcept;

/**
 * 1/sqrt(integral of basis_value^2) over the shape's polygon, computed with
 * Gauss-Legendre quadrature. Results are memoized per (shape, spec, qn,
 * order). Throws QuadratureError when the order/2 cross-check disagrees by
 * more than 1e-10 relative.
 */
[[nodiscard]] double normalization_constant(Shape shape, const BoxSpec &spec,
                                            QuantumNumbers qn,
                                            int order = kDefaultQuadOrder);
/// Same, for the lowest admissible state of the shape.
[[nodiscard]] double normalization_constant(Shape shape, const BoxSpec &spec,
                                            int order = kDefaultQuadOrder);

class EigenState {
  public:
    static EigenState make(Shape shape, QuantumNumbers qn, const BoxSpec &spec,
                           int quad_order = kDefaultQuadOrder);

    [[nodiscard]] Shape shape() const noexcept { return shape_; }
    [[nodiscard]] QuantumNumbers qn() const noexcept { return qn_; }
    [[nodiscard]] const BoxSpec &spec() const noexcept { return spec_; }
    [[nodiscard]] double norm() const noexcept { return norm_; }
    [[nodiscard]] double energy() const noexcept { return energy_; }
    [[nodiscard]] const Polygon &polygon() const noexcept { return polygon_; }

    /// Normalized value; zero outside the domain.
    [[nodiscard]] double operator()(Point2 p) const noexcept;
    /// Normalized closed form evaluated anywhere in the plane.
    [[nodiscard]] double raw(Point2 p) const noexcept;

  private:
    EigenState(Shape shape, QuantumNumbers qn, const BoxSpec &spec,
               double norm);

    Shape shape_;
    QuantumNumbers qn_;
    BoxSpec spec_;
    double norm_;
    double energy_;
    Polygon polygon_;
};

[[nodiscard]] double eval_eigenfunction(const EigenState &state, Point2 p);

/// Two-particle eigenstate written in (Xc, x); normalized with the
/// quadrature constant of the particle-coordinate form.
[[nodiscard]] double eval_com_eigen(QuantumNumbers qn, const BoxSpec &spec,
                                    double Xc, double x);

/// Max |psi| over n_samples equally spaced points on every polygon edge.
[[nodiscard]] double boundary_residual(const EigenState &state, int n_samples);

/**
 * Relative residual ||H_h psi - E psi|| / ||E psi|| on interior sample
 * points, with H_h the 5-point finite-difference Hamiltonian. Pass
 * trial_energy to test a candidate eigenvalue other than state.energy().
 */
[[nodiscard]] double hamiltonian_residual(const EigenState &state, double h);
[[nodiscard]] double hamiltonian_residual(const EigenState &state, double h,
                                          double trial_energy);

struct TriangleEnergyCertificate {
    double single = 0.0; ///< pi^2 (N1^2+N2^2) hbar^2 / (2 m d^2)
    double doubled = 0.0;
    double residual_single = 0.0;
    double residual_doubled = 0.0;
    double certified = 0.0;
};

/// Decides between the two candidate triangle eigenvalues by residual.
[[nodiscard]] TriangleEnergyCertificate
certify_triangle_energy(QuantumNumbers qn, const BoxSpec &spec, double h);

struct SuperpositionTerm {
    std::complex<double> coeff;
    EigenState state;
};

/// Expansion over distinct eigenstates of one shape and one BoxSpec.
class Superposition {
  public:
    Superposition() = default;
    /// Throws ValidationError on mixed shapes/specs or repeated states.
    explicit Superposition(std::vector<SuperpositionTerm> terms);

    [[nodiscard]] const std::vector<SuperpositionTerm> &terms() const noexcept {
        return terms_;
    }
    [[nodiscard]] bool empty() const noexcept { return terms_.empty(); }
    [[nodiscard]] Shape shape() const;
    [[nodiscard]] const BoxSpec &spec() const;

    [[nodiscard]] double norm_squared() const noexcept;
    /// Rescales the coefficients to unit 2-norm.
    Superposition &normalize();

    [[nodiscard]] std::complex<double> operator()(Point2 p) const noexcept;

  private:
    std::vector<SuperpositionTerm> terms_;
};

} // namespace billiard
