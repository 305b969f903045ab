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


#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "billiard/error.hpp"
#include "billiard/propagator.hpp"
#include "support.hpp"

using namespace billiard;
using billiard::testing::interior_point;
using billiard::testing::spec_for;
using billiard::testing::uniform;

namespace {

constexpr double kPi = std::numbers::pi;

QuantumNumbers low_state(Shape shape) {
    return shape == Shape::Triangle ? QuantumNumbers{1, 2} : QuantumNumbers{1, 1};
}

double max_abs_diff(const GridState &a, const GridState &b) {
    double worst = 0.0;
    for (int i = 0; i < a.nx(); ++i) {
        for (int j = 0; j < a.ny(); ++j) {
            worst = std::max(worst, std::abs(a.at(i, j) - b.at(i, j)));
        }
    }
    return worst;
}

GridState lattice_for(const Superposition &s, int n) {
    const auto lattice = GridState::uniform(ShapeDomain{s.shape(), s.spec()}, n);
    return GridState::from_superposition(s, lattice.nx(), lattice.ny());
}

} // namespace

TEST_CASE("square kernel vanishes on the edge") {
    const BoxSpec spec{1.0, 1.0, 1.0};
    for (int k = 0; k < 20; ++k) {
        const Point2 p{uniform(-1, 1), uniform(-1, 1)};
        const Point2 edge{1.0, uniform(-1, 1)};
        CHECK(std::abs(greens_theta(Shape::Square, p, edge, uniform(0, 1), spec, {})) <
              1e-12);
    }
}

TEST_CASE("triangle kernel vanishes on x1 = 0 and is antisymmetric") {
    const BoxSpec spec{1.0, 1.0, 1.0};
    const Polygon tri = ShapeDomain{Shape::Triangle, spec}.polygon();
    for (int k = 0; k < 20; ++k) {
        const Point2 p = interior_point(tri);
        const Point2 q = interior_point(tri);
        const double t = uniform(0, 1);
        CHECK(std::abs(greens_theta(Shape::Triangle, {0.0, p.v}, q, t, spec, {})) <
              1e-12);
        const auto g = greens_theta(Shape::Triangle, p, q, t, spec, {});
        const auto g1 = greens_theta(Shape::Triangle, {-p.u, p.v}, q, t, spec, {});
        const auto g2 = greens_theta(Shape::Triangle, p, {-q.u, q.v}, t, spec, {});
        CHECK(std::abs(g + g1) < 1e-12 * std::max(1.0, std::abs(g)));
        CHECK(std::abs(g + g2) < 1e-12 * std::max(1.0, std::abs(g)));
    }
}

TEST_CASE("kernels vanish on every edge in both arguments") {
    ThetaParams params;
    params.epsilon = 1e-2;
    for (Shape shape : kAllShapes) {
        CAPTURE(to_string(shape));
        const BoxSpec spec = spec_for(shape);
        const Polygon poly = ShapeDomain{shape, spec}.polygon();
        const auto v = poly.vertices();
        for (std::size_t e = 0; e < v.size(); ++e) {
            const Point2 a = v[e];
            const Point2 b = v[(e + 1) % v.size()];
            for (int k = 0; k < 5; ++k) {
                const double s = uniform(0, 1);
                const Point2 edge{a.u + s * (b.u - a.u), a.v + s * (b.v - a.v)};
                const Point2 p = interior_point(poly);
                const double t = uniform(0, 1);
                CHECK(std::abs(greens_theta(shape, edge, p, t, spec, params)) < 1e-10);
                CHECK(std::abs(greens_theta(shape, p, edge, t, spec, params)) < 1e-10);
            }
        }
    }
}

TEST_CASE("theta kernel matches the damped spectral sum") {
    const double eps = 1e-3;
    for (Shape shape : kAllShapes) {
        CAPTURE(to_string(shape));
        const BoxSpec spec = spec_for(shape);
        const Polygon poly = ShapeDomain{shape, spec}.polygon();
        const int n_cut = spectral_cutoff(shape, spec, eps, 1e-10);
        const double tail = spectral_tail_bound(shape, spec, n_cut, eps);
        CHECK(tail < 1e-10);
        for (int k = 0; k < 20; ++k) {
            const Point2 p = interior_point(poly);
            const Point2 q = interior_point(poly);
            const double t = uniform(0, 1);
            const auto g = greens_theta(shape, p, q, t, spec, {});
            const auto o = greens_spectral_oracle(shape, p, q, t, spec, n_cut, eps);
            const double scale = std::max({std::abs(g), std::abs(o), tail * 1e8});
            CHECK(std::abs(g - o) / scale < 1e-8);
        }
    }
}

TEST_CASE("spectral oracle examples") {
    const BoxSpec spec{1.0, 1.0, 1.0};
    const Point2 p{0.3, -0.6};
    const Point2 q{-0.2, 0.45};
    const auto one = greens_spectral_oracle(Shape::Square, p, q, 0.0, spec, 1, 0.0);
    const double expected = std::sin(kPi * p.u) * std::sin(kPi * p.v) *
                            std::sin(kPi * q.u) * std::sin(kPi * q.v);
    CHECK(one.real() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(one.imag() == 0.0);

    for (Shape shape : kAllShapes) {
        const BoxSpec s = spec_for(shape);
        const Polygon poly = ShapeDomain{shape, s}.polygon();
        const Point2 a = interior_point(poly);
        const Point2 b = interior_point(poly);
        const double t = uniform(0, 1);
        const auto g = greens_spectral_oracle(shape, a, b, t, s, 30, 1e-3);
        const auto h = greens_spectral_oracle(shape, b, a, -t, s, 30, 1e-3);
        CHECK(std::abs(g - std::conj(h)) < 1e-12);

        const int n = 40;
        const auto coarse = greens_spectral_oracle(shape, a, b, t, s, n, 1e-3);
        const auto fine = greens_spectral_oracle(shape, a, b, t, s, 2 * n, 1e-3);
        CHECK(std::abs(fine - coarse) <= spectral_tail_bound(shape, s, n, 1e-3));
    }
}

TEST_CASE("propagated eigenstates acquire their phase") {
    const double t = 0.37;
    ThetaParams params;
    for (Shape shape : kAllShapes) {
        CAPTURE(to_string(shape));
        const BoxSpec spec = spec_for(shape);
        const Superposition s({{1.0, EigenState::make(shape, low_state(shape), spec)}});
        const GridState initial = lattice_for(s, 129);
        const GridState out = propagate_grid(initial, t, params);
        CHECK(out.t() == t);
        const auto exact = GridState::from_superposition(
            evolve_superposition(s, {t, -damping_time(spec, params.epsilon)}),
            initial.nx(), initial.ny());
        CHECK(max_abs_diff(out, exact) < 1e-6);
    }
}

TEST_CASE("lattice path matches pointwise kernels") {
    ThetaParams params;
    params.epsilon = 1e-2;
    for (Shape shape : kAllShapes) {
        CAPTURE(to_string(shape));
        const BoxSpec spec = spec_for(shape);
        const auto e1 = EigenState::make(shape, low_state(shape), spec);
        const auto e2 = EigenState::make(shape, {2, 3}, spec);
        const Superposition s({{0.6, e1}, {{0.0, 0.8}, e2}});
        const GridState initial = lattice_for(s, 17);
        const auto fast = propagate_grid(initial, 0.21, params);
        const auto slow = propagate_grid_pointwise(initial, 0.21, params);
        CHECK(max_abs_diff(fast, slow) < 1e-11);
    }
}

TEST_CASE("two-term superposition matches exact phases after extrapolation") {
    const BoxSpec spec{1.0, 1.0, 1.0};
    const Superposition s({{std::sqrt(0.5), EigenState::make(Shape::Square, {1, 1}, spec)},
                           {std::sqrt(0.5), EigenState::make(Shape::Square, {1, 2}, spec)}});
    const GridState initial = lattice_for(s, 257);
    const double t = 0.3;
    const std::vector<double> eps{1e-3, 5e-4, 2.5e-4, 1.25e-4};
    std::vector<GridState> runs;
    for (double e : eps) {
        ThetaParams params;
        params.epsilon = e;
        runs.push_back(propagate_grid(initial, t, params));
    }
    const auto exact = GridState::from_superposition(evolve_superposition(s, t),
                                                     initial.nx(), initial.ny());
    double worst = 0.0;
    double worst_raw = 0.0;
    std::vector<std::complex<double>> column(eps.size());
    for (int i = 0; i < initial.nx(); ++i) {
        for (int j = 0; j < initial.ny(); ++j) {
            for (std::size_t k = 0; k < eps.size(); ++k) {
                column[k] = runs[k].at(i, j);
            }
            worst = std::max(worst,
                             std::abs(richardson_to_zero(eps, column) - exact.at(i, j)));
            worst_raw = std::max(worst_raw, std::abs(column.back() - exact.at(i, j)));
        }
    }
    CHECK(worst < 1e-6);
    CHECK(worst < worst_raw);
}

TEST_CASE("norm loss is monotone in epsilon and vanishes") {
    const BoxSpec spec{1.0, 1.0, 1.0};
    const Superposition s({{std::sqrt(0.5), EigenState::make(Shape::Square, {1, 1}, spec)},
                           {std::sqrt(0.5), EigenState::make(Shape::Square, {2, 3}, spec)}});
    const GridState initial = lattice_for(s, 257);
    const double n0 = initial.norm_squared();
    CHECK(n0 == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<double> loss;
    for (double e : {1e-2, 1e-3, 1e-4}) {
        ThetaParams params;
        params.epsilon = e;
        loss.push_back(n0 - propagate_grid(initial, 0.4, params).norm_squared());
    }
    CHECK(loss[0] > loss[1]);
    CHECK(loss[1] > loss[2]);
    CHECK(loss[2] > 0.0);
    CHECK(loss[2] < 0.02 * loss[0]);

    ThetaParams params;
    params.epsilon = 1e-2;
    const auto normalized = propagate_grid(initial, 0.4, params, {true});
    CHECK(normalized.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero time tends to the identity") {
    const BoxSpec spec{1.0, 1.0, 1.0};
    const Superposition s({{1.0, EigenState::make(Shape::Square, {1, 2}, spec)}});
    const GridState initial = lattice_for(s, 257);
    std::vector<double> err;
    for (double e : {1e-3, 1e-4}) {
        ThetaParams params;
        params.epsilon = e;
        err.push_back(max_abs_diff(propagate_grid(initial, 0.0, params), initial));
    }
    CHECK(err[1] < 0.2 * err[0]);
    CHECK(err[1] < 2e-3);
}

TEST_CASE("propagation preconditions") {
    const BoxSpec spec{1.0, 1.0, 1.0};
    const Superposition s({{1.0, EigenState::make(Shape::Square, {1, 1}, spec)}});
    GridState initial = lattice_for(s, 9);
    CHECK_THROWS_AS((void)propagate_grid(initial, -1.0, {}), ValidationError);
    initial.set_time(0.5);
    CHECK_THROWS_AS((void)propagate_grid(initial, 1.0, {}), ValidationError);
}

TEST_CASE("exact evolution") {
    const BoxSpec spec{1.3, 1.0, 0.8, 0.9};
    const auto e = EigenState::make(Shape::Square, {2, 1}, spec);
    const Superposition single({{1.0, e}});
    for (int k = 0; k < 10; ++k) {
        const double t = uniform(0, 5);
        const auto evolved = evolve_superposition(single, t);
        const Point2 p{uniform(-0.8, 0.8), uniform(-0.8, 0.8)};
        CHECK(std::norm(evolved(p)) == doctest::Approx(std::norm(single(p))).epsilon(1e-13));
    }

    std::vector<SuperpositionTerm> terms;
    for (int n1 = 1; n1 <= 3; ++n1) {
        for (int n2 = 1; n2 <= 3; ++n2) {
            terms.push_back({std::polar(1.0, uniform(0, 2 * kPi)),
                             EigenState::make(Shape::Square, {n1, n2}, spec)});
        }
    }
    Superposition s(std::move(terms));
    s.normalize();
    const double t_rev = 4.0 * spec.m1 * spec.d * spec.d / (kPi * spec.hbar);
    const auto back = evolve_superposition(s, t_rev);
    std::complex<double> fidelity{};
    for (std::size_t k = 0; k < s.terms().size(); ++k) {
        fidelity += std::conj(s.terms()[k].coeff) * back.terms()[k].coeff;
    }
    CHECK(std::abs(fidelity) > 1.0 - 1e-12);
    CHECK(evolve_superposition(s, 1.7).norm_squared() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(damping_time(spec, 1e-3) == doctest::Approx(2.0 * 1.3 * 0.64 * 1e-3 / (kPi * 0.9)));
}
