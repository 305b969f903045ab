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


// Acceptance run: one PASS/FAIL line per criterion with the measured value,
// its tolerance and the wall time. Exit status is nonzero if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "billiard/eigenstates.hpp"
#include "billiard/geometry.hpp"
#include "billiard/observables.hpp"
#include "billiard/propagator.hpp"
#include "billiard/theta.hpp"

namespace {

using namespace billiard;

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char *name;
    double time_limit; // seconds, <= 0 for none
    std::function<Outcome()> body;
};

std::mt19937_64 rng(12345);

double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Point2 interior_point(const Polygon &poly) {
    const BoundingBox box = poly.bounding_box();
    for (;;) {
        const Point2 p{uniform(box.lo.u, box.hi.u), uniform(box.lo.v, box.hi.v)};
        if (poly.signed_distance(p) > 0.0) {
            return p;
        }
    }
}

BoxSpec spec_for(Shape shape) {
    BoxSpec spec{2.0, 1.0, 1.0};
    if (shape == Shape::Rectangle) {
        spec.a = 1.5;
        spec.b = 0.7;
    }
    return spec;
}

std::string fmt(const char *pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

Outcome com_roundtrip() {
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const BoxSpec spec{uniform(0.01, 100.0), uniform(0.01, 100.0), 1.0};
        const double x1 = uniform(-10.0, 10.0);
        const double x2 = uniform(-10.0, 10.0);
        const auto c = to_com(x1, x2, spec);
        const auto back = from_com(c.Xc, c.x, spec);
        const double scale = std::max(std::abs(x1), std::abs(x2));
        worst = std::max(worst, std::max(std::abs(back.x1 - x1), std::abs(back.x2 - x2)) / scale);
    }
    return {worst < 1e-14, fmt("max_rel_err=%.3e tol=1e-14", worst)};
}

Outcome com_eigenfunctions() {
    double worst = 0.0;
    for (const BoxSpec &spec :
         {BoxSpec{1.0, 1.0, 1.0}, BoxSpec{1.0, 3.0, 1.0}, BoxSpec{7.0, 0.5, 1.0}}) {
        for (int n1 = 1; n1 <= 3; ++n1) {
            for (int n2 = 1; n2 <= 3; ++n2) {
                const auto state = EigenState::make(Shape::TwoParticleBox, {n1, n2}, spec);
                for (int k = 0; k < 1000; ++k) {
                    const double x1 = uniform(0.0, spec.d);
                    const double x2 = uniform(0.0, spec.d);
                    const auto c = to_com(x1, x2, spec);
                    worst = std::max(worst, std::abs(eval_com_eigen({n1, n2}, spec, c.Xc, c.x) -
                                                      state({x1, x2})));
                }
            }
        }
    }
    return {worst < 1e-12, fmt("max_abs_diff=%.3e tol=1e-12", worst)};
}

Outcome pde_residual() {
    bool ok = true;
    std::ostringstream detail;
    for (Shape shape : kAllShapes) {
        const BoxSpec spec = spec_for(shape);
        for (QuantumNumbers qn : {QuantumNumbers{1, 2}, QuantumNumbers{3, 2}}) {
            const auto state = EigenState::make(shape, qn, spec);
            const double ratio =
                hamiltonian_residual(state, 1e-3) / hamiltonian_residual(state, 5e-4);
            ok = ok && std::abs(ratio - 4.0) <= 0.5;
            detail << to_string(shape) << '(' << qn.n1 << ',' << qn.n2
                   << ")=" << fmt("%.3f", ratio) << ' ';
        }
    }
    const auto cert = certify_triangle_energy({1, 2}, BoxSpec{1.0, 1.0, 1.0}, 1e-3);
    const bool single = cert.certified == cert.single;
    detail << "| triangle energy certified="
           << (single ? "pi^2(N1^2+N2^2)/(2md^2)" : "doubled")
           << fmt(" residuals single=%.2e doubled=%.2e", cert.residual_single,
                  cert.residual_doubled);
    return {ok, "ratios " + detail.str() + " tol=4+-0.5"};
}

Outcome boundary_vanishing() {
    double worst = 0.0;
    for (Shape shape : kAllShapes) {
        for (int n1 = 1; n1 <= 3; ++n1) {
            for (int n2 = 1; n2 <= 3; ++n2) {
                if (shape == Shape::Triangle && n1 == n2) {
                    continue;
                }
                worst = std::max(worst, boundary_residual(
                                            EigenState::make(shape, {n1, n2}, spec_for(shape)),
                                            100));
            }
        }
    }
    return {worst < 1e-12, fmt("max_abs=%.3e tol=1e-12", worst)};
}

Outcome normalization() {
    double worst = 0.0;
    for (double d : {0.5, 1.0, 2.7}) {
        const BoxSpec spec{1.3, 0.8, d};
        worst = std::max(worst, std::abs(normalization_constant(Shape::TwoParticleBox, spec) -
                                         2.0 / d) / (2.0 / d));
        worst = std::max(worst, std::abs(normalization_constant(Shape::Square, spec) - 1.0 / d) /
                                    (1.0 / d));
    }
    return {worst < 1e-10, fmt("max_rel_err=%.3e tol=1e-10", worst)};
}

Outcome greens_equivalence() {
    const double eps = 1e-3;
    const double rel_tol = 1e-8;
    bool ok = true;
    int strict_fail = 0;
    double worst = 0.0;
    double worst_tail = 0.0;
    std::ostringstream cuts;
    for (Shape shape : kAllShapes) {
        const BoxSpec spec = spec_for(shape);
        const Polygon poly = ShapeDomain{shape, spec}.polygon();
        const int n_cut = spectral_cutoff(shape, spec, eps, 1e-10);
        const double tail = spectral_tail_bound(shape, spec, n_cut, eps);
        worst_tail = std::max(worst_tail, tail);
        ok = ok && tail < 1e-10;
        cuts << to_string(shape) << ':' << n_cut << ' ';
        ThetaParams params;
        params.epsilon = eps;
        for (int k = 0; k < 100; ++k) {
            const Point2 p = interior_point(poly);
            const Point2 q = interior_point(poly);
            const double t = uniform(0.0, 1.0);
            const auto g = greens_theta(shape, p, q, t, spec, params);
            const auto o = greens_spectral_oracle(shape, p, q, t, spec, n_cut, eps);
            const double diff = std::abs(g - o);
            const double scale = std::max(std::abs(g), std::abs(o));
            if (diff > rel_tol * scale) {
                ++strict_fail;
            }
            // The oracle is only certified to its tail bound; relative error is
            // measured against max(|G|, tail / rel_tol).
            const double rel = diff / std::max(scale, tail / rel_tol);
            worst = std::max(worst, rel);
        }
    }
    ok = ok && worst < rel_tol;
    std::ostringstream detail;
    detail << fmt("max_rel_diff=%.3e tol=1e-8 oracle_tail<=%.2e", worst, worst_tail)
           << " n_cut " << cuts.str() << "| samples with |G| below the oracle floor failing "
           << "the unfloored ratio: " << strict_fail << "/500";
    return {ok, detail.str()};
}

Outcome square_self_check() {
    const BoxSpec spec{1.0, 1.0, 1.0};
    ThetaParams params;
    double worst = 0.0;
    for (QuantumNumbers qn : {QuantumNumbers{1, 1}, QuantumNumbers{2, 1}}) {
        const Superposition s({{1.0, EigenState::make(Shape::Square, qn, spec)}});
        const auto initial = GridState::from_superposition(s, 129, 129);
        for (double t : {0.1, 0.37, 1.3}) {
            const auto out = propagate_grid(initial, t, params);
            const auto exact = GridState::from_superposition(
                evolve_superposition(s, {t, -damping_time(spec, params.epsilon)}), 129, 129);
            for (int i = 0; i < 129; ++i) {
                for (int j = 0; j < 129; ++j) {
                    worst = std::max(worst, std::abs(out.at(i, j) - exact.at(i, j)));
                }
            }
        }
    }
    return {worst < 1e-6, fmt("max_abs_err=%.3e tol=1e-6 grid=129x129 eps=1e-3", worst)};
}

Outcome covariance_agreement() {
    double worst = 0.0;
    const BoxSpec spec{2.0, 1.0, 1.0};
    const auto example = two_mode_example_state(spec);
    for (double t : {0.0, 0.1, 0.25}) {
        worst = std::max(worst, std::abs(covariance_direct(example, t) -
                                         covariance_expanded(example, t)));
    }
    for (int k = 0; k < 5; ++k) {
        const BoxSpec s{uniform(0.5, 3.0), uniform(0.5, 3.0), uniform(0.5, 2.0)};
        QuantumNumbers a{1 + k % 3, 1 + (k + 1) % 3};
        QuantumNumbers b{1 + (k + 2) % 3, 2 + k % 2};
        if (a == b) {
            b.n2 += 1;
        }
        Superposition sup({{std::polar(uniform(0.2, 1.0), uniform(0, 2 * kPi)),
                            EigenState::make(Shape::TwoParticleBox, a, s)},
                           {std::polar(uniform(0.2, 1.0), uniform(0, 2 * kPi)),
                            EigenState::make(Shape::TwoParticleBox, b, s)}});
        sup.normalize();
        const double t = uniform(0.0, 1.0);
        worst = std::max(worst, std::abs(covariance_direct(sup, t) - covariance_expanded(sup, t)));
    }
    double symmetric = 0.0;
    const BoxSpec equal{1.5, 1.5, 1.0};
    const Superposition sym({{0.6, EigenState::make(Shape::TwoParticleBox, {1, 1}, equal)},
                             {{0.0, 0.8}, EigenState::make(Shape::TwoParticleBox, {2, 2}, equal)}});
    for (double t : {0.0, 0.2, 0.7}) {
        symmetric = std::max(symmetric, std::abs(covariance_direct(sym, t)));
        symmetric = std::max(symmetric,
                             std::abs(covariance_direct(two_mode_example_state(equal), t)));
    }
    return {worst < 1e-8 && symmetric < 1e-10,
            fmt("max|direct-expanded|=%.3e tol=1e-8 equal-mass max|cov|=%.3e tol=1e-10", worst,
                symmetric)};
}

Outcome closed_form_report() {
    const BoxSpec spec{2.0, 1.0, 1.0};
    const auto state = two_mode_example_state(spec);
    const double period = 2.0 * kPi * spec.hbar / std::abs(two_mode_energy_gap(spec));
    double self_consistency = 0.0;
    double worst_rel = 0.0;
    std::cout << "    report: t, cov_quadrature, cov_closed_form, rel_diff\n";
    for (int k = 0; k < 20; ++k) {
        const double t = period * k / 19.0;
        const double cov = covariance_direct(state, t, {64, 1e-10});
        const double doubled = covariance_direct(state, t, {128, 1e-10});
        self_consistency = std::max(self_consistency, std::abs(cov - doubled));
        const double closed = covariance_closed_form_example(spec, t);
        const double rel = std::abs(cov - closed) / std::abs(cov);
        worst_rel = std::max(worst_rel, rel);
        std::printf("    %.17g, %.17g, %.17g, %.3e\n", t, cov, closed, rel);
    }
    std::ostringstream detail;
    detail << fmt("order-doubling diff=%.3e tol=1e-8; closed form max_rel_diff=%.3e -> ",
                  self_consistency, worst_rel)
           << (worst_rel < 1e-6 ? "coefficients confirmed"
                                : "reference coefficients NOT confirmed (quadrature is ground truth)");
    return {self_consistency < 1e-8, detail.str()};
}

Outcome free_covariance_check() {
    const BoxSpec spec{2.0, 0.5, 12.0, 0.9};
    FreeInitialState init;
    init.first = {6.0, 0.5, 1.2, 0.3};
    init.second = {5.5, 0.7, -0.4, -0.8};
    const double c0 = covariance_free(init, spec, 0.0);
    const double c1 = covariance_free(init, spec, 1.0);
    const double c2 = covariance_free(init, spec, 2.0);
    const double predicted = c0 + 5.0 * (c1 - c0) + 10.0 * (c2 - 2.0 * c1 + c0);
    const double fit = std::abs(predicted - covariance_free(init, spec, 5.0));

    const ShapeDomain dom{Shape::TwoParticleBox, spec};
    const auto g = GridState::sample(dom, 401, 401, [&](Point2 p) {
        return init.amplitude(p.u, p.v, spec.hbar);
    });
    const double box = std::abs(covariance_direct(g) - c0);
    return {fit < 1e-12 && box < 1e-6,
            fmt("fit_err(t=5)=%.3e tol=1e-12 big_box_diff=%.3e tol=1e-6", fit, box)};
}

Outcome theta_series() {
    double sym = 0.0;
    for (int k = 0; k < 500; ++k) {
        const Nome q = Nome::from_log({std::log(uniform(0.0, 0.9)), uniform(-kPi, kPi)});
        const std::complex<double> z{uniform(-3, 3), uniform(-0.3, 0.3)};
        const auto a = theta3(z, q, {}).value;
        const double scale = std::max(1.0, std::abs(a));
        sym = std::max(sym, std::abs(theta3(z + kPi, q, {}).value - a) / scale);
        sym = std::max(sym, std::abs(theta3(-z, q, {}).value - a) / scale);
    }
    bool refine_ok = true;
    for (int k = 0; k < 500; ++k) {
        const Nome q = Nome::from_log({std::log(uniform(0.05, 0.9)), uniform(-kPi, kPi)});
        const double z = uniform(-3, 3);
        const int n = 1 + k % 8;
        ThetaParams coarse;
        coarse.n_max = n;
        coarse.tol = 1e-300;
        ThetaParams fine = coarse;
        fine.n_max = 2 * n;
        const auto f = theta3(z, q, fine).value;
        const double diff = std::abs(f - theta3(z, q, coarse).value);
        const double rounding =
            4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(f));
        refine_ok = refine_ok && diff <= theta3_tail_bound(q, n) + rounding;
    }
    long double direct = 1.0L;
    for (int n = 1; n <= 40; ++n) {
        direct += 2.0L * std::pow(0.5L, static_cast<long double>(n) * n);
    }
    const double ref =
        std::abs(theta3(0.0, Nome::from_value(0.5), {}).value.real() - static_cast<double>(direct));
    std::ostringstream detail;
    detail << fmt("periodicity/evenness=%.3e tol=1e-14 ", sym)
           << "refinement_within_tail(+4ulp)=" << (refine_ok ? "yes" : "no")
           << fmt(" theta3(0,0.5)_err=%.3e tol=1e-12", ref);
    return {sym < 1e-14 && refine_ok && ref < 1e-12, detail.str()};
}

Outcome revival() {
    double worst = 1.0;
    for (int trial = 0; trial < 5; ++trial) {
        const BoxSpec spec{uniform(0.5, 3.0), 1.0, uniform(0.5, 2.0), uniform(0.5, 2.0)};
        std::vector<SuperpositionTerm> terms;
        for (int n1 = 1; n1 <= 4; ++n1) {
            for (int n2 = 1; n2 <= 4; ++n2) {
                terms.push_back({std::polar(uniform(0.1, 1.0), uniform(0, 2 * kPi)),
                                 EigenState::make(Shape::Square, {n1, n2}, spec)});
            }
        }
        Superposition s(std::move(terms));
        s.normalize();
        const double t_rev = 4.0 * spec.m1 * spec.d * spec.d / (kPi * spec.hbar);
        const auto back = evolve_superposition(s, t_rev);
        std::complex<double> overlap{};
        for (std::size_t k = 0; k < s.terms().size(); ++k) {
            overlap += std::conj(s.terms()[k].coeff) * back.terms()[k].coeff;
        }
        worst = std::min(worst, std::abs(overlap));
    }
    return {worst > 1.0 - 1e-12, fmt("min_fidelity=1-%.3e tol=1-1e-12", 1.0 - worst)};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "com-roundtrip", 1.0, com_roundtrip},
        {2, "com-eigenfunction-equivalence", 1.0, com_eigenfunctions},
        {3, "pde-residual-convergence", 10.0, pde_residual},
        {4, "boundary-vanishing", 0.0, boundary_vanishing},
        {5, "normalization-constants", 0.0, normalization},
        {6, "greens-theta-vs-spectral", 60.0, greens_equivalence},
        {7, "square-propagation-self-check", 60.0, square_self_check},
        {8, "covariance-direct-vs-expanded", 0.0, covariance_agreement},
        {9, "two-mode-closed-form-report", 0.0, closed_form_report},
        {10, "free-covariance", 0.0, free_covariance_check},
        {11, "theta3-series", 0.0, theta_series},
        {12, "square-revival", 0.0, revival},
    };
    int failures = 0;
    for (const auto &c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.body();
        } catch (const std::exception &e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool pass = outcome.pass;
        std::string timing = fmt("time=%.2fs", elapsed);
        if (c.time_limit > 0.0) {
            timing += fmt(" (limit %.0fs)", c.time_limit);
            pass = pass && elapsed < c.time_limit;
        }
        failures += pass ? 0 : 1;
        std::printf("%s %2d %-32s %s %s\n", pass ? "PASS" : "FAIL", c.id, c.name,
                    outcome.detail.c_str(), timing.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
