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

#include "billiard/eigenstates.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <tuple>

#include "billiard/error.hpp"
#include "billiard/quadrature.hpp"

namespace billiard {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

double rhombus_basis(QuantumNumbers qn, double d, double x1, double x2) {
    const double k1 = kPi * qn.n1 / (kSqrt2 * d);
    const double k2 = kPi * qn.n2 / (kSqrt2 * d);
    return std::sin(k1 * (x1 + x2)) * std::sin(k2 * (x1 - x2));
}

// Coefficients (c1, c2) of H = -hbar^2/2 (c1 d1^2 + c2 d2^2).
std::pair<double, double> kinetic_coefficients(Shape shape,
                                               const BoxSpec &spec) {
    if (shape == Shape::TwoParticleBox) {
        return {1.0 / spec.m1, 1.0 / spec.m2};
    }
    return {1.0 / spec.m1, 1.0 / spec.m1};
}

using NormKey = std::tuple<int, double, double, double, double, double,
                           double, int, int, int>;

double integrate_basis_squared(Shape shape, const BoxSpec &spec,
                               QuantumNumbers qn, int order) {
    const Polygon poly = ShapeDomain{shape, spec}.polygon();
    const auto rule = gauss_legendre(order);
    auto density = [&](Point2 p) {
        const double f = basis_value(shape, qn, spec, p);
        return f * f;
    };
    if (shape == Shape::TwoParticleBox || shape == Shape::Square ||
        shape == Shape::Rectangle) {
        return integrate_box(poly.bounding_box(), density, *rule);
    }
    return integrate_polygon(poly, density, *rule);
}

} // namespace

void validate_quantum_numbers(Shape shape, QuantumNumbers qn) {
    if (qn.n1 < 1 || qn.n2 < 1) {
        throw ValidationError("quantum numbers must satisfy N1 >= 1, N2 >= 1");
    }
    if (shape == Shape::Triangle && qn.n1 == qn.n2) {
        throw ValidationError(
            "triangle eigenstates with N1 == N2 vanish identically");
    }
}

double energy(Shape shape, QuantumNumbers qn, const BoxSpec &spec) {
    validate_quantum_numbers(shape, qn);
    spec.validate();
    const double n1 = qn.n1;
    const double n2 = qn.n2;
    const double scale =
        spec.hbar * spec.hbar * kPi * kPi / (2.0 * spec.d * spec.d);
    switch (shape) {
    case Shape::TwoParticleBox:
        return scale * (n1 * n1 / spec.m1 + n2 * n2 / spec.m2);
    case Shape::Square:
    case Shape::Rhombus:
    case Shape::Triangle:
        // The triangle shares the rhombus eigenvalue; see
        // certify_triangle_energy.
        return scale * (n1 * n1 + n2 * n2) / spec.m1;
    case Shape::Rectangle:
        return scale * (n1 * n1 / spec.a + n2 * n2 / spec.b) / spec.m1;
    }
    throw ValidationError("unknown shape");
}

double basis_value(Shape shape, QuantumNumbers qn, const BoxSpec &spec,
                   Point2 p) noexcept {
    const double d = spec.d;
    switch (shape) {
    case Shape::TwoParticleBox:
    case Shape::Square:
        return std::sin(kPi * qn.n1 * p.u / d) * std::sin(kPi * qn.n2 * p.v / d);
    case Shape::Rectangle:
        return std::sin(kPi * qn.n1 * p.u / (d * std::sqrt(spec.a))) *
               std::sin(kPi * qn.n2 * p.v / (d * std::sqrt(spec.b)));
    case Shape::Rhombus:
        return rhombus_basis(qn, d, p.u, p.v);
    case Shape::Triangle:
        return rhombus_basis(qn, d, p.u, p.v) - rhombus_basis(qn, d, -p.u, p.v);
    }
    return 0.0;
}

double normalization_constant(Shape shape, const BoxSpec &spec,
                              QuantumNumbers qn, int order) {
    validate_quantum_numbers(shape, qn);
    spec.validate();

    static std::mutex mutex;
    static std::map<NormKey, double> cache;
    const NormKey key{static_cast<int>(shape), spec.m1, spec.m2, spec.d,
                      spec.hbar, spec.a, spec.b, qn.n1, qn.n2, order};
    {
        const std::lock_guard lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) {
            return it->second;
        }
    }

    const double full = integrate_basis_squared(shape, spec, qn, order);
    const double half =
        integrate_basis_squared(shape, spec, qn, std::max(1, order / 2));
    const double estimate = std::abs(full - half) / full;
    if (!(estimate <= 1e-10)) {
        std::ostringstream msg;
        msg << "normalization quadrature for " << to_string(shape) << " ("
            << qn.n1 << "," << qn.n2 << ") did not converge at order "
            << order << "; relative estimate " << estimate;
        throw QuadratureError(msg.str(), estimate);
    }
    const double value = 1.0 / std::sqrt(full);

    const std::lock_guard lock(mutex);
    cache.emplace(key, value);
    return value;
}

double normalization_constant(Shape shape, const BoxSpec &spec, int order) {
    const QuantumNumbers lowest =
        shape == Shape::Triangle ? QuantumNumbers{1, 2} : QuantumNumbers{1, 1};
    return normalization_constant(shape, spec, lowest, order);
}

EigenState::EigenState(Shape shape, QuantumNumbers qn, const BoxSpec &spec,
                       double norm)
    : shape_(shape), qn_(qn), spec_(spec), norm_(norm),
      energy_(billiard::energy(shape, qn, spec)),
      polygon_(ShapeDomain{shape, spec}.polygon()) {}

EigenState EigenState::make(Shape shape, QuantumNumbers qn,
                            const BoxSpec &spec, int quad_order) {
    validate_quantum_numbers(shape, qn);
    spec.validate();
    return EigenState(shape, qn, spec,
                      normalization_constant(shape, spec, qn, quad_order));
}

double EigenState::raw(Point2 p) const noexcept {
    return norm_ * basis_value(shape_, qn_, spec_, p);
}

double EigenState::operator()(Point2 p) const noexcept {
    if (polygon_.classify(p, default_boundary_tol(spec_)) ==
        Location::Exterior) {
        return 0.0;
    }
    return raw(p);
}

double eval_eigenfunction(const EigenState &state, Point2 p) {
    return state(p);
}

double eval_com_eigen(QuantumNumbers qn, const BoxSpec &spec, double Xc,
                      double x) {
    validate_quantum_numbers(Shape::TwoParticleBox, qn);
    const double M = spec.total_mass();
    const double norm = normalization_constant(Shape::TwoParticleBox, spec, qn);
    const double k1 = kPi * qn.n1 / spec.d;
    const double k2 = kPi * qn.n2 / spec.d;
    return norm * std::sin(k1 * (Xc + (spec.m2 / M) * x)) *
           std::sin(k2 * (Xc - (spec.m1 / M) * x));
}

double boundary_residual(const EigenState &state, int n_samples) {
    if (n_samples < 10) {
        throw ValidationError("boundary_residual needs n_samples >= 10");
    }
    const auto v = state.polygon().vertices();
    double worst = 0.0;
    for (std::size_t e = 0; e < v.size(); ++e) {
        const Point2 a = v[e];
        const Point2 b = v[(e + 1) % v.size()];
        for (int k = 0; k < n_samples; ++k) {
            const double s = static_cast<double>(k) / (n_samples - 1);
            const Point2 p{a.u + s * (b.u - a.u), a.v + s * (b.v - a.v)};
            worst = std::max(worst, std::abs(state.raw(p)));
        }
    }
    return worst;
}

double hamiltonian_residual(const EigenState &state, double h) {
    return hamiltonian_residual(state, h, state.energy());
}

double hamiltonian_residual(const EigenState &state, double h,
                            double trial_energy) {
    const BoxSpec &spec = state.spec();
    if (!(h > 0.0) || !(h < spec.d / 100.0)) {
        throw ValidationError("hamiltonian_residual needs 0 < h < d/100");
    }
    const auto [c1, c2] = kinetic_coefficients(state.shape(), spec);
    const double pref = -0.5 * spec.hbar * spec.hbar;
    const Polygon &poly = state.polygon();
    const BoundingBox box = poly.bounding_box();

    // Fixed 32x32 probe lattice; keep points whose stencil is strictly inside.
    constexpr int kProbe = 32;
    double res2 = 0.0;
    double ref2 = 0.0;
    for (int i = 0; i < kProbe; ++i) {
        for (int j = 0; j < kProbe; ++j) {
            const Point2 p{box.lo.u + (i + 0.5) * (box.hi.u - box.lo.u) / kProbe,
                           box.lo.v + (j + 0.5) * (box.hi.v - box.lo.v) / kProbe};
            if (poly.signed_distance(p) <= 2.0 * h) {
                continue;
            }
            const double f0 = state.raw(p);
            const double d1 = (state.raw({p.u + h, p.v}) - 2.0 * f0 +
                               state.raw({p.u - h, p.v})) /
                              (h * h);
            const double d2 = (state.raw({p.u, p.v + h}) - 2.0 * f0 +
                               state.raw({p.u, p.v - h})) /
                              (h * h);
            const double hpsi = pref * (c1 * d1 + c2 * d2);
            const double epsi = trial_energy * f0;
            res2 += (hpsi - epsi) * (hpsi - epsi);
            ref2 += epsi * epsi;
        }
    }
    if (!(ref2 > 0.0)) {
        throw ValidationError("hamiltonian_residual found no interior samples");
    }
    return std::sqrt(res2 / ref2);
}

TriangleEnergyCertificate certify_triangle_energy(QuantumNumbers qn,
                                                  const BoxSpec &spec,
                                                  double h) {
    const EigenState state = EigenState::make(Shape::Triangle, qn, spec);
    TriangleEnergyCertificate cert;
    cert.single = spec.hbar * spec.hbar * kPi * kPi *
                  (qn.n1 * qn.n1 + qn.n2 * qn.n2) /
                  (2.0 * spec.m1 * spec.d * spec.d);
    cert.doubled = 2.0 * cert.single;
    cert.residual_single = hamiltonian_residual(state, h, cert.single);
    cert.residual_doubled = hamiltonian_residual(state, h, cert.doubled);
    cert.certified = cert.residual_single <= cert.residual_doubled
                         ? cert.single
                         : cert.doubled;
    return cert;
}

Superposition::Superposition(std::vector<SuperpositionTerm> terms)
    : terms_(std::move(terms)) {
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const EigenState &s = terms_[i].state;
        if (s.shape() != terms_.front().state.shape() ||
            !(s.spec() == terms_.front().state.spec())) {
            throw ValidationError(
                "superposition terms must share shape and BoxSpec");
        }
        for (std::size_t j = 0; j < i; ++j) {
            const QuantumNumbers a = s.qn();
            const QuantumNumbers b = terms_[j].state.qn();
            const bool same =
                a == b || (s.shape() == Shape::Triangle && a.n1 == b.n2 &&
                           a.n2 == b.n1);
            if (same) {
                throw ValidationError("superposition repeats a state");
            }
        }
    }
}

Shape Superposition::shape() const {
    if (terms_.empty()) {
        throw ValidationError("empty superposition has no shape");
    }
    return terms_.front().state.shape();
}

const BoxSpec &Superposition::spec() const {
    if (terms_.empty()) {
        throw ValidationError("empty superposition has no BoxSpec");
    }
    return terms_.front().state.spec();
}

double Superposition::norm_squared() const noexcept {
    double sum = 0.0;
    for (const auto &term : terms_) {
        sum += std::norm(term.coeff);
    }
    return sum;
}

Superposition &Superposition::normalize() {
    const double n2 = norm_squared();
    if (!(n2 > 0.0)) {
        throw ValidationError("cannot normalize a zero superposition");
    }
    const double scale = 1.0 / std::sqrt(n2);
    for (auto &term : terms_) {
        term.coeff *= scale;
    }
    return *this;
}

std::complex<double> Superposition::operator()(Point2 p) const noexcept {
    std::complex<double> sum{};
    for (const auto &term : terms_) {
        sum += term.coeff * term.state(p);
    }
    return sum;
}

} // namespace billiard
