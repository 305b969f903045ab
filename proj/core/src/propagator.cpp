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

#include "billiard/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "billiard/error.hpp"

namespace billiard {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

// One Dirichlet sine family sin(pi N x / ell) with its own nome.
struct AxisFactor {
    double ell = 1.0;
    double mass = 1.0;
    Nome q;
};

// G = prefactor * [F1(a, a') F2(b, b') - (antisymmetric) F1(a, a'_R) F2(b, b'_R)]
// where F(x, x') = theta3(pi (x - x')/(2 ell)) - theta3(pi (x + x')/(2 ell)).
struct KernelSpec {
    Shape shape = Shape::Square;
    double prefactor = 0.0;
    AxisFactor first;
    AxisFactor second;
    bool rotated = false;
    bool antisymmetric = false;
};

struct AxisCoords {
    double a;
    double b;
};

AxisCoords axis_coords(const KernelSpec &k, Point2 p) noexcept {
    if (k.rotated) {
        return {p.u + p.v, p.u - p.v};
    }
    return {p.u, p.v};
}

// Coordinates of the mirror image (x1, x2) -> (-x1, x2), in the rotated axes.
AxisCoords reflected_axis_coords(const KernelSpec &k, Point2 p) noexcept {
    return axis_coords(k, Point2{-p.u, p.v});
}

std::pair<double, double> axis_masses(Shape shape, const BoxSpec &spec) {
    switch (shape) {
    case Shape::TwoParticleBox:
        return {spec.m1, spec.m2};
    case Shape::Rectangle:
        return {spec.m1 * spec.a, spec.m1 * spec.b};
    default:
        return {spec.m1, spec.m1};
    }
}

std::pair<double, double> axis_lengths(Shape shape, const BoxSpec &spec) {
    switch (shape) {
    case Shape::TwoParticleBox:
    case Shape::Square:
        return {spec.d, spec.d};
    case Shape::Rectangle:
        return {spec.d * std::sqrt(spec.a), spec.d * std::sqrt(spec.b)};
    case Shape::Rhombus:
    case Shape::Triangle:
        return {kSqrt2 * spec.d, kSqrt2 * spec.d};
    }
    return {spec.d, spec.d};
}

KernelSpec make_kernel(Shape shape, const BoxSpec &spec, double t,
                       double epsilon) {
    spec.validate();
    if (!(epsilon >= 0.0)) {
        throw ValidationError("damping epsilon must be >= 0");
    }
    KernelSpec k;
    k.shape = shape;
    k.rotated = shape == Shape::Rhombus || shape == Shape::Triangle;
    k.antisymmetric = shape == Shape::Triangle;
    const double norm = normalization_constant(shape, spec);
    // Each 1D sine sum is a quarter of a theta3 difference.
    k.prefactor = norm * norm / 16.0;

    const auto [mass1, mass2] = axis_masses(shape, spec);
    const auto [ell1, ell2] = axis_lengths(shape, spec);
    // Same complex-time shift on both axes: epsilon scales with m1 / mass.
    k.first = {ell1, mass1,
               nome_from_time(t, mass1, spec.d, spec, 1,
                              epsilon * spec.m1 / mass1)};
    k.second = {ell2, mass2,
                nome_from_time(t, mass2, spec.d, spec, 1,
                               epsilon * spec.m1 / mass2)};
    return k;
}

std::complex<double> axis_factor(const AxisFactor &f, double x, double xp,
                                 const ThetaParams &params) {
    const double s = kPi / (2.0 * f.ell);
    return theta3(s * (x - xp), f.q, params).value -
           theta3(s * (x + xp), f.q, params).value;
}

// F[i][j] = F(xs[i], ys[j]) for one axis factor, using batched theta3.
std::vector<std::complex<double>> factor_table(const AxisFactor &f,
                                               std::span<const double> xs,
                                               std::span<const double> ys,
                                               const ThetaParams &params) {
    const double s = kPi / (2.0 * f.ell);
    const std::size_t nx = xs.size();
    const std::size_t ny = ys.size();
    std::vector<double> args(2 * nx * ny);
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t j = 0; j < ny; ++j) {
            args[2 * (i * ny + j)] = s * (xs[i] - ys[j]);
            args[2 * (i * ny + j) + 1] = s * (xs[i] + ys[j]);
        }
    }
    const auto theta = theta3_batch(args, f.q, params);
    std::vector<std::complex<double>> table(nx * ny);
    for (std::size_t k = 0; k < table.size(); ++k) {
        table[k] = theta[2 * k] - theta[2 * k + 1];
    }
    return table;
}

// Sorted representatives of `values` merged within tol, plus a lookup.
class CoordinateSet {
  public:
    CoordinateSet(std::vector<double> values, double tol) : tol_(tol) {
        std::sort(values.begin(), values.end());
        for (double v : values) {
            if (reps_.empty() || v - reps_.back() > tol_) {
                reps_.push_back(v);
            }
        }
    }
    [[nodiscard]] std::span<const double> values() const noexcept {
        return reps_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return reps_.size(); }
    [[nodiscard]] std::size_t index_of(double v) const noexcept {
        auto it = std::lower_bound(reps_.begin(), reps_.end(), v - tol_);
        return static_cast<std::size_t>(it - reps_.begin());
    }

  private:
    double tol_;
    std::vector<double> reps_;
};

void propagate_separable(const KernelSpec &k, const GridState &in,
                         GridState &out, const ThetaParams &params) {
    const int nx = in.nx();
    const int ny = in.ny();
    std::vector<double> xs(static_cast<std::size_t>(nx));
    std::vector<double> ys(static_cast<std::size_t>(ny));
    for (int i = 0; i < nx; ++i) {
        xs[static_cast<std::size_t>(i)] = in.node(i, 0).u;
    }
    for (int j = 0; j < ny; ++j) {
        ys[static_cast<std::size_t>(j)] = in.node(0, j).v;
    }
    const auto f1 = factor_table(k.first, xs, xs, params);
    const auto f2 = factor_table(k.second, ys, ys, params);

    // partial[k][j] = sum_l F2[j][l] w(k,l) psi(k,l)
    std::vector<std::complex<double>> partial(
        static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
    for (int kk = 0; kk < nx; ++kk) {
        for (int j = 0; j < ny; ++j) {
            std::complex<double> sum{};
            for (int l = 0; l < ny; ++l) {
                const std::complex<double> src = in.at(kk, l);
                if (src != std::complex<double>{}) {
                    sum += f2[static_cast<std::size_t>(j) * ny + l] *
                           (in.weight(kk, l) * src);
                }
            }
            partial[in.index(kk, j)] = sum;
        }
    }
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            if (!out.inside(i, j)) {
                continue;
            }
            std::complex<double> sum{};
            for (int kk = 0; kk < nx; ++kk) {
                sum += f1[static_cast<std::size_t>(i) * nx + kk] *
                       partial[in.index(kk, j)];
            }
            out.set(i, j, k.prefactor * sum);
        }
    }
}

struct NodeRef {
    int i;
    int j;
    std::size_t a;
    std::size_t b;
    std::size_t a_reflected;
    std::size_t b_reflected;
};

// Returns false if the lattice has too many distinct rotated coordinates.
bool propagate_rotated(const KernelSpec &k, const GridState &in,
                       GridState &out, const ThetaParams &params) {
    std::vector<double> coords;
    for (int i = 0; i < in.nx(); ++i) {
        for (int j = 0; j < in.ny(); ++j) {
            if (!in.inside(i, j)) {
                continue;
            }
            const AxisCoords c = axis_coords(k, in.node(i, j));
            coords.push_back(c.a);
            coords.push_back(c.b);
            if (k.antisymmetric) {
                const AxisCoords r = reflected_axis_coords(k, in.node(i, j));
                coords.push_back(r.a);
                coords.push_back(r.b);
            }
        }
    }
    const CoordinateSet set(std::move(coords), 1e-12 * in.domain().spec.d);
    const std::size_t limit =
        8 * static_cast<std::size_t>(in.nx() + in.ny()) + 16;
    if (set.size() > limit) {
        return false;
    }
    // Rotated shapes use one sine family on both axes.
    const auto table = factor_table(k.first, set.values(), set.values(), params);
    const std::size_t K = set.size();

    std::vector<NodeRef> nodes;
    for (int i = 0; i < in.nx(); ++i) {
        for (int j = 0; j < in.ny(); ++j) {
            if (!in.inside(i, j)) {
                continue;
            }
            const AxisCoords c = axis_coords(k, in.node(i, j));
            const AxisCoords r = reflected_axis_coords(k, in.node(i, j));
            nodes.push_back({i, j, set.index_of(c.a), set.index_of(c.b),
                             set.index_of(r.a), set.index_of(r.b)});
        }
    }
    std::vector<std::complex<double>> src(nodes.size());
    for (std::size_t n = 0; n < nodes.size(); ++n) {
        src[n] = in.weight(nodes[n].i, nodes[n].j) * in.at(nodes[n].i, nodes[n].j);
    }
    for (const NodeRef &target : nodes) {
        const std::complex<double> *row_a = &table[target.a * K];
        const std::complex<double> *row_b = &table[target.b * K];
        std::complex<double> sum{};
        for (std::size_t n = 0; n < nodes.size(); ++n) {
            if (src[n] == std::complex<double>{}) {
                continue;
            }
            std::complex<double> g = row_a[nodes[n].a] * row_b[nodes[n].b];
            if (k.antisymmetric) {
                g -= row_a[nodes[n].a_reflected] * row_b[nodes[n].b_reflected];
            }
            sum += g * src[n];
        }
        out.set(target.i, target.j, k.prefactor * sum);
    }
    return true;
}

void check_propagation_inputs(const GridState &initial, double t) {
    if (initial.t() != 0.0) {
        throw ValidationError("propagate_grid expects an initial state at t = 0");
    }
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw ValidationError("propagate_grid needs finite t >= 0");
    }
}

} // namespace

double damping_time(const BoxSpec &spec, double epsilon) {
    return 2.0 * spec.m1 * spec.d * spec.d * epsilon / (kPi * spec.hbar);
}

std::complex<double> greens_theta(Shape shape, Point2 p, Point2 p_prime,
                                  double t, const BoxSpec &spec,
                                  const ThetaParams &params) {
    params.validate();
    const KernelSpec k = make_kernel(shape, spec, t, params.epsilon);
    const AxisCoords c = axis_coords(k, p);
    const AxisCoords cp = axis_coords(k, p_prime);
    std::complex<double> g = axis_factor(k.first, c.a, cp.a, params) *
                             axis_factor(k.second, c.b, cp.b, params);
    if (k.antisymmetric) {
        const AxisCoords r = reflected_axis_coords(k, p_prime);
        g -= axis_factor(k.first, c.a, r.a, params) *
             axis_factor(k.second, c.b, r.b, params);
    }
    return k.prefactor * g;
}

std::complex<double> greens_spectral_oracle(Shape shape, Point2 p,
                                            Point2 p_prime, double t,
                                            const BoxSpec &spec, int n_cut,
                                            double epsilon) {
    if (n_cut < 1) {
        throw ValidationError("spectral oracle needs n_cut >= 1");
    }
    if (!(epsilon >= 0.0)) {
        throw ValidationError("damping epsilon must be >= 0");
    }
    spec.validate();
    const double s = damping_time(spec, epsilon);
    const double norm = normalization_constant(shape, spec);
    std::complex<double> sum{};
    for (int n1 = 1; n1 <= n_cut; ++n1) {
        for (int n2 = 1; n2 <= n_cut; ++n2) {
            if (shape == Shape::Triangle && n1 >= n2) {
                continue;
            }
            const QuantumNumbers qn{n1, n2};
            const double e = energy(shape, qn, spec);
            const double amp = basis_value(shape, qn, spec, p) *
                               basis_value(shape, qn, spec, p_prime);
            sum += amp * std::exp(std::complex<double>{-e * s / spec.hbar,
                                                       -e * t / spec.hbar});
        }
    }
    return norm * norm * sum;
}

double spectral_tail_bound(Shape shape, const BoxSpec &spec, int n_cut,
                           double epsilon) {
    if (!(epsilon > 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    const auto [mass1, mass2] = axis_masses(shape, spec);
    auto sums = [&](double mass) {
        const double x = std::exp(-kPi * epsilon * spec.m1 / mass);
        const double n = n_cut;
        const double tail = std::pow(x, (n + 1) * (n + 1)) /
                            -std::expm1((2 * n + 3) * std::log(x));
        double head = 0.0;
        for (int k = 1; k <= n_cut; ++k) {
            head += std::pow(x, static_cast<double>(k) * k);
        }
        return std::pair{head + tail, tail};
    };
    const auto [s1, t1] = sums(mass1);
    const auto [s2, t2] = sums(mass2);
    const double norm = normalization_constant(shape, spec);
    // |basis| <= 1 for sine products, <= 2 for the antisymmetrized triangle.
    const double amp = shape == Shape::Triangle ? 4.0 : 1.0;
    return norm * norm * amp * (t1 * s2 + s1 * t2);
}

int spectral_cutoff(Shape shape, const BoxSpec &spec, double epsilon,
                    double bound) {
    if (!(epsilon > 0.0) || !(bound > 0.0)) {
        throw ValidationError("spectral_cutoff needs epsilon > 0, bound > 0");
    }
    for (int n = 1; n <= 100000; ++n) {
        if (spectral_tail_bound(shape, spec, n, epsilon) < bound) {
            return n;
        }
    }
    throw ValidationError("spectral_cutoff: bound unreachable below 1e5 modes");
}

GridState propagate_grid(const GridState &initial, double t,
                         const ThetaParams &params, PropagateOptions options) {
    params.validate();
    check_propagation_inputs(initial, t);
    const ShapeDomain &dom = initial.domain();
    const KernelSpec k = make_kernel(dom.kind, dom.spec, t, params.epsilon);

    GridState out(dom, initial.nx(), initial.ny());
    out.set_time(t);
    if (!k.rotated) {
        propagate_separable(k, initial, out, params);
    } else if (!propagate_rotated(k, initial, out, params)) {
        out = propagate_grid_pointwise(initial, t, params);
    }
    if (options.normalize) {
        const double n2 = out.norm_squared();
        if (n2 > 0.0) {
            out.scale(1.0 / std::sqrt(n2));
        }
    }
    return out;
}

GridState propagate_grid_pointwise(const GridState &initial, double t,
                                   const ThetaParams &params) {
    params.validate();
    check_propagation_inputs(initial, t);
    const ShapeDomain &dom = initial.domain();
    GridState out(dom, initial.nx(), initial.ny());
    out.set_time(t);
    for (int i = 0; i < out.nx(); ++i) {
        for (int j = 0; j < out.ny(); ++j) {
            if (!out.inside(i, j)) {
                continue;
            }
            std::complex<double> sum{};
            for (int k = 0; k < initial.nx(); ++k) {
                for (int l = 0; l < initial.ny(); ++l) {
                    const std::complex<double> src = initial.at(k, l);
                    if (src == std::complex<double>{}) {
                        continue;
                    }
                    sum += initial.weight(k, l) * src *
                           greens_theta(dom.kind, out.node(i, j),
                                        initial.node(k, l), t, dom.spec,
                                        params);
                }
            }
            out.set(i, j, sum);
        }
    }
    return out;
}

Superposition evolve_superposition(const Superposition &s, double t) {
    return evolve_superposition(s, std::complex<double>{t, 0.0});
}

Superposition evolve_superposition(const Superposition &s,
                                   std::complex<double> t) {
    std::vector<SuperpositionTerm> terms = s.terms();
    for (auto &term : terms) {
        const double e = term.state.energy();
        const double hbar = term.state.spec().hbar;
        // exp(-i E t / hbar) for complex t
        term.coeff *= std::exp(std::complex<double>{0.0, -e / hbar} * t);
    }
    return Superposition(std::move(terms));
}

} // namespace billiard
