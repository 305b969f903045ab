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
 * Gauss-Legendre rules and 2D integration over convex polygons. Polygons
 * are fanned into triangles and each triangle is pulled back to the unit
 * square with the collapsed (Duffy) map, so smooth integrands converge
 * spectrally without clipping.
 */

#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include "billiard/geometry.hpp"

namespace billiard {

/// Nodes and weights on [0, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }
};

/// Cached rule of the given order (order >= 1).
[[nodiscard]] std::shared_ptr<const GaussLegendreRule>
gauss_legendre(int order);

template <class F>
auto integrate_interval(double lo, double hi, F &&f,
                        const GaussLegendreRule &rule) {
    const double len = hi - lo;
    decltype(f(lo)) sum{};
    for (std::size_t i = 0; i < rule.size(); ++i) {
        sum += rule.weights[i] * f(lo + len * rule.nodes[i]);
    }
    return sum * len;
}

template <class F>
auto integrate_triangle(Point2 a, Point2 b, Point2 c, F &&f,
                        const GaussLegendreRule &rule) {
    const double jac = std::abs((b.u - a.u) * (c.v - a.v) -
                                (b.v - a.v) * (c.u - a.u));
    decltype(f(a)) sum{};
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double s = rule.nodes[i];
        decltype(f(a)) inner{};
        for (std::size_t j = 0; j < rule.size(); ++j) {
            const double t = rule.nodes[j];
            const Point2 p{a.u + s * (b.u - a.u) + s * t * (c.u - b.u),
                           a.v + s * (b.v - a.v) + s * t * (c.v - b.v)};
            inner += rule.weights[j] * f(p);
        }
        sum += (rule.weights[i] * s) * inner;
    }
    return sum * jac;
}

template <class F>
auto integrate_polygon(const Polygon &poly, F &&f,
                       const GaussLegendreRule &rule) {
    const auto v = poly.vertices();
    decltype(f(v[0])) sum{};
    for (std::size_t k = 1; k + 1 < v.size(); ++k) {
        sum += integrate_triangle(v[0], v[k], v[k + 1], f, rule);
    }
    return sum;
}

/// Tensor-product rule on an axis-aligned rectangle.
template <class F>
auto integrate_box(BoundingBox box, F &&f, const GaussLegendreRule &rule) {
    const double lu = box.hi.u - box.lo.u;
    const double lv = box.hi.v - box.lo.v;
    decltype(f(box.lo)) sum{};
    for (std::size_t i = 0; i < rule.size(); ++i) {
        decltype(f(box.lo)) inner{};
        const double u = box.lo.u + lu * rule.nodes[i];
        for (std::size_t j = 0; j < rule.size(); ++j) {
            inner += rule.weights[j] * f(Point2{u, box.lo.v + lv * rule.nodes[j]});
        }
        sum += rule.weights[i] * inner;
    }
    return sum * (lu * lv);
}

} // namespace billiard
