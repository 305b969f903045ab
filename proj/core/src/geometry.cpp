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

#include "billiard/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "billiard/error.hpp"

namespace billiard {

namespace {

void require_positive(double value, const char *name) {
    if (!std::isfinite(value) || value <= 0.0) {
        throw ValidationError(std::string("BoxSpec.") + name +
                              " must be finite and > 0");
    }
}

double cross(Point2 o, Point2 a, Point2 b) noexcept {
    return (a.u - o.u) * (b.v - o.v) - (a.v - o.v) * (b.u - o.u);
}

} // namespace

void BoxSpec::validate() const {
    require_positive(m1, "m1");
    require_positive(m2, "m2");
    require_positive(d, "d");
    require_positive(hbar, "hbar");
    require_positive(a, "a");
    require_positive(b, "b");
}

ComCoords to_com(double x1, double x2, const BoxSpec &spec) {
    const double M = spec.total_mass();
    return {(spec.m1 * x1 + spec.m2 * x2) / M, x1 - x2};
}

ParticleCoords from_com(double Xc, double x, const BoxSpec &spec) {
    const double M = spec.total_mass();
    return {Xc + (spec.m2 / M) * x, Xc - (spec.m1 / M) * x};
}

Polygon::Polygon(std::vector<Point2> vertices)
    : vertices_(std::move(vertices)) {
    const std::size_t n = vertices_.size();
    if (n < 3) {
        throw ValidationError("polygon needs at least 3 vertices");
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double turn = cross(vertices_[i], vertices_[(i + 1) % n],
                                  vertices_[(i + 2) % n]);
        if (!(turn > 0.0)) {
            throw ValidationError(
                "polygon must be convex and counter-clockwise");
        }
    }
}

double Polygon::area() const noexcept {
    double twice = 0.0;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 &p = vertices_[i];
        const Point2 &q = vertices_[(i + 1) % n];
        twice += p.u * q.v - q.u * p.v;
    }
    return 0.5 * twice;
}

BoundingBox Polygon::bounding_box() const noexcept {
    BoundingBox box{vertices_.front(), vertices_.front()};
    for (const Point2 &p : vertices_) {
        box.lo.u = std::min(box.lo.u, p.u);
        box.lo.v = std::min(box.lo.v, p.v);
        box.hi.u = std::max(box.hi.u, p.u);
        box.hi.v = std::max(box.hi.v, p.v);
    }
    return box;
}

double Polygon::signed_distance(Point2 p) const noexcept {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 &a = vertices_[i];
        const Point2 &b = vertices_[(i + 1) % n];
        const double len = std::hypot(b.u - a.u, b.v - a.v);
        best = std::min(best, cross(a, b, p) / len);
    }
    return best;
}

Location Polygon::classify(Point2 p, double tol) const noexcept {
    const double dist = signed_distance(p);
    if (dist > tol) {
        return Location::Interior;
    }
    if (dist >= -tol) {
        return Location::Boundary;
    }
    return Location::Exterior;
}

ComDomain com_domain(const BoxSpec &spec, bool impenetrable) {
    spec.validate();
    const double M = spec.total_mass();
    const double d = spec.d;
    // Images of the box corners (x1,x2) = (0,0), (0,d), (d,d), (d,0); the
    // map has Jacobian -1 so this order comes out counter-clockwise.
    const Point2 origin{0.0, 0.0};
    const Point2 lower{spec.m2 * d / M, -d};
    const Point2 right{d, 0.0};
    const Point2 upper{spec.m1 * d / M, d};
    if (impenetrable) {
        return {Polygon({origin, right, upper}), true};
    }
    return {Polygon({origin, lower, right, upper}), false};
}

std::string_view to_string(Shape shape) noexcept {
    switch (shape) {
    case Shape::TwoParticleBox:
        return "two-particle";
    case Shape::Square:
        return "square";
    case Shape::Rhombus:
        return "rhombus";
    case Shape::Triangle:
        return "triangle";
    case Shape::Rectangle:
        return "rectangle";
    }
    return "unknown";
}

Shape parse_shape(std::string_view name) {
    for (Shape shape : kAllShapes) {
        if (to_string(shape) == name) {
            return shape;
        }
    }
    throw ValidationError("unknown shape '" + std::string(name) + "'");
}

Polygon ShapeDomain::polygon() const {
    spec.validate();
    const double d = spec.d;
    const double r = std::sqrt(2.0) * d;
    switch (kind) {
    case Shape::TwoParticleBox:
        return Polygon({{0.0, 0.0}, {d, 0.0}, {d, d}, {0.0, d}});
    case Shape::Square:
        return Polygon({{-d, -d}, {d, -d}, {d, d}, {-d, d}});
    case Shape::Rhombus:
        return Polygon({{r, 0.0}, {0.0, r}, {-r, 0.0}, {0.0, -r}});
    case Shape::Triangle:
        return Polygon({{0.0, -r}, {r, 0.0}, {0.0, r}});
    case Shape::Rectangle: {
        const double ha = d * std::sqrt(spec.a);
        const double hb = d * std::sqrt(spec.b);
        return Polygon({{-ha, -hb}, {ha, -hb}, {ha, hb}, {-ha, hb}});
    }
    }
    throw ValidationError("unknown shape");
}

double default_boundary_tol(const BoxSpec &spec) noexcept {
    return 1e-12 * spec.d;
}

Location contains(const ComDomain &domain, Point2 p, double tol) {
    return domain.polygon.classify(p, tol);
}

Location contains(const ShapeDomain &domain, Point2 p, double tol) {
    return domain.polygon().classify(p, tol);
}

} // namespace billiard
