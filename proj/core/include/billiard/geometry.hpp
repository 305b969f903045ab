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
 * Particle / center-of-mass coordinate transforms and the convex polygons
 * on which every wavefunction in the library is supported.
 */

#pragma once

#include <array>
#include <span>
#include <string_view>
#include <vector>

namespace billiard {

/**
 * Physical setup shared by all calculations.
 *
 * m1 and m2 are the two particle masses; the single-particle billiards use
 * m1 as the particle mass. a and b are the rectangle scale parameters and
 * are ignored by every other shape.
 */
struct BoxSpec {
    double m1 = 1.0;
    double m2 = 1.0;
    double d = 1.0;
    double hbar = 1.0;
    double a = 1.0;
    double b = 1.0;

    [[nodiscard]] double total_mass() const noexcept { return m1 + m2; }
    [[nodiscard]] double reduced_mass() const noexcept {
        return m1 * m2 / (m1 + m2);
    }
    /// Throws ValidationError unless every field is finite and positive.
    void validate() const;

    friend bool operator==(const BoxSpec &, const BoxSpec &) = default;
};

struct Point2 {
    double u = 0.0;
    double v = 0.0;

    friend bool operator==(const Point2 &, const Point2 &) = default;
};

struct ComCoords {
    double Xc = 0.0;
    double x = 0.0;
};

struct ParticleCoords {
    double x1 = 0.0;
    double x2 = 0.0;
};

[[nodiscard]] ComCoords to_com(double x1, double x2, const BoxSpec &spec);
[[nodiscard]] ParticleCoords from_com(double Xc, double x,
                                      const BoxSpec &spec);

enum class Location { Interior, Boundary, Exterior };

struct BoundingBox {
    Point2 lo;
    Point2 hi;
};

/// Convex, positively oriented polygon stored by its vertices.
class Polygon {
  public:
    Polygon() = default;
    /// Throws ValidationError for fewer than 3 vertices, a non-convex
    /// vertex list or clockwise orientation.
    explicit Polygon(std::vector<Point2> vertices);

    [[nodiscard]] std::span<const Point2> vertices() const noexcept {
        return vertices_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return vertices_.size(); }
    [[nodiscard]] double area() const noexcept;
    [[nodiscard]] BoundingBox bounding_box() const noexcept;

    /// Minimum signed distance to the edge lines; positive inside.
    [[nodiscard]] double signed_distance(Point2 p) const noexcept;
    [[nodiscard]] Location classify(Point2 p, double tol) const noexcept;

  private:
    std::vector<Point2> vertices_;
};

/// Allowed (Xc, x) region of the two-particle box, with or without the
/// x > 0 impenetrability cut.
struct ComDomain {
    Polygon polygon;
    bool impenetrable = false;
};

[[nodiscard]] ComDomain com_domain(const BoxSpec &spec, bool impenetrable);

enum class Shape { TwoParticleBox, Square, Rhombus, Triangle, Rectangle };

inline constexpr std::array<Shape, 5> kAllShapes = {
    Shape::TwoParticleBox, Shape::Square, Shape::Rhombus, Shape::Triangle,
    Shape::Rectangle};

[[nodiscard]] std::string_view to_string(Shape shape) noexcept;
/// Accepts "two-particle", "square", "rhombus", "triangle", "rectangle".
[[nodiscard]] Shape parse_shape(std::string_view name);

/**
 * A billiard region in the plane of the shape's own coordinates:
 *   TwoParticleBox  [0,d]^2 in (x1, x2)
 *   Square          [-d,d]^2
 *   Rhombus         |x1+x2| <= sqrt2 d, |x1-x2| <= sqrt2 d
 *   Triangle        rhombus with x1 >= 0
 *   Rectangle       |y1| <= d sqrt(a), |y2| <= d sqrt(b)
 */
struct ShapeDomain {
    Shape kind = Shape::Square;
    BoxSpec spec;

    [[nodiscard]] Polygon polygon() const;
};

[[nodiscard]] double default_boundary_tol(const BoxSpec &spec) noexcept;

[[nodiscard]] Location contains(const ComDomain &domain, Point2 p, double tol);
[[nodiscard]] Location contains(const ShapeDomain &domain, Point2 p,
                                double tol);

} // namespace billiard
