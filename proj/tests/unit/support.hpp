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


#pragma once

#include <random>

#include "billiard/geometry.hpp"

namespace billiard::testing {

inline std::mt19937_64 &rng() {
    static std::mt19937_64 engine(20261015);
    return engine;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline Point2 interior_point(const Polygon &polygon, double margin = 0.0) {
    const BoundingBox box = polygon.bounding_box();
    for (;;) {
        const Point2 p{uniform(box.lo.u, box.hi.u), uniform(box.lo.v, box.hi.v)};
        if (polygon.signed_distance(p) > margin) {
            return p;
        }
    }
}

inline BoxSpec spec_for(Shape shape) {
    BoxSpec spec{2.0, 1.0, 1.0};
    if (shape == Shape::Rectangle) {
        spec.a = 1.5;
        spec.b = 0.7;
    }
    return spec;
}

} // namespace billiard::testing
