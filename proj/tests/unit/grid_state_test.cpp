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
#include <sstream>
#include <string>

#include "billiard/error.hpp"
#include "billiard/grid_state.hpp"

using namespace billiard;

namespace {

const BoxSpec kUnit{1.0, 1.0, 1.0};

} // namespace

TEST_CASE("lattice layout") {
    const GridState g(ShapeDomain{Shape::Square, kUnit}, 5, 9);
    CHECK(g.nx() == 5);
    CHECK(g.ny() == 9);
    CHECK(g.hx() == doctest::Approx(0.5));
    CHECK(g.hy() == doctest::Approx(0.25));
    CHECK(g.node(0, 0) == Point2{-1.0, -1.0});
    CHECK(g.node(4, 8) == Point2{1.0, 1.0});
    CHECK(g.index(1, 2) == 11);
    CHECK_FALSE(g.inside(0, 3));
    CHECK(g.inside(2, 4));

    const auto tri = GridState::uniform(ShapeDomain{Shape::Triangle, kUnit}, 64);
    CHECK(tri.ny() % 2 == 1);
    CHECK(tri.nx() == (tri.ny() + 1) / 2);
    CHECK(tri.hx() == doctest::Approx(tri.hy()));
}

TEST_CASE("values are zero outside the shape") {
    auto g = GridState::sample(ShapeDomain{Shape::Rhombus, kUnit}, 21, 21,
                               [](Point2) { return std::complex<double>(1.0, 1.0); });
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.ny(); ++j) {
            if (!g.inside(i, j)) {
                CHECK(g.at(i, j) == std::complex<double>{});
            }
        }
    }
    g.set(0, 0, 5.0);
    CHECK(g.at(0, 0) == std::complex<double>{});
}

TEST_CASE("eigenstate samples are normalized") {
    for (Shape shape : {Shape::TwoParticleBox, Shape::Square, Shape::Rhombus, Shape::Triangle}) {
        const QuantumNumbers qn = shape == Shape::Triangle ? QuantumNumbers{1, 2}
                                                           : QuantumNumbers{2, 1};
        const Superposition s({{1.0, EigenState::make(shape, qn, kUnit)}});
        const auto lattice = GridState::uniform(ShapeDomain{shape, kUnit}, 129);
        const auto g = GridState::from_superposition(s, lattice.nx(), lattice.ny());
        CHECK(g.norm_squared() == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("inner products") {
    const auto a = EigenState::make(Shape::Square, {1, 1}, kUnit);
    const auto b = EigenState::make(Shape::Square, {1, 2}, kUnit);
    const auto ga = GridState::from_superposition(Superposition({{1.0, a}}), 65, 65);
    auto gb = GridState::from_superposition(Superposition({{1.0, b}}), 65, 65);
    CHECK(std::abs(ga.inner(gb)) < 1e-12);
    gb.scale({0.0, 2.0});
    CHECK(std::abs(gb.norm_squared() - 4.0) < 1e-10);
    const GridState other(ShapeDomain{Shape::Square, kUnit}, 33, 33);
    CHECK_THROWS_AS((void)ga.inner(other), ValidationError);
}

TEST_CASE("csv roundtrip is exact") {
    const ShapeDomain dom{Shape::Triangle, kUnit};
    const auto lattice = GridState::uniform(dom, 17);
    const auto g = GridState::sample(dom, lattice.nx(), lattice.ny(), [](Point2 p) {
        return std::complex<double>(std::sin(p.u) / 3.0, std::exp(p.v) * 1e-7);
    });
    std::ostringstream out;
    write_csv(g, out, "config_hash=abc");
    const std::string text = out.str();
    CHECK(text.rfind("x1,x2,re,im\n", 0) == 0);
    CHECK(text.find("\n# config_hash=abc\n") != std::string::npos);

    std::istringstream in(text);
    const auto back = read_csv(in, dom);
    REQUIRE(back.nx() == g.nx());
    REQUIRE(back.ny() == g.ny());
    for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.ny(); ++j) {
            REQUIRE(back.at(i, j) == g.at(i, j));
        }
    }
}

TEST_CASE("csv errors") {
    const ShapeDomain dom{Shape::Square, kUnit};
    std::istringstream bad_header("a,b,c,d\n");
    CHECK_THROWS_AS((void)read_csv(bad_header, dom), ParseError);
    std::istringstream bad_row("x1,x2,re,im\n-1,-1,0,zz\n");
    CHECK_THROWS_AS((void)read_csv(bad_row, dom), ParseError);
    std::istringstream off_lattice("x1,x2,re,im\n-1,-1,0,0\n-1,0.3,0,0\n");
    CHECK_THROWS_AS((void)read_csv(off_lattice, dom), ParseError);
}
