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

#include "billiard/grid_state.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "billiard/error.hpp"

namespace billiard {

GridState::GridState(ShapeDomain domain, int nx, int ny)
    : domain_(domain), nx_(nx), ny_(ny) {
    if (nx < 3 || ny < 3) {
        throw ValidationError("GridState needs at least 3 nodes per axis");
    }
    const Polygon poly = domain_.polygon();
    box_ = poly.bounding_box();
    hx_ = (box_.hi.u - box_.lo.u) / (nx_ - 1);
    hy_ = (box_.hi.v - box_.lo.v) / (ny_ - 1);
    const std::size_t count =
        static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_);
    mask_.assign(count, 0);
    values_.assign(count, {});
    const double tol = default_boundary_tol(domain_.spec);
    for (int i = 0; i < nx_; ++i) {
        for (int j = 0; j < ny_; ++j) {
            mask_[index(i, j)] =
                poly.classify(node(i, j), tol) == Location::Interior ? 1 : 0;
        }
    }
}

GridState GridState::uniform(ShapeDomain domain, int n) {
    if (domain.kind == Shape::Triangle) {
        const int ny = n % 2 == 1 ? n : n + 1;
        return GridState(domain, (ny + 1) / 2, ny);
    }
    return GridState(domain, n, n);
}

Point2 GridState::node(int i, int j) const noexcept {
    // Pin the last node to the box edge so the lattice is exact at both ends.
    const double u = i == nx_ - 1 ? box_.hi.u : box_.lo.u + i * hx_;
    const double v = j == ny_ - 1 ? box_.hi.v : box_.lo.v + j * hy_;
    return {u, v};
}

double GridState::weight(int i, int j) const noexcept {
    const double wx = (i == 0 || i == nx_ - 1) ? 0.5 * hx_ : hx_;
    const double wy = (j == 0 || j == ny_ - 1) ? 0.5 * hy_ : hy_;
    return wx * wy;
}

void GridState::set(int i, int j, std::complex<double> value) noexcept {
    if (inside(i, j)) {
        values_[index(i, j)] = value;
    }
}

GridState GridState::sample(ShapeDomain domain, int nx, int ny,
                            const Sampler &f) {
    GridState grid(domain, nx, ny);
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            if (grid.inside(i, j)) {
                grid.values_[grid.index(i, j)] = f(grid.node(i, j));
            }
        }
    }
    return grid;
}

GridState GridState::from_superposition(const Superposition &s, int nx,
                                        int ny) {
    return sample(ShapeDomain{s.shape(), s.spec()}, nx, ny,
                  [&s](Point2 p) { return s(p); });
}

double GridState::norm_squared() const noexcept {
    double sum = 0.0;
    for (int i = 0; i < nx_; ++i) {
        for (int j = 0; j < ny_; ++j) {
            sum += weight(i, j) * std::norm(values_[index(i, j)]);
        }
    }
    return sum;
}

std::complex<double> GridState::inner(const GridState &other) const {
    if (other.nx_ != nx_ || other.ny_ != ny_ ||
        other.domain_.kind != domain_.kind ||
        !(other.domain_.spec == domain_.spec)) {
        throw ValidationError("GridState::inner needs identical lattices");
    }
    std::complex<double> sum{};
    for (int i = 0; i < nx_; ++i) {
        for (int j = 0; j < ny_; ++j) {
            sum += weight(i, j) * std::conj(values_[index(i, j)]) *
                   other.values_[index(i, j)];
        }
    }
    return sum;
}

void GridState::scale(std::complex<double> factor) noexcept {
    for (auto &v : values_) {
        v *= factor;
    }
}

void write_csv(const GridState &grid, std::ostream &out,
               const std::string &trailer) {
    const auto old_precision = out.precision();
    out << "x1,x2,re,im\n" << std::setprecision(17);
    for (int i = 0; i < grid.nx(); ++i) {
        for (int j = 0; j < grid.ny(); ++j) {
            const Point2 p = grid.node(i, j);
            const std::complex<double> v = grid.at(i, j);
            out << p.u << ',' << p.v << ',' << v.real() << ',' << v.imag()
                << '\n';
        }
    }
    if (!trailer.empty()) {
        out << "# " << trailer << '\n';
    }
    out.precision(old_precision);
}

GridState read_csv(std::istream &in, const ShapeDomain &domain) {
    std::string line;
    int line_no = 0;
    bool header = false;
    std::vector<Point2> points;
    std::vector<std::complex<double>> values;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (!header) {
            if (line != "x1,x2,re,im") {
                throw ParseError("grid CSV header must be x1,x2,re,im",
                                 line_no, "header");
            }
            header = true;
            continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double x1 = 0, x2 = 0, re = 0, im = 0;
        if (!(row >> x1 >> x2 >> re >> im)) {
            throw ParseError("malformed grid CSV row", line_no, "row");
        }
        points.push_back({x1, x2});
        values.emplace_back(re, im);
    }
    if (points.empty()) {
        throw ParseError("grid CSV has no rows", line_no, "row");
    }
    // Row-major with x1 outer: ny is the length of the first run of equal x1.
    std::size_t ny = 1;
    while (ny < points.size() && points[ny].u == points[0].u) {
        ++ny;
    }
    if (points.size() % ny != 0) {
        throw ParseError("grid CSV is not a full lattice", line_no, "row");
    }
    const int nx = static_cast<int>(points.size() / ny);
    if (nx < 3 || ny < 3) {
        throw ParseError("grid CSV needs at least 3 nodes per axis", line_no,
                         "row");
    }
    GridState grid(domain, nx, static_cast<int>(ny));
    const double tol = 1e-9 * domain.spec.d;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < static_cast<int>(ny); ++j) {
            const std::size_t k = grid.index(i, j);
            const Point2 expect = grid.node(i, j);
            if (std::abs(points[k].u - expect.u) > tol ||
                std::abs(points[k].v - expect.v) > tol) {
                throw ParseError("grid CSV node does not match the domain "
                                 "lattice",
                                 static_cast<int>(k) + 2, "x1,x2");
            }
            grid.set(i, j, values[k]);
        }
    }
    return grid;
}

} // namespace billiard
