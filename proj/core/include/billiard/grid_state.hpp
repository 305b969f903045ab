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
 * Complex wavefunction samples on the bounding-box lattice of a shape.
 * Nodes that are not strictly inside the shape always hold zero.
 */

#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "billiard/eigenstates.hpp"
#include "billiard/geometry.hpp"

namespace billiard {

class GridState {
  public:
    using Sampler = std::function<std::complex<double>(Point2)>;

    /// All-zero lattice with nx x ny nodes spanning the bounding box.
    GridState(ShapeDomain domain, int nx, int ny);

    /// Lattice with equal spacing along both axes for the rotated shapes
    /// (the triangle gets nx = (n + 1) / 2 with n forced odd).
    static GridState uniform(ShapeDomain domain, int n);

    static GridState sample(ShapeDomain domain, int nx, int ny,
                            const Sampler &f);
    static GridState from_superposition(const Superposition &s, int nx,
                                        int ny);

    [[nodiscard]] const ShapeDomain &domain() const noexcept { return domain_; }
    [[nodiscard]] int nx() const noexcept { return nx_; }
    [[nodiscard]] int ny() const noexcept { return ny_; }
    [[nodiscard]] double hx() const noexcept { return hx_; }
    [[nodiscard]] double hy() const noexcept { return hy_; }
    [[nodiscard]] double t() const noexcept { return t_; }
    void set_time(double t) noexcept { t_ = t; }

    [[nodiscard]] std::size_t index(int i, int j) const noexcept {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(ny_) +
               static_cast<std::size_t>(j);
    }
    [[nodiscard]] Point2 node(int i, int j) const noexcept;
    [[nodiscard]] bool inside(int i, int j) const noexcept {
        return mask_[index(i, j)] != 0;
    }
    /// Trapezoidal weight of node (i, j) on the bounding box.
    [[nodiscard]] double weight(int i, int j) const noexcept;

    [[nodiscard]] std::complex<double> at(int i, int j) const noexcept {
        return values_[index(i, j)];
    }
    /// Writes are ignored at nodes outside the shape.
    void set(int i, int j, std::complex<double> value) noexcept;

    [[nodiscard]] std::span<const std::complex<double>> values() const noexcept {
        return values_;
    }

    [[nodiscard]] double norm_squared() const noexcept;
    /// <this|other> by trapezoidal quadrature; lattices must match.
    [[nodiscard]] std::complex<double> inner(const GridState &other) const;
    void scale(std::complex<double> factor) noexcept;

  private:
    ShapeDomain domain_;
    int nx_;
    int ny_;
    BoundingBox box_;
    double hx_;
    double hy_;
    double t_ = 0.0;
    std::vector<unsigned char> mask_;
    std::vector<std::complex<double>> values_;
};

/// CSV with header `x1,x2,re,im`, row-major (x1 outer), 17 significant
/// digits. A non-empty `trailer` is appended as a `# ...` comment line.
void write_csv(const GridState &grid, std::ostream &out,
               const std::string &trailer = {});

/// Reads write_csv output back onto the lattice of `domain`. Comment lines
/// are skipped.
[[nodiscard]] GridState read_csv(std::istream &in, const ShapeDomain &domain);

} // namespace billiard
