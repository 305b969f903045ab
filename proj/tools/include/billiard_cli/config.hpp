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
 * Run configuration for the billiard-prop tool. The document is flat
 * `key = value` text with dotted keys; `#` starts a comment. Unknown or
 * repeated keys are errors.
 */

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "billiard/eigenstates.hpp"
#include "billiard/geometry.hpp"
#include "billiard/observables.hpp"
#include "billiard/theta.hpp"

namespace billiard::cli {

enum class Scenario { Eigen, Evolve, Covariance, GreensCheck, Domain };

[[nodiscard]] std::string_view to_string(Scenario s) noexcept;
/// Throws ValidationError for unknown names.
[[nodiscard]] Scenario parse_scenario(std::string_view name);

enum class CovarianceModel { Bounded, Free };
enum class DomainKind { Com, Shape };

struct TimeGrid {
    double start = 0.0;
    double end = 0.0;
    int steps = 1;

    /// `steps` equally spaced times from start to end inclusive.
    [[nodiscard]] std::vector<double> points() const;
};

struct GreensCheckConfig {
    int samples = 100;
    std::uint64_t seed = 1;
    double tail_bound = 1e-10;
    double rel_tol = 1e-8;
};

struct RunConfig {
    Scenario scenario = Scenario::Eigen;
    bool scenario_set = false;
    Shape shape = Shape::Square;
    BoxSpec spec{1.0, 1.0, 1.0};
    /// Defaults to (1,1), or (1,2) for the triangle.
    std::vector<QuantumNumbers> qn{{1, 1}};
    /// Normalized to unit sum of squared moduli.
    std::vector<std::complex<double>> coeffs{1.0};
    TimeGrid time;
    ThetaParams theta;
    QuadConfig quad;
    int grid_n = 129;
    DomainKind domain_kind = DomainKind::Com;
    bool impenetrable = false;
    GreensCheckConfig greens;
    CovarianceModel covariance_model = CovarianceModel::Bounded;
    FreeInitialState free;
    std::string output_path = ".";
    /// FNV-1a hash of the canonical key/value list.
    std::uint64_t hash = 0;

    /// Throws ValidationError naming the violated invariant.
    void validate() const;
    [[nodiscard]] Superposition superposition() const;
};

/// Throws ParseError (with line and key) or ValidationError.
[[nodiscard]] RunConfig parse_config(std::string_view text);

[[nodiscard]] std::string hash_hex(std::uint64_t hash);

} // namespace billiard::cli
