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

#include "billiard/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <map>
#include <mutex>

#include "billiard/error.hpp"

namespace billiard {

std::shared_ptr<const GaussLegendreRule> gauss_legendre(int order) {
    if (order < 1) {
        throw ValidationError("Gauss-Legendre order must be >= 1");
    }
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const GaussLegendreRule>> cache;

    const std::lock_guard lock(mutex);
    if (auto it = cache.find(order); it != cache.end()) {
        return it->second;
    }

    gsl_integration_glfixed_table *table =
        gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(order));
    if (table == nullptr) {
        throw ValidationError("failed to allocate Gauss-Legendre table");
    }
    auto rule = std::make_shared<GaussLegendreRule>();
    rule->nodes.resize(static_cast<std::size_t>(order));
    rule->weights.resize(static_cast<std::size_t>(order));
    for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
        gsl_integration_glfixed_point(0.0, 1.0, i, &rule->nodes[i],
                                      &rule->weights[i], table);
    }
    gsl_integration_glfixed_table_free(table);

    cache.emplace(order, rule);
    return rule;
}

} // namespace billiard
