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


#include "billiard_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include "billiard/error.hpp"

namespace billiard::cli {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    for (;;) {
        const auto next = s.find(sep, pos);
        out.push_back(trim(s.substr(pos, next - pos)));
        if (next == std::string_view::npos) {
            return out;
        }
        pos = next + 1;
    }
}

struct Entry {
    std::string key;
    std::string value;
    int line;
};

[[noreturn]] void bad_value(const Entry &e, const std::string &expected) {
    throw ParseError("key '" + e.key + "': expected " + expected + ", got '" +
                         e.value + "'",
                     e.line, e.key);
}

double to_double(const Entry &e, std::string_view text) {
    double v = 0.0;
    const auto *end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (text.empty() || res.ec != std::errc{} || res.ptr != end ||
        !std::isfinite(v)) {
        bad_value(e, "a finite number");
    }
    return v;
}

template <class Int> Int to_int(const Entry &e, std::string_view text) {
    Int v = 0;
    const auto *end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, v);
    if (text.empty() || res.ec != std::errc{} || res.ptr != end) {
        bad_value(e, "an integer");
    }
    return v;
}

bool to_bool(const Entry &e) {
    if (e.value == "true") {
        return true;
    }
    if (e.value == "false") {
        return false;
    }
    bad_value(e, "true or false");
}

std::vector<QuantumNumbers> to_qn_list(const Entry &e) {
    std::vector<QuantumNumbers> out;
    for (auto item : split(e.value, ';')) {
        const auto parts = split(item, ',');
        if (parts.size() != 2) {
            bad_value(e, "'N1,N2' pairs separated by ';'");
        }
        out.push_back({to_int<int>(e, parts[0]), to_int<int>(e, parts[1])});
    }
    return out;
}

std::vector<std::complex<double>> to_coeff_list(const Entry &e) {
    std::vector<std::complex<double>> out;
    for (auto item : split(e.value, ';')) {
        const auto parts = split(item, ',');
        if (parts.size() == 1) {
            out.emplace_back(to_double(e, parts[0]), 0.0);
        } else if (parts.size() == 2) {
            out.emplace_back(to_double(e, parts[0]), to_double(e, parts[1]));
        } else {
            bad_value(e, "'re' or 're,im' items separated by ';'");
        }
    }
    return out;
}

using Setter = std::function<void(RunConfig &, const Entry &)>;

const std::map<std::string, Setter, std::less<>> &setters() {
    auto spec_num = [](double BoxSpec::*field) -> Setter {
        return [field](RunConfig &c, const Entry &e) {
            c.spec.*field = to_double(e, e.value);
        };
    };
    auto packet = [](GaussianPacket FreeInitialState::*which,
                     double GaussianPacket::*field) -> Setter {
        return [which, field](RunConfig &c, const Entry &e) {
            (c.free.*which).*field = to_double(e, e.value);
        };
    };
    static const std::map<std::string, Setter, std::less<>> table = {
        {"scenario",
         [](RunConfig &c, const Entry &e) {
             try {
                 c.scenario = parse_scenario(e.value);
             } catch (const ValidationError &) {
                 bad_value(e, "a scenario name");
             }
             c.scenario_set = true;
         }},
        {"shape",
         [](RunConfig &c, const Entry &e) {
             try {
                 c.shape = parse_shape(e.value);
             } catch (const ValidationError &) {
                 bad_value(e, "a shape name");
             }
         }},
        {"box.m1", spec_num(&BoxSpec::m1)},
        {"box.m2", spec_num(&BoxSpec::m2)},
        {"box.d", spec_num(&BoxSpec::d)},
        {"box.hbar", spec_num(&BoxSpec::hbar)},
        {"box.a", spec_num(&BoxSpec::a)},
        {"box.b", spec_num(&BoxSpec::b)},
        {"state.qn",
         [](RunConfig &c, const Entry &e) { c.qn = to_qn_list(e); }},
        {"state.coeffs",
         [](RunConfig &c, const Entry &e) { c.coeffs = to_coeff_list(e); }},
        {"time.start",
         [](RunConfig &c, const Entry &e) {
             c.time.start = to_double(e, e.value);
         }},
        {"time.end",
         [](RunConfig &c, const Entry &e) {
             c.time.end = to_double(e, e.value);
         }},
        {"time.steps",
         [](RunConfig &c, const Entry &e) {
             c.time.steps = to_int<int>(e, e.value);
         }},
        {"theta.n_max",
         [](RunConfig &c, const Entry &e) {
             c.theta.n_max = to_int<int>(e, e.value);
         }},
        {"theta.tol",
         [](RunConfig &c, const Entry &e) {
             c.theta.tol = to_double(e, e.value);
         }},
        {"theta.epsilon",
         [](RunConfig &c, const Entry &e) {
             c.theta.epsilon = to_double(e, e.value);
         }},
        {"quad.order",
         [](RunConfig &c, const Entry &e) {
             c.quad.order = to_int<int>(e, e.value);
         }},
        {"quad.tol",
         [](RunConfig &c, const Entry &e) {
             c.quad.tol = to_double(e, e.value);
         }},
        {"grid.n",
         [](RunConfig &c, const Entry &e) {
             c.grid_n = to_int<int>(e, e.value);
         }},
        {"domain.kind",
         [](RunConfig &c, const Entry &e) {
             if (e.value == "com") {
                 c.domain_kind = DomainKind::Com;
             } else if (e.value == "shape") {
                 c.domain_kind = DomainKind::Shape;
             } else {
                 bad_value(e, "com or shape");
             }
         }},
        {"domain.impenetrable",
         [](RunConfig &c, const Entry &e) { c.impenetrable = to_bool(e); }},
        {"greens.samples",
         [](RunConfig &c, const Entry &e) {
             c.greens.samples = to_int<int>(e, e.value);
         }},
        {"greens.seed",
         [](RunConfig &c, const Entry &e) {
             c.greens.seed = to_int<std::uint64_t>(e, e.value);
         }},
        {"greens.tail_bound",
         [](RunConfig &c, const Entry &e) {
             c.greens.tail_bound = to_double(e, e.value);
         }},
        {"greens.rel_tol",
         [](RunConfig &c, const Entry &e) {
             c.greens.rel_tol = to_double(e, e.value);
         }},
        {"covariance.model",
         [](RunConfig &c, const Entry &e) {
             if (e.value == "bounded") {
                 c.covariance_model = CovarianceModel::Bounded;
             } else if (e.value == "free") {
                 c.covariance_model = CovarianceModel::Free;
             } else {
                 bad_value(e, "bounded or free");
             }
         }},
        {"free.center1",
         packet(&FreeInitialState::first, &GaussianPacket::center)},
        {"free.width1", packet(&FreeInitialState::first, &GaussianPacket::width)},
        {"free.momentum1",
         packet(&FreeInitialState::first, &GaussianPacket::momentum)},
        {"free.chirp1", packet(&FreeInitialState::first, &GaussianPacket::chirp)},
        {"free.center2",
         packet(&FreeInitialState::second, &GaussianPacket::center)},
        {"free.width2",
         packet(&FreeInitialState::second, &GaussianPacket::width)},
        {"free.momentum2",
         packet(&FreeInitialState::second, &GaussianPacket::momentum)},
        {"free.chirp2",
         packet(&FreeInitialState::second, &GaussianPacket::chirp)},
        {"output.path",
         [](RunConfig &c, const Entry &e) {
             if (e.value.empty()) {
                 bad_value(e, "a directory path");
             }
             c.output_path = e.value;
         }},
    };
    return table;
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

std::string_view to_string(Scenario s) noexcept {
    switch (s) {
    case Scenario::Eigen:
        return "eigen";
    case Scenario::Evolve:
        return "evolve";
    case Scenario::Covariance:
        return "covariance";
    case Scenario::GreensCheck:
        return "greens-check";
    case Scenario::Domain:
        return "domain";
    }
    return "unknown";
}

Scenario parse_scenario(std::string_view name) {
    for (Scenario s : {Scenario::Eigen, Scenario::Evolve, Scenario::Covariance,
                       Scenario::GreensCheck, Scenario::Domain}) {
        if (to_string(s) == name) {
            return s;
        }
    }
    throw ValidationError("unknown scenario '" + std::string(name) + "'");
}

std::vector<double> TimeGrid::points() const {
    if (steps == 1) {
        return {start};
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) {
        out.push_back(start + (end - start) * k / (steps - 1));
    }
    out.back() = end;
    return out;
}

void RunConfig::validate() const {
    spec.validate();
    theta.validate();
    if (qn.empty()) {
        throw ValidationError("state.qn must list at least one state");
    }
    for (const auto &n : qn) {
        validate_quantum_numbers(shape, n);
    }
    if (coeffs.size() != qn.size()) {
        throw ValidationError("state.coeffs must have one entry per state.qn");
    }
    double norm2 = 0.0;
    for (const auto &c : coeffs) {
        norm2 += std::norm(c);
    }
    if (!(norm2 > 0.0)) {
        throw ValidationError("state.coeffs must not all be zero");
    }
    if (std::abs(norm2 - 1.0) > 1e-12) {
        throw ValidationError("state.coeffs must be normalized");
    }
    if (time.steps < 1) {
        throw ValidationError("time.steps must be >= 1");
    }
    if (time.end < time.start) {
        throw ValidationError("time grid must be monotone: time.end < time.start");
    }
    if (time.steps == 1 && time.end != time.start) {
        throw ValidationError("time.steps must be >= 2 when time.end > time.start");
    }
    if (quad.order < 2) {
        throw ValidationError("quad.order must be >= 2");
    }
    if (!(quad.tol > 0.0)) {
        throw ValidationError("quad.tol must be > 0");
    }
    if (grid_n < 3) {
        throw ValidationError("grid.n must be >= 3");
    }
    if (greens.samples < 1) {
        throw ValidationError("greens.samples must be >= 1");
    }
    if (!(greens.tail_bound > 0.0) || !(greens.rel_tol > 0.0)) {
        throw ValidationError("greens tolerances must be > 0");
    }
    free.validate();
    if (scenario == Scenario::Covariance &&
        covariance_model == CovarianceModel::Bounded &&
        shape != Shape::TwoParticleBox) {
        throw ValidationError(
            "covariance with model=bounded requires shape=two-particle");
    }
}

Superposition RunConfig::superposition() const {
    std::vector<SuperpositionTerm> terms;
    for (std::size_t k = 0; k < qn.size(); ++k) {
        terms.push_back(
            {coeffs[k], EigenState::make(shape, qn[k], spec, quad.order)});
    }
    return Superposition(std::move(terms));
}

RunConfig parse_config(std::string_view text) {
    std::vector<Entry> entries;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto next = text.find('\n', pos);
        std::string_view line = text.substr(pos, next - pos);
        ++line_no;
        pos = next == std::string_view::npos ? text.size() + 1 : next + 1;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("expected 'key = value'", line_no,
                             std::string(line));
        }
        Entry e{std::string(trim(line.substr(0, eq))),
                std::string(trim(line.substr(eq + 1))), line_no};
        if (e.key.empty()) {
            throw ParseError("empty key", line_no, "");
        }
        for (const auto &prev : entries) {
            if (prev.key == e.key) {
                throw ParseError("duplicate key '" + e.key + "'", line_no,
                                 e.key);
            }
        }
        entries.push_back(std::move(e));
    }

    RunConfig config;
    bool coeffs_given = false;
    bool qn_given = false;
    for (const auto &e : entries) {
        const auto it = setters().find(e.key);
        if (it == setters().end()) {
            throw ParseError("unknown key '" + e.key + "'", e.line, e.key);
        }
        it->second(config, e);
        coeffs_given = coeffs_given || e.key == "state.coeffs";
        qn_given = qn_given || e.key == "state.qn";
    }
    if (!qn_given && config.shape == Shape::Triangle) {
        config.qn = {{1, 2}};
    }
    if (!coeffs_given) {
        config.coeffs.assign(config.qn.size(), 1.0);
    }
    double norm2 = 0.0;
    for (const auto &c : config.coeffs) {
        norm2 += std::norm(c);
    }
    if (norm2 > 0.0) {
        for (auto &c : config.coeffs) {
            c /= std::sqrt(norm2);
        }
    }

    std::vector<std::string> canonical;
    for (const auto &e : entries) {
        canonical.push_back(e.key + "=" + e.value);
    }
    std::sort(canonical.begin(), canonical.end());
    std::string joined;
    for (const auto &c : canonical) {
        joined += c;
        joined += '\n';
    }
    config.hash = fnv1a(joined);

    config.validate();
    return config;
}

std::string hash_hex(std::uint64_t hash) {
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << hash;
    return out.str();
}

} // namespace billiard::cli
