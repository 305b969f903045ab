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

#include "billiard/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <vector>

#include "billiard/error.hpp"

namespace billiard {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kUnitSlack = 1e-15;
// exp(700) is close to the double range; beyond it a term cannot be formed.
constexpr double kLogOverflow = 700.0;

/// Neumaier-compensated accumulator for one real component.
class CompensatedSum {
  public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double log_cosh(double z) noexcept {
    const double a = std::abs(z);
    return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

// Majorant sum_{k >= n+1} 2 |q|^{k^2} e^{2 k y}; infinite if not geometric.
double tail_majorant(double log_mod, double y, int n) noexcept {
    const double k = n + 1.0;
    const double log_ratio = (2.0 * n + 3.0) * log_mod + 2.0 * y;
    if (!(log_ratio < 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    const double log_first = std::numbers::ln2 + k * k * log_mod + 2.0 * k * y;
    return std::exp(log_first) / -std::expm1(log_ratio);
}

} // namespace

void ThetaParams::validate() const {
    if (n_max < 1) {
        throw ValidationError("ThetaParams.n_max must be >= 1");
    }
    if (!(tol > 0.0)) {
        throw ValidationError("ThetaParams.tol must be > 0");
    }
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw ValidationError("ThetaParams.epsilon must be finite and >= 0");
    }
}

Nome Nome::from_value(std::complex<double> q) {
    if (q == std::complex<double>{}) {
        return Nome{};
    }
    return from_log(std::log(q));
}

Nome Nome::from_log(std::complex<double> log_q) {
    Nome nome;
    nome.zero_ = false;
    nome.log_q_ = {log_q.real(), std::remainder(log_q.imag(), 2.0 * kPi)};
    return nome;
}

std::complex<double> Nome::value() const noexcept {
    return zero_ ? std::complex<double>{} : std::exp(log_q_);
}

double Nome::modulus() const noexcept {
    return zero_ ? 0.0 : std::exp(log_q_.real());
}

std::complex<double> Nome::power(double k) const noexcept {
    if (zero_) {
        return k == 0.0 ? 1.0 : 0.0;
    }
    return std::exp(k * log_q_);
}

ThetaValue theta3(std::complex<double> zeta, const Nome &q,
                  const ThetaParams &params) {
    params.validate();
    if (q.is_zero()) {
        return {1.0, 0.0, 0, true};
    }
    const double log_mod = q.log().real();
    if (log_mod > kUnitSlack) {
        throw ValidationError("theta3 requires |q| <= 1");
    }
    const bool unit = log_mod >= -kUnitSlack;
    if (unit && !params.allow_unit_modulus) {
        throw ValidationError(
            "theta3 with |q| == 1 requires allow_unit_modulus (undamped)");
    }

    const double y = std::abs(zeta.imag());
    const std::complex<double> two_i_zeta = 2.0 * std::complex<double>{0, 1} * zeta;

    CompensatedSum re;
    CompensatedSum im;
    re.add(1.0);
    double previous_major = std::numeric_limits<double>::infinity();
    double major = std::numeric_limits<double>::infinity();
    int n = 1;
    bool reached = false;
    for (; n <= params.n_max; ++n) {
        previous_major = major;
        const double nn = static_cast<double>(n) * n;
        const double log_major =
            std::numbers::ln2 + nn * log_mod + log_cosh(2.0 * n * y);
        if (log_major > kLogOverflow) {
            throw OverflowError("theta3 term overflows: Im(zeta) too large "
                                "for the nome modulus");
        }
        major = std::exp(log_major);
        // 2 cos(2 n zeta) q^{n^2} = q^{n^2} (e^{2inz} + e^{-2inz})
        const std::complex<double> base = nn * q.log();
        const std::complex<double> term =
            std::exp(base + static_cast<double>(n) * two_i_zeta) +
            std::exp(base - static_cast<double>(n) * two_i_zeta);
        if (!std::isfinite(term.real()) || !std::isfinite(term.imag())) {
            throw OverflowError("theta3 term is not finite");
        }
        re.add(term.real());
        im.add(term.imag());
        if (major < params.tol) {
            reached = true;
            break;
        }
    }
    const int used = reached ? n : params.n_max;

    if (!reached) {
        if (unit) {
            std::ostringstream msg;
            msg << "theta3 did not converge on |q| = 1 within n_max = "
                << params.n_max << " (last term majorant " << major << ")";
            throw NonConvergentError(msg.str(), major);
        }
        if (major > previous_major) {
            throw OverflowError("theta3 terms still growing at n_max: "
                                "Im(zeta) dominates the nome decay");
        }
    }

    ThetaValue out;
    out.value = {re.value(), im.value()};
    out.terms = used;
    out.reached_tol = reached;
    out.tail_bound = unit ? std::numeric_limits<double>::infinity()
                          : tail_majorant(log_mod, y, used);
    return out;
}

std::vector<std::complex<double>>
theta3_batch(std::span<const double> args, const Nome &q,
             const ThetaParams &params, double merge_tol) {
    std::vector<std::size_t> order(args.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return args[a] < args[b]; });
    std::vector<std::complex<double>> out(args.size());
    std::size_t k = 0;
    while (k < order.size()) {
        const double anchor = args[order[k]];
        const std::complex<double> value = theta3(anchor, q, params).value;
        while (k < order.size() && args[order[k]] - anchor <= merge_tol) {
            out[order[k]] = value;
            ++k;
        }
    }
    return out;
}

double theta3_tail_bound(const Nome &q, int n) {
    if (q.is_zero()) {
        return 0.0;
    }
    if (!(q.log().real() < 0.0)) {
        throw ValidationError("theta3_tail_bound requires |q| < 1");
    }
    if (n < 0) {
        throw ValidationError("theta3_tail_bound requires n >= 0");
    }
    return tail_majorant(q.log().real(), 0.0, n);
}

Nome nome_from_time(double t, double mass, double d, const BoxSpec &spec,
                    int factor, double epsilon) {
    if (factor != 1 && factor != 2) {
        throw ValidationError("nome factor must be 1 or 2");
    }
    if (!(epsilon >= 0.0)) {
        throw ValidationError("nome damping epsilon must be >= 0");
    }
    if (!(mass > 0.0) || !(d > 0.0) || !(spec.hbar > 0.0)) {
        throw ValidationError("nome_from_time needs positive mass, d, hbar");
    }
    const double tau_re = -kPi * spec.hbar * t / (2.0 * mass * d * d);
    // i pi f (tau_re + i eps)
    return Nome::from_log({-kPi * factor * epsilon, kPi * factor * tau_re});
}

std::complex<double>
richardson_to_zero(std::span<const double> eps,
                   std::span<const std::complex<double>> values) {
    if (eps.size() != values.size() || eps.empty()) {
        throw ValidationError(
            "richardson_to_zero needs matching, non-empty inputs");
    }
    std::vector<std::complex<double>> p(values.begin(), values.end());
    const std::size_t n = p.size();
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = 0; i + level < n; ++i) {
            const double xi = eps[i];
            const double xj = eps[i + level];
            if (xi == xj) {
                throw ValidationError("richardson_to_zero needs distinct eps");
            }
            p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
        }
    }
    return p.front();
}

} // namespace billiard
