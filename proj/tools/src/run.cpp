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


#include "billiard_cli/run.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "billiard/observables.hpp"
#include "billiard/propagator.hpp"

namespace billiard::cli {

namespace {

namespace fs = std::filesystem;

class Output {
  public:
    Output(fs::path dir, std::ostream *log) : dir_(std::move(dir)), log_(log) {}

    std::ofstream open(const std::string &name) {
        const fs::path path = dir_ / name;
        std::ofstream out(path);
        if (!out) {
            throw IoError("cannot open '" + path.string() + "' for writing");
        }
        out << std::setprecision(17);
        files_.push_back(path);
        if (log_ != nullptr) {
            *log_ << "writing " << path.string() << '\n';
        }
        return out;
    }

    void close(std::ofstream &out) {
        out.close();
        if (!out) {
            throw IoError("write failed for '" + files_.back().string() + "'");
        }
    }

    [[nodiscard]] const std::vector<fs::path> &files() const { return files_; }

  private:
    fs::path dir_;
    std::ostream *log_;
    std::vector<fs::path> files_;
};

std::string trailer(const RunConfig &c, const std::string &extra) {
    std::ostringstream out;
    out << std::setprecision(17) << "config_hash=" << hash_hex(c.hash)
        << " scenario=" << to_string(c.scenario);
    if (!extra.empty()) {
        out << ' ' << extra;
    }
    return out.str();
}

void run_eigen(const RunConfig &c, Output &out) {
    auto energies = out.open("energies.csv");
    energies << "n1,n2,energy,norm,boundary_residual,pde_residual\n";
    const ShapeDomain domain{c.shape, c.spec};
    const double h = c.spec.d / 256.0;
    double worst_boundary = 0.0;
    for (const auto &qn : c.qn) {
        const auto state = EigenState::make(c.shape, qn, c.spec, c.quad.order);
        const double boundary = boundary_residual(state, 100);
        const double pde = hamiltonian_residual(state, h);
        worst_boundary = std::max(worst_boundary, boundary);
        energies << qn.n1 << ',' << qn.n2 << ',' << state.energy() << ','
                 << state.norm() << ',' << boundary << ',' << pde << '\n';

        const auto lattice = GridState::uniform(domain, c.grid_n);
        const auto grid = GridState::sample(
            domain, lattice.nx(), lattice.ny(),
            [&state](Point2 p) { return std::complex<double>(state(p)); });
        std::ostringstream extra;
        extra << std::setprecision(17) << "energy=" << state.energy()
              << " grid_norm_squared=" << grid.norm_squared();
        auto dump = out.open("eigen_" + std::to_string(qn.n1) + "_" +
                             std::to_string(qn.n2) + ".csv");
        write_csv(grid, dump, trailer(c, extra.str()));
        out.close(dump);
    }
    std::ostringstream extra;
    extra << std::setprecision(17) << "quad_order=" << c.quad.order
          << " fd_step=" << h << " max_boundary_residual=" << worst_boundary;
    energies << "# " << trailer(c, extra.str()) << '\n';
    out.close(energies);
}

void run_evolve(const RunConfig &c, Output &out, std::ostream *log) {
    const Superposition state = c.superposition();
    const ShapeDomain domain{c.shape, c.spec};
    const auto lattice = GridState::uniform(domain, c.grid_n);
    const GridState initial =
        GridState::from_superposition(state, lattice.nx(), lattice.ny());
    const double s = damping_time(c.spec, c.theta.epsilon);

    auto summary = out.open("evolve_summary.csv");
    summary << "t,norm,max_abs_err\n";
    double worst = 0.0;
    const auto times = c.time.points();
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        if (log != nullptr) {
            *log << "propagating to t=" << t << '\n';
        }
        const GridState grid =
            t == 0.0 ? initial : propagate_grid(initial, t, c.theta);
        const auto exact = GridState::from_superposition(
            evolve_superposition(state, std::complex<double>(t, -s)),
            lattice.nx(), lattice.ny());
        double err = 0.0;
        if (t != 0.0) {
            for (int i = 0; i < grid.nx(); ++i) {
                for (int j = 0; j < grid.ny(); ++j) {
                    err = std::max(err, std::abs(grid.at(i, j) - exact.at(i, j)));
                }
            }
        }
        worst = std::max(worst, err);
        summary << t << ',' << grid.norm_squared() << ',' << err << '\n';

        std::ostringstream name;
        name << "evolve_" << std::setw(4) << std::setfill('0') << k << ".csv";
        std::ostringstream extra;
        extra << std::setprecision(17) << "t=" << t
              << " epsilon=" << c.theta.epsilon << " max_abs_err=" << err;
        auto dump = out.open(name.str());
        write_csv(grid, dump, trailer(c, extra.str()));
        out.close(dump);
    }
    std::ostringstream extra;
    extra << std::setprecision(17) << "epsilon=" << c.theta.epsilon
          << " damping_time=" << s << " grid=" << lattice.nx() << 'x'
          << lattice.ny() << " max_abs_err=" << worst;
    summary << "# " << trailer(c, extra.str()) << '\n';
    out.close(summary);
}

void run_covariance(const RunConfig &c, Output &out) {
    auto csv = out.open("covariance.csv");
    const auto times = c.time.points();
    if (c.covariance_model == CovarianceModel::Free) {
        csv << "t,cov\n";
        for (double t : times) {
            csv << t << ',' << covariance_free(c.free, c.spec, t) << '\n';
        }
        csv << "# " << trailer(c, "model=free exact=analytic") << '\n';
        out.close(csv);
        return;
    }

    const Superposition state = c.superposition();
    const bool example = is_two_mode_example(state);
    csv << (example ? "t,cov,cov_paper_closed_form,abs_diff\n" : "t,cov\n");
    const QuadConfig doubled{2 * c.quad.order, c.quad.tol};
    double self_consistency = 0.0;
    double max_diff = 0.0;
    for (double t : times) {
        const double cov = covariance_direct(state, t, c.quad);
        self_consistency = std::max(
            self_consistency, std::abs(cov - covariance_direct(state, t, doubled)));
        csv << t << ',' << cov;
        if (example) {
            const double closed = covariance_closed_form_example(c.spec, t);
            max_diff = std::max(max_diff, std::abs(cov - closed));
            csv << ',' << closed << ',' << std::abs(cov - closed);
        }
        csv << '\n';
    }
    std::ostringstream extra;
    extra << std::setprecision(17) << "model=bounded quad_order=" << c.quad.order
          << " order_doubling_diff=" << self_consistency;
    if (example) {
        extra << " max_abs_diff_closed_form=" << max_diff;
    }
    csv << "# " << trailer(c, extra.str()) << '\n';
    out.close(csv);
}

void run_greens_check(const RunConfig &c, Output &out) {
    const ShapeDomain domain{c.shape, c.spec};
    const Polygon polygon = domain.polygon();
    const BoundingBox box = polygon.bounding_box();
    const double eps = c.theta.epsilon;
    const int n_cut = spectral_cutoff(c.shape, c.spec, eps, c.greens.tail_bound);
    const double tail = spectral_tail_bound(c.shape, c.spec, n_cut, eps);
    const double t_lo = c.time.start;
    const double t_hi = c.time.end > c.time.start
                            ? c.time.end
                            : c.time.start + c.spec.m1 * c.spec.d * c.spec.d /
                                                 c.spec.hbar;

    std::mt19937_64 rng(c.greens.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto interior_point = [&] {
        for (;;) {
            const Point2 p{box.lo.u + (box.hi.u - box.lo.u) * unit(rng),
                           box.lo.v + (box.hi.v - box.lo.v) * unit(rng)};
            if (polygon.classify(p, default_boundary_tol(c.spec)) ==
                Location::Interior) {
                return p;
            }
        }
    };

    auto csv = out.open("greens_check.csv");
    csv << "x1,x2,x1p,x2p,t,re_theta,im_theta,re_oracle,im_oracle,abs_diff,"
           "rel_diff,residual\n";
    const double floor = tail / c.greens.rel_tol;
    double max_residual = 0.0;
    double max_rel = 0.0;
    for (int k = 0; k < c.greens.samples; ++k) {
        const Point2 p = interior_point();
        const Point2 q = interior_point();
        const double t = t_lo + (t_hi - t_lo) * unit(rng);
        const auto g = greens_theta(c.shape, p, q, t, c.spec, c.theta);
        const auto o = greens_spectral_oracle(c.shape, p, q, t, c.spec, n_cut, eps);
        const double diff = std::abs(g - o);
        const double scale = std::max(std::abs(g), std::abs(o));
        const double rel = scale > 0.0 ? diff / scale : 0.0;
        const double residual = diff / std::max(scale, floor);
        max_residual = std::max(max_residual, residual);
        max_rel = std::max(max_rel, rel);
        csv << p.u << ',' << p.v << ',' << q.u << ',' << q.v << ',' << t << ','
            << g.real() << ',' << g.imag() << ',' << o.real() << ','
            << o.imag() << ',' << diff << ',' << rel << ',' << residual << '\n';
    }
    std::ostringstream extra;
    extra << std::setprecision(17) << "epsilon=" << eps << " n_cut=" << n_cut
          << " oracle_tail_bound=" << tail << " max_residual=" << max_residual
          << " max_rel_diff=" << max_rel;
    csv << "# " << trailer(c, extra.str()) << '\n';
    out.close(csv);
}

void run_domain(const RunConfig &c, Output &out) {
    auto csv = out.open("domain.csv");
    if (c.domain_kind == DomainKind::Com) {
        const ComDomain domain = com_domain(c.spec, c.impenetrable);
        csv << "Xc,x\n";
        for (const auto &v : domain.polygon.vertices()) {
            csv << v.u << ',' << v.v << '\n';
        }
        std::ostringstream extra;
        extra << std::setprecision(17) << "domain=com impenetrable="
              << (c.impenetrable ? "true" : "false")
              << " area=" << domain.polygon.area();
        csv << "# " << trailer(c, extra.str()) << '\n';
    } else {
        const Polygon polygon = ShapeDomain{c.shape, c.spec}.polygon();
        csv << "x1,x2\n";
        for (const auto &v : polygon.vertices()) {
            csv << v.u << ',' << v.v << '\n';
        }
        std::ostringstream extra;
        extra << std::setprecision(17) << "domain=shape shape="
              << billiard::to_string(c.shape) << " area=" << polygon.area();
        csv << "# " << trailer(c, extra.str()) << '\n';
    }
    out.close(csv);
}

} // namespace

int exit_code(const std::exception &e) noexcept {
    if (dynamic_cast<const ParseError *>(&e) != nullptr) {
        return kExitParse;
    }
    if (dynamic_cast<const ValidationError *>(&e) != nullptr) {
        return kExitValidation;
    }
    if (dynamic_cast<const NonConvergentError *>(&e) != nullptr) {
        return kExitNonConvergent;
    }
    if (dynamic_cast<const OverflowError *>(&e) != nullptr) {
        return kExitOverflow;
    }
    if (dynamic_cast<const QuadratureError *>(&e) != nullptr) {
        return kExitQuadrature;
    }
    if (dynamic_cast<const IoError *>(&e) != nullptr) {
        return kExitIo;
    }
    return kExitInternal;
}

std::string error_line(const std::exception &e) {
    std::ostringstream out;
    const auto *err = dynamic_cast<const Error *>(&e);
    out << "error kind=" << (err != nullptr ? err->kind() : "InternalError")
        << " code=" << exit_code(e);
    if (const auto *pe = dynamic_cast<const ParseError *>(&e)) {
        out << " line=" << pe->line() << " key=" << pe->key();
    }
    out << " message=" << std::quoted(e.what());
    return out.str();
}

std::string read_file(const fs::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config '" + path.string() + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

RunResult run(const RunConfig &config, const fs::path &out_dir,
              std::ostream *log) {
    config.validate();
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir)) {
        throw IoError("cannot create output directory '" + out_dir.string() +
                      "'");
    }
    Output out(out_dir, log);
    switch (config.scenario) {
    case Scenario::Eigen:
        run_eigen(config, out);
        break;
    case Scenario::Evolve:
        run_evolve(config, out, log);
        break;
    case Scenario::Covariance:
        run_covariance(config, out);
        break;
    case Scenario::GreensCheck:
        run_greens_check(config, out);
        break;
    case Scenario::Domain:
        run_domain(config, out);
        break;
    }
    return {out.files()};
}

} // namespace billiard::cli
