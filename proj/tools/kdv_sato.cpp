#include <cstdio>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>

#include "kdv/spectral.hpp"
#include "run_config.hpp"
#include "verify.hpp"

using namespace kdv;
using namespace kdv::cli;

namespace {

constexpr int exit_ok = 0, exit_config = 1, exit_singular = 2, exit_verify_failed = 3;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void header(std::ostream& out, const RunConfig& cfg, const char* command) {
    out << "# kdv_sato " << version() << " " << command << " config_hash=" << cfg.hash << "\n";
    out << "# config=" << cfg.raw.dump() << "\n";
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write output '" + path + "'");
    return out;
}

int run_solve(const RunConfig& cfg, const std::string& out_path) {
    const Model M = build_model(cfg);
    const double tail = tail_indicator(M, cfg);
    if (tail > cfg.tail_tol)
        throw ConfigError("tail magnitude " + fmt(tail) + " exceeds tolerances.tail = " + fmt(cfg.tail_tol) +
                          "; increase contour.y_max");
    const FlowResult R = kdv_solution_grid(M.symbol, cfg.h, cfg.t_grid, cfg.x_grid, cfg.cond_max, thread_count(), true);
    std::ofstream out = open_out(out_path);
    header(out, cfg, "solve");
    out << "t,x,q,status,tau_abs,residual\n";
    for (std::size_t i = 0; i < R.t.size(); ++i)
        for (std::size_t j = 0; j < R.x.size(); ++j) {
            const bool ok = R.status[i][j] == PointStatus::Ok;
            out << fmt(R.t[i]) << ',' << fmt(R.x[j]) << ',' << fmt(R.q(i, j)) << ',' << (ok ? "ok" : "singular") << ','
                << fmt(ok ? std::exp(R.log_tau(i, j).real()) : 0.0) << ',' << fmt(R.residual(i, j)) << '\n';
        }
    if (!out) throw ConfigError("failed writing '" + out_path + "'");
    if (R.singular_count > 0) {
        std::cerr << "flow singular at " << R.singular_count << " grid points\n";
        return exit_singular;
    }
    return exit_ok;
}

std::vector<cplx> read_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read points file '" + path + "'");
    std::vector<cplx> pts;
    std::string line;
    while (std::getline(in, line)) {
        for (char& ch : line)
            if (ch == ',') ch = ' ';
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#')
            continue;
        std::istringstream ss(line);
        double re = 0.0, im = 0.0;
        if (!(ss >> re >> im)) throw ConfigError("points file: expected 're im' on each line");
        pts.emplace_back(re, im);
    }
    return pts;
}

int run_mfun(const RunConfig& cfg, const std::string& points) {
    const Model M = build_model(cfg);
    const std::vector<cplx> pts = read_points(points);
    header(std::cout, cfg, "mfun");
    std::cout << "z_re,z_im,m_re,m_im,m_plus_re,m_plus_im,m_minus_re,m_minus_im,R_re,R_im,xi1,xi2\n";
    for (cplx z : pts) {
        if (!(z.imag() > 0.0)) throw ConfigError("mfun points must have Im z > 0");
        const WeylData W = weyl_and_reflection(M.m, z);
        const cplx mz = M.m(z);
        std::cout << fmt(z.real()) << ',' << fmt(z.imag()) << ',' << fmt(mz.real()) << ',' << fmt(mz.imag()) << ','
                  << fmt(W.m_plus.real()) << ',' << fmt(W.m_plus.imag()) << ',' << fmt(W.m_minus.real()) << ','
                  << fmt(W.m_minus.imag()) << ',' << fmt(W.R.real()) << ',' << fmt(W.R.imag()) << ','
                  << fmt(W.xi1.real()) << ',' << fmt(W.xi2.real()) << '\n';
    }
    return exit_ok;
}

// Factors joined by '*': q(re[,im]), p(re[,im]), exp(h0,h1,...).
GroupElement parse_g(const std::string& spec) {
    static const std::regex factor(R"(\s*(q|p|exp)\(([^)]*)\)\s*)");
    GroupElement g = identity_element();
    std::stringstream ss(spec);
    std::string part;
    bool any = false;
    while (std::getline(ss, part, '*')) {
        std::smatch mt;
        if (!std::regex_match(part, mt, factor)) throw ConfigError("bad --g factor '" + part + "'");
        std::vector<double> args;
        std::stringstream as(mt[2].str());
        std::string tok;
        while (std::getline(as, tok, ',')) {
            try {
                args.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw ConfigError("bad number '" + tok + "' in --g");
            }
        }
        const std::string kind = mt[1].str();
        if (kind == "exp") {
            try {
                g = g * exp_poly(args);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        } else {
            if (args.empty() || args.size() > 2) throw ConfigError(kind + "() takes one or two numbers");
            const cplx w(args[0], args.size() > 1 ? args[1] : 0.0);
            g = g * from_rational(kind == "q" ? q_factor(w) : p_factor(w));
        }
        any = true;
    }
    if (!any) throw ConfigError("--g is empty");
    return g;
}

std::vector<double> parse_range(const std::string& r) {
    double a = 0, b = 0, h = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(r);
    if (!(ss >> a >> c1 >> b >> c2 >> h) || c1 != ':' || c2 != ':' || !(h > 0.0) || b < a)
        throw ConfigError("--x-range must be a:b:h with a <= b and h > 0");
    std::vector<double> xs;
    const int n = static_cast<int>(std::floor((b - a) / h + 1e-9));
    for (int i = 0; i <= n; ++i) xs.push_back(a + i * h);
    return xs;
}

int run_tau(const RunConfig& cfg, const std::string& gspec, const std::string& range) {
    const GroupElement g = parse_g(gspec);
    const std::vector<double> xs = parse_range(range);
    const Model M = build_model(cfg);
    header(std::cout, cfg, "tau");
    std::cout << "x,tau_re,tau_im,tau_abs,status\n";
    bool singular = false;
    for (double x : xs) {
        try {
            const TauValue t = tau_det2(M.symbol, g * e_tx(0.0, x), cfg.cond_max);
            std::cout << fmt(x) << ',' << fmt(t.det.real()) << ',' << fmt(t.det.imag()) << ',' << fmt(std::abs(t.det))
                      << ",ok\n";
        } catch (const FlowSingularity&) {
            singular = true;
            std::cout << fmt(x) << ",nan,nan,0,singular\n";
        }
    }
    return singular ? exit_singular : exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Solutions of the KdV hierarchy from Weyl-function data"};
    app.set_version_flag("--version", version());
    app.require_subcommand(1);

    std::string config, out, suite, points, gspec, xrange;
    auto* solve = app.add_subcommand("solve", "evaluate q(t, x) on the configured grid");
    solve->add_option("--config", config, "JSON config")->required();
    solve->add_option("--out", out, "CSV output path (overrides output.path)");
    auto* verify = app.add_subcommand("verify", "run invariant suites");
    verify->add_option("--suite", suite, "suite name")->required();
    verify->add_option("--config", config, "JSON config");
    auto* mfun = app.add_subcommand("mfun", "tabulate m, m+, m-, R, xi");
    mfun->add_option("--config", config, "JSON config")->required();
    mfun->add_option("--points", points, "file with 're im' per line")->required();
    auto* tau = app.add_subcommand("tau", "tabulate tau(e_x g a)");
    tau->add_option("--config", config, "JSON config")->required();
    tau->add_option("--g", gspec, "group element, e.g. q(2)*exp(0,0,0,0.1)")->required();
    tau->add_option("--x-range", xrange, "a:b:h")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_config;
    }
    try {
        if (*solve) {
            const RunConfig cfg = load_config(config);
            return run_solve(cfg, out.empty() ? cfg.out_path : out);
        }
        if (*verify) {
            const RunConfig cfg = config.empty() ? default_config() : load_config(config);
            const nlohmann::json rep = run_verify(cfg, suite);
            std::cout << rep.dump(2) << "\n";
            return rep["pass"].get<bool>() ? exit_ok : exit_verify_failed;
        }
        if (*mfun) return run_mfun(load_config(config), points);
        if (*tau) return run_tau(load_config(config), gspec, xrange);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const FlowSingularity& e) {
        std::cerr << "singular: " << e.what() << "\n";
        return exit_singular;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    }
    return exit_ok;
}
