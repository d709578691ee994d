#include "run_config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <thread>

namespace kdv::cli {

using nlohmann::json;

namespace {

std::vector<double> grid_from(const json& j, const char* what) {
    if (j.is_array()) {
        std::vector<double> g = j.get<std::vector<double>>();
        if (g.empty()) throw ConfigError(std::string(what) + ": empty grid");
        return g;
    }
    if (j.is_object()) {
        const double a = j.at("start").get<double>();
        const double b = j.at("stop").get<double>();
        const int n = j.at("count").get<int>();
        if (n < 1) throw ConfigError(std::string(what) + ": count must be positive");
        if (n == 1) return {a};
        std::vector<double> g(n);
        for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
        return g;
    }
    throw ConfigError(std::string(what) + ": expected a list or {start, stop, count}");
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

}  // namespace

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int thread_count() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("KDV_SATO_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return n;
}

std::string version() { return KDV_VERSION; }

RunConfig default_config() { return parse_config(json::object()); }

RunConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    check_keys(j, {"contour", "potential", "L", "split_radius", "experimental_l2", "flow", "tolerances", "output", "seed"},
               "config");
    RunConfig c;
    c.raw = j;
    c.hash = fnv1a_hex(j.dump());
    try {
        if (j.contains("contour")) {
            const json& k = j["contour"];
            check_keys(k, {"n", "c", "y_max", "nodes", "u_max"}, "contour");
            c.n = k.value("n", c.n);
            c.c = k.value("c", c.c);
            c.y_max = k.value("y_max", c.y_max);
            c.nodes = k.value("nodes", c.nodes);
            c.u_max = k.value("u_max", c.u_max);
        }
        c.L = j.value("L", c.L);
        c.split_radius = j.value("split_radius", c.split_radius);
        c.experimental_l2 = j.value("experimental_l2", c.experimental_l2);
        c.potential = j.value("potential", json{{"kind", "soliton"}, {"kappa", 1.0}});
        if (j.contains("flow")) {
            const json& f = j["flow"];
            check_keys(f, {"h", "t_grid", "x_grid"}, "flow");
            if (f.contains("h")) c.h = f["h"].get<std::vector<double>>();
            if (f.contains("t_grid")) c.t_grid = grid_from(f["t_grid"], "t_grid");
            if (f.contains("x_grid")) c.x_grid = grid_from(f["x_grid"], "x_grid");
        }
        if (c.x_grid.empty()) c.x_grid = grid_from(json{{"start", -5.0}, {"stop", 5.0}, {"count", 101}}, "x_grid");
        if (j.contains("tolerances")) {
            const json& t = j["tolerances"];
            check_keys(t, {"cond_max", "tail", "q"}, "tolerances");
            c.cond_max = t.value("cond_max", c.cond_max);
            c.tail_tol = t.value("tail", c.tail_tol);
            c.tol_q = t.value("q", c.tol_q);
        }
        if (j.contains("output")) {
            const json& o = j["output"];
            check_keys(o, {"path", "format"}, "output");
            c.out_path = o.value("path", c.out_path);
            if (o.value("format", std::string("csv")) != "csv") throw ConfigError("output.format must be csv");
        }
        c.seed = j.value("seed", c.seed);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    if (c.n < 1 || c.n % 2 == 0) throw ConfigError("contour.n must be a positive odd integer");
    if (!(c.c > 0.0)) throw ConfigError("contour.c must be positive");
    if (!(c.y_max > 0.0)) throw ConfigError("contour.y_max must be positive");
    if (c.nodes < 8 || c.nodes % 4 != 0) throw ConfigError("contour.nodes must be a multiple of 4, at least 8");
    if (c.L < 3 && !(c.L == 2 && c.experimental_l2)) throw ConfigError("L must be at least 3");
    if (c.h.empty()) throw ConfigError("flow.h must not be empty");
    for (std::size_t k = 0; k < c.h.size(); k += 2)
        if (c.h[k] != 0.0) throw ConfigError("flow.h must be an odd polynomial");
    int deg = 0;
    for (std::size_t k = 0; k < c.h.size(); ++k)
        if (c.h[k] != 0.0) deg = static_cast<int>(k);
    if (deg > c.n) throw ConfigError("flow.h degree exceeds contour.n");
    if (c.L < std::max(deg + 1, 3) && !(c.L == 2 && c.experimental_l2)) throw ConfigError("L too small for flow.h");
    if (!(c.cond_max > 1.0)) throw ConfigError("tolerances.cond_max must exceed 1");
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

Model build_model(const RunConfig& cfg) {
    Model M;
    const json& p = cfg.potential;
    const std::string kind = p.value("kind", std::string("soliton"));
    const int count = std::max(cfg.L, 4);
    try {
        if (kind == "soliton") {
            const double kappa = p.value("kappa", 1.0), x0 = p.value("x0", 0.0);
            M.potential = soliton_potential(kappa, x0);
            M.m = (x0 == 0.0) ? soliton_m(kappa) : weyl_mfunction(M.potential, count);
        } else if (kind == "free") {
            M.potential = zero_potential();
            M.m = free_m();
        } else if (kind == "sech2_sum") {
            M.potential = sech2_sum(p.at("kappa").get<std::vector<double>>(), p.at("shift").get<std::vector<double>>());
            M.m = weyl_mfunction(M.potential, count);
        } else if (kind == "gaussian_bump") {
            M.potential = gaussian_bump(p.value("amplitude", 1.0), p.value("sigma", 1.0), p.value("x0", 0.0));
            M.m = weyl_mfunction(M.potential, count);
        } else if (kind == "tabulated") {
            M.potential = tabulated_from_csv(p.at("path").get<std::string>());
            M.m = weyl_mfunction(M.potential, count);
        } else {
            throw ConfigError("unknown potential kind '" + kind + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("potential: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("potential: ") + e.what());
    }
    try {
        M.contour = build_contour(cfg.n, cfg.c, cfg.y_max, cfg.nodes, cfg.u_max);
        SplitOptions so;
        so.radius = cfg.split_radius;
        so.allow_experimental_l2 = cfg.experimental_l2;
        M.symbol = symbol_from_m(M.m, cfg.L, M.contour, so);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
    return M;
}

double tail_indicator(const Model& model, const RunConfig& cfg) {
    const Contour& C = *model.contour;
    const CVec t1 = model.symbol.t1(), t2 = model.symbol.t2();
    double worst = 0.0;
    const int H = C.half;
    for (int j : {0, 1, H - 2, H - 1, H, H + 1, 2 * H - 2, 2 * H - 1}) {
        const cplx z = C.nodes(j);
        double gmax = 0.0;
        for (double t : {cfg.t_grid.front(), cfg.t_grid.back()})
            for (double x : {cfg.x_grid.front(), cfg.x_grid.back()}) {
                cplx e = x * z, zk = 1.0;
                for (std::size_t k = 0; k < cfg.h.size(); ++k, zk *= z) e += t * cfg.h[k] * zk;
                gmax = std::max(gmax, std::exp(e.real()));
            }
        worst = std::max(worst, std::abs(C.weights(j)) * (std::abs(t1(j)) + std::abs(t2(j))) * gmax);
    }
    return worst;
}

}  // namespace kdv::cli
