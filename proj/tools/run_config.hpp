#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "kdv/flow.hpp"
#include "kdv/potentials.hpp"

namespace kdv::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    nlohmann::json raw;
    std::string hash;

    int n = 3;
    double c = 1.05;
    double y_max = 10.0;
    int nodes = 600;
    double u_max = 3.0;
    int L = 8;
    double split_radius = 0.0;
    bool experimental_l2 = false;

    nlohmann::json potential;
    std::vector<double> h{0.0, 0.0, 0.0, 1.0};
    std::vector<double> t_grid{0.0};
    std::vector<double> x_grid;

    double cond_max = 1e12;
    double tail_tol = 1e-6;
    double tol_q = 1e-4;

    std::string out_path = "kdv_solution.csv";
    std::uint64_t seed = 12345;
};

RunConfig default_config();
RunConfig load_config(const std::string& path);
RunConfig parse_config(const nlohmann::json& j);

struct Model {
    Potential potential;
    MFunction m;
    ContourPtr contour;
    VectorSymbol symbol;
};

Model build_model(const RunConfig& cfg);

// Largest tail contribution |w ã G| over the end nodes and the (t, x) box.
double tail_indicator(const Model& model, const RunConfig& cfg);

std::string fnv1a_hex(const std::string& text);
int thread_count();
std::string version();

}  // namespace kdv::cli
