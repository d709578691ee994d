#pragma once

#include <json.hpp>

#include "run_config.hpp"

namespace kdv::cli {

const std::vector<std::string>& suite_names();

// Runs one suite (or "all"); report {suite, checks: [...], pass}.
nlohmann::json run_verify(const RunConfig& cfg, const std::string& suite);

}  // namespace kdv::cli
