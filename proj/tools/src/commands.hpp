#pragma once

#include <string>

namespace stochopt::cli {

// Exit codes: 0 success, 1 verification/runtime failure, 2 usage/config
// error.

int cmd_run(const std::string& config_path, long long seed_override,
            const std::string& out_override, int threads);

int cmd_verify(const std::string& suite, const std::string& out_dir);

int cmd_compare(const std::string& config_path, const std::string& out_override);

int cmd_report(const std::string& trace_path);

}  // namespace stochopt::cli
