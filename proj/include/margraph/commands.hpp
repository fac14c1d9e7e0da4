#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "margraph/model_io.hpp"

namespace margraph::cli {

enum ExitCode : int {
    kSuccess = 0,
    kCheckFailed = 1,      // oracle-verify found a mismatch
    kValidationError = 2,
    kResourceLimit = 3,
};

struct CommandOptions {
    std::string model_path;            // echoed into the result document
    std::vector<std::string> keep;     // labels of the retained set
    std::optional<double> tolerance;
    bool emit_potential = false;
    bool strict = false;
};

struct CommandResult {
    nlohmann::ordered_json document;
    std::optional<std::string> dot;    // set when the result has a graph to draw
    std::vector<std::string> notices;  // human-readable warnings for stderr
    int exit_code = kSuccess;
};

[[nodiscard]] CommandResult marginalize_graph(const io::ModelFile& model, const CommandOptions& opts);
[[nodiscard]] CommandResult marginalize_hypergraph(const io::ModelFile& model, const CommandOptions& opts);
[[nodiscard]] CommandResult marginalize_gaussian(const io::ModelFile& model, const CommandOptions& opts);
[[nodiscard]] CommandResult check_collapsibility(const io::ModelFile& model, const CommandOptions& opts);
[[nodiscard]] CommandResult oracle_verify(const io::ModelFile& model, const CommandOptions& opts);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace margraph::cli
