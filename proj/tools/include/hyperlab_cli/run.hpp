#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hyperlab_cli/json_io.hpp"

namespace hyperlab::cli {

inline constexpr const char* kReportSchema = "hyperlab.report/v1";

struct Invocation {
    std::string group;  // check, construct, simulate, density
    std::string name;   // shift, chc, orbit, ...; empty for density
    json config = json::object();
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> grid;
    std::optional<std::int64_t> horizon;
};

struct RunOutcome {
    json report;
    int exit_code = 2;
    std::string csv;  // orbit traces only
};

// Validates the config, dispatches, and never throws; errors become exit code 2.
RunOutcome run(const Invocation& inv);

std::string command_name(const Invocation& inv);

}  // namespace hyperlab::cli
