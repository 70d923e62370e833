#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "lfpdc/scenario.hpp"

namespace lfpdc
{

struct RunOptions
{
    std::uint64_t seed = 42;
    std::map<std::string, double> tol_overrides;
};

// One named check: passes iff `value` relation `tolerance` holds.
struct Check
{
    std::string name;
    double value;
    std::string relation;  // "<=", ">=" or "abs_dev<="; the last carries `target`
    double tolerance;
    double target = 0.0;
    bool pass;
};

const std::vector<std::string>& subcommand_names();

// Runs one subcommand and writes its tables, metadata and (on failure) error.json
// into `out`. Returns 0 if every check passes, 1 if one fails, 2 on error.
int run(const std::string& subcommand, Scenario scenario, const std::filesystem::path& out,
        const RunOptions& opt = {});

// Writes error.json with the given fields. Used for failures before a scenario exists.
void write_error_record(const std::filesystem::path& out, const std::string& kind, const std::string& message,
                        const std::string& path = {}, std::size_t line = 0, std::size_t column = 0);

// Fixed scientific formatting with 17 significant digits.
std::string format_double(double v);

}  // namespace lfpdc
