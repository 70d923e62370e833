#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "lfpdc/errors.hpp"
#include "lfpdc/run.hpp"
#include "lfpdc/scenario.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Local-field-corrected chi2 and down-conversion coupling tensor"};
    app.require_subcommand(1, 1);

    std::string scenario_path, out_dir;
    std::uint64_t seed = 42;
    std::vector<std::string> tols;

    for (const auto& name : lfpdc::subcommand_names())
    {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--scenario", scenario_path, "scenario file (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory")->required();
        sub->add_option("--seed", seed, "seed for randomized checks");
        sub->add_option("--tol", tols, "tolerance override name=value")->take_all();
    }
    CLI11_PARSE(app, argc, argv);
    const std::string sub = app.get_subcommands().front()->get_name();

    lfpdc::RunOptions opt;
    opt.seed = seed;
    for (const auto& t : tols)
    {
        const auto eq = t.find('=');
        char* end = nullptr;
        const double v = eq == std::string::npos ? 0.0 : std::strtod(t.c_str() + eq + 1, &end);
        if (eq == std::string::npos || eq == 0 || end == t.c_str() + eq + 1 || *end != '\0')
        {
            lfpdc::write_error_record(out_dir, "usage", "bad --tol value '" + t + "', expected name=value");
            std::cerr << "error: bad --tol value '" << t << "'\n";
            return 2;
        }
        opt.tol_overrides[t.substr(0, eq)] = v;
    }

    std::error_code ec;
    std::filesystem::remove(std::filesystem::path(out_dir) / "error.json", ec);

    try
    {
        auto sc = lfpdc::parse_scenario(scenario_path);
        const int status = lfpdc::run(sub, std::move(sc), out_dir, opt);
        if (status == 2)
            std::cerr << "error: see " << out_dir << "/error.json\n";
        else if (status == 1)
            std::cerr << "one or more checks failed, see the metadata files in " << out_dir << "\n";
        return status;
    }
    catch (const lfpdc::ParseError& e)
    {
        lfpdc::write_error_record(out_dir, "parse", e.what(), {}, e.line(), e.column());
        std::cerr << scenario_path << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
    }
    catch (const lfpdc::ValidationError& e)
    {
        lfpdc::write_error_record(out_dir, "validation", e.what(), e.path());
        std::cerr << "error: " << e.what() << "\n";
    }
    catch (const std::exception& e)
    {
        lfpdc::write_error_record(out_dir, "runtime", e.what());
        std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
}
