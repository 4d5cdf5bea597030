// Command-line front end for the CoMP/NOMA Monte Carlo simulator.
//
//   compnoma sweep   --config scenario.ini --out results.csv
//   compnoma figure3 --out fig3.csv --iterations 1000
//   compnoma validate

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "compnoma/config.hpp"
#include "compnoma/sim.hpp"
#include "compnoma/validation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct RunFlags {
    std::string config_path;
    std::string out = "results.csv";
    std::string manifest_path;
    std::string iterations_csv;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> iterations;
    std::size_t threads = 1;
    std::string schemes;
    std::string lambda_b, lambda_u, gamma_th;
    std::vector<std::string> sets;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
    cmd->add_option("--config", f.config_path, "Scenario file (section/key = value)");
    cmd->add_option("--out", f.out, "CSV output path")->capture_default_str();
    cmd->add_option("--manifest", f.manifest_path, "Run manifest path (default: <out>.manifest)");
    cmd->add_option("--iterations-csv", f.iterations_csv, "Also write per-iteration samples to this CSV");
    cmd->add_option("--seed", f.seed, "Master seed");
    cmd->add_option("--iterations", f.iterations, "Monte Carlo iterations per point");
    cmd->add_option("--threads", f.threads, "Worker threads")->capture_default_str();
    cmd->add_option("--schemes", f.schemes, "Comma-separated scheme list");
    cmd->add_option("--lambda-b", f.lambda_b, "BS densities per km^2, comma-separated");
    cmd->add_option("--lambda-u", f.lambda_u, "User densities per km^2, comma-separated");
    cmd->add_option("--gamma-th", f.gamma_th, "CoMP thresholds in dB, comma-separated (-inf allowed)");
    cmd->add_option("--set", f.sets, "Override any key: section.key=value (repeatable)");
}

std::vector<std::string> overrides_from(const RunFlags& f) {
    std::vector<std::string> o = f.sets;
    if (f.seed) o.push_back("sim.seed=" + std::to_string(*f.seed));
    if (f.iterations) o.push_back("sim.iterations=" + std::to_string(*f.iterations));
    if (!f.schemes.empty()) o.push_back("sim.schemes=" + f.schemes);
    if (!f.lambda_b.empty()) o.push_back("scenario.lambda_b=" + f.lambda_b);
    if (!f.lambda_u.empty()) o.push_back("scenario.lambda_u=" + f.lambda_u);
    if (!f.gamma_th.empty()) o.push_back("scenario.gamma_th_db=" + f.gamma_th);
    return o;
}

// Presets start from the figure setup; a config file and flags still apply on top.
compnoma::ScenarioConfig resolve(const std::string& command, const RunFlags& f) {
    using namespace compnoma;
    std::string base;
    if (command == "figure3")
        base = serialize_config(figure3_preset());
    else if (command == "figure4")
        base = serialize_config(figure4_preset());
    else if (command == "figure5")
        base = serialize_config(figure5_preset());

    std::string text = base;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw ConfigError("cannot read configuration file " + f.config_path);
        std::stringstream buf;
        buf << in.rdbuf();
        text += "\n" + buf.str();
    }
    return parse_config_text(text, overrides_from(f));
}

int run(const std::string& command, const RunFlags& f, const std::string& invocation) {
    using namespace compnoma;
    ScenarioConfig config;
    try {
        config = resolve(command, f);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error";
        if (!e.key().empty()) std::cerr << " [" << e.key() << "]";
        std::cerr << ": " << e.what() << "\n";
        return kExitConfig;
    }

    RunManifest manifest;
    manifest.config = config;
    manifest.command = invocation;
    manifest.version = COMPNOMA_VERSION;
    const std::string manifest_path = f.manifest_path.empty() ? f.out + ".manifest" : f.manifest_path;

    const auto t0 = std::chrono::steady_clock::now();
    int status = kExitOk;
    try {
        const MetricsReport report = run_sweep(config, {f.threads});
        manifest.warnings = report.log.warnings();

        std::ofstream out(f.out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + f.out + " for writing");
        write_csv(out, report);
        out.close();
        if (!out) throw std::runtime_error("failed writing " + f.out);

        if (!f.iterations_csv.empty()) {
            std::ofstream it(f.iterations_csv, std::ios::binary);
            write_iteration_csv(it, report);
            if (!it) throw std::runtime_error("failed writing " + f.iterations_csv);
        }
        std::cerr << "wrote " << report.rows.size() << " rows to " << f.out << "\n";
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        manifest.status = std::string("config error: ") + e.what();
        status = kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        manifest.status = std::string("runtime error: ") + e.what();
        status = kExitRuntime;
    }
    manifest.wall_time = std::chrono::steady_clock::now() - t0;

    std::ofstream mf(manifest_path, std::ios::binary);
    write_manifest(mf, manifest);
    if (!mf) {
        std::cerr << "error: cannot write manifest " << manifest_path << "\n";
        if (status == kExitOk) status = kExitRuntime;
    }
    return status;
}

int validate(std::size_t topologies, std::uint64_t seed) {
    using namespace compnoma::validation;
    ValidationOptions opt;
    opt.topologies = topologies;
    opt.seed = seed;
    bool ok = true;
    for (const auto& r : run_validation(opt)) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases)";
        if (!r.passed) std::cout << ": " << r.detail;
        std::cout << "\n";
        ok = ok && r.passed;
    }
    return ok ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CoMP/NOMA downlink Monte Carlo simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", COMPNOMA_VERSION);

    RunFlags flags;
    for (const char* name : {"sweep", "figure3", "figure4", "figure5"}) {
        std::string help = std::string(name) == "sweep" ? "Run the full parameter sweep of a scenario"
                                                        : std::string("Run the ") + name + " preset";
        add_run_flags(app.add_subcommand(name, help), flags);
    }

    std::size_t topologies = 20;
    std::uint64_t validate_seed = 2024;
    auto* val = app.add_subcommand("validate", "Check SINR, pairing and scheduling against independent oracles");
    val->add_option("--topologies", topologies, "Random small topologies")->capture_default_str();
    val->add_option("--seed", validate_seed, "Seed for the random topologies")->capture_default_str();
    val->add_option("--threads", flags.threads, "Ignored; accepted for symmetry");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    std::string invocation;
    for (int i = 0; i < argc; ++i) invocation += (i ? " " : "") + std::string(argv[i]);

    try {
        if (val->parsed()) return validate(topologies, validate_seed);
        for (auto* sub : app.get_subcommands()) return run(sub->get_name(), flags, invocation);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitRuntime;
}
