// singlet-bound: command-line front end.
//
// Exit codes: 0 success, 1 input or validation error, 2 verification failure.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "singlet/singlet.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitVerify = 2;

constexpr std::uint64_t kFallbackSeed = 1;

struct StateSource {
    std::optional<double> family;
    std::optional<std::string> path;
};

// SINGLET_BOUND_SEED supplies the default seed; an explicit --seed wins.
std::uint64_t default_seed() {
    const char *env = std::getenv("SINGLET_BOUND_SEED");
    if (env == nullptr || *env == '\0') {
        return kFallbackSeed;
    }
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(env, &used);
        if (used != std::string(env).size()) {
            throw std::invalid_argument(env);
        }
        return v;
    } catch (const std::exception &) {
        throw std::invalid_argument(std::string("SINGLET_BOUND_SEED is not an unsigned integer: ") + env);
    }
}

singlet::DensityMatrix load_source(const StateSource &src) {
    if (src.family) {
        return singlet::rho_family(*src.family);
    }
    return singlet::load_state_file(*src.path);
}

void add_state_source(CLI::App &cmd, StateSource &src) {
    auto *family = cmd.add_option_function<double>(
        "--family", [&src](double f) { src.family = f; }, "Use the rho(F) family state with this F");
    auto *state = cmd.add_option_function<std::string>(
        "--state", [&src](const std::string &p) { src.path = p; }, "Read a state from a JSON file");
    family->excludes(state);
    state->excludes(family);
    cmd.callback([family, state] {
        if (family->count() == 0 && state->count() == 0) {
            throw CLI::RequiredError("--family or --state");
        }
    });
}

int run_analyze(const StateSource &src, int restarts, std::uint64_t seed) {
    const singlet::DensityMatrix rho = load_source(src);
    singlet::AnalyzeOptions options;
    options.restarts = restarts;
    options.seed = seed;
    const singlet::BoundReport report = singlet::analyze(rho, src.family, options);
    std::cout << singlet::report_to_json(report).dump(2) << '\n';
    return kExitOk;
}

int run_optimize_filter(const StateSource &src, int restarts, std::uint64_t seed) {
    const singlet::DensityMatrix rho = load_source(src);
    const singlet::FilterOptimum opt = singlet::optimize_filter(rho, restarts, seed);
    singlet::Json out;
    out["filter"] = singlet::matrix_to_json(opt.filter.matrix());
    out["F_before"] = singlet::singlet_fraction(rho);
    out["F_after"] = opt.value;
    out["filtered_singlet_fraction"] = opt.filtered_singlet_fraction;
    out["success_probability"] = opt.success_probability;
    std::cout << out.dump(2) << '\n';
    return kExitOk;
}

int run_sweep(double from, double to, double step, const std::string &out_path, bool numeric, int restarts,
              std::uint64_t seed) {
    singlet::SweepOptions options;
    options.numeric = numeric;
    options.restarts = restarts;
    options.seed = seed;
    const auto rows = singlet::run_sweep(from, to, step, options);
    if (out_path.empty() || out_path == "-") {
        singlet::write_sweep_csv(std::cout, rows);
        return kExitOk;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument("cannot open " + out_path + " for writing");
    }
    singlet::write_sweep_csv(out, rows);
    return out ? kExitOk : kExitInput;
}

int run_verify(std::size_t trials, std::uint64_t seed, const std::string &mutation_name) {
    const auto mutation = singlet::parse_mutation(mutation_name);
    if (!mutation) {
        throw std::invalid_argument("unknown mutation " + mutation_name);
    }
    singlet::VerifyOptions options;
    options.trials = trials;
    options.seed = seed;
    options.mutation = *mutation;
    bool all_passed = true;
    for (const singlet::SuiteResult &suite : singlet::verify_all(options)) {
        std::cout << (suite.passed() ? "PASS " : "FAIL ") << suite.name << ": " << suite.trials - suite.failures << '/'
                  << suite.trials << " passed\n";
        if (suite.first_failure) {
            std::cout << "  first failure: " << *suite.first_failure << '\n';
        }
        all_passed = all_passed && suite.passed();
    }
    return all_passed ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Singlet fraction bounds for two-qubit states", "singlet-bound"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    int restarts = 32;

    StateSource analyze_src;
    auto *analyze = app.add_subcommand("analyze", "Report fidelity figures and bounds for one state");
    add_state_source(*analyze, analyze_src);
    analyze->add_option("--restarts", restarts, "Filter search restarts")->check(CLI::PositiveNumber);
    analyze->add_option("--seed", seed, "Random seed");

    double from = 1.0 / 3.0, to = 1.0, step = 0.005;
    std::string out_path;
    bool numeric = false;
    auto *sweep = app.add_subcommand("sweep", "Tabulate F* and F*_D over the rho(F) family as CSV");
    sweep->add_option("--from", from, "First F (>= 1/3)")->capture_default_str();
    sweep->add_option("--to", to, "Last F (<= 1)")->capture_default_str();
    sweep->add_option("--step", step, "Grid step")->capture_default_str();
    sweep->add_option("--out", out_path, "Output CSV path (stdout when omitted)");
    sweep->add_flag("--numeric", numeric, "Also fill F_star_numeric by filter optimization");
    sweep->add_option("--restarts", restarts, "Filter search restarts for --numeric")->check(CLI::PositiveNumber);
    sweep->add_option("--seed", seed, "Random seed for --numeric");

    std::size_t trials = 1000;
    std::string mutation = "none";
    auto *verify = app.add_subcommand("verify", "Run the randomized verification suites");
    verify->add_option("--trials", trials, "Trials per suite")->check(CLI::PositiveNumber)->capture_default_str();
    verify->add_option("--seed", seed, "Base seed");
    verify->add_option("--inject-mutation", mutation, "Run against a deliberately broken formula")->group("");

    StateSource opt_src;
    auto *optimize = app.add_subcommand("optimize-filter", "Search for the best local filter");
    add_state_source(*optimize, opt_src);
    optimize->add_option("--restarts", restarts, "Filter search restarts")->check(CLI::PositiveNumber);
    optimize->add_option("--seed", seed, "Random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        const bool seed_given = [&] {
            for (const CLI::App *cmd : {analyze, sweep, verify, optimize}) {
                if (cmd->parsed() && cmd->get_option("--seed")->count() > 0) {
                    return true;
                }
            }
            return false;
        }();
        if (!seed_given) {
            seed = default_seed();
        }

        if (analyze->parsed()) {
            return run_analyze(analyze_src, restarts, seed);
        }
        if (optimize->parsed()) {
            return run_optimize_filter(opt_src, restarts, seed);
        }
        if (sweep->parsed()) {
            return run_sweep(from, to, step, out_path, numeric, restarts, seed);
        }
        return run_verify(trials, seed, mutation);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
}
