#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <json.hpp>

#include "cets/builders.hpp"
#include "cets/errors.hpp"
#include "cets/io.hpp"
#include "cets/spin_config.hpp"
#include "cets/statevector.hpp"
#include "cets/verify.hpp"

namespace {

struct CliOptions {
    std::string model_path;
    std::string plan_path;
    std::string out_path;
    std::string builder_name = "auto";
    std::optional<double> beta_override;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> n_samples;
    double tol_fidelity = 1e-9;
    double tol_log_z = 1e-9;
    int block_size = 0;
    int max_lattice_n = 4;
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw cets::ParseError("cannot open " + path);
    out << text;
    if (!out) throw cets::ParseError("write failed: " + path);
}

void emit(const nlohmann::json& j, const CliOptions& opt) {
    if (opt.out_path.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_text(opt.out_path, j.dump(2) + "\n");
}

cets::Builder resolve_builder(const CliOptions& opt) {
    const auto builder = cets::builder_from_name(opt.builder_name);
    if (!builder)
        throw std::invalid_argument("unknown builder \"" + opt.builder_name +
                                    "\"");
    return *builder;
}

double resolve_beta(const CliOptions& opt, const cets::ModelFile& model) {
    if (opt.beta_override) return *opt.beta_override;
    if (model.beta) return *model.beta;
    throw std::invalid_argument(
        "no beta: set it in the model file or pass --beta");
}

cets::BuildOptions build_options(const CliOptions& opt) {
    cets::BuildOptions options;
    options.block_size = opt.block_size;
    options.max_lattice_n = opt.max_lattice_n;
    return options;
}

/// --plan wins; otherwise the model is compiled on the spot.
cets::PreparationPlan load_plan(const CliOptions& opt) {
    if (!opt.plan_path.empty()) return cets::read_plan_file(opt.plan_path);
    if (opt.model_path.empty())
        throw std::invalid_argument("pass --plan or --model");
    const cets::ModelFile model = cets::read_model_file(opt.model_path);
    return cets::build_plan(model, resolve_builder(opt),
                            resolve_beta(opt, model), build_options(opt));
}

void print_value(double v) {
    std::cout << std::setprecision(17) << v << "\n";
}

int cmd_plan(const CliOptions& opt) {
    const cets::ModelFile model = cets::read_model_file(opt.model_path);
    const cets::PreparationPlan plan =
        cets::build_plan(model, resolve_builder(opt), resolve_beta(opt, model),
                         build_options(opt));
    if (opt.out_path.empty()) {
        std::cout << cets::plan_to_json(plan).dump(2) << "\n";
    } else {
        write_text(opt.out_path, cets::plan_to_json(plan).dump(2) + "\n");
        print_value(plan.log_lambda_total);
    }
    return 0;
}

int cmd_run(const CliOptions& opt) {
    const cets::Statevector state = cets::run(load_plan(opt));
    if (opt.out_path.empty()) {
        if (state.n_qubits() > 10)
            throw std::invalid_argument(
                "state too wide to print; pass --out for a binary dump");
        std::cout << cets::state_to_json(state).dump(2) << "\n";
    } else if (opt.out_path.ends_with(".json")) {
        write_text(opt.out_path, cets::state_to_json(state).dump(2) + "\n");
    } else {
        cets::write_state_binary(state, opt.out_path);
    }
    return 0;
}

int cmd_verify(const CliOptions& opt) {
    const cets::ModelFile model = cets::read_model_file(opt.model_path);
    const double beta = resolve_beta(opt, model);
    const cets::Hamiltonian h = cets::model_hamiltonian(model);
    const cets::PreparationPlan plan =
        opt.plan_path.empty()
            ? cets::build_plan(model, resolve_builder(opt), beta,
                               build_options(opt))
            : cets::read_plan_file(opt.plan_path);
    if (h.n_spins() > cets::kMaxOracleSpins) {
        emit(nlohmann::json{{"oracle", "unavailable"},
                            {"n_spins", h.n_spins()},
                            {"log_z_plan", plan.log_lambda_total}},
             opt);
        return 3;
    }

    cets::VerifyOptions options;
    options.tol_fidelity = opt.tol_fidelity;
    options.tol_log_z = opt.tol_log_z;
    options.n_samples = opt.n_samples;
    options.seed = opt.seed;
    const cets::VerificationReport report =
        cets::verify_plan(plan, h, beta, options);
    emit(cets::report_to_json(report, h.n_spins()), opt);
    return report.pass ? 0 : 1;
}

int cmd_sample(const CliOptions& opt) {
    const cets::PreparationPlan plan = load_plan(opt);
    const cets::Statevector state = cets::run(plan);
    const auto draws =
        cets::sample(state, opt.n_samples.value_or(1000), opt.seed);
    std::string lines;
    lines.reserve(draws.size() * (static_cast<std::size_t>(plan.n_spins) + 1));
    for (cets::SpinConfig s : draws) {
        lines += cets::config_to_bits(s, plan.n_spins);
        lines += '\n';
    }
    if (opt.out_path.empty())
        std::cout << lines;
    else
        write_text(opt.out_path, lines);
    return 0;
}

int cmd_partition(const CliOptions& opt) {
    print_value(load_plan(opt).log_lambda_total);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"compiles Ising-type models into locally controlled rotation "
                 "plans, runs them on a statevector simulator, and checks the "
                 "result against exact enumeration"};
    app.require_subcommand(1);

    CliOptions opt;
    const auto add_common = [&](CLI::App* cmd, bool model_required,
                                bool takes_plan) {
        auto* model =
            cmd->add_option("--model", opt.model_path, "model JSON file");
        if (model_required) model->required();
        if (takes_plan)
            cmd->add_option("--plan", opt.plan_path,
                            "saved plan JSON (bypasses the builder)");
        cmd->add_option("--builder", opt.builder_name,
                        "triangle|tetrahedron|nnn-chain|blocks|lattice2d|auto");
        cmd->add_option("--beta", opt.beta_override,
                        "inverse temperature (overrides the file value)");
        cmd->add_option("--block-size", opt.block_size,
                        "spins per block for the blocks builder "
                        "(0 = derive from the model)");
        cmd->add_option("--max-lattice", opt.max_lattice_n,
                        "largest lattice side the planner accepts");
        cmd->add_option("--out", opt.out_path, "output file (default stdout)");
    };

    int rc = 0;
    CLI::App* plan_cmd =
        app.add_subcommand("plan", "compile a model into a gate plan");
    add_common(plan_cmd, true, false);
    plan_cmd->callback([&] { rc = cmd_plan(opt); });

    CLI::App* run_cmd =
        app.add_subcommand("run", "execute a plan and dump the state");
    add_common(run_cmd, false, true);
    run_cmd->callback([&] { rc = cmd_run(opt); });

    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "run a plan and compare against exact enumeration");
    add_common(verify_cmd, true, true);
    verify_cmd->add_option("--tol-f", opt.tol_fidelity,
                           "allowed 1 - fidelity");
    verify_cmd->add_option("--tol-z", opt.tol_log_z,
                           "allowed relative log Z error");
    verify_cmd->add_option("--samples", opt.n_samples,
                           "also sample and report the TV distance");
    verify_cmd->add_option("--seed", opt.seed, "sampling seed");
    verify_cmd->callback([&] { rc = cmd_verify(opt); });

    CLI::App* sample_cmd = app.add_subcommand(
        "sample", "draw configurations as newline-delimited bitstrings");
    add_common(sample_cmd, false, true);
    sample_cmd->add_option("--samples", opt.n_samples, "number of draws");
    sample_cmd->add_option("--seed", opt.seed, "sampling seed");
    sample_cmd->callback([&] { rc = cmd_sample(opt); });

    CLI::App* partition_cmd = app.add_subcommand(
        "partition", "print ln Z as maintained by the plan bookkeeping");
    add_common(partition_cmd, false, true);
    partition_cmd->callback([&] { rc = cmd_partition(opt); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const cets::ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const cets::TopologyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const cets::ConsistencyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const cets::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
