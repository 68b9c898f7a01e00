#include "cets/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <utility>

#include "cets/errors.hpp"

namespace cets {
namespace {

using nlohmann::json;

const json& require(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end())
        throw ParseError(std::string("missing key \"") + key + "\"");
    return *it;
}

json parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::optional<double> optional_beta(const json& j) {
    if (!j.contains("beta")) return std::nullopt;
    try {
        return j.at("beta").get<double>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad beta: ") + e.what());
    }
}

void put_u64(std::ostream& os, std::uint64_t v) {
    char bytes[8];
    for (int i = 0; i < 8; ++i)
        bytes[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
    os.write(bytes, 8);
}

std::uint64_t get_u64(std::istream& is) {
    unsigned char bytes[8];
    is.read(reinterpret_cast<char*>(bytes), 8);
    if (!is) throw ParseError("truncated state file");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    return v;
}

} // namespace

Hamiltonian model_from_json(const json& j) {
    try {
        const int n = require(j, "n_spins").get<int>();
        std::vector<CouplingTerm> terms;
        for (const json& t : require(j, "terms")) {
            CouplingTerm term;
            term.sites = require(t, "sites").get<std::vector<int>>();
            term.coupling = require(t, "coupling").get<double>();
            terms.push_back(std::move(term));
        }
        return Hamiltonian(n, std::move(terms));
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad model: ") + e.what());
    }
}

Lattice2D lattice_from_json(const json& j) {
    try {
        Lattice2D lattice;
        lattice.n = require(j, "N").get<int>();
        lattice.row_couplings =
            require(j, "row_J").get<std::vector<std::vector<double>>>();
        lattice.col_couplings =
            require(j, "col_J").get<std::vector<std::vector<double>>>();
        lattice.fields =
            require(j, "h").get<std::vector<std::vector<double>>>();
        return lattice;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad lattice: ") + e.what());
    }
}

ModelFile read_model_file(const std::filesystem::path& path) {
    const json j = parse_file(path);
    if (!j.is_object())
        throw ParseError(path.string() + ": top level must be an object");
    ModelFile model;
    model.beta = optional_beta(j);
    if (j.contains("terms")) {
        model.hamiltonian = model_from_json(j);
    } else if (j.contains("row_J")) {
        model.lattice = lattice_from_json(j);
    } else {
        throw ParseError(path.string() +
                         ": expected a \"terms\" or \"row_J\" model");
    }
    return model;
}

json model_to_json(const Hamiltonian& h, std::optional<double> beta) {
    json terms = json::array();
    for (const CouplingTerm& t : h.terms())
        terms.push_back({{"sites", t.sites}, {"coupling", t.coupling}});
    json j{{"n_spins", h.n_spins()}, {"terms", std::move(terms)}};
    if (beta) j["beta"] = *beta;
    return j;
}

json plan_to_json(const PreparationPlan& plan) {
    json gates = json::array();
    for (const PlanGate& gate : plan.gates) {
        if (const auto* rot = std::get_if<RotationGate>(&gate)) {
            gates.push_back({{"target", rot->target},
                             {"controls", rot->controls},
                             {"angles", rot->angles}});
        } else {
            const auto& block = std::get<BlockRotationGate>(gate);
            gates.push_back({{"targets", block.targets},
                             {"controls", block.controls},
                             {"amplitudes", block.amplitudes}});
        }
    }
    return json{{"n_spins", plan.n_spins},
                {"log_lambda_total", plan.log_lambda_total},
                {"gates", std::move(gates)}};
}

PreparationPlan plan_from_json(const json& j) {
    try {
        PreparationPlan plan;
        plan.n_spins = require(j, "n_spins").get<int>();
        plan.log_lambda_total = require(j, "log_lambda_total").get<double>();
        for (const json& g : require(j, "gates")) {
            if (g.contains("target")) {
                RotationGate rot;
                rot.target = g.at("target").get<int>();
                rot.controls = require(g, "controls").get<std::vector<int>>();
                rot.angles = require(g, "angles").get<std::vector<double>>();
                plan.gates.emplace_back(std::move(rot));
            } else if (g.contains("targets")) {
                BlockRotationGate block;
                block.targets = g.at("targets").get<std::vector<int>>();
                block.controls =
                    require(g, "controls").get<std::vector<int>>();
                block.amplitudes =
                    require(g, "amplitudes")
                        .get<std::vector<std::vector<double>>>();
                plan.gates.emplace_back(std::move(block));
            } else {
                throw ParseError(
                    "gate needs a \"target\" or \"targets\" key");
            }
        }
        return plan;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad plan: ") + e.what());
    }
}

PreparationPlan read_plan_file(const std::filesystem::path& path) {
    PreparationPlan plan = plan_from_json(parse_file(path));
    validate_plan(plan);
    return plan;
}

json report_to_json(const VerificationReport& report, int n_spins) {
    json j{{"n_spins", n_spins},
           {"fidelity", report.fidelity},
           {"one_minus_fidelity", 1.0 - report.fidelity},
           {"log_z_plan", report.log_z_plan},
           {"log_z_oracle", report.log_z_oracle},
           {"log_z_abs_err", std::abs(report.log_z_plan - report.log_z_oracle)},
           {"max_amp_abs_err", report.max_amp_abs_err},
           {"tol_fidelity", report.tol_fidelity},
           {"tol_log_z", report.tol_log_z},
           {"pass", report.pass}};
    if (report.tv_distance) j["tv_distance"] = *report.tv_distance;
    return j;
}

void write_state_binary(const Statevector& state,
                        const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open " + path.string());
    put_u64(out, static_cast<std::uint64_t>(state.n_qubits()));
    for (const std::complex<double>& a : state.amplitudes()) {
        put_u64(out, std::bit_cast<std::uint64_t>(a.real()));
        put_u64(out, std::bit_cast<std::uint64_t>(a.imag()));
    }
    if (!out) throw ParseError("write failed: " + path.string());
}

Statevector read_state_binary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    const std::uint64_t n = get_u64(in);
    if (n > static_cast<std::uint64_t>(Statevector::kMaxQubits))
        throw ResourceLimitError("state file claims " + std::to_string(n) +
                                 " qubits");
    std::vector<std::complex<double>> amps(std::uint64_t{1} << n);
    for (auto& a : amps) {
        const double re = std::bit_cast<double>(get_u64(in));
        const double im = std::bit_cast<double>(get_u64(in));
        a = {re, im};
    }
    if (in.peek() != std::ifstream::traits_type::eof())
        throw ParseError("trailing bytes in state file");
    return Statevector::from_amplitudes(std::move(amps));
}

json state_to_json(const Statevector& state) {
    if (state.n_qubits() > 10)
        throw std::invalid_argument("JSON state dumps are capped at 10 qubits");
    json amps = json::array();
    for (const std::complex<double>& a : state.amplitudes())
        amps.push_back({a.real(), a.imag()});
    return json{{"n_qubits", state.n_qubits()},
                {"amplitudes", std::move(amps)}};
}

} // namespace cets
