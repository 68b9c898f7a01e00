#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "cets/block_bp.hpp"
#include "cets/plan.hpp"
#include "cets/spin_model.hpp"
#include "cets/statevector.hpp"
#include "cets/verify.hpp"

namespace cets {

/// Parsed model file: either a term-list Hamiltonian or a 2D lattice,
/// each with an optional file-level beta.
struct ModelFile {
    std::optional<Hamiltonian> hamiltonian;
    std::optional<Lattice2D> lattice;
    std::optional<double> beta;
};

/// Reads either schema, keyed on "terms" vs "row_J". Throws ParseError on
/// malformed JSON or schema violations.
ModelFile read_model_file(const std::filesystem::path& path);

nlohmann::json model_to_json(const Hamiltonian& h, std::optional<double> beta);
Hamiltonian model_from_json(const nlohmann::json& j);
Lattice2D lattice_from_json(const nlohmann::json& j);

/// Plan files: rotation gates as {"target", "controls", "angles"}, block
/// gates as {"targets", "controls", "amplitudes"}. Doubles round-trip
/// bit-exactly through the JSON layer.
nlohmann::json plan_to_json(const PreparationPlan& plan);
PreparationPlan plan_from_json(const nlohmann::json& j);
PreparationPlan read_plan_file(const std::filesystem::path& path);

nlohmann::json report_to_json(const VerificationReport& report, int n_spins);

/// Binary state dump: 8-byte little-endian qubit count, then 2^n
/// little-endian float64 (re, im) pairs.
void write_state_binary(const Statevector& state,
                        const std::filesystem::path& path);
Statevector read_state_binary(const std::filesystem::path& path);

/// Debug dump, n <= 10 only.
nlohmann::json state_to_json(const Statevector& state);

} // namespace cets
