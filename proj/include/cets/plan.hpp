#pragma once

#include <cstdint>
#include <variant>
#include <vector>

namespace cets {

/// Rotation angles indexed by control configuration, little-endian over the
/// gate's control list (bit k of the index is the k-th listed control).
using AngleTable = std::vector<double>;

/// Single-qubit Y rotation on a fresh |0> qubit, with the angle selected by
/// the classical configuration of the control qubits.
struct RotationGate {
    int target = 0;
    std::vector<int> controls; // populated earlier in the plan
    AngleTable angles;         // 2^|controls| entries, theta in [0, pi/2]
};

/// Controlled isometry preparing a whole group of fresh qubits at once.
/// For control configuration s, column amplitudes[s] is the unit vector of
/// nonnegative amplitudes over the 2^z target configurations.
struct BlockRotationGate {
    std::vector<int> targets;
    std::vector<int> controls;
    std::vector<std::vector<double>> amplitudes; // [control cfg][target cfg]
};

using PlanGate = std::variant<RotationGate, BlockRotationGate>;

/// Ordered gate list produced by the planners. Qubits are introduced
/// sequentially: gate k acts on the next unprepared spin(s), controlled only
/// by spins already prepared. log_lambda_total accumulates ln(Lambda) per
/// gate plus the seed normalization, and equals ln Z of the target model.
struct PreparationPlan {
    int n_spins = 0;
    std::vector<PlanGate> gates;
    double log_lambda_total = 0.0;
};

/// Structural checks: sequential targets covering [0, n_spins), controls
/// within the already-prepared prefix, table sizes matching control counts.
/// Throws std::invalid_argument. Does not inspect numeric values.
void validate_plan(const PreparationPlan& plan);

} // namespace cets
