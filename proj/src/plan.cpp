#include "cets/plan.hpp"

#include <stdexcept>
#include <string>

namespace cets {

namespace {

void check_controls(const std::vector<int>& controls, int prepared,
                    std::size_t table_entries) {
    for (int c : controls)
        if (c < 0 || c >= prepared)
            throw std::invalid_argument(
                "gate control " + std::to_string(c) +
                " is not among the previously prepared spins");
    if (table_entries != (std::size_t{1} << controls.size()))
        throw std::invalid_argument(
            "gate table must have one entry per control configuration");
}

} // namespace

void validate_plan(const PreparationPlan& plan) {
    if (plan.n_spins < 1)
        throw std::invalid_argument("plan must cover at least one spin");
    int prepared = 0;
    for (const auto& gate : plan.gates) {
        if (const auto* rot = std::get_if<RotationGate>(&gate)) {
            if (rot->target != prepared)
                throw std::invalid_argument(
                    "rotation gates must target spins sequentially");
            check_controls(rot->controls, prepared, rot->angles.size());
            prepared += 1;
        } else {
            const auto& block = std::get<BlockRotationGate>(gate);
            if (block.targets.empty())
                throw std::invalid_argument("block gate with no targets");
            for (std::size_t k = 0; k < block.targets.size(); ++k)
                if (block.targets[k] != prepared + static_cast<int>(k))
                    throw std::invalid_argument(
                        "block gates must target consecutive fresh spins");
            check_controls(block.controls, prepared, block.amplitudes.size());
            const std::size_t dim = std::size_t{1} << block.targets.size();
            for (const auto& column : block.amplitudes)
                if (column.size() != dim)
                    throw std::invalid_argument(
                        "block gate column size must be 2^|targets|");
            prepared += static_cast<int>(block.targets.size());
        }
    }
    if (prepared != plan.n_spins)
        throw std::invalid_argument("plan gates cover " +
                                    std::to_string(prepared) + " spins, not " +
                                    std::to_string(plan.n_spins));
}

} // namespace cets
