#pragma once

#include <cstdint>
#include <vector>

#include "cets/plan.hpp"
#include "cets/spin_model.hpp"

namespace cets {

constexpr int kMaxBlockSpins = 12;

/// One group of z spins in a chain-of-blocks decomposition.
/// `internal` is a Hamiltonian over the block's local spins (site k of
/// `internal` is indices[k]); `inter` couples this block to the previous
/// one, with sites given as global spin indices.
struct SpinBlock {
    std::vector<int> indices; // global spin indices, ascending
    Hamiltonian internal;
    std::vector<CouplingTerm> inter;
};

/// Backward messages, stored as logs: one entry per block configuration.
/// The last block's table is identically zero (gamma = 1).
struct GammaTable {
    std::vector<double> log_values;
};

/// Work counters for the belief-propagation pass (scaling checks).
struct BpWorkStats {
    std::uint64_t gamma_entries = 0; // table entries written
    std::uint64_t sum_terms = 0;     // exp terms accumulated across entries
};

/// gamma_s = sum_t gamma_t e^{-beta (H_t + H_st)}, computed last block to
/// first with log-sum-exp. Throws ResourceLimitError for blocks wider than
/// kMaxBlockSpins.
std::vector<GammaTable> gamma_backward(const std::vector<SpinBlock>& blocks,
                                       double beta,
                                       BpWorkStats* stats = nullptr);

/// Assembles the plan: the first block is seeded with amplitudes
/// proportional to sqrt(e^{-beta H_s} gamma_s) (the normalization enters
/// log_lambda_total), and each later block becomes a controlled isometry
/// with column entries sqrt(e^{-beta (H_t + H_st)} gamma_t / gamma_s).
/// Columns off unit norm by more than 1e-8 (a gamma inconsistency) throw
/// ConsistencyError; otherwise they are normalized exactly.
PreparationPlan block_rotation_plan(const std::vector<SpinBlock>& blocks,
                                    const std::vector<GammaTable>& gammas,
                                    double beta);

/// Chops spins [0, n) into consecutive blocks of `block_size` and sorts the
/// Hamiltonian's terms into internal/inter lists. Terms touching more than
/// two blocks, or two non-adjacent ones, throw TopologyError.
std::vector<SpinBlock> make_blocks(const Hamiltonian& h, int block_size);

/// N x N square lattice with open boundaries, row-major from the bottom row,
/// spin (r, c) at index r*N + c.
struct Lattice2D {
    int n = 0;
    std::vector<std::vector<double>> row_couplings; // [r][c]: (r,c)-(r,c+1)
    std::vector<std::vector<double>> col_couplings; // [r][c]: (r,c)-(r+1,c)
    std::vector<std::vector<double>> fields;        // [r][c]

    Hamiltonian to_hamiltonian() const;
};

/// Row-by-row planner: each row is one block of z = N spins. N beyond
/// `max_n` throws ResourceLimitError.
PreparationPlan lattice2d_plan(const Lattice2D& lattice, double beta,
                               int max_n = 4);

} // namespace cets
