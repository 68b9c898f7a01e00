#pragma once

#include <optional>
#include <string>

#include "cets/block_bp.hpp"
#include "cets/io.hpp"
#include "cets/plan.hpp"

namespace cets {

enum class Builder { kAuto, kTriangle, kTetrahedron, kNnnChain, kBlocks, kLattice2d };

std::optional<Builder> builder_from_name(const std::string& name);

/// Decomposition of a term-list model into chain arrays. Fails (TopologyError)
/// if any term has arity > 2 or site span > 2.
struct ChainArrays {
    std::vector<double> j, l, h;
};
ChainArrays chain_arrays_from_hamiltonian(const Hamiltonian& h);

/// Extracts the uniform coupling if `h` is exactly the 3-cycle (or the
/// 6-bond tetrahedron); TopologyError otherwise.
double triangle_coupling(const Hamiltonian& h);
double tetrahedron_coupling(const Hamiltonian& h);

struct BuildOptions {
    int block_size = 0;      // 0: derive from the model's max term span
    int max_lattice_n = 4;
};

/// Dispatches a parsed model to a planner. kAuto picks the chain planner for
/// 2-local models of span <= 2 with at least 3 spins, the lattice planner
/// for lattice files, and consecutive blocking otherwise.
PreparationPlan build_plan(const ModelFile& model, Builder builder, double beta,
                           const BuildOptions& options = {});

/// Oracle Hamiltonian for whatever the model file describes.
Hamiltonian model_hamiltonian(const ModelFile& model);

} // namespace cets
