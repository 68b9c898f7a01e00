#include "cets/builders.hpp"

#include <algorithm>
#include <stdexcept>

#include "cets/errors.hpp"
#include "cets/renorm.hpp"

namespace cets {
namespace {

/// Uniform coupling of the complete graph on n spins; TopologyError if the
/// model is anything else.
double uniform_clique_coupling(const Hamiltonian& h, int n) {
    const std::size_t expected = static_cast<std::size_t>(n * (n - 1) / 2);
    if (h.terms().size() != expected)
        throw TopologyError("expected the " + std::to_string(expected) +
                            " bonds of a complete " + std::to_string(n) +
                            "-spin graph");
    std::vector<bool> seen(expected, false);
    const double coupling = h.terms().front().coupling;
    for (const CouplingTerm& t : h.terms()) {
        if (t.sites.size() != 2)
            throw TopologyError("clique models take pair couplings only");
        const int a = t.sites[0], b = t.sites[1];
        const std::size_t slot =
            static_cast<std::size_t>(b * (b - 1) / 2 + a);
        if (seen[slot]) throw TopologyError("duplicate bond");
        seen[slot] = true;
        if (t.coupling != coupling)
            throw TopologyError("clique couplings must all be equal");
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool s) { return s; }))
        throw TopologyError("missing clique bond");
    return coupling;
}

int derived_block_size(const Hamiltonian& h) {
    return std::max(h.max_site_span(), 1);
}

PreparationPlan blocks_plan(const Hamiltonian& h, double beta,
                            int block_size) {
    const int z = block_size > 0 ? block_size : derived_block_size(h);
    const auto blocks = make_blocks(h, z);
    const auto gammas = gamma_backward(blocks, beta);
    return block_rotation_plan(blocks, gammas, beta);
}

bool chain_shaped(const Hamiltonian& h) {
    return h.n_spins() >= 3 && h.max_arity() <= 2 && h.max_site_span() <= 2;
}

} // namespace

std::optional<Builder> builder_from_name(const std::string& name) {
    if (name == "auto") return Builder::kAuto;
    if (name == "triangle") return Builder::kTriangle;
    if (name == "tetrahedron") return Builder::kTetrahedron;
    if (name == "nnn-chain") return Builder::kNnnChain;
    if (name == "blocks") return Builder::kBlocks;
    if (name == "lattice2d") return Builder::kLattice2d;
    return std::nullopt;
}

ChainArrays chain_arrays_from_hamiltonian(const Hamiltonian& h) {
    const int n = h.n_spins();
    ChainArrays arrays;
    arrays.j.assign(n > 1 ? static_cast<std::size_t>(n - 1) : 0, 0.0);
    arrays.l.assign(n > 2 ? static_cast<std::size_t>(n - 2) : 0, 0.0);
    arrays.h.assign(static_cast<std::size_t>(n), 0.0);
    for (const CouplingTerm& t : h.terms()) {
        if (t.sites.size() == 1) {
            arrays.h[static_cast<std::size_t>(t.sites[0])] += t.coupling;
        } else if (t.sites.size() == 2) {
            const int span = t.sites[1] - t.sites[0];
            const auto lo = static_cast<std::size_t>(t.sites[0]);
            if (span == 1)
                arrays.j[lo] += t.coupling;
            else if (span == 2)
                arrays.l[lo] += t.coupling;
            else
                throw TopologyError("bond span " + std::to_string(span) +
                                    " is beyond next-nearest neighbors");
        } else {
            throw TopologyError("chain models take fields and pair bonds only");
        }
    }
    return arrays;
}

double triangle_coupling(const Hamiltonian& h) {
    if (h.n_spins() != 3)
        throw TopologyError("triangle builder needs exactly 3 spins");
    return uniform_clique_coupling(h, 3);
}

double tetrahedron_coupling(const Hamiltonian& h) {
    if (h.n_spins() != 4)
        throw TopologyError("tetrahedron builder needs exactly 4 spins");
    return uniform_clique_coupling(h, 4);
}

PreparationPlan build_plan(const ModelFile& model, Builder builder,
                           double beta, const BuildOptions& options) {
    if (model.lattice) {
        if (builder != Builder::kAuto && builder != Builder::kLattice2d)
            throw TopologyError("lattice files only fit the lattice2d builder");
        return lattice2d_plan(*model.lattice, beta, options.max_lattice_n);
    }
    if (!model.hamiltonian)
        throw std::invalid_argument("model file holds no Hamiltonian");
    const Hamiltonian& h = *model.hamiltonian;

    switch (builder) {
    case Builder::kTriangle:
        return triangle_plan(triangle_coupling(h), beta);
    case Builder::kTetrahedron:
        return tetrahedron_plan(tetrahedron_coupling(h), beta);
    case Builder::kNnnChain: {
        if (h.n_spins() < 3)
            throw TopologyError("chain planner needs at least 3 spins");
        const ChainArrays arrays = chain_arrays_from_hamiltonian(h);
        return nnn_chain_plan(arrays.j, arrays.l, arrays.h, beta);
    }
    case Builder::kBlocks:
        return blocks_plan(h, beta, options.block_size);
    case Builder::kLattice2d:
        throw TopologyError("lattice2d builder needs a lattice model file");
    case Builder::kAuto:
        break;
    }
    if (chain_shaped(h)) {
        const ChainArrays arrays = chain_arrays_from_hamiltonian(h);
        return nnn_chain_plan(arrays.j, arrays.l, arrays.h, beta);
    }
    return blocks_plan(h, beta, options.block_size);
}

Hamiltonian model_hamiltonian(const ModelFile& model) {
    if (model.hamiltonian) return *model.hamiltonian;
    if (model.lattice) return model.lattice->to_hamiltonian();
    throw std::invalid_argument("empty model file");
}

} // namespace cets
