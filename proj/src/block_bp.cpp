#include "cets/block_bp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cets/errors.hpp"
#include "cets/logspace.hpp"

namespace cets {
namespace {

void check_beta(double beta) {
    if (!std::isfinite(beta) || beta < 0.0)
        throw std::invalid_argument("beta must be finite and >= 0");
}

int local_index(const SpinBlock& block, int global_site) {
    const auto it = std::lower_bound(block.indices.begin(), block.indices.end(),
                                     global_site);
    if (it == block.indices.end() || *it != global_site) return -1;
    return static_cast<int>(it - block.indices.begin());
}

/// Inter-block term with sites split into masks over the previous and the
/// current block's local bit positions.
struct InterPacked {
    std::uint32_t prev_mask = 0;
    std::uint32_t cur_mask = 0;
    double coupling = 0.0;
};

std::vector<InterPacked> pack_inter(const SpinBlock& prev,
                                    const SpinBlock& cur) {
    std::vector<InterPacked> packed;
    packed.reserve(cur.inter.size());
    for (const CouplingTerm& term : cur.inter) {
        InterPacked p;
        p.coupling = term.coupling;
        for (int site : term.sites) {
            if (int k = local_index(cur, site); k >= 0) {
                p.cur_mask |= 1u << k;
            } else if (int q = local_index(prev, site); q >= 0) {
                p.prev_mask |= 1u << q;
            } else {
                throw TopologyError("inter-block term site " +
                                    std::to_string(site) +
                                    " outside the two adjacent blocks");
            }
        }
        packed.push_back(p);
    }
    return packed;
}

double inter_energy(const std::vector<InterPacked>& packed, SpinConfig s_prev,
                    SpinConfig t_cur) {
    double e = 0.0;
    for (const InterPacked& p : packed)
        e += p.coupling * product_sign(s_prev, p.prev_mask) *
             product_sign(t_cur, p.cur_mask);
    return e;
}

std::size_t block_dim(const SpinBlock& block) {
    const std::size_t z = block.indices.size();
    if (z == 0 || z > static_cast<std::size_t>(kMaxBlockSpins))
        throw ResourceLimitError("block width " + std::to_string(z) +
                                 " outside [1, " +
                                 std::to_string(kMaxBlockSpins) + "]");
    return std::size_t{1} << z;
}

} // namespace

std::vector<GammaTable> gamma_backward(const std::vector<SpinBlock>& blocks,
                                       double beta, BpWorkStats* stats) {
    check_beta(beta);
    if (blocks.empty()) throw std::invalid_argument("no blocks");
    const std::size_t n_blocks = blocks.size();

    std::vector<GammaTable> gammas(n_blocks);
    gammas[n_blocks - 1].log_values.assign(block_dim(blocks[n_blocks - 1]),
                                           0.0);
    if (stats) stats->gamma_entries += block_dim(blocks[n_blocks - 1]);

    for (std::size_t k = n_blocks - 1; k-- > 0;) {
        const std::size_t dim = block_dim(blocks[k]);
        const std::size_t dim_next = block_dim(blocks[k + 1]);
        const auto packed = pack_inter(blocks[k], blocks[k + 1]);

        // -beta * internal energy of the next block, reused for every s
        std::vector<double> base(dim_next);
        for (std::size_t t = 0; t < dim_next; ++t)
            base[t] = gammas[k + 1].log_values[t] -
                      beta * blocks[k + 1].internal.energy(
                                 static_cast<SpinConfig>(t));

        gammas[k].log_values.resize(dim);
        std::vector<double> terms(dim_next);
        for (std::size_t s = 0; s < dim; ++s) {
            for (std::size_t t = 0; t < dim_next; ++t)
                terms[t] = base[t] -
                           beta * inter_energy(packed,
                                               static_cast<SpinConfig>(s),
                                               static_cast<SpinConfig>(t));
            gammas[k].log_values[s] = log_sum_exp(terms);
        }
        if (stats) {
            stats->gamma_entries += dim;
            stats->sum_terms += dim * dim_next;
        }
    }
    return gammas;
}

PreparationPlan block_rotation_plan(const std::vector<SpinBlock>& blocks,
                                    const std::vector<GammaTable>& gammas,
                                    double beta) {
    check_beta(beta);
    if (blocks.empty() || gammas.size() != blocks.size())
        throw std::invalid_argument("blocks and gamma tables must align");

    PreparationPlan plan;
    for (const SpinBlock& block : blocks)
        plan.n_spins += static_cast<int>(block.indices.size());

    // Seed block: amplitudes proportional to sqrt(e^{-beta H} gamma); the
    // normalization is ln Z of the whole model.
    {
        const std::size_t dim = block_dim(blocks[0]);
        std::vector<double> log_w(dim);
        for (std::size_t s = 0; s < dim; ++s)
            log_w[s] = gammas[0].log_values[s] -
                       beta * blocks[0].internal.energy(
                                  static_cast<SpinConfig>(s));
        const double log_z = log_sum_exp(log_w);
        plan.log_lambda_total = log_z;

        BlockRotationGate gate;
        gate.targets = blocks[0].indices;
        gate.amplitudes.resize(1);
        auto& column = gate.amplitudes[0];
        column.resize(dim);
        double norm2 = 0.0;
        for (std::size_t s = 0; s < dim; ++s) {
            column[s] = std::exp(0.5 * (log_w[s] - log_z));
            norm2 += column[s] * column[s];
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (double& a : column) a *= inv;
        plan.gates.emplace_back(std::move(gate));
    }

    for (std::size_t k = 1; k < blocks.size(); ++k) {
        const std::size_t dim_prev = block_dim(blocks[k - 1]);
        const std::size_t dim = block_dim(blocks[k]);
        const auto packed = pack_inter(blocks[k - 1], blocks[k]);

        BlockRotationGate gate;
        gate.targets = blocks[k].indices;
        gate.controls = blocks[k - 1].indices;
        gate.amplitudes.assign(dim_prev, std::vector<double>(dim));

        for (std::size_t s = 0; s < dim_prev; ++s) {
            auto& column = gate.amplitudes[s];
            double norm2 = 0.0;
            for (std::size_t t = 0; t < dim; ++t) {
                const double log_a =
                    0.5 * (gammas[k].log_values[t] -
                           beta * (blocks[k].internal.energy(
                                       static_cast<SpinConfig>(t)) +
                                   inter_energy(packed,
                                                static_cast<SpinConfig>(s),
                                                static_cast<SpinConfig>(t))) -
                           gammas[k - 1].log_values[s]);
                column[t] = std::exp(log_a);
                norm2 += column[t] * column[t];
            }
            // Unit norm is guaranteed by the backward recursion; a real
            // mismatch means the tables don't belong to these blocks.
            if (std::abs(norm2 - 1.0) > 1e-8)
                throw ConsistencyError(
                    "isometry column norm off by " +
                    std::to_string(std::abs(norm2 - 1.0)) + " at block " +
                    std::to_string(k));
            const double inv = 1.0 / std::sqrt(norm2);
            for (double& a : column) a *= inv;
        }
        plan.gates.emplace_back(std::move(gate));
    }
    return plan;
}

std::vector<SpinBlock> make_blocks(const Hamiltonian& h, int block_size) {
    if (block_size < 1) throw std::invalid_argument("block size must be >= 1");
    if (block_size > kMaxBlockSpins)
        throw ResourceLimitError("block size " + std::to_string(block_size) +
                                 " exceeds " + std::to_string(kMaxBlockSpins));
    const int n = h.n_spins();
    const int n_blocks = (n + block_size - 1) / block_size;

    std::vector<std::vector<CouplingTerm>> internal(n_blocks);
    std::vector<std::vector<CouplingTerm>> inter(n_blocks);
    for (const CouplingTerm& term : h.terms()) {
        const int first = term.sites.front() / block_size;
        const int last = term.sites.back() / block_size;
        if (last - first > 1)
            throw TopologyError(
                "term spans blocks " + std::to_string(first) + ".." +
                std::to_string(last) + "; widen the block size");
        if (first == last) {
            CouplingTerm local = term;
            for (int& site : local.sites) site -= first * block_size;
            internal[first].push_back(std::move(local));
        } else {
            inter[last].push_back(term); // keeps global site indices
        }
    }

    std::vector<SpinBlock> blocks;
    blocks.reserve(static_cast<std::size_t>(n_blocks));
    for (int b = 0; b < n_blocks; ++b) {
        const int lo = b * block_size;
        const int hi = std::min(n, lo + block_size);
        SpinBlock block{.indices = {},
                        .internal = Hamiltonian(hi - lo,
                                                std::move(internal[b])),
                        .inter = std::move(inter[b])};
        block.indices.resize(static_cast<std::size_t>(hi - lo));
        for (int i = lo; i < hi; ++i)
            block.indices[static_cast<std::size_t>(i - lo)] = i;
        blocks.push_back(std::move(block));
    }
    return blocks;
}

Hamiltonian Lattice2D::to_hamiltonian() const {
    if (n < 1) throw std::invalid_argument("lattice needs n >= 1");
    const auto shape_ok = [&](const auto& grid, int rows, int cols) {
        if (static_cast<int>(grid.size()) != rows) return false;
        for (const auto& row : grid)
            if (static_cast<int>(row.size()) != cols) return false;
        return true;
    };
    if (!shape_ok(fields, n, n) || !shape_ok(row_couplings, n, n - 1) ||
        !shape_ok(col_couplings, n - 1, n))
        throw std::invalid_argument("lattice array shapes do not match n");

    const auto site = [&](int r, int c) { return r * n + c; };
    std::vector<CouplingTerm> terms;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c + 1 < n; ++c)
            if (row_couplings[r][c] != 0.0)
                terms.push_back({{site(r, c), site(r, c + 1)},
                                 row_couplings[r][c]});
    for (int r = 0; r + 1 < n; ++r)
        for (int c = 0; c < n; ++c)
            if (col_couplings[r][c] != 0.0)
                terms.push_back({{site(r, c), site(r + 1, c)},
                                 col_couplings[r][c]});
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (fields[r][c] != 0.0)
                terms.push_back({{site(r, c)}, fields[r][c]});
    return Hamiltonian(n * n, std::move(terms));
}

PreparationPlan lattice2d_plan(const Lattice2D& lattice, double beta,
                               int max_n) {
    if (lattice.n > max_n)
        throw ResourceLimitError("lattice side " + std::to_string(lattice.n) +
                                 " exceeds the configured cap " +
                                 std::to_string(max_n));
    const Hamiltonian h = lattice.to_hamiltonian();
    const auto blocks = make_blocks(h, lattice.n);
    const auto gammas = gamma_backward(blocks, beta);
    return block_rotation_plan(blocks, gammas, beta);
}

} // namespace cets
