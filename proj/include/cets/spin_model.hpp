#pragma once

#include <cstdint>
#include <vector>

#include "cets/spin_config.hpp"
#include "cets/statevector.hpp"

namespace cets {

/// One k-local term: coupling * prod_{i in sites} sigma_i.
struct CouplingTerm {
    std::vector<int> sites; // strictly increasing, arity 1..N
    double coupling = 0.0;
};

/// Generalized Ising Hamiltonian: fields, pair couplings, and higher-order
/// products over N classical spins. Immutable after construction.
class Hamiltonian {
public:
    /// Validates site ordering/range and rejects duplicate site sets.
    Hamiltonian(int n_spins, std::vector<CouplingTerm> terms);

    int n_spins() const { return n_spins_; }
    const std::vector<CouplingTerm>& terms() const { return terms_; }

    /// H(s) = sum_t coupling_t * prod sigma, sigma = 1 - 2*bit.
    /// Throws std::invalid_argument if s has bits beyond n_spins.
    double energy(SpinConfig s) const;

    /// Largest (max site - min site) over terms; 0 for field-only models.
    int max_site_span() const;
    int max_arity() const;

private:
    int n_spins_;
    std::vector<CouplingTerm> terms_;
    std::vector<std::pair<std::uint32_t, double>> packed_; // site mask, coupling
};

/// Exact Gibbs distribution from full enumeration.
struct GibbsTable {
    double beta = 0.0;
    std::vector<double> probs; // 2^N entries, sums to 1
    double log_z = 0.0;
};

/// Brute-force oracle: enumerates all 2^N configurations with log-domain
/// accumulation. Requires n_spins <= 20 (ResourceLimitError beyond) and
/// finite beta >= 0.
GibbsTable gibbs_table(const Hamiltonian& h, double beta);

/// The exact target state: amplitude[s] = sqrt(gibbs probability), all real
/// and nonnegative. Same limits as gibbs_table.
Statevector exact_cets(const Hamiltonian& h, double beta);

} // namespace cets
