#include "cets/spin_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "cets/errors.hpp"
#include "cets/logspace.hpp"

namespace cets {

Hamiltonian::Hamiltonian(int n_spins, std::vector<CouplingTerm> terms)
    : n_spins_(n_spins), terms_(std::move(terms)) {
    if (n_spins < 1 || n_spins > kMaxSpins)
        throw std::invalid_argument("n_spins must be in [1, " +
                                    std::to_string(kMaxSpins) + "]");
    std::set<std::vector<int>> seen;
    packed_.reserve(terms_.size());
    for (const auto& term : terms_) {
        if (term.sites.empty())
            throw std::invalid_argument("coupling term with no sites");
        std::uint32_t mask = 0;
        int prev = -1;
        for (int site : term.sites) {
            if (site < 0 || site >= n_spins_)
                throw std::invalid_argument("site index out of range");
            if (site <= prev)
                throw std::invalid_argument(
                    "term sites must be strictly increasing");
            prev = site;
            mask |= 1u << site;
        }
        if (!seen.insert(term.sites).second)
            throw std::invalid_argument("duplicate term for the same site set");
        packed_.emplace_back(mask, term.coupling);
    }
}

double Hamiltonian::energy(SpinConfig s) const {
    if (n_spins_ < 32 && (s >> n_spins_) != 0)
        throw std::invalid_argument("configuration wider than n_spins");
    double e = 0.0;
    for (const auto& [mask, coupling] : packed_)
        e += coupling * product_sign(s, mask);
    return e;
}

int Hamiltonian::max_site_span() const {
    int span = 0;
    for (const auto& term : terms_)
        span = std::max(span, term.sites.back() - term.sites.front());
    return span;
}

int Hamiltonian::max_arity() const {
    std::size_t arity = 0;
    for (const auto& term : terms_) arity = std::max(arity, term.sites.size());
    return static_cast<int>(arity);
}

namespace {

void check_oracle_limits(const Hamiltonian& h, double beta) {
    if (h.n_spins() > kMaxOracleSpins)
        throw ResourceLimitError("enumeration oracle capped at " +
                                 std::to_string(kMaxOracleSpins) + " spins");
    if (!std::isfinite(beta) || beta < 0.0)
        throw std::invalid_argument("beta must be finite and >= 0");
}

} // namespace

GibbsTable gibbs_table(const Hamiltonian& h, double beta) {
    check_oracle_limits(h, beta);
    const std::size_t count = std::size_t{1} << h.n_spins();
    std::vector<double> log_w(count);
    for (std::size_t s = 0; s < count; ++s)
        log_w[s] = -beta * h.energy(static_cast<SpinConfig>(s));

    GibbsTable table;
    table.beta = beta;
    table.log_z = log_sum_exp(log_w);
    table.probs.resize(count);
    // Kahan-compensated total, then one exact normalizing division.
    double sum = 0.0, comp = 0.0;
    for (std::size_t s = 0; s < count; ++s) {
        table.probs[s] = std::exp(log_w[s] - table.log_z);
        double y = table.probs[s] - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    for (double& p : table.probs) p /= sum;
    return table;
}

Statevector exact_cets(const Hamiltonian& h, double beta) {
    GibbsTable table = gibbs_table(h, beta);
    std::vector<std::complex<double>> amps(table.probs.size());
    for (std::size_t s = 0; s < amps.size(); ++s)
        amps[s] = std::sqrt(table.probs[s]);
    return Statevector::from_amplitudes(std::move(amps));
}

} // namespace cets
