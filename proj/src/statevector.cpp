#include "cets/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

#include "cets/errors.hpp"

namespace cets {

namespace {

constexpr double kFreshMassTol = 1e-10;

std::uint64_t control_config(std::uint64_t idx, const std::vector<int>& controls) {
    std::uint64_t cfg = 0;
    for (std::size_t k = 0; k < controls.size(); ++k)
        cfg |= ((idx >> controls[k]) & 1u) << k;
    return cfg;
}

void require_fresh(const Statevector& state, int qubit) {
    if (state.mass_on_one(qubit) > kFreshMassTol)
        throw ConsistencyError("gate target qubit " + std::to_string(qubit) +
                               " is not in |0>");
}

} // namespace

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw ResourceLimitError("statevector supports 1.." +
                                 std::to_string(kMaxQubits) + " qubits");
    amps_.assign(std::uint64_t{1} << n_qubits, {0.0, 0.0});
    amps_[0] = {1.0, 0.0};
}

Statevector Statevector::from_amplitudes(std::vector<std::complex<double>> amps) {
    if (amps.empty() || !std::has_single_bit(amps.size()))
        throw std::invalid_argument("amplitude count must be a power of two");
    const int n = std::countr_zero(amps.size());
    if (n < 1 || n > kMaxQubits)
        throw ResourceLimitError("statevector supports 1.." +
                                 std::to_string(kMaxQubits) + " qubits");
    Statevector state(n);
    state.amps_ = std::move(amps);
    return state;
}

double Statevector::norm() const {
    double acc = 0.0;
    for (const auto& a : amps_) acc += std::norm(a);
    return std::sqrt(acc);
}

double Statevector::mass_on_one(int qubit) const {
    if (qubit < 0 || qubit >= n_qubits_)
        throw std::invalid_argument("qubit index out of range");
    double acc = 0.0;
    for (std::uint64_t idx = 0; idx < size(); ++idx)
        if ((idx >> qubit) & 1u) acc += std::norm(amps_[idx]);
    return acc;
}

std::vector<double> Statevector::probabilities() const {
    std::vector<double> probs(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) probs[i] = std::norm(amps_[i]);
    return probs;
}

void Statevector::apply_rotation(const RotationGate& gate) {
    if (gate.target < 0 || gate.target >= n_qubits_)
        throw std::invalid_argument("rotation target out of range");
    if (gate.angles.size() != (std::size_t{1} << gate.controls.size()))
        throw std::invalid_argument("angle table size mismatch");
    require_fresh(*this, gate.target);

    const std::uint64_t target_bit = std::uint64_t{1} << gate.target;
    for (std::uint64_t idx = 0; idx < size(); ++idx) {
        if (idx & target_bit) continue;
        const double theta = gate.angles[control_config(idx, gate.controls)];
        const double c = std::cos(theta), s = std::sin(theta);
        const auto a0 = amps_[idx];
        const auto a1 = amps_[idx | target_bit];
        amps_[idx] = c * a0 - s * a1;
        amps_[idx | target_bit] = s * a0 + c * a1;
    }
}

void Statevector::apply_block_rotation(const BlockRotationGate& gate) {
    if (gate.amplitudes.size() != (std::size_t{1} << gate.controls.size()))
        throw std::invalid_argument("amplitude table size mismatch");
    const std::size_t dim = std::size_t{1} << gate.targets.size();
    std::uint64_t target_mask = 0;
    for (int q : gate.targets) {
        if (q < 0 || q >= n_qubits_)
            throw std::invalid_argument("block target out of range");
        require_fresh(*this, q);
        target_mask |= std::uint64_t{1} << q;
    }
    for (const auto& column : gate.amplitudes)
        if (column.size() != dim)
            throw std::invalid_argument("block column size mismatch");

    for (std::uint64_t idx = 0; idx < size(); ++idx) {
        if (idx & target_mask) continue;
        const auto& column = gate.amplitudes[control_config(idx, gate.controls)];
        const auto a = amps_[idx];
        for (std::size_t t = dim; t-- > 0;) {
            std::uint64_t out = idx;
            for (std::size_t k = 0; k < gate.targets.size(); ++k)
                out |= ((t >> k) & 1u) << gate.targets[k];
            amps_[out] = column[t] * a; // t = 0 writes idx itself, so last
        }
    }
}

Statevector run(const PreparationPlan& plan) {
    validate_plan(plan);
    Statevector state(plan.n_spins);
    for (const auto& gate : plan.gates)
        std::visit([&](const auto& g) {
            if constexpr (std::is_same_v<std::decay_t<decltype(g)>, RotationGate>)
                state.apply_rotation(g);
            else
                state.apply_block_rotation(g);
        }, gate);
    return state;
}

Statevector purify_copy(const Statevector& state) {
    const int n = state.n_qubits();
    if (2 * n > Statevector::kMaxQubits)
        throw ResourceLimitError("purified register would exceed " +
                                 std::to_string(Statevector::kMaxQubits) +
                                 " qubits");
    std::vector<std::complex<double>> amps(std::uint64_t{1} << (2 * n));
    for (std::uint64_t s = 0; s < state.size(); ++s)
        amps[s | (s << n)] = state.amplitude(s);
    return Statevector::from_amplitudes(std::move(amps));
}

std::vector<SpinConfig> sample(const Statevector& state, std::size_t n_samples,
                               std::uint64_t seed) {
    std::vector<double> cdf(state.size());
    double acc = 0.0;
    for (std::uint64_t s = 0; s < state.size(); ++s) {
        acc += std::norm(state.amplitude(s));
        cdf[s] = acc;
    }
    const double total = acc;

    std::mt19937_64 rng(seed);
    std::vector<SpinConfig> draws(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        // top 53 bits -> uniform in [0, 1); avoids the unspecified
        // std::uniform_real_distribution mapping
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        draws[i] = static_cast<SpinConfig>(
            std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1));
    }
    return draws;
}

} // namespace cets
