#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "cets/plan.hpp"
#include "cets/spin_config.hpp"

namespace cets {

/// Dense statevector over n <= 26 qubits, basis indexed little-endian
/// (qubit 0 is the least significant bit).
class Statevector {
public:
    static constexpr int kMaxQubits = 26;

    /// |0...0>
    explicit Statevector(int n_qubits);

    /// Takes ownership of a full amplitude vector (size must be a power of
    /// two, at most 2^26). No normalization is applied.
    static Statevector from_amplitudes(std::vector<std::complex<double>> amps);

    int n_qubits() const { return n_qubits_; }
    std::uint64_t size() const { return static_cast<std::uint64_t>(amps_.size()); }
    const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
    std::complex<double> amplitude(std::uint64_t idx) const { return amps_[idx]; }

    double norm() const;

    /// Probability mass on the subspace where `qubit` reads 1. Used to probe
    /// the fresh-qubit precondition before a gate.
    double mass_on_one(int qubit) const;

    std::vector<double> probabilities() const;

    /// Y-rotation block [cos, -sin; sin, cos] on the target, angle chosen per
    /// control configuration. The target must be fresh: mass on target=1
    /// above 1e-10 throws ConsistencyError.
    void apply_rotation(const RotationGate& gate);

    /// Controlled isometry onto a group of fresh target qubits.
    void apply_block_rotation(const BlockRotationGate& gate);

private:
    int n_qubits_;
    std::vector<std::complex<double>> amps_;
};

/// Executes the plan from |0...0> and returns the final state.
Statevector run(const PreparationPlan& plan);

/// Bit-by-bit CNOT copy onto n fresh ancillas: |s> -> |s>|s>. Tracing the
/// ancillas of the result yields the diagonal (classical) mixed state.
Statevector purify_copy(const Statevector& state);

/// i.i.d. computational-basis samples from |amplitude|^2. Inverse-CDF over
/// the probability table; the generator is mt19937_64 seeded with `seed` and
/// uniforms are built from the top 53 bits, so the sequence is reproducible
/// across runs and platforms.
std::vector<SpinConfig> sample(const Statevector& state, std::size_t n_samples,
                               std::uint64_t seed);

} // namespace cets
