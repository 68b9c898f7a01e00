#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cets/plan.hpp"
#include "cets/spin_model.hpp"
#include "cets/statevector.hpp"

namespace cets {

/// |<a|b>|^2. Requires equal qubit counts.
double fidelity(const Statevector& a, const Statevector& b);

/// (1/2) sum_s |freq(s) - probs[s]| between empirical frequencies and the
/// exact table. Samples must be non-empty.
double tv_distance(const std::vector<SpinConfig>& samples,
                   const GibbsTable& gibbs);

struct VerifyOptions {
    double tol_fidelity = 1e-9;
    double tol_log_z = 1e-9;
    // When set, also draw samples and report the TV distance to the oracle.
    std::optional<std::size_t> n_samples;
    std::uint64_t seed = 0;
};

struct VerificationReport {
    double fidelity = 0.0;
    double log_z_plan = 0.0;
    double log_z_oracle = 0.0;
    double max_amp_abs_err = 0.0;
    std::optional<double> tv_distance;
    double tol_fidelity = 0.0;
    double tol_log_z = 0.0;
    bool pass = false;

    /// pass <=> (1 - fidelity <= tol_f) and
    ///          |dlogZ| <= tol_z * max(1, |log_z_oracle|).
    /// Re-derivable from the recorded fields.
    static bool evaluate(double fidelity, double log_z_plan,
                         double log_z_oracle, double tol_fidelity,
                         double tol_log_z);
};

/// Runs the plan, compares against the brute-force oracle for `h`, and
/// fills the report. Oracle limits (n_spins <= 20) propagate.
VerificationReport verify_plan(const PreparationPlan& plan,
                               const Hamiltonian& h, double beta,
                               const VerifyOptions& options = {});

} // namespace cets
