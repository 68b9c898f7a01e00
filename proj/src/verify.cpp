#include "cets/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace cets {

double fidelity(const Statevector& a, const Statevector& b) {
    if (a.n_qubits() != b.n_qubits())
        throw std::invalid_argument("fidelity needs equal qubit counts");
    // long double accumulation keeps the rounding floor well under the
    // verification tolerances even at the 2^20 oracle cap
    long double re = 0.0L, im = 0.0L;
    const auto& av = a.amplitudes();
    const auto& bv = b.amplitudes();
    for (std::size_t i = 0; i < av.size(); ++i) {
        const std::complex<double> p = std::conj(av[i]) * bv[i];
        re += p.real();
        im += p.imag();
    }
    return static_cast<double>(re * re + im * im);
}

double tv_distance(const std::vector<SpinConfig>& samples,
                   const GibbsTable& gibbs) {
    if (samples.empty()) throw std::invalid_argument("no samples");
    std::vector<std::uint64_t> counts(gibbs.probs.size(), 0);
    for (SpinConfig s : samples) {
        if (s >= counts.size())
            throw std::invalid_argument("sample outside the model's range");
        ++counts[s];
    }
    const double inv_n = 1.0 / static_cast<double>(samples.size());
    long double acc = 0.0L;
    for (std::size_t i = 0; i < counts.size(); ++i)
        acc += std::abs(static_cast<double>(counts[i]) * inv_n -
                        gibbs.probs[i]);
    return static_cast<double>(0.5L * acc);
}

bool VerificationReport::evaluate(double fidelity, double log_z_plan,
                                  double log_z_oracle, double tol_fidelity,
                                  double tol_log_z) {
    const bool fid_ok = (1.0 - fidelity) <= tol_fidelity;
    const bool z_ok = std::abs(log_z_plan - log_z_oracle) <=
                      tol_log_z * std::max(1.0, std::abs(log_z_oracle));
    return fid_ok && z_ok;
}

VerificationReport verify_plan(const PreparationPlan& plan,
                               const Hamiltonian& h, double beta,
                               const VerifyOptions& options) {
    if (plan.n_spins != h.n_spins())
        throw std::invalid_argument("plan and model widths differ");

    const Statevector state = run(plan);
    const GibbsTable gibbs = gibbs_table(h, beta);
    const Statevector oracle = exact_cets(h, beta);

    VerificationReport report;
    report.fidelity = fidelity(state, oracle);
    report.log_z_plan = plan.log_lambda_total;
    report.log_z_oracle = gibbs.log_z;
    for (std::uint64_t i = 0; i < state.size(); ++i)
        report.max_amp_abs_err =
            std::max(report.max_amp_abs_err,
                     std::abs(state.amplitude(i) - oracle.amplitude(i)));
    if (options.n_samples)
        report.tv_distance = tv_distance(
            sample(state, *options.n_samples, options.seed), gibbs);
    report.tol_fidelity = options.tol_fidelity;
    report.tol_log_z = options.tol_log_z;
    report.pass = VerificationReport::evaluate(
        report.fidelity, report.log_z_plan, report.log_z_oracle,
        report.tol_fidelity, report.tol_log_z);
    return report;
}

} // namespace cets
