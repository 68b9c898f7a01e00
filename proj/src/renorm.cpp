#include "cets/renorm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cets/logspace.hpp"

namespace cets {

double rotation_angle(double m, double beta) {
    // tan(theta) = e^{beta m}; saturates cleanly to 0 or pi/2
    return std::atan(std::exp(beta * m));
}

PairwiseRenorm pairwise_decompose(double h_i, double j_prev, double l_prev,
                                  double beta) {
    if (beta == 0.0)
        return {std::numbers::ln2, 0.0, 0.0, 0.0};
    // ln g^{s' s''} with s' the sign on the adjacent bond, s'' on the distant
    const double lpp = log_two_cosh(beta * (h_i + j_prev + l_prev));
    const double lpm = log_two_cosh(beta * (h_i + j_prev - l_prev));
    const double lmp = log_two_cosh(beta * (h_i - j_prev + l_prev));
    const double lmm = log_two_cosh(beta * (h_i - j_prev - l_prev));
    PairwiseRenorm out;
    out.log_scale = 0.25 * (lpp + lpm + lmp + lmm);
    out.bond_shift = (lpp + lmm - lmp - lpm) / (4.0 * beta);
    out.near_field_shift = (lpm + lpp - lmm - lmp) / (4.0 * beta);
    out.far_field_shift = (lmp + lpp - lmm - lpm) / (4.0 * beta);
    return out;
}

namespace {

void check_beta(double beta) {
    if (!std::isfinite(beta) || beta < 0.0)
        throw std::invalid_argument("beta must be finite and >= 0");
}

/// Appends a controlled rotation whose local field on the new spin is
/// m(config); accumulates ln(Lambda) as the geometric mean of
/// 2 cosh(beta m_s) over the control configurations.
template <typename FieldFn>
void emit_rotation(PreparationPlan& plan, int target, std::vector<int> controls,
                   FieldFn&& field, double beta) {
    const std::size_t entries = std::size_t{1} << controls.size();
    RotationGate gate;
    gate.target = target;
    gate.controls = std::move(controls);
    gate.angles.resize(entries);
    double log_lambda = 0.0;
    for (std::size_t cfg = 0; cfg < entries; ++cfg) {
        const double m = field(static_cast<SpinConfig>(cfg));
        gate.angles[cfg] = rotation_angle(m, beta);
        log_lambda += log_two_cosh(beta * m);
    }
    plan.log_lambda_total += log_lambda / static_cast<double>(entries);
    plan.gates.emplace_back(std::move(gate));
}

/// Bond shift induced on a pair of equal couplings by a rotation with
/// m = J (s1 + s2): (1/2 beta) ln cosh(2 beta J).
double pair_bond_shift(double coupling, double beta) {
    if (beta == 0.0) return 0.0;
    return (log_two_cosh(2.0 * beta * coupling) - std::numbers::ln2) /
           (2.0 * beta);
}

/// Three-bond shift induced by a rotation with m = J (s1 + s2 + s3):
/// (1/4 beta) ln(cosh(3 beta J) / cosh(beta J)).
double triple_bond_shift(double coupling, double beta) {
    if (beta == 0.0) return 0.0;
    return (log_two_cosh(3.0 * beta * coupling) -
            log_two_cosh(beta * coupling)) /
           (4.0 * beta);
}

} // namespace

PreparationPlan triangle_plan(double coupling, double beta) {
    check_beta(beta);
    const double compensated = coupling - pair_bond_shift(coupling, beta);

    PreparationPlan plan;
    plan.n_spins = 3;
    emit_rotation(plan, 0, {}, [](SpinConfig) { return 0.0; }, beta);
    emit_rotation(plan, 1, {0},
                  [&](SpinConfig s) { return compensated * spin_sign(s, 0); },
                  beta);
    emit_rotation(plan, 2, {0, 1},
                  [&](SpinConfig s) {
                      return coupling * (spin_sign(s, 0) + spin_sign(s, 1));
                  },
                  beta);
    return plan;
}

PreparationPlan tetrahedron_plan(double coupling, double beta) {
    check_beta(beta);
    PreparationPlan plan =
        triangle_plan(coupling - triple_bond_shift(coupling, beta), beta);
    plan.n_spins = 4;
    emit_rotation(plan, 3, {0, 1, 2},
                  [&](SpinConfig s) {
                      return coupling * (spin_sign(s, 0) + spin_sign(s, 1) +
                                         spin_sign(s, 2));
                  },
                  beta);
    return plan;
}

CompensatedChain compensate_nnn_chain(std::vector<double> j,
                                      std::vector<double> l,
                                      std::vector<double> h, double beta) {
    check_beta(beta);
    const std::size_t n = h.size();
    if (n < 3)
        throw std::invalid_argument("chain needs at least 3 spins");
    if (j.size() != n - 1 || l.size() != n - 2)
        throw std::invalid_argument(
            "expected n-1 nearest and n-2 next-nearest couplings");

    CompensatedChain chain;
    chain.shifts.resize(n - 1);
    // Walk targets last to first; reads see their final compensated values.
    for (std::size_t t = n - 1; t >= 1; --t) {
        const double distant = (t >= 2) ? l[t - 2] : 0.0;
        const PairwiseRenorm rn = pairwise_decompose(h[t], j[t - 1], distant, beta);
        h[t - 1] -= rn.near_field_shift;
        if (t >= 2) {
            j[t - 2] -= rn.bond_shift;
            h[t - 2] -= rn.far_field_shift;
        }
        chain.shifts[t - 1] = rn;
    }
    chain.j = std::move(j);
    chain.l = std::move(l);
    chain.h = std::move(h);
    return chain;
}

PreparationPlan nnn_chain_plan(const std::vector<double>& j,
                               const std::vector<double>& l,
                               const std::vector<double>& h, double beta) {
    const CompensatedChain chain = compensate_nnn_chain(j, l, h, beta);
    const int n = static_cast<int>(chain.h.size());

    PreparationPlan plan;
    plan.n_spins = n;
    emit_rotation(plan, 0, {}, [&](SpinConfig) { return chain.h[0]; }, beta);
    emit_rotation(plan, 1, {0},
                  [&](SpinConfig s) {
                      return chain.j[0] * spin_sign(s, 0) + chain.h[1];
                  },
                  beta);
    for (int t = 2; t < n; ++t)
        emit_rotation(plan, t, {t - 2, t - 1},
                      [&](SpinConfig s) {
                          return chain.l[t - 2] * spin_sign(s, 0) +
                                 chain.j[t - 1] * spin_sign(s, 1) + chain.h[t];
                      },
                      beta);
    return plan;
}

double plan_partition_function(const PreparationPlan& plan) {
    return plan.log_lambda_total;
}

Hamiltonian triangle_hamiltonian(double coupling) {
    return Hamiltonian(3, {{{0, 1}, coupling}, {{0, 2}, coupling}, {{1, 2}, coupling}});
}

Hamiltonian tetrahedron_hamiltonian(double coupling) {
    std::vector<CouplingTerm> terms;
    for (int i = 0; i < 4; ++i)
        for (int k = i + 1; k < 4; ++k)
            terms.push_back({{i, k}, coupling});
    return Hamiltonian(4, std::move(terms));
}

Hamiltonian nnn_chain_hamiltonian(const std::vector<double>& j,
                                  const std::vector<double>& l,
                                  const std::vector<double>& h) {
    const int n = static_cast<int>(h.size());
    if (n < 1 || j.size() + 1 != h.size() ||
        (n >= 2 && l.size() + 2 != h.size()))
        throw std::invalid_argument("inconsistent chain array lengths");
    std::vector<CouplingTerm> terms;
    for (int i = 0; i + 1 < n; ++i)
        if (j[i] != 0.0) terms.push_back({{i, i + 1}, j[i]});
    for (int i = 0; i + 2 < n; ++i)
        if (l[i] != 0.0) terms.push_back({{i, i + 2}, l[i]});
    for (int i = 0; i < n; ++i)
        if (h[i] != 0.0) terms.push_back({{i}, h[i]});
    return Hamiltonian(n, std::move(terms));
}

} // namespace cets
