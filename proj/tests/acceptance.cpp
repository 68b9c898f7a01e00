// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Tolerances are stated inline next to each check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "cets/block_bp.hpp"
#include "cets/renorm.hpp"
#include "cets/spin_model.hpp"
#include "cets/statevector.hpp"
#include "cets/verify.hpp"

using namespace cets;

namespace {

int failures = 0;

void report(int number, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] %2d %s (%s)\n", ok ? "PASS" : "FAIL", number, name,
                detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[128];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

const std::vector<double> kCouplingGrid{-2.0, -1.0, -0.5, 0.5, 1.0, 2.0};
const std::vector<double> kBetaGrid{0.0, 0.5, 1.0, 3.0};

struct Worst {
    double infidelity = 0.0;
    double log_z_rel = 0.0;
    bool all_passed = true;

    void absorb(const VerificationReport& r) {
        infidelity = std::max(infidelity, 1.0 - r.fidelity);
        log_z_rel = std::max(log_z_rel,
                             std::abs(r.log_z_plan - r.log_z_oracle) /
                                 std::max(1.0, std::abs(r.log_z_oracle)));
        all_passed = all_passed && r.pass;
    }
};

Lattice2D uniform_lattice(int n, double coupling, double field) {
    Lattice2D lattice;
    lattice.n = n;
    lattice.row_couplings.assign(n, std::vector<double>(n - 1, coupling));
    lattice.col_couplings.assign(n - 1, std::vector<double>(n, coupling));
    lattice.fields.assign(n, std::vector<double>(n, field));
    return lattice;
}

Lattice2D random_lattice(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coupling(-1.0, 1.0);
    std::uniform_real_distribution<double> field(-0.5, 0.5);
    Lattice2D lattice = uniform_lattice(n, 0.0, 0.0);
    for (auto& row : lattice.row_couplings)
        for (double& j : row) j = coupling(rng);
    for (auto& row : lattice.col_couplings)
        for (double& j : row) j = coupling(rng);
    for (auto& row : lattice.fields)
        for (double& h : row) h = field(rng);
    return lattice;
}

void criterion_triangle() {
    Worst worst;
    for (double coupling : kCouplingGrid)
        for (double beta : kBetaGrid)
            worst.absorb(verify_plan(triangle_plan(coupling, beta),
                                     triangle_hamiltonian(coupling), beta));
    report(1, "triangle plaquette grid", worst.all_passed,
           fmt("worst 1-f %.2e, dlogZ %.2e", worst.infidelity,
               worst.log_z_rel));
}

void criterion_tetrahedron() {
    Worst worst;
    for (double coupling : kCouplingGrid)
        for (double beta : kBetaGrid)
            worst.absorb(verify_plan(tetrahedron_plan(coupling, beta),
                                     tetrahedron_hamiltonian(coupling), beta));

    // beta*J = 10: the six zero-magnetization states take over
    const Hamiltonian h = tetrahedron_hamiltonian(1.0);
    const GibbsTable gibbs = gibbs_table(h, 10.0);
    const std::vector<double> probs =
        run(tetrahedron_plan(1.0, 10.0)).probabilities();
    double e_min = h.energy(0);
    for (SpinConfig s = 0; s < 16; ++s) e_min = std::min(e_min, h.energy(s));
    double plan_mass = 0.0, oracle_mass = 0.0, per_config = 0.0;
    for (SpinConfig s = 0; s < 16; ++s) {
        if (h.energy(s) > e_min + 1e-9) continue;
        plan_mass += probs[s];
        oracle_mass += gibbs.probs[s];
        per_config = std::max(per_config, std::abs(probs[s] - gibbs.probs[s]));
    }
    const bool cold_ok =
        plan_mass >= 0.999 && oracle_mass >= 0.999 && per_config <= 1e-8;
    report(2, "spin-ice tetrahedron grid and cold manifold",
           worst.all_passed && cold_ok,
           fmt("worst 1-f %.2e, manifold gap %.2e", worst.infidelity,
               per_config));
}

void criterion_chains() {
    std::mt19937_64 rng(20240817);
    std::uniform_real_distribution<double> coupling(-2.0, 2.0);
    const std::vector<double> betas{0.3, 1.0, 3.0};
    Worst worst;
    for (int k = 0; k < 50; ++k) {
        const int n = 3 + k % 10;
        std::vector<double> j(n - 1), l(n - 2), h(n);
        for (double& v : j) v = coupling(rng);
        for (double& v : l) v = coupling(rng);
        for (double& v : h) v = coupling(rng);
        const double beta = betas[k % betas.size()];
        if (k % 7 == 0) std::fill(l.begin(), l.end(), 0.0);
        worst.absorb(verify_plan(nnn_chain_plan(j, l, h, beta),
                                 nnn_chain_hamiltonian(j, l, h), beta));
    }
    report(3, "random next-nearest chains", worst.all_passed,
           fmt("worst 1-f %.2e, dlogZ %.2e", worst.infidelity,
               worst.log_z_rel));
}

void criterion_pairwise_identity() {
    std::mt19937_64 rng(1729);
    std::uniform_real_distribution<double> coupling(-2.0, 2.0);
    std::uniform_real_distribution<double> beta_dist(0.0, 3.0);
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
        const double h = coupling(rng), j = coupling(rng), l = coupling(rng);
        const double beta = beta_dist(rng);
        const PairwiseRenorm rn = pairwise_decompose(h, j, l, beta);
        for (int s_near : {+1, -1}) {
            for (int s_far : {+1, -1}) {
                const double m = h + j * s_near + l * s_far;
                const double lhs = std::exp(-beta * m) + std::exp(beta * m);
                const double rhs =
                    std::exp(rn.log_scale +
                             beta * (rn.bond_shift * s_near * s_far +
                                     rn.near_field_shift * s_near +
                                     rn.far_field_shift * s_far));
                worst = std::max(worst, std::abs(lhs - rhs) / lhs);
            }
        }
    }
    report(4, "pairwise splitting identity", worst <= 1e-10,
           fmt("max relative violation %.2e", worst));
}

void criterion_lattices() {
    std::mt19937_64 rng(5150);
    Worst worst;
    double worst_column = 0.0;
    for (int n : {2, 3, 4}) {
        const Lattice2D lattice = random_lattice(n, rng);
        const double beta = 0.9 - 0.1 * n;
        const PreparationPlan plan = lattice2d_plan(lattice, beta);
        worst.absorb(verify_plan(plan, lattice.to_hamiltonian(), beta));
        for (const PlanGate& gate : plan.gates) {
            for (const auto& column :
                 std::get<BlockRotationGate>(gate).amplitudes) {
                double norm2 = 0.0;
                for (double a : column) norm2 += a * a;
                worst_column = std::max(worst_column, std::abs(norm2 - 1.0));
            }
        }
    }
    report(5, "row-blocked lattices", worst.all_passed && worst_column <= 1e-10,
           fmt("worst 1-f %.2e, column norm err %.2e", worst.infidelity,
               worst_column));
}

void criterion_partition_bookkeeping() {
    double worst = 0.0, worst_free = 0.0;
    const auto absorb = [&](const PreparationPlan& plan, const Hamiltonian& h,
                            double beta) {
        const GibbsTable gibbs = gibbs_table(h, beta);
        const double rel = std::abs(plan.log_lambda_total - gibbs.log_z) /
                           std::max(1.0, std::abs(gibbs.log_z));
        worst = std::max(worst, rel);
    };
    absorb(triangle_plan(1.2, 0.9), triangle_hamiltonian(1.2), 0.9);
    absorb(tetrahedron_plan(0.8, 1.1), tetrahedron_hamiltonian(0.8), 1.1);
    const std::vector<double> j{0.8, -0.6, 1.1, 0.4};
    const std::vector<double> l{0.5, -0.3, 0.7};
    const std::vector<double> h{0.2, -0.4, 0.0, 0.3, -0.1};
    absorb(nnn_chain_plan(j, l, h, 1.0), nnn_chain_hamiltonian(j, l, h), 1.0);
    std::mt19937_64 rng(31173);
    const Lattice2D lattice = random_lattice(3, rng);
    absorb(lattice2d_plan(lattice, 0.6), lattice.to_hamiltonian(), 0.6);

    // beta = 0 collapses every family to the free value N ln 2
    const auto free_gap = [](const PreparationPlan& plan) {
        return std::abs(plan.log_lambda_total -
                        plan.n_spins * std::numbers::ln2);
    };
    worst_free = std::max(worst_free, free_gap(triangle_plan(1.2, 0.0)));
    worst_free = std::max(worst_free, free_gap(tetrahedron_plan(0.8, 0.0)));
    worst_free = std::max(worst_free, free_gap(nnn_chain_plan(j, l, h, 0.0)));
    worst_free = std::max(worst_free, free_gap(lattice2d_plan(lattice, 0.0)));

    report(6, "partition bookkeeping", worst <= 1e-9 && worst_free <= 1e-12,
           fmt("worst rel %.2e, beta=0 gap %.2e", worst, worst_free));
}

void criterion_purification() {
    const PreparationPlan plan = triangle_plan(1.0, 1.0);
    const GibbsTable gibbs = gibbs_table(triangle_hamiltonian(1.0), 1.0);
    const Statevector purified = purify_copy(run(plan));
    const int n = plan.n_spins;
    const std::uint64_t dim = std::uint64_t{1} << n;
    double diag_err = 0.0, off_diag = 0.0;
    for (std::uint64_t s = 0; s < dim; ++s) {
        for (std::uint64_t t = 0; t < dim; ++t) {
            std::complex<double> rho{0.0, 0.0};
            for (std::uint64_t a = 0; a < dim; ++a)
                rho += purified.amplitude(s | (a << n)) *
                       std::conj(purified.amplitude(t | (a << n)));
            if (s == t)
                diag_err = std::max(diag_err,
                                    std::abs(rho.real() - gibbs.probs[s]));
            else
                off_diag = std::max(off_diag, std::abs(rho));
        }
    }
    report(7, "copy purification", diag_err <= 1e-12 && off_diag <= 1e-12,
           fmt("diag err %.2e, off-diag %.2e", diag_err, off_diag));
}

void criterion_sampling() {
    const Statevector state = run(triangle_plan(1.0, 1.0));
    const GibbsTable gibbs = gibbs_table(triangle_hamiltonian(1.0), 1.0);
    const auto first = sample(state, 1000000, 424242);
    const auto second = sample(state, 1000000, 424242);
    const double tv = tv_distance(first, gibbs);
    report(8, "seeded sampling", first == second && tv <= 0.005,
           fmt("tv %.2e, reproducible %.0f", tv, first == second ? 1.0 : 0.0));
}

void criterion_scaling() {
    std::vector<double> density;
    std::uint64_t work4 = 0;
    for (int n : {2, 3, 4}) {
        const Lattice2D lattice = uniform_lattice(n, 0.5, 0.1);
        BpWorkStats stats;
        gamma_backward(make_blocks(lattice.to_hamiltonian(), n), 1.0, &stats);
        density.push_back(static_cast<double>(stats.gamma_entries) /
                          static_cast<double>(std::uint64_t{1} << (2 * n)));
        if (n == 4) work4 = stats.gamma_entries;
    }
    double geo = 1.0;
    for (double d : density) geo *= d;
    geo = std::cbrt(geo);
    bool fit_ok = true;
    for (double d : density) {
        const double ratio = d / geo;
        fit_ok = fit_ok && ratio >= 0.5 && ratio <= 2.0;
    }
    // direct product-basis table sizes, counted without building them
    const std::uint64_t direct2 = std::uint64_t{1} << 4;
    const std::uint64_t direct3 = std::uint64_t{1} << 9;
    const std::uint64_t direct4 = std::uint64_t{1} << 16;
    const bool counted_ok = direct2 == 16 && direct3 == 512 &&
                            direct4 == 65536 && work4 * 100 <= direct4;
    report(9, "blocked work scales as 4^N, not 2^(N*N)", fit_ok && counted_ok,
           fmt("N=4 table entries %.0f vs direct %.0f",
               static_cast<double>(work4), static_cast<double>(direct4)));
}

bool fails_after_nudge(PreparationPlan plan, std::size_t gate_idx,
                       std::size_t entry, const Hamiltonian& h, double beta) {
    auto& gate = std::get<RotationGate>(plan.gates[gate_idx]);
    gate.angles[entry] += 1e-3;
    return !verify_plan(plan, h, beta).pass;
}

bool fails_after_column_nudge(PreparationPlan plan, std::size_t gate_idx,
                              std::size_t column_idx, const Hamiltonian& h,
                              double beta) {
    auto& column =
        std::get<BlockRotationGate>(plan.gates[gate_idx]).amplitudes[column_idx];
    // norm-preserving rotation of the two heaviest entries, so the failure
    // comes from the state being wrong rather than the column being unnormalized
    std::size_t top = 0, next = 1;
    if (std::abs(column[next]) > std::abs(column[top])) std::swap(top, next);
    for (std::size_t i = 2; i < column.size(); ++i) {
        if (std::abs(column[i]) > std::abs(column[top])) {
            next = top;
            top = i;
        } else if (std::abs(column[i]) > std::abs(column[next])) {
            next = i;
        }
    }
    const double eps = 1e-3;
    const double a = column[top], b = column[next];
    column[top] = std::cos(eps) * a - std::sin(eps) * b;
    column[next] = std::sin(eps) * a + std::cos(eps) * b;
    return !verify_plan(plan, h, beta).pass;
}

void criterion_negative_control() {
    int nudges = 0, caught = 0;
    const auto sweep_rotations = [&](const PreparationPlan& plan,
                                     const Hamiltonian& h, double beta) {
        for (std::size_t g = 0; g < plan.gates.size(); ++g) {
            const auto& gate = std::get<RotationGate>(plan.gates[g]);
            for (std::size_t e = 0; e < gate.angles.size(); ++e) {
                ++nudges;
                if (fails_after_nudge(plan, g, e, h, beta)) ++caught;
            }
        }
    };
    sweep_rotations(triangle_plan(1.0, 1.0), triangle_hamiltonian(1.0), 1.0);
    sweep_rotations(tetrahedron_plan(1.0, 1.0), tetrahedron_hamiltonian(1.0),
                    1.0);
    const std::vector<double> j{0.4, -0.3, 0.55, 0.2};
    const std::vector<double> l{0.25, -0.15, 0.35};
    const std::vector<double> h{0.1, -0.2, 0.0, 0.15, -0.05};
    sweep_rotations(nnn_chain_plan(j, l, h, 1.0),
                    nnn_chain_hamiltonian(j, l, h), 1.0);

    Lattice2D lattice;
    lattice.n = 2;
    lattice.row_couplings = {{0.9}, {-0.4}};
    lattice.col_couplings = {{0.6, -0.8}};
    lattice.fields = {{0.3, -0.2}, {0.1, 0.5}};
    const Hamiltonian lattice_h = lattice.to_hamiltonian();
    const PreparationPlan lattice_plan = lattice2d_plan(lattice, 1.0);
    for (std::size_t g = 0; g < lattice_plan.gates.size(); ++g) {
        const auto& gate = std::get<BlockRotationGate>(lattice_plan.gates[g]);
        for (std::size_t c = 0; c < gate.amplitudes.size(); ++c) {
            ++nudges;
            if (fails_after_column_nudge(lattice_plan, g, c, lattice_h, 1.0))
                ++caught;
        }
    }
    report(10, "every angle nudge trips verification", caught == nudges,
           fmt("caught %.0f of %.0f", static_cast<double>(caught),
               static_cast<double>(nudges)));
}

} // namespace

int main() {
    criterion_triangle();
    criterion_tetrahedron();
    criterion_chains();
    criterion_pairwise_identity();
    criterion_lattices();
    criterion_partition_bookkeeping();
    criterion_purification();
    criterion_sampling();
    criterion_scaling();
    criterion_negative_control();
    if (failures != 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
