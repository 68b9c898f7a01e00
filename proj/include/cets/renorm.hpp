#pragma once

#include <vector>

#include "cets/plan.hpp"
#include "cets/spin_model.hpp"

namespace cets {

/// theta = arccos sqrt(e^{-beta m} / (e^{-beta m} + e^{beta m})), evaluated
/// as atan(e^{beta m}) so it stays exact for any finite beta*m. Always in
/// [0, pi/2]; beta*m = 0 gives pi/4.
double rotation_angle(double m, double beta);

/// Decomposition of ln(2 cosh(beta*(h + J s' + L s''))) over the four sign
/// patterns into a constant plus bond/field terms on the two control spins.
/// Shifts are what a 2-controlled rotation with this local field induces on
/// the couplings among its controls.
struct PairwiseRenorm {
    double log_scale = 0.0;        // ln Lambda, absorbed into Z bookkeeping
    double bond_shift = 0.0;       // induced coupling between the two controls
    double near_field_shift = 0.0; // induced field on the adjacent control
    double far_field_shift = 0.0;  // induced field on the distant control
};

/// h_i: local field on the new spin; j_prev: bond to the adjacent control;
/// l_prev: bond to the distant control. beta = 0 returns {ln 2, 0, 0, 0}.
PairwiseRenorm pairwise_decompose(double h_i, double j_prev, double l_prev,
                                  double beta);

/// Uniform 3-cycle J(s1 s2 + s1 s3 + s2 s3). The 2-spin seed is built with
/// the bond pre-compensated so the third rotation restores coupling J.
PreparationPlan triangle_plan(double coupling, double beta);

/// Four mutually coupled spins, all six bonds J (spin-ice unit). The base
/// triangle is prepared at J minus the three-bond shift induced by the
/// fourth rotation.
PreparationPlan tetrahedron_plan(double coupling, double beta);

/// Working arrays after the backward elimination pass, plus the per-gate
/// decompositions in emission order (gate on spin 1 first). Exposed
/// separately so the pass can be tested as an arithmetic transform.
struct CompensatedChain {
    std::vector<double> j; // n-1 nearest-neighbor bonds
    std::vector<double> l; // n-2 next-nearest bonds (unchanged by the pass)
    std::vector<double> h; // n local fields
    std::vector<PairwiseRenorm> shifts; // index t-1: decomposition at spin t
};

CompensatedChain compensate_nnn_chain(std::vector<double> j,
                                      std::vector<double> l,
                                      std::vector<double> h, double beta);

/// Chain with nearest-neighbor bonds j, next-nearest bonds l, and local
/// fields h (|j| = n-1, |l| = n-2, |h| = n, n >= 3). Backward pass removes
/// the renormalization the rotations will induce; the forward pass emits a
/// seed rotation, one 1-controlled rotation, then 2-controlled rotations.
PreparationPlan nnn_chain_plan(const std::vector<double>& j,
                               const std::vector<double>& l,
                               const std::vector<double>& h, double beta);

/// ln Z of the plan's target model, maintained by the planners as the sum of
/// per-gate ln(Lambda) values (geometric mean of 2 cosh(beta m_s) over the
/// control configurations) plus the seed normalization.
double plan_partition_function(const PreparationPlan& plan);

// Target Hamiltonians for the closed-form planners (oracle comparisons).
Hamiltonian triangle_hamiltonian(double coupling);
Hamiltonian tetrahedron_hamiltonian(double coupling);
Hamiltonian nnn_chain_hamiltonian(const std::vector<double>& j,
                                  const std::vector<double>& l,
                                  const std::vector<double>& h);

} // namespace cets
