#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <variant>
#include <vector>

#include "cets/renorm.hpp"
#include "cets/statevector.hpp"
#include "cets/verify.hpp"

using namespace cets;

namespace {

const RotationGate& rotation_at(const PreparationPlan& plan, std::size_t k) {
    return std::get<RotationGate>(plan.gates.at(k));
}

} // namespace

TEST_CASE("rotation angle endpoints and frozen midpoint") {
    CHECK(rotation_angle(0.0, 2.7) ==
          doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));
    CHECK(rotation_angle(5.0, 0.0) ==
          doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));
    // beta*m = 1: theta = atan(e), cos^2 theta = e^{-1} / (2 cosh 1)
    const double theta = rotation_angle(1.0, 1.0);
    CHECK(theta == doctest::Approx(1.2182829050172777).epsilon(1e-14));
    const double c = std::cos(theta);
    CHECK(c * c == doctest::Approx(0.11920292202211755).epsilon(1e-13));
    // saturation stays clean at the endpoints
    CHECK(rotation_angle(1000.0, 1.0) ==
          doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
    CHECK(rotation_angle(-1000.0, 1.0) == doctest::Approx(0.0).scale(1.0));
    CHECK(rotation_angle(0.4, 1.0) < rotation_angle(0.5, 1.0));
}

TEST_CASE("pairwise decomposition reproduces the frozen reference point") {
    const PairwiseRenorm rn = pairwise_decompose(1.0, 1.0, 0.5, 1.0);
    CHECK(std::exp(rn.log_scale) ==
          doctest::Approx(4.139009544579073).epsilon(1e-13));
    CHECK(rn.bond_shift == doctest::Approx(0.239531999228844).epsilon(1e-12));
    CHECK(rn.near_field_shift ==
          doctest::Approx(0.6071948312566037).epsilon(1e-12));
    CHECK(rn.far_field_shift ==
          doctest::Approx(0.239531999228844).epsilon(1e-12));
}

TEST_CASE("pairwise decomposition is an exact identity on all sign patterns") {
    const double h = -0.8, j = 1.3, l = 0.45, beta = 1.7;
    const PairwiseRenorm rn = pairwise_decompose(h, j, l, beta);
    for (int s_near : {+1, -1}) {
        for (int s_far : {+1, -1}) {
            const double m = h + j * s_near + l * s_far;
            const double lhs = std::exp(-beta * m) + std::exp(beta * m);
            const double rhs =
                std::exp(rn.log_scale) *
                std::exp(beta * (rn.bond_shift * s_near * s_far +
                                 rn.near_field_shift * s_near +
                                 rn.far_field_shift * s_far));
            CHECK(std::abs(lhs - rhs) / lhs <= 1e-12);
        }
    }
}

TEST_CASE("pairwise decomposition at beta = 0") {
    const PairwiseRenorm rn = pairwise_decompose(0.9, -1.2, 0.3, 0.0);
    CHECK(rn.log_scale == std::numbers::ln2);
    CHECK(rn.bond_shift == 0.0);
    CHECK(rn.near_field_shift == 0.0);
    CHECK(rn.far_field_shift == 0.0);
}

TEST_CASE("triangle plan structure and frozen partition values") {
    const PreparationPlan plan = triangle_plan(1.0, 1.0);
    REQUIRE(plan.gates.size() == 3);
    CHECK(rotation_at(plan, 0).controls.empty());
    CHECK(rotation_at(plan, 1).controls == std::vector<int>{0});
    CHECK(rotation_at(plan, 2).controls == std::vector<int>{0, 1});
    CHECK(rotation_at(plan, 0).angles[0] ==
          doctest::Approx(std::numbers::pi / 4).epsilon(1e-15));
    CHECK(plan.log_lambda_total ==
          doctest::Approx(2.7978461208871357).epsilon(1e-13));

    const std::vector<double> probs = run(plan).probabilities();
    // six frustrated minima, two aligned corners
    for (SpinConfig s : {1u, 2u, 3u, 4u, 5u, 6u})
        CHECK(probs[s] == doctest::Approx(0.1656553057466472).epsilon(1e-12));
    for (SpinConfig s : {0u, 7u})
        CHECK(probs[s] == doctest::Approx(0.0030340827600584).epsilon(1e-11));

    CHECK(triangle_plan(1.0, 10.0).log_lambda_total ==
          doctest::Approx(11.791759469228055).epsilon(1e-13));
}

TEST_CASE("triangle plan against the enumeration oracle") {
    for (double coupling : {-1.0, 0.7, 2.0}) {
        for (double beta : {0.0, 0.5, 3.0}) {
            const VerificationReport report = verify_plan(
                triangle_plan(coupling, beta), triangle_hamiltonian(coupling),
                beta);
            CHECK(report.pass);
        }
    }
}

TEST_CASE("tetrahedron plan: frozen values and ground manifold") {
    const PreparationPlan plan = tetrahedron_plan(1.0, 1.0);
    REQUIRE(plan.gates.size() == 4);
    CHECK(rotation_at(plan, 3).controls == std::vector<int>{0, 1, 2});
    CHECK(plan.log_lambda_total ==
          doctest::Approx(3.9577474101546746).epsilon(1e-13));
    CHECK(verify_plan(plan, tetrahedron_hamiltonian(1.0), 1.0).pass);

    // beta*J = 10: six zero-magnetization minima dominate
    const std::vector<double> probs =
        run(tetrahedron_plan(1.0, 10.0)).probabilities();
    double ground_mass = 0.0;
    for (SpinConfig s : {3u, 5u, 6u, 9u, 10u, 12u}) {
        CHECK(probs[s] ==
              doctest::Approx(0.16666666620863255).epsilon(1e-10));
        ground_mass += probs[s];
    }
    CHECK(ground_mass ==
          doctest::Approx(0.9999999972517952).epsilon(1e-12));
}

TEST_CASE("backward pass records the decompositions it applied") {
    const std::vector<double> j{0.8, -0.6, 1.1, 0.4};
    const std::vector<double> l{0.5, -0.3, 0.7};
    const std::vector<double> h{0.2, -0.4, 0.0, 0.3, -0.1};
    const double beta = 1.3;
    const CompensatedChain chain = compensate_nnn_chain(j, l, h, beta);
    REQUIRE(chain.shifts.size() == 4);

    for (std::size_t t = chain.h.size() - 1; t >= 1; --t) {
        const double distant = (t >= 2) ? chain.l[t - 2] : 0.0;
        const PairwiseRenorm rn =
            pairwise_decompose(chain.h[t], chain.j[t - 1], distant, beta);
        CHECK(rn.log_scale == chain.shifts[t - 1].log_scale);
        CHECK(rn.bond_shift == chain.shifts[t - 1].bond_shift);
        CHECK(rn.near_field_shift == chain.shifts[t - 1].near_field_shift);
        CHECK(rn.far_field_shift == chain.shifts[t - 1].far_field_shift);
    }

    // adding every shift back restores the inputs
    std::vector<double> j_restored = chain.j;
    std::vector<double> h_restored = chain.h;
    for (std::size_t t = 1; t < chain.h.size(); ++t) {
        const PairwiseRenorm& rn = chain.shifts[t - 1];
        h_restored[t - 1] += rn.near_field_shift;
        if (t >= 2) {
            j_restored[t - 2] += rn.bond_shift;
            h_restored[t - 2] += rn.far_field_shift;
        }
    }
    for (std::size_t i = 0; i < j.size(); ++i)
        CHECK(j_restored[i] == doctest::Approx(j[i]).epsilon(1e-12));
    for (std::size_t i = 0; i < h.size(); ++i)
        CHECK(h_restored[i] == doctest::Approx(h[i]).epsilon(1e-12));
    CHECK(chain.l == l);
}

TEST_CASE("chain plan matches the oracle on a fixed instance") {
    const std::vector<double> j{0.8, -0.6, 1.1, 0.4, -0.9};
    const std::vector<double> l{0.5, -0.3, 0.7, 0.2};
    const std::vector<double> h{0.2, -0.4, 0.0, 0.3, -0.1, 0.6};
    for (double beta : {0.0, 1.3}) {
        const VerificationReport report =
            verify_plan(nnn_chain_plan(j, l, h, beta),
                        nnn_chain_hamiltonian(j, l, h), beta);
        CHECK(report.pass);
        CHECK(1.0 - report.fidelity <= 1e-11);
    }
}

TEST_CASE("zero next-nearest couplings degenerate exactly") {
    const std::vector<double> j{0.9, -0.7, 0.5};
    const std::vector<double> l{0.0, 0.0};
    const std::vector<double> h{0.3, -0.2, 0.4, 0.1};
    const double beta = 1.1;
    const PreparationPlan plan = nnn_chain_plan(j, l, h, beta);
    // the distant control is bit 0 of each angle table; with L = 0 it is inert
    for (std::size_t k = 2; k < plan.gates.size(); ++k) {
        const AngleTable& angles =
            std::get<RotationGate>(plan.gates[k]).angles;
        CHECK(angles[0] == angles[1]);
        CHECK(angles[2] == angles[3]);
    }
    CHECK(verify_plan(plan, nnn_chain_hamiltonian(j, l, h), beta).pass);
}

TEST_CASE("chain input validation") {
    CHECK_THROWS_AS(compensate_nnn_chain({0.1}, {}, {0.0, 0.0}, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(compensate_nnn_chain({0.1, 0.2}, {0.3}, {0.0, 0.0, 0.0},
                                         -1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(nnn_chain_plan({0.1}, {0.2}, {0.0, 0.0, 0.0}, 1.0),
                    std::invalid_argument);
}

TEST_CASE("partition bookkeeping is the plan total") {
    const PreparationPlan plan = triangle_plan(0.7, 0.9);
    CHECK(plan_partition_function(plan) == plan.log_lambda_total);
}
