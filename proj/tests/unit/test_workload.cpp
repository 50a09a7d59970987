#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracle/dense.hpp"
#include "qcs/quantum/evaluator.hpp"
#include "qcs/workload/future.hpp"
#include "qcs/workload/session.hpp"
#include "qcs/workload/spsa.hpp"
#include "qcs/workload/suite.hpp"

using namespace qcs;
using namespace qcs::workload;

TEST_CASE("suite has 10/10/11 circuits inside the band limits") {
    const auto suite = generate_suite();
    REQUIRE(suite.size() == 31);
    int counts[3] = {0, 0, 0};
    std::set<std::string> ids;
    for (const auto& b : suite) {
        ++counts[static_cast<int>(b.band)];
        ids.insert(b.id);
        const auto lim = band_limits(b.band);
        CHECK(b.num_qubits >= lim.min_qubits);
        CHECK(b.num_qubits <= lim.max_qubits);
        CHECK(b.depth >= lim.min_depth);
        CHECK(b.depth <= lim.max_depth);
        CHECK(b.depth == b.ansatz.depth());
        CHECK(b.ansatz.num_qubits == b.num_qubits);
        CHECK(b.hamiltonian.num_qubits == b.num_qubits);
        CHECK(b.field_strength >= 0.5);
        CHECK(b.field_strength <= 1.5);
    }
    CHECK(counts[0] == 10);
    CHECK(counts[1] == 10);
    CHECK(counts[2] == 11);
    CHECK(ids.size() == 31);

    const auto simple = band_limits(Band::Simple);
    CHECK(simple.min_qubits == 2);
    CHECK(simple.max_qubits == 5);
    CHECK(simple.min_depth == 6);
    CHECK(simple.max_depth == 32);
    const auto complex = band_limits(Band::Complex);
    CHECK(complex.max_qubits == 16);
    CHECK(complex.max_depth == 141);
}

TEST_CASE("suite spans each band's extremes") {
    const auto suite = generate_suite();
    for (Band band : {Band::Simple, Band::Medium, Band::Complex}) {
        const auto lim = band_limits(band);
        int qmin = 99, qmax = 0;
        for (const auto& b : suite)
            if (b.band == band) {
                qmin = std::min(qmin, b.num_qubits);
                qmax = std::max(qmax, b.num_qubits);
            }
        CHECK(qmin == lim.min_qubits);
        CHECK(qmax == lim.max_qubits);
    }
}

TEST_CASE("suite is deterministic per seed") {
    const auto a = generate_suite(5);
    const auto b = generate_suite(5);
    const auto c = generate_suite(6);
    CHECK(suite_to_json(a) == suite_to_json(b));
    CHECK(suite_to_json(a) != suite_to_json(c));
    // Only the fields differ between seeds.
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].num_qubits == c[i].num_qubits);
        CHECK(a[i].depth == c[i].depth);
    }
}

TEST_CASE("spsa gain schedule") {
    const SpsaConfig cfg;
    CHECK(gain_a(cfg, 0) == doctest::Approx(0.2 / std::pow(11.0, 0.602)));
    CHECK(gain_c(cfg, 0) == doctest::Approx(0.15));
    for (int k = 0; k < 2000; ++k) {
        CHECK(gain_a(cfg, k + 1) < gain_a(cfg, k));
        CHECK(gain_c(cfg, k + 1) < gain_c(cfg, k));
    }
    CHECK(gain_c(cfg, 1000000) < 0.04);
}

TEST_CASE("spsa step rule") {
    const SpsaConfig cfg;
    sim::RngStream rng(1, "spsa");
    auto state = initial_state(6, rng);
    for (double t : state.theta) {
        CHECK(t >= -0.1);
        CHECK(t <= 0.1);
    }
    const auto p = perturb(state, cfg, rng);
    REQUIRE(state.delta.size() == 6);
    const double ck = gain_c(cfg, 0);
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(std::abs(state.delta[i]) == 1);
        CHECK(p.plus[i] == doctest::Approx(state.theta[i] + ck * state.delta[i]));
        CHECK(p.minus[i] == doctest::Approx(state.theta[i] - ck * state.delta[i]));
    }

    SUBCASE("equal energies leave theta unchanged") {
        const auto next = spsa_step(state, cfg, -1.25, -1.25);
        CHECK(next.theta == state.theta);
        CHECK(next.iteration == 1);
    }
    SUBCASE("update matches the closed form") {
        const auto next = spsa_step(state, cfg, 0.4, 0.1);
        const double ak = gain_a(cfg, 0);
        for (std::size_t i = 0; i < 6; ++i)
            CHECK(next.theta[i] == doctest::Approx(state.theta[i] - ak * 0.3 / (2 * ck * state.delta[i])));
    }
    SUBCASE("non-finite energy throws and leaves the state alone") {
        const auto before = state.theta;
        CHECK_THROWS_AS(spsa_step(state, cfg, std::nan(""), 0.0), NonFiniteEnergy);
        CHECK_THROWS_AS(spsa_step(state, cfg, 0.0, INFINITY), NonFiniteEnergy);
        CHECK(state.theta == before);
        CHECK(state.iteration == 0);
    }
}

TEST_CASE("spsa with exact energies reaches the two-qubit ground state") {
    // The suite's first 2-qubit benchmark; the ground energy comes from the dense oracle.
    const auto suite = generate_suite();
    const auto& bench = suite.front();
    REQUIRE(bench.num_qubits == 2);
    const double ground = oracle::ground_energy(bench.hamiltonian);
    const SpsaConfig cfg;
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        sim::RngStream rng(seed, "spsa");
        auto state = initial_state(bench.ansatz.parameter_count(), rng);
        for (int k = 0; k < 200; ++k) {
            const auto p = perturb(state, cfg, rng);
            const double ep = quantum::exact_expectation(bench.ansatz, p.plus, bench.hamiltonian);
            const double em = quantum::exact_expectation(bench.ansatz, p.minus, bench.hamiltonian);
            state = spsa_step(state, cfg, ep, em);
            record_energy(state, quantum::exact_expectation(bench.ansatz, state.theta, bench.hamiltonian));
        }
        if (state.best_energy < ground + 0.05) ++hits;
    }
    MESSAGE("seeds within 0.05 of the ground energy: " << hits << "/20");
    CHECK(hits >= 18);
}

TEST_CASE("property: best energy never worsens") {
    SpsaState s;
    sim::RngStream rng(3, "history");
    double best = INFINITY;
    for (int i = 0; i < 500; ++i) {
        const double e = rng.normal();
        record_energy(s, e);
        best = std::min(best, e);
        CHECK(s.best_energy == best);
    }
    CHECK(s.energy_history.size() == 500);
}

TEST_CASE("convergence detector") {
    CHECK(check_convergence({-1.0, -1.0, -1.0}, 3, 1e-3));
    CHECK_FALSE(check_convergence({-1.0, -1.0}, 3, 1e-3));
    CHECK_FALSE(check_convergence({-1.0, -1.1, -1.2, -1.3}, 3, 0.05));
    CHECK(check_convergence({5.0, -1.0, -1.004, -1.002}, 3, 0.005));
    CHECK_FALSE(check_convergence({-1.0, -1.01, -1.0}, 3, 0.01));  // spread must be strictly below epsilon
    CHECK_THROWS(check_convergence({1.0}, 1, 0.1));
}

TEST_CASE("residual classical block") {
    CHECK(residual_classical_block(ModeKind::EFaaS, 1.5, 0.8, true) == doctest::Approx(0.7));
    CHECK(residual_classical_block(ModeKind::EFaaS, 1.5, 2.0, true) == 0.0);
    CHECK(residual_classical_block(ModeKind::EFaaS, 1.5, 0.8, false) == 1.5);
    for (ModeKind m : {ModeKind::SBQ, ModeKind::PF, ModeKind::SR, ModeKind::PQ})
        CHECK(residual_classical_block(m, 1.5, 0.8, true) == 1.5);
}

TEST_CASE("future lifecycle") {
    const quantum::EvalResult r{-1.0, -1.0, 0.0};
    QuantumFuture f(10.0, 0.8);
    CHECK(f.state() == FutureState::Pending);
    CHECK_THROWS_AS(f.commit(), sim::SimulationError);
    CHECK_THROWS_AS(f.abort(), sim::SimulationError);
    CHECK_THROWS_AS(f.plus(), sim::SimulationError);
    CHECK(f.speculate(0.5) == doctest::Approx(0.5));
    CHECK(f.speculate(0.5) == doctest::Approx(0.3));
    CHECK(f.speculate(0.5) == 0.0);
    CHECK_THROWS_AS(f.resolve(9.0, r, r), sim::SimulationError);
    f.resolve(12.0, r, r);
    CHECK(f.state() == FutureState::Resolved);
    CHECK(f.resolved_at() == 12.0);
    CHECK_THROWS_AS(f.speculate(0.1), sim::SimulationError);
    CHECK_THROWS_AS(f.resolve(13.0, r, r), sim::SimulationError);
    f.commit();
    CHECK(f.state() == FutureState::Committed);
    CHECK_THROWS_AS(f.abort(), sim::SimulationError);
    CHECK_THROWS_AS(f.commit(), sim::SimulationError);
}

TEST_CASE("property: future lifecycle is monotone under random operation sequences") {
    const quantum::EvalResult r{0.0, 0.0, 0.0};
    sim::RngStream rng(11, "future-ops");
    auto rank = [](FutureState s) {
        switch (s) {
            case FutureState::Pending: return 0;
            case FutureState::Resolved: return 1;
            default: return 2;
        }
    };
    for (int trial = 0; trial < 500; ++trial) {
        QuantumFuture f(0.0, 0.8);
        std::vector<FutureState> seen{f.state()};
        double t = 0.0;
        for (int step = 0; step < 8; ++step) {
            const int op = static_cast<int>(rng.uniform() * 4);
            t += rng.uniform();
            const FutureState before = f.state();
            try {
                if (op == 0) f.resolve(t, r, r);
                else if (op == 1) f.commit();
                else if (op == 2) f.abort();
                else f.speculate(rng.uniform());
            } catch (const sim::SimulationError&) {
                CHECK(f.state() == before);
            }
            seen.push_back(f.state());
        }
        for (std::size_t i = 1; i < seen.size(); ++i) {
            CHECK(rank(seen[i]) >= rank(seen[i - 1]));
            if (rank(seen[i - 1]) == 2) CHECK(seen[i] == seen[i - 1]);
        }
    }
}
