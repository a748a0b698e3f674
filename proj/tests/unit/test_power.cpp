/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <doctest.h>

#include <random>

#include "soctherm/errors.hpp"
#include "soctherm/power.hpp"

using namespace soctherm;

namespace {
PowerParams no_leakage() {
    PowerParams p;
    p.effective_capacitance = 1.0;
    p.k_lin = 0.0;
    p.p_leak0 = 0.0;
    return p;
}
}  // namespace

TEST_CASE("compute_power: idle core with zero leakage draws nothing") {
    const auto params = no_leakage();
    CHECK(compute_power(CoreState{50.0, 2.0, 0.0, 0.0}, params) == doctest::Approx(0.0));
}

TEST_CASE("compute_power: dynamic term hand value") {
    // c_eff=1, V(4.0)=1.2, f=4.0, u=1.0 -> 1 * 1.44 * 4.0 = 5.76 W
    const auto params = no_leakage();
    CHECK(compute_power(CoreState{50.0, 4.0, 1.0, 0.0}, params) == doctest::Approx(5.76));
}

TEST_CASE("compute_power: linear leakage hand value") {
    // 0.32 dynamic + (1 + 0.05 * 20) leakage = 2.32 W
    PowerParams params;
    params.effective_capacitance = 1.0;
    params.k_lin = 0.05;
    params.p_leak0 = 1.0;
    params.t_ref = 45.0;
    CHECK(compute_power(CoreState{65.0, 1.0, 0.5, 0.0}, params) == doctest::Approx(2.32));
}

TEST_CASE("compute_power rejects frequencies off the voltage map") {
    const auto params = no_leakage();
    CHECK_THROWS_AS(compute_power(CoreState{50.0, 4.5, 1.0, 0.0}, params), invalid_input);
    CHECK_THROWS_AS(compute_power(CoreState{50.0, 0.5, 1.0, 0.0}, params), invalid_input);
}

TEST_CASE("voltage map interpolates and stays monotone") {
    const VoltageMap map({{1.0, 0.8}, {4.0, 1.2}});
    CHECK(map.voltage_at(1.0) == doctest::Approx(0.8));
    CHECK(map.voltage_at(4.0) == doctest::Approx(1.2));
    CHECK(map.voltage_at(2.5) == doctest::Approx(1.0));
    CHECK_THROWS_AS(VoltageMap({{1.0, 0.9}, {4.0, 0.8}}), config_error);
    CHECK_THROWS_AS(VoltageMap({{1.0, 0.9}}), config_error);
}

TEST_CASE("leakage validation catches negative parameters") {
    PowerParams p;
    p.k_lin = -0.1;
    CHECK_THROWS_AS(p.validate(45.0), config_error);
    p = PowerParams{};
    p.p_leak0 = 0.0;
    p.k_lin = 0.05;
    p.t_ref = 60.0;  // goes negative at ambient 45
    CHECK_THROWS_AS(p.validate(45.0), config_error);
}

TEST_CASE("compute_power monotone in utilization and temperature") {
    std::mt19937_64 gen(0x9E0);
    std::uniform_real_distribution<double> f_dist(1.0, 4.0);
    std::uniform_real_distribution<double> u_dist(0.0, 1.0);
    std::uniform_real_distribution<double> t_dist(45.0, 110.0);
    std::uniform_real_distribution<double> k_dist(0.0, 0.2);
    std::uniform_real_distribution<double> beta_dist(0.0, 0.05);

    for (int iter = 0; iter < 10'000; ++iter) {
        PowerParams params;
        params.effective_capacitance = 0.5 + u_dist(gen);
        if (iter % 2 == 0) {
            params.leakage = LeakageKind::Linear;
            params.k_lin = k_dist(gen) + 1e-4;
        } else {
            params.leakage = LeakageKind::Exponential;
            params.beta = beta_dist(gen) + 1e-4;
        }
        params.p_leak0 = u_dist(gen);

        const double f = f_dist(gen);
        const double t = t_dist(gen);
        double u1 = u_dist(gen);
        double u2 = u_dist(gen);
        if (u1 > u2) std::swap(u1, u2);
        const double p1 = compute_power(CoreState{t, f, u1, 0.0}, params);
        const double p2 = compute_power(CoreState{t, f, u2, 0.0}, params);
        if (u2 > u1) CHECK(p2 > p1 - 1e-15);

        double t1 = t_dist(gen);
        double t2 = t_dist(gen);
        if (t1 > t2) std::swap(t1, t2);
        const double q1 = compute_power(CoreState{t1, f, u1, 0.0}, params);
        const double q2 = compute_power(CoreState{t2, f, u1, 0.0}, params);
        CHECK(q2 >= q1 - 1e-12);

        CHECK(p1 >= 0.0);
        // Bit-identical recomputation.
        CHECK(compute_power(CoreState{t, f, u1, 0.0}, params) == p1);
    }
}
