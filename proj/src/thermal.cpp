/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "soctherm/thermal.hpp"

#include <cmath>
#include <string>

#include "soctherm/errors.hpp"

namespace soctherm {

double ThermalNetwork::ambient_conductance() const {
    double total = 0.0;
    for (std::size_t i = 0; i < node_count; ++i)
        for (std::size_t j = 0; j < node_count; ++j) total += g(i, j);
    return total;
}

void ThermalNetwork::validate() const {
    if (node_count == 0) throw config_error("thermal network has no nodes");
    if (core_count == 0 || core_count > node_count)
        throw config_error("thermal network core count out of range");
    if (conductance.size() != node_count * node_count)
        throw config_error("conductance matrix size mismatch");
    if (capacitance.size() != node_count) throw config_error("capacitance vector size mismatch");

    for (std::size_t i = 0; i < node_count; ++i) {
        if (!(capacitance[i] > 0.0))
            throw config_error("capacitance must be positive (node " + std::to_string(i) + ")");
        if (g(i, i) < 0.0)
            throw config_error("negative self conductance (node " + std::to_string(i) + ")");
        double row_sum = 0.0;
        for (std::size_t j = 0; j < node_count; ++j) {
            const double gij = g(i, j);
            row_sum += gij;
            if (i == j) continue;
            // Laplacian form: couplings enter as non-positive off-diagonals.
            if (gij > 1e-12)
                throw config_error("positive off-diagonal conductance (" + std::to_string(i) +
                                   "," + std::to_string(j) + ")");
            const double scale = std::max({1.0, std::fabs(gij), std::fabs(g(j, i))});
            if (std::fabs(gij - g(j, i)) > 1e-12 * scale)
                throw config_error("conductance matrix not symmetric (" + std::to_string(i) + "," +
                                   std::to_string(j) + ")");
        }
        // Row sum is the node's direct conductance to ambient.
        if (row_sum < -1e-9)
            throw config_error("row " + std::to_string(i) +
                               " has negative ambient conductance; heat would flow uphill");
    }
    if (ambient_conductance() <= 0.0)
        throw config_error("network has no conductance to ambient");
}

double ThermalNetwork::max_stable_dt() const {
    double bound = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < node_count; ++i) {
        if (g(i, i) > 0.0) bound = std::min(bound, capacitance[i] / g(i, i));
    }
    return bound;
}

ThermalNetwork build_floorplan(const FloorplanParams& p) {
    if (p.core_count == 0) throw config_error("floorplan needs at least one core");
    if (p.cores_per_cluster == 0) throw config_error("cores_per_cluster must be positive");
    if (p.core_count % p.cores_per_cluster != 0)
        throw config_error("core_count must be a multiple of cores_per_cluster");

    const std::size_t clusters = p.core_count / p.cores_per_cluster;
    const std::size_t nodes = p.core_count + clusters;

    ThermalNetwork net;
    net.node_count = nodes;
    net.core_count = p.core_count;
    net.ambient_temp = p.ambient_temp;
    net.conductance.assign(nodes * nodes, 0.0);
    net.capacitance.assign(nodes, 0.0);

    auto at = [&](std::size_t i, std::size_t j) -> double& {
        return net.conductance[i * nodes + j];
    };
    auto couple = [&](std::size_t i, std::size_t j, double g) {
        at(i, j) -= g;
        at(j, i) -= g;
        at(i, i) += g;
        at(j, j) += g;
    };

    for (std::size_t c = 0; c < p.core_count; ++c) net.capacitance[c] = p.core_capacitance;
    for (std::size_t s = 0; s < clusters; ++s) {
        const std::size_t spreader = p.core_count + s;
        net.capacitance[spreader] = p.spreader_capacitance;
        at(spreader, spreader) += p.g_spreader_ambient;
        if (s + 1 < clusters) couple(spreader, spreader + 1, p.g_spreader_spreader);

        const std::size_t first = s * p.cores_per_cluster;
        for (std::size_t a = 0; a < p.cores_per_cluster; ++a) {
            couple(first + a, spreader, p.g_core_spreader);
            for (std::size_t b = a + 1; b < p.cores_per_cluster; ++b)
                couple(first + a, first + b, p.g_core_core);
        }
    }

    net.validate();
    return net;
}

std::vector<double> thermal_step(const ThermalNetwork& network, std::span<const double> temps,
                                 std::span<const double> powers, double dt) {
    const std::size_t n = network.node_count;
    if (temps.size() != n) throw invalid_input("temperature vector size mismatch");
    if (powers.size() > n) throw invalid_input("power vector larger than node count");
    if (!(dt > 0.0)) throw invalid_input("dt must be positive");

    std::vector<double> next(n);
    for (std::size_t i = 0; i < n; ++i) {
        double outflow = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            outflow += network.g(i, j) * (temps[j] - network.ambient_temp);
        const double p = i < powers.size() ? powers[i] : 0.0;
        next[i] = temps[i] + dt / network.capacitance[i] * (p - outflow);
    }
    return next;
}

}  // namespace soctherm
