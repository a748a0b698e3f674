/*
 * Copyright 2026 The soctherm authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace soctherm {

/**
 * Lumped RC model of the die. The conductance matrix is stored in Laplacian
 * form: G[i][j] (i != j) is minus the coupling conductance between nodes i
 * and j, and G[i][i] is the node's self term (sum of couplings plus its
 * direct conductance to ambient). Row sums therefore equal the per-node
 * ambient conductance, which keeps net heat flux into ambient non-negative
 * whenever every node is at or above ambient.
 */
struct ThermalNetwork {
    std::size_t node_count = 0;
    std::size_t core_count = 0;  // cores occupy nodes [0, core_count)
    std::vector<double> conductance;  // row-major node_count x node_count, W/degC
    std::vector<double> capacitance;  // J/degC, per node
    double ambient_temp = 45.0;       // degC

    double g(std::size_t i, std::size_t j) const { return conductance[i * node_count + j]; }
    // Total conductance to ambient (sum of row sums); the effective g for
    // the one-dimensional stability reduction.
    double ambient_conductance() const;
    // Validates symmetry, sign structure, positive capacitances.
    void validate() const;
    // Largest stable explicit-Euler step: min_i C_i / G_ii.
    double max_stable_dt() const;
};

// Parameters of the tiled default floorplan: clusters of `cores_per_cluster`
// cores around one spreader node each, spreaders chained in a line.
struct FloorplanParams {
    std::size_t core_count = 4;
    std::size_t cores_per_cluster = 4;
    double g_core_spreader = 2.0;    // W/degC
    double g_core_core = 0.5;        // W/degC, within a cluster
    double g_spreader_ambient = 0.8; // W/degC, per spreader
    double g_spreader_spreader = 0.5;
    double core_capacitance = 0.03;  // J/degC
    double spreader_capacitance = 0.3;
    double ambient_temp = 45.0;

    bool operator==(const FloorplanParams&) const = default;
};

ThermalNetwork build_floorplan(const FloorplanParams& params);

// One explicit forward-Euler step: T' = T + dt * C^-1 * (P - G (T - Ta)).
// Powers beyond powers.size() (e.g. spreader nodes) are treated as zero.
std::vector<double> thermal_step(const ThermalNetwork& network,
                                 std::span<const double> temps,
                                 std::span<const double> powers,
                                 double dt);

}  // namespace soctherm
