#pragma once

#include <optional>

#include "cvsim/circuit.hpp"
#include "cvsim/fock_state.hpp"
#include "cvsim/gaussian_state.hpp"
#include "cvsim/grid_state.hpp"

namespace cvsim {

enum class BackendKind { Grid, Gaussian, Fock };

const char *backend_name(BackendKind kind);
std::optional<BackendKind> backend_from_name(const std::string &name);

struct ExecutionConfig {
    BackendKind backend = BackendKind::Gaussian;
    HBar hbar;
    int grid_n = 512;
    double grid_extent = 0.0; // 0 -> self-dual extent sqrt(2 pi hbar n)
    int cutoff = 40;

    Grid make_grid() const;
};

struct MeasurementRecord {
    int op_index;
    int mode;
    double value;
};

/// Concrete final states, one member populated per backend. The grid
/// backend keeps one single-mode state per circuit mode (none of the grid
/// ops entangle); gaussian/fock keep the joint state of the unmeasured
/// modes with mode_map giving each circuit mode's index there (-1 once
/// measured).
struct FinalStates {
    std::vector<GridState> grid_modes;
    std::optional<GaussianState> gaussian;
    std::optional<FockState> fock;
    std::vector<int> mode_map;
};

/// Final state snapshot (backend-tagged JSON) plus measurement outcomes in
/// op order. Grid measurements collapse in place; gaussian and fock
/// measurements drop the measured mode (snapshot carries a mode_map from
/// circuit modes to snapshot modes, null for measured ones).
struct ExecutionResult {
    std::vector<MeasurementRecord> outcomes;
    nlohmann::json snapshot;
    FinalStates states;

    nlohmann::json to_json() const;
};

/// Runs the circuit on the chosen backend. Preparations replace the mode's
/// initial state (the last preparation on a mode wins); all other ops apply
/// in order. Throws CapabilityError before touching any state when
/// classify() rejects the backend.
ExecutionResult execute(const Circuit &circuit, const ExecutionConfig &config,
                        Rng &rng);

} // namespace cvsim
