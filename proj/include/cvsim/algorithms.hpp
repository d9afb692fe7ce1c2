#pragma once

#include <functional>
#include <optional>

#include "cvsim/circuit.hpp"
#include "cvsim/grid_state.hpp"

namespace cvsim {

/// Search for one marked interval among N = L/dx equal cells of
/// (-L/2, L/2). The simulation grid puts one point in each cell, so the
/// inversion windows are rank-one and the two reflections realize the
/// textbook amplitude-amplification rotation.
struct GroverProblem {
    double extent;  // L
    int bins;       // N, power of two
    int target_bin; // in [0, N)
    double start_x = 0.0;

    double precision() const { return extent / bins; }
    /// Center of interval k.
    double bin_center(int k) const {
        return -extent / 2.0 + (k + 0.5) * precision();
    }
    void validate() const;

    /// Self-dual problem of N cells for the given hbar.
    static GroverProblem standard(int bins, int target_bin, HBar hbar);
};

/// Black-box oracle: any norm-preserving map of grid states. The reference
/// oracle is the inversion about the target window.
using GroverOracle = std::function<GridState(const GridState &)>;
GroverOracle reference_grover_oracle(const GroverProblem &problem);

struct GroverTrace {
    std::vector<double> target_probability; // index = iterations applied
    int iterations_run = 0;
    double success_prob_final = 0.0;
};

/// One amplification step: Fourier, oracle, inverse Fourier, inversion
/// about the start window. Unitary.
GridState grover_iterate(const GridState &state, const GroverOracle &oracle,
                         const ProjectionWindow &start_window);

/// Runs the amplification loop from a one-bin start state (exact mode) or
/// a Gaussian of squeezing factor R peaked at the start (realistic mode).
/// The recorded probability is the target-window mass of the Fourier
/// readout of the iterated state; default iteration count is
/// floor(pi/4 sqrt(N)).
GroverTrace grover_search(const GroverProblem &problem,
                          const GroverOracle &oracle,
                          std::optional<int> iterations = std::nullopt,
                          bool realistic = false, double r_factor = 0.0);

/// R that puts ~99% of the realistic start Gaussian inside one cell.
double grover_default_r(const GroverProblem &problem, HBar hbar);

/// hbar for which the problem's grid is self-dual (the dynamics are
/// invariant under this choice).
HBar grover_hbar(const GroverProblem &problem);

// ---- Deutsch-Jozsa -----------------------------------------------------

enum class DJVerdict { Constant, Balanced };
const char *dj_verdict_name(DJVerdict v);

/// Opaque Gaussian op sequence spliced between the rotation pairs. The tag
/// is for the test harness only; the decision procedure never reads it.
struct DJOracle {
    std::vector<GateOp> ops;
    std::string tag;
};

/// f(x) = 0: leaves the query register alone (the ancilla displacement of
/// the reference listing).
DJOracle dj_constant_oracle();
/// Reference balanced oracle: a pi rotation plus a momentum kick on the
/// query register (the Gaussian stand-in for a balanced phase pattern),
/// plus the ancilla displacement.
DJOracle dj_balanced_oracle();

/// Decision threshold on mean |outcome|, calibrated as the log-midpoint
/// between the two reference families at squeeze_r = 2 (see
/// tools/dj_tau_calibration).
double dj_threshold();

struct DJResult {
    double mean_abs_outcome;
    DJVerdict verdict;
};

/// The two-mode decision circuit: squeezed preparations, ancilla offset,
/// the Rgate(pi/2) pair, the oracle ops, Rgate(-pi/2) and MeasureX on the
/// query mode.
Circuit dj_circuit(const DJOracle &oracle, double squeeze_r);

/// Executes the circuit on the gaussian backend `shots` times and
/// thresholds the mean absolute outcome.
DJResult dj_run(const DJOracle &oracle, double squeeze_r, Rng &rng, int shots,
                HBar hbar = HBar());

} // namespace cvsim
