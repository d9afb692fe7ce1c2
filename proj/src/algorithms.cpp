#include "cvsim/algorithms.hpp"

#include <cmath>

#include "cvsim/execute.hpp"

namespace cvsim {

void GroverProblem::validate() const {
    if (!detail::is_power_of_two(bins))
        throw ConfigError("grover bins must be a power of two, got " +
                          std::to_string(bins));
    if (target_bin < 0 || target_bin >= bins)
        throw ConfigError("grover target bin out of range");
    if (!(extent > 0.0))
        throw ConfigError("grover extent must be positive");
    if (std::abs(start_x) > extent / 2.0)
        throw ConfigError("grover start_x outside the interval");
}

GroverProblem GroverProblem::standard(int bins, int target_bin, HBar hbar) {
    GroverProblem p;
    p.bins = bins;
    p.extent = std::sqrt(2.0 * kPi * hbar.value() * bins);
    p.target_bin = target_bin;
    p.validate();
    return p;
}

HBar grover_hbar(const GroverProblem &problem) {
    return HBar(problem.extent * problem.extent / (2.0 * kPi * problem.bins));
}

GroverOracle reference_grover_oracle(const GroverProblem &problem) {
    const ProjectionWindow target{problem.bin_center(problem.target_bin),
                                  problem.precision(), 0};
    return [target](const GridState &state) {
        return state.invert_about(target);
    };
}

GridState grover_iterate(const GridState &state, const GroverOracle &oracle,
                         const ProjectionWindow &start_window) {
    GridState out = oracle(state.fourier(0));
    if (std::abs(out.norm() - 1.0) > 1e-9)
        throw ContractError("grover oracle is not norm-preserving");
    return out.inverse_fourier(0).invert_about(start_window);
}

double grover_default_r(const GroverProblem &problem, HBar hbar) {
    // sigma_x = sqrt(hbar/2)/R = precision/5.2 puts ~99% of the Gaussian
    // inside one cell
    return 5.2 * std::sqrt(hbar.value() / 2.0) / problem.precision();
}

GroverTrace grover_search(const GroverProblem &problem,
                          const GroverOracle &oracle,
                          std::optional<int> iterations, bool realistic,
                          double r_factor) {
    problem.validate();
    const HBar hbar = grover_hbar(problem);
    const Grid grid(problem.bins, problem.extent, hbar);
    const double start_center = grid.point(grid.nearest_index(problem.start_x));
    const ProjectionWindow start_window{start_center, problem.precision(), 0};
    const ProjectionWindow target_window{
        problem.bin_center(problem.target_bin), problem.precision(), 0};

    GridState state = [&] {
        if (!realistic)
            return GridState::delta(grid, start_center);
        const double r = (r_factor > 0.0) ? r_factor
                                          : grover_default_r(problem, hbar);
        const double h = hbar.value();
        return GridState::from_function(
            [=](double x) {
                const double u = x - start_center;
                return std::exp(-r * r * u * u / (2.0 * h));
            },
            grid);
    }();

    const int iters = iterations.value_or(
        int(std::floor(kPi / 4.0 * std::sqrt(double(problem.bins)))));
    GroverTrace trace;
    trace.target_probability.reserve(iters + 1);
    auto readout_probability = [&](const GridState &s) {
        return s.fourier(0).probability_in(target_window);
    };
    trace.target_probability.push_back(readout_probability(state));
    for (int k = 0; k < iters; ++k) {
        state = grover_iterate(state, oracle, start_window);
        trace.target_probability.push_back(readout_probability(state));
    }
    trace.iterations_run = iters;
    trace.success_prob_final = trace.target_probability.back();
    return trace;
}

// ---- Deutsch-Jozsa -----------------------------------------------------

const char *dj_verdict_name(DJVerdict v) {
    return v == DJVerdict::Constant ? "constant" : "balanced";
}

DJOracle dj_constant_oracle() {
    return {{{GateKind::Xgate, {1}, {1.0}}}, "constant"};
}

DJOracle dj_balanced_oracle() {
    return {{{GateKind::Rgate, {0}, {kPi}},
             {GateKind::Zgate, {0}, {2.0}},
             {GateKind::Xgate, {1}, {1.0}}},
            "balanced"};
}

double dj_threshold() {
    // log-midpoint of the reference families' mean |outcome| at
    // squeeze_r = 2, hbar = 2 (constant 0.108457, balanced 2.001201);
    // regenerate with tools/dj_tau_calibration
    return 0.4659;
}

Circuit dj_circuit(const DJOracle &oracle, double squeeze_r) {
    Circuit c;
    c.mode_count = 2;
    c.ops = {
        {GateKind::Squeezed, {0}, {squeeze_r}},
        {GateKind::Squeezed, {1}, {squeeze_r}},
        {GateKind::Xgate, {1}, {kPi / 2.0}},
        {GateKind::Rgate, {0}, {kPi / 2.0}},
        {GateKind::Rgate, {1}, {kPi / 2.0}},
    };
    for (const auto &op : oracle.ops)
        c.ops.push_back(op);
    c.ops.push_back({GateKind::Rgate, {0}, {-kPi / 2.0}});
    c.ops.push_back({GateKind::MeasureX, {0}, {}});
    c.validate();
    return c;
}

DJResult dj_run(const DJOracle &oracle, double squeeze_r, Rng &rng, int shots,
                HBar hbar) {
    if (shots < 1)
        throw ConfigError("dj_run requires at least one shot");
    if (!(squeeze_r > 0.0))
        throw ConfigError("dj_run requires positive squeeze_r");
    const Circuit circuit = dj_circuit(oracle, squeeze_r);
    if (!classify(circuit).gaussian_compatible)
        throw CapabilityError("DJ oracle must be a Gaussian op sequence");
    ExecutionConfig config;
    config.backend = BackendKind::Gaussian;
    config.hbar = hbar;
    double acc = 0.0;
    for (int s = 0; s < shots; ++s) {
        Rng shot_rng = rng.split();
        const ExecutionResult result = execute(circuit, config, shot_rng);
        if (result.outcomes.size() != 1)
            throw ContractError("DJ circuit must produce exactly one "
                                "measurement");
        acc += std::abs(result.outcomes[0].value);
    }
    const double mean_abs = acc / shots;
    return {mean_abs, mean_abs < dj_threshold() ? DJVerdict::Constant
                                                : DJVerdict::Balanced};
}

} // namespace cvsim
