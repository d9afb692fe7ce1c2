#include "cvsim/execute.hpp"

#include <cmath>

namespace cvsim {

const char *backend_name(BackendKind kind) {
    switch (kind) {
    case BackendKind::Grid:
        return "grid";
    case BackendKind::Gaussian:
        return "gaussian";
    case BackendKind::Fock:
        return "fock";
    }
    return "?";
}

std::optional<BackendKind> backend_from_name(const std::string &name) {
    if (name == "grid")
        return BackendKind::Grid;
    if (name == "gaussian")
        return BackendKind::Gaussian;
    if (name == "fock")
        return BackendKind::Fock;
    return std::nullopt;
}

Grid ExecutionConfig::make_grid() const {
    if (grid_extent > 0.0)
        return Grid(grid_n, grid_extent, hbar);
    return Grid::self_dual(grid_n, hbar);
}

nlohmann::json ExecutionResult::to_json() const {
    nlohmann::json outs = nlohmann::json::array();
    for (const auto &rec : outcomes)
        outs.push_back({{"op_index", rec.op_index},
                        {"mode", rec.mode},
                        {"value", rec.value}});
    return {{"outcomes", std::move(outs)}, {"snapshot", snapshot}};
}

namespace {

Complex dgate_alpha(const GateOp &op, HBar hbar) {
    if (op.params.size() == 1)
        return Complex(op.params[0], 0.0);
    const double scale = std::sqrt(2.0 * hbar.value());
    return Complex(op.params[0] / scale, op.params[1] / scale);
}

double param_or(const GateOp &op, std::size_t i, double fallback) {
    return i < op.params.size() ? op.params[i] : fallback;
}

// ---- grid backend ------------------------------------------------------

GridState grid_prepare(const GateOp *prep, const Grid &grid) {
    if (prep == nullptr)
        return GridState::vacuum(grid);
    const double hbar = grid.hbar().value();
    switch (prep->kind) {
    case GateKind::Vacuum:
        return GridState::vacuum(grid);
    case GateKind::Squeezed: {
        if (param_or(*prep, 1, 0.0) != 0.0)
            throw CapabilityError("grid backend supports axis-aligned "
                                  "Squeezed preparations only");
        return GridState::squeezed_vacuum(grid, std::exp(prep->params[0]));
    }
    case GateKind::Coherent: {
        const Complex alpha(prep->params[0], param_or(*prep, 1, 0.0));
        const double s = std::sqrt(2.0 * hbar);
        return GridState::vacuum(grid).displace(0, s * alpha.real(),
                                                s * alpha.imag());
    }
    default:
        throw CapabilityError("not a preparation op");
    }
}

ExecutionResult execute_grid(const Circuit &circuit,
                             const ExecutionConfig &config, Rng &rng,
                             const std::vector<const GateOp *> &preps,
                             const std::vector<std::pair<int, const GateOp *>>
                                 &gates) {
    const Grid grid = config.make_grid();
    const double hbar = config.hbar.value();
    const double s2h = std::sqrt(2.0 * hbar);
    std::vector<GridState> modes;
    modes.reserve(circuit.mode_count);
    for (int m = 0; m < circuit.mode_count; ++m)
        modes.push_back(grid_prepare(preps[m], grid));

    ExecutionResult result;
    for (const auto &[index, op] : gates) {
        const int m = op->targets[0];
        GridState &st = modes[m];
        switch (op->kind) {
        case GateKind::Xgate:
            st = st.displace(0, op->params[0], 0.0);
            break;
        case GateKind::Zgate:
            st = st.displace(0, 0.0, op->params[0]);
            break;
        case GateKind::Dgate: {
            const Complex alpha = dgate_alpha(*op, config.hbar);
            st = st.displace(0, s2h * alpha.real(), s2h * alpha.imag());
            break;
        }
        case GateKind::Sgate:
            st = st.squeeze(0, op->params[0], param_or(*op, 1, 0.0));
            break;
        case GateKind::Rgate:
            st = st.rotate(0, op->params[0]);
            break;
        case GateKind::Fourier:
            st = st.fourier(0);
            break;
        case GateKind::Invert:
            st = st.invert_about({op->params[0], op->params[1], 0});
            break;
        case GateKind::MeasureX: {
            const MeasurementOutcome mo = st.measure_x_collapse(0, rng);
            result.outcomes.push_back({index, m, mo.outcome_x});
            st = mo.post_state;
            break;
        }
        default:
            throw CapabilityError(std::string(gate_name(op->kind)) +
                                  " is not executable on the grid backend");
        }
    }

    // joint tensor snapshot (mode 0 slowest)
    result.states.grid_modes = modes;
    result.states.mode_map.resize(circuit.mode_count);
    for (int m = 0; m < circuit.mode_count; ++m)
        result.states.mode_map[m] = m;
    if (circuit.mode_count == 1) {
        result.snapshot = {{"backend", "grid"}, {"state", modes[0].to_json()}};
    } else {
        const int n = grid.n_points();
        ComplexVector joint(std::int64_t(n) * n);
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                joint[std::int64_t(k) * n + l] =
                    modes[0].amplitudes()[k] * modes[1].amplitudes()[l];
        GridState joint_state(grid, 2, std::move(joint));
        result.snapshot = {{"backend", "grid"},
                           {"state", joint_state.to_json()}};
    }
    return result;
}

// ---- gaussian backend --------------------------------------------------

ExecutionResult
execute_gaussian(const Circuit &circuit, const ExecutionConfig &config,
                 Rng &rng, const std::vector<const GateOp *> &preps,
                 const std::vector<std::pair<int, const GateOp *>> &gates) {
    GaussianState state = GaussianState::vacuum(circuit.mode_count,
                                                config.hbar);
    // preparations from vacuum
    for (int m = 0; m < circuit.mode_count; ++m) {
        const GateOp *prep = preps[m];
        if (prep == nullptr)
            continue;
        switch (prep->kind) {
        case GateKind::Vacuum:
            break;
        case GateKind::Squeezed:
            state = state.apply_squeeze(m, prep->params[0],
                                        param_or(*prep, 1, 0.0));
            break;
        case GateKind::Coherent:
            state = state.apply_displacement(
                m, Complex(prep->params[0], param_or(*prep, 1, 0.0)));
            break;
        default:
            break;
        }
    }

    // logical circuit mode -> current state mode (-1 once measured)
    std::vector<int> mode_map(circuit.mode_count);
    for (int m = 0; m < circuit.mode_count; ++m)
        mode_map[m] = m;

    ExecutionResult result;
    for (const auto &[index, op] : gates) {
        std::vector<int> phys(op->targets.size());
        for (std::size_t i = 0; i < op->targets.size(); ++i) {
            phys[i] = mode_map[op->targets[i]];
            if (phys[i] < 0)
                throw CapabilityError("gate on already-measured mode q[" +
                                      std::to_string(op->targets[i]) + "]");
        }
        switch (op->kind) {
        case GateKind::Xgate:
            state = state.apply_displacement(
                phys[0], op->params[0] / std::sqrt(2.0 * config.hbar.value()));
            break;
        case GateKind::Zgate:
            state = state.apply_displacement(
                phys[0], Complex(0.0, op->params[0] /
                                          std::sqrt(2.0 * config.hbar.value())));
            break;
        case GateKind::Dgate:
            state = state.apply_displacement(phys[0],
                                             dgate_alpha(*op, config.hbar));
            break;
        case GateKind::Sgate:
            state = state.apply_squeeze(phys[0], op->params[0],
                                        param_or(*op, 1, 0.0));
            break;
        case GateKind::Rgate:
            state = state.apply_rotation(phys[0], op->params[0]);
            break;
        case GateKind::Fourier:
            state = state.apply_rotation(phys[0], kPi / 2.0);
            break;
        case GateKind::BSgate:
            state = state.apply_mixer(phys[0], phys[1], op->params[0],
                                      param_or(*op, 1, 0.0));
            break;
        case GateKind::MeasureX: {
            const HomodyneOutcome ho = state.homodyne_x(phys[0], rng);
            result.outcomes.push_back({index, op->targets[0], ho.outcome});
            state = ho.post_state;
            for (int m = 0; m < circuit.mode_count; ++m) {
                if (mode_map[m] == phys[0])
                    mode_map[m] = -1;
                else if (mode_map[m] > phys[0])
                    --mode_map[m];
            }
            break;
        }
        default:
            throw CapabilityError(std::string(gate_name(op->kind)) +
                                  " is not executable on the gaussian "
                                  "backend");
        }
    }
    nlohmann::json map = nlohmann::json::array();
    for (int m = 0; m < circuit.mode_count; ++m)
        map.push_back(mode_map[m] < 0 ? nlohmann::json(nullptr)
                                      : nlohmann::json(mode_map[m]));
    result.snapshot = {{"backend", "gaussian"},
                       {"state", state.modes() > 0 ? state.to_json()
                                                   : nlohmann::json(nullptr)},
                       {"mode_map", std::move(map)}};
    if (state.modes() > 0)
        result.states.gaussian = state;
    result.states.mode_map = mode_map;
    return result;
}

// ---- fock backend ------------------------------------------------------

ComplexVector fock_prep_vector(const GateOp *prep, int cutoff, HBar hbar) {
    if (prep == nullptr)
        return FockState::vacuum(1, cutoff, hbar).amplitudes();
    switch (prep->kind) {
    case GateKind::Vacuum:
        return FockState::vacuum(1, cutoff, hbar).amplitudes();
    case GateKind::Squeezed: {
        const Complex zeta = std::polar(prep->params[0],
                                        param_or(*prep, 1, 0.0));
        return FockState::vacuum(1, cutoff, hbar)
            .apply_single(squeeze_gate(zeta, cutoff), 0)
            .amplitudes();
    }
    case GateKind::Coherent:
        return FockState::coherent(
                   Complex(prep->params[0], param_or(*prep, 1, 0.0)), cutoff,
                   hbar)
            .amplitudes();
    default:
        throw CapabilityError("not a preparation op");
    }
}

struct FockMeasurement {
    int bin;
    double value;
    std::optional<FockState> post; // nullopt when no modes remain
};

FockMeasurement fock_measure_x(const FockState &state, int mode, Rng &rng) {
    const int cutoff = state.cutoff();
    const double hbar = state.hbar().value();
    const double need = 2.0 * std::sqrt(2.0 * hbar * cutoff);
    const Grid grid(512, 1.5 * need, state.hbar());
    const double dx = grid.spacing();
    if (state.modes() == 1) {
        const GridState gs = state.to_grid(grid).normalized();
        const MeasurementOutcome mo = gs.measure_x(0, rng);
        return {mo.outcome_bin, mo.outcome_x, std::nullopt};
    }
    // H(b, m) = psi_m(x_b)
    RealMatrix synth(grid.n_points(), cutoff);
    for (int m = 0; m < cutoff; ++m)
        synth.col(m) = hermite_function(m, grid).real();
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        amp_mat(state.amplitudes().data(), cutoff, cutoff);
    // rows: measured mode levels, cols: other mode levels
    ComplexMatrix a = (mode == 0) ? ComplexMatrix(amp_mat)
                                  : ComplexMatrix(amp_mat.transpose());
    ComplexMatrix joint = synth.cast<Complex>() * a; // (bins x other-levels)
    RealVector pmf(grid.n_points());
    for (int b = 0; b < grid.n_points(); ++b)
        pmf[b] = joint.row(b).squaredNorm() * dx;
    const double total = pmf.sum();
    if (total <= 0.0)
        throw DomainError("fock measurement found zero probability mass");
    const double u = rng.uniform01() * total;
    int bin = grid.n_points() - 1;
    double acc = 0.0;
    for (int b = 0; b < grid.n_points(); ++b) {
        acc += pmf[b];
        if (u < acc) {
            bin = b;
            break;
        }
    }
    ComplexVector cond = joint.row(bin).transpose();
    cond /= cond.norm();
    return {bin, grid.point(bin),
            FockState(1, cutoff, std::move(cond), state.hbar())};
}

ExecutionResult
execute_fock(const Circuit &circuit, const ExecutionConfig &config, Rng &rng,
             const std::vector<const GateOp *> &preps,
             const std::vector<std::pair<int, const GateOp *>> &gates) {
    const int cutoff = config.cutoff;
    std::optional<FockState> state;
    if (circuit.mode_count == 1) {
        state = FockState(1, cutoff, fock_prep_vector(preps[0], cutoff,
                                                      config.hbar),
                          config.hbar);
    } else {
        const ComplexVector c0 = fock_prep_vector(preps[0], cutoff,
                                                  config.hbar);
        const ComplexVector c1 = fock_prep_vector(preps[1], cutoff,
                                                  config.hbar);
        ComplexVector joint(std::int64_t(cutoff) * cutoff);
        for (int i = 0; i < cutoff; ++i)
            for (int j = 0; j < cutoff; ++j)
                joint[std::int64_t(i) * cutoff + j] = c0[i] * c1[j];
        state = FockState(2, cutoff, std::move(joint), config.hbar);
    }

    std::vector<int> mode_map(circuit.mode_count);
    for (int m = 0; m < circuit.mode_count; ++m)
        mode_map[m] = m;

    ExecutionResult result;
    for (const auto &[index, op] : gates) {
        std::vector<int> phys(op->targets.size());
        for (std::size_t i = 0; i < op->targets.size(); ++i) {
            phys[i] = mode_map[op->targets[i]];
            if (phys[i] < 0)
                throw CapabilityError("gate on already-measured mode q[" +
                                      std::to_string(op->targets[i]) + "]");
        }
        if (!state.has_value())
            throw CapabilityError("all modes have been measured");
        switch (op->kind) {
        case GateKind::Xgate:
            state = state->apply_single(
                displacement_gate(op->params[0] /
                                      std::sqrt(2.0 * config.hbar.value()),
                                  cutoff),
                phys[0]);
            break;
        case GateKind::Zgate:
            state = state->apply_single(
                displacement_gate(
                    Complex(0.0, op->params[0] /
                                     std::sqrt(2.0 * config.hbar.value())),
                    cutoff),
                phys[0]);
            break;
        case GateKind::Dgate:
            state = state->apply_single(
                displacement_gate(dgate_alpha(*op, config.hbar), cutoff),
                phys[0]);
            break;
        case GateKind::Sgate:
            state = state->apply_single(
                squeeze_gate(std::polar(op->params[0], param_or(*op, 1, 0.0)),
                             cutoff),
                phys[0]);
            break;
        case GateKind::Rgate:
            state = state->apply_single(phase_gate(op->params[0], cutoff),
                                        phys[0]);
            break;
        case GateKind::Fourier:
            state = state->apply_single(phase_gate(kPi / 2.0, cutoff),
                                        phys[0]);
            break;
        case GateKind::BSgate:
            if (phys[0] != 0 || phys[1] != 1) {
                if (!(phys[0] == 1 && phys[1] == 0))
                    throw CapabilityError("fock mixer needs both modes");
                // swap roles: B(theta, phi) on (1, 0) equals
                // B(-theta, -phi) ... realized by parameter reflection
                state = state->apply_two(mixer_matrix(
                    -op->params[0], -param_or(*op, 1, 0.0), cutoff));
            } else {
                state = state->apply_two(mixer_matrix(
                    op->params[0], param_or(*op, 1, 0.0), cutoff));
            }
            break;
        case GateKind::MeasureX: {
            FockMeasurement fm = fock_measure_x(*state, phys[0], rng);
            result.outcomes.push_back({index, op->targets[0], fm.value});
            for (int m = 0; m < circuit.mode_count; ++m) {
                if (mode_map[m] == phys[0])
                    mode_map[m] = -1;
                else if (mode_map[m] > phys[0])
                    --mode_map[m];
            }
            state = std::move(fm.post);
            break;
        }
        default:
            throw CapabilityError(std::string(gate_name(op->kind)) +
                                  " is not executable on the fock backend");
        }
    }
    nlohmann::json map = nlohmann::json::array();
    for (int m = 0; m < circuit.mode_count; ++m)
        map.push_back(mode_map[m] < 0 ? nlohmann::json(nullptr)
                                      : nlohmann::json(mode_map[m]));
    result.snapshot = {{"backend", "fock"},
                       {"state", state.has_value() ? state->to_json()
                                                   : nlohmann::json(nullptr)},
                       {"mode_map", std::move(map)}};
    result.states.fock = std::move(state);
    result.states.mode_map = mode_map;
    return result;
}

} // namespace

ExecutionResult execute(const Circuit &circuit, const ExecutionConfig &config,
                        Rng &rng) {
    circuit.validate();
    const BackendClass cls = classify(circuit);
    const bool permitted =
        (config.backend == BackendKind::Grid && cls.grid_compatible) ||
        (config.backend == BackendKind::Gaussian && cls.gaussian_compatible) ||
        (config.backend == BackendKind::Fock && cls.fock_compatible);
    if (!permitted)
        throw CapabilityError(std::string("circuit is not ") +
                              backend_name(config.backend) + "-compatible");

    // last preparation per mode wins; everything else runs in order
    std::vector<const GateOp *> preps(circuit.mode_count, nullptr);
    std::vector<std::pair<int, const GateOp *>> gates;
    for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
        const GateOp &op = circuit.ops[i];
        if (is_preparation(op.kind))
            preps[op.targets[0]] = &op;
        else
            gates.emplace_back(int(i), &op);
    }

    switch (config.backend) {
    case BackendKind::Grid:
        return execute_grid(circuit, config, rng, preps, gates);
    case BackendKind::Gaussian:
        return execute_gaussian(circuit, config, rng, preps, gates);
    case BackendKind::Fock:
        return execute_fock(circuit, config, rng, preps, gates);
    }
    throw ConfigError("unknown backend");
}

} // namespace cvsim
