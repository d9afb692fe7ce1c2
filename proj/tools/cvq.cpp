#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "cvsim/algorithms.hpp"
#include "cvsim/execute.hpp"
#include "cvsim/verify.hpp"
#include "cvsim/wigner.hpp"

namespace {

using namespace cvsim;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitParse = 2;
constexpr int kExitCapability = 3;
constexpr int kExitConfig = 4;

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string &out_path, const std::string &content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path);
    if (!out)
        throw ConfigError("cannot open " + out_path + " for writing");
    out << content;
}

struct CommonOpts {
    double hbar = 2.0;
    std::uint64_t seed = 0;
    std::string out = "-";
};

void add_common(CLI::App *cmd, CommonOpts &opts) {
    cmd->add_option("--hbar", opts.hbar, "value of hbar (default 2.0)");
    cmd->add_option("--seed", opts.seed, "RNG seed (default 0)");
    cmd->add_option("-o,--out", opts.out, "output path ('-' for stdout)");
}

struct BackendOpts {
    std::string backend = "gaussian";
    int grid_n = 512;
    double grid_extent = 0.0;
    int cutoff = 40;
};

void add_backend(CLI::App *cmd, BackendOpts &opts) {
    cmd->add_option("-b,--backend", opts.backend,
                     "backend: grid, gaussian or fock")
        ->check(CLI::IsMember({"grid", "gaussian", "fock"}));
    cmd->add_option("--grid-n", opts.grid_n,
                    "grid points per mode (power of two)");
    cmd->add_option("--grid-extent", opts.grid_extent,
                    "grid extent L (default: self-dual sqrt(2 pi hbar n))");
    cmd->add_option("--cutoff", opts.cutoff, "fock basis cutoff");
}

ExecutionConfig make_config(const CommonOpts &common,
                            const BackendOpts &backend) {
    ExecutionConfig config;
    config.backend = *backend_from_name(backend.backend);
    config.hbar = HBar(common.hbar);
    config.grid_n = backend.grid_n;
    config.grid_extent = backend.grid_extent;
    config.cutoff = backend.cutoff;
    return config;
}

int cmd_run(const std::string &input, const CommonOpts &common,
            const BackendOpts &backend, int shots,
            const std::string &format) {
    const Circuit circuit = parse_circuit(read_file(input));
    const ExecutionConfig config = make_config(common, backend);
    Rng master(common.seed);

    nlohmann::json shots_json = nlohmann::json::array();
    std::ostringstream csv;
    csv << "shot,op_index,mode,value\n";
    nlohmann::json single;
    nlohmann::json last_snapshot;
    char buf[64];
    for (int s = 0; s < shots; ++s) {
        Rng shot_rng = master.split();
        const ExecutionResult result = execute(circuit, config, shot_rng);
        for (const auto &rec : result.outcomes) {
            shots_json.push_back({{"shot", s},
                                  {"op_index", rec.op_index},
                                  {"mode", rec.mode},
                                  {"value", rec.value}});
            std::snprintf(buf, sizeof buf, "%.17g", rec.value);
            csv << s << "," << rec.op_index << "," << rec.mode << "," << buf
                << "\n";
        }
        last_snapshot = result.snapshot;
        if (shots == 1)
            single = result.to_json();
    }
    if (format == "csv") {
        write_output(common.out, csv.str());
    } else if (shots == 1) {
        write_output(common.out, single.dump(2) + "\n");
    } else {
        const nlohmann::json doc = {{"outcomes", std::move(shots_json)},
                                    {"snapshot", std::move(last_snapshot)}};
        write_output(common.out, doc.dump(2) + "\n");
    }
    return kExitOk;
}

GridState single_mode_state(const ExecutionResult &result,
                            const ExecutionConfig &config, int mode) {
    switch (config.backend) {
    case BackendKind::Grid:
        if (mode < 0 || mode >= int(result.states.grid_modes.size()))
            throw DomainError("mode index out of range");
        return result.states.grid_modes[mode];
    case BackendKind::Fock: {
        if (mode < 0 || mode >= int(result.states.mode_map.size()) ||
            result.states.mode_map[mode] < 0 || !result.states.fock)
            throw DomainError("mode was measured away or out of range");
        const FockState &fock = *result.states.fock;
        const int phys = result.states.mode_map[mode];
        FockState single = [&] {
            if (fock.modes() == 1)
                return fock;
            // factor out the requested mode; entangled states have no
            // single-mode pure reduction
            const int d = fock.cutoff();
            Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic,
                                           Eigen::Dynamic, Eigen::RowMajor>>
                m(fock.amplitudes().data(), d, d);
            Eigen::JacobiSVD<ComplexMatrix> svd(
                m, Eigen::ComputeThinU | Eigen::ComputeThinV);
            if (svd.singularValues().size() > 1 &&
                svd.singularValues()[1] > 1e-10)
                throw DomainError("mode is entangled; its reduced state is "
                                  "not pure");
            ComplexVector factor =
                (phys == 0) ? ComplexVector(svd.matrixU().col(0))
                            : ComplexVector(svd.matrixV().col(0).conjugate());
            return FockState(1, d, std::move(factor), fock.hbar());
        }();
        const double need =
            2.0 * std::sqrt(2.0 * config.hbar.value() * single.cutoff());
        int n = 512;
        double extent = Grid::self_dual(n, config.hbar).extent();
        while (extent < need) {
            n *= 2;
            extent = Grid::self_dual(n, config.hbar).extent();
        }
        return single.to_grid(Grid::self_dual(n, config.hbar)).normalized();
    }
    default:
        throw DomainError("single_mode_state: unsupported backend here");
    }
}

int cmd_wigner(const std::string &input, const CommonOpts &common,
               const BackendOpts &backend, int mode, int axis_points,
               double axis_half, const std::string &format,
               const std::string &pgm_path) {
    const Circuit circuit = parse_circuit(read_file(input));
    const ExecutionConfig config = make_config(common, backend);
    Rng rng(common.seed);
    const ExecutionResult result = execute(circuit, config, rng);

    const double half = (axis_half > 0.0)
                            ? axis_half
                            : 5.0 * std::sqrt(common.hbar / 2.0);
    const RealVector axis = linspace(-half, half, axis_points);

    WignerGrid w = [&] {
        if (config.backend == BackendKind::Gaussian) {
            if (!result.states.gaussian ||
                mode >= int(result.states.mode_map.size()) || mode < 0 ||
                result.states.mode_map[mode] < 0)
                throw DomainError("mode was measured away or out of range");
            return wigner_from_gaussian(*result.states.gaussian,
                                        result.states.mode_map[mode], axis,
                                        axis);
        }
        return wigner_from_grid(single_mode_state(result, config, mode), axis,
                                axis);
    }();

    std::fprintf(stderr, "wigner normalization: %.6f\n",
                 normalization_check(w));
    if (!pgm_path.empty())
        export_pgm(w, pgm_path);
    if (common.out.empty() || common.out == "-") {
        if (format == "csv") {
            std::cout << "x,p,w\n";
            char buf[96];
            for (int i = 0; i < w.p_axis.size(); ++i)
                for (int j = 0; j < w.x_axis.size(); ++j) {
                    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n",
                                  w.x_axis[j], w.p_axis[i], w.values(i, j));
                    std::cout << buf;
                }
        } else {
            nlohmann::json jx = nlohmann::json::array(),
                           jp = nlohmann::json::array(),
                           jv = nlohmann::json::array();
            for (int j = 0; j < w.x_axis.size(); ++j)
                jx.push_back(w.x_axis[j]);
            for (int i = 0; i < w.p_axis.size(); ++i)
                jp.push_back(w.p_axis[i]);
            for (int i = 0; i < w.values.rows(); ++i) {
                nlohmann::json row = nlohmann::json::array();
                for (int j = 0; j < w.values.cols(); ++j)
                    row.push_back(w.values(i, j));
                jv.push_back(std::move(row));
            }
            std::cout << nlohmann::json{{"x_axis", jx},
                                        {"p_axis", jp},
                                        {"values", jv}}
                             .dump(2)
                      << "\n";
        }
    } else {
        export_wigner(w, format == "csv" ? WignerFormat::Csv
                                         : WignerFormat::Json,
                      common.out);
    }
    return kExitOk;
}

int cmd_grover(const CommonOpts &common, int bins, int target,
               std::optional<int> iterations, bool realistic, double r_factor,
               double extent, const std::string &trace_out) {
    GroverProblem problem;
    if (extent > 0.0) {
        problem.extent = extent;
        problem.bins = bins;
        problem.target_bin = target;
        problem.validate();
    } else {
        problem = GroverProblem::standard(bins, target, HBar(common.hbar));
    }
    const GroverTrace trace = grover_search(
        problem, reference_grover_oracle(problem), iterations, realistic,
        r_factor);
    if (!trace_out.empty()) {
        std::ofstream csv(trace_out);
        if (!csv)
            throw ConfigError("cannot open " + trace_out);
        csv << "iteration,target_prob\n";
        char buf[48];
        for (std::size_t i = 0; i < trace.target_probability.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g",
                          trace.target_probability[i]);
            csv << i << "," << buf << "\n";
        }
    }
    const nlohmann::json doc = {
        {"bins", problem.bins},
        {"target_bin", problem.target_bin},
        {"iterations", trace.iterations_run},
        {"success_prob_final", trace.success_prob_final},
        {"realistic", realistic}};
    write_output(common.out, doc.dump(2) + "\n");
    return kExitOk;
}

int cmd_dj(const CommonOpts &common, const std::string &oracle_sel, int shots,
           double squeeze_r) {
    DJOracle oracle;
    if (oracle_sel == "constant") {
        oracle = dj_constant_oracle();
    } else if (oracle_sel == "balanced") {
        oracle = dj_balanced_oracle();
    } else {
        const Circuit frag = parse_circuit(read_file(oracle_sel));
        if (frag.mode_count > 2)
            throw CapabilityError("oracle file may use at most 2 modes");
        oracle.ops = frag.ops;
        oracle.tag = oracle_sel;
    }
    Rng rng(common.seed);
    const DJResult result =
        dj_run(oracle, squeeze_r, rng, shots, HBar(common.hbar));
    const nlohmann::json doc = {
        {"verdict", dj_verdict_name(result.verdict)},
        {"mean_abs_outcome", result.mean_abs_outcome},
        {"threshold", dj_threshold()},
        {"shots", shots}};
    write_output(common.out, doc.dump(2) + "\n");
    return kExitOk;
}

int cmd_verify(const CommonOpts &common, bool as_json,
               const std::string &inject) {
    if (!inject.empty() && inject != "hbar-mismatch")
        throw ConfigError("unknown fault injection '" + inject + "'");
    const auto results =
        run_verification(HBar(common.hbar), inject == "hbar-mismatch");
    bool all_pass = true;
    if (as_json) {
        nlohmann::json checks = nlohmann::json::array();
        for (const auto &r : results) {
            checks.push_back(
                {{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
            all_pass = all_pass && r.pass;
        }
        write_output(common.out,
                     nlohmann::json{{"checks", std::move(checks)},
                                    {"all_pass", all_pass}}
                             .dump(2) +
                         "\n");
    } else {
        std::ostringstream out;
        for (const auto &r : results) {
            out << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  ("
                << r.detail << ")\n";
            all_pass = all_pass && r.pass;
        }
        out << (all_pass ? "all checks passed\n" : "FAILURES present\n");
        write_output(common.out, out.str());
    }
    return all_pass ? kExitOk : kExitError;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"cvq - continuous-variable quantum circuit simulator"};
    app.require_subcommand(1);

    // run
    auto *run = app.add_subcommand("run", "execute a .cvq circuit");
    CommonOpts run_common;
    BackendOpts run_backend;
    std::string run_input, run_format = "json";
    int run_shots = 1;
    run->add_option("input", run_input, "circuit file (.cvq)")->required();
    add_common(run, run_common);
    add_backend(run, run_backend);
    run->add_option("--shots", run_shots, "number of executions");
    run->add_option("--format", run_format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));

    // wigner
    auto *wig = app.add_subcommand("wigner",
                                   "execute a circuit and export the Wigner "
                                   "function of one mode");
    CommonOpts wig_common;
    BackendOpts wig_backend;
    std::string wig_input, wig_format = "csv", wig_pgm;
    int wig_mode = 0, wig_points = 200;
    double wig_half = 0.0;
    wig->add_option("input", wig_input, "circuit file (.cvq)")->required();
    add_common(wig, wig_common);
    add_backend(wig, wig_backend);
    wig->add_option("--mode", wig_mode, "mode index");
    wig->add_option("--points", wig_points, "axis point count");
    wig->add_option("--half-width", wig_half,
                    "axis half width (default 5 sqrt(hbar/2))");
    wig->add_option("--format", wig_format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    wig->add_option("--pgm", wig_pgm, "also write a grayscale PGM heatmap");

    // grover
    auto *gro = app.add_subcommand("grover", "continuous-variable Grover "
                                             "search demo");
    CommonOpts gro_common;
    int gro_bins = 64, gro_target = 0, gro_iter = -1;
    bool gro_realistic = false;
    double gro_r = 0.0, gro_extent = 0.0;
    std::string gro_trace;
    gro->add_option("--bins", gro_bins, "number of search cells (power of 2)")
        ->required();
    gro->add_option("--target", gro_target, "marked cell index")->required();
    gro->add_option("--iterations", gro_iter,
                    "iteration count (default floor(pi/4 sqrt(N)))");
    gro->add_flag("--realistic", gro_realistic,
                  "start from a Gaussian instead of a one-bin state");
    gro->add_option("--R", gro_r, "realistic-mode squeezing factor");
    gro->add_option("--extent", gro_extent, "search interval length L");
    gro->add_option("--trace-out", gro_trace,
                    "write per-iteration trace CSV here");
    add_common(gro, gro_common);

    // dj
    auto *dj = app.add_subcommand("dj", "continuous-variable Deutsch-Jozsa "
                                        "demo");
    CommonOpts dj_common;
    std::string dj_oracle = "constant";
    int dj_shots = 100;
    double dj_r = 2.0;
    dj->add_option("--oracle", dj_oracle,
                   "constant, balanced, or a .cvq fragment path");
    dj->add_option("--shots", dj_shots, "measurement repetitions");
    dj->add_option("--squeeze-r", dj_r, "preparation squeeze parameter");
    add_common(dj, dj_common);

    // verify
    auto *ver = app.add_subcommand("verify", "run the invariant check "
                                             "battery");
    CommonOpts ver_common;
    bool ver_json = false;
    std::string ver_inject;
    ver->add_flag("--json", ver_json, "machine-readable report");
    ver->add_option("--inject-fault", ver_inject,
                    "testing hook: force a named failure (hbar-mismatch)");
    add_common(ver, ver_common);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(run_input, run_common, run_backend, run_shots,
                           run_format);
        if (wig->parsed())
            return cmd_wigner(wig_input, wig_common, wig_backend, wig_mode,
                              wig_points, wig_half, wig_format, wig_pgm);
        if (gro->parsed())
            return cmd_grover(gro_common, gro_bins, gro_target,
                              gro_iter >= 0 ? std::optional<int>(gro_iter)
                                            : std::nullopt,
                              gro_realistic, gro_r, gro_extent, gro_trace);
        if (dj->parsed())
            return cmd_dj(dj_common, dj_oracle, dj_shots, dj_r);
        if (ver->parsed())
            return cmd_verify(ver_common, ver_json, ver_inject);
    } catch (const ParseError &e) {
        std::cerr << "parse error at " << e.line << ":" << e.column << ": "
                  << e.message << "\n";
        return kExitParse;
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const CapabilityError &e) {
        std::cerr << "capability error: " << e.what() << "\n";
        return kExitCapability;
    } catch (const DomainError &e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitCapability;
    } catch (const DimensionError &e) {
        std::cerr << "dimension error: " << e.what() << "\n";
        return kExitCapability;
    } catch (const ContractError &e) {
        std::cerr << "contract error: " << e.what() << "\n";
        return kExitCapability;
    } catch (const TruncationError &e) {
        std::cerr << "truncation error: " << e.what() << "\n";
        return kExitCapability;
    } catch (const ResourceError &e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return kExitCapability;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
