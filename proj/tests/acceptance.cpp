// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cvsim/algorithms.hpp"
#include "cvsim/execute.hpp"
#include "cvsim/wigner.hpp"

using namespace cvsim;

namespace {

const HBar kH(2.0);

struct Harness {
    int failures = 0;

    void criterion(int id, const std::string &label, double budget_s,
                   const std::function<void(std::vector<std::string> &)> &body) {
        std::vector<std::string> problems;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            body(problems);
        } catch (const std::exception &e) {
            problems.push_back(std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          t0)
                .count();
        if (secs > budget_s)
            problems.push_back("runtime " + std::to_string(secs) +
                               " s exceeds budget " +
                               std::to_string(budget_s) + " s");
        if (problems.empty()) {
            std::printf("[%2d] PASS  (%6.2f s)  %s\n", id, secs,
                        label.c_str());
        } else {
            ++failures;
            std::printf("[%2d] FAIL  (%6.2f s)  %s\n", id, secs,
                        label.c_str());
            for (const auto &p : problems)
                std::printf("      - %s\n", p.c_str());
        }
        std::fflush(stdout);
    }
};

void expect(std::vector<std::string> &problems, bool ok,
            const std::string &what) {
    if (!ok)
        problems.push_back(what);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

struct GateSpec {
    char kind; // 'D', 'S', 'R'
    Complex alpha;
    double r, phi, theta;
};

std::vector<GateSpec> random_sequence(Rng &rng, bool axis_aligned) {
    const int len = 3 + int(rng.uniform01() * 3);
    std::vector<GateSpec> seq;
    for (int i = 0; i < len; ++i) {
        const double u = rng.uniform01();
        GateSpec g{};
        if (u < (axis_aligned ? 0.5 : 1.0 / 3.0)) {
            g.kind = 'D';
            g.alpha = Complex(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
        } else if (u < (axis_aligned ? 1.0 : 2.0 / 3.0)) {
            g.kind = 'S';
            g.r = 0.8 * rng.uniform01() - 0.4;
            g.phi = axis_aligned ? 0.0 : kPi * rng.uniform01();
        } else {
            g.kind = 'R';
            g.theta = 2.0 * kPi * rng.uniform01() - kPi;
        }
        seq.push_back(g);
    }
    return seq;
}

GridState apply_to_grid(const std::vector<GateSpec> &seq, const Grid &grid) {
    GridState s = GridState::vacuum(grid);
    const double scale = std::sqrt(2.0 * kH.value());
    for (const auto &g : seq) {
        if (g.kind == 'D')
            s = s.displace(0, scale * g.alpha.real(), scale * g.alpha.imag());
        else if (g.kind == 'S')
            s = s.squeeze(0, g.r, g.phi);
        else
            s = s.rotate(0, g.theta);
    }
    return s;
}

GaussianState apply_to_gaussian(const std::vector<GateSpec> &seq) {
    GaussianState s = GaussianState::vacuum(1, kH);
    for (const auto &g : seq) {
        if (g.kind == 'D')
            s = s.apply_displacement(0, g.alpha);
        else if (g.kind == 'S')
            s = s.apply_squeeze(0, g.r, g.phi);
        else
            s = s.apply_rotation(0, g.theta);
    }
    return s;
}

FockState apply_to_fock(const std::vector<GateSpec> &seq, int cutoff) {
    FockState s = FockState::vacuum(1, cutoff, kH);
    for (const auto &g : seq) {
        if (g.kind == 'D')
            s = s.apply_single(displacement_gate(g.alpha, cutoff), 0);
        else if (g.kind == 'S')
            s = s.apply_single(squeeze_gate(std::polar(g.r, g.phi), cutoff),
                               0);
        else
            s = s.apply_single(phase_gate(g.theta, cutoff), 0);
    }
    return s;
}

std::string read_binary(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_cli(const std::string &args) {
    const std::string cmd =
        std::string(CVQ_BINARY) + " " + args + " 2>/dev/null >/dev/null";
    return WEXITSTATUS(std::system(cmd.c_str()));
}

} // namespace

int main() {
    Harness h;

    h.criterion(1, "commutation relation on fock and grid backends", 1.0,
                [](std::vector<std::string> &problems) {
        const int d = 40;
        auto [x, p] = quadrature_ops(d, kH);
        const ComplexMatrix comm = x * p - p * x;
        const double dev =
            (comm.topLeftCorner(d - 1, d - 1) -
             Complex(0, kH.value()) * ComplexMatrix::Identity(d - 1, d - 1))
                .cwiseAbs()
                .maxCoeff();
        expect(problems, dev < 5e-13,
               "fock [x,p] interior deviation " + fmt(dev));
        const Grid grid(512, 20.0 * std::sqrt(kH.value()), kH);
        for (const GridState &s :
             {GridState::vacuum(grid),
              GridState::vacuum(grid).displace(0, 1.0, -0.6),
              GridState::squeezed_vacuum(grid, 1.6)}) {
            const double resid = commutator_residual(grid, s);
            expect(problems, resid < 1e-6,
                   "grid commutator residual " + fmt(resid));
        }
    });

    h.criterion(2, "uncertainty floor and saturation on all backends", 5.0,
                [](std::vector<std::string> &problems) {
        const Grid grid = Grid::self_dual(256, kH);
        const double half = kH.value() / 2.0;
        Rng rng(2024);
        int floor_violations = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const auto seq = random_sequence(rng, false);
            const auto ug = apply_to_grid(seq, grid).uncertainty(0);
            const auto [gx, gp, gprod] =
                apply_to_gaussian(seq).uncertainty_product(0);
            const FockState f = apply_to_fock(seq, 40);
            auto [xm, pm] = quadrature_ops(40, kH);
            const double fx = f.expectation(xm);
            const double fp = f.expectation(pm);
            const double fx2 = f.expectation(ComplexMatrix(xm * xm));
            const double fp2 = f.expectation(ComplexMatrix(pm * pm));
            const double fprod = std::sqrt(std::max(fx2 - fx * fx, 0.0)) *
                                 std::sqrt(std::max(fp2 - fp * fp, 0.0));
            for (double prod : {ug.product, gprod, fprod})
                if (prod < half * (1.0 - 1e-6))
                    ++floor_violations;
        }
        expect(problems, floor_violations == 0,
               std::to_string(floor_violations) + " floor violations");
        // axis-aligned pure Gaussian states saturate
        Rng rng2(7);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const auto seq = random_sequence(rng2, true);
            const auto ug = apply_to_grid(seq, grid).uncertainty(0);
            const auto [gx, gp, gprod] =
                apply_to_gaussian(seq).uncertainty_product(0);
            worst = std::max(worst, std::abs(ug.product / half - 1.0));
            worst = std::max(worst, std::abs(gprod / half - 1.0));
        }
        expect(problems, worst < 1e-6,
               "saturation deviation " + fmt(worst));
    });

    h.criterion(3, "fourier pair: round trip, self-duality, parseval", 1.0,
                [](std::vector<std::string> &problems) {
        const Grid grid(1024, 20.0 * std::sqrt(kH.value()), kH);
        Rng rng(5);
        ComplexVector v(grid.n_points());
        for (int k = 0; k < grid.n_points(); ++k) {
            const double x = grid.point(k);
            v[k] = Complex(rng.uniform01() - 0.5, rng.uniform01() - 0.5) *
                   std::exp(-x * x / (4.0 * kH.value()));
        }
        v /= std::sqrt(v.squaredNorm() * grid.spacing());
        const ComplexVector phi = x_to_p_transform(v, grid);
        const double rt =
            (p_to_x_transform(phi, grid) - v).cwiseAbs().maxCoeff();
        expect(problems, rt < 1e-12, "round trip " + fmt(rt));
        const double parseval =
            std::abs(phi.squaredNorm() * grid.momentum_spacing() -
                     v.squaredNorm() * grid.spacing());
        expect(problems, parseval < 1e-12, "parseval " + fmt(parseval));
        const double h = kH.value();
        ComplexVector gauss(grid.n_points());
        for (int k = 0; k < grid.n_points(); ++k) {
            const double x = grid.point(k);
            gauss[k] = std::pow(kPi, -0.25) * std::pow(h, -0.25) *
                       std::exp(-x * x / (2.0 * h));
        }
        const ComplexVector gphi = x_to_p_transform(gauss, grid);
        double dual = 0.0;
        for (int j = 0; j < grid.n_points(); ++j) {
            const double pj = grid.momentum(j);
            dual = std::max(dual,
                            std::abs(gphi[j] - std::pow(kPi, -0.25) *
                                                   std::pow(h, -0.25) *
                                                   std::exp(-pj * pj /
                                                            (2.0 * h))));
        }
        expect(problems, dual < 1e-10, "gaussian self-duality " + fmt(dual));
    });

    h.criterion(4, "projection idempotence on random states and windows",
                1.0, [](std::vector<std::string> &problems) {
        const Grid grid = Grid::self_dual(256, kH);
        Rng rng(11);
        double worst = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            GridState s = GridState::vacuum(grid)
                              .displace(0, 2.0 * rng.uniform01() - 1.0,
                                        2.0 * rng.uniform01() - 1.0)
                              .squeeze(0, rng.uniform01() - 0.5)
                              .rotate(0, kPi * rng.uniform01());
            const ProjectionWindow w{
                grid.extent() / 4.0 * (2.0 * rng.uniform01() - 1.0),
                grid.spacing() * (1.0 + rng.uniform01() * 40.0), 0};
            const auto [p1, w1] = s.project(w);
            const auto [p2, w2] = p1.project(w);
            (void)w1;
            (void)w2;
            worst = std::max(
                worst,
                (p1.amplitudes() - p2.amplitudes()).cwiseAbs().maxCoeff());
        }
        expect(problems, worst < 1e-12, "double-projection dev " + fmt(worst));
    });

    h.criterion(5, "discrete delta identity", 1.0,
                [](std::vector<std::string> &problems) {
        for (int n : {256, 1024}) {
            const double err =
                delta_identity_check(Grid(n, 20.0, kH));
            expect(problems, err < 1e-10,
                   "n = " + std::to_string(n) + ": " + fmt(err));
        }
    });

    h.criterion(6, "ladder algebra", 1.0,
                [](std::vector<std::string> &problems) {
        const LadderOps ops = ladder_ops(8);
        ComplexVector three = ComplexVector::Zero(8);
        three[3] = 1.0;
        const ComplexVector raised = ops.a_dag * three;
        expect(problems, raised[4] == Complex(2.0),
               "a_dag|3> != 2|4> exactly");
        for (int n = 0; n < 8; ++n) {
            ComplexVector v = ComplexVector::Zero(8);
            v[n] = 1.0;
            const ComplexVector nv = ops.n_op * v;
            if (nv[n] != Complex(double(n)))
                expect(problems, false,
                       "N spectrum not exact at n = " + std::to_string(n));
        }
    });

    h.criterion(7, "coherent eigenrelation", 1.0,
                [](std::vector<std::string> &problems) {
        const int d = 40;
        const LadderOps ops = ladder_ops(d);
        for (const Complex alpha :
             {Complex(0.5, 0.0), Complex(1.0, 0.7), Complex(-1.2, 0.9),
              Complex(0.0, 1.5)}) {
            const FockState c = FockState::coherent(alpha, d, kH);
            const ComplexVector lhs = ops.a * c.amplitudes();
            double resid = 0.0;
            for (int n = 0; n < d - 2; ++n)
                resid += std::norm(lhs[n] - alpha * c.amplitudes()[n]);
            resid = std::sqrt(resid);
            expect(problems, resid < 1e-6, "residual " + fmt(resid));
        }
    });

    h.criterion(8, "cross-backend triangle on random gate sequences", 60.0,
                [](std::vector<std::string> &problems) {
        const Grid grid = Grid::self_dual(512, kH);
        const RealVector probe = linspace(-4.0, 4.0, 20);
        Rng rng(88);
        double worst_stat = 0.0, worst_wig = 0.0;
        for (int trial = 0; trial < 25; ++trial) {
            const auto seq = random_sequence(rng, false);
            const GridState g = apply_to_grid(seq, grid);
            const GaussianState ga = apply_to_gaussian(seq);
            const GridState gf =
                apply_to_fock(seq, 40).to_grid(grid).normalized();

            const auto ug = g.uncertainty(0);
            const auto uf = gf.uncertainty(0);
            const auto [dx, dp, prod] = ga.uncertainty_product(0);
            const double mx = ga.mean()[0], mp = ga.mean()[1];
            for (double dev :
                 {std::abs(ug.delta_x - dx), std::abs(ug.delta_p - dp),
                  std::abs(uf.delta_x - dx), std::abs(uf.delta_p - dp),
                  std::abs(g.expectation(QuadratureOperator::x()) - mx),
                  std::abs(g.expectation(QuadratureOperator::p()) - mp),
                  std::abs(gf.expectation(QuadratureOperator::x()) - mx),
                  std::abs(gf.expectation(QuadratureOperator::p()) - mp)})
                worst_stat = std::max(worst_stat, dev);

            const WignerGrid wg = wigner_from_grid(g, probe, probe);
            const WignerGrid wa = wigner_from_gaussian(ga, 0, probe, probe);
            const WignerGrid wf = wigner_from_grid(gf, probe, probe);
            worst_wig = std::max(
                worst_wig,
                (wg.values - wa.values).cwiseAbs().maxCoeff());
            worst_wig = std::max(
                worst_wig,
                (wf.values - wa.values).cwiseAbs().maxCoeff());
        }
        expect(problems, worst_stat < 1e-4,
               "moment deviation " + fmt(worst_stat));
        expect(problems, worst_wig < 1e-4,
               "wigner deviation " + fmt(worst_wig));
    });

    h.criterion(9, "figure-style wigner panels", 10.0,
                [](std::vector<std::string> &problems) {
        const double h = kH.value();
        const GaussianState vac = GaussianState::vacuum(1, kH);
        const GaussianState disp = vac.apply_displacement(0, 0.5);
        const GaussianState sq = vac.apply_squeeze(0, 0.5);
        const GaussianState both =
            vac.apply_displacement(0, 0.5).apply_squeeze(0, 0.5);

        const RealVector axis0 = linspace(-6.0, 6.0, 241);
        const WignerGrid w_vac = wigner_from_gaussian(vac, 0, axis0, axis0);
        // peak at the origin (on-axis point)
        double peak = w_vac.values(120, 120);
        expect(problems, std::abs(peak - 1.0 / (kPi * h)) < 1e-6,
               "vacuum peak " + fmt(std::abs(peak - 1.0 / (kPi * h))));

        const RealVector axis1 = linspace(-6.0, 8.0, 281);
        const WignerGrid w_disp =
            wigner_from_gaussian(disp, 0, axis1, axis1);
        const double dxa = axis1[1] - axis1[0];
        double mean_x = 0.0;
        for (int i = 0; i < axis1.size(); ++i)
            for (int j = 0; j < axis1.size(); ++j)
                mean_x += axis1[j] * w_disp.values(i, j) * dxa * dxa;
        expect(problems,
               std::abs(mean_x - std::sqrt(2.0 * h) * 0.5) < 1e-6,
               "displaced center " + fmt(std::abs(
                   mean_x - std::sqrt(2.0 * h) * 0.5)));

        const RealVector axis2 = linspace(-9.0, 9.0, 361);
        const WignerGrid w_sq = wigner_from_gaussian(sq, 0, axis2, axis2);
        const double dxb = axis2[1] - axis2[0];
        double vx = 0.0, vp = 0.0;
        for (int i = 0; i < axis2.size(); ++i)
            for (int j = 0; j < axis2.size(); ++j) {
                vx += axis2[j] * axis2[j] * w_sq.values(i, j) * dxb * dxb;
                vp += axis2[i] * axis2[i] * w_sq.values(i, j) * dxb * dxb;
            }
        const double ratio = std::sqrt(vp / vx);
        expect(problems, std::abs(ratio - std::exp(1.0)) < 1e-3,
               "squeezed aspect ratio off by " +
                   fmt(std::abs(ratio - std::exp(1.0))));

        const WignerGrid w_both =
            wigner_from_gaussian(both, 0, axis2, axis2);
        for (const WignerGrid *w : {&w_vac, &w_disp, &w_sq, &w_both}) {
            const double norm = normalization_check(*w);
            expect(problems, std::abs(norm - 1.0) < 1e-4,
                   "panel normalization off by " + fmt(std::abs(norm - 1.0)));
        }
    });

    h.criterion(10, "wigner negativity of the one-photon state", 5.0,
                [](std::vector<std::string> &problems) {
        const Grid grid = Grid::self_dual(512, kH);
        const GridState one =
            FockState::basis(1, 40, kH, {1}).to_grid(grid);
        const RealVector axis = default_axis(kH, 201);
        const WignerGrid w = wigner_from_grid(one, axis, axis);
        const double target = -1.0 / (kPi * kH.value());
        const double min = w.values.minCoeff();
        expect(problems, std::abs(min - target) < 1e-4,
               "minimum " + fmt(min) + " vs " + fmt(target));
    });

    h.criterion(11, "grover scaling and success", 120.0,
                [](std::vector<std::string> &problems) {
        std::vector<int> peaks;
        for (int bins : {16, 64, 256}) {
            const GroverProblem p =
                GroverProblem::standard(bins, bins / 3, kH);
            const int default_iters =
                int(std::floor(kPi / 4.0 * std::sqrt(double(bins))));
            const GroverTrace trace = grover_search(
                p, reference_grover_oracle(p), default_iters + 4);
            int peak = -1;
            for (std::size_t i = 1;
                 i + 1 < trace.target_probability.size(); ++i)
                if (trace.target_probability[i] >=
                        trace.target_probability[i - 1] &&
                    trace.target_probability[i] >
                        trace.target_probability[i + 1]) {
                    peak = int(i);
                    break;
                }
            peaks.push_back(peak);
            if (bins == 64) {
                const GroverTrace def =
                    grover_search(p, reference_grover_oracle(p));
                expect(problems, def.success_prob_final > 0.5,
                       "success at N = 64 default iterations: " +
                           fmt(def.success_prob_final));
            }
        }
        for (int i = 0; i + 1 < int(peaks.size()); ++i) {
            const double ratio = double(peaks[i + 1]) / peaks[i];
            expect(problems, ratio >= 1.5 && ratio <= 2.5,
                   "peak ratio " + fmt(ratio) + " outside [1.5, 2.5]");
        }
    });

    h.criterion(12, "realistic grover matches the exact mode", 60.0,
                [](std::vector<std::string> &problems) {
        const GroverProblem p = GroverProblem::standard(64, 20, kH);
        const GroverOracle oracle = reference_grover_oracle(p);
        const GroverTrace exact = grover_search(p, oracle);
        const GroverTrace realistic =
            grover_search(p, oracle, std::nullopt, true);
        const double rel = std::abs(realistic.success_prob_final -
                                    exact.success_prob_final) /
                           exact.success_prob_final;
        expect(problems, rel < 0.10, "relative difference " + fmt(rel));
    });

    h.criterion(13, "deutsch-jozsa decision stability", 30.0,
                [](std::vector<std::string> &problems) {
        int wrong = 0;
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            Rng rc(seed), rb(seed);
            if (dj_run(dj_constant_oracle(), 2.0, rc, 100).verdict !=
                DJVerdict::Constant)
                ++wrong;
            if (dj_run(dj_balanced_oracle(), 2.0, rb, 100).verdict !=
                DJVerdict::Balanced)
                ++wrong;
        }
        expect(problems, wrong == 0,
               std::to_string(wrong) + " misclassified runs out of 100");
    });

    h.criterion(14, "parser accepts the listings; print round trip", 5.0,
                [](std::vector<std::string> &problems) {
        const std::string dir = CVSIM_CIRCUIT_DIR;
        for (const char *name :
             {"fig1_pipeline.cvq", "deutsch_jozsa.cvq",
              "displaced_squeezed.cvq"}) {
            std::ifstream in(dir + "/" + name);
            std::ostringstream buf;
            buf << in.rdbuf();
            const Circuit c = parse_circuit(buf.str());
            ExecutionConfig config;
            config.backend = BackendKind::Gaussian;
            config.hbar = kH;
            Rng rng(0);
            const ExecutionResult r = execute(c, config, rng);
            (void)r;
            const Circuit back = parse_circuit(print_circuit(c));
            expect(problems, back == c,
                   std::string(name) + " round trip mismatch");
        }
        // fuzz corpus
        Rng rng(555);
        for (int i = 0; i < 100; ++i) {
            Circuit c;
            c.mode_count = 1 + int(rng.uniform01() * 2);
            for (int m = 0; m < c.mode_count; ++m)
                c.ops.push_back(
                    {GateKind::Squeezed, {m}, {rng.uniform01()}});
            const int gates = 1 + int(rng.uniform01() * 6);
            for (int g = 0; g < gates; ++g) {
                const int m = int(rng.uniform01() * c.mode_count);
                const double u = rng.uniform01();
                if (u < 0.25)
                    c.ops.push_back({GateKind::Dgate,
                                     {m},
                                     {rng.uniform01() - 0.5,
                                      rng.uniform01() - 0.5}});
                else if (u < 0.5)
                    c.ops.push_back({GateKind::Rgate,
                                     {m},
                                     {kPi * (2.0 * rng.uniform01() - 1.0)}});
                else if (u < 0.75)
                    c.ops.push_back({GateKind::Invert,
                                     {m},
                                     {rng.uniform01() - 0.5,
                                      0.5 + rng.uniform01()}});
                else
                    c.ops.push_back({GateKind::Fourier, {m}, {}});
            }
            const Circuit back = parse_circuit(print_circuit(c));
            expect(problems, back == c, "fuzz round trip mismatch");
            if (back != c)
                break;
        }
    });

    h.criterion(15, "CLI determinism across repeated seeded runs", 30.0,
                [](std::vector<std::string> &problems) {
        const std::string dir = CVSIM_CIRCUIT_DIR;
        struct Cmd {
            std::string args;
            std::vector<std::string> outputs;
        };
        const std::vector<Cmd> commands = {
            {"run " + dir + "/deutsch_jozsa.cvq -b gaussian --seed 11 "
                 "--shots 5 -o det_run.json",
             {"det_run.json"}},
            {"run " + dir + "/fig1_pipeline.cvq -b fock --cutoff 30 "
                 "--seed 2 -o det_fock.json",
             {"det_fock.json"}},
            {"wigner " + dir + "/fig1_pipeline.cvq -b grid --points 48 "
                 "--seed 4 --pgm det_w.pgm -o det_w.csv",
             {"det_w.csv", "det_w.pgm"}},
            {"grover --bins 32 --target 5 --seed 9 "
                 "--trace-out det_g.csv -o det_g.json",
             {"det_g.csv", "det_g.json"}},
            {"dj --oracle balanced --seed 3 --shots 50 -o det_dj.json",
             {"det_dj.json"}},
            {"verify --json -o det_v.json", {"det_v.json"}},
        };
        for (const auto &cmd : commands) {
            std::vector<std::string> first;
            expect(problems, run_cli(cmd.args) == 0,
                   "command failed: " + cmd.args);
            for (const auto &f : cmd.outputs)
                first.push_back(read_binary(f));
            expect(problems, run_cli(cmd.args) == 0,
                   "second run failed: " + cmd.args);
            for (std::size_t i = 0; i < cmd.outputs.size(); ++i) {
                expect(problems,
                       read_binary(cmd.outputs[i]) == first[i],
                       cmd.outputs[i] + " differs between runs");
                std::remove(cmd.outputs[i].c_str());
            }
        }
    });

    if (h.failures == 0) {
        std::printf("all %d criteria passed\n", 15);
        return 0;
    }
    std::printf("%d criteria FAILED\n", h.failures);
    return 1;
}
