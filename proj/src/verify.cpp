#include "cvsim/verify.hpp"

#include <cmath>
#include <sstream>

#include "cvsim/fock_state.hpp"
#include "cvsim/gaussian_state.hpp"
#include "cvsim/grid_state.hpp"
#include "cvsim/numerics.hpp"
#include "cvsim/wigner.hpp"

namespace cvsim {

namespace {

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(3);
    out << std::scientific << v;
    return out.str();
}

struct Battery {
    std::vector<CheckResult> results;

    void check(const std::string &name, double value, double bound) {
        results.push_back({name, value <= bound,
                           "value " + fmt(value) + ", bound " + fmt(bound)});
    }
    void check_flag(const std::string &name, bool ok,
                    const std::string &detail) {
        results.push_back({name, ok, detail});
    }
};

} // namespace

std::vector<CheckResult> run_verification(HBar hbar, bool inject_hbar_fault) {
    Battery b;
    const double h = hbar.value();

    // transform unitarity + round trip on a localized random state
    {
        const Grid grid = Grid::self_dual(512, hbar);
        Rng rng(12345);
        ComplexVector v(grid.n_points());
        for (int k = 0; k < grid.n_points(); ++k) {
            const double x = grid.point(k);
            v[k] = Complex(rng.uniform01() - 0.5, rng.uniform01() - 0.5) *
                   std::exp(-x * x / (2.0 * h));
        }
        v /= std::sqrt(v.squaredNorm() * grid.spacing());
        const ComplexVector phi = x_to_p_transform(v, grid);
        const double parseval =
            std::abs(phi.squaredNorm() * grid.momentum_spacing() -
                     v.squaredNorm() * grid.spacing());
        b.check("fourier_parseval", parseval, 1e-12);
        const ComplexVector back = p_to_x_transform(phi, grid);
        b.check("fourier_round_trip", (back - v).cwiseAbs().maxCoeff(),
                1e-12);
    }

    // delta identity
    b.check("delta_identity", delta_identity_check(Grid::self_dual(256, hbar)),
            1e-10);

    // hermite orthonormality (n <= 12)
    {
        const Grid grid(1024, 20.0 * std::sqrt(h), hbar);
        double worst = 0.0;
        std::vector<ComplexVector> fns;
        for (int n = 0; n <= 12; ++n)
            fns.push_back(hermite_function(n, grid));
        for (int m = 0; m <= 12; ++m)
            for (int n = 0; n <= 12; ++n) {
                const Complex g = quadrature_integrate(
                    fns[m].conjugate().cwiseProduct(fns[n]), grid);
                worst = std::max(worst,
                                 std::abs(g - (m == n ? 1.0 : 0.0)));
            }
        b.check("hermite_orthonormality", worst, 1e-10);
    }

    // matrix exponential unitarity on a skew-Hermitian generator
    {
        Rng rng(7);
        ComplexMatrix m(6, 6);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                m(i, j) = Complex(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
        ComplexMatrix skew = m - m.adjoint();
        ComplexMatrix u = matrix_exp(skew);
        b.check("matrix_exp_unitarity",
                (u.adjoint() * u - ComplexMatrix::Identity(6, 6))
                    .cwiseAbs()
                    .maxCoeff(),
                1e-10);
    }

    // grid gates preserve norm; projection idempotent; inversion involutive
    {
        const Grid grid = Grid::self_dual(512, hbar);
        const GridState vac = GridState::vacuum(grid);
        const GridState moved =
            vac.displace(0, 0.7 * std::sqrt(h), -0.3 * std::sqrt(h))
                .fourier(0)
                .rotate(0, 0.37)
                .squeeze(0, 0.4);
        b.check("grid_gate_norm", std::abs(moved.norm() - 1.0), 1e-9);
        const ProjectionWindow w{0.5 * std::sqrt(h), std::sqrt(h), 0};
        const auto [p1, w1] = moved.project(w);
        const auto [p2, w2] = p1.project(w);
        (void)w1;
        (void)w2;
        b.check("projection_idempotence",
                (p1.amplitudes() - p2.amplitudes()).cwiseAbs().maxCoeff(),
                1e-12);
        const GridState twice = moved.invert_about(w).invert_about(w);
        b.check("inversion_involution",
                (twice.amplitudes() - moved.amplitudes())
                    .cwiseAbs()
                    .maxCoeff(),
                1e-12);
        const auto unc = moved.uncertainty(0);
        b.check_flag("uncertainty_floor",
                     unc.product >= h / 2.0 * (1.0 - 1e-6),
                     "dx*dp = " + fmt(unc.product) + ", hbar/2 = " +
                         fmt(h / 2.0));
        b.check("grid_commutator_residual",
                commutator_residual(grid, vac.displace(0, std::sqrt(h), 0.0)),
                1e-6);
    }

    // gaussian symplectic + purity
    {
        const auto rot = SymplecticGate::rotation(2, 0, 0.7);
        const auto sq = SymplecticGate::squeeze(2, 1, 0.6, 0.9);
        const auto mix = SymplecticGate::mixer(2, 0, 1, kPi / 4.0, 0.3);
        const double defect = std::max(
            {rot.symplectic_defect(), sq.symplectic_defect(),
             mix.symplectic_defect()});
        b.check("gaussian_symplectic", defect, 1e-10);
        GaussianState g = GaussianState::vacuum(2, hbar)
                              .apply_squeeze(0, 0.5)
                              .apply_mixer(0, 1, kPi / 4.0, 0.0)
                              .apply_rotation(1, 1.1);
        const double target = std::pow(h / 2.0, 4);
        b.check("gaussian_purity",
                std::abs(g.purity_determinant() - target) / target, 1e-9);
        b.check_flag("gaussian_physicality", g.physicality_margin() > -1e-9,
                     "min eig " + fmt(g.physicality_margin()));
    }

    // fock ladder algebra
    {
        const int d = 12;
        const LadderOps ops = ladder_ops(d);
        const ComplexMatrix comm =
            ops.a * ops.a_dag - ops.a_dag * ops.a;
        const double err = (comm.topLeftCorner(d - 1, d - 1) -
                            ComplexMatrix::Identity(d - 1, d - 1))
                               .cwiseAbs()
                               .maxCoeff();
        b.check("fock_ladder_commutator", err, 1e-12);
        auto [x, p] = quadrature_ops(d, hbar);
        const ComplexMatrix xp = x * p - p * x;
        b.check("fock_xp_commutator",
                (xp.topLeftCorner(d - 1, d - 1) -
                 Complex(0, h) * ComplexMatrix::Identity(d - 1, d - 1))
                    .cwiseAbs()
                    .maxCoeff(),
                1e-12);
        const ComplexMatrix mix = mixer_matrix(kPi / 4.0, 0.2, 8);
        ComplexMatrix n_tot = ComplexMatrix::Zero(64, 64);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                n_tot(i * 8 + j, i * 8 + j) = double(i + j);
        b.check("mixer_photon_conservation",
                (mix * n_tot - n_tot * mix).cwiseAbs().maxCoeff(), 1e-9);
    }

    // wigner normalization (vacuum, closed form and grid transform)
    {
        const Grid grid = Grid::self_dual(256, hbar);
        const RealVector axis = default_axis(hbar, 161);
        const WignerGrid wg =
            wigner_from_grid(GridState::vacuum(grid), axis, axis);
        b.check("wigner_norm_grid",
                std::abs(normalization_check(wg) - 1.0), 1e-4);
        const WignerGrid wa = wigner_from_gaussian(
            GaussianState::vacuum(1, hbar), 0, axis, axis);
        b.check("wigner_norm_gaussian",
                std::abs(normalization_check(wa) - 1.0), 1e-4);
    }

    // cross-backend agreement on a displaced squeezed state
    {
        const HBar fock_hbar =
            inject_hbar_fault ? HBar(1.21 * h) : hbar;
        const Grid grid = Grid::self_dual(512, hbar);
        const GridState g = GridState::vacuum(grid)
                                .displace(0, 0.5 * std::sqrt(2.0 * h), 0.0)
                                .squeeze(0, 0.5);
        GaussianState gauss = GaussianState::vacuum(1, hbar)
                                  .apply_displacement(0, 0.5)
                                  .apply_squeeze(0, 0.5);
        FockState fock = FockState::vacuum(1, 40, fock_hbar)
                             .apply_single(displacement_gate(0.5, 40), 0)
                             .apply_single(squeeze_gate(0.5, 40), 0);
        const Grid synth = Grid::self_dual(512, fock_hbar);
        const GridState from_fock = fock.to_grid(synth).normalized();
        const auto ug = g.uncertainty(0);
        const auto uf = from_fock.uncertainty(0);
        const auto [dxg, dpg, prodg] = gauss.uncertainty_product(0);
        const double worst = std::max(
            {std::abs(ug.delta_x - dxg), std::abs(ug.delta_p - dpg),
             std::abs(uf.delta_x - dxg), std::abs(uf.delta_p - dpg)});
        b.check("cross_backend_moments", worst, 1e-4);
    }

    return b.results;
}

} // namespace cvsim
