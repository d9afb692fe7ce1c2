#include "doctest.h"

#include <cmath>

#include "cvsim/fock_state.hpp"
#include "cvsim/gaussian_state.hpp"

using namespace cvsim;

namespace {
const HBar kHbar(2.0);
}

TEST_CASE("ladder operators") {
    const LadderOps ops = ladder_ops(8);

    SUBCASE("a_dag raises: a_dag|3> = 2|4>") {
        ComplexVector v = ComplexVector::Zero(8);
        v[3] = 1.0;
        const ComplexVector raised = ops.a_dag * v;
        CHECK(raised[4] == Complex(2.0));
        for (int n = 0; n < 8; ++n)
            if (n != 4)
                CHECK(raised[n] == Complex(0.0));
    }
    SUBCASE("a annihilates the vacuum") {
        ComplexVector v = ComplexVector::Zero(8);
        v[0] = 1.0;
        CHECK((ops.a * v).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("number operator spectrum") {
        for (int n = 0; n < 8; ++n) {
            ComplexVector v = ComplexVector::Zero(8);
            v[n] = 1.0;
            const ComplexVector nv = ops.n_op * v;
            CHECK(nv[n] == Complex(double(n)));
        }
    }
    SUBCASE("[a, a_dag] = I on the interior block") {
        const ComplexMatrix comm = ops.a * ops.a_dag - ops.a_dag * ops.a;
        CHECK((comm.topLeftCorner(7, 7) - ComplexMatrix::Identity(7, 7))
                  .cwiseAbs()
                  .maxCoeff() < 1e-14);
        CHECK(comm(7, 7).real() == doctest::Approx(-7.0)); // truncation
    }
    SUBCASE("cutoff bound") {
        CHECK_THROWS_AS(ladder_ops(1), DomainError);
    }
}

TEST_CASE("quadrature operators") {
    const int d = 10;
    const double h = kHbar.value();
    auto [x, p] = quadrature_ops(d, kHbar);

    SUBCASE("[x, p] = i hbar on the interior block") {
        const ComplexMatrix comm = x * p - p * x;
        CHECK((comm.topLeftCorner(d - 1, d - 1) -
               Complex(0, h) * ComplexMatrix::Identity(d - 1, d - 1))
                  .cwiseAbs()
                  .maxCoeff() < 1e-14);
    }
    SUBCASE("<0|x^2|0> = hbar/2") {
        ComplexVector v = ComplexVector::Zero(d);
        v[0] = 1.0;
        CHECK((v.adjoint() * x * x * v)(0, 0).real() ==
              doctest::Approx(h / 2.0));
    }
    SUBCASE("x is real symmetric tridiagonal") {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                CHECK(x(i, j).imag() == 0.0);
                CHECK(x(i, j) == x(j, i));
                if (std::abs(i - j) > 1)
                    CHECK(x(i, j) == Complex(0.0));
            }
    }
}

TEST_CASE("truncated hamiltonian") {
    const int d = 12;
    const double h = kHbar.value();
    const ComplexMatrix ham = fock_hamiltonian(d, kHbar);

    SUBCASE("H|0> = (hbar/2)|0>") {
        ComplexVector v = ComplexVector::Zero(d);
        v[0] = 1.0;
        const ComplexVector hv = ham * v;
        CHECK(std::abs(hv[0] - Complex(h / 2.0)) < 1e-12);
        CHECK((hv - Complex(h / 2.0) * v).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("interior spectrum hbar(n + 1/2)") {
        for (int n = 0; n <= d - 3; ++n) {
            ComplexVector v = ComplexVector::Zero(d);
            v[n] = 1.0;
            const ComplexVector hv = ham * v;
            CHECK((hv - Complex(h * (n + 0.5)) * v).cwiseAbs().maxCoeff() <
                  1e-12);
        }
    }
    SUBCASE("commutes with the number operator on the interior") {
        const LadderOps ops = ladder_ops(d);
        const ComplexMatrix comm = ham * ops.n_op - ops.n_op * ham;
        CHECK(comm.topLeftCorner(d - 2, d - 2).cwiseAbs().maxCoeff() <
              1e-12);
    }
}

TEST_CASE("coherent states") {
    const int d = 40;

    SUBCASE("alpha = 0 is the vacuum") {
        const FockState v = FockState::coherent(0.0, d, kHbar);
        CHECK(std::abs(v.amplitudes()[0] - Complex(1.0)) < 1e-15);
    }
    SUBCASE("eigenrelation of the annihilation operator") {
        const Complex alpha(1.2, 0.9); // |alpha| = 1.5
        const FockState c = FockState::coherent(alpha, d, kHbar);
        const LadderOps ops = ladder_ops(d);
        const ComplexVector lhs = ops.a * c.amplitudes();
        const ComplexVector rhs = alpha * c.amplitudes();
        double resid = 0.0;
        for (int n = 0; n < d - 2; ++n)
            resid += std::norm(lhs[n] - rhs[n]);
        CHECK(std::sqrt(resid) < 1e-6);
    }
    SUBCASE("mean photon number is |alpha|^2") {
        const FockState c = FockState::coherent(1.3, d, kHbar);
        CHECK(c.mean_photon_number() ==
              doctest::Approx(1.69).epsilon(1e-6));
    }
    SUBCASE("leakage guard") {
        CHECK_THROWS_AS(FockState::coherent(4.0, 16, kHbar),
                        TruncationError);
    }
}

TEST_CASE("gate matrices") {
    const int d = 40;

    SUBCASE("displacement of the vacuum is a coherent state") {
        const Complex alpha(0.8, -0.5);
        const FockState displaced =
            FockState::vacuum(1, d, kHbar)
                .apply_single(displacement_gate(alpha, d), 0);
        const FockState coherent = FockState::coherent(alpha, d, kHbar);
        const Complex overlap =
            coherent.amplitudes().dot(displaced.amplitudes());
        CHECK(std::norm(overlap) > 1.0 - 1e-8);
    }
    SUBCASE("phase gate is exactly diagonal") {
        const ComplexMatrix u = phase_gate(0.7, 6);
        for (int n = 0; n < 6; ++n) {
            CHECK(std::abs(u(n, n) - std::polar(1.0, -0.7 * n)) < 1e-15);
            for (int m = 0; m < 6; ++m)
                if (m != n)
                    CHECK(u(n, m) == Complex(0.0));
        }
    }
    SUBCASE("squeezed vacuum has even photon structure") {
        const FockState s = FockState::vacuum(1, d, kHbar).apply_single(
            squeeze_gate(0.6, d), 0);
        for (int n = 1; n < d; n += 2)
            CHECK(std::abs(s.amplitudes()[n]) < 1e-12);
        CHECK(std::abs(s.amplitudes().norm() - 1.0) < 1e-8);
    }
    SUBCASE("unitary on the interior under guarded parameters") {
        const ComplexMatrix u = displacement_gate(Complex(1.0, 0.7), d);
        const ComplexMatrix defect =
            u.adjoint() * u - ComplexMatrix::Identity(d, d);
        CHECK(defect.topLeftCorner(d / 2, d / 2).cwiseAbs().maxCoeff() <
              1e-8);
    }
    SUBCASE("parameter guards") {
        CHECK_THROWS_AS(displacement_gate(Complex(10.0, 0.0), d),
                        TruncationError);
        CHECK_THROWS_AS(squeeze_gate(Complex(2.5, 0.0), d),
                        TruncationError);
    }
}

TEST_CASE("mixer matrix") {
    SUBCASE("theta = 0 is the identity") {
        const ComplexMatrix u = mixer_matrix(0.0, 0.3, 6);
        CHECK((u - ComplexMatrix::Identity(36, 36)).cwiseAbs().maxCoeff() <
              1e-12);
    }
    SUBCASE("|1,0> splits 50-50 at theta = pi/4") {
        const int d = 6;
        const ComplexMatrix u = mixer_matrix(kPi / 4.0, 0.0, d);
        const FockState in = FockState::basis(2, d, kHbar, {1, 0});
        const FockState out = in.apply_two(u);
        const double p10 = std::norm(out.amplitudes()[1 * d + 0]);
        const double p01 = std::norm(out.amplitudes()[0 * d + 1]);
        CHECK(p10 == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(p01 == doctest::Approx(0.5).epsilon(1e-9));
    }
    SUBCASE("conserves total photon number on a random state") {
        const int d = 6;
        const ComplexMatrix u = mixer_matrix(0.9, 0.4, d);
        Rng rng(3);
        ComplexVector v(d * d);
        for (int i = 0; i < d * d; ++i)
            v[i] = Complex(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
        // restrict to levels that cannot leak past the cutoff
        for (int n1 = 0; n1 < d; ++n1)
            for (int n2 = 0; n2 < d; ++n2)
                if (n1 + n2 >= d)
                    v[n1 * d + n2] = 0.0;
        v /= v.norm();
        const ComplexVector w = u * v;
        double before = 0.0, after = 0.0;
        for (int n1 = 0; n1 < d; ++n1)
            for (int n2 = 0; n2 < d; ++n2) {
                before += (n1 + n2) * std::norm(v[n1 * d + n2]);
                after += (n1 + n2) * std::norm(w[n1 * d + n2]);
            }
        CHECK(after == doctest::Approx(before).epsilon(1e-9));
    }
    SUBCASE("dimension guard") {
        CHECK_THROWS_AS(mixer_matrix(0.1, 0.0, 65), ResourceError);
    }
}

TEST_CASE("truncation leakage policy") {
    // repeated displacements on a small cutoff walk the top-level
    // population through the warn band and into the error band
    const int d = 12;
    const ComplexMatrix u = displacement_gate(0.55, d);
    FockState state = FockState::vacuum(1, d, kHbar);
    state = state.apply_single(u, 0).apply_single(u, 0);
    CHECK(state.warnings().empty());
    state = state.apply_single(u, 0); // coherent(1.65): warn band
    CHECK(!state.warnings().empty());
    CHECK_THROWS_AS(state.apply_single(u, 0), TruncationError);
}

TEST_CASE("to_grid hermite synthesis") {
    const int d = 40;
    const double h = kHbar.value();
    const Grid grid = Grid::self_dual(512, kHbar);

    SUBCASE("vacuum maps to the ground-state Gaussian") {
        const GridState g = FockState::vacuum(1, d, kHbar).to_grid(grid);
        const GridState expected = GridState::vacuum(grid);
        CHECK(g.fidelity(expected) > 1.0 - 1e-10);
        CHECK(std::abs(g.norm() - 1.0) < 1e-8);
    }
    SUBCASE("coherent(1) matches the gaussian backend means") {
        const GridState g =
            FockState::coherent(1.0, d, kHbar).to_grid(grid);
        const GaussianState ga =
            GaussianState::vacuum(1, kHbar).apply_displacement(0, 1.0);
        CHECK(std::abs(g.expectation(QuadratureOperator::x()) -
                       ga.mean()[0]) < 1e-5);
        CHECK(std::abs(g.expectation(QuadratureOperator::p()) -
                       ga.mean()[1]) < 1e-5);
    }
    SUBCASE("squeezed vacuum width matches the closed form") {
        const GridState g = FockState::vacuum(1, d, kHbar)
                                .apply_single(squeeze_gate(0.5, d), 0)
                                .to_grid(grid);
        CHECK(g.uncertainty(0).delta_x ==
              doctest::Approx(std::sqrt(h / 2.0) * std::exp(-0.5))
                  .epsilon(1e-4));
    }
    SUBCASE("under-resolved grid raises") {
        const Grid small(64, 4.0, kHbar);
        CHECK_THROWS_AS(FockState::vacuum(1, d, kHbar).to_grid(small),
                        ConfigError);
    }
    SUBCASE("hbar mismatch raises") {
        const Grid other = Grid::self_dual(512, HBar(1.0));
        CHECK_THROWS_AS(FockState::vacuum(1, d, kHbar).to_grid(other),
                        ConfigError);
    }
}

TEST_CASE("fock snapshot schema") {
    const nlohmann::json j = FockState::vacuum(2, 5, kHbar).to_json();
    CHECK(j["cutoff"] == 5);
    CHECK(j["modes"] == 2);
    CHECK(j["amplitudes"].size() == 25);
}
