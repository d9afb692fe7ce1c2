#pragma once

#include <utility>

#include "cvsim/common.hpp"

#include "json.hpp"

namespace cvsim {

/// Linear phase-space map: r -> S r + d, with S symplectic
/// (S^T Omega S = Omega). Quadrature ordering is (x1, p1, ..., xm, pm).
struct SymplecticGate {
    RealMatrix matrix;
    RealVector displacement;

    /// Rotation exp(-i theta N) on one mode: (x, p) block conjugated by
    /// [[cos, sin], [-sin, cos]].
    static SymplecticGate rotation(int modes, int mode, double theta);
    /// Squeeze with complex parameter zeta = r e^{i phi}; phi = 0 maps
    /// dx -> e^{-r} dx, dp -> e^{+r} dp.
    static SymplecticGate squeeze(int modes, int mode, double r, double phi);
    /// Two-mode mixer exp(theta (e^{-i phi} a1 a2^dag - e^{i phi} a1^dag a2)).
    static SymplecticGate mixer(int modes, int mode_a, int mode_b,
                                double theta, double phi);
    /// Displacement by complex alpha: mean shifts by sqrt(2 hbar) (Re, Im).
    static SymplecticGate displace(int modes, int mode, Complex alpha,
                                       HBar hbar);

    /// Max-abs deviation of S^T Omega S from Omega.
    double symplectic_defect() const;
};

struct HomodyneOutcome;

/// Gaussian state as phase-space mean and covariance. Pure states satisfy
/// det(cov) = (hbar/2)^{2m}; physicality is cov + i (hbar/2) Omega >= 0.
class GaussianState {
  public:
    static GaussianState vacuum(int modes, HBar hbar);
    /// Constructs from explicit statistics; validates symmetry and the
    /// uncertainty bound.
    GaussianState(RealVector mean, RealMatrix cov, HBar hbar);

    int modes() const { return modes_; }
    HBar hbar() const { return hbar_; }
    const RealVector &mean() const { return mean_; }
    const RealMatrix &cov() const { return cov_; }

    GaussianState apply(const SymplecticGate &gate) const;
    GaussianState apply_displacement(int mode, Complex alpha) const;
    GaussianState apply_rotation(int mode, double theta) const;
    GaussianState apply_squeeze(int mode, double r, double phi = 0.0) const;
    GaussianState apply_mixer(int mode_a, int mode_b, double theta,
                              double phi = 0.0) const;

    /// (mean, variance) of the x quadrature of one mode.
    std::pair<double, double> marginal_x(int mode) const;

    /// Samples the x quadrature and conditions the remaining modes with the
    /// standard Gaussian conditioning rule; the measured mode is dropped.
    HomodyneOutcome homodyne_x(int mode, Rng &rng) const;

    /// Reduced single-mode (mean, cov) for the closed-form Wigner Gaussian.
    std::pair<Eigen::Vector2d, Eigen::Matrix2d> wigner_params(int mode) const;

    double purity_determinant() const { return cov_.determinant(); }
    bool is_pure(double rel_tol = 1e-9) const;
    /// Smallest eigenvalue of cov + i (hbar/2) Omega (>= -1e-9 for
    /// physical states).
    double physicality_margin() const;

    /// (dx, dp, dx*dp) of one mode.
    std::tuple<double, double, double> uncertainty_product(int mode) const;

    static RealMatrix symplectic_form(int modes);

    nlohmann::json to_json() const;

  private:
    GaussianState(int modes, RealVector mean, RealMatrix cov, HBar hbar,
                  bool validated);
    void check_mode(int mode) const;

    int modes_;
    RealVector mean_;
    RealMatrix cov_;
    HBar hbar_;
};

struct HomodyneOutcome {
    double outcome;
    GaussianState post_state; // modes - 1 (zero-mode state when m == 1)
};

} // namespace cvsim
