#pragma once

#include <functional>

#include "cvsim/common.hpp"

namespace cvsim {

/// Uniform cell-centered discretization of one quadrature axis.
///
/// The n points are x_k = -L/2 + (k + 1/2) dx, so the grid is symmetric
/// under x -> -x (index reversal) and no point sits on the boundary. The
/// induced momentum grid has spacing dp = 2*pi*hbar/L and the same centered
/// layout on [-pi*hbar/dx, pi*hbar/dx).
class Grid {
  public:
    Grid(int n_points, double extent, HBar hbar);

    /// Grid with dx == dp (extent L = sqrt(2*pi*hbar*n)), required by the
    /// Fourier gate which reinterprets momentum values on the x axis.
    static Grid self_dual(int n_points, HBar hbar);

    int n_points() const { return n_; }
    double extent() const { return extent_; }
    double spacing() const { return extent_ / n_; }
    HBar hbar() const { return hbar_; }

    double momentum_spacing() const {
        return 2.0 * kPi * hbar_.value() / extent_;
    }
    double momentum_extent() const { return n_ * momentum_spacing(); }

    double point(int k) const { return (k + 0.5 - 0.5 * n_) * spacing(); }
    double momentum(int j) const {
        return (j + 0.5 - 0.5 * n_) * momentum_spacing();
    }
    RealVector points() const;
    RealVector momenta() const;

    /// Index of the grid point closest to x.
    int nearest_index(double x) const;

    bool is_self_dual() const {
        return std::abs(spacing() - momentum_spacing()) <= 1e-12 * spacing();
    }

    friend bool operator==(const Grid &a, const Grid &b) {
        return a.n_ == b.n_ && a.extent_ == b.extent_ && a.hbar_ == b.hbar_;
    }

  private:
    int n_;
    double extent_;
    HBar hbar_;
};

/// phi(p_j) = 1/sqrt(2*pi*hbar) * sum_k psi(x_k) exp(-i p_j x_k / hbar) dx,
/// the discrete unitary realization of the x->p Fourier transform on the
/// centered grids. Exactly unitary: sum |phi|^2 dp == sum |psi|^2 dx.
ComplexVector x_to_p_transform(const ComplexVector &values, const Grid &grid);

/// Exact inverse of x_to_p_transform.
ComplexVector p_to_x_transform(const ComplexVector &values, const Grid &grid);

/// Riemann sum  sum_k values_k * dx. Exact for band-limited integrands
/// sampled above Nyquist.
Complex quadrature_integrate(const ComplexVector &values, const Grid &grid);

/// Oscillator eigenfunction psi_n(x) = (2^n n! sqrt(pi*hbar))^{-1/2}
/// H_n(x/sqrt(hbar)) exp(-x^2/2hbar), sampled on the grid via the
/// normalized three-term recurrence (no factorials, stable to n ~ 200).
ComplexVector hermite_function(int n, const Grid &grid);

/// Scaling-and-squaring matrix exponential (backed by Eigen's
/// MatrixFunctions). Unitary to ~1e-10 for skew-Hermitian input.
ComplexMatrix matrix_exp(const ComplexMatrix &m);

/// Evaluates the discrete Dirac-delta identity
///   sum_p exp(i p (x - x')/hbar) dp / (2*pi*hbar)  ==  delta_grid(x - x')
/// with x' fixed at the central grid point (delta_grid is 1/dx at x = x',
/// zero elsewhere) and returns the maximum absolute deviation. DFT
/// orthogonality makes this exact up to rounding.
double delta_identity_check(const Grid &grid);
double delta_identity_check(const Grid &grid, int center_index);

/// Translates a band-limited sampled function by an arbitrary offset via a
/// momentum-space phase: result(x) = values(x - delta). Exact for states
/// resolved by the grid; wraps periodically at the boundary.
ComplexVector spectral_shift(const ComplexVector &values, const Grid &grid,
                             double delta);

namespace detail {
/// In-place unnormalized radix-2 FFT; n must be a power of two.
void fft_radix2(ComplexVector &values, bool inverse);
bool is_power_of_two(int n);
} // namespace detail

} // namespace cvsim
