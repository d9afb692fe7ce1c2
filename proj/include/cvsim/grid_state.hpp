#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cvsim/numerics.hpp"

#include "json.hpp"

namespace cvsim {

/// Finite-precision measurement window on one mode:
/// the interval [center - width/2, center + width/2].
struct ProjectionWindow {
    double center = 0.0;
    double width = 0.0;
    int mode = 0;
};

/// Hermitian single-mode operator for expectation values: a real linear
/// combination of primitive terms. X multiplies by the coordinate, P is
/// the spectral derivative (multiply-by-p in the transform domain, exactly
/// Hermitian on the grid); the custom kinds carry an explicit diagonal in
/// the x or p basis. Sums like x + p arise from operator+.
class QuadratureOperator {
  public:
    enum class Kind { X, P, DiagonalX, DiagonalP };

    struct Term {
        double coeff;
        Kind kind;
        ComplexVector diag;
    };

    static QuadratureOperator x(int mode = 0) {
        return QuadratureOperator({{1.0, Kind::X, {}}}, mode);
    }
    static QuadratureOperator p(int mode = 0) {
        return QuadratureOperator({{1.0, Kind::P, {}}}, mode);
    }
    static QuadratureOperator diagonal_x(ComplexVector diag, int mode = 0) {
        return QuadratureOperator({{1.0, Kind::DiagonalX, std::move(diag)}},
                                  mode);
    }
    static QuadratureOperator diagonal_p(ComplexVector diag, int mode = 0) {
        return QuadratureOperator({{1.0, Kind::DiagonalP, std::move(diag)}},
                                  mode);
    }

    friend QuadratureOperator operator+(const QuadratureOperator &a,
                                        const QuadratureOperator &b);
    friend QuadratureOperator operator*(double c, QuadratureOperator op);

    const std::vector<Term> &terms() const { return terms_; }
    int mode() const { return mode_; }

    /// Throws ContractError when a custom diagonal is not real (Hermitian).
    void require_hermitian() const;

  private:
    QuadratureOperator(std::vector<Term> terms, int mode)
        : terms_(std::move(terms)), mode_(mode) {}
    std::vector<Term> terms_;
    int mode_;
};

struct UncertaintyResult {
    double delta_x;
    double delta_p;
    double product;
};

struct GeneralizedUncertainty {
    double lhs;  // dA * dB
    double rhs;  // |<[A,B]>| / 2
    bool holds;
};

struct MeasurementOutcome;

/// Discretized multi-mode wavefunction in the x representation. Amplitudes
/// are a complex tensor over grid points (row-major, mode 0 slowest);
/// normalized states satisfy sum |amps|^2 dx^m = 1. Immutable: every
/// operation returns a new state.
class GridState {
  public:
    GridState(Grid grid, int modes, ComplexVector amplitudes,
              std::vector<std::string> warnings = {});

    /// Samples f on the grid and normalizes. Throws DomainError when the
    /// samples are all zero.
    static GridState
    from_function(const std::function<Complex(double)> &f, const Grid &grid);

    /// Ground state of the unit oscillator: exp(-x^2 / 2 hbar), normalized.
    static GridState vacuum(const Grid &grid);

    /// exp(-R^2 x^2 / 2 hbar): R > 1 squeezes x (R = 1 is the vacuum).
    static GridState squeezed_vacuum(const Grid &grid, double r_factor);

    /// Point mass 1/sqrt(dx) at the grid point nearest x.
    static GridState delta(const Grid &grid, double x);

    /// Two-mode state g(x1) K(x2 - (x1 - c)) with a one-bin kernel K;
    /// c is rounded to a whole number of bins (warning when it is not
    /// within 1e-9 of one).
    static GridState entangled_pair(const std::function<Complex(double)> &g,
                                    double c, const Grid &grid);

    const Grid &grid() const { return grid_; }
    int modes() const { return modes_; }
    const ComplexVector &amplitudes() const { return amps_; }
    const std::vector<std::string> &warnings() const { return warnings_; }

    double norm() const;
    double volume_element() const;

    /// x->p transform along one mode, reinterpreted on the x grid
    /// (requires a self-dual grid). Applying it twice gives the parity map
    /// psi(x) -> psi(-x); four times is the identity.
    GridState fourier(int mode) const;
    /// Adjoint of fourier (= fourier followed by parity).
    GridState inverse_fourier(int mode) const;
    /// psi(x) -> psi(-x) on one mode (exact index reversal).
    GridState parity(int mode) const;

    /// Weyl displacement: means shift by exactly (dx_amount, dp_amount);
    /// D(a,b) then D(-a,-b) is the identity with no residual phase.
    GridState displace(int mode, double dx_amount, double dp_amount) const;

    /// Phase-space rotation exp(-i theta N) realized as a fractional
    /// Fourier transform (three chirp multiplies around one transform pair,
    /// after range reduction by exact quarter turns). Self-dual grids only.
    GridState rotate(int mode, double theta) const;

    /// Squeeze with phase: for phi = 0 the wavefunction dilation
    /// psi(x) -> e^{r/2} psi(e^r x) via band-limited resampling;
    /// general phi conjugates the dilation with rotations.
    GridState squeeze(int mode, double r, double phi = 0.0) const;

    /// Zeroes amplitudes outside the window; returns the unnormalized
    /// projected state and the surviving probability mass. Idempotent.
    std::pair<GridState, double> project(const ProjectionWindow &window) const;

    /// 2 P - 1: amplitudes inside the window kept, outside negated.
    GridState invert_about(const ProjectionWindow &window) const;

    /// Renormalized copy (DomainError on zero norm).
    GridState normalized() const;

    /// Samples a grid bin from the x distribution of one mode. The post
    /// state is the conditional state on the remaining modes (single-mode
    /// states collapse to the outcome bin).
    MeasurementOutcome measure_x(int mode, Rng &rng) const;

    /// Same sampling, but the measured mode collapses in place to the
    /// outcome bin, keeping the tensor shape.
    MeasurementOutcome measure_x_collapse(int mode, Rng &rng) const;

    double expectation(const QuadratureOperator &op) const;
    GridState apply(const QuadratureOperator &op) const;

    UncertaintyResult uncertainty(int mode) const;
    GeneralizedUncertainty
    generalized_uncertainty(const QuadratureOperator &a,
                            const QuadratureOperator &b) const;

    /// Probability mass inside a window (normalized states).
    double probability_in(const ProjectionWindow &window) const;

    /// |psi|^2 dx marginal of one mode (sums out the others).
    RealVector marginal_x(int mode) const;
    /// |phi|^2 dp marginal of one mode.
    RealVector marginal_p(int mode) const;

    double fidelity(const GridState &other) const;

    nlohmann::json to_json() const;

  private:
    ComplexVector transformed_along(int mode, bool inverse) const;
    GridState with_amplitudes(ComplexVector amps) const;
    void check_mode(int mode) const;

    Grid grid_;
    int modes_;
    ComplexVector amps_;
    std::vector<std::string> warnings_;
};

struct MeasurementOutcome {
    int outcome_bin;
    double outcome_x;
    GridState post_state;
};

/// Pointwise residual of (x p - p x) psi - i hbar psi on the interior half
/// of the grid (|x| < L/4); < 1e-6 for Gaussian-class states on n >= 512.
double commutator_residual(const Grid &grid, const GridState &test_state);

} // namespace cvsim
