#include "cvsim/numerics.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace cvsim {

namespace detail {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void fft_radix2(ComplexVector &values, bool inverse) {
    const int n = int(values.size());
    if (!is_power_of_two(n))
        throw DimensionError("fft length must be a power of two");
    // bit-reversal permutation
    for (int i = 1, j = 0; i < n; ++i) {
        int bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(values[i], values[j]);
    }
    const double sign = inverse ? 1.0 : -1.0;
    for (int len = 2; len <= n; len <<= 1) {
        const int half = len >> 1;
        const double ang = sign * 2.0 * kPi / len;
        for (int i = 0; i < n; i += len) {
            for (int k = 0; k < half; ++k) {
                const Complex w = std::polar(1.0, ang * k);
                const Complex u = values[i + k];
                const Complex v = values[i + k + half] * w;
                values[i + k] = u + v;
                values[i + k + half] = u - v;
            }
        }
    }
}

} // namespace detail

Grid::Grid(int n_points, double extent, HBar hbar)
    : n_(n_points), extent_(extent), hbar_(hbar) {
    if (!detail::is_power_of_two(n_points))
        throw ConfigError("grid n_points must be a power of two, got " +
                          std::to_string(n_points));
    if (!(extent > 0.0))
        throw ConfigError("grid extent must be positive");
}

Grid Grid::self_dual(int n_points, HBar hbar) {
    return Grid(n_points, std::sqrt(2.0 * kPi * hbar.value() * n_points),
                hbar);
}

RealVector Grid::points() const {
    RealVector out(n_);
    for (int k = 0; k < n_; ++k)
        out[k] = point(k);
    return out;
}

RealVector Grid::momenta() const {
    RealVector out(n_);
    for (int j = 0; j < n_; ++j)
        out[j] = momentum(j);
    return out;
}

int Grid::nearest_index(double x) const {
    const int k = int(std::lround(x / spacing() - 0.5 + 0.5 * n_));
    return std::min(std::max(k, 0), n_ - 1);
}

namespace {

void check_length(const ComplexVector &values, const Grid &grid,
                  const char *what) {
    if (int(values.size()) != grid.n_points())
        throw DimensionError(std::string(what) + ": length " +
                             std::to_string(values.size()) +
                             " does not match grid n_points " +
                             std::to_string(grid.n_points()));
}

// The half-sample offset of the centered grids: x_k = (k + a) dx and
// p_j = (j + a) dp with a = (1 - n)/2, so the transform factors into
// pre-phase, plain DFT, post-phase.
ComplexVector centered_transform(const ComplexVector &values, const Grid &grid,
                                 bool inverse) {
    const int n = grid.n_points();
    const double a = 0.5 * (1.0 - n);
    const double sign = inverse ? 1.0 : -1.0;
    ComplexVector work(n);
    for (int k = 0; k < n; ++k)
        work[k] = values[k] * std::polar(1.0, sign * 2.0 * kPi * a * k / n);
    detail::fft_radix2(work, inverse);
    const Complex corner = std::polar(1.0, sign * 2.0 * kPi * a * a / n);
    const double scale =
        (inverse ? grid.momentum_spacing() : grid.spacing()) /
        std::sqrt(2.0 * kPi * grid.hbar().value());
    for (int j = 0; j < n; ++j)
        work[j] *= corner * scale *
                   std::polar(1.0, sign * 2.0 * kPi * a * j / n);
    return work;
}

} // namespace

ComplexVector x_to_p_transform(const ComplexVector &values, const Grid &grid) {
    check_length(values, grid, "x_to_p_transform");
    return centered_transform(values, grid, false);
}

ComplexVector p_to_x_transform(const ComplexVector &values, const Grid &grid) {
    check_length(values, grid, "p_to_x_transform");
    return centered_transform(values, grid, true);
}

Complex quadrature_integrate(const ComplexVector &values, const Grid &grid) {
    check_length(values, grid, "quadrature_integrate");
    return values.sum() * grid.spacing();
}

ComplexVector hermite_function(int n, const Grid &grid) {
    if (n < 0 || n > 200)
        throw DomainError("hermite_function: n must be in [0, 200], got " +
                          std::to_string(n));
    const int m = grid.n_points();
    const double hbar = grid.hbar().value();
    const double norm0 = std::pow(kPi, -0.25) * std::pow(hbar, -0.25);
    RealVector prev(m), cur(m);
    for (int k = 0; k < m; ++k) {
        const double x = grid.point(k);
        prev[k] = norm0 * std::exp(-x * x / (2.0 * hbar));
    }
    if (n == 0)
        return prev.cast<Complex>();
    for (int k = 0; k < m; ++k)
        cur[k] = std::sqrt(2.0) * grid.point(k) / std::sqrt(hbar) * prev[k];
    for (int j = 1; j < n; ++j) {
        for (int k = 0; k < m; ++k) {
            const double xi = grid.point(k) / std::sqrt(hbar);
            const double next = xi * std::sqrt(2.0 / (j + 1)) * cur[k] -
                                std::sqrt(double(j) / (j + 1)) * prev[k];
            prev[k] = cur[k];
            cur[k] = next;
        }
    }
    return cur.cast<Complex>();
}

ComplexMatrix matrix_exp(const ComplexMatrix &m) {
    if (m.rows() != m.cols())
        throw DimensionError("matrix_exp: matrix must be square");
    return m.exp();
}

double delta_identity_check(const Grid &grid) {
    return delta_identity_check(grid, grid.n_points() / 2);
}

double delta_identity_check(const Grid &grid, int center_index) {
    const int n = grid.n_points();
    if (center_index < 0 || center_index >= n)
        throw DomainError("delta_identity_check: center index out of range");
    const double hbar = grid.hbar().value();
    const double dp = grid.momentum_spacing();
    const double xc = grid.point(center_index);
    double max_err = 0.0;
    for (int k = 0; k < n; ++k) {
        const double dxk = grid.point(k) - xc;
        Complex sum = 0.0;
        for (int j = 0; j < n; ++j)
            sum += std::polar(1.0, grid.momentum(j) * dxk / hbar);
        sum *= dp / (2.0 * kPi * hbar);
        const double expected = (k == center_index) ? 1.0 / grid.spacing() : 0.0;
        max_err = std::max(max_err, std::abs(sum - expected));
    }
    return max_err;
}

ComplexVector spectral_shift(const ComplexVector &values, const Grid &grid,
                             double delta) {
    ComplexVector phi = x_to_p_transform(values, grid);
    const double hbar = grid.hbar().value();
    for (int j = 0; j < grid.n_points(); ++j)
        phi[j] *= std::polar(1.0, -grid.momentum(j) * delta / hbar);
    return p_to_x_transform(phi, grid);
}

} // namespace cvsim
