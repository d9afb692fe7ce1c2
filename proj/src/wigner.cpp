#include "cvsim/wigner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace cvsim {

namespace {

void check_axes_inside(const RealVector &x_axis, const RealVector &p_axis,
                       const Grid &grid) {
    const double xmax = grid.extent() / 2.0;
    const double pmax = grid.momentum_extent() / 2.0;
    for (int i = 0; i < x_axis.size(); ++i)
        if (std::abs(x_axis[i]) > xmax)
            throw DomainError("wigner x axis extends outside the grid");
    for (int i = 0; i < p_axis.size(); ++i)
        if (std::abs(p_axis[i]) > pmax)
            throw DomainError("wigner p axis extends outside the momentum "
                              "grid");
}

double axis_spacing(const RealVector &axis) {
    if (axis.size() < 2)
        return 0.0;
    return axis[1] - axis[0];
}

} // namespace

RealVector linspace(double lo, double hi, int count) {
    RealVector out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    const double step = (hi - lo) / (count - 1);
    for (int i = 0; i < count; ++i)
        out[i] = lo + step * i;
    return out;
}

RealVector default_axis(HBar hbar, int count) {
    const double half = 5.0 * std::sqrt(hbar.value() / 2.0);
    return linspace(-half, half, count);
}

RealVector wigner_natural_p_axis(const Grid &grid) {
    const int n = grid.n_points();
    const double dp2 = kPi * grid.hbar().value() / (n * grid.spacing());
    RealVector out(n);
    for (int j = 0; j < n; ++j)
        out[j] = (j + 0.5 - 0.5 * n) * dp2;
    return out;
}

WignerGrid wigner_from_grid(const GridState &state, const RealVector &x_axis,
                            const RealVector &p_axis) {
    if (state.modes() != 1)
        throw DomainError("wigner_from_grid expects a single-mode state");
    const Grid &grid = state.grid();
    check_axes_inside(x_axis, p_axis, grid);
    const int n = grid.n_points();
    const double dx = grid.spacing();
    const double hbar = grid.hbar().value();

    // y lattice of whole-bin offsets, y_k = (k - (n/2 - 1)) dx (contains 0)
    RealVector y(n);
    for (int k = 0; k < n; ++k)
        y[k] = (k - (n / 2 - 1)) * dx;

    ComplexMatrix phases(p_axis.size(), n);
    for (int i = 0; i < p_axis.size(); ++i)
        for (int k = 0; k < n; ++k)
            phases(i, k) = std::polar(1.0, 2.0 * p_axis[i] * y[k] / hbar);

    RealMatrix values(p_axis.size(), x_axis.size());
    ComplexVector g(n);
    for (int j = 0; j < x_axis.size(); ++j) {
        const double X = x_axis[j];
        // up_k = psi(x_k + X + dx/2), um_k = psi(x_k + X - dx/2), so that
        // psi(X + y_k) = up_k and psi(X - y_k) = um_{n-1-k}
        const ComplexVector up =
            spectral_shift(state.amplitudes(), grid, -(X + dx / 2.0));
        const ComplexVector um =
            spectral_shift(state.amplitudes(), grid, -(X - dx / 2.0));
        for (int k = 0; k < n; ++k)
            g[k] = std::conj(up[k]) * um[n - 1 - k];
        const ComplexVector row = phases * g;
        for (int i = 0; i < p_axis.size(); ++i)
            values(i, j) = row[i].real() * dx / (kPi * hbar);
    }
    return {x_axis, p_axis, std::move(values), grid.hbar()};
}

WignerGrid wigner_from_gaussian(const GaussianState &state, int mode,
                                const RealVector &x_axis,
                                const RealVector &p_axis) {
    const auto [mu, v] = state.wigner_params(mode);
    const Eigen::Matrix2d vinv = v.inverse();
    const double norm = 1.0 / (2.0 * kPi * std::sqrt(v.determinant()));
    RealMatrix values(p_axis.size(), x_axis.size());
    for (int i = 0; i < p_axis.size(); ++i)
        for (int j = 0; j < x_axis.size(); ++j) {
            Eigen::Vector2d r(x_axis[j] - mu[0], p_axis[i] - mu[1]);
            values(i, j) = norm * std::exp(-0.5 * r.dot(vinv * r));
        }
    return {x_axis, p_axis, std::move(values), state.hbar()};
}

double normalization_check(const WignerGrid &w) {
    const double dx = axis_spacing(w.x_axis);
    const double dp = axis_spacing(w.p_axis);
    return w.values.sum() * dx * dp;
}

void export_wigner(const WignerGrid &w, WignerFormat format,
                   const std::string &path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    if (format == WignerFormat::Csv) {
        out << "x,p,w\n";
        char buf[96];
        for (int i = 0; i < w.p_axis.size(); ++i)
            for (int j = 0; j < w.x_axis.size(); ++j) {
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n",
                              w.x_axis[j], w.p_axis[i], w.values(i, j));
                out << buf;
            }
    } else {
        nlohmann::json jx = nlohmann::json::array();
        for (int j = 0; j < w.x_axis.size(); ++j)
            jx.push_back(w.x_axis[j]);
        nlohmann::json jp = nlohmann::json::array();
        for (int i = 0; i < w.p_axis.size(); ++i)
            jp.push_back(w.p_axis[i]);
        nlohmann::json jv = nlohmann::json::array();
        for (int i = 0; i < w.values.rows(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int j = 0; j < w.values.cols(); ++j)
                row.push_back(w.values(i, j));
            jv.push_back(std::move(row));
        }
        out << nlohmann::json{{"x_axis", std::move(jx)},
                              {"p_axis", std::move(jp)},
                              {"values", std::move(jv)}}
                   .dump(2)
            << "\n";
    }
    if (!out)
        throw std::runtime_error("write to " + path + " failed");
}

void export_pgm(const WignerGrid &w, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path + " for writing");
    const int rows = int(w.values.rows());
    const int cols = int(w.values.cols());
    const double lo = w.values.minCoeff();
    const double hi = w.values.maxCoeff();
    const double span = (hi > lo) ? hi - lo : 1.0;
    out << "P5\n" << cols << " " << rows << "\n255\n";
    // top row = largest p
    for (int i = rows - 1; i >= 0; --i)
        for (int j = 0; j < cols; ++j) {
            const double t = (w.values(i, j) - lo) / span;
            out.put(char(std::lround(255.0 * t)));
        }
    if (!out)
        throw std::runtime_error("write to " + path + " failed");
}

} // namespace cvsim
