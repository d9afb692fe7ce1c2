#include "cvsim/grid_state.hpp"

#include <algorithm>
#include <cmath>

namespace cvsim {

namespace {

constexpr double kEdgeWarnRatio = 1e-8;
constexpr double kBinRoundingTol = 1e-9;

void append_edge_warning(const Grid &grid, const ComplexVector &amps,
                         int modes, std::vector<std::string> &warnings) {
    const int n = grid.n_points();
    double max_abs = 0.0;
    for (const auto &a : amps)
        max_abs = std::max(max_abs, std::abs(a));
    if (max_abs == 0.0)
        return;
    double edge = 0.0;
    if (modes == 1) {
        edge = std::max(std::abs(amps[0]), std::abs(amps[n - 1]));
    } else {
        for (int k = 0; k < n; ++k) {
            edge = std::max({edge, std::abs(amps[k]), std::abs(amps[(n - 1) * n + k]),
                             std::abs(amps[k * n]), std::abs(amps[k * n + n - 1])});
        }
    }
    if (edge > kEdgeWarnRatio * max_abs)
        warnings.push_back("state has significant amplitude at the grid "
                           "boundary; spectral momentum accuracy degrades");
}

} // namespace

void QuadratureOperator::require_hermitian() const {
    for (const auto &term : terms_) {
        if (term.kind != Kind::DiagonalX && term.kind != Kind::DiagonalP)
            continue;
        for (const auto &v : term.diag)
            if (std::abs(v.imag()) > 1e-12 * (1.0 + std::abs(v.real())))
                throw ContractError(
                    "custom diagonal operator is not Hermitian");
    }
}

QuadratureOperator operator+(const QuadratureOperator &a,
                             const QuadratureOperator &b) {
    if (a.mode_ != b.mode_)
        throw ContractError("operator sum requires matching modes");
    std::vector<QuadratureOperator::Term> terms = a.terms_;
    terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
    return QuadratureOperator(std::move(terms), a.mode_);
}

QuadratureOperator operator*(double c, QuadratureOperator op) {
    for (auto &term : op.terms_)
        term.coeff *= c;
    return op;
}

GridState::GridState(Grid grid, int modes, ComplexVector amplitudes,
                     std::vector<std::string> warnings)
    : grid_(grid), modes_(modes), amps_(std::move(amplitudes)),
      warnings_(std::move(warnings)) {
    if (modes_ < 1 || modes_ > 2)
        throw DomainError("GridState supports 1 or 2 modes");
    std::int64_t expected = 1;
    for (int m = 0; m < modes_; ++m)
        expected *= grid_.n_points();
    if (std::int64_t(amps_.size()) != expected)
        throw DimensionError("GridState amplitude tensor has wrong size");
}

double GridState::volume_element() const {
    double v = 1.0;
    for (int m = 0; m < modes_; ++m)
        v *= grid_.spacing();
    return v;
}

double GridState::norm() const {
    return std::sqrt(amps_.squaredNorm() * volume_element());
}

GridState GridState::with_amplitudes(ComplexVector amps) const {
    return GridState(grid_, modes_, std::move(amps), warnings_);
}

void GridState::check_mode(int mode) const {
    if (mode < 0 || mode >= modes_)
        throw DomainError("mode index " + std::to_string(mode) +
                          " out of range for " + std::to_string(modes_) +
                          "-mode state");
}

GridState GridState::from_function(const std::function<Complex(double)> &f,
                                   const Grid &grid) {
    const int n = grid.n_points();
    ComplexVector amps(n);
    for (int k = 0; k < n; ++k)
        amps[k] = f(grid.point(k));
    const double nrm = std::sqrt(amps.squaredNorm() * grid.spacing());
    if (nrm == 0.0 || !std::isfinite(nrm))
        throw DomainError("from_function: degenerate state (zero or "
                          "non-finite samples)");
    amps /= nrm;
    std::vector<std::string> warnings;
    append_edge_warning(grid, amps, 1, warnings);
    return GridState(grid, 1, std::move(amps), std::move(warnings));
}

GridState GridState::vacuum(const Grid &grid) {
    const double hbar = grid.hbar().value();
    return from_function(
        [hbar](double x) { return std::exp(-x * x / (2.0 * hbar)); }, grid);
}

GridState GridState::squeezed_vacuum(const Grid &grid, double r_factor) {
    if (!(r_factor > 0.0))
        throw DomainError("squeezing factor R must be positive");
    const double hbar = grid.hbar().value();
    return from_function(
        [hbar, r_factor](double x) {
            return std::exp(-r_factor * r_factor * x * x / (2.0 * hbar));
        },
        grid);
}

GridState GridState::delta(const Grid &grid, double x) {
    ComplexVector amps = ComplexVector::Zero(grid.n_points());
    amps[grid.nearest_index(x)] = 1.0 / std::sqrt(grid.spacing());
    return GridState(grid, 1, std::move(amps));
}

GridState GridState::entangled_pair(const std::function<Complex(double)> &g,
                                    double c, const Grid &grid) {
    const int n = grid.n_points();
    std::vector<std::string> warnings;
    const double bins = c / grid.spacing();
    const long shift = std::lround(bins);
    if (std::abs(bins - double(shift)) > kBinRoundingTol)
        warnings.push_back("entangled_pair: offset c rounded to " +
                           std::to_string(shift) + " bins");
    ComplexVector amps = ComplexVector::Zero(std::int64_t(n) * n);
    for (int k = 0; k < n; ++k) {
        const long l = k - shift; // x2 = x1 - c
        if (l < 0 || l >= n)
            continue;
        amps[std::int64_t(k) * n + l] = g(grid.point(k));
    }
    const double nrm =
        std::sqrt(amps.squaredNorm() * grid.spacing() * grid.spacing());
    if (nrm == 0.0 || !std::isfinite(nrm))
        throw DomainError("entangled_pair: degenerate amplitude function");
    amps /= nrm;
    append_edge_warning(grid, amps, 2, warnings);
    return GridState(grid, 2, std::move(amps), std::move(warnings));
}

// Applies the centered transform along one tensor axis.
ComplexVector GridState::transformed_along(int mode, bool inverse) const {
    const int n = grid_.n_points();
    if (modes_ == 1)
        return inverse ? p_to_x_transform(amps_, grid_)
                       : x_to_p_transform(amps_, grid_);
    ComplexVector out(amps_.size());
    ComplexVector slice(n);
    const bool axis0 = (mode == 0);
    for (int other = 0; other < n; ++other) {
        for (int k = 0; k < n; ++k)
            slice[k] = axis0 ? amps_[std::int64_t(k) * n + other]
                             : amps_[std::int64_t(other) * n + k];
        ComplexVector tr = inverse ? p_to_x_transform(slice, grid_)
                                   : x_to_p_transform(slice, grid_);
        for (int k = 0; k < n; ++k)
            (axis0 ? out[std::int64_t(k) * n + other]
                   : out[std::int64_t(other) * n + k]) = tr[k];
    }
    return out;
}

GridState GridState::fourier(int mode) const {
    check_mode(mode);
    if (!grid_.is_self_dual())
        throw ConfigError("fourier gate requires a self-dual grid "
                          "(L^2 = 2*pi*hbar*n); use Grid::self_dual");
    return with_amplitudes(transformed_along(mode, false));
}

GridState GridState::parity(int mode) const {
    check_mode(mode);
    const int n = grid_.n_points();
    ComplexVector out(amps_.size());
    if (modes_ == 1) {
        for (int k = 0; k < n; ++k)
            out[k] = amps_[n - 1 - k];
    } else {
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                out[std::int64_t(k) * n + l] =
                    (mode == 0) ? amps_[std::int64_t(n - 1 - k) * n + l]
                                : amps_[std::int64_t(k) * n + (n - 1 - l)];
    }
    return with_amplitudes(std::move(out));
}

GridState GridState::inverse_fourier(int mode) const {
    // F^dagger = F^3 = parity . F
    return fourier(mode).parity(mode);
}

GridState GridState::displace(int mode, double dx_amount,
                              double dp_amount) const {
    check_mode(mode);
    if (std::abs(dx_amount) >= grid_.extent() / 4.0)
        throw DomainError("displace: |dx| must be < extent/4 to avoid "
                          "wraparound");
    if (std::abs(dp_amount) >= grid_.momentum_extent() / 4.0)
        throw DomainError("displace: |dp| must be < momentum extent/4 to "
                          "avoid wraparound");
    const int n = grid_.n_points();
    const double hbar = grid_.hbar().value();
    // position shift: multiply by exp(-i dx p / hbar) in the p domain
    ComplexVector work = transformed_along(mode, false);
    if (modes_ == 1) {
        for (int j = 0; j < n; ++j)
            work[j] *= std::polar(1.0, -grid_.momentum(j) * dx_amount / hbar);
    } else {
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                work[std::int64_t(k) * n + l] *= std::polar(
                    1.0, -grid_.momentum(mode == 0 ? k : l) * dx_amount / hbar);
    }
    GridState shifted = with_amplitudes(std::move(work));
    ComplexVector out = shifted.transformed_along(mode, true);
    // momentum kick: multiply by exp(i dp x / hbar), plus the Weyl phase
    const Complex weyl = std::polar(1.0, -dx_amount * dp_amount / (2.0 * hbar));
    if (modes_ == 1) {
        for (int k = 0; k < n; ++k)
            out[k] *= weyl * std::polar(1.0, dp_amount * grid_.point(k) / hbar);
    } else {
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                out[std::int64_t(k) * n + l] *=
                    weyl * std::polar(1.0, dp_amount *
                                               grid_.point(mode == 0 ? k : l) /
                                               hbar);
    }
    return with_amplitudes(std::move(out));
}

GridState GridState::rotate(int mode, double theta) const {
    check_mode(mode);
    if (!grid_.is_self_dual())
        throw ConfigError("rotate requires a self-dual grid");
    // reduce by exact quarter turns so |residual| <= pi/4
    const long quarters = std::lround(theta / (kPi / 2.0));
    const double residual = theta - double(quarters) * kPi / 2.0;
    GridState state = *this;
    const int q = int(((quarters % 4) + 4) % 4);
    for (int i = 0; i < q; ++i)
        state = state.fourier(mode);
    if (std::abs(residual) < 1e-15)
        return state;

    // exp(-i theta N) = e^{i theta/2} Cx(-tan(theta/2)) Cp(-sin theta)
    //                   Cx(-tan(theta/2)), where Cx(b): multiply by
    //                   e^{i b x^2/2hbar} and Cp likewise in the p domain.
    const int n = grid_.n_points();
    const double hbar = grid_.hbar().value();
    const double tn = std::tan(residual / 2.0);
    const double sn = std::sin(residual);
    auto chirp_x = [&](GridState s) {
        ComplexVector amps = s.amplitudes();
        if (modes_ == 1) {
            for (int k = 0; k < n; ++k) {
                const double x = grid_.point(k);
                amps[k] *= std::polar(1.0, -tn * x * x / (2.0 * hbar));
            }
        } else {
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    const double x = grid_.point(mode == 0 ? k : l);
                    amps[std::int64_t(k) * n + l] *=
                        std::polar(1.0, -tn * x * x / (2.0 * hbar));
                }
        }
        return s.with_amplitudes(std::move(amps));
    };
    state = chirp_x(state);
    ComplexVector phi = state.transformed_along(mode, false);
    if (modes_ == 1) {
        for (int j = 0; j < n; ++j) {
            const double p = grid_.momentum(j);
            phi[j] *= std::polar(1.0, -sn * p * p / (2.0 * hbar));
        }
    } else {
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                const double p = grid_.momentum(mode == 0 ? k : l);
                phi[std::int64_t(k) * n + l] *=
                    std::polar(1.0, -sn * p * p / (2.0 * hbar));
            }
    }
    state = state.with_amplitudes(std::move(phi));
    state = state.with_amplitudes(state.transformed_along(mode, true));
    state = chirp_x(state);
    ComplexVector amps = state.amplitudes() * std::polar(1.0, residual / 2.0);
    return state.with_amplitudes(std::move(amps));
}

GridState GridState::squeeze(int mode, double r, double phi) const {
    check_mode(mode);
    if (std::abs(r) > 10.0)
        throw DomainError("squeeze: |r| must be <= 10");
    GridState state = *this;
    if (phi != 0.0)
        state = state.rotate(mode, phi / 2.0);
    // dilation psi(x) -> e^{r/2} psi(e^r x) by periodic band-limited
    // resampling (Dirichlet kernel)
    const int n = grid_.n_points();
    const double L = grid_.extent();
    const double scale = std::exp(r);
    const auto resample = [&](const ComplexVector &src, double X) {
        // interpolate src at position X; outside the box the state is zero
        // (the periodic extension would alias the bulk back in)
        if (std::abs(X) > L / 2.0)
            return Complex(0.0);
        Complex acc = 0.0;
        for (int j = 0; j < n; ++j) {
            const double u = (X - grid_.point(j)) / L;
            const double s = std::sin(kPi * u);
            double w;
            if (std::abs(s) < 1e-14) {
                w = 1.0;
            } else {
                w = std::sin(kPi * n * u) / (double(n) * std::tan(kPi * u));
            }
            acc += src[j] * w;
        }
        return acc;
    };
    ComplexVector out(state.amplitudes().size());
    const double amp_scale = std::exp(r / 2.0);
    if (modes_ == 1) {
        for (int k = 0; k < n; ++k)
            out[k] = amp_scale * resample(state.amplitudes(), grid_.point(k) * scale);
    } else {
        ComplexVector slice(n), res(n);
        for (int other = 0; other < n; ++other) {
            for (int k = 0; k < n; ++k)
                slice[k] = (mode == 0)
                               ? state.amplitudes()[std::int64_t(k) * n + other]
                               : state.amplitudes()[std::int64_t(other) * n + k];
            for (int k = 0; k < n; ++k)
                res[k] = amp_scale * resample(slice, grid_.point(k) * scale);
            for (int k = 0; k < n; ++k)
                (mode == 0 ? out[std::int64_t(k) * n + other]
                           : out[std::int64_t(other) * n + k]) = res[k];
        }
    }
    state = state.with_amplitudes(std::move(out));
    if (phi != 0.0)
        state = state.rotate(mode, -phi / 2.0);
    return state;
}

std::pair<GridState, double>
GridState::project(const ProjectionWindow &window) const {
    check_mode(window.mode);
    if (window.width < grid_.spacing())
        throw DomainError("projection window narrower than one grid bin");
    if (window.center - window.width / 2.0 < -grid_.extent() / 2.0 - 1e-12 ||
        window.center + window.width / 2.0 > grid_.extent() / 2.0 + 1e-12)
        throw DomainError("projection window extends outside the grid");
    const int n = grid_.n_points();
    const double lo = window.center - window.width / 2.0 - 1e-12;
    const double hi = window.center + window.width / 2.0 + 1e-12;
    ComplexVector out = amps_;
    if (modes_ == 1) {
        for (int k = 0; k < n; ++k) {
            const double x = grid_.point(k);
            if (x < lo || x > hi)
                out[k] = 0.0;
        }
    } else {
        for (int k = 0; k < n; ++k) {
            const double x = grid_.point(k);
            if (x >= lo && x <= hi)
                continue;
            for (int l = 0; l < n; ++l)
                (window.mode == 0 ? out[std::int64_t(k) * n + l]
                                  : out[std::int64_t(l) * n + k]) = 0.0;
        }
    }
    const double weight = out.squaredNorm() * volume_element();
    return {with_amplitudes(std::move(out)), weight};
}

GridState GridState::invert_about(const ProjectionWindow &window) const {
    auto [projected, weight] = project(window);
    (void)weight;
    ComplexVector out = 2.0 * projected.amplitudes() - amps_;
    return with_amplitudes(std::move(out));
}

GridState GridState::normalized() const {
    const double nrm = norm();
    if (nrm == 0.0)
        throw DomainError("cannot normalize a zero state");
    return with_amplitudes(amps_ / nrm);
}

RealVector GridState::marginal_x(int mode) const {
    check_mode(mode);
    const int n = grid_.n_points();
    RealVector out = RealVector::Zero(n);
    if (modes_ == 1) {
        for (int k = 0; k < n; ++k)
            out[k] = std::norm(amps_[k]) * grid_.spacing();
    } else {
        for (int k = 0; k < n; ++k) {
            double acc = 0.0;
            for (int l = 0; l < n; ++l)
                acc += std::norm(mode == 0 ? amps_[std::int64_t(k) * n + l]
                                           : amps_[std::int64_t(l) * n + k]);
            out[k] = acc * volume_element();
        }
    }
    return out;
}

RealVector GridState::marginal_p(int mode) const {
    check_mode(mode);
    GridState tr = with_amplitudes(transformed_along(mode, false));
    // the transformed tensor's measure along `mode` is dp, others dx
    const int n = grid_.n_points();
    RealVector out = RealVector::Zero(n);
    const double other_meas =
        (modes_ == 2) ? grid_.spacing() : 1.0;
    if (modes_ == 1) {
        for (int j = 0; j < n; ++j)
            out[j] = std::norm(tr.amps_[j]) * grid_.momentum_spacing();
    } else {
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int l = 0; l < n; ++l)
                acc += std::norm(mode == 0 ? tr.amps_[std::int64_t(j) * n + l]
                                           : tr.amps_[std::int64_t(l) * n + j]);
            out[j] = acc * grid_.momentum_spacing() * other_meas;
        }
    }
    return out;
}

namespace {
int sample_pmf(const RealVector &pmf, Rng &rng) {
    const double u = rng.uniform01() * pmf.sum();
    double acc = 0.0;
    for (int k = 0; k < pmf.size(); ++k) {
        acc += pmf[k];
        if (u < acc)
            return k;
    }
    return int(pmf.size()) - 1;
}
} // namespace

MeasurementOutcome GridState::measure_x(int mode, Rng &rng) const {
    check_mode(mode);
    if (std::abs(norm() - 1.0) > 1e-6)
        throw ContractError("measure_x requires a normalized state");
    const RealVector pmf = marginal_x(mode);
    const int bin = sample_pmf(pmf, rng);
    const int n = grid_.n_points();
    if (modes_ == 1) {
        ComplexVector post = ComplexVector::Zero(n);
        post[bin] = 1.0 / std::sqrt(grid_.spacing());
        return {bin, grid_.point(bin), with_amplitudes(std::move(post))};
    }
    // conditional state of the remaining mode
    ComplexVector cond(n);
    for (int l = 0; l < n; ++l)
        cond[l] = (mode == 0) ? amps_[std::int64_t(bin) * n + l]
                              : amps_[std::int64_t(l) * n + bin];
    const double nrm = std::sqrt(cond.squaredNorm() * grid_.spacing());
    if (nrm == 0.0)
        throw DomainError("measure_x: sampled a zero-probability bin");
    cond /= nrm;
    return {bin, grid_.point(bin), GridState(grid_, 1, std::move(cond))};
}

MeasurementOutcome GridState::measure_x_collapse(int mode, Rng &rng) const {
    check_mode(mode);
    if (std::abs(norm() - 1.0) > 1e-6)
        throw ContractError("measure_x requires a normalized state");
    const RealVector pmf = marginal_x(mode);
    const int bin = sample_pmf(pmf, rng);
    const int n = grid_.n_points();
    ComplexVector out = ComplexVector::Zero(amps_.size());
    if (modes_ == 1) {
        out[bin] = 1.0 / std::sqrt(grid_.spacing());
    } else {
        for (int l = 0; l < n; ++l) {
            if (mode == 0)
                out[std::int64_t(bin) * n + l] = amps_[std::int64_t(bin) * n + l];
            else
                out[std::int64_t(l) * n + bin] = amps_[std::int64_t(l) * n + bin];
        }
    }
    GridState post = with_amplitudes(std::move(out)).normalized();
    return {bin, grid_.point(bin), std::move(post)};
}

GridState GridState::apply(const QuadratureOperator &op) const {
    check_mode(op.mode());
    op.require_hermitian();
    const int n = grid_.n_points();
    ComplexVector total = ComplexVector::Zero(amps_.size());
    for (const auto &term : op.terms()) {
        const bool in_p = (term.kind == QuadratureOperator::Kind::P ||
                           term.kind == QuadratureOperator::Kind::DiagonalP);
        auto diag_value = [&](int k) -> Complex {
            switch (term.kind) {
            case QuadratureOperator::Kind::X:
                return grid_.point(k);
            case QuadratureOperator::Kind::P:
                return grid_.momentum(k);
            default:
                if (int(term.diag.size()) != n)
                    throw DimensionError("custom diagonal length mismatch");
                return term.diag[k];
            }
        };
        ComplexVector work =
            in_p ? transformed_along(op.mode(), false) : amps_;
        if (modes_ == 1) {
            for (int k = 0; k < n; ++k)
                work[k] *= term.coeff * diag_value(k);
        } else {
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    work[std::int64_t(k) * n + l] *=
                        term.coeff * diag_value(op.mode() == 0 ? k : l);
        }
        if (in_p) {
            GridState mid = with_amplitudes(std::move(work));
            total += mid.transformed_along(op.mode(), true);
        } else {
            total += work;
        }
    }
    return with_amplitudes(std::move(total));
}

double GridState::expectation(const QuadratureOperator &op) const {
    op.require_hermitian();
    const GridState applied = apply(op);
    const Complex val =
        (amps_.conjugate().array() * applied.amplitudes().array()).sum() *
        volume_element();
    if (std::abs(val.imag()) > 1e-8 * (1.0 + std::abs(val.real())))
        throw ContractError("expectation has a non-negligible imaginary "
                            "part; operator is not Hermitian on this state");
    return val.real();
}

UncertaintyResult GridState::uncertainty(int mode) const {
    check_mode(mode);
    const RealVector mx = marginal_x(mode);
    const RealVector mp = marginal_p(mode);
    double ex = 0.0, ex2 = 0.0, ep = 0.0, ep2 = 0.0;
    for (int k = 0; k < grid_.n_points(); ++k) {
        const double x = grid_.point(k);
        const double p = grid_.momentum(k);
        ex += x * mx[k];
        ex2 += x * x * mx[k];
        ep += p * mp[k];
        ep2 += p * p * mp[k];
    }
    const double dx = std::sqrt(std::max(ex2 - ex * ex, 0.0));
    const double dp = std::sqrt(std::max(ep2 - ep * ep, 0.0));
    return {dx, dp, dx * dp};
}

GeneralizedUncertainty
GridState::generalized_uncertainty(const QuadratureOperator &a,
                                   const QuadratureOperator &b) const {
    a.require_hermitian();
    b.require_hermitian();
    const GridState as = apply(a);
    const GridState bs = apply(b);
    const double vol = volume_element();
    auto inner = [vol](const ComplexVector &u, const ComplexVector &v) {
        return Complex((u.conjugate().array() * v.array()).sum()) * vol;
    };
    const double ea = inner(amps_, as.amplitudes()).real();
    const double eb = inner(amps_, bs.amplitudes()).real();
    // <A^2> = <A psi | A psi> for Hermitian A
    const double ea2 = inner(as.amplitudes(), as.amplitudes()).real();
    const double eb2 = inner(bs.amplitudes(), bs.amplitudes()).real();
    const double da = std::sqrt(std::max(ea2 - ea * ea, 0.0));
    const double db = std::sqrt(std::max(eb2 - eb * eb, 0.0));
    // <[A,B]> = <A psi | B psi> - <B psi | A psi>
    const Complex comm =
        inner(as.amplitudes(), bs.amplitudes()) -
        inner(bs.amplitudes(), as.amplitudes());
    const double rhs = 0.5 * std::abs(comm);
    const double lhs = da * db;
    return {lhs, rhs, lhs >= rhs * (1.0 - 1e-6)};
}

double GridState::probability_in(const ProjectionWindow &window) const {
    auto [state, weight] = project(window);
    (void)state;
    return weight;
}

double GridState::fidelity(const GridState &other) const {
    if (amps_.size() != other.amps_.size())
        throw DimensionError("fidelity: state sizes differ");
    const Complex ov =
        Complex((amps_.conjugate().array() * other.amps_.array()).sum()) *
        volume_element();
    return std::norm(ov);
}

nlohmann::json GridState::to_json() const {
    nlohmann::json amps = nlohmann::json::array();
    for (const auto &a : amps_)
        amps.push_back({a.real(), a.imag()});
    return {{"grid",
             {{"n", grid_.n_points()},
              {"L", grid_.extent()},
              {"hbar", grid_.hbar().value()}}},
            {"modes", modes_},
            {"amplitudes", std::move(amps)}};
}

double commutator_residual(const Grid &grid, const GridState &test_state) {
    if (test_state.modes() != 1)
        throw DomainError("commutator_residual expects a single-mode state");
    const auto x_op = QuadratureOperator::x(0);
    const auto p_op = QuadratureOperator::p(0);
    const GridState xp = test_state.apply(p_op).apply(x_op);
    const GridState px = test_state.apply(x_op).apply(p_op);
    const double hbar = grid.hbar().value();
    double max_err = 0.0;
    for (int k = 0; k < grid.n_points(); ++k) {
        if (std::abs(grid.point(k)) >= grid.extent() / 4.0)
            continue;
        const Complex lhs = xp.amplitudes()[k] - px.amplitudes()[k];
        const Complex rhs = Complex(0.0, hbar) * test_state.amplitudes()[k];
        max_err = std::max(max_err, std::abs(lhs - rhs));
    }
    return max_err;
}

} // namespace cvsim
