#include "cvsim/fock_state.hpp"

#include <cmath>

namespace cvsim {

namespace {
constexpr double kLeakWarn = 1e-6;
constexpr double kLeakError = 1e-3;

void check_cutoff(int cutoff) {
    if (cutoff < 2)
        throw DomainError("cutoff must be at least 2");
}
} // namespace

LadderOps ladder_ops(int cutoff) {
    check_cutoff(cutoff);
    ComplexMatrix a = ComplexMatrix::Zero(cutoff, cutoff);
    for (int n = 1; n < cutoff; ++n)
        a(n - 1, n) = std::sqrt(double(n));
    ComplexMatrix a_dag = a.adjoint();
    // a_dag * a is exactly diagonal; build it directly so the spectrum is
    // free of sqrt(n)^2 rounding
    ComplexMatrix n_op = ComplexMatrix::Zero(cutoff, cutoff);
    for (int n = 0; n < cutoff; ++n)
        n_op(n, n) = double(n);
    return {std::move(a), std::move(a_dag), std::move(n_op)};
}

std::pair<ComplexMatrix, ComplexMatrix> quadrature_ops(int cutoff, HBar hbar) {
    const LadderOps ops = ladder_ops(cutoff);
    const double s = std::sqrt(hbar.value() / 2.0);
    ComplexMatrix x = s * (ops.a + ops.a_dag);
    ComplexMatrix p = Complex(0.0, -1.0) * s * (ops.a - ops.a_dag);
    return {std::move(x), std::move(p)};
}

ComplexMatrix fock_hamiltonian(int cutoff, HBar hbar) {
    auto [x, p] = quadrature_ops(cutoff, hbar);
    return 0.5 * (p * p + x * x);
}

ComplexMatrix phase_gate(double theta, int cutoff) {
    check_cutoff(cutoff);
    ComplexMatrix u = ComplexMatrix::Zero(cutoff, cutoff);
    for (int n = 0; n < cutoff; ++n)
        u(n, n) = std::polar(1.0, -theta * n);
    return u;
}

ComplexMatrix displacement_gate(Complex alpha, int cutoff) {
    check_cutoff(cutoff);
    if (std::abs(alpha) > std::sqrt(double(cutoff)) / 3.0)
        throw TruncationError("displacement amplitude too large for cutoff");
    const LadderOps ops = ladder_ops(cutoff);
    return matrix_exp(alpha * ops.a_dag - std::conj(alpha) * ops.a);
}

ComplexMatrix squeeze_gate(Complex zeta, int cutoff) {
    check_cutoff(cutoff);
    if (std::abs(zeta) > 2.0)
        throw TruncationError("squeeze parameter too large for cutoff");
    const LadderOps ops = ladder_ops(cutoff);
    return matrix_exp(0.5 * (std::conj(zeta) * ops.a * ops.a -
                             zeta * ops.a_dag * ops.a_dag));
}

ComplexMatrix mixer_matrix(double theta, double phi, int cutoff) {
    check_cutoff(cutoff);
    if (std::int64_t(cutoff) * cutoff > 4096)
        throw ResourceError("mixer matrix dimension exceeds 4096");
    const LadderOps ops = ladder_ops(cutoff);
    const std::int64_t dim = std::int64_t(cutoff) * cutoff;
    ComplexMatrix a1 = ComplexMatrix::Zero(dim, dim);
    ComplexMatrix a2 = ComplexMatrix::Zero(dim, dim);
    // mode 0 slowest: a1 = a (x) I, a2 = I (x) a
    for (int i = 0; i < cutoff; ++i)
        for (int j = 0; j < cutoff; ++j) {
            if (ops.a(i, j) == Complex(0.0))
                continue;
            for (int k = 0; k < cutoff; ++k) {
                a1(std::int64_t(i) * cutoff + k,
                   std::int64_t(j) * cutoff + k) = ops.a(i, j);
                a2(std::int64_t(k) * cutoff + i,
                   std::int64_t(k) * cutoff + j) = ops.a(i, j);
            }
        }
    const Complex ephi = std::polar(1.0, phi);
    ComplexMatrix gen = theta * (std::conj(ephi) * a1 * a2.adjoint() -
                                 ephi * a1.adjoint() * a2);
    return matrix_exp(gen);
}

FockState::FockState(int modes, int cutoff, ComplexVector amplitudes,
                     HBar hbar, std::vector<std::string> warnings)
    : modes_(modes), cutoff_(cutoff), amps_(std::move(amplitudes)),
      hbar_(hbar), warnings_(std::move(warnings)) {
    if (modes_ < 1 || modes_ > 2)
        throw DomainError("FockState supports 1 or 2 modes");
    check_cutoff(cutoff_);
    std::int64_t expected = 1;
    for (int m = 0; m < modes_; ++m)
        expected *= cutoff_;
    if (std::int64_t(amps_.size()) != expected)
        throw DimensionError("FockState amplitude tensor has wrong size");
}

FockState FockState::vacuum(int modes, int cutoff, HBar hbar) {
    return basis(modes, cutoff, hbar, std::vector<int>(modes, 0));
}

FockState FockState::basis(int modes, int cutoff, HBar hbar,
                           const std::vector<int> &levels) {
    if (int(levels.size()) != modes)
        throw DimensionError("basis: one level per mode required");
    std::int64_t idx = 0;
    for (int m = 0; m < modes; ++m) {
        if (levels[m] < 0 || levels[m] >= cutoff)
            throw DomainError("basis level out of range");
        idx = idx * cutoff + levels[m];
    }
    std::int64_t dim = 1;
    for (int m = 0; m < modes; ++m)
        dim *= cutoff;
    ComplexVector amps = ComplexVector::Zero(dim);
    amps[idx] = 1.0;
    return FockState(modes, cutoff, std::move(amps), hbar);
}

FockState FockState::coherent(Complex alpha, int cutoff, HBar hbar) {
    check_cutoff(cutoff);
    if (std::norm(alpha) >= cutoff / 4.0)
        throw TruncationError("coherent: |alpha|^2 must be < cutoff/4");
    ComplexVector amps(cutoff);
    amps[0] = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < cutoff; ++n)
        amps[n] = amps[n - 1] * alpha / std::sqrt(double(n));
    amps /= amps.norm();
    return FockState(1, cutoff, std::move(amps), hbar);
}

FockState FockState::apply_single(const ComplexMatrix &u, int mode) const {
    if (u.rows() != cutoff_ || u.cols() != cutoff_)
        throw DimensionError("gate matrix does not match cutoff");
    if (mode < 0 || mode >= modes_)
        throw DomainError("mode index out of range");
    ComplexVector out;
    if (modes_ == 1) {
        out = u * amps_;
    } else {
        Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic,
                                       Eigen::RowMajor>>
            m(amps_.data(), cutoff_, cutoff_);
        Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
            res = (mode == 0) ? (u * m).eval() : (m * u.transpose()).eval();
        out = Eigen::Map<const ComplexVector>(res.data(), res.size());
    }
    FockState next(modes_, cutoff_, std::move(out), hbar_, warnings_);
    for (int m = 0; m < modes_; ++m) {
        const double leak = next.top_level_population(m);
        if (leak > kLeakError)
            throw TruncationError(
                "gate application leaked " + std::to_string(leak) +
                " probability into the top level; raise the cutoff");
        if (leak > kLeakWarn)
            next.warnings_.push_back("truncation warning: top-level "
                                     "population " +
                                     std::to_string(leak));
    }
    return next;
}

FockState FockState::apply_two(const ComplexMatrix &u) const {
    if (modes_ != 2)
        throw DomainError("two-mode gate on a single-mode state");
    if (u.rows() != amps_.size())
        throw DimensionError("two-mode gate dimension mismatch");
    FockState next(modes_, cutoff_, u * amps_, hbar_, warnings_);
    for (int m = 0; m < modes_; ++m) {
        const double leak = next.top_level_population(m);
        if (leak > kLeakError)
            throw TruncationError("two-mode gate leaked probability into the "
                                  "top level; raise the cutoff");
        if (leak > kLeakWarn)
            next.warnings_.push_back("truncation warning: top-level "
                                     "population " +
                                     std::to_string(leak));
    }
    return next;
}

double FockState::top_level_population(int mode) const {
    if (mode < 0 || mode >= modes_)
        throw DomainError("mode index out of range");
    double mass = 0.0;
    if (modes_ == 1) {
        mass = std::norm(amps_[cutoff_ - 1]);
    } else {
        for (int k = 0; k < cutoff_; ++k)
            mass += std::norm(
                mode == 0 ? amps_[std::int64_t(cutoff_ - 1) * cutoff_ + k]
                          : amps_[std::int64_t(k) * cutoff_ + cutoff_ - 1]);
    }
    return mass;
}

double FockState::expectation(const ComplexMatrix &op) const {
    if (modes_ != 1)
        throw DomainError("expectation currently supports single-mode states");
    if (op.rows() != cutoff_)
        throw DimensionError("operator dimension mismatch");
    const Complex v = amps_.dot(op * amps_);
    return v.real();
}

double FockState::mean_photon_number() const {
    double acc = 0.0;
    if (modes_ == 1) {
        for (int n = 0; n < cutoff_; ++n)
            acc += n * std::norm(amps_[n]);
    } else {
        for (int n1 = 0; n1 < cutoff_; ++n1)
            for (int n2 = 0; n2 < cutoff_; ++n2)
                acc += (n1 + n2) *
                       std::norm(amps_[std::int64_t(n1) * cutoff_ + n2]);
    }
    return acc;
}

GridState FockState::to_grid(const Grid &grid) const {
    if (modes_ != 1)
        throw DomainError("to_grid supports single-mode states");
    if (grid.hbar() != hbar_)
        throw ConfigError("to_grid: grid hbar differs from state hbar");
    const double needed = 2.0 * std::sqrt(2.0 * hbar_.value() * cutoff_);
    if (grid.extent() < needed)
        throw ConfigError("to_grid: grid extent " +
                          std::to_string(grid.extent()) +
                          " does not resolve cutoff (need >= " +
                          std::to_string(needed) + ")");
    ComplexVector psi = ComplexVector::Zero(grid.n_points());
    for (int n = 0; n < cutoff_; ++n) {
        if (amps_[n] == Complex(0.0))
            continue;
        psi += amps_[n] * hermite_function(n, grid);
    }
    return GridState(grid, 1, std::move(psi), warnings_);
}

nlohmann::json FockState::to_json() const {
    nlohmann::json amps = nlohmann::json::array();
    for (const auto &a : amps_)
        amps.push_back({a.real(), a.imag()});
    return {{"cutoff", cutoff_},
            {"modes", modes_},
            {"hbar", hbar_.value()},
            {"amplitudes", std::move(amps)}};
}

} // namespace cvsim
