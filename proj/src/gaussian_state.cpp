#include "cvsim/gaussian_state.hpp"

#include <cmath>
#include <tuple>

#include <Eigen/Eigenvalues>

namespace cvsim {

namespace {

RealMatrix embed_block(int modes, int mode, const Eigen::Matrix2d &block) {
    RealMatrix s = RealMatrix::Identity(2 * modes, 2 * modes);
    s.block<2, 2>(2 * mode, 2 * mode) = block;
    return s;
}

} // namespace

RealMatrix GaussianState::symplectic_form(int modes) {
    RealMatrix omega = RealMatrix::Zero(2 * modes, 2 * modes);
    for (int m = 0; m < modes; ++m) {
        omega(2 * m, 2 * m + 1) = 1.0;
        omega(2 * m + 1, 2 * m) = -1.0;
    }
    return omega;
}

SymplecticGate SymplecticGate::rotation(int modes, int mode, double theta) {
    Eigen::Matrix2d r;
    r << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
    return {embed_block(modes, mode, r), RealVector::Zero(2 * modes)};
}

SymplecticGate SymplecticGate::squeeze(int modes, int mode, double r,
                                       double phi) {
    const double ch = std::cosh(r), sh = std::sinh(r);
    Eigen::Matrix2d s;
    s << ch - sh * std::cos(phi), -sh * std::sin(phi), -sh * std::sin(phi),
        ch + sh * std::cos(phi);
    return {embed_block(modes, mode, s), RealVector::Zero(2 * modes)};
}

SymplecticGate SymplecticGate::mixer(int modes, int mode_a, int mode_b,
                                     double theta, double phi) {
    if (mode_a == mode_b)
        throw ContractError("mixer requires two distinct modes");
    const double c = std::cos(theta), s = std::sin(theta);
    const double cf = std::cos(phi), sf = std::sin(phi);
    RealMatrix m = RealMatrix::Identity(2 * modes, 2 * modes);
    const int a = 2 * mode_a, b = 2 * mode_b;
    // x_a' = c x_a - (cf x_b - sf p_b) s ; p_a' = c p_a - (sf x_b + cf p_b) s
    // x_b' = c x_b + (cf x_a + sf p_a) s ; p_b' = c p_b + (-sf x_a + cf p_a) s
    m(a, a) = c;
    m(a, b) = -cf * s;
    m(a, b + 1) = sf * s;
    m(a + 1, a + 1) = c;
    m(a + 1, b) = -sf * s;
    m(a + 1, b + 1) = -cf * s;
    m(b, b) = c;
    m(b, a) = cf * s;
    m(b, a + 1) = sf * s;
    m(b + 1, b + 1) = c;
    m(b + 1, a) = -sf * s;
    m(b + 1, a + 1) = cf * s;
    return {std::move(m), RealVector::Zero(2 * modes)};
}

SymplecticGate SymplecticGate::displace(int modes, int mode, Complex alpha,
                                            HBar hbar) {
    RealVector d = RealVector::Zero(2 * modes);
    const double scale = std::sqrt(2.0 * hbar.value());
    d[2 * mode] = scale * alpha.real();
    d[2 * mode + 1] = scale * alpha.imag();
    return {RealMatrix::Identity(2 * modes, 2 * modes), std::move(d)};
}

double SymplecticGate::symplectic_defect() const {
    const int modes = int(matrix.rows()) / 2;
    const RealMatrix omega = GaussianState::symplectic_form(modes);
    return (matrix.transpose() * omega * matrix - omega)
        .cwiseAbs()
        .maxCoeff();
}

GaussianState GaussianState::vacuum(int modes, HBar hbar) {
    if (modes < 1)
        throw DomainError("vacuum requires at least one mode");
    return GaussianState(modes, RealVector::Zero(2 * modes),
                         (hbar.value() / 2.0) *
                             RealMatrix::Identity(2 * modes, 2 * modes),
                         hbar, true);
}

GaussianState::GaussianState(RealVector mean, RealMatrix cov, HBar hbar)
    : modes_(int(mean.size()) / 2), mean_(std::move(mean)),
      cov_(std::move(cov)), hbar_(hbar) {
    if (mean_.size() % 2 != 0 || cov_.rows() != mean_.size() ||
        cov_.cols() != mean_.size())
        throw DimensionError("GaussianState: mean/cov shapes inconsistent");
    if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw ContractError("GaussianState: covariance must be symmetric");
    if (physicality_margin() < -1e-9)
        throw ContractError("GaussianState: covariance violates the "
                            "uncertainty bound");
}

GaussianState::GaussianState(int modes, RealVector mean, RealMatrix cov,
                             HBar hbar, bool)
    : modes_(modes), mean_(std::move(mean)), cov_(std::move(cov)),
      hbar_(hbar) {}

void GaussianState::check_mode(int mode) const {
    if (mode < 0 || mode >= modes_)
        throw DomainError("mode index out of range");
}

GaussianState GaussianState::apply(const SymplecticGate &gate) const {
    if (gate.matrix.rows() != 2 * modes_)
        throw DimensionError("gate dimension does not match state");
    RealVector mean = gate.matrix * mean_ + gate.displacement;
    RealMatrix cov = gate.matrix * cov_ * gate.matrix.transpose();
    cov = 0.5 * (cov + cov.transpose()); // control float drift
    return GaussianState(modes_, std::move(mean), std::move(cov), hbar_, true);
}

GaussianState GaussianState::apply_displacement(int mode,
                                                Complex alpha) const {
    check_mode(mode);
    return apply(SymplecticGate::displace(modes_, mode, alpha, hbar_));
}

GaussianState GaussianState::apply_rotation(int mode, double theta) const {
    check_mode(mode);
    return apply(SymplecticGate::rotation(modes_, mode, theta));
}

GaussianState GaussianState::apply_squeeze(int mode, double r,
                                           double phi) const {
    check_mode(mode);
    if (std::abs(r) > 10.0)
        throw DomainError("squeeze parameter |r| must be <= 10");
    return apply(SymplecticGate::squeeze(modes_, mode, r, phi));
}

GaussianState GaussianState::apply_mixer(int mode_a, int mode_b, double theta,
                                         double phi) const {
    check_mode(mode_a);
    check_mode(mode_b);
    return apply(SymplecticGate::mixer(modes_, mode_a, mode_b, theta, phi));
}

std::pair<double, double> GaussianState::marginal_x(int mode) const {
    check_mode(mode);
    return {mean_[2 * mode], cov_(2 * mode, 2 * mode)};
}

HomodyneOutcome GaussianState::homodyne_x(int mode, Rng &rng) const {
    check_mode(mode);
    const auto [mu, var] = marginal_x(mode);
    const double outcome = mu + std::sqrt(var) * rng.normal();
    const int b = 2 * mode; // measured coordinate index
    const int rest = 2 * (modes_ - 1);
    RealVector mean(rest);
    RealMatrix cov(rest, rest);
    RealVector cross(rest);
    int idx = 0;
    for (int i = 0; i < 2 * modes_; ++i) {
        if (i == b || i == b + 1)
            continue;
        mean[idx] = mean_[i];
        cross[idx] = cov_(i, b);
        ++idx;
    }
    int r = 0;
    for (int i = 0; i < 2 * modes_; ++i) {
        if (i == b || i == b + 1)
            continue;
        int c = 0;
        for (int j = 0; j < 2 * modes_; ++j) {
            if (j == b || j == b + 1)
                continue;
            cov(r, c) = cov_(i, j);
            ++c;
        }
        ++r;
    }
    if (rest > 0) {
        mean += cross * ((outcome - mu) / var);
        cov -= (cross * cross.transpose()) / var;
        cov = 0.5 * (cov + cov.transpose());
    }
    return {outcome,
            GaussianState(modes_ - 1, std::move(mean), std::move(cov), hbar_,
                          true)};
}

std::pair<Eigen::Vector2d, Eigen::Matrix2d>
GaussianState::wigner_params(int mode) const {
    check_mode(mode);
    Eigen::Vector2d mu = mean_.segment<2>(2 * mode);
    Eigen::Matrix2d v = cov_.block<2, 2>(2 * mode, 2 * mode);
    if (v.determinant() <= 0.0)
        throw ContractError("reduced covariance is singular");
    return {mu, v};
}

bool GaussianState::is_pure(double rel_tol) const {
    const double target = std::pow(hbar_.value() / 2.0, 2 * modes_);
    return std::abs(purity_determinant() - target) <= rel_tol * target;
}

double GaussianState::physicality_margin() const {
    if (modes_ == 0)
        return 0.0;
    const RealMatrix omega = symplectic_form(modes_);
    ComplexMatrix herm =
        cov_.cast<Complex>() +
        Complex(0.0, hbar_.value() / 2.0) * omega.cast<Complex>();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm);
    return solver.eigenvalues().minCoeff();
}

std::tuple<double, double, double>
GaussianState::uncertainty_product(int mode) const {
    check_mode(mode);
    const double dx = std::sqrt(cov_(2 * mode, 2 * mode));
    const double dp = std::sqrt(cov_(2 * mode + 1, 2 * mode + 1));
    return {dx, dp, dx * dp};
}

nlohmann::json GaussianState::to_json() const {
    nlohmann::json mean = nlohmann::json::array();
    for (int i = 0; i < mean_.size(); ++i)
        mean.push_back(mean_[i]);
    nlohmann::json cov = nlohmann::json::array();
    for (int i = 0; i < cov_.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < cov_.cols(); ++j)
            row.push_back(cov_(i, j));
        cov.push_back(std::move(row));
    }
    return {{"modes", modes_},
            {"hbar", hbar_.value()},
            {"mean", std::move(mean)},
            {"cov", std::move(cov)}};
}

} // namespace cvsim
