#pragma once

#include <utility>
#include <vector>

#include "cvsim/grid_state.hpp"
#include "cvsim/numerics.hpp"

namespace cvsim {

/// Truncated ladder operators on |0> ... |D-1>. a has sqrt(n) on the
/// superdiagonal; [a, a^dag] = I exactly on the top-left (D-1) block.
struct LadderOps {
    ComplexMatrix a;
    ComplexMatrix a_dag;
    ComplexMatrix n_op;
};

LadderOps ladder_ops(int cutoff);

/// x = sqrt(hbar/2)(a + a^dag), p = -i sqrt(hbar/2)(a - a^dag).
std::pair<ComplexMatrix, ComplexMatrix> quadrature_ops(int cutoff, HBar hbar);

/// H = p^2/2 + x^2/2; diagonal hbar(n + 1/2) except the truncated top level.
ComplexMatrix fock_hamiltonian(int cutoff, HBar hbar);

/// exp(-i theta N): diagonal phases, built directly.
ComplexMatrix phase_gate(double theta, int cutoff);
/// exp(alpha a^dag - conj(alpha) a). Guard: |alpha| <= sqrt(cutoff)/3.
ComplexMatrix displacement_gate(Complex alpha, int cutoff);
/// exp((conj(zeta) a^2 - zeta a^dag^2)/2). Guard: |zeta| <= 2.
ComplexMatrix squeeze_gate(Complex zeta, int cutoff);
/// exp(theta (e^{-i phi} a1 a2^dag - e^{i phi} a1^dag a2)) on the tensored
/// space (D^2 x D^2, guard D^2 <= 4096). Conserves total photon number.
ComplexMatrix mixer_matrix(double theta, double phi, int cutoff);

/// State in the truncated number basis, amplitudes over D^m levels
/// (row-major, mode 0 slowest). Gate application monitors population of
/// the top level: above 1e-6 a truncation warning is recorded on the
/// returned state, above 1e-3 the gate throws.
class FockState {
  public:
    FockState(int modes, int cutoff, ComplexVector amplitudes, HBar hbar,
              std::vector<std::string> warnings = {});

    static FockState vacuum(int modes, int cutoff, HBar hbar);
    static FockState basis(int modes, int cutoff, HBar hbar,
                           const std::vector<int> &levels);
    /// Coherent state c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!).
    /// Guard: |alpha|^2 < cutoff/4.
    static FockState coherent(Complex alpha, int cutoff, HBar hbar);

    int modes() const { return modes_; }
    int cutoff() const { return cutoff_; }
    HBar hbar() const { return hbar_; }
    const ComplexVector &amplitudes() const { return amps_; }
    const std::vector<std::string> &warnings() const { return warnings_; }

    FockState apply_single(const ComplexMatrix &u, int mode) const;
    FockState apply_two(const ComplexMatrix &u) const;

    /// Probability mass on level D-1 of one mode.
    double top_level_population(int mode) const;

    double expectation(const ComplexMatrix &op) const; // single mode only
    double mean_photon_number() const;

    /// Hermite synthesis psi(x) = sum c_n psi_n(x). Requires a grid that
    /// resolves the cutoff (L >= 2 sqrt(2 hbar D)) with matching hbar.
    GridState to_grid(const Grid &grid) const;

    nlohmann::json to_json() const;

  private:
    int modes_;
    int cutoff_;
    ComplexVector amps_;
    HBar hbar_;
    std::vector<std::string> warnings_;
};

} // namespace cvsim
