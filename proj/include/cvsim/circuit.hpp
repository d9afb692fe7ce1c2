#pragma once

#include <string>
#include <vector>

#include "cvsim/common.hpp"

namespace cvsim {

enum class GateKind {
    Vacuum,   // preparation: ground state
    Squeezed, // preparation: squeezed vacuum, params (r [, phi])
    Coherent, // preparation: coherent state, params (re [, im])
    Xgate,    // displacement (dx = v, dp = 0)
    Zgate,    // displacement (dx = 0, dp = v)
    Dgate,    // 1 param: complex alpha (real); 2 params: (dx, dp)
    Sgate,    // squeeze, params (r [, phi])
    Rgate,    // rotation, param theta
    Fourier,  // quarter rotation (Rgate(pi/2))
    BSgate,   // two-mode mixer, params (theta [, phi])
    Invert,   // 2 P - 1 about a window, params (x0, width); grid only
    MeasureX, // x-quadrature measurement
};

const char *gate_name(GateKind kind);

struct GateOp {
    GateKind kind;
    std::vector<int> targets;
    std::vector<double> params;
    int line = 0; // source line for diagnostics (0 when synthetic)

    friend bool operator==(const GateOp &a, const GateOp &b) {
        return a.kind == b.kind && a.targets == b.targets &&
               a.params == b.params;
    }
};

bool is_preparation(GateKind kind);

/// Ordered gate program over named modes. Invariants (checked by
/// validate): targets in range, at most one MeasureX per mode, preparations
/// precede gates on the same mode.
struct Circuit {
    int mode_count = 0;
    std::vector<GateOp> ops;

    void validate() const;

    friend bool operator==(const Circuit &a, const Circuit &b) {
        return a.mode_count == b.mode_count && a.ops == b.ops;
    }
};

/// Grammar:
///   modes N
///   Name(arg, ...) | q[i][, q[j]]
///   Name | q[i]            (zero-argument form)
/// with '#' comments and arguments drawn from
///   [-] (pi | decimal) [/ decimal].
/// DisplacedSqueezed(a, phi_a, r, phi_r) desugars to Dgate + Sgate.
/// Throws ParseError with line/column on malformed input.
Circuit parse_circuit(const std::string &source);

/// Canonical text form; parse(print(c)) == c.
std::string print_circuit(const Circuit &circuit);

/// Which backends can execute a circuit: gaussian excludes Invert; the
/// grid backend is capped at 2 modes, Rgate angles in {+-pi/2, pi}, no
/// BSgate, and axis-aligned Squeezed preparations; fock is capped at 2
/// modes and excludes Invert.
struct BackendClass {
    bool gaussian_compatible = false;
    bool grid_compatible = false;
    bool fock_compatible = false;
};

BackendClass classify(const Circuit &circuit);

} // namespace cvsim
