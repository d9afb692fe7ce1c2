#pragma once

#include <string>

#include "cvsim/gaussian_state.hpp"
#include "cvsim/grid_state.hpp"

namespace cvsim {

/// Wigner function samples: values(i, j) = W(x_axis[j], p_axis[i]).
/// Well-contained states integrate to 1 and never dip below -1/(pi hbar).
struct WignerGrid {
    RealVector x_axis;
    RealVector p_axis;
    RealMatrix values; // rows indexed by p, columns by x
    HBar hbar;
};

/// Evaluates W(x,p) = 1/(pi hbar) int psi*(x+y) psi(x-y) e^{2ipy/hbar} dy
/// for a single-mode grid state. The y integral runs over the whole-bin
/// lattice (two spectrally shifted copies of psi), which makes the p
/// marginal exact on the conjugate axis from wigner_natural_p_axis.
WignerGrid wigner_from_grid(const GridState &state, const RealVector &x_axis,
                            const RealVector &p_axis);

/// Closed-form Gaussian Wigner function
/// W(r) = exp(-1/2 (r-mu)^T V^{-1} (r-mu)) / (2 pi sqrt(det V)).
WignerGrid wigner_from_gaussian(const GaussianState &state, int mode,
                                const RealVector &x_axis,
                                const RealVector &p_axis);

/// Riemann sum of the Wigner values times dx dp (axes must be uniform).
double normalization_check(const WignerGrid &w);

enum class WignerFormat { Csv, Json };
/// CSV: header "x,p,w", row-major over p then x, 17 significant digits.
/// JSON: {x_axis, p_axis, values}.
void export_wigner(const WignerGrid &w, WignerFormat format,
                   const std::string &path);

/// Grayscale heatmap (binary PGM, linear map from [min, max]).
void export_pgm(const WignerGrid &w, const std::string &path);

/// Uniform axis of `count` points covering [lo, hi] inclusive.
RealVector linspace(double lo, double hi, int count);

/// Default plot window: [-5 sqrt(hbar/2), 5 sqrt(hbar/2)], 200 points.
RealVector default_axis(HBar hbar, int count = 200);

/// The p axis on which the grid-state Wigner transform has exact discrete
/// marginals: spacing pi*hbar/(n dx), n centered points.
RealVector wigner_natural_p_axis(const Grid &grid);

} // namespace cvsim
