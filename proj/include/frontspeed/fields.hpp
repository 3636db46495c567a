#ifndef FRONTSPEED_FIELDS_HPP
#define FRONTSPEED_FIELDS_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "frontspeed/grids.hpp"

namespace frontspeed {

enum class FieldKind { Zero, Shear, Cellular, Tabulated };

/// Space-time periodic, divergence-free, mean-zero advection field b(x,t).
///
/// The parametric variants are built from a stream function, so they are
/// solenoidal by construction:
///   Shear:    b = (A sin(2 pi m2 x2) g(t), 0)
///   Cellular: psi = (A / 2 pi) sin(2 pi m1 x1) sin(2 pi m2 x2) g(t),
///             b = (d psi / d x2, -d psi / d x1)
/// with temporal factor g(t) = 1 + eps_t sin(2 pi m_t t).  Integer spatial
/// and temporal frequencies keep the period exactly 1 in every coordinate.
///
/// Tabulated holds samples on a uniform periodic lattice and interpolates
/// multilinearly; the validation operations exist because interpolation can
/// break the exact constraints.
struct FieldSpec {
    FieldKind kind = FieldKind::Zero;
    double amplitude = 0;  // A
    int m1 = 1;            // cycles per unit cell, first coordinate
    int m2 = 1;            // cycles per unit cell, second coordinate
    double eps_t = 0;      // temporal modulation depth in [0,1]
    int mt = 1;            // cycles per unit time period

    // Tabulated lattice: value (i,j,n) at x1=i/tab_n1, x2=j/tab_n2, t=n/tab_nt,
    // flattened as i + tab_n1*(j + tab_n2*n).
    int tab_n1 = 0, tab_n2 = 0, tab_nt = 0;
    std::vector<double> tab_b1, tab_b2;

    static FieldSpec zero();
    static FieldSpec shear(double amplitude, int m2 = 1, double eps_t = 0, int mt = 1);
    static FieldSpec cellular(double amplitude, int m1 = 1, int m2 = 1, double eps_t = 0,
                              int mt = 1);
    static FieldSpec tabulated(int n1, int n2, int nt, std::vector<double> b1,
                               std::vector<double> b2);

    bool time_dependent() const {
        if (kind == FieldKind::Tabulated) return tab_nt > 1;
        return kind != FieldKind::Zero && eps_t != 0;
    }
    /// Crude sup-norm bound, used in CFL-type step bounds.
    double sup_norm() const;
    void validate() const;
};

/// b(x,t) with periodic extension in every coordinate.
Eigen::Vector2d evaluate(const FieldSpec& spec, const Eigen::Vector2d& x, double t);

/// Fills nx-by-nx node samples of both components at time t.
void sample_field(const FieldSpec& spec, int nx, double t, Eigen::ArrayXXd& b1,
                  Eigen::ArrayXXd& b2);

/// Max over grid nodes and time samples of the spectral estimate of div b.
/// Stream-function variants sit at roundoff level on any grid.
double divergence_residual(const FieldSpec& spec, const CellGrid& grid);

/// Componentwise |space-time average| on the grid (trapezoid = plain mean
/// on a periodic uniform grid).
Eigen::Vector2d mean_residual(const FieldSpec& spec, const CellGrid& grid);

/// Loads a Tabulated field from CSV rows (x1, x2, t, b1, b2) on a uniform
/// lattice; throws ShapeError when the rows do not tile a complete lattice.
FieldSpec load_field_csv(const std::string& path);

}  // namespace frontspeed

#endif
