#ifndef FRONTSPEED_GRIDS_HPP
#define FRONTSPEED_GRIDS_HPP

#include "frontspeed/errors.hpp"

namespace frontspeed {

/// Uniform discretization of the unit periodicity cell Q x [0,1).
/// Space has nx points per direction (power of two, for the FFT),
/// time has nt steps per period; the period is fixed at 1.
struct CellGrid {
    int dim = 2;   // 1 or 2
    int nx = 64;   // points per spatial direction
    int nt = 512;  // time steps per period

    double h() const { return 1.0 / nx; }
    double dt() const { return 1.0 / nt; }

    void validate() const {
        if (dim != 1 && dim != 2) throw ParameterError("CellGrid: dim must be 1 or 2");
        if (nx < 8) throw ParameterError("CellGrid: nx must be >= 8");
        if ((nx & (nx - 1)) != 0) throw ParameterError("CellGrid: nx must be a power of two");
        if (nt < 16) throw ParameterError("CellGrid: nt must be >= 16");
    }
};

/// Finite channel [0, L] along the propagation axis, with homogeneous
/// Neumann ends.  In 2-D the transverse direction is one period wide and
/// periodic.  L is a whole number of spatial periods so the window can be
/// shifted by whole periods without breaking the advection field.
struct ChannelGrid {
    double length = 80;        // L, multiple of 1
    int points_per_unit = 16;  // grid points per unit length
    int dim = 2;               // 1 or 2
    double dt = 0;             // 0 = choose automatically from the stability bound

    double h() const { return 1.0 / points_per_unit; }
    int axis_points() const { return static_cast<int>(length * points_per_unit + 0.5) + 1; }
    int transverse_points() const { return dim == 2 ? points_per_unit : 1; }

    void validate() const {
        if (dim != 1 && dim != 2) throw ParameterError("ChannelGrid: dim must be 1 or 2");
        if (length < 2) throw ParameterError("ChannelGrid: length must be >= 2");
        double nearest = static_cast<int>(length + 0.5);
        if (length <= 0 || nearest != length)
            throw ParameterError("ChannelGrid: length must be a whole number of periods");
        if (points_per_unit < 4) throw ParameterError("ChannelGrid: points_per_unit must be >= 4");
    }
};

}  // namespace frontspeed

#endif
