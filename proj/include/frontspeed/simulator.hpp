#ifndef FRONTSPEED_SIMULATOR_HPP
#define FRONTSPEED_SIMULATOR_HPP

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "frontspeed/fields.hpp"
#include "frontspeed/grids.hpp"
#include "frontspeed/reactions.hpp"

namespace frontspeed {

enum class InitialKind { Step, ExpDecay, Bump };

/// Front-like initial data along the channel axis (uniform transversally).
///   Step:     1 behind x0, 0 ahead, mollified over two grid cells
///   ExpDecay: min(1, e^{-lambda0 (x - x0)})
///   Bump:     smooth compactly supported plateau of height (1+m)/2 > m
///             on [a1, a2], ramps one unit wide
struct InitialData {
    InitialKind kind = InitialKind::Step;
    double x0 = 20;
    double lambda0 = 1;
    double a1 = 30, a2 = 50;
    double m = 0.5;
};

struct FrontSample {
    double t = 0;
    double x_right = 0;
    double x_left = 0;  // NaN when the left edge is not tracked
    double u_min = 0;
    double u_max = 0;
};

struct SpeedFit {
    double c = 0;
    double stderr_c = 0;
    double drift = 0;  // |slope(second half) - slope(first half)| of the window
    int samples = 0;
    double t_min = 0, t_max = 0;
};

struct FrontTrace {
    std::vector<FrontSample> samples;
    bool tracks_left = false;
    SpeedFit fit;       // trailing-window fit of the right edge
    SpeedFit fit_left;  // left edge, Bump runs only
    double u_min = 1;   // extremes over the whole run, before clamping
    double u_max = 0;
};

struct EvolveOptions {
    double t_end = 30;
    double sample_every = 0.25;
    double level = 0.5;
    bool track_left = false;
    /// Shift the window by whole periods once the front passes 70% of L.
    /// Shifting truncates what lies ahead of the window, so keep it off for
    /// ExpDecay data whose far tail carries the speed; use a longer channel.
    bool allow_shift = true;
    double c_estimate = 0;  // extra speed margin for the advective CFL bound
};

struct EvolveResult {
    FrontTrace trace;
    Eigen::ArrayXXd final_state;  // current window, axis-major
    double window_offset = 0;     // absolute coordinate of local node 0
};

Eigen::ArrayXXd make_initial(const InitialData& data, const ChannelGrid& channel);

/// Explicit second-order evolution of u_t = Laplace u + b . grad u + f(u)
/// (central diffusion, upwind-biased advection, Heun in time) with front
/// sampling every sample_every time units and a discrete maximum-principle
/// monitor.
EvolveResult evolve(const Eigen::ArrayXXd& u0, const FieldSpec& field,
                    const ReactionSpec& reaction, const ChannelGrid& channel,
                    const EvolveOptions& opts);

/// Largest axis position where the transverse average crosses `level`,
/// refined by linear interpolation.  Throws FrontAbsentError without a
/// crossing.
double front_position(const Eigen::ArrayXXd& state, const ChannelGrid& channel,
                      double level = 0.5);

/// Ordinary least-squares speed of the right edge over [t_min, t_max]
/// (>= 10 samples required).
SpeedFit estimate_speed(const FrontTrace& trace, double t_min, double t_max);

/// (c_left, c_right) edge speeds of a Bump run from the trace's trailing
/// fits; the caller is responsible for running long enough that the edges
/// sample the asymptotic regime.
std::pair<double, double> spreading_interval(const FrontTrace& trace);

/// Measured right-front speed for each initial decay rate lambda0.
std::vector<std::pair<double, double>> decay_speed_sweep(const FieldSpec& field,
                                                         const ReactionSpec& reaction,
                                                         const std::vector<double>& lambda0s,
                                                         double x0, const ChannelGrid& channel,
                                                         const EvolveOptions& opts);

}  // namespace frontspeed

#endif
