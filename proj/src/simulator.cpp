#include "frontspeed/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace frontspeed {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double smoothstep5(double w) {
    w = std::clamp(w, 0.0, 1.0);
    return w * w * w * (w * (6 * w - 15) + 10);
}

// Transverse mean of the state (identity in 1-D).
Eigen::ArrayXd axis_mean(const Eigen::ArrayXXd& u) { return u.rowwise().mean(); }

struct OlsFit {
    double slope = 0, stderr_slope = 0;
    int n = 0;
};

OlsFit ols(const std::vector<double>& t, const std::vector<double>& x) {
    OlsFit f;
    f.n = static_cast<int>(t.size());
    if (f.n < 2) return f;
    double tm = 0, xm = 0;
    for (int i = 0; i < f.n; ++i) {
        tm += t[i];
        xm += x[i];
    }
    tm /= f.n;
    xm /= f.n;
    double sxx = 0, sxy = 0;
    for (int i = 0; i < f.n; ++i) {
        sxx += (t[i] - tm) * (t[i] - tm);
        sxy += (t[i] - tm) * (x[i] - xm);
    }
    f.slope = sxy / sxx;
    double rss = 0;
    for (int i = 0; i < f.n; ++i) {
        const double e = x[i] - xm - f.slope * (t[i] - tm);
        rss += e * e;
    }
    f.stderr_slope = f.n > 2 ? std::sqrt(rss / (f.n - 2) / sxx) : 0;
    return f;
}

SpeedFit fit_series(const std::vector<double>& ts, const std::vector<double>& xs) {
    SpeedFit fit;
    fit.samples = static_cast<int>(ts.size());
    if (fit.samples < 2) return fit;
    const OlsFit whole = ols(ts, xs);
    fit.c = whole.slope;
    fit.stderr_c = whole.stderr_slope;
    fit.t_min = ts.front();
    fit.t_max = ts.back();
    const int half = fit.samples / 2;
    if (half >= 5) {
        const OlsFit a = ols({ts.begin(), ts.begin() + half}, {xs.begin(), xs.begin() + half});
        const OlsFit b = ols({ts.begin() + half, ts.end()}, {xs.begin() + half, xs.end()});
        fit.drift = std::abs(b.slope - a.slope);
    }
    return fit;
}

}  // namespace

Eigen::ArrayXXd make_initial(const InitialData& data, const ChannelGrid& channel) {
    channel.validate();
    const int m = channel.axis_points();
    const int ny = channel.transverse_points();
    const double h = channel.h();
    const double L = channel.length;

    auto profile = [&](double x) -> double {
        switch (data.kind) {
            case InitialKind::Step:
                // mollified over two grid cells around x0
                return 1.0 - smoothstep5((x - (data.x0 - h)) / (2 * h));
            case InitialKind::ExpDecay:
                return std::min(1.0, std::exp(-data.lambda0 * (x - data.x0)));
            case InitialKind::Bump: {
                const double height = 0.5 * (1 + data.m);
                return height * smoothstep5(x - (data.a1 - 1)) * smoothstep5((data.a2 + 1) - x);
            }
        }
        return 0;
    };

    switch (data.kind) {
        case InitialKind::Step:
        case InitialKind::ExpDecay:
            if (!(data.x0 > 0 && data.x0 < L))
                throw GeometryError("make_initial: x0 outside the channel");
            if (data.kind == InitialKind::ExpDecay && !(data.lambda0 > 0))
                throw ParameterError("make_initial: lambda0 must be positive");
            break;
        case InitialKind::Bump:
            if (!(data.a1 < data.a2) || data.a1 - 1 < 0 || data.a2 + 1 > L)
                throw GeometryError("make_initial: bump support outside the channel");
            if (!(data.m > 0 && data.m < 1))
                throw ParameterError("make_initial: bump level m must lie in (0,1)");
            break;
    }

    Eigen::ArrayXXd u0(m, ny);
    for (int i = 0; i < m; ++i) {
        const double v = std::clamp(profile(i * h), 0.0, 1.0);
        for (int j = 0; j < ny; ++j) u0(i, j) = v;
    }
    return u0;
}

double front_position(const Eigen::ArrayXXd& state, const ChannelGrid& channel, double level) {
    const Eigen::ArrayXd ub = axis_mean(state);
    const double h = channel.h();
    const int m = static_cast<int>(ub.size());
    for (int i = m - 1; i >= 0; --i) {
        if (ub[i] >= level) {
            if (i == m - 1) return (m - 1) * h;
            return i * h + h * (ub[i] - level) / (ub[i] - ub[i + 1]);
        }
    }
    throw FrontAbsentError("front_position: transverse average never reaches the level");
}

namespace {

double left_crossing(const Eigen::ArrayXd& ub, double h, double level) {
    const int m = static_cast<int>(ub.size());
    for (int i = 0; i < m; ++i) {
        if (ub[i] >= level) {
            if (i == 0) return 0.0;
            return (i - 1) * h + h * (level - ub[i - 1]) / (ub[i] - ub[i - 1]);
        }
    }
    throw FrontAbsentError("front_position: transverse average never reaches the level");
}

class ChannelStepper {
public:
    ChannelStepper(const FieldSpec& field, const ReactionSpec& reaction,
                   const ChannelGrid& channel)
        : field_(field),
          reaction_(reaction),
          m_(channel.axis_points()),
          ny_(channel.transverse_points()),
          h_(channel.h()),
          dim_(channel.dim),
          kpp_rate_(reaction.kind == ReactionKind::KppQuadratic ? reaction.rate : -1) {
        if (dim_ == 1 && field.kind != FieldKind::Zero)
            throw ParameterError("evolve: only the zero field is admissible in 1-D");
        advective_ = field.kind != FieldKind::Zero;
        if (advective_) sample_channel(0.0, b1_, b2_);
        k1_.resize(m_, ny_);
        k2_.resize(m_, ny_);
        ut_.resize(m_, ny_);
    }

    // Samples b on channel nodes at time t; only the temporal factor changes
    // for the parametric variants, so the pattern is cached.
    void sample_channel(double t, Eigen::ArrayXXd& b1, Eigen::ArrayXXd& b2) {
        b1.resize(m_, ny_);
        b2.resize(m_, ny_);
        for (int j = 0; j < ny_; ++j)
            for (int i = 0; i < m_; ++i) {
                const Eigen::Vector2d b = evaluate(field_, {i * h_, j * h_}, t);
                b1(i, j) = b[0];
                b2(i, j) = b[1];
            }
    }

    double temporal_factor(double t) const {
        if (!field_.time_dependent()) return 1.0;
        if (field_.kind == FieldKind::Tabulated) return 1.0;  // handled by resampling
        return 1.0 + field_.eps_t * std::sin(kTwoPi * field_.mt * t);
    }

    void rhs(const Eigen::ArrayXXd& u, double t, Eigen::ArrayXXd& out) {
        const double ih2 = 1.0 / (h_ * h_);
        const double ih = 1.0 / h_;
        const bool tab_td = field_.kind == FieldKind::Tabulated && field_.time_dependent();
        if (tab_td) sample_channel(t, b1_, b2_);
        const double g = temporal_factor(t);

        auto mirror = [this](int i) { return i < 0 ? -i : (i >= m_ ? 2 * (m_ - 1) - i : i); };
        for (int j = 0; j < ny_; ++j) {
            const int jm = (j + ny_ - 1) % ny_, jp = (j + 1) % ny_;
            const int jm2 = (j + ny_ - 2) % ny_, jp2 = (j + 2) % ny_;
            for (int i = 0; i < m_; ++i) {
                const int im = mirror(i - 1), ip = mirror(i + 1);
                double lap = (u(im, j) + u(ip, j) - 2 * u(i, j)) * ih2;
                if (dim_ == 2) lap += (u(i, jm) + u(i, jp) - 2 * u(i, j)) * ih2;

                double adv = 0;
                if (advective_) {
                    const double a1 = g * b1_(i, j);
                    if (a1 > 0) {
                        const int ip2 = mirror(i + 2);
                        adv += a1 * (-3 * u(i, j) + 4 * u(ip, j) - u(ip2, j)) * (0.5 * ih);
                    } else if (a1 < 0) {
                        const int im2 = mirror(i - 2);
                        adv += a1 * (3 * u(i, j) - 4 * u(im, j) + u(im2, j)) * (0.5 * ih);
                    }
                    const double a2 = g * b2_(i, j);
                    if (a2 > 0) {
                        adv += a2 * (-3 * u(i, j) + 4 * u(i, jp) - u(i, jp2)) * (0.5 * ih);
                    } else if (a2 < 0) {
                        adv += a2 * (3 * u(i, j) - 4 * u(i, jm) + u(i, jm2)) * (0.5 * ih);
                    }
                }

                const double uu = u(i, j);
                const double f = kpp_rate_ >= 0 ? kpp_rate_ * std::clamp(uu, 0.0, 1.0) *
                                                      (1 - std::clamp(uu, 0.0, 1.0))
                                                : f_eval(reaction_, uu);
                out(i, j) = lap + adv + f;
            }
        }
    }

    // One Heun step; returns (min, max) of the new state before clamping.
    std::pair<double, double> step(Eigen::ArrayXXd& u, double t, double dt) {
        rhs(u, t, k1_);
        ut_ = u + dt * k1_;
        rhs(ut_, t + dt, k2_);
        u += (0.5 * dt) * (k1_ + k2_);
        const double mn = u.minCoeff(), mx = u.maxCoeff();
        if (!(mn >= -1e-6 && mx <= 1 + 1e-6)) {
            std::ostringstream os;
            os << "evolve: maximum principle violated at t = " << t + dt << " (range [" << mn
               << ", " << mx << "]); suggested dt = " << dt / 2;
            throw StepSizeError(os.str(), dt / 2);
        }
        u = u.max(-1e-12).min(1 + 1e-12);
        return {mn, mx};
    }

    int m() const { return m_; }
    int ny() const { return ny_; }

private:
    FieldSpec field_;
    ReactionSpec reaction_;
    int m_, ny_;
    double h_;
    int dim_;
    double kpp_rate_;
    bool advective_ = false;
    Eigen::ArrayXXd b1_, b2_, k1_, k2_, ut_;
};

double lipschitz_estimate(const ReactionSpec& reaction) {
    double lf = 0;
    const double d = 5e-4;
    for (int i = 0; i <= 2000; ++i) {
        const double u = i / 2000.0;
        const double fp = (f_eval(reaction, std::min(1.0, u + d)) -
                           f_eval(reaction, std::max(0.0, u - d))) /
                          (std::min(1.0, u + d) - std::max(0.0, u - d));
        lf = std::max(lf, std::abs(fp));
    }
    return lf;
}

}  // namespace

EvolveResult evolve(const Eigen::ArrayXXd& u0, const FieldSpec& field,
                    const ReactionSpec& reaction, const ChannelGrid& channel,
                    const EvolveOptions& opts) {
    channel.validate();
    ChannelStepper stepper(field, reaction, channel);
    if (u0.rows() != stepper.m() || u0.cols() != stepper.ny())
        throw ShapeError("evolve: u0 shape does not match the channel grid");

    const double h = channel.h();
    const double L = channel.length;
    const int ppu = channel.points_per_unit;

    // Stability bound: diffusion, advection + front transport, reaction.
    double dt = channel.dt;
    if (dt <= 0) {
        const double r = reaction.fprime0();
        const double c_est =
            opts.c_estimate > 0 ? opts.c_estimate : 2 * std::sqrt(std::max(r, 0.25));
        const double lf = lipschitz_estimate(reaction);
        dt = 0.8 * std::min({h * h / (2.0 * channel.dim), h / (field.sup_norm() + c_est),
                             0.5 / std::max(lf, 1e-9)});
    }
    const int steps_per_sample = std::max(1, static_cast<int>(std::ceil(opts.sample_every / dt)));
    dt = opts.sample_every / steps_per_sample;
    const int total_samples = static_cast<int>(std::floor(opts.t_end / opts.sample_every + 1e-9));

    const bool shifting = opts.allow_shift && !opts.track_left;
    Eigen::ArrayXXd u = u0;
    EvolveResult out;
    out.trace.tracks_left = opts.track_left;
    double offset = 0;

    auto take_sample = [&](double t, int index) {
        const Eigen::ArrayXd ub = axis_mean(u);
        FrontSample s;
        s.t = t;
        const double xr = [&] {
            const int m = static_cast<int>(ub.size());
            for (int i = m - 1; i >= 0; --i)
                if (ub[i] >= opts.level) {
                    if (i == m - 1) return (m - 1) * h;
                    return i * h + h * (ub[i] - opts.level) / (ub[i] - ub[i + 1]);
                }
            throw FrontAbsentError("evolve: front absent at t = " + std::to_string(t));
        }();
        s.x_right = offset + xr;
        s.x_left = std::numeric_limits<double>::quiet_NaN();
        if (opts.track_left) {
            const double xl = left_crossing(ub, h, opts.level);
            s.x_left = offset + xl;
            if (xl < 10.0) {
                std::ostringstream os;
                os << "evolve: left edge entered the end buffer at t = " << t << " (sample "
                   << index << ")";
                throw GeometryError(os.str());
            }
        }
        s.u_min = u.minCoeff();
        s.u_max = u.maxCoeff();
        out.trace.u_min = std::min(out.trace.u_min, s.u_min);
        out.trace.u_max = std::max(out.trace.u_max, s.u_max);
        out.trace.samples.push_back(s);

        if (xr > L - 10.0) {
            if (!shifting) {
                std::ostringstream os;
                os << "evolve: front entered the end buffer at t = " << t << " (sample " << index
                   << ", position " << s.x_right << ")";
                throw GeometryError(os.str());
            }
        }
        if (shifting && xr > 0.7 * L) {
            const int units = static_cast<int>(std::floor(xr - 0.5 * L));
            if (units >= 1) {
                const int nodes = units * ppu;
                if (u.topRows(nodes).minCoeff() < 0.99) {
                    std::ostringstream os;
                    os << "evolve: window shift at t = " << t
                       << " would discard non-plateau data; enlarge the channel";
                    throw GeometryError(os.str());
                }
                const int m = static_cast<int>(u.rows());
                u.topRows(m - nodes) = u.bottomRows(m - nodes).eval();
                u.bottomRows(nodes).setZero();
                offset += units;
            }
        }
    };

    take_sample(0.0, 0);
    double t = 0;
    for (int k = 1; k <= total_samples; ++k) {
        for (int s = 0; s < steps_per_sample; ++s) {
            const auto [mn, mx] = stepper.step(u, t, dt);
            out.trace.u_min = std::min(out.trace.u_min, mn);
            out.trace.u_max = std::max(out.trace.u_max, mx);
            t += dt;
        }
        t = k * opts.sample_every;  // keep samples on exact multiples
        take_sample(t, k);
    }

    // Trailing-window fit, aligned to whole time periods.
    const double t_hi = std::floor(opts.t_end + 1e-9);
    const double t_lo = std::ceil(opts.t_end / 2 - 1e-9);
    std::vector<double> ts, xr, xl;
    for (const auto& s : out.trace.samples)
        if (s.t >= t_lo - 1e-9 && s.t <= t_hi + 1e-9) {
            ts.push_back(s.t);
            xr.push_back(s.x_right);
            if (opts.track_left) xl.push_back(s.x_left);
        }
    if (ts.size() >= 10) {
        out.trace.fit = fit_series(ts, xr);
        if (opts.track_left) out.trace.fit_left = fit_series(ts, xl);
    }

    out.final_state = std::move(u);
    out.window_offset = offset;
    return out;
}

SpeedFit estimate_speed(const FrontTrace& trace, double t_min, double t_max) {
    std::vector<double> ts, xs;
    for (const auto& s : trace.samples)
        if (s.t >= t_min - 1e-9 && s.t <= t_max + 1e-9) {
            ts.push_back(s.t);
            xs.push_back(s.x_right);
        }
    if (ts.size() < 10)
        throw InsufficientDataError("estimate_speed: fewer than 10 samples in the window");
    return fit_series(ts, xs);
}

std::pair<double, double> spreading_interval(const FrontTrace& trace) {
    if (!trace.tracks_left)
        throw ParameterError("spreading_interval: trace has no left-edge series");
    if (trace.fit.samples < 10 || trace.fit_left.samples < 10)
        throw InsufficientDataError("spreading_interval: not enough fitted samples");
    return {-trace.fit_left.c, trace.fit.c};
}

std::vector<std::pair<double, double>> decay_speed_sweep(const FieldSpec& field,
                                                         const ReactionSpec& reaction,
                                                         const std::vector<double>& lambda0s,
                                                         double x0, const ChannelGrid& channel,
                                                         const EvolveOptions& opts) {
    std::vector<std::pair<double, double>> table;
    for (const double lam0 : lambda0s) {
        if (!(lam0 > 0))
            throw ParameterError("decay_speed_sweep: lambda0 values must be positive");
        InitialData data;
        data.kind = InitialKind::ExpDecay;
        data.x0 = x0;
        data.lambda0 = lam0;
        const EvolveResult res = evolve(make_initial(data, channel), field, reaction, channel, opts);
        table.emplace_back(lam0, res.trace.fit.c);
    }
    return table;
}

}  // namespace frontspeed
