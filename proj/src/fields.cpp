#include "frontspeed/fields.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "frontspeed/spectral.hpp"

namespace frontspeed {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double temporal_factor(const FieldSpec& s, double t) {
    return 1.0 + s.eps_t * std::sin(kTwoPi * s.mt * t);
}

double wrap01(double x) { return x - std::floor(x); }

// Periodic multilinear interpolation on the tabulated lattice.
double interp_tab(const std::vector<double>& v, int n1, int n2, int nt, double x1, double x2,
                  double t) {
    const double u = wrap01(x1) * n1, w = wrap01(x2) * n2, s = wrap01(t) * nt;
    const int i0 = static_cast<int>(u), j0 = static_cast<int>(w), n0 = static_cast<int>(s);
    const double fu = u - i0, fw = w - j0, fsv = s - n0;
    const int i1 = (i0 + 1) % n1, j1 = (j0 + 1) % n2, nn1 = (n0 + 1) % nt;
    auto at = [&](int i, int j, int n) { return v[i + static_cast<size_t>(n1) * (j + static_cast<size_t>(n2) * n)]; };
    const double c00 = at(i0, j0, n0) * (1 - fu) + at(i1, j0, n0) * fu;
    const double c10 = at(i0, j1, n0) * (1 - fu) + at(i1, j1, n0) * fu;
    const double c01 = at(i0, j0, nn1) * (1 - fu) + at(i1, j0, nn1) * fu;
    const double c11 = at(i0, j1, nn1) * (1 - fu) + at(i1, j1, nn1) * fu;
    return (c00 * (1 - fw) + c10 * fw) * (1 - fsv) + (c01 * (1 - fw) + c11 * fw) * fsv;
}

}  // namespace

FieldSpec FieldSpec::zero() { return FieldSpec{}; }

FieldSpec FieldSpec::shear(double amplitude, int m2, double eps_t, int mt) {
    FieldSpec s;
    s.kind = FieldKind::Shear;
    s.amplitude = amplitude;
    s.m2 = m2;
    s.eps_t = eps_t;
    s.mt = mt;
    s.validate();
    return s;
}

FieldSpec FieldSpec::cellular(double amplitude, int m1, int m2, double eps_t, int mt) {
    FieldSpec s;
    s.kind = FieldKind::Cellular;
    s.amplitude = amplitude;
    s.m1 = m1;
    s.m2 = m2;
    s.eps_t = eps_t;
    s.mt = mt;
    s.validate();
    return s;
}

FieldSpec FieldSpec::tabulated(int n1, int n2, int nt, std::vector<double> b1,
                               std::vector<double> b2) {
    FieldSpec s;
    s.kind = FieldKind::Tabulated;
    s.tab_n1 = n1;
    s.tab_n2 = n2;
    s.tab_nt = nt;
    s.tab_b1 = std::move(b1);
    s.tab_b2 = std::move(b2);
    s.validate();
    return s;
}

void FieldSpec::validate() const {
    if (eps_t < 0 || eps_t > 1) throw ParameterError("FieldSpec: eps_t must lie in [0,1]");
    if (kind != FieldKind::Tabulated && kind != FieldKind::Zero) {
        if (m1 < 1 || m2 < 1 || mt < 1)
            throw ParameterError("FieldSpec: spatial/temporal frequencies must be positive integers");
    }
    if (kind == FieldKind::Tabulated) {
        if (tab_n1 < 2 || tab_n2 < 2 || tab_nt < 1)
            throw ShapeError("FieldSpec: tabulated lattice must be at least 2x2x1");
        const size_t want = static_cast<size_t>(tab_n1) * tab_n2 * tab_nt;
        if (tab_b1.size() != want || tab_b2.size() != want) {
            std::ostringstream os;
            os << "FieldSpec: tabulated arrays hold " << tab_b1.size() << "/" << tab_b2.size()
               << " values, lattice " << tab_n1 << "x" << tab_n2 << "x" << tab_nt << " needs "
               << want;
            throw ShapeError(os.str());
        }
    }
}

double FieldSpec::sup_norm() const {
    switch (kind) {
        case FieldKind::Zero:
            return 0;
        case FieldKind::Shear:
            return std::abs(amplitude) * (1 + eps_t);
        case FieldKind::Cellular:
            return std::abs(amplitude) * std::max(m1, m2) * (1 + eps_t);
        case FieldKind::Tabulated: {
            double m = 0;
            for (double v : tab_b1) m = std::max(m, std::abs(v));
            for (double v : tab_b2) m = std::max(m, std::abs(v));
            return m;
        }
    }
    return 0;
}

Eigen::Vector2d evaluate(const FieldSpec& spec, const Eigen::Vector2d& x, double t) {
    switch (spec.kind) {
        case FieldKind::Zero:
            return Eigen::Vector2d::Zero();
        case FieldKind::Shear:
            return {spec.amplitude * std::sin(kTwoPi * spec.m2 * x[1]) * temporal_factor(spec, t),
                    0.0};
        case FieldKind::Cellular: {
            // psi = (A/2pi) sin(2 pi m1 x1) sin(2 pi m2 x2) g(t); b = (psi_x2, -psi_x1).
            const double g = temporal_factor(spec, t);
            const double s1 = std::sin(kTwoPi * spec.m1 * x[0]), c1 = std::cos(kTwoPi * spec.m1 * x[0]);
            const double s2 = std::sin(kTwoPi * spec.m2 * x[1]), c2 = std::cos(kTwoPi * spec.m2 * x[1]);
            return {spec.amplitude * spec.m2 * s1 * c2 * g, -spec.amplitude * spec.m1 * c1 * s2 * g};
        }
        case FieldKind::Tabulated:
            return {interp_tab(spec.tab_b1, spec.tab_n1, spec.tab_n2, spec.tab_nt, x[0], x[1], t),
                    interp_tab(spec.tab_b2, spec.tab_n1, spec.tab_n2, spec.tab_nt, x[0], x[1], t)};
    }
    return Eigen::Vector2d::Zero();
}

void sample_field(const FieldSpec& spec, int nx, double t, Eigen::ArrayXXd& b1,
                  Eigen::ArrayXXd& b2) {
    b1.resize(nx, nx);
    b2.resize(nx, nx);
    const double h = 1.0 / nx;
    for (int j = 0; j < nx; ++j)
        for (int i = 0; i < nx; ++i) {
            const Eigen::Vector2d b = evaluate(spec, {i * h, j * h}, t);
            b1(i, j) = b[0];
            b2(i, j) = b[1];
        }
}

double divergence_residual(const FieldSpec& spec, const CellGrid& grid) {
    grid.validate();
    if (grid.dim != 2) throw ParameterError("divergence_residual: needs a 2-D grid");
    if (spec.kind == FieldKind::Zero) return 0;
    Fft2 fft(grid.nx, grid.nx);
    Eigen::ArrayXXd b1, b2, d1, d2;
    double worst = 0;
    for (int n = 0; n < grid.nt; ++n) {
        sample_field(spec, grid.nx, n * grid.dt(), b1, b2);
        fft.derivative(b1, 0, d1);
        fft.derivative(b2, 1, d2);
        worst = std::max(worst, (d1 + d2).abs().maxCoeff());
    }
    return worst;
}

Eigen::Vector2d mean_residual(const FieldSpec& spec, const CellGrid& grid) {
    grid.validate();
    double s1 = 0, s2 = 0;
    const double h = 1.0 / grid.nx;
    const int ny = grid.dim == 2 ? grid.nx : 1;
    for (int n = 0; n < grid.nt; ++n)
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < grid.nx; ++i) {
                const Eigen::Vector2d b = evaluate(spec, {i * h, j * h}, n * grid.dt());
                s1 += b[0];
                s2 += b[1];
            }
    const double count = static_cast<double>(grid.nx) * ny * grid.nt;
    return {std::abs(s1 / count), std::abs(s2 / count)};
}

FieldSpec load_field_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ShapeError("load_field_csv: cannot open " + path);
    struct Row {
        double x1, x2, t, b1, b2;
    };
    std::vector<Row> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream is(line);
        Row r;
        if (!(is >> r.x1 >> r.x2 >> r.t >> r.b1 >> r.b2)) {
            std::ostringstream os;
            os << "load_field_csv: " << path << ":" << lineno << ": expected 5 numeric columns";
            throw ShapeError(os.str());
        }
        rows.push_back(r);
    }
    if (rows.empty()) throw ShapeError("load_field_csv: " + path + " has no data rows");

    auto lattice_size = [&](auto get) {
        std::vector<double> vals;
        for (const Row& r : rows) vals.push_back(get(r));
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end(),
                               [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                   vals.end());
        const int n = static_cast<int>(vals.size());
        for (int i = 0; i < n; ++i)
            if (std::abs(vals[i] - static_cast<double>(i) / n) > 1e-9)
                throw ShapeError("load_field_csv: coordinates are not a uniform lattice on [0,1)");
        return n;
    };
    const int n1 = lattice_size([](const Row& r) { return r.x1; });
    const int n2 = lattice_size([](const Row& r) { return r.x2; });
    const int nt = lattice_size([](const Row& r) { return r.t; });
    const size_t want = static_cast<size_t>(n1) * n2 * nt;
    if (rows.size() != want) {
        std::ostringstream os;
        os << "load_field_csv: " << rows.size() << " rows cannot fill a " << n1 << "x" << n2 << "x"
           << nt << " lattice (" << want << " nodes)";
        throw ShapeError(os.str());
    }
    std::vector<double> b1(want), b2(want);
    std::vector<char> seen(want, 0);
    for (const Row& r : rows) {
        const int i = static_cast<int>(std::lround(r.x1 * n1));
        const int j = static_cast<int>(std::lround(r.x2 * n2));
        const int n = static_cast<int>(std::lround(r.t * nt));
        const size_t idx = i + static_cast<size_t>(n1) * (j + static_cast<size_t>(n2) * n);
        if (seen[idx]) throw ShapeError("load_field_csv: duplicate lattice node in " + path);
        seen[idx] = 1;
        b1[idx] = r.b1;
        b2[idx] = r.b2;
    }
    return FieldSpec::tabulated(n1, n2, nt, std::move(b1), std::move(b2));
}

}  // namespace frontspeed
