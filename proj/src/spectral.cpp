#include "frontspeed/spectral.hpp"

namespace frontspeed {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

Eigen::VectorXd fft_frequencies(int n) {
    Eigen::VectorXd f(n);
    for (int j = 0; j < n; ++j) f[j] = j <= n / 2 ? j : j - n;
    return f;
}

Eigen::VectorXd fft_frequencies_deriv(int n) {
    Eigen::VectorXd f = fft_frequencies(n);
    if (n % 2 == 0) f[n / 2] = 0;
    return f;
}

Fft2::Fft2(int nx, int ny) : nx_(nx), ny_(ny), t_(ny, nx), in_(std::max(nx, ny)), out_(std::max(nx, ny)) {}

void Fft2::cols_fwd(Eigen::MatrixXcd& a) {
    const int n = static_cast<int>(a.rows());
    for (int j = 0; j < a.cols(); ++j) {
        in_.head(n) = a.col(j);
        fft_.fwd(out_.data(), in_.data(), n);
        a.col(j) = out_.head(n);
    }
}

void Fft2::cols_inv(Eigen::MatrixXcd& a) {
    const int n = static_cast<int>(a.rows());
    for (int j = 0; j < a.cols(); ++j) {
        in_.head(n) = a.col(j);
        fft_.inv(out_.data(), in_.data(), n);
        a.col(j) = out_.head(n);
    }
}

void Fft2::fwd(Eigen::MatrixXcd& a) {
    if (nx_ > 1) cols_fwd(a);
    if (ny_ == 1) return;
    t_ = a.transpose();
    cols_fwd(t_);
    a = t_.transpose();
}

void Fft2::inv(Eigen::MatrixXcd& a) {
    if (nx_ > 1) cols_inv(a);
    if (ny_ == 1) return;
    t_ = a.transpose();
    cols_inv(t_);
    a = t_.transpose();
}

void Fft2::derivative(const Eigen::ArrayXXd& in, int axis, Eigen::ArrayXXd& out) {
    Eigen::MatrixXcd a = in.matrix().cast<std::complex<double>>();
    fwd(a);
    const Eigen::VectorXd f = fft_frequencies_deriv(axis == 0 ? nx_ : ny_);
    const std::complex<double> i2pi(0.0, kTwoPi);
    if (axis == 0)
        for (int j = 0; j < ny_; ++j)
            for (int i = 0; i < nx_; ++i) a(i, j) *= i2pi * f[i];
    else
        for (int j = 0; j < ny_; ++j) a.col(j) *= i2pi * f[j];
    inv(a);
    out = a.real().array();
}

void Fft1::fwd(Eigen::VectorXcd& a) {
    in_ = a;
    fft_.fwd(out_.data(), in_.data(), n_);
    a = out_;
}

void Fft1::inv(Eigen::VectorXcd& a) {
    in_ = a;
    fft_.inv(out_.data(), in_.data(), n_);
    a = out_;
}

}  // namespace frontspeed
