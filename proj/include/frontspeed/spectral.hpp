#ifndef FRONTSPEED_SPECTRAL_HPP
#define FRONTSPEED_SPECTRAL_HPP

#include <complex>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

namespace frontspeed {

/// Integer FFT frequencies {0, 1, ..., n/2, -n/2+1, ..., -1} for length n.
Eigen::VectorXd fft_frequencies(int n);

/// Same, with the Nyquist entry zeroed; use for odd-order derivatives of
/// real data so the result stays real.
Eigen::VectorXd fft_frequencies_deriv(int n);

/// Complex 2-D FFT on an nx-by-ny grid (rows index x1, columns x2),
/// built from 1-D transforms.  Instances hold scratch buffers and are not
/// thread-safe; make one per thread.
class Fft2 {
public:
    Fft2(int nx, int ny);

    int nx() const { return nx_; }
    int ny() const { return ny_; }

    void fwd(Eigen::MatrixXcd& a);
    void inv(Eigen::MatrixXcd& a);

    /// Spectral d/dx_axis of real node data (axis 0 = x1, 1 = x2).
    void derivative(const Eigen::ArrayXXd& in, int axis, Eigen::ArrayXXd& out);

private:
    void cols_fwd(Eigen::MatrixXcd& a);
    void cols_inv(Eigen::MatrixXcd& a);

    int nx_, ny_;
    Eigen::FFT<double> fft_;
    Eigen::MatrixXcd t_;
    Eigen::VectorXcd in_, out_;
};

/// 1-D counterpart for lines and time columns.
class Fft1 {
public:
    explicit Fft1(int n) : n_(n), in_(n), out_(n) {}
    int n() const { return n_; }
    void fwd(Eigen::VectorXcd& a);
    void inv(Eigen::VectorXcd& a);

private:
    int n_;
    Eigen::FFT<double> fft_;
    Eigen::VectorXcd in_, out_;
};

}  // namespace frontspeed

#endif
