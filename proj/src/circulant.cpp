#include "qcss/circulant.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace qcss {

namespace {
constexpr double kPi = std::numbers::pi;

long long length_to_n(Eigen::Index len, const char* who) {
    if (len < 3 || len % 2 == 0)
        throw std::invalid_argument(std::string(who) + ": vector length must be odd and >= 3 (2N-1)");
    return (static_cast<long long>(len) + 1) / 2;
}

// exp(-2*pi*i*k/L) for k already reduced into [0, L).
std::complex<double> unit_root(long long k, long long L) {
    const double angle = -2.0 * kPi * static_cast<double>(k) / static_cast<double>(L);
    return {std::cos(angle), std::sin(angle)};
}

MatrixXd dense_circulant(long long N, double a) {
    const long long L = 2 * N - 1;
    MatrixXd Q(L, L);
    for (long long s = 0; s < L; ++s) {
        Q(s, s) = a;
        for (long long t = s + 1; t < L; ++t) {
            const double v = static_cast<double>(tau(s, t, N));
            Q(s, t) = v;
            Q(t, s) = v;
        }
    }
    return Q;
}
}  // namespace

long long tau(long long s, long long t, long long N) {
    const long long L = 2 * N - 1;
    if (s < 0 || t < 0 || s > L - 1 || t > L - 1)
        throw std::invalid_argument("tau: indices must lie in [0, 2N-2]");
    const long long d = std::llabs(t - s);
    return std::min(d, L - d);
}

VectorXd q_first_column(const QcssParams& params) {
    const long long L = params.length();
    VectorXd q(L);
    q[0] = params.a();
    for (long long i = 1; i < L; ++i) q[i] = static_cast<double>(tau(0, i, params.N));
    return q;
}

MatrixXd circulant_matrix(const QcssParams& params) {
    if (params.N > 512)
        throw std::invalid_argument("circulant_matrix: dense Q_a is restricted to N <= 512");
    return dense_circulant(params.N, params.a());
}

VectorXcd naive_dft(const VectorXcd& x) {
    const long long L = x.size();
    VectorXcd X(L);
    for (long long l = 0; l < L; ++l) {
        std::complex<double> acc(0.0, 0.0);
        for (long long t = 0; t < L; ++t) acc += x[t] * unit_root((l * t) % L, L);
        X[l] = acc;
    }
    return X;
}

VectorXcd naive_dft(const VectorXd& x) {
    return naive_dft(VectorXcd(x.cast<std::complex<double>>()));
}

VectorXcd naive_idft(const VectorXcd& X) {
    const long long L = X.size();
    VectorXcd x(L);
    for (long long t = 0; t < L; ++t) {
        std::complex<double> acc(0.0, 0.0);
        for (long long l = 0; l < L; ++l) acc += X[l] * std::conj(unit_root((l * t) % L, L));
        x[t] = acc / static_cast<double>(L);
    }
    return x;
}

double bilinear_form_time(const VectorXd& x, const VectorXd& y, double a) {
    if (x.size() != y.size())
        throw std::invalid_argument("bilinear_form_time: length mismatch");
    const long long N = length_to_n(x.size(), "bilinear_form_time");
    const long long L = 2 * N - 1;
    double off = 0.0;
    for (long long s = 0; s < L; ++s) {
        double row = 0.0;
        for (long long t = 0; t < L; ++t) {
            if (t == s) continue;
            row += static_cast<double>(tau(s, t, N)) * y[t];
        }
        off += x[s] * row;
    }
    return a * x.dot(y) + off;
}

double quadratic_form_time(const VectorXd& w, double a) {
    const long long N = length_to_n(w.size(), "quadratic_form_time");
    // Dense oracle path up to N = 512; the double sum beyond that.
    if (N <= 512) {
        const MatrixXd Q = dense_circulant(N, a);
        return w.dot(Q * w);
    }
    return bilinear_form_time(w, w, a);
}

VectorXd spectrum_closed_form(const QcssParams& params) {
    return spectrum_closed_form(params.N, params.a());
}

VectorXd spectrum_closed_form(long long N, double a) {
    const long long L = 2 * N - 1;
    VectorXd lam(L);
    lam[0] = a + static_cast<double>(N) * static_cast<double>(N - 1);
    for (long long l = 1; l <= N - 1; ++l) {
        const double ang = kPi * static_cast<double>(l) / static_cast<double>(L);
        const double s = std::sin(ang);
        const double sign = (l % 2 == 0) ? 1.0 : -1.0;
        const double value = a - (1.0 - sign * std::cos(ang)) / (2.0 * s * s);
        lam[l] = value;
        lam[L - l] = value;  // conjugate symmetry, exact by construction
    }
    return lam;
}

VectorXd spectrum_dft(const QcssParams& params) {
    const VectorXcd lam = naive_dft(q_first_column(params));
    const double scale = lam.cwiseAbs().maxCoeff();
    const double imag_max = lam.imag().cwiseAbs().maxCoeff();
    if (imag_max > 1e-9 * scale)
        throw std::runtime_error("spectrum_dft: residual imaginary part exceeds 1e-9 * max|lambda|");
    return lam.real();
}

double quadratic_form_freq(const VectorXd& w, const QcssParams& params) {
    if (w.size() != params.length())
        throw std::invalid_argument("quadratic_form_freq: weight length does not match 2N-1");
    return quadratic_form_freq(w, params.N, params.a());
}

double quadratic_form_freq(const VectorXd& w, long long N, double a) {
    if (w.size() != 2 * N - 1)
        throw std::invalid_argument("quadratic_form_freq: weight length does not match 2N-1");
    const VectorXcd v = naive_dft(w);
    const VectorXd lam = spectrum_closed_form(N, a);
    return lam.dot(v.cwiseAbs2()) / static_cast<double>(2 * N - 1);
}

double sum_squares_freq(const VectorXd& w) {
    const VectorXcd v = naive_dft(w);
    return v.squaredNorm() / static_cast<double>(w.size());
}

}  // namespace qcss
