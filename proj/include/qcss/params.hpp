#pragma once

#include <stdexcept>

namespace qcss {

/// Parameter triple of a quasi-complementary sequence set: K matrices of
/// M rows (channels) by N columns (row sequence length). The diagonal
/// constant a = N(MN-1)/K of the circulant quadratic matrix is derived,
/// never stored, so it can't go stale.
struct QcssParams {
    long long K = 1;
    long long M = 2;
    long long N = 2;

    QcssParams() = default;
    QcssParams(long long k, long long m, long long n) : K(k), M(m), N(n) {
        if (K < 1) throw std::invalid_argument("QcssParams: K must be >= 1");
        if (M < 2) throw std::invalid_argument("QcssParams: M must be >= 2");
        if (N < 2) throw std::invalid_argument("QcssParams: N must be >= 2");
    }

    double a() const {
        return static_cast<double>(N) * (static_cast<double>(M) * static_cast<double>(N) - 1.0) /
               static_cast<double>(K);
    }

    // Order of the circulant matrix and of every weight vector.
    long long length() const { return 2 * N - 1; }

    bool operator==(const QcssParams&) const = default;
};

}  // namespace qcss
