#include "qcss/weights.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qcss {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSimplexTol = 1e-12;

// Families that touch the simplex boundary analytically can dip a few
// ulp below zero; clamp those and renormalize. Anything more negative
// is a construction bug and is rejected.
VectorXd clamp_and_normalize(VectorXd w, const char* who) {
    const double min_entry = w.minCoeff();
    if (min_entry < -kSimplexTol)
        throw std::runtime_error(std::string(who) + ": entry below -1e-12 after construction");
    w = w.cwiseMax(0.0);
    w /= w.sum();
    return w;
}
}  // namespace

SimplexReport validate_simplex(const VectorXd& w) {
    SimplexReport r;
    r.sum = w.sum();
    r.min_entry = w.size() > 0 ? w.minCoeff(&r.offending_index) : 0.0;
    if (w.size() == 0) {
        r.ok = false;
        r.message = "empty vector";
        return r;
    }
    const bool nonneg = r.min_entry >= -kSimplexTol;
    const bool normalized = std::abs(r.sum - 1.0) <= kSimplexTol;
    r.ok = nonneg && normalized;
    if (r.ok) {
        r.offending_index = -1;
        r.message = "ok";
    } else {
        std::ostringstream os;
        if (!nonneg)
            os << "entry " << r.offending_index << " = " << r.min_entry << " is below -1e-12";
        if (!nonneg && !normalized) os << "; ";
        if (!normalized) os << "sum = " << r.sum << " deviates from 1 by more than 1e-12";
        r.message = os.str();
    }
    return r;
}

void require_simplex(const VectorXd& w, const char* who) {
    const SimplexReport r = validate_simplex(w);
    if (!r.ok) throw std::invalid_argument(std::string(who) + ": not a simplex vector: " + r.message);
}

VectorXd uniform_weights(long long N) {
    if (N < 2) throw std::invalid_argument("uniform_weights: N must be >= 2");
    const long long L = 2 * N - 1;
    return VectorXd::Constant(L, 1.0 / static_cast<double>(L));
}

VectorXd step_weights(long long N, long long m) {
    if (N < 2) throw std::invalid_argument("step_weights: N must be >= 2");
    if (m < 1 || m > N) throw std::invalid_argument("step_weights: m must satisfy 1 <= m <= N");
    VectorXd w = VectorXd::Zero(2 * N - 1);
    w.head(m).setConstant(1.0 / static_cast<double>(m));
    return w;
}

VectorXd cosine_weights(long long N, long long j) {
    if (N < 2) throw std::invalid_argument("cosine_weights: N must be >= 2");
    const long long L = 2 * N - 1;
    const long long shift = ((j % L) + L) % L;
    const double c = std::cos(kPi / static_cast<double>(L));
    // Build the j = 0 vector and rotate afterwards, so cosine_weights(N, j)
    // is an entrywise-exact cyclic rotation of cosine_weights(N, 0).
    VectorXd base(L);
    for (long long k = 0; k < L; ++k)
        base[k] =
            (1.0 + std::cos(2.0 * kPi * static_cast<double>(k) / static_cast<double>(L)) / c) /
            static_cast<double>(L);
    // cos(2 pi k / L) equals -cos(pi/L) analytically at k = N-1 and k = N;
    // pin those boundary touches to exact zeros.
    base[N - 1] = 0.0;
    base[N] = 0.0;
    base = clamp_and_normalize(std::move(base), "cosine_weights");
    if (shift == 0) return base;
    VectorXd w(L);
    for (long long i = 0; i < L; ++i) w[i] = base[(i + shift) % L];
    return w;
}

VectorXd sine_weights(long long N, long long m) {
    if (N < 2) throw std::invalid_argument("sine_weights: N must be >= 2");
    if (m < 2 || m > 2 * N - 1)
        throw std::invalid_argument("sine_weights: m must satisfy 2 <= m <= 2N-1");
    const double t = std::tan(kPi / (2.0 * static_cast<double>(m)));
    VectorXd w = VectorXd::Zero(2 * N - 1);
    for (long long i = 0; i < m; ++i)
        w[i] = t * std::sin(kPi * static_cast<double>(i) / static_cast<double>(m));
    return clamp_and_normalize(std::move(w), "sine_weights");
}

double chebyshev_phi(const QcssParams& params) {
    const double mn2 = static_cast<double>(params.M) * static_cast<double>(params.N) *
                       static_cast<double>(params.N);
    if (static_cast<double>(params.K) > mn2)
        throw std::domain_error("chebyshev_phi: requires K <= M N^2");
    return std::acos(1.0 - static_cast<double>(params.K) / mn2);
}

long long chebyshev_default_m(const QcssParams& params) {
    const double phi = chebyshev_phi(params);
    const long long cap = 2 * params.N - 1;
    auto admissible = [phi, cap](long long m) {
        return m >= 2 && m <= cap && m % 2 == 0 && static_cast<double>(m) * phi < kPi + phi;
    };
    const long long base = static_cast<long long>(std::floor(kPi / phi)) + 1;
    if (admissible(base)) return base;
    if (admissible(base + 1)) return base + 1;  // base odd -> base+1 even
    if (admissible(base - 1)) return base - 1;
    // floor(pi/phi)+1 can exceed the weight support 2N-1; fall back to the
    // largest admissible even order.
    for (long long m = std::min(base, cap); m >= 2; --m)
        if (admissible(m)) return m;
    throw std::domain_error("chebyshev_default_m: no admissible even order");
}

VectorXd chebyshev_weights(const QcssParams& params, long long m) {
    const double phi = chebyshev_phi(params);
    if (m % 2 != 0) throw std::invalid_argument("chebyshev_weights: m must be even");
    if (m < 2 || m > 2 * params.N - 1)
        throw std::invalid_argument("chebyshev_weights: m must satisfy 2 <= m <= 2N-1");
    if (static_cast<double>(m) * phi >= kPi + phi)
        throw std::invalid_argument("chebyshev_weights: m phi < pi + phi violated");
    const double phi0 = (kPi - static_cast<double>(m) * phi + phi) / 2.0;
    const double scale = std::sin(phi / 2.0) / std::sin(static_cast<double>(m) * phi / 2.0);
    VectorXd w = VectorXd::Zero(2 * params.N - 1);
    for (long long i = 0; i < m; ++i) w[i] = scale * std::sin(phi0 + static_cast<double>(i) * phi);
    return clamp_and_normalize(std::move(w), "chebyshev_weights");
}

void write_weight_file(const std::string& path, const VectorXd& w) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_weight_file: cannot open " + path);
    char buf[64];
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", w[i]);
        out << buf << '\n';
    }
    if (!out) throw std::runtime_error("write_weight_file: write failed for " + path);
}

VectorXd read_weight_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_weight_file: cannot open " + path);
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t pos = 0;
        const double v = std::stod(line, &pos);
        values.push_back(v);
    }
    if (values.size() < 3 || values.size() % 2 == 0)
        throw std::runtime_error("read_weight_file: line count must be odd and >= 3 (2N-1)");
    return Eigen::Map<const VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace qcss
