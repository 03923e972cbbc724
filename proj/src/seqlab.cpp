#include "qcss/seqlab.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qcss {

namespace {
constexpr double kPi = std::numbers::pi;

bool is_power_of_two(long long n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

void SequenceSet::validate() const {
    if (matrices.empty()) throw std::invalid_argument("SequenceSet: empty set");
    const long long rows = matrices.front().rows();
    const long long cols = matrices.front().cols();
    for (const auto& m : matrices)
        if (m.rows() != rows || m.cols() != cols)
            throw std::invalid_argument("SequenceSet: matrices must share one (M, N) shape");
    if (unimodular) {
        for (const auto& m : matrices)
            if (((m.cwiseAbs().array() - 1.0).abs() > 1e-12).any())
                throw std::invalid_argument(
                    "SequenceSet: unimodular mode requires |entry| = 1 within 1e-12");
    }
}

std::complex<double> aperiodic_xcorr(const VectorXcd& a, const VectorXcd& b, long long tau) {
    const long long N = a.size();
    if (b.size() != N) throw std::invalid_argument("aperiodic_xcorr: length mismatch");
    if (tau >= N || tau <= -N) return {0.0, 0.0};
    std::complex<double> acc(0.0, 0.0);
    if (tau >= 0) {
        for (long long t = 0; t + tau < N; ++t) acc += a[t] * std::conj(b[t + tau]);
    } else {
        for (long long t = 0; t <= N - 1 + tau; ++t) acc += a[t - tau] * std::conj(b[t]);
    }
    return acc;
}

std::complex<double> correlation_sum(const MatrixXcd& Cmu, const MatrixXcd& Cnu, long long tau) {
    if (Cmu.rows() != Cnu.rows() || Cmu.cols() != Cnu.cols())
        throw std::invalid_argument("correlation_sum: shape mismatch");
    std::complex<double> acc(0.0, 0.0);
    for (long long m = 0; m < Cmu.rows(); ++m)
        acc += aperiodic_xcorr(Cmu.row(m).transpose(), Cnu.row(m).transpose(), tau);
    return acc;
}

ToleranceReport tolerances(const SequenceSet& set) {
    set.validate();
    const long long K = set.K();
    const long long N = set.N();
    ToleranceReport r;
    for (long long mu = 0; mu < K; ++mu)
        for (long long tau = 1; tau <= N - 1; ++tau) {
            const double v = std::abs(correlation_sum(set.matrices[mu], set.matrices[mu], tau));
            if (v > r.delta_a) {
                r.delta_a = v;
                r.arg_a_mu = mu;
                r.arg_a_tau = tau;
            }
        }
    if (K >= 2) {
        r.delta_c_defined = true;
        for (long long mu = 0; mu < K; ++mu)
            for (long long nu = 0; nu < K; ++nu) {
                if (mu == nu) continue;
                for (long long tau = 0; tau <= N - 1; ++tau) {
                    const double v =
                        std::abs(correlation_sum(set.matrices[mu], set.matrices[nu], tau));
                    if (v > r.delta_c) {
                        r.delta_c = v;
                        r.arg_c_mu = mu;
                        r.arg_c_nu = nu;
                        r.arg_c_tau = tau;
                    }
                }
            }
    }
    r.delta_max = std::max(r.delta_a, r.delta_c);
    return r;
}

GolayPair golay_pair(long long n) {
    if (!is_power_of_two(n)) throw std::invalid_argument("golay_pair: n must be a power of two");
    VectorXcd a(1), b(1);
    a[0] = 1.0;
    b[0] = 1.0;
    while (a.size() < n) {
        VectorXcd na(2 * a.size()), nb(2 * a.size());
        na << a, b;
        nb << a, -b;
        a.swap(na);
        b.swap(nb);
    }
    GolayPair pair{a, b};
    for (long long tau = 1; tau <= n - 1; ++tau) {
        const auto s = aperiodic_xcorr(pair.a, pair.a, tau) + aperiodic_xcorr(pair.b, pair.b, tau);
        if (std::abs(s) > 1e-12)
            throw std::logic_error("golay_pair: autocorrelation sums do not vanish");
    }
    return pair;
}

GolayPair golay_mate(const GolayPair& pair) {
    const long long n = pair.a.size();
    if (pair.b.size() != n) throw std::invalid_argument("golay_mate: ragged pair");
    GolayPair mate;
    mate.a = pair.b.reverse().conjugate();
    mate.b = -pair.a.reverse().conjugate();
    for (long long tau = -(n - 1); tau <= n - 1; ++tau) {
        const auto s =
            aperiodic_xcorr(pair.a, mate.a, tau) + aperiodic_xcorr(pair.b, mate.b, tau);
        if (std::abs(s) > 1e-12)
            throw std::logic_error("golay_mate: cross-correlation sums do not vanish");
    }
    return mate;
}

SequenceSet random_qcss(long long K, long long M, long long N, long long alphabet_order,
                        std::uint64_t seed) {
    if (K < 1 || M < 1 || N < 1)
        throw std::invalid_argument("random_qcss: K, M, N must be positive");
    if (alphabet_order < 2) throw std::invalid_argument("random_qcss: alphabet order must be >= 2");
    std::mt19937_64 gen(seed);
    SequenceSet set;
    set.unimodular = true;
    set.matrices.reserve(K);
    for (long long k = 0; k < K; ++k) {
        MatrixXcd m(M, N);
        for (long long r = 0; r < M; ++r)
            for (long long c = 0; c < N; ++c) {
                const long long u = static_cast<long long>(gen() % static_cast<std::uint64_t>(
                                                                       alphabet_order));
                const double ang =
                    2.0 * kPi * static_cast<double>(u) / static_cast<double>(alphabet_order);
                m(r, c) = std::complex<double>(std::cos(ang), std::sin(ang));
            }
        set.matrices.push_back(std::move(m));
    }
    return set;
}

VerifyReport verify_bounds(const SequenceSet& set, const std::vector<BoundResult>& results) {
    set.validate();
    if (!set.unimodular)
        throw std::invalid_argument("verify_bounds: bounds assume a unimodular set");
    const ToleranceReport tol = tolerances(set);
    VerifyReport rep;
    rep.delta_max = tol.delta_max;
    rep.delta_max_sq = tol.delta_max * tol.delta_max;
    for (const auto& b : results) {
        if (b.params.K != set.K() || b.params.M != set.M() || b.params.N != set.N())
            throw std::invalid_argument("verify_bounds: bound params do not match the set");
        BoundCheck c;
        c.bound = b;
        c.slack = rep.delta_max_sq - b.value;
        c.checked = b.valid;
        c.holds = !c.checked || c.slack >= -1e-9;
        if (!c.holds) ++rep.violations;
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

}  // namespace qcss
