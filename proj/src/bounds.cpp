#include "qcss/bounds.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qcss/circulant.hpp"
#include "qcss/weights.hpp"

namespace qcss {

namespace {
constexpr double kPi = std::numbers::pi;

double finite_or_lowest(double v) {
    return std::isfinite(v) ? v : std::numeric_limits<double>::lowest();
}

// lambda_0 and lambda_1 of Q_a with a = N(MN-1)/K.
void leading_eigenvalues(const QcssParams& p, double& lambda0, double& lambda1) {
    const double a = p.a();
    const double N = static_cast<double>(p.N);
    const double s = std::sin(kPi / (2.0 * (2.0 * N - 1.0)));
    lambda0 = a + N * (N - 1.0);
    lambda1 = a - 1.0 / (4.0 * s * s);
}

// Golden-section minimizer on [lo, hi] for a unimodal bracket.
double golden_minimize(const std::function<double(double)>& f, double lo, double hi, double tol,
                       double* arg_out) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    const double x = (lo + hi) / 2.0;
    if (arg_out) *arg_out = x;
    return f(x);
}

// Dense-grid scan followed by golden-section refinement of the bracket.
double grid_refine_minimize(const std::function<double(double)>& f, double lo, double hi,
                            int grid_points, double tol, double* arg_out) {
    double best = std::numeric_limits<double>::infinity();
    int best_i = 1;
    for (int i = 1; i < grid_points; ++i) {
        const double r = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_points);
        const double v = f(r);
        if (v < best) {
            best = v;
            best_i = i;
        }
    }
    const double step = (hi - lo) / static_cast<double>(grid_points);
    const double blo = std::max(lo + step * 1e-3, lo + (best_i - 1) * step);
    const double bhi = std::min(hi - step * 1e-3, lo + (best_i + 1) * step);
    return golden_minimize(f, blo, bhi, tol, arg_out);
}

BoundResult make_result(BoundKind kind, const QcssParams& params, double value, bool valid,
                        std::string notes) {
    BoundResult r;
    r.kind = kind;
    r.params = params;
    r.value = finite_or_lowest(value);
    r.valid = valid;
    r.validity_notes = std::move(notes);
    return r;
}
}  // namespace

const char* bound_kind_name(BoundKind kind) {
    switch (kind) {
        case BoundKind::welch: return "welch";
        case BoundKind::glb_general: return "glb";
        case BoundKind::glb_simplified: return "glb_simplified";
        case BoundKind::glb_step: return "glb_step";
        case BoundKind::glb_cosine_exact: return "glb_cosine_exact";
        case BoundKind::glb_cosine_asymptotic: return "glb_cosine_asymptotic";
        case BoundKind::glb_sine: return "glb_sine";
        case BoundKind::glb_sine_asymptotic: return "glb_sine_asymptotic";
        case BoundKind::glb_chebyshev: return "glb_chebyshev";
    }
    return "unknown";
}

KBar k_bar(long long M, long long N) {
    if (M < 2 || N < 2) throw std::invalid_argument("k_bar: requires M >= 2 and N >= 2");
    const double Md = static_cast<double>(M);
    const double Nd = static_cast<double>(N);
    const double s = std::sin(kPi / (2.0 * (2.0 * Nd - 1.0)));
    double x = 4.0 * (Md * Nd - 1.0) * Nd * s * s;
    // The argument is an exact integer at N = 2 (sin^2(pi/6) = 1/4 gives
    // x = 2(2M-1)); snap near-integer values so the floor does not fall
    // one short from trig rounding.
    const double rounded = std::round(x);
    if (std::abs(x - rounded) < 1e-9 * std::max(1.0, std::abs(x))) x = rounded;
    KBar kb;
    kb.value = static_cast<long long>(std::floor(x));
    kb.eps = x - std::floor(x);
    return kb;
}

long long k_bar_asymptotic(long long M) {
    return static_cast<long long>(std::floor(kPi * kPi * static_cast<double>(M) / 4.0));
}

BoundResult welch_bound(const QcssParams& p) {
    const double M = static_cast<double>(p.M);
    const double N = static_cast<double>(p.N);
    const double K = static_cast<double>(p.K);
    const double value = M * M * N * N * (K / M - 1.0) / (K * (2.0 * N - 1.0) - 1.0);
    return make_result(BoundKind::welch, p, value, true, K < M ? "vacuous: K < M" : "");
}

BoundResult glb(const QcssParams& p, const VectorXd& w) {
    if (w.size() != p.length())
        throw std::invalid_argument("glb: weight length does not match 2N-1");
    require_simplex(w, "glb");
    const double K = static_cast<double>(p.K);
    const double denom = 1.0 - w.squaredNorm() / K;
    if (denom <= 0.0)
        throw std::domain_error("glb: 1 - (1/K) sum w_i^2 must be positive");
    const double Q = quadratic_form_freq(w, p);
    const double value =
        static_cast<double>(p.M) * (static_cast<double>(p.N) - Q / denom);
    return make_result(BoundKind::glb_general, p, value, true, "");
}

BoundResult glb_simplified(const QcssParams& p, const VectorXd& w) {
    if (w.size() != p.length())
        throw std::invalid_argument("glb_simplified: weight length does not match 2N-1");
    require_simplex(w, "glb_simplified");
    const double M = static_cast<double>(p.M);
    const double N = static_cast<double>(p.N);
    const double a = M * N * N / static_cast<double>(p.K);
    const double value = M * (N - quadratic_form_freq(w, p.N, a));
    return make_result(BoundKind::glb_simplified, p, value, true, "");
}

BoundResult glb_step(const QcssParams& p, long long m) {
    if (m < 1 || m > p.N) throw std::invalid_argument("glb_step: m must satisfy 1 <= m <= N");
    const double M = static_cast<double>(p.M);
    const double N = static_cast<double>(p.N);
    const double K = static_cast<double>(p.K);
    const double md = static_cast<double>(m);
    const double denom = 3.0 * (md * K - 1.0);
    const bool valid = denom > 0.0;  // mK = 1 only for m = K = 1
    const double value =
        (3.0 * M * N * K * md - 3.0 * M * M * N * N - M * K * (md * md - 1.0)) / denom;
    BoundResult r = make_result(BoundKind::glb_step, p, value, valid,
                                valid ? "" : "degenerate: mK - 1 <= 0");
    r.m = m;
    return r;
}

BoundResult glb_step_best(const QcssParams& p) {
    BoundResult best;
    bool have = false;
    for (long long m = 1; m <= p.N; ++m) {
        BoundResult r = glb_step(p, m);
        if (!r.valid) continue;
        if (!have || r.value > best.value) {
            best = r;
            have = true;
        }
    }
    if (!have) throw std::domain_error("glb_step_best: no admissible m (K = 1, N = 1 corner)");

    // Tighter-than-Welch guarantee for the maximized step bound.
    std::ostringstream notes;
    const long long M = p.M;
    const long long K = p.K;
    if (K >= 4 * M) {
        notes << "tighter than Welch: K >= 4M and N >= 2";
    } else if (K >= 3 * M + 1) {
        const double Kd = static_cast<double>(K);
        const double disc = -3.0 * Kd * Kd + (12.0 * M - 6.0) * Kd + 12.0 * M + 1.0;
        const double n_min =
            std::floor((Kd - 1.0 + std::sqrt(disc)) / (2.0 * (Kd - 3.0 * M))) + 1.0;
        notes << "tighter than Welch iff N >= " << static_cast<long long>(n_min)
              << " (3M+1 <= K <= 4M-1)";
    } else {
        notes << "no tighter-than-Welch guarantee (K <= 3M)";
    }
    best.validity_notes = notes.str();
    return best;
}

BoundResult glb_cosine_exact(const QcssParams& p) {
    double lambda0 = 0.0, lambda1 = 0.0;
    leading_eigenvalues(p, lambda0, lambda1);
    const double N = static_cast<double>(p.N);
    const double K = static_cast<double>(p.K);
    const double L = 2.0 * N - 1.0;
    const double c = std::cos(kPi / L);
    const double half_sec2 = 1.0 / (2.0 * c * c);
    const double value = static_cast<double>(p.M) *
                         (N - K * (lambda0 - std::abs(lambda1) * half_sec2) /
                                  (L * K - 1.0 - half_sec2));

    const KBar kb = k_bar(p.M, p.N);
    const bool cond_k = p.K >= kb.value + 1;
    const bool cond_ratio = lambda0 / std::abs(lambda1) < L * K - 1.0;
    std::ostringstream notes;
    notes << "K >= k_bar+1: " << (cond_k ? "yes" : "no")
          << "; lambda0/|lambda1| < (2N-1)K-1: " << (cond_ratio ? "yes" : "no");
    BoundResult r = make_result(BoundKind::glb_cosine_exact, p, value, cond_k && cond_ratio,
                                notes.str());
    r.j = 0;
    return r;
}

BoundResult glb_cosine_asymptotic(const QcssParams& p) {
    const double M = static_cast<double>(p.M);
    const double N = static_cast<double>(p.N);
    const double K = static_cast<double>(p.K);
    const double value = M * N * ((0.5 + 1.0 / (kPi * kPi)) - 3.0 * M / (4.0 * K));
    return make_result(BoundKind::glb_cosine_asymptotic, p, value, true, "asymptotic in N");
}

double sine_q0_closed(long long N, long long m) {
    if (m < 2 || m > 2 * N - 1)
        throw std::invalid_argument("sine_q0_closed: m must satisfy 2 <= m <= 2N-1");
    const double md = static_cast<double>(m);
    const double Nd = static_cast<double>(N);
    const double t = std::tan(kPi / (2.0 * md));
    if (m <= N) return (md / 4.0) * (1.0 - t * t);
    return -(3.0 * md - 4.0 * Nd + 2.0) / 4.0 - (md / 4.0) * t * t +
           ((md - Nd - 1.0) / 2.0) * std::cos(Nd * kPi / md) +
           ((2.0 * md - 2.0 * Nd + 1.0) / 4.0 * t + 3.0 / (4.0 * t)) * std::sin(Nd * kPi / md);
}

BoundResult glb_sine(const QcssParams& p, long long m) {
    if (m < 2 || m > 2 * p.N - 1)
        throw std::invalid_argument("glb_sine: m must satisfy 2 <= m <= 2N-1");
    const double M = static_cast<double>(p.M);
    const double N = static_cast<double>(p.N);
    const double K = static_cast<double>(p.K);
    const double md = static_cast<double>(m);
    const double t2 = std::pow(std::tan(kPi / (2.0 * md)), 2);
    const double denom = 2.0 * K - md * t2;
    // denom is increasing in m, so only K = 1, m = 2 sits at zero; treat
    // rounding-level denominators as nonpositive.
    const bool positive = denom > 1e-12 * K;
    const double q0 = sine_q0_closed(p.N, m);
    const double value = M * (N - (N * (M * N - 1.0) * md * t2 + 2.0 * K * q0) / denom);
    BoundResult r = make_result(BoundKind::glb_sine, p, value, positive,
                                positive ? "" : "2K - m tan^2(pi/2m) <= 0");
    r.m = m;
    return r;
}

BoundResult glb_sine_best(const QcssParams& p) {
    BoundResult best;
    bool have = false;
    for (long long m = 2; m <= 2 * p.N - 1; ++m) {
        BoundResult r = glb_sine(p, m);
        if (!r.valid) continue;
        if (!have || r.value > best.value) {
            best = r;
            have = true;
        }
    }
    if (!have) throw std::domain_error("glb_sine_best: no m with positive denominator");
    return best;
}

double f_r(double r) {
    if (r <= 0.0 || r >= 2.0) throw std::invalid_argument("f_r: requires 0 < r < 2");
    if (r <= 1.0) return r / 4.0;
    return (4.0 - 3.0 * r) / 4.0 + (r - 1.0) / 2.0 * std::cos(kPi / r) +
           3.0 * r / (2.0 * kPi) * std::sin(kPi / r);
}

double L_r(double r) {
    if (r <= 0.0 || r >= 2.0) throw std::invalid_argument("L_r: requires 0 < r < 2");
    const double num = kPi * kPi - 4.0 * r;
    if (r <= 1.0) return num / (4.0 * r - 2.0 * r * r);
    return num / (2.0 * r * (3.0 * r - 2.0) - 4.0 * r * (r - 1.0) * std::cos(kPi / r) -
                  12.0 * r * r / kPi * std::sin(kPi / r));
}

namespace {
struct MinL {
    double value;
    double arg;
};
const MinL& min_L_cached() {
    static const MinL cached = [] {
        MinL m{};
        m.value = grid_refine_minimize([](double r) { return L_r(r); }, 1e-9, 2.0 - 1e-9, 10000,
                                       1e-10, &m.arg);
        return m;
    }();
    return cached;
}
}  // namespace

double min_L() { return min_L_cached().value; }
double min_L_arg() { return min_L_cached().arg; }

BoundResult glb_sine_asymptotic(const QcssParams& p) {
    const double M = static_cast<double>(p.M);
    const double N = static_cast<double>(p.N);
    const double K = static_cast<double>(p.K);
    double r_opt = 0.0;
    const double g_min = grid_refine_minimize(
        [&](double r) { return M * kPi * kPi / (8.0 * K * r) + f_r(r); }, 1e-9, 2.0 - 1e-9, 10000,
        1e-10, &r_opt);
    const double value = M * N * (1.0 - g_min);
    BoundResult res = make_result(BoundKind::glb_sine_asymptotic, p, value, true,
                                  "asymptotic in N");
    res.r = r_opt;
    return res;
}

BoundResult glb_chebyshev(const QcssParams& p) {
    const double M = static_cast<double>(p.M);
    const double N = static_cast<double>(p.N);
    const double K = static_cast<double>(p.K);
    const bool valid = K <= M * N * N;
    const double value = M * (N - std::ceil(kPi * N / std::sqrt(8.0 * K / M)));
    BoundResult r = make_result(BoundKind::glb_chebyshev, p, value, valid,
                                valid ? "" : "requires K <= M N^2");
    if (valid) r.m = chebyshev_default_m(p);
    return r;
}

double chebyshev_tightness_threshold() {
    return kPi * kPi / 4.0 - 1.0 + std::sqrt((kPi * kPi / 8.0 - 1.0) * kPi * kPi / 2.0);
}

namespace {
double tight_ratio(long long M) {
    return static_cast<double>(k_bar_asymptotic(M) + 1) / static_cast<double>(M);
}
}  // namespace

double d1(long long M) { return tight_ratio(M) - kPi * kPi / 4.0; }
double d2(long long M) { return tight_ratio(M) - min_L(); }
double d3(long long M) { return tight_ratio(M) - chebyshev_tightness_threshold(); }

TightnessReport tightness_report(long long M) {
    if (M < 2) throw std::invalid_argument("tightness_report: M must be >= 2");
    TightnessReport t;
    t.M = M;
    t.k_bar_inf = k_bar_asymptotic(M);
    t.d1 = d1(M);
    t.d2 = d2(M);
    t.d3 = d3(M);
    t.cosine_tighter = t.d1 > 0.0;
    t.sine_tighter = t.d2 > 0.0;
    t.chebyshev_tighter = t.d3 > 0.0;
    return t;
}

}  // namespace qcss
