#include "qcss/optimizer.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qcss/circulant.hpp"
#include "qcss/weights.hpp"

namespace qcss {

namespace {
constexpr double kPi = std::numbers::pi;

void leading_eigenvalues(const QcssParams& p, double& lambda0, double& lambda1) {
    const double a = p.a();
    const double N = static_cast<double>(p.N);
    const double s = std::sin(kPi / (2.0 * (2.0 * N - 1.0)));
    lambda0 = a + N * (N - 1.0);
    lambda1 = a - 1.0 / (4.0 * s * s);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// mt19937_64 is bit-exact across platforms; the distributions in
// <random> are not, so uniforms and normals are derived by hand.
struct TrialRng {
    std::mt19937_64 gen;
    bool has_spare = false;
    double spare = 0.0;
    explicit TrialRng(std::uint64_t s) : gen(s) {}
    double uniform01() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }  // [0, 1)
    double normal() {
        if (has_spare) {
            has_spare = false;
            return spare;
        }
        const double u1 = 1.0 - uniform01();  // (0, 1]
        const double u2 = uniform01();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        spare = rad * std::sin(2.0 * kPi * u2);
        has_spare = true;
        return rad * std::cos(2.0 * kPi * u2);
    }
};

enum class TrialKind { unstructured = 0, case_i = 1, case_ii = 2 };

struct TrialValues {
    double wQe = 0.0;
    double eQe = 0.0;
    double ew = 0.0;
    double ee = 0.0;
};

struct GammaTerms {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double lhs = 0.0;
};

GammaTerms combine(double wQw, double ww, double K, const TrialValues& t) {
    GammaTerms g;
    g.alpha = wQw * t.ee - ww * t.eQe;
    g.beta = wQw * t.ew - ww * t.wQe;
    g.gamma = (g.alpha + 2.0 * g.beta) / K;
    g.lhs = 2.0 * t.wQe + t.eQe + g.gamma;
    return g;
}
}  // namespace

CaseLabel classify_case(const QcssParams& p) {
    CaseLabel c;
    leading_eigenvalues(p, c.lambda0, c.lambda1);
    const KBar kb = k_bar(p.M, p.N);
    c.k_condition_holds = p.K >= kb.value + 1;
    const double L = static_cast<double>(p.length());
    const double K = static_cast<double>(p.K);
    c.ratio_condition_holds = c.lambda0 / std::abs(c.lambda1) < L * K - 1.0;

    const double N = static_cast<double>(p.N);
    const double M = static_cast<double>(p.M);
    const double s2 = std::pow(std::sin(kPi / (2.0 * L)), 2);
    c.finite_n_sufficient_holds =
        K > 4.0 * (M * N - 1.0) * N * s2 + (4.0 * N * (N - 1.0) * s2 + 1.0) / L;

    c.label = (c.k_condition_holds && c.ratio_condition_holds) ? GlbCase::case1_decreasing
                                                               : GlbCase::case2_increasing;
    return c;
}

double optimal_r(const QcssParams& p) {
    const CaseLabel c = classify_case(p);
    if (c.label == GlbCase::case2_increasing) return 0.0;
    return 1.0 / (2.0 * std::cos(kPi / static_cast<double>(p.length())));
}

Problem1Solution solve_problem1(const QcssParams& p) {
    Problem1Solution sol;
    sol.label = classify_case(p);
    if (sol.label.label == GlbCase::case1_decreasing) {
        sol.weight = cosine_weights(p.N, 0);
        sol.bound = glb_cosine_exact(p);
    } else {
        sol.weight = uniform_weights(p.N);
        sol.bound = welch_bound(p);
    }
    const double functional = glb(p, sol.weight).value;
    const double scale = std::max({std::abs(functional), std::abs(sol.bound.value), 1.0});
    if (std::abs(functional - sol.bound.value) > 1e-10 * scale)
        throw std::logic_error("solve_problem1: closed-form bound disagrees with the GLB functional");
    return sol;
}

double fqp_objective(const QcssParams& p, const VectorXd& x) {
    if (x.size() != p.length())
        throw std::invalid_argument("fqp_objective: vector length does not match 2N-1");
    require_simplex(x, "fqp_objective");
    const double denom = 1.0 - x.squaredNorm() / static_cast<double>(p.K);
    if (denom <= 0.0) throw std::domain_error("fqp_objective: 1 - (1/K) x^T x must be positive");
    return quadratic_form_freq(x, p) / denom;
}

GammaDecomposition gamma_decomposition(const QcssParams& p, const VectorXd& w,
                                       const VectorXd& e) {
    if (w.size() != p.length() || e.size() != p.length())
        throw std::invalid_argument("gamma_decomposition: vector length does not match 2N-1");
    if (std::abs(e.sum()) > 1e-12 * std::max(1.0, e.lpNorm<1>()))
        throw std::invalid_argument("gamma_decomposition: perturbation must be zero-sum");

    const double a = p.a();
    const double K = static_cast<double>(p.K);
    double wQw, wQe, eQe;
    if (p.N <= 512) {
        const MatrixXd Q = circulant_matrix(p);
        const VectorXd Qw = Q * w;
        wQw = w.dot(Qw);
        wQe = e.dot(Qw);
        eQe = e.dot(Q * e);
    } else {
        wQw = bilinear_form_time(w, w, a);
        wQe = bilinear_form_time(w, e, a);
        eQe = bilinear_form_time(e, e, a);
    }
    TrialValues t{wQe, eQe, e.dot(w), e.squaredNorm()};
    const GammaTerms g = combine(wQw, w.squaredNorm(), K, t);

    GammaDecomposition out;
    out.alpha = g.alpha;
    out.beta = g.beta;
    out.gamma = g.gamma;
    out.lhs = g.lhs;
    const double Dw = 1.0 - w.squaredNorm() / K;
    out.expanded = (2.0 * t.wQe + t.eQe) * Dw + wQw * (2.0 * t.ew + t.ee) / K;
    return out;
}

namespace {

// Precomputed state for the perturbation probe around the cosine weight.
struct ProbeEngine {
    QcssParams p;
    long long L = 0;
    long long N = 0;
    double K = 0.0;
    double a = 0.0;
    double c = 0.0;  // cos(pi/L)
    double feas_tol = 0.0;
    double norm_cap = 0.0;
    VectorXd w;
    VectorXd lam;
    // Dense off-diagonal part of Q_a (N <= 512). Bilinear forms are
    // evaluated as x'Ty + a x'y: keeping the a-diagonal out of the matrix
    // product avoids cancellation against the large diagonal.
    MatrixXd T;
    MatrixXd Fre, Fim;  // rows 1..N-1 of the DFT matrix
    bool dense = false;
    double wQw_t = 0.0, ww_t = 0.0, Dw = 0.0, f_w = 0.0;
    double w_max = 0.0;
    double lambda0 = 0.0, lambda1 = 0.0;
    double wQw_s = 0.0, ww_s = 0.0;

    ProbeEngine(const QcssParams& params, double cap) : p(params), norm_cap(cap) {
        L = p.length();
        N = p.N;
        K = static_cast<double>(p.K);
        a = p.a();
        c = std::cos(kPi / static_cast<double>(L));
        feas_tol = 1e-12 / static_cast<double>(L);
        w = cosine_weights(N, 0);
        lam = spectrum_closed_form(N, a);
        leading_eigenvalues(p, lambda0, lambda1);
        dense = N <= 512;
        if (dense) {
            T.resize(L, L);
            for (long long s = 0; s < L; ++s) {
                T(s, s) = 0.0;
                for (long long t = s + 1; t < L; ++t) {
                    const double v = static_cast<double>(tau(s, t, N));
                    T(s, t) = v;
                    T(t, s) = v;
                }
            }
            wQw_t = w.dot(T * w) + a * w.squaredNorm();
        } else {
            wQw_t = bilinear_form_time(w, w, a);
        }
        ww_t = w.squaredNorm();
        w_max = w.maxCoeff();
        Dw = 1.0 - ww_t / K;
        f_w = wQw_t / Dw;
        wQw_s = (lambda0 + lambda1 / (2.0 * c * c)) / static_cast<double>(L);
        ww_s = (1.0 + 1.0 / (2.0 * c * c)) / static_cast<double>(L);
        Fre.resize(N - 1, L);
        Fim.resize(N - 1, L);
        for (long long l = 1; l <= N - 1; ++l)
            for (long long t = 0; t < L; ++t) {
                const double ang =
                    -2.0 * kPi * static_cast<double>((l * t) % L) / static_cast<double>(L);
                Fre(l - 1, t) = std::cos(ang);
                Fim(l - 1, t) = std::sin(ang);
            }
    }

    bool feasible(const VectorXd& e) const { return (w + e).minCoeff() >= -feas_tol; }

    // Scales e to a norm in (0, norm_cap], rejects directions that are
    // negative at the weight's exact zeros, and halves until entrywise
    // feasible. Returns false to request a resample.
    bool screen_and_shrink(TrialRng& rng, VectorXd& e) const {
        const double nrm = e.norm();
        if (!(nrm > 0.0)) return false;
        e *= norm_cap * (1.0 - rng.uniform01()) / nrm;
        if (e[N - 1] < -feas_tol || e[N] < -feas_tol) return false;
        for (int shrink = 0; shrink < 200 && !feasible(e); ++shrink) e *= 0.5;
        return feasible(e);
    }

    bool gen_unstructured(TrialRng& rng, VectorXd& e, long long& resampled) const {
        for (int attempt = 0; attempt < 500; ++attempt) {
            e.resize(L);
            for (long long i = 0; i < L; ++i) e[i] = rng.normal();
            e.array() -= e.mean();
            if (screen_and_shrink(rng, e)) return true;
            ++resampled;
        }
        return false;
    }

    bool gen_case_i(TrialRng& rng, VectorXd& e, long long& resampled) const {
        const long long pool = N - 2;  // indices 2..N-1
        if (pool < 1) return false;
        for (int attempt = 0; attempt < 500; ++attempt) {
            e = VectorXd::Zero(L);
            const long long count = 1 + static_cast<long long>(rng.gen() % 6);
            for (long long k = 0; k < count; ++k) {
                const long long idx = 2 + static_cast<long long>(rng.gen() % pool);
                const double re = rng.normal();
                const double im = rng.normal();
                for (long long t = 0; t < L; ++t) {
                    const double ang =
                        2.0 * kPi * static_cast<double>((t * idx) % L) / static_cast<double>(L);
                    e[t] += (2.0 / static_cast<double>(L)) *
                            (re * std::cos(ang) - im * std::sin(ang));
                }
            }
            e.array() -= e.mean();
            if (screen_and_shrink(rng, e)) return true;
            ++resampled;
        }
        return false;
    }

    bool gen_case_ii(TrialRng& rng, VectorXd& e, long long& resampled) const {
        const double Ld = static_cast<double>(L);
        const double band_lo = (0.5 + 1.0 / Ld) * kPi;
        const double band_hi = (1.5 - 1.0 / Ld) * kPi;
        for (int attempt = 0; attempt < 500; ++attempt) {
            const double psi = band_lo + rng.uniform01() * (band_hi - band_lo);
            const double t_cap =
                std::min(-2.0 * std::cos(psi) - 1e-9, norm_cap * Ld * c * std::sqrt(2.0 / Ld));
            if (t_cap <= 0.0) {
                ++resampled;
                continue;
            }
            const double t = t_cap * (1.0 - rng.uniform01());
            e.resize(L);
            for (long long i = 0; i < L; ++i)
                e[i] = t / (Ld * c) *
                       std::cos(2.0 * kPi * static_cast<double>(i) / Ld + psi);
            e.array() -= e.mean();
            if (e[N - 1] < -feas_tol || e[N] < -feas_tol) {
                ++resampled;
                continue;
            }
            VectorXd scaled = e;  // norm already implied by t; only shrink to feasibility
            for (int shrink = 0; shrink < 200 && !feasible(scaled); ++shrink) scaled *= 0.5;
            if (!feasible(scaled)) {
                ++resampled;
                continue;
            }
            e = scaled;
            return true;
        }
        return false;
    }
};
}  // namespace

PerturbationReport local_min_check(const QcssParams& p, long long trials, double norm_cap,
                                   std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("local_min_check: trials must be >= 1");
    if (!(norm_cap > 0.0)) throw std::invalid_argument("local_min_check: norm_cap must be > 0");

    ProbeEngine eng(p, norm_cap);
    PerturbationReport rep;
    rep.params = p;
    rep.seed = seed;
    rep.trials = trials;
    rep.norm_cap = norm_cap;
    rep.objective_at_w = eng.f_w;
    rep.min_norm = std::numeric_limits<double>::infinity();
    const KBar kb = k_bar(p.M, p.N);
    if (p.K != kb.value + 1) {
        std::ostringstream os;
        os << "K = " << p.K << " differs from k_bar+1 = " << kb.value + 1
           << "; the perturbation analysis targets the K = k_bar+1 regime";
        rep.warning = os.str();
    }

    PerturbationCaseStats* stats[3] = {&rep.unstructured, &rep.case_i, &rep.case_ii};
    for (auto* s : stats) s->min_norm = std::numeric_limits<double>::infinity();

    const long long per_kind = trials / 3;
    // N = 2 has no interior spectral indices, so the Case I class is empty;
    // its budget goes to the unstructured class.
    const long long case_i_count = p.N >= 3 ? per_kind : 0;
    const long long counts[3] = {trials - case_i_count - per_kind, case_i_count, per_kind};

    VectorXd e(eng.L);
    for (int kind = 0; kind < 3; ++kind) {
        PerturbationCaseStats& st = *stats[kind];
        for (long long trial = 0; trial < counts[kind]; ++trial) {
            TrialRng rng(splitmix64(splitmix64(seed + 0x632BE59BD9B4E019ull *
                                                          static_cast<std::uint64_t>(kind + 1)) +
                                    static_cast<std::uint64_t>(trial)));
            bool ok = false;
            switch (static_cast<TrialKind>(kind)) {
                case TrialKind::unstructured: ok = eng.gen_unstructured(rng, e, st.resampled); break;
                case TrialKind::case_i: ok = eng.gen_case_i(rng, e, st.resampled); break;
                case TrialKind::case_ii: ok = eng.gen_case_ii(rng, e, st.resampled); break;
            }
            if (!ok) continue;
            ++st.trials;

            const double nrm = e.norm();
            st.min_norm = std::min(st.min_norm, nrm);
            st.max_norm = std::max(st.max_norm, nrm);

            // Route one: direct quadratic forms in the time domain.
            TrialValues tv;
            tv.ew = e.dot(eng.w);
            tv.ee = e.squaredNorm();
            if (eng.dense) {
                const VectorXd g = eng.T * e;
                tv.wQe = eng.w.dot(g) + eng.a * tv.ew;
                tv.eQe = e.dot(g) + eng.a * tv.ee;
            } else {
                tv.wQe = bilinear_form_time(eng.w, e, eng.a);
                tv.eQe = bilinear_form_time(e, e, eng.a);
            }
            const GammaTerms direct = combine(eng.wQw_t, eng.ww_t, eng.K, tv);

            // Cancellation mass of the direct route: the bilinear forms sum
            // O(N) terms of magnitude up to (N-1)|e_t| + a w_t|e_t| that
            // largely cancel, so "relative" agreement is measured against
            // this mass, not against the (possibly vanishing) net value.
            const double e_l1 = e.lpNorm<1>();
            const double n1 = static_cast<double>(eng.N - 1);
            const double mass_wQe = e_l1 * (n1 + eng.a * eng.w_max);
            const double mass_eQe = e_l1 * e_l1 * n1 + eng.a * tv.ee;
            const double mass_ew = e_l1 * eng.w_max;
            const double mass_alpha = eng.wQw_t * tv.ee + eng.ww_t * mass_eQe;
            const double mass_beta = eng.wQw_t * mass_ew + eng.ww_t * mass_wQe;
            const double mass_lhs =
                2.0 * mass_wQe + mass_eQe + (mass_alpha + 2.0 * mass_beta) / eng.K;

            // Route two: the spectral closed forms of the cosine weight.
            const VectorXd Ere = eng.Fre * e;
            const VectorXd Eim = eng.Fim * e;
            const double Ld = static_cast<double>(eng.L);
            TrialValues sv;
            double sum_lam = 0.0, sum_abs = 0.0;
            for (long long i = 0; i < eng.N - 1; ++i) {
                const double mag2 = Ere[i] * Ere[i] + Eim[i] * Eim[i];
                sum_lam += eng.lam[i + 1] * mag2;
                sum_abs += mag2;
            }
            sv.eQe = 2.0 / Ld * sum_lam;
            sv.ee = 2.0 / Ld * sum_abs;
            sv.wQe = eng.lambda1 * Ere[0] / (Ld * eng.c);
            sv.ew = Ere[0] / (Ld * eng.c);
            const GammaTerms spectral = combine(eng.wQw_s, eng.ww_s, eng.K, sv);

            const double scale =
                std::max({std::abs(direct.lhs), std::abs(spectral.lhs), mass_lhs});
            if (scale > 0.0) {
                const double mismatch = std::abs(direct.lhs - spectral.lhs) / scale;
                rep.identity_max_mismatch = std::max(rep.identity_max_mismatch, mismatch);
            }

            const double Dx = 1.0 - (eng.ww_t + 2.0 * tv.ew + tv.ee) / eng.K;
            const double diff = direct.lhs / (eng.Dw * Dx);  // f(w+e) - f(w), expanded form
            st.max_violation = std::min(st.max_violation, diff);
        }
        rep.min_norm = std::min(rep.min_norm, st.min_norm);
        rep.max_norm = std::max(rep.max_norm, st.max_norm);
        rep.max_violation = std::min(rep.max_violation, st.max_violation);
    }
    if (!std::isfinite(rep.min_norm)) rep.min_norm = 0.0;
    for (auto* s : stats)
        if (!std::isfinite(s->min_norm)) s->min_norm = 0.0;
    rep.max_violation_rel = rep.max_violation / rep.objective_at_w;
    return rep;
}

}  // namespace qcss
