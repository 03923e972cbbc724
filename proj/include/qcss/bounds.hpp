#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "qcss/params.hpp"

namespace qcss {

using Eigen::VectorXd;

enum class BoundKind {
    welch,
    glb_general,
    glb_simplified,
    glb_step,
    glb_cosine_exact,
    glb_cosine_asymptotic,
    glb_sine,
    glb_sine_asymptotic,
    glb_chebyshev,
};

const char* bound_kind_name(BoundKind kind);

/// A lower bound on delta_max^2 together with its provenance. `valid`
/// means the stated preconditions of `kind` hold for `params`, i.e. the
/// value may be trusted as a lower bound; invalid results still carry
/// the raw formula value for diagnostics.
struct BoundResult {
    double value = 0.0;
    BoundKind kind = BoundKind::welch;
    QcssParams params;
    std::optional<long long> m;  // weight order for step / sine / chebyshev
    std::optional<long long> j;  // rotation for the cosine family
    std::optional<double> r;     // asymptotic ratio for the sine family
    bool valid = true;
    std::string validity_notes;
};

/// floor(4 (MN-1) N sin^2(pi/(2(2N-1)))) plus the fractional remainder
/// epsilon; K >= k_bar+1 is necessary for any GLB to beat Welch.
struct KBar {
    long long value = 0;
    double eps = 0.0;
};
KBar k_bar(long long M, long long N);

/// Large-N limit floor(pi^2 M / 4).
long long k_bar_asymptotic(long long M);

/// delta_max^2 >= M^2 N^2 (K/M - 1) / (K(2N-1) - 1). Negative (vacuous
/// but valid) when K < M.
BoundResult welch_bound(const QcssParams& params);

/// The generalized Levenshtein bound functional at an arbitrary simplex
/// weight: M [ N - Q(w, N(MN-1)/K) / (1 - (1/K) sum w_i^2) ].
BoundResult glb(const QcssParams& params, const VectorXd& w);

/// Weaker form M [ N - Q(w, M N^2 / K) ].
BoundResult glb_simplified(const QcssParams& params, const VectorXd& w);

/// Closed form of the GLB at the step weight of order m:
/// (3MNKm - 3M^2N^2 - MK(m^2-1)) / (3(mK-1)), 1 <= m <= N.
BoundResult glb_step(const QcssParams& params, long long m);
BoundResult glb_step_best(const QcssParams& params);

/// GLB at the raised-cosine weight, in terms of lambda_0 and lambda_1
/// only. Conditions K >= k_bar+1 and lambda_0/|lambda_1| < (2N-1)K - 1
/// gate validity; the value is computed either way.
BoundResult glb_cosine_exact(const QcssParams& params);

/// Large-N form M N [ (1/2 + 1/pi^2) - 3M/(4K) ].
BoundResult glb_cosine_asymptotic(const QcssParams& params);

/// Closed form Q(w, 0) of the sine weight of order m (piecewise in m).
double sine_q0_closed(long long N, long long m);

/// GLB at the sine weight of order m; requires the positive denominator
/// 2K - m tan^2(pi/2m) > 0.
BoundResult glb_sine(const QcssParams& params, long long m);
BoundResult glb_sine_best(const QcssParams& params);

/// Large-N limit of Q(w,0)/N for the sine family at m ~ rN.
double f_r(double r);

/// Tightness threshold curve: the sine-family GLB beats Welch iff
/// K/M > min L(r).
double L_r(double r);
double min_L();
double min_L_arg();

/// M N [ 1 - min_{0<r<2} ( M pi^2/(8Kr) + f(r) ) ], with the minimizing r
/// recorded in the result.
BoundResult glb_sine_asymptotic(const QcssParams& params);

/// M ( N - ceil(pi N / sqrt(8K/M)) ), valid for K <= M N^2.
BoundResult glb_chebyshev(const QcssParams& params);

/// pi^2/4 - 1 + sqrt((pi^2/8 - 1) pi^2/2), about 2.541303.
double chebyshev_tightness_threshold();

double d1(long long M);
double d2(long long M);
double d3(long long M);

/// Which of the three asymptotic tightness conditions hold at this M.
struct TightnessReport {
    long long M = 2;
    long long k_bar_inf = 0;  // floor(pi^2 M / 4)
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
    bool cosine_tighter = false;     // d1 > 0 (holds for all M >= 2)
    bool sine_tighter = false;       // d2 > 0
    bool chebyshev_tighter = false;  // d3 > 0
};
TightnessReport tightness_report(long long M);

}  // namespace qcss
