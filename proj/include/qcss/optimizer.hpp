#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "qcss/bounds.hpp"
#include "qcss/params.hpp"

namespace qcss {

using Eigen::VectorXd;

/// Monotonicity regime of the reduced frequency-domain objective
/// (lambda_0 + 2 lambda_1 r^2) / (2N-1 - 1/K - 2r^2/K) in r^2.
enum class GlbCase {
    case1_decreasing,  // K >= k_bar+1 and lambda_0/|lambda_1| < (2N-1)K - 1
    case2_increasing,
};

struct CaseLabel {
    GlbCase label = GlbCase::case2_increasing;
    double lambda0 = 0.0;
    double lambda1 = 0.0;
    bool k_condition_holds = false;      // K >= k_bar+1 (equivalently lambda_1 < 0)
    bool ratio_condition_holds = false;  // lambda_0/|lambda_1| < (2N-1)K - 1
    bool finite_n_sufficient_holds = false;  // the explicit finite-N sufficient condition
};

CaseLabel classify_case(const QcssParams& params);

/// Optimal magnitude of v_1: 1/(2 cos(pi/(2N-1))) in Case 1, 0 in Case 2.
double optimal_r(const QcssParams& params);

struct Problem1Solution {
    VectorXd weight;
    BoundResult bound;
    CaseLabel label;
};

/// Case 1 -> raised-cosine weight and its closed-form GLB; Case 2 ->
/// uniform weight and the Welch bound. The returned bound is checked
/// against the general GLB functional at the returned weight.
Problem1Solution solve_problem1(const QcssParams& params);

/// f(x) = x^T Q_a x / (1 - (1/K) x^T x) with a = N(MN-1)/K.
double fqp_objective(const QcssParams& params, const VectorXd& x);

/// alpha = w'Qw e'e - w'w e'Qe, beta = w'Qw e'w - w'w w'Qe,
/// gamma = (alpha + 2 beta)/K, and lhs = 2 w'Qe + e'Qe + gamma.
/// lhs equals (f(w+e) - f(w)) (1 - w'w/K)(1 - (w+e)'(w+e)/K).
struct GammaDecomposition {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double lhs = 0.0;
    double expanded = 0.0;  // same quantity grouped as the direct f-difference expansion
};

GammaDecomposition gamma_decomposition(const QcssParams& params, const VectorXd& w,
                                       const VectorXd& e);

struct PerturbationCaseStats {
    long long trials = 0;
    long long resampled = 0;
    double max_violation = 0.0;  // most negative f(w+e) - f(w) in this class
    double min_norm = 0.0;
    double max_norm = 0.0;
};

/// Outcome of the randomized local-minimality probe around the
/// raised-cosine weight. max_violation is data, not a verdict: the
/// underlying claim is asymptotic and this tool only measures.
struct PerturbationReport {
    QcssParams params;
    std::uint64_t seed = 0;
    long long trials = 0;
    double norm_cap = 0.0;
    double objective_at_w = 0.0;     // f(w)
    double max_violation = 0.0;      // most negative f(w+e) - f(w) observed
    double max_violation_rel = 0.0;  // max_violation / f(w)
    double identity_max_mismatch = 0.0;  // scaled gap between the two evaluation routes
    double min_norm = 0.0;
    double max_norm = 0.0;
    PerturbationCaseStats unstructured;  // zero-sum gaussian directions
    PerturbationCaseStats case_i;        // spectral support in {2,...,N-1}
    PerturbationCaseStats case_ii;       // E_1-only, phase in the feasible band
    std::string warning;                 // set when K != k_bar+1
};

/// Runs `trials` feasible perturbations (split over the three classes)
/// with norms in (0, norm_cap], deterministic in (params, trials,
/// norm_cap, seed). Every trial evaluates the perturbation inequality
/// through the direct quadratic forms and through the closed-form
/// spectral identities of the cosine weight, and records the largest
/// scaled disagreement.
PerturbationReport local_min_check(const QcssParams& params, long long trials, double norm_cap,
                                   std::uint64_t seed);

}  // namespace qcss
