#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qcss/bounds.hpp"
#include "qcss/params.hpp"

namespace qcss {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

/// K complex matrices of order M x N. In unimodular mode every entry
/// must have magnitude 1 within 1e-12 (the complex roots-of-unity model
/// of the bounds); general mode admits arbitrary complex entries.
struct SequenceSet {
    std::vector<MatrixXcd> matrices;
    bool unimodular = true;

    long long K() const { return static_cast<long long>(matrices.size()); }
    long long M() const { return matrices.empty() ? 0 : matrices.front().rows(); }
    long long N() const { return matrices.empty() ? 0 : matrices.front().cols(); }

    /// Throws unless all matrices share one shape (and entries are
    /// unimodular when the flag says so).
    void validate() const;
};

/// Aperiodic correlation of a and b at shift tau (three-branch
/// definition; zero for |tau| >= N).
std::complex<double> aperiodic_xcorr(const VectorXcd& a, const VectorXcd& b, long long tau);

/// Sum over rows m of the per-row aperiodic correlations at shift tau.
std::complex<double> correlation_sum(const MatrixXcd& Cmu, const MatrixXcd& Cnu, long long tau);

/// Correlation tolerances of a set: delta_a over autos (0 < tau <= N-1),
/// delta_c over ordered cross pairs (0 <= tau <= N-1), delta_max their max.
struct ToleranceReport {
    double delta_a = 0.0;
    double delta_c = 0.0;
    double delta_max = 0.0;
    bool delta_c_defined = false;  // false for K = 1 (reported as 0)
    long long arg_a_mu = -1, arg_a_tau = -1;
    long long arg_c_mu = -1, arg_c_nu = -1, arg_c_tau = -1;
};

ToleranceReport tolerances(const SequenceSet& set);

/// Golay complementary pair of length n = 2^k by recursive doubling
/// (a|b, a|-b) from ([1],[1]). The zero-autocorrelation-sum property is
/// verified before returning.
struct GolayPair {
    VectorXcd a;
    VectorXcd b;
};

GolayPair golay_pair(long long n);

/// Classical mate (reverse-conjugate of b, negated reverse-conjugate of
/// a); together with the original it forms a K=2, M=2 perfect set. The
/// vanishing cross-correlation sums are verified before returning.
GolayPair golay_mate(const GolayPair& pair);

/// Deterministic random set with entries drawn from the q-th roots of
/// unity.
SequenceSet random_qcss(long long K, long long M, long long N, long long alphabet_order,
                        std::uint64_t seed);

/// Comparison of measured delta_max^2 against a list of claimed lower
/// bounds. A violation of a valid bound indicates an implementation bug
/// (every bound here is a proven lower bound).
struct BoundCheck {
    BoundResult bound;
    double slack = 0.0;  // delta_max^2 - bound.value
    bool holds = true;   // slack >= -1e-9 (always true for skipped/invalid)
    bool checked = false;  // false when bound.valid is false
};

struct VerifyReport {
    double delta_max = 0.0;
    double delta_max_sq = 0.0;
    std::vector<BoundCheck> checks;
    long long violations = 0;
};

VerifyReport verify_bounds(const SequenceSet& set, const std::vector<BoundResult>& results);

}  // namespace qcss
