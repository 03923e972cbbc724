#pragma once

#include <Eigen/Dense>

#include "qcss/params.hpp"

namespace qcss {

using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// Cyclic distance min{|t-s|, 2N-1-|t-s|} between indices of the
/// (2N-1)-point circulant; this is the off-diagonal entry Q_a(s,t).
/// Requires 0 <= s,t <= 2N-2; the result lies in [0, N-1].
long long tau(long long s, long long t, long long N);

/// First column of Q_a: [a, 1, 2, ..., N-1, N-1, ..., 2, 1].
VectorXd q_first_column(const QcssParams& params);

/// Dense realization of Q_a for oracle use. Only permitted for N <= 512;
/// production bound formulas never touch it.
MatrixXd circulant_matrix(const QcssParams& params);

/// Naive O(L^2) discrete Fourier transform with the exp(-2*pi*i*m*n/L)
/// kernel. Angles are reduced modulo L before the trig call so large
/// index products do not lose precision.
VectorXcd naive_dft(const VectorXd& x);
VectorXcd naive_dft(const VectorXcd& x);

/// Inverse transform, (1/L) F^H X.
VectorXcd naive_idft(const VectorXcd& X);

/// Quadratic form w^T Q_a w by the direct double sum (time domain).
/// O(N^2); oracle role. The length of w fixes N via len = 2N-1.
double quadratic_form_time(const VectorXd& w, double a);

/// Bilinear form x^T Q_a y by the direct double sum (time domain).
double bilinear_form_time(const VectorXd& x, const VectorXd& y, double a);

/// Eigenvalues of Q_a by the closed form:
///   lambda_0 = a + N(N-1),
///   lambda_l = a - (1 - (-1)^l cos(pi l/(2N-1))) / (2 sin^2(pi l/(2N-1))).
/// Entries l and 2N-1-l are mirrored from the same evaluation, so the
/// conjugate symmetry lambda_l = lambda_{2N-1-l} holds bit-exactly.
VectorXd spectrum_closed_form(const QcssParams& params);
VectorXd spectrum_closed_form(long long N, double a);

/// Independent spectrum oracle: the naive DFT of q_first_column. Throws
/// if any residual imaginary part exceeds 1e-9 * max|lambda|.
VectorXd spectrum_dft(const QcssParams& params);

/// Q(w, a) evaluated spectrally: (1/(2N-1)) sum_l lambda_l |v_l|^2 with
/// v = DFT(w) and the closed-form spectrum for the given params.
double quadratic_form_freq(const VectorXd& w, const QcssParams& params);
double quadratic_form_freq(const VectorXd& w, long long N, double a);

/// sum_i w_i^2 evaluated spectrally: (1/(2N-1)) sum_l |v_l|^2.
double sum_squares_freq(const VectorXd& w);

}  // namespace qcss
