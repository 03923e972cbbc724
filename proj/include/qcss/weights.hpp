#pragma once

#include <Eigen/Dense>
#include <string>

#include "qcss/params.hpp"

namespace qcss {

using Eigen::VectorXd;

/// Simplex membership verdict for a candidate weight vector.
struct SimplexReport {
    bool ok = false;
    double sum = 0.0;
    double min_entry = 0.0;
    Eigen::Index offending_index = -1;  // most negative entry when not ok
    std::string message;
};

/// true iff min entry >= -1e-12 and |sum - 1| <= 1e-12.
SimplexReport validate_simplex(const VectorXd& w);

/// Throws std::invalid_argument with the diagnostic when w fails validate_simplex.
void require_simplex(const VectorXd& w, const char* who);

/// All entries 1/(2N-1); the weight that collapses the GLB to the Welch bound.
VectorXd uniform_weights(long long N);

/// First m entries 1/m, rest zero; 1 <= m <= N.
VectorXd step_weights(long long N, long long m);

/// w_i = (1/(2N-1)) (1 + cos(2 pi (i+j)/(2N-1)) / cos(pi/(2N-1))).
/// A raised single-frequency cosine; touches zero at two indices. j is
/// canonicalized mod 2N-1 and rotates the vector without changing any
/// spectral magnitude, so every derived bound is j-invariant.
VectorXd cosine_weights(long long N, long long j = 0);

/// Positive cycle of a sine: w_i = tan(pi/2m) sin(pi i/m) for i < m, zero
/// after; 2 <= m <= 2N-1. w_0 = 0 by the formula.
VectorXd sine_weights(long long N, long long m);

/// Chebyshev-derived weight: with cos(phi) = 1 - K/(M N^2) and
/// phi0 = (pi - m phi + phi)/2,
///   w_i = sin(phi/2)/sin(m phi/2) * sin(phi0 + i phi) for i < m.
/// Requires K <= M N^2, m even, m phi < pi + phi.
VectorXd chebyshev_weights(const QcssParams& params, long long m);

/// phi = arccos(1 - K/(M N^2)).
double chebyshev_phi(const QcssParams& params);

/// Default order floor(pi/phi)+1, nudged to the nearest even value that
/// still satisfies m phi < pi + phi.
long long chebyshev_default_m(const QcssParams& params);

/// Text serialization: one decimal value per line at 17 significant
/// digits, 2N-1 lines.
void write_weight_file(const std::string& path, const VectorXd& w);
VectorXd read_weight_file(const std::string& path);

}  // namespace qcss
