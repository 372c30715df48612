#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "synergy/rational.hpp"

namespace synergy {

/// T = H_K - H_Gamma, 0 <= Gamma <= K.
Rational achievable_T(int users, int gamma);

struct OuterBound {
  Rational value;    ///< max(raw, 0)
  Rational raw;      ///< max over s of H_s - s M / floor(N / s)
  int argmax_s = 1;  ///< smallest maximizing s
  bool clamped = false;
};

/// Lower bound on T*: maximum of H_s - s M / floor(N/s) over
/// s in {1, ..., min(floor(N/M), K)}, evaluated exactly.
OuterBound outer_bound(int users, int files, const Rational& cache);

/// d = (1 - gamma) / T for Gamma < K.
Rational dof(int users, int files, const Rational& cache);

/// (1 - Gamma/K) / (H_K - H_Gamma) in double precision; fine for K in the millions.
double dof_double(unsigned long users, unsigned long gamma);

struct BoundReport {
  int users = 0;
  int files = 0;
  Rational cache;
  int gamma = 0;
  Rational cache_fraction;  ///< gamma = M / N
  Rational achievable;
  Rational lower;
  Rational gap;             ///< achievable / lower
  Rational dof;
  int argmax_s = 1;
};

BoundReport bound_report(int users, int files, int gamma);

struct GapCertificate {
  std::vector<BoundReport> rows;  ///< ordered by (K, Gamma)
  Rational max_gap;
  int max_users = 0;
  int max_gamma = 0;
};

/// Every K in [2..K_max], N = K, Gamma in [1..K-1]. Rows are computed in
/// parallel and collected in order. Throws CertificateViolation if any exact
/// ratio reaches 4.
GapCertificate gap_certificate(int max_users);

struct SynergyReport {
  int users = 0;
  int gamma = 0;
  Rational cache_fraction;
  double d = 0;      ///< (1 - gamma) / (H_K - H_Gamma)
  double d_ss = 0;   ///< (1 - gamma) / T_ss = gamma + 1/K
  double d_mat = 0;  ///< 1 / H_K
  double margin = 0; ///< d - (d_ss + d_mat)
  Rational t_ss;     ///< K (1 - gamma) / (1 + K gamma)
};

/// Gamma in [1..K-1].
SynergyReport synergy(int users, int gamma);

/// exp(-(G - eps_K + eps_inf)): cache fraction needed for d >= 1/G.
double gamma_for_gap(double gap, unsigned long users);

/// Smallest Gamma in [0..K-1] with (1 - Gamma/K) / (H_K - H_Gamma) >= 1/G, by exhaustive search.
std::optional<unsigned long> smallest_gamma_for_gap(double gap, unsigned long users);

/// f(gamma) = (ln(1/gamma) + eps_2 - eps_inf) / (1 - gamma).
double case2_f(double gamma);

struct Case2Report {
  double f_low = 0;   ///< f(1/36)
  double f_high = 0;  ///< f(1/2)
  double grid_max = 0;
  double grid_argmax = 0;
  std::size_t points = 0;
};

/// Evaluates f on `points` evenly spaced values over [1/36, 1/2] and checks
/// that the grid maximum does not exceed the larger endpoint value (+1e-9) and
/// that both endpoints are below 4. Throws CheckFailed naming the offending gamma.
Case2Report case2_endpoint_check(std::size_t points = 10000);

struct Case3Report {
  Rational max_value;  ///< largest (H_K - H_Gamma) / (1 - gamma) seen
  int users = 0;
  int gamma = 0;
  std::size_t cells = 0;
};

/// (H_K - H_Gamma) / (1 - Gamma/K) < 2 exactly, for all K <= K_max and
/// K/2 <= Gamma <= K-1. Throws CheckFailed.
Case3Report case3_check(int max_users);

}  // namespace synergy
