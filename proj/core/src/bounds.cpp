#include "synergy/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "synergy/combinatorics.hpp"
#include "synergy/errors.hpp"

namespace synergy {

Rational achievable_T(int users, int gamma) {
  if (users < 0 || gamma < 0 || gamma > users) throw InvalidConfig("achievable_T: need 0 <= Gamma <= K");
  return harmonic(static_cast<unsigned long>(users)) - harmonic(static_cast<unsigned long>(gamma));
}

OuterBound outer_bound(int users, int files, const Rational& cache) {
  if (users < 1 || files < users) throw InvalidConfig("outer_bound: need 1 <= K <= N");
  if (cache.sign() < 0) throw InvalidConfig("outer_bound: need M >= 0");
  int s_max = users;
  if (cache.sign() > 0) {
    const BigInt limit = (Rational(files) / cache).floor();
    if (limit < s_max) s_max = static_cast<int>(limit.get_si());
  }
  OuterBound best;
  bool first = true;
  Rational h;  // H_s, accumulated
  for (int s = 1; s <= s_max; ++s) {
    h += Rational(BigInt(1), BigInt(s));
    const Rational value = h - Rational(s) * cache / Rational(files / s);
    if (first || value > best.raw) {
      best.raw = value;
      best.argmax_s = s;
      first = false;
    }
  }
  if (first) {
    // M > N leaves no admissible s; the bound is vacuous.
    best.raw = Rational(0);
  }
  best.clamped = best.raw.sign() <= 0;
  best.value = best.clamped ? Rational(0) : best.raw;
  return best;
}

Rational dof(int users, int files, const Rational& cache) {
  const Rational gamma_count = cache * Rational(users) / Rational(files);
  if (!gamma_count.is_integer()) throw InvalidConfig("dof: K*M/N must be an integer");
  const int gamma = static_cast<int>(gamma_count.numerator().get_si());
  if (gamma >= users) throw InvalidConfig("dof: undefined for Gamma = K (T = 0)");
  return (Rational(1) - cache / Rational(files)) / achievable_T(users, gamma);
}

double dof_double(unsigned long users, unsigned long gamma) {
  if (gamma >= users) throw InvalidConfig("dof_double: need Gamma < K");
  return (1.0 - static_cast<double>(gamma) / static_cast<double>(users)) / harmonic_tail_double(gamma, users);
}

BoundReport bound_report(int users, int files, int gamma) {
  BoundReport r;
  r.users = users;
  r.files = files;
  r.gamma = gamma;
  r.cache = Rational(BigInt(gamma) * files, BigInt(users));
  r.cache_fraction = r.cache / Rational(files);
  r.achievable = achievable_T(users, gamma);
  const OuterBound lb = outer_bound(users, files, r.cache);
  r.lower = lb.value;
  r.argmax_s = lb.argmax_s;
  if (lb.value.sign() > 0) r.gap = r.achievable / lb.value;
  if (gamma < users) r.dof = (Rational(1) - r.cache_fraction) / r.achievable;
  return r;
}

GapCertificate gap_certificate(int max_users) {
  if (max_users < 2) throw InvalidConfig("gap_certificate: need K_max >= 2");
  // One slot per K; workers pull K values from a shared counter.
  std::vector<std::vector<BoundReport>> per_k(static_cast<std::size_t>(max_users + 1));
  std::atomic<int> next{2};
  auto worker = [&] {
    for (int k = next++; k <= max_users; k = next++) {
      auto& rows = per_k[static_cast<std::size_t>(k)];
      for (int g = 1; g < k; ++g) rows.push_back(bound_report(k, k, g));
    }
  };
  const unsigned threads = std::clamp(std::thread::hardware_concurrency(), 1u, 16u);
  std::vector<std::jthread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  pool.clear();

  GapCertificate cert;
  for (auto& rows : per_k) {
    for (auto& row : rows) {
      if (row.lower.sign() <= 0 || row.gap >= Rational(4)) {
        std::ostringstream os;
        os << "gap certificate fails at K=" << row.users << ", Gamma=" << row.gamma << ": T=" << row.achievable
           << ", lower bound=" << row.lower;
        throw CertificateViolation(os.str());
      }
      if (row.gap > cert.max_gap) {
        cert.max_gap = row.gap;
        cert.max_users = row.users;
        cert.max_gamma = row.gamma;
      }
      cert.rows.push_back(std::move(row));
    }
  }
  return cert;
}

SynergyReport synergy(int users, int gamma) {
  if (gamma < 1 || gamma >= users) throw InvalidConfig("synergy: need 1 <= Gamma <= K-1");
  SynergyReport r;
  r.users = users;
  r.gamma = gamma;
  r.cache_fraction = Rational(BigInt(gamma), BigInt(users));
  const Rational one(1);
  const Rational d = (one - r.cache_fraction) / achievable_T(users, gamma);
  r.t_ss = Rational(users) * (one - r.cache_fraction) / (one + Rational(users) * r.cache_fraction);
  const Rational d_ss = (one - r.cache_fraction) / r.t_ss;
  const Rational d_mat = one / harmonic(static_cast<unsigned long>(users));
  r.d = d.to_double();
  r.d_ss = d_ss.to_double();
  r.d_mat = d_mat.to_double();
  r.margin = (d - d_ss - d_mat).to_double();
  return r;
}

double gamma_for_gap(double gap, unsigned long users) {
  if (gap < 1.0 || users < 2) throw InvalidConfig("gamma_for_gap: need G >= 1 and K >= 2");
  return std::exp(-(gap - epsilon(users) + kEpsilonInfinity));
}

std::optional<unsigned long> smallest_gamma_for_gap(double gap, unsigned long users) {
  // Accumulate H_K - H_Gamma downward from Gamma = K-1 so each step is O(1).
  std::vector<double> tail(users + 1, 0.0);
  for (unsigned long g = users; g-- > 0;) tail[g] = tail[g + 1] + 1.0 / static_cast<double>(g + 1);
  for (unsigned long g = 0; g < users; ++g) {
    const double d = (1.0 - static_cast<double>(g) / static_cast<double>(users)) / tail[g];
    if (d >= 1.0 / gap) return g;
  }
  return std::nullopt;
}

double case2_f(double gamma) {
  return (std::log(1.0 / gamma) + epsilon(2) - kEpsilonInfinity) / (1.0 - gamma);
}

Case2Report case2_endpoint_check(std::size_t points) {
  if (points < 2) throw InvalidConfig("case2_endpoint_check: need at least 2 grid points");
  constexpr double lo = 1.0 / 36.0;
  constexpr double hi = 0.5;
  constexpr double slack = 1e-9;
  Case2Report r;
  r.points = points;
  r.f_low = case2_f(lo);
  r.f_high = case2_f(hi);
  r.grid_max = r.f_low;
  r.grid_argmax = lo;
  for (std::size_t i = 0; i < points; ++i) {
    const double g = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    const double f = case2_f(g);
    if (f > r.grid_max) {
      r.grid_max = f;
      r.grid_argmax = g;
    }
  }
  const double endpoint_max = std::max(r.f_low, r.f_high);
  if (r.grid_max > endpoint_max + slack) {
    throw CheckFailed("f(" + std::to_string(r.grid_argmax) + ") = " + std::to_string(r.grid_max) +
                      " exceeds the endpoint maximum " + std::to_string(endpoint_max));
  }
  if (r.f_low >= 4.0) throw CheckFailed("f(1/36) = " + std::to_string(r.f_low) + " is not below 4");
  if (r.f_high >= 4.0) throw CheckFailed("f(1/2) = " + std::to_string(r.f_high) + " is not below 4");
  return r;
}

Case3Report case3_check(int max_users) {
  Case3Report r;
  const Rational two(2);
  for (int k = 2; k <= max_users; ++k) {
    for (int g = (k + 1) / 2; g < k; ++g) {
      const Rational value = achievable_T(k, g) / (Rational(1) - Rational(BigInt(g), BigInt(k)));
      ++r.cells;
      if (value >= two) {
        throw CheckFailed("case 3 bound fails at K=" + std::to_string(k) + ", Gamma=" + std::to_string(g) +
                          ": " + value.to_string());
      }
      if (value > r.max_value) {
        r.max_value = value;
        r.users = k;
        r.gamma = g;
      }
    }
  }
  return r;
}

}  // namespace synergy
