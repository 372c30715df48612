#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "synergy/bounds.hpp"
#include "synergy/scheduler.hpp"

namespace synergy {

/// Plan as JSON: subsets as sorted integer arrays, durations as {"num", "den"} strings.
std::string plan_to_json(const DeliveryPlan& plan, bool include_groups = true);

std::string to_json(const BoundReport& report);

/// K,Gamma,gamma,T,T_decimal,LB,LB_decimal,gap,gap_decimal,argmax_s
void write_gap_csv(std::ostream& os, const GapCertificate& certificate);

/// Synergy rows for every K in [2..K_max] and Gamma in [1..K-1], in (K, Gamma) order.
std::vector<SynergyReport> dof_sweep(int max_users);
/// K,Gamma,gamma,d,d_ss,d_mat,margin,T_ss
void write_dof_csv(std::ostream& os, const std::vector<SynergyReport>& rows);

struct BufferRow {
  double gap = 0;                           ///< G
  unsigned long users = 0;                  ///< K
  double gamma_formula = 0;                 ///< exp(-(G - eps_K + eps_inf))
  std::optional<unsigned long> gamma_min;   ///< smallest Gamma with d >= 1/G
  double gamma_min_fraction = 0;            ///< gamma_min / K
  double d_at_min = 0;
};

std::vector<BufferRow> buffer_sweep(const std::vector<double>& gaps, unsigned long users);
/// G,K,gamma_formula,Gamma_min,gamma_min,d_at_min
void write_buffer_csv(std::ostream& os, const std::vector<BufferRow>& rows);

}  // namespace synergy
