#include "synergy/reports.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include "json_codec.hpp"

namespace synergy {

namespace {

std::string decimal(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

}  // namespace

std::string plan_to_json(const DeliveryPlan& plan, bool include_groups) {
  return detail::plan_json(plan, include_groups).dump(2);
}

std::string to_json(const BoundReport& r) {
  detail::json j{{"K", r.users},
                 {"N", r.files},
                 {"M", r.cache.to_string()},
                 {"Gamma", r.gamma},
                 {"gamma", detail::rational_json(r.cache_fraction)},
                 {"T", detail::rational_json(r.achievable)},
                 {"T_lower", detail::rational_json(r.lower)},
                 {"gap_upper", detail::rational_json(r.gap)},
                 {"dof", detail::rational_json(r.dof)},
                 {"argmax_s", r.argmax_s}};
  return j.dump(2);
}

void write_gap_csv(std::ostream& os, const GapCertificate& certificate) {
  os << "K,Gamma,gamma,T,T_decimal,LB,LB_decimal,gap,gap_decimal,argmax_s\n";
  for (const auto& r : certificate.rows) {
    os << r.users << ',' << r.gamma << ',' << r.cache_fraction << ',' << r.achievable << ','
       << decimal(r.achievable.to_double()) << ',' << r.lower << ',' << decimal(r.lower.to_double()) << ','
       << r.gap << ',' << decimal(r.gap.to_double()) << ',' << r.argmax_s << '\n';
  }
}

std::vector<SynergyReport> dof_sweep(int max_users) {
  std::vector<SynergyReport> rows;
  for (int k = 2; k <= max_users; ++k) {
    for (int g = 1; g < k; ++g) rows.push_back(synergy(k, g));
  }
  return rows;
}

void write_dof_csv(std::ostream& os, const std::vector<SynergyReport>& rows) {
  os << "K,Gamma,gamma,d,d_ss,d_mat,margin,T_ss\n";
  for (const auto& r : rows) {
    os << r.users << ',' << r.gamma << ',' << r.cache_fraction << ',' << decimal(r.d) << ',' << decimal(r.d_ss)
       << ',' << decimal(r.d_mat) << ',' << decimal(r.margin) << ',' << r.t_ss << '\n';
  }
}

std::vector<BufferRow> buffer_sweep(const std::vector<double>& gaps, unsigned long users) {
  std::vector<BufferRow> rows;
  for (double g : gaps) {
    BufferRow row;
    row.gap = g;
    row.users = users;
    row.gamma_formula = gamma_for_gap(g, users);
    row.gamma_min = smallest_gamma_for_gap(g, users);
    if (row.gamma_min) {
      row.gamma_min_fraction = static_cast<double>(*row.gamma_min) / static_cast<double>(users);
      row.d_at_min = dof_double(users, *row.gamma_min);
    }
    rows.push_back(row);
  }
  return rows;
}

void write_buffer_csv(std::ostream& os, const std::vector<BufferRow>& rows) {
  os << "G,K,gamma_formula,Gamma_min,gamma_min,d_at_min\n";
  for (const auto& r : rows) {
    os << decimal(r.gap) << ',' << r.users << ',' << decimal(r.gamma_formula) << ',';
    if (r.gamma_min) {
      os << *r.gamma_min << ',' << decimal(r.gamma_min_fraction) << ',' << decimal(r.d_at_min);
    } else {
      os << ",,";
    }
    os << '\n';
  }
}

}  // namespace synergy
