#pragma once

#include <json.hpp>

#include "synergy/combinatorics.hpp"
#include "synergy/placement.hpp"
#include "synergy/rational.hpp"
#include "synergy/scheduler.hpp"

namespace synergy::detail {

using nlohmann::json;

inline json rational_json(const Rational& r) {
  return json{{"num", r.numerator().get_str()}, {"den", r.denominator().get_str()}};
}

inline Rational rational_from_json(const json& j) {
  return Rational::parse(j.at("num").get<std::string>() + "/" + j.at("den").get<std::string>());
}

inline json subset_json(const Subset& s) { return json(std::vector<int>(s.begin(), s.end())); }

inline json config_json(const SystemConfig& c) {
  return json{{"K", c.users},
              {"N", c.files},
              {"M", c.cache.to_string()},
              {"gamma", c.gamma},
              {"c", c.granularity.get_str()}};
}

inline SystemConfig config_from_json(const json& j) {
  SystemConfig c = SystemConfig::make(j.at("K").get<int>(), j.at("N").get<int>(),
                                      Rational::parse(j.at("M").get<std::string>()));
  c.granularity = BigInt(j.at("c").get<std::string>());
  return c;
}

inline json plan_json(const DeliveryPlan& plan, bool include_groups) {
  json phases = json::array();
  for (const auto& p : plan.phases) {
    json entry{{"j", p.phase},
               {"group_count", p.group_count.get_str()},
               {"uses_per_group", p.uses_per_group.get_str()},
               {"active_antennas", p.active_antennas},
               {"duration", rational_json(p.duration)}};
    if (include_groups) {
      json groups = json::array();
      for (const auto& g : p.groups()) groups.push_back(subset_json(g));
      entry["groups"] = std::move(groups);
    }
    if (p.combining.rows() > 0) {
      json rows = json::array();
      for (std::size_t r = 0; r < p.combining.rows(); ++r) {
        json row = json::array();
        for (Fp v : p.combining.row(r)) row.push_back(v.value());
        rows.push_back(std::move(row));
      }
      entry["combining"] = std::move(rows);
    }
    phases.push_back(std::move(entry));
  }
  return json{{"config", config_json(plan.config)},
              {"demand", plan.demand},
              {"phases", std::move(phases)},
              {"total_duration", rational_json(plan.total_duration())},
              {"total_uses", plan.total_uses().get_str()}};
}

}  // namespace synergy::detail
