#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "synergy/reports.hpp"

namespace synergy {
namespace {

using nlohmann::json;

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

TEST(PlanJson, ThreeUsersOneReplica) {
  const auto plan = plan_phases(SystemConfig::from_gamma(3, 3, 1), {1, 2, 3});
  const json j = json::parse(plan_to_json(plan));
  EXPECT_EQ(j["config"]["K"], 3);
  EXPECT_EQ(j["config"]["M"], "1/1");
  EXPECT_EQ(j["total_duration"]["num"], "5");
  EXPECT_EQ(j["total_duration"]["den"], "6");
  EXPECT_EQ(j["total_uses"], "5");
  ASSERT_EQ(j["phases"].size(), 2u);
  EXPECT_EQ(j["phases"][0]["groups"], json::parse("[[1,2],[1,3],[2,3]]"));
  EXPECT_EQ(j["phases"][1]["groups"], json::parse("[[1,2,3]]"));
  EXPECT_EQ(j["phases"][1]["duration"], json::parse(R"({"num":"1","den":"3"})"));
  EXPECT_EQ(j["phases"][1]["combining"].size(), 2u);
  EXPECT_FALSE(j["phases"][0].contains("combining"));
  EXPECT_FALSE(json::parse(plan_to_json(plan, false))["phases"][0].contains("groups"));
}

TEST(BoundJson, Fields) {
  const json j = json::parse(to_json(bound_report(4, 4, 1)));
  EXPECT_EQ(j["gap_upper"], json::parse(R"({"num":"13","den":"9"})"));
  EXPECT_EQ(j["argmax_s"], 1);
}

TEST(GapCsv, HeaderAndRows) {
  std::ostringstream os;
  write_gap_csv(os, gap_certificate(4));
  const auto rows = lines(os.str());
  ASSERT_EQ(rows.size(), 1u + 1 + 2 + 3);
  EXPECT_EQ(rows[0], "K,Gamma,gamma,T,T_decimal,LB,LB_decimal,gap,gap_decimal,argmax_s");
  EXPECT_EQ(rows[1], "2,1,1/2,1/2,0.5,1/2,0.5,1/1,1,1");
  EXPECT_EQ(rows[4], "4,1,1/4,13/12,1.08333333333,3/4,0.75,13/9,1.44444444444,1");
}

TEST(DofCsv, Rows) {
  std::ostringstream os;
  write_dof_csv(os, dof_sweep(3));
  const auto rows = lines(os.str());
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], "K,Gamma,gamma,d,d_ss,d_mat,margin,T_ss");
  EXPECT_EQ(rows[1].substr(0, 10), "2,1,1/2,1,");
}

TEST(BufferCsv, Rows) {
  std::ostringstream os;
  write_buffer_csv(os, buffer_sweep({1.0, 7.0}, 1000));
  const auto rows = lines(os.str());
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], "G,K,gamma_formula,Gamma_min,gamma_min,d_at_min");
  EXPECT_EQ(rows[2].substr(0, 7), "7,1000,");
}

}  // namespace
}  // namespace synergy
