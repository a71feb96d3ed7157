#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "maxwell/study.hpp"

namespace maxwell {
namespace {

TEST(Study, NlambdaDefinition) {
  EXPECT_NEAR(nlambda(1000, 2.0 * std::numbers::pi), 10.0, 1e-12);
  EXPECT_NEAR(nlambda(5726, 10.0), 11.2408, 1e-3);
}

TEST(Study, ChooseSubdivisionsForTarget) {
  EXPECT_EQ(choose_M_for_target_nlambda(10.0, 1, 10.0, 100), 7);
  for (const double kappa : {4.0, 13.0, 27.5}) {
    for (int p = 1; p <= 3; ++p) {
      const int M = choose_M_for_target_nlambda(kappa, p, 10.0, 200);
      EXPECT_GE(nlambda(dof_count(M, p), kappa), 10.0);
      if (M > 1) {
        EXPECT_LT(nlambda(dof_count(M - 1, p), kappa), 10.0);
      }
    }
  }
  try {
    (void)choose_M_for_target_nlambda(40.0, 1, 10.0, 5);
    FAIL();
  } catch (const std::out_of_range& e) {
    EXPECT_NE(std::string(e.what()).find('5'), std::string::npos);
  }
}

TEST(Study, MaxSubdivisionsRespectsCap) {
  for (int p = 1; p <= 3; ++p) {
    const int M = max_subdivisions_for(p, 50000);
    EXPECT_LE(dof_count(M, p), 50000);
    EXPECT_GT(dof_count(M + 1, p), 50000);
  }
}

TEST(Study, RunSingleAndCsvRoundTrip) {
  StudyConfig config;
  config.lambda = 1.0;
  const auto rec = run_single(2, 2, 5.0, config);
  EXPECT_EQ(rec.dof, 654);
  EXPECT_FALSE(rec.flagged);
  EXPECT_LE(rec.residual, kResidualGate);
  EXPECT_GT(rec.solution.rel.energy, 0.0);
  EXPECT_LT(rec.solution.rel.energy, 1.0);
  EXPECT_GT(rec.stab_ratio, 0.0);

  std::stringstream ss;
  const std::vector<StudyRecord> records{rec};
  write_csv(ss, records);
  const std::string text = ss.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), csv_header());
  EXPECT_EQ(csv_header(),
            "p,M,kappa,lambda,dof,nlambda,h,rel_energy_sol,rel_energy_interp,rel_l2_sol,"
            "rel_l2_interp,rel_curl_sol,rel_trace_sol,stab_ratio,residual,assemble_s,solve_s,"
            "flagged");
  const auto rows = read_csv(ss);
  ASSERT_EQ(rows.size(), 1u);
  const auto& row = rows[0];
  EXPECT_EQ(row.p, 2);
  EXPECT_EQ(row.M, 2);
  EXPECT_EQ(row.dof, 654);
  EXPECT_EQ(row.nlambda, rec.nlambda);
  EXPECT_EQ(row.h, rec.h);
  EXPECT_EQ(row.rel_energy_sol, rec.solution.rel.energy);
  EXPECT_EQ(row.rel_l2_interp, rec.interpolant.rel.l2);
  EXPECT_EQ(row.stab_ratio, rec.stab_ratio);
  EXPECT_EQ(row.residual, rec.residual);
  EXPECT_FALSE(row.flagged);
}

TEST(Study, RunsAreDeterministic) {
  StudyConfig config;
  config.threads = 3;
  const auto a = run_single(1, 3, 4.0, config);
  config.threads = 1;
  const auto b = run_single(1, 3, 4.0, config);
  EXPECT_EQ(csv_row(a, false), csv_row(b, false));
}

TEST(Study, RejectsRunsAboveDofCap) {
  StudyConfig config;
  config.max_dofs = 1000;
  EXPECT_THROW((void)run_single(3, 3, 4.0, config), std::out_of_range);
}

TEST(Study, FitRateRecoversPowerLaw) {
  const std::vector<double> h{0.5, 0.25, 0.125, 0.0625};
  std::vector<double> e;
  for (const double x : h) {
    e.push_back(3.0 * std::pow(x, 2.5));
  }
  EXPECT_NEAR(fit_rate(h, e), 2.5, 1e-12);
}

TEST(Study, ConvergenceStudyRates) {
  StudyConfig config;
  config.kind = StudyKind::Convergence;
  config.orders = {1};
  config.kappas = {3.0};
  config.subdivisions = {2, 4, 6};
  const auto records = run_convergence_study(config);
  ASSERT_EQ(records.size(), 3u);
  const auto rates = fit_solution_rates(records);
  EXPECT_NEAR(rates.energy, 1.0, 0.3);
}

TEST(Study, GnuplotScriptReferencesCsv) {
  std::ostringstream os;
  write_gnuplot_script(os, StudyKind::Pollution, "out.csv");
  EXPECT_NE(os.str().find("out.csv"), std::string::npos);
}

TEST(Study, ConfigValidation) {
  StudyConfig config;
  config.orders = {4};
  EXPECT_THROW(config.validate(), std::invalid_argument);
  config.orders = {1};
  config.kappas = {-1.0};
  EXPECT_THROW(config.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace maxwell
