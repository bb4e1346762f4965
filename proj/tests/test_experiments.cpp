#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "aoi/errors.hpp"
#include "aoi/experiments.hpp"
#include "aoi/outputs.hpp"

namespace {

using aoi::DelayObjective;
using aoi::FrontierPoint;

FrontierPoint synthetic(double age, double delay, double variance = 0.0, double shape = 2.0) {
  FrontierPoint p{{"g", aoi::ArrivalProcess::exponential(0.5), aoi::ServiceDistribution::pareto(0.8, shape),
                   aoi::Discipline::Fcfs}};
  p.metrics.avg_age = age;
  p.metrics.mean_delay = delay;
  p.metrics.delay_variance = variance;
  return p;
}

std::vector<std::pair<double, double>> coords(const std::vector<FrontierPoint>& pts) {
  std::vector<std::pair<double, double>> out;
  for (const auto& p : pts) out.emplace_back(p.avg_age(), p.mean_delay());
  return out;
}

TEST(ParetoFrontier, DropsDominatedPoint) {
  const std::vector<FrontierPoint> pts{synthetic(1, 3), synthetic(2, 2), synthetic(3, 1), synthetic(2, 3)};
  const auto f = aoi::pareto_frontier(pts, DelayObjective::MeanDelay);
  EXPECT_EQ(coords(f), (std::vector<std::pair<double, double>>{{1, 3}, {2, 2}, {3, 1}}));
}

TEST(ParetoFrontier, SinglePointIsItsOwnFrontier) {
  const std::vector<FrontierPoint> pts{synthetic(4, 5)};
  EXPECT_EQ(coords(aoi::pareto_frontier(pts, DelayObjective::MeanDelay)),
            (std::vector<std::pair<double, double>>{{4, 5}}));
}

TEST(ParetoFrontier, UsesTheRequestedObjective) {
  const std::vector<FrontierPoint> pts{synthetic(1, 1, 9), synthetic(2, 2, 1)};
  EXPECT_EQ(aoi::pareto_frontier(pts, DelayObjective::MeanDelay).size(), 1u);
  EXPECT_EQ(aoi::pareto_frontier(pts, DelayObjective::DelayVariance).size(), 2u);
}

bool dominates(const FrontierPoint& a, const FrontierPoint& b, DelayObjective o) {
  const double ao = aoi::objective_value(a, o), bo = aoi::objective_value(b, o);
  return a.avg_age() <= b.avg_age() && ao <= bo && (a.avg_age() < b.avg_age() || ao < bo);
}

std::vector<FrontierPoint> random_cloud(std::uint64_t seed, int n) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> coord(0, 12);
  std::vector<FrontierPoint> pts;
  for (int i = 0; i < n; ++i) pts.push_back(synthetic(coord(gen), coord(gen), coord(gen), 1.5 + i * 0.01));
  return pts;
}

TEST(ParetoFrontier, ExhaustiveNonDomination) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto pts = random_cloud(seed, 40);
    for (auto o : {DelayObjective::MeanDelay, DelayObjective::DelayVariance}) {
      const auto f = aoi::pareto_frontier(pts, o);
      ASSERT_FALSE(f.empty());
      for (const auto& q : f) {
        for (const auto& p : pts) EXPECT_FALSE(dominates(p, q, o));
      }
      // Everything left out is dominated by something.
      for (const auto& p : pts) {
        const bool kept = std::any_of(f.begin(), f.end(), [&](const FrontierPoint& q) {
          return q.avg_age() == p.avg_age() && aoi::objective_value(q, o) == aoi::objective_value(p, o);
        });
        const bool dominated = std::any_of(pts.begin(), pts.end(), [&](const FrontierPoint& q) {
          return dominates(q, p, o);
        });
        EXPECT_TRUE(kept || dominated);
      }
      EXPECT_TRUE(std::is_sorted(f.begin(), f.end(), [](const auto& a, const auto& b) {
        return a.avg_age() < b.avg_age();
      }));
    }
  }
}

TEST(ScalarizedPick, Extremes) {
  const std::vector<FrontierPoint> pts{synthetic(1, 3), synthetic(2, 2), synthetic(3, 1), synthetic(2, 3)};
  const auto zero = aoi::scalarized_pick(pts, 0.0, DelayObjective::MeanDelay);
  EXPECT_EQ(zero.mean_delay(), 1.0);
  const auto big = aoi::scalarized_pick(pts, 1e9, DelayObjective::MeanDelay);
  EXPECT_EQ(big.avg_age(), 1.0);
}

TEST(ScalarizedPick, TieBreaksByAge) {
  // delay + 1 * age equals 4 for all three.
  const std::vector<FrontierPoint> pts{synthetic(3, 1), synthetic(1, 3), synthetic(2, 2)};
  EXPECT_EQ(aoi::scalarized_pick(pts, 1.0, DelayObjective::MeanDelay).avg_age(), 1.0);
}

TEST(ScalarizedPick, PicksLieOnTheFrontier) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto pts = random_cloud(seed + 100, 30);
    for (auto o : {DelayObjective::MeanDelay, DelayObjective::DelayVariance}) {
      const auto f = aoi::pareto_frontier(pts, o);
      for (double nu : {0.0, 0.1, 0.5, 1.0, 5.0, 100.0}) {
        const auto pick = aoi::scalarized_pick(pts, nu, o);
        EXPECT_TRUE(std::any_of(f.begin(), f.end(), [&](const FrontierPoint& q) {
          return q.label() == pick.label() && q.avg_age() == pick.avg_age();
        }));
      }
    }
  }
}

TEST(ScalarizedPick, RejectsBadInput) {
  const std::vector<FrontierPoint> none;
  EXPECT_THROW(aoi::scalarized_pick(none, 1.0, DelayObjective::MeanDelay), aoi::ParameterError);
  const std::vector<FrontierPoint> one{synthetic(1, 1)};
  EXPECT_THROW(aoi::scalarized_pick(one, -1.0, DelayObjective::MeanDelay), aoi::ParameterError);
}

aoi::SweepConfig small_config() {
  auto cfg = aoi::parse_sweep_config(R"(
name = small
mu = 0.8
n_arrivals = 4000
n_reps = 3
seed = 5
gginf_samples = 2000
[grid poisson]
arrival = exp lambda=0.5
disciplines = fcfs, lcfs-p, inf
service = exp
service = pareto alpha=2, 1.4
)");
  cfg.threads = 1;
  return cfg;
}

TEST(ExpandGrid, Order) {
  const auto pts = aoi::expand_grid(small_config());
  ASSERT_EQ(pts.size(), 9u);
  EXPECT_EQ(pts[0].label(), "fcfs exp | exp lambda=0.5");
  EXPECT_EQ(pts[1].label(), "lcfs-p exp | exp lambda=0.5");
  EXPECT_EQ(pts[3].label(), "fcfs pareto alpha=2 | exp lambda=0.5");
  EXPECT_EQ(pts[8].series(), "inf/pareto");
}

TEST(RunSuite, PointsCarryOracles) {
  const auto pts = aoi::run_suite(small_config());
  ASSERT_EQ(pts.size(), 9u);
  for (const auto& p : pts) {
    EXPECT_DOUBLE_EQ(p.a_min, 2.0);
    EXPECT_EQ(p.metrics.seeds, (std::vector<std::uint64_t>{5, 6, 7}));
    EXPECT_EQ(p.pk_delay.has_value(), p.point.discipline != aoi::Discipline::InfiniteServer);
    EXPECT_GE(p.gginf.value, 2.0);
  }
  EXPECT_NEAR(pts[0].pk_delay->value(), 1.0 / 0.3, 1e-12);
  EXPECT_FALSE(pts[0].slow_convergence);
  EXPECT_TRUE(pts[8].slow_convergence);
  // The oracle depends only on the (arrival, service) pair.
  EXPECT_EQ(pts[0].gginf.value, pts[2].gginf.value);
}

TEST(RunSuite, UnstablePointIsNamed) {
  auto cfg = small_config();
  cfg.groups[0].arrival = aoi::ArrivalProcess::exponential(0.9);
  try {
    aoi::run_suite(cfg);
    FAIL() << "expected a stability error";
  } catch (const aoi::StabilityError& e) {
    EXPECT_NE(std::string(e.what()).find("fcfs exp | exp lambda=0.9"), std::string::npos) << e.what();
  }
}

TEST(RunSuite, ThreadCountDoesNotChangeOutputs) {
  auto cfg = small_config();
  const auto serial = aoi::run_suite(cfg);
  cfg.threads = 4;
  const auto parallel = aoi::run_suite(cfg);
  EXPECT_EQ(aoi::to_csv(serial, cfg), aoi::to_csv(parallel, cfg));
  EXPECT_EQ(aoi::to_json(serial, cfg), aoi::to_json(parallel, cfg));
  EXPECT_EQ(aoi::to_csv(aoi::run_suite(cfg), cfg), aoi::to_csv(parallel, cfg));
}

TEST(Outputs, HeaderOnlyCsvForNoPoints) {
  const std::vector<FrontierPoint> none;
  EXPECT_EQ(aoi::to_csv(none, small_config()), std::string(aoi::kCsvHeader) + "\n");
}

TEST(Outputs, CsvHasOneRowPerPoint) {
  const auto cfg = small_config();
  const auto pts = aoi::run_suite(cfg);
  std::istringstream in(aoi::to_csv(pts, cfg));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, aoi::kCsvHeader);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 16);
  }
  EXPECT_EQ(rows, pts.size());
}

TEST(Outputs, NumberFormatting) {
  EXPECT_EQ(aoi::format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(aoi::format_number(2.25), "2.25");
  EXPECT_EQ(aoi::format_number(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(aoi::format_number(std::nan("")), "nan");
}

TEST(Outputs, JsonEchoesConfigAndSeeds) {
  const auto cfg = small_config();
  const auto pts = aoi::run_suite(cfg);
  const auto doc = nlohmann::json::parse(aoi::to_json(pts, cfg));
  EXPECT_EQ(doc.at("config").at("name"), "small");
  EXPECT_EQ(doc.at("config").at("n_arrivals"), 4000);
  EXPECT_EQ(doc.at("points").size(), pts.size());
  ASSERT_EQ(doc.at("scalarized").size(), 2u);
  for (const auto& [objective, picks] : doc.at("scalarized").items()) {
    EXPECT_EQ(picks.size(), cfg.nu_grid.size()) << objective;
  }
  EXPECT_EQ(doc.dump().find("timestamp"), std::string::npos);
}

TEST(Outputs, PlotScriptHasSeriesAndFrontier) {
  const auto cfg = small_config();
  const auto pts = aoi::run_suite(cfg);
  const auto frontier = aoi::pareto_frontier(pts, DelayObjective::MeanDelay);
  const auto script = aoi::plot_script(pts, frontier, "small");
  EXPECT_NE(script.find("$frontier << EOD"), std::string::npos);
  EXPECT_NE(script.find("plot "), std::string::npos);
  EXPECT_NE(script.find("lcfs-p/pareto"), std::string::npos);
  EXPECT_NE(script.find("inf/exp"), std::string::npos);
}

TEST(Outputs, EmitWritesFilesAndReportsBadPaths) {
  const auto cfg = small_config();
  const auto pts = aoi::run_suite(cfg);
  const auto frontier = aoi::pareto_frontier(pts, DelayObjective::MeanDelay);
  const auto dir = std::filesystem::temp_directory_path() / "aoi_emit_test";
  std::filesystem::create_directories(dir);
  const aoi::OutputPaths paths{(dir / "a.csv").string(), (dir / "a.json").string(), (dir / "a.gp").string()};
  aoi::emit_outputs(pts, frontier, cfg, paths);
  std::ifstream csv(paths.csv);
  std::ostringstream buf;
  buf << csv.rdbuf();
  EXPECT_EQ(buf.str(), aoi::to_csv(pts, cfg));
  EXPECT_TRUE(std::filesystem::exists(paths.json));
  EXPECT_TRUE(std::filesystem::exists(paths.plot));
  std::filesystem::remove_all(dir);

  const aoi::OutputPaths bad{"/nonexistent/dir/x.csv", "", ""};
  try {
    aoi::emit_outputs(pts, frontier, cfg, bad);
    FAIL() << "expected an I/O error";
  } catch (const aoi::IoError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/x.csv"), std::string::npos);
  }
}

}  // namespace
