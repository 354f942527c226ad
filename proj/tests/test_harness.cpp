#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "dispflow/harness/config.hpp"
#include "dispflow/harness/experiments.hpp"
#include "dispflow/harness/initial.hpp"
#include "dispflow/harness/output.hpp"
#include "support.hpp"

using namespace dispflow;
using namespace dispflow::harness;
namespace fs = std::filesystem;

namespace {

constexpr const char* kHappy =
    "mode = geometric\nN = 128\nt_end = 0.05\na = 1\nb = 0.5\nK = 1\nic = perturbed_great_circle eps=0.05 mode_k=3\n";

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("dispflow_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int line_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

int run_cli(const std::string& args) {
  const int status = std::system((std::string(DISPFLOW_CLI) + " " + args + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST(Config, HappyPath) {
  const RunConfig c = parse_config(kHappy);
  EXPECT_EQ(c.mode, Mode::geometric);
  EXPECT_EQ(c.n, 128);
  EXPECT_EQ(c.t_end, 0.05);
  EXPECT_EQ(c.params.a, 1.0);
  EXPECT_EQ(c.params.b, 0.5);
  EXPECT_EQ(c.params.curvature_K, 1.0);
  EXPECT_EQ(c.ic.name, "perturbed_great_circle");
  EXPECT_EQ(c.ic.get("eps"), 0.05);
  EXPECT_EQ(c.ic.get("mode_k"), 3.0);
  EXPECT_EQ(c.scheme, DerivativeScheme::spectral);
  EXPECT_EQ(c.cfl_safety, 0.5);
  EXPECT_EQ(c.sample_every, 100);
  EXPECT_FALSE(c.dt.has_value());
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config("N = 100"), ConfigError);
  EXPECT_EQ(line_of("mode = geometric\nt_end = 1\nN = 100\n"), 3);
  try {
    parse_config("");
    FAIL();
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("mode"), std::string::npos);
    EXPECT_NE(what.find("N"), std::string::npos);
    EXPECT_NE(what.find("t_end"), std::string::npos);
  }
  EXPECT_EQ(line_of("mode = geometric\n# comment\nbogus = 3\n"), 3);
  EXPECT_EQ(line_of("mode = geometric\nN = 64\nt_end = abc\n"), 3);
  EXPECT_EQ(line_of("mode = geometric\nN = 64\nN = 64\n"), 3);
  EXPECT_EQ(line_of("mode = sideways\n"), 1);
  EXPECT_EQ(line_of("mode = geometric\nN = 64\nt_end = -1\n"), 3);
  EXPECT_EQ(line_of("mode geometric\n"), 1);
  EXPECT_EQ(line_of("mode = geometric\nN = 64\nt_end = 1\nscheme = upwind\n"), 4);
  EXPECT_EQ(line_of("mode = geometric\nN = 64\nt_end = 1\nic = sech amp\n"), 4);
  EXPECT_EQ(line_of("mode = geometric\nN = 64\nt_end = 1\ncfl_safety = 2\n"), 4);
  EXPECT_EQ(line_of("mode = geometric\nN = 8192\nt_end = 1\n"), 2);
  EXPECT_EQ(line_of("mode = geometric\nN = 64\nt_end = 1\nK = 0\n"), 0);
  EXPECT_NO_THROW(parse_config("mode = complex\nN = 64\nt_end = 1\nK = 0\n"));
}

TEST(Config, RoundTrip) {
  RunConfig c = parse_config(std::string(kHappy) + "dt = 1e-7\nseed = 42\nscheme = central-4\nrenormalize = false\n");
  const std::string once = serialize_config(c);
  EXPECT_EQ(parse_config(once), c);
  EXPECT_EQ(serialize_config(parse_config(once)), once);
  const RunConfig odd = parse_config("mode = complex\nN = 64\nt_end = 0.1\nb = 0.1\nic = sech amp=1.5 width=0.0333333\n");
  EXPECT_EQ(parse_config(serialize_config(odd)), odd);
}

TEST(Initial, GreatCircle) {
  const auto c = std::get<DiscreteCurve>(make_initial(InitialCondition{}, 16, 1.0, 0));
  for (int j = 0; j < 16; ++j) {
    const double x = node(j, 16);
    EXPECT_LE((c.point(j) - AmbientVector(std::cos(support::kTwoPi * x), std::sin(support::kTwoPi * x), 0)).norm(), 1e-15);
  }
  InitialCondition flat = parse_initial_condition("perturbed_great_circle eps=0");
  EXPECT_EQ(std::get<DiscreteCurve>(make_initial(flat, 16, 1.0, 0)), c);
}

TEST(Initial, RandomSmoothDeterministic) {
  const InitialCondition ic = parse_initial_condition("random_smooth decay=0.8");
  const auto a = std::get<DiscreteCurve>(make_initial(ic, 64, 1.0, 5));
  const auto b = std::get<DiscreteCurve>(make_initial(ic, 64, 1.0, 5));
  const auto c = std::get<DiscreteCurve>(make_initial(ic, 64, 1.0, 6));
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a == c);
  for (int j = 0; j < 64; ++j) EXPECT_NEAR(a.point(j).norm(), 1.0, 1e-15);
}

TEST(Initial, Validation) {
  EXPECT_THROW(make_initial(parse_initial_condition("perturbed_great_circle eps=1"), 16, 1.0, 0), ParameterError);
  EXPECT_THROW(make_initial(parse_initial_condition("perturbed_great_circle mode_k=1.5"), 16, 1.0, 0), ParameterError);
  EXPECT_THROW(make_initial(parse_initial_condition("spiral"), 16, 1.0, 0), ParameterError);
  EXPECT_THROW(make_initial(parse_initial_condition("sech amp=1 width=0"), 16, 1.0, 0), ParameterError);
  EXPECT_THROW(make_initial(parse_initial_condition("great_circle eps=0.1"), 16, 1.0, 0), ParameterError);
  EXPECT_THROW(make_initial(parse_initial_condition("plane_wave k=8"), 16, 1.0, 0), ParameterError);
}

TEST(Initial, ComplexFields) {
  const auto pw = std::get<ComplexField>(make_initial(parse_initial_condition("plane_wave amp=0.5 k=2"), 64, 1.0, 0));
  EXPECT_NEAR(l2norm_sq(pw), 0.25, 1e-15);
  const auto s = std::get<ComplexField>(make_initial(parse_initial_condition("sech amp=2 width=0.05"), 64, 1.0, 0));
  EXPECT_NEAR(s.values[32].real(), 2.0, 1e-15);
}

TEST(Output, SingleReportIsTwoLines) {
  const fs::path dir = scratch_dir("single");
  const fs::path f = dir / "ts.csv";
  emit_timeseries(f.string(), std::vector<EnergyReport>{EnergyReport{}});
  EXPECT_EQ(slurp(f), std::string(kGeometricHeader) + "\n" +
                          "0.0000000000000000e+00,0.0000000000000000e+00,0.0000000000000000e+00,"
                          "0.0000000000000000e+00,0.0000000000000000e+00,0.0000000000000000e+00\n");
  EXPECT_THROW(emit_timeseries(f.string(), std::vector<EnergyReport>{}), ParameterError);
  EXPECT_THROW(emit_timeseries((dir / "missing" / "x.csv").string(), std::vector<EnergyReport>{EnergyReport{}}),
               IoError);
}

TEST(Output, RoundTripExact) {
  const fs::path dir = scratch_dir("roundtrip");
  RunConfig cfg = parse_config("mode = geometric\nN = 32\nt_end = 1e-4\na = 1\nb = 0.5\nic = random_smooth\nseed = 3\nsample_every = 5\n");
  const auto samples = run_geometric(cfg);
  std::vector<EnergyReport> reports;
  for (const auto& s : samples) reports.push_back(s.report);
  emit_timeseries((dir / "g.csv").string(), reports);
  const CsvTable t = read_csv((dir / "g.csv").string());
  ASSERT_EQ(t.rows.size(), reports.size());
  for (size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    EXPECT_EQ(t.rows[i], (std::vector<double>{r.time, r.l2_ux_sq, r.e1, r.e2, r.h2_seminorm_sq, r.f_ratio}));
  }

  cfg.mode = Mode::complex;
  const auto cs = run_complex_mode(cfg);
  std::vector<ComplexReport> creps;
  for (const auto& s : cs) creps.push_back(s.report);
  emit_timeseries((dir / "c.csv").string(), creps);
  const CsvTable ct = read_csv((dir / "c.csv").string());
  EXPECT_EQ(ct.header.size(), 7u);
  EXPECT_EQ(ct.rows.back()[2], creps.back().test1);
  EXPECT_EQ(ct.rows.back()[5], creps.back().laurey1.imag());
}

TEST(Output, ConstantCurveRowsIdentical) {
  const fs::path dir = scratch_dir("constant");
  Eigen::Matrix3Xd pts(3, 16);
  pts.colwise() = AmbientVector(0, 0, 1);
  StepperConfig cfg;
  const FlowParams p{1.0, 0.5, 1.0};
  cfg.dt = 0.5 * cfl_limit(p, 16, cfg.scheme);
  const auto s = run(DiscreteCurve(pts, 1.0), p, cfg, 10 * cfg.dt, 2);
  std::vector<EnergyReport> reports;
  for (const auto& x : s) reports.push_back(x.report);
  emit_timeseries((dir / "c.csv").string(), reports);
  const CsvTable t = read_csv((dir / "c.csv").string());
  for (const auto& row : t.rows) {
    for (size_t k = 1; k < row.size(); ++k) EXPECT_EQ(row[k], t.rows[0][k]);
  }
}

TEST(Experiments, CompareFrameAtTimeZero) {
  RunConfig cfg = parse_config("mode = compare-frame\nN = 64\nt_end = 0\na = 1\nb = 0.5\nic = random_smooth\nseed = 2\n");
  const auto rows = compare_frame(cfg);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].modulus_gap, 0.0);
  const DiscreteCurve c = initial_curve(cfg);
  const ComplexField q = initial_field(cfg);
  EXPECT_EQ(rows[0].e1_gap, std::abs(energy1(c, cfg.params, cfg.scheme) - test1(q, 1.0, 0.5)));
}

TEST(Experiments, ConvergenceRowsOrdered) {
  RunConfig cfg = parse_config("mode = convergence\nN = 16\nt_end = 1e-4\na = 1\nb = 0.5\nic = perturbed_great_circle\nscheme = central-4\n");
  const auto rows = run_convergence(cfg, 3);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].n, 16);
  EXPECT_EQ(rows[1].n, 32);
  EXPECT_EQ(rows[2].n, 64);
  const auto again = run_convergence(cfg, 3);
  for (size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(rows[i].e1_drift, again[i].e1_drift);
    EXPECT_EQ(rows[i].steps, again[i].steps);
  }
  cfg.dt = 1e-5;
  const auto fixed = run_convergence(cfg, 2);
  EXPECT_DOUBLE_EQ(fixed[1].dt, 1e-5 / 8);
}

TEST(Cli, ExitCodesAndOutput) {
  const fs::path dir = scratch_dir("cli");
  const fs::path good = dir / "good.cfg";
  std::ofstream(good) << "mode = geometric\nN = 16\nt_end = 1e-4\na = 1\nb = 0.5\nic = perturbed_great_circle\noutput_dir = "
                      << (dir / "ignored").string() << "\n";
  const fs::path out = dir / "out";
  EXPECT_EQ(run_cli("run " + good.string() + " --bogus"), 1);
  EXPECT_EQ(std::system(("DISPFLOW_OUT=" + out.string() + " " + DISPFLOW_CLI + " run " + good.string() + " > /dev/null").c_str()), 0);
  EXPECT_TRUE(fs::exists(out / "timeseries.csv"));
  EXPECT_TRUE(fs::exists(out / "q_final.csv"));
  EXPECT_FALSE(fs::exists(dir / "ignored"));

  const fs::path bad = dir / "bad.cfg";
  std::ofstream(bad) << "mode = geometric\nN = 100\nt_end = 1\n";
  EXPECT_EQ(run_cli("run " + bad.string()), 1);
  EXPECT_EQ(run_cli("run " + (dir / "absent.cfg").string()), 1);

  const fs::path blow = dir / "blow.cfg";
  std::ofstream(blow) << "mode = geometric\nN = 32\nt_end = 1\nb = 10000\ndt = 5e-5\nic = perturbed_great_circle eps=0.3 mode_k=5\noutput_dir = "
                      << (dir / "blow").string() << "\n";
  EXPECT_EQ(run_cli("run " + blow.string()), 2);

  EXPECT_EQ(run_cli("check-identities --trials 10 --seed 3"), 0);
}
