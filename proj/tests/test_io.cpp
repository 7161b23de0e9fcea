#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "json.hpp"

#include "gyroform/config.hpp"
#include "gyroform/errors.hpp"
#include "gyroform/output.hpp"
#include "gyroform/sim_harness.hpp"

using namespace gyroform;
namespace fs = std::filesystem;

namespace {

const char* kConfig = R"(# two-vehicle circling run
[scenario]
n = 2
seed = 7
init = random
monitors = lyapunov, separation

[law]
kind = circ
alpha = 1
r0 = 1 ; meters
mu = 0.6
eta = 0.4

[integration]
dt = 0.01
T = 5
sample_every = 50

[output]
dir = results
plane = 0,0,1
)";

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path temp_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("gyroform_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

Scenario golden_scenario() {
  Scenario sc;
  sc.n = 2;
  sc.law.kind = LawKind::Circling;
  sc.law.sign = -1;
  sc.dt = 1e-2;
  sc.duration = 40.0;
  sc.sample_every = 20;
  sc.init = InitMode::Explicit;
  sc.states = {FramedState{}, FramedState::from_heading(Vec3(0.5, 2.0, 0.0), Vec3(-1.0, 0.3, 0.0))};
  return sc;
}

std::vector<std::vector<double>> polyline_points(const std::string& svg) {
  std::vector<std::vector<double>> out;
  const std::regex re("<polyline[^>]*points=\"([^\"]*)\"");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it) {
    std::string pts = (*it)[1];
    for (char& c : pts)
      if (c == ',') c = ' ';
    std::istringstream is(pts);
    std::vector<double> v;
    for (double x; is >> x;) v.push_back(x);
    out.push_back(v);
  }
  return out;
}

}  // namespace

TEST(Config, ParsesAllSections) {
  const ConfigDocument doc = parse_config_document(kConfig);
  const Scenario& sc = doc.scenario;
  EXPECT_EQ(sc.n, 2u);
  EXPECT_EQ(sc.seed, 7u);
  EXPECT_EQ(sc.law.kind, LawKind::Circling);
  EXPECT_EQ(sc.law.sign, -1);  // default for the circling law
  EXPECT_EQ(sc.law.mu, 0.6);
  EXPECT_EQ(sc.dt, 0.01);
  EXPECT_EQ(sc.duration, 5.0);
  EXPECT_EQ(sc.sample_every, 50u);
  EXPECT_TRUE(sc.monitors.lyapunov);
  EXPECT_FALSE(sc.monitors.alignment);
  EXPECT_EQ(doc.output.dir, "results");
  EXPECT_EQ(doc.output.plane.kind, Projection::Kind::Custom);
  EXPECT_FALSE(doc.sweep.has_value());
}

TEST(Config, RoundTripIsExact) {
  Scenario sc = parse_config(kConfig);
  sc.law.eta = 0.1 + 0.2;  // not exactly representable in short decimal
  sc.states = initial_states(sc);
  sc.init = InitMode::Explicit;
  OutputSpec out;
  out.plane = Projection::custom(Vec3(0.1, 0.2, 0.3));
  const ConfigDocument back = parse_config_document(emit_config(sc, out));
  EXPECT_TRUE(back.scenario == sc);
  EXPECT_TRUE(back.output == out);
}

TEST(Config, ErrorsCarryLineNumbers) {
  auto line_of = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return e.line();
    }
    return -1;
  };
  EXPECT_EQ(line_of("[scenario]\nn = 2\nbogus = 1\n[law]\nkind = rect\n"), 3);
  EXPECT_EQ(line_of("[scenario]\nn = two\n[law]\nkind = rect\n"), 2);
  EXPECT_EQ(line_of("[scenario]\nn = 2\n[law]\nkind = rect\nkind = circ\n"), 5);
  EXPECT_EQ(line_of("[scenario]\nn = 2\n[nope]\n"), 3);
  EXPECT_EQ(line_of("[scenario]\nn 2\n"), 2);
  EXPECT_THROW(parse_config("[scenario]\nn = 2\n"), ConfigError);  // law.kind missing
}

TEST(Config, A4ViolationIsNamed) {
  try {
    parse_config("[scenario]\nn = 2\n[law]\nkind = rect\nmu = 0.1\neta = 0.4\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("A4 violated: need mu > eta/2 > 0"), std::string::npos);
  }
}

TEST(Config, SweepSection) {
  const std::string text = std::string(kConfig) + "\n[sweep]\nsign = 1, -1\nseeds = 3..6\nmu = 0.5,0.7\n";
  const ConfigDocument doc = parse_config_document(text);
  ASSERT_TRUE(doc.sweep.has_value());
  EXPECT_EQ(doc.sweep->size(), 16u);
  EXPECT_EQ(doc.sweep->seeds, (std::vector<std::uint64_t>{3, 4, 5, 6}));
  EXPECT_EQ(doc.sweep->cell(15).law.mu, 0.7);
}

TEST(Config, LoadFileErrors) {
  EXPECT_THROW(load_config_file("/nonexistent/gyroform.cfg"), ConfigError);
}

TEST(Csv, HeaderRowsAndDeterminism) {
  Scenario sc = parse_config(kConfig);
  sc.duration = 0.0;
  const RunResult one = run_scenario(sc);
  const std::string csv = trajectory_csv(one.trajectory);
  std::istringstream is(csv);
  std::vector<std::string> lines;
  for (std::string l; std::getline(is, l);) lines.push_back(l);
  ASSERT_EQ(lines.size(), 3u);  // header + one row per particle
  EXPECT_EQ(lines[0], "t,id,rx,ry,rz,xx,xy,xz,yx,yy,yz,zx,zy,zz,u,v,w");
  EXPECT_EQ(std::count(lines[1].begin(), lines[1].end(), ','), 16);
  EXPECT_EQ(lines[2].substr(0, 4), "0,1,");

  sc.duration = 5.0;
  const fs::path dir = temp_dir("csv");
  write_trajectory_csv(run_scenario(sc).trajectory, (dir / "a.csv").string());
  write_trajectory_csv(run_scenario(sc).trajectory, (dir / "b.csv").string());
  EXPECT_EQ(read_file(dir / "a.csv"), read_file(dir / "b.csv"));
  EXPECT_FALSE(read_file(dir / "a.csv").empty());
  EXPECT_THROW(write_trajectory_csv(one.trajectory, (dir / "missing" / "x.csv").string()), Error);
}

TEST(Csv, ValuesRoundTripAtFullPrecision) {
  EXPECT_EQ(std::stod(format_real(0.1 + 0.2)), 0.1 + 0.2);
  EXPECT_EQ(format_real(0.5), "0.5");
}

TEST(Json, ReportParsesBack) {
  const RunResult res = run_scenario(parse_config(kConfig));
  const auto j = report_to_json(res.report);
  const std::string text = j.dump(2);
  const auto parsed = nlohmann::json::parse(text);
  for (const char* key : {"converged", "terminalClass", "finalSeparation", "minSeparation", "maxLyapunovIncrease",
                          "alignmentMetric", "wallTime"})
    EXPECT_TRUE(parsed.contains(key)) << key;
  EXPECT_EQ(j.begin().key(), "converged");
  const RunReport back = report_from_json(parsed);
  EXPECT_EQ(back.final_separation, res.report.final_separation);
  EXPECT_EQ(back.terminal, res.report.terminal);
  EXPECT_EQ(back.converged, res.report.converged);
  EXPECT_EQ(parsed["terminalClass"].get<std::string>(), std::string(to_string(res.report.terminal)));
}

TEST(Projection, ParseAndAxes) {
  EXPECT_EQ(Projection::parse("xz").kind, Projection::Kind::XZ);
  EXPECT_EQ(Projection::parse("auto").kind, Projection::Kind::Auto);
  const Projection c = Projection::parse("0, 0, 2");
  EXPECT_EQ(c.kind, Projection::Kind::Custom);
  EXPECT_THROW(Projection::parse("diagonal"), ContractError);
  EXPECT_THROW(Projection::parse("0,0,0"), ContractError);
  const auto [ax, ay] = projection_axes(Vec3(1, 1, 1).normalized());
  EXPECT_NEAR(ax.dot(ay), 0.0, 1e-15);
  EXPECT_NEAR(ax.cross(ay).dot(Vec3(1, 1, 1).normalized()), 1.0, 1e-15);
}

TEST(Svg, StructureAndErrors) {
  const RunResult res = run_scenario(golden_scenario());
  const std::string svg = render_svg(res.trajectory, Projection{});
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("width=\"800\""), std::string::npos);
  EXPECT_NE(svg.find("id=\"p0\""), std::string::npos);
  EXPECT_NE(svg.find("id=\"p1\""), std::string::npos);
  const auto lines = polyline_points(svg);
  ASSERT_EQ(lines.size(), 2u);
  for (const auto& l : lines)
    for (double v : l) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 800.0);
    }
  EXPECT_THROW(render_svg(Trajectory{}, Projection{}), ContractError);
}

TEST(Svg, FormationPlaneViewMatchesCustomNormal) {
  const RunResult res = run_scenario(golden_scenario());
  const Vec3 n = formation_plane_normal(res.trajectory);
  EXPECT_NEAR(std::abs(n.z()), 1.0, 1e-9);  // planar motion in the xy plane
  EXPECT_EQ(render_svg(res.trajectory, Projection{Projection::Kind::Auto, Vec3::UnitZ()}),
            render_svg(res.trajectory, Projection::custom(n)));
}

TEST(Svg, GoldenCirclingPair) {
  const RunResult res = run_scenario(golden_scenario());
  const std::string svg = render_svg(res.trajectory, Projection{});
  const fs::path golden = fs::path(GYROFORM_TEST_DATA_DIR) / "circling_pair.svg";
  if (std::getenv("GYROFORM_UPDATE_GOLDEN")) {
    std::ofstream(golden, std::ios::binary) << svg;
    GTEST_SKIP() << "golden fixture rewritten";
  }
  ASSERT_TRUE(fs::exists(golden));
  const auto want = polyline_points(read_file(golden)), got = polyline_points(svg);
  ASSERT_EQ(want.size(), got.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    ASSERT_EQ(want[i].size(), got[i].size());
    for (std::size_t k = 0; k < want[i].size(); ++k) EXPECT_NEAR(want[i][k], got[i][k], 2e-3);
  }
}
