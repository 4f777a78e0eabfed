#include <gtest/gtest.h>
#include <yaml-cpp/yaml.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "plot.hpp"
#include "ripkit/errors.hpp"
#include "sweep.hpp"
#include "table.hpp"

namespace fs = std::filesystem;

namespace ripkit::cli {
namespace {

const char* kRatesConfig = R"(
targets:
  omega_c_mhz: 6971
  qubits:
    - {omega01_mhz: 5140, alpha_mhz: -205, two_chi_mhz: -5.57, n_g: 0}
    - {omega01_mhz: 5500, alpha_mhz: -205, two_chi_mhz: -5.0, n_g: 0}
inversion: {n_charge: 20, n_qubit_keep: 4, n_photon: 4}
rates:
  model: [jc, kerr]
  photons: 4
  delta_cd_mhz: -60
sweep:
  task: rates
  axes:
    - {path: rates.delta_cd_mhz, name: delta, values: {from: -80, to: -40, points: 5}}
    - {path: rates.photons, name: n, values: [1, 4]}
)";

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("ripkit_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Config, GridForms) {
  const YAML::Node n = YAML::Load("{a: 3, b: [1, 2.5], c: {from: 0, to: 1, step: 0.25}, d: {from: 0, to: 1, points: 3}}");
  EXPECT_EQ(get_grid(n, "a", "t"), (std::vector<double>{3}));
  EXPECT_EQ(get_grid(n, "b", "t"), (std::vector<double>{1, 2.5}));
  EXPECT_EQ(get_grid(n, "c", "t").size(), 5u);
  EXPECT_DOUBLE_EQ(get_grid(n, "c", "t").back(), 1.0);
  EXPECT_EQ(get_grid(n, "d", "t"), (std::vector<double>{0, 0.5, 1}));
  EXPECT_THROW(get_grid(n, "missing", "t"), ConfigError);
  EXPECT_THROW(get_double(n, "missing", "t"), ConfigError);
}

TEST(Config, OverrideLeavesTheOriginalAlone) {
  const YAML::Node root = YAML::Load(kRatesConfig);
  const YAML::Node changed = with_override(root, "targets.qubits.0.alpha_mhz", -150);
  EXPECT_DOUBLE_EQ(changed["targets"]["qubits"][0]["alpha_mhz"].as<double>(), -150);
  EXPECT_DOUBLE_EQ(root["targets"]["qubits"][0]["alpha_mhz"].as<double>(), -205);
  EXPECT_NE(config_hash(root), config_hash(changed));
  EXPECT_EQ(config_hash(root), config_hash(YAML::Load(kRatesConfig)));
}

TEST(Config, BadConfigsAreRejected) {
  EXPECT_THROW(resolve_device(YAML::Load("{rates: {photons: 1}}")), ConfigError);
  const YAML::Node root = YAML::Load(kRatesConfig);
  EXPECT_THROW(run_command("nonsense", root, {}), ConfigError);
  EXPECT_THROW(rate_model("bogus"), ConfigError);
}

TEST(Table, CsvRoundTrip) {
  Table t{"demo", {"x", "label", "k"}, {}};
  t.add({1.25, std::string("(0 1, 0)"), 3LL});
  t.add({-1e-9, std::string("plain"), -2LL});
  const fs::path dir = scratch("csv");
  const fs::path p = write_table(t, dir, Format::csv);
  const Table back = read_csv(p);
  EXPECT_EQ(back.columns, t.columns);
  ASSERT_EQ(back.rows.size(), 2u);
  EXPECT_EQ(back.numbers("x"), (std::vector<double>{1.25, -1e-9}));
  EXPECT_EQ(std::get<std::string>(back.rows[0][1]), "(0 1, 0)");
  EXPECT_EQ(slurp(p).rfind(kSchemaHeader, 0), 0u);
}

TEST(Table, JsonCarriesTheSchema) {
  Table t{"demo", {"x"}, {}};
  t.add({2.0});
  std::stringstream ss;
  write_json(t, ss);
  const auto j = nlohmann::json::parse(ss.str());
  EXPECT_EQ(j["table"], "demo");
  EXPECT_EQ(j["rows"].size(), 1u);
}

TEST(Sweep, OutputDoesNotDependOnJobs) {
  const YAML::Node root = YAML::Load(kRatesConfig);
  const fs::path a = scratch("jobs1"), b = scratch("jobs3");
  SweepOptions o;
  o.out = a;
  o.jobs = 1;
  const SweepSummary s1 = run_sweep(root, o);
  o.out = b;
  o.jobs = 3;
  const SweepSummary s3 = run_sweep(root, o);
  EXPECT_EQ(s1.points, 10u);
  EXPECT_EQ(s1.computed, 10u);
  EXPECT_EQ(s3.failed, 0u);
  EXPECT_EQ(slurp(a / "rates.csv"), slurp(b / "rates.csv"));
  EXPECT_FALSE(slurp(a / "rates.csv").empty());
}

TEST(Sweep, ResumeSkipsFinishedPoints) {
  const YAML::Node root = YAML::Load(kRatesConfig);
  const fs::path dir = scratch("resume");
  SweepOptions o;
  o.out = dir;
  run_sweep(root, o);
  const std::string first = slurp(dir / "rates.csv");
  const SweepSummary again = run_sweep(root, o);
  EXPECT_EQ(again.skipped, 10u);
  EXPECT_EQ(again.computed, 0u);
  EXPECT_EQ(slurp(dir / "rates.csv"), first);

  // a different config must not be merged into this directory
  EXPECT_THROW(run_sweep(with_override(root, "rates.photons", 9), o), ConfigError);
}

TEST(Sweep, FailedPointsAreRetried) {
  YAML::Node root = YAML::Load(kRatesConfig);
  root["sweep"]["axes"] = YAML::Load("[{path: rates.delta_cd_mhz, name: delta, values: [-40, 0]}]");
  const fs::path dir = scratch("failed");
  SweepOptions o;
  o.out = dir;
  const SweepSummary s = run_sweep(root, o);
  EXPECT_EQ(s.failed, 1u);
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(manifest["points"][1]["status"], "failed");
  const SweepSummary again = run_sweep(root, o);
  EXPECT_EQ(again.skipped, 1u);
  EXPECT_EQ(again.computed + again.failed, 1u);
}

TEST(Sweep, SinglePointEqualsTheDirectCommand) {
  YAML::Node root = YAML::Load(kRatesConfig);
  root["sweep"]["axes"] = YAML::Load("[{path: rates.delta_cd_mhz, name: delta, values: [-60]}]");
  const fs::path dir = scratch("single");
  SweepOptions o;
  o.out = dir;
  run_sweep(root, o);
  const Table merged = read_csv(dir / "rates.csv");
  const auto direct = run_command("rates", YAML::Load(kRatesConfig), {});
  ASSERT_EQ(direct.size(), 1u);
  ASSERT_EQ(merged.rows.size(), direct[0].rows.size());
  for (const char* c : {"omega_iz_mhz", "omega_zi_mhz", "omega_zz_mhz"}) {
    const auto m = merged.numbers(c), d = direct[0].numbers(c);
    for (std::size_t i = 0; i < m.size(); ++i) EXPECT_NEAR(m[i], d[i], 1e-10 * (1 + std::abs(d[i]))) << c;
  }
}

TEST(Plot, DetectsKinds) {
  EXPECT_EQ(detect_plot_kind(Table{"r", {"delta_cd_mhz", "omega_zz_mhz", "model"}, {}}), "rates");
  EXPECT_EQ(detect_plot_kind(Table{"l", {"alpha", "total", "qubit"}, {}}), "leakage");
  EXPECT_EQ(detect_plot_kind(Table{"p", {"t_ns", "re_eta", "im_eta"}, {}}), "response");
  EXPECT_THROW(detect_plot_kind(Table{"x", {"foo"}, {}}), ConfigError);
}

TEST(Plot, WritesSvg) {
  const auto tables = run_command("rates", YAML::Load(kRatesConfig), {});
  const fs::path dir = scratch("plot");
  const fs::path svg = emit_plot(tables[0], "auto", dir);
  EXPECT_EQ(svg.extension(), ".svg");
  EXPECT_NE(slurp(svg).find("<svg"), std::string::npos);
}

}  // namespace
}  // namespace ripkit::cli
