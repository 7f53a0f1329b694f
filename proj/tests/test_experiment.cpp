#include "oga/experiment.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace oga;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("oga_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

constexpr const char* kTinyConfig = R"(name: tiny
preset: ex1_1d
c: -1
cells: 200
n_b: 50
b_margin: 1
n_max: 8
checkpoints: [4, 8]
refine: false
)";

}  // namespace

TEST_CASE("parse_config applies defaults, overrides and scalar cells") {
  const ExperimentConfig cfg = parse_config("preset: ex2_2d\ncells: 30\n", {"n_max=64", "checkpoints=[16, 32, 64]"});
  CHECK(cfg.preset == Preset::Ex2_2D);
  CHECK(cfg.cells == std::vector<int>{30, 30});
  CHECK(cfg.n_max == 64);
  CHECK(cfg.checkpoints == std::vector<int>{16, 32, 64});
  CHECK(cfg.quadrature_points == 2);
  CHECK(cfg.resolved_dof_per_neuron() == 3);
  CHECK(cfg.name == "experiment");
}

TEST_CASE("parse_config rejects bad input with the offending key") {
  CHECK_THROWS_WITH_AS(parse_config("presett: ex1_1d\n"), doctest::Contains("presett"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("preset: ex1_1d\n", {"bogus=1"}), doctest::Contains("bogus"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("preset: ex1_1d\n", {"n_max"}), doctest::Contains("key=value"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("preset: ex1_1d\nn_max: many\n"), doctest::Contains("n_max"), ConfigError);
  CHECK_THROWS_AS(parse_config("preset: ex1_1d\ncells: [10, 10]\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("preset: ex1_1d\nsampling: angular\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("- a\n- b\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.yaml"), ConfigError);
}

TEST_CASE("emit_table formats CSV and markdown") {
  ConvergenceRow first{16, 48, 6.740e-4, std::nullopt, 2.428e-2, std::nullopt};
  ConvergenceRow second{32, 96, 6.793e-5, 3.3105, 5.290e-3, 2.1984};
  const std::string csv = emit_table({first}, TableFormat::Csv);
  CHECK(csv == "n,dof,l2_error,l2_order,h1_error,h1_order\n16,48,6.740e-04,,2.428e-02,\n");

  const std::string two = emit_table({first, second}, TableFormat::Csv);
  CHECK(two.find("32,96,6.793e-05,3.31,5.290e-03,2.20\n") != std::string::npos);

  const std::string md = emit_table({first, second}, TableFormat::Markdown);
  const auto back = parse_markdown_table(md);
  REQUIRE(back.size() == 2);
  CHECK(back[0].n == 16);
  CHECK(back[0].dof == 48);
  CHECK_FALSE(back[0].l2_order.has_value());
  CHECK(back[1].l2_error == doctest::Approx(6.793e-5));
  CHECK(*back[1].l2_order == doctest::Approx(3.31));
  CHECK(*back[1].h1_order == doctest::Approx(2.20));
  CHECK(emit_table(back, TableFormat::Markdown) == md);
}

TEST_CASE("parse_output_format") {
  CHECK(parse_output_format("csv").csv);
  CHECK_FALSE(parse_output_format("csv").markdown);
  CHECK(parse_output_format("both").markdown);
  CHECK_THROWS_AS(parse_output_format("xml"), ConfigError);
}

TEST_CASE("run_experiment with a single iteration yields one row without orders") {
  const ExperimentConfig cfg = parse_config(kTinyConfig, {"n_max=1", "checkpoints=[1]"});
  const ExperimentResult r = run_experiment(cfg);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].n == 1);
  CHECK(r.rows[0].dof == 2);
  CHECK_FALSE(r.rows[0].l2_order.has_value());
  CHECK(r.rows[0].l2_error > 0.0);
  CHECK(std::isfinite(r.rows[0].h1_error));
  CHECK(r.metadata().contains("config"));
}

TEST_CASE("write_outputs writes the selected files") {
  const fs::path dir = scratch_dir("outputs");
  const ExperimentResult r = run_experiment(parse_config(kTinyConfig));
  const auto written = write_outputs(r, dir, parse_output_format("both"));
  CHECK(written.size() == 3);
  CHECK(fs::exists(dir / "tiny.csv"));
  CHECK(fs::exists(dir / "tiny.md"));
  CHECK(fs::exists(dir / "tiny.meta.json"));
  const auto meta = nlohmann::json::parse(read_file(dir / "tiny.meta.json"));
  CHECK(meta["config"]["n_b"] == 50);
  CHECK(read_file(dir / "tiny.csv") == emit_table(r.rows, TableFormat::Csv));
}

TEST_CASE("the CLI writes byte-identical tables on repeated runs") {
  const fs::path dir = scratch_dir("cli");
  const fs::path cfg = dir / "tiny.yaml";
  std::ofstream(cfg) << kTinyConfig;
  const std::string base = std::string(OGA_RUN_PATH) + " --quiet --format csv --config " + cfg.string();
  REQUIRE(std::system((base + " --out " + (dir / "a").string()).c_str()) == 0);
  REQUIRE(std::system((base + " --out " + (dir / "b").string()).c_str()) == 0);
  const std::string a = read_file(dir / "a" / "tiny.csv");
  CHECK_FALSE(a.empty());
  CHECK(a == read_file(dir / "b" / "tiny.csv"));
  CHECK_FALSE(fs::exists(dir / "a" / "tiny.md"));

  const std::string bad = base + " --override bogus=1 --out " + (dir / "c").string() + " 2>/dev/null";
  CHECK(std::system(bad.c_str()) != 0);
}
