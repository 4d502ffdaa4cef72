#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "hybridgen/cli.hpp"
#include "hybridgen/errors.hpp"
#include "hybridgen/schemes.hpp"

using namespace hybridgen;
using namespace hybridgen::cli;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::runtime_error("missing column " + name);
}

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "hybridgen");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("hybridgen_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Format, TwelveSignificantDigits) {
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(2.0), "2");
  EXPECT_EQ(format_number(1.5e-20), "1.5e-20");
  EXPECT_EQ(format_number(std::nan("")), "nan");
}

TEST(Format, CsvQuoting) {
  EXPECT_EQ(csv_escape("plain"), "plain");
  EXPECT_EQ(csv_escape("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_line({"a", "b"}), "a,b\n");
}

TEST(Config, ParsesSectionsAndKeepsDefaults) {
  const auto cfg = parse_config(R"({
    "schema_version": 1,
    "oracle": true,
    "matrix_elements": {"l_max": 2, "alpha": [0.5, -0.25]},
    "scheme": {"scheme": "B", "heralds": [[0, 0], [1, 1]], "t": [0.95],
               "alpha": {"start": 0.2, "stop": 1.0, "steps": 5}}
  })");
  cfg.check();
  EXPECT_TRUE(cfg.oracle);
  EXPECT_EQ(cfg.matrix_elements.l_max, 2);
  EXPECT_EQ(cfg.matrix_elements.n_max, 40);
  EXPECT_EQ(cfg.matrix_elements.alpha, Complex(0.5, -0.25));
  EXPECT_EQ(cfg.scheme.scheme, SchemeKind::B);
  EXPECT_EQ(cfg.scheme.heralds.size(), 2u);
  EXPECT_EQ(cfg.scheme.alpha.values().back(), 1.0);
}

TEST(Config, RejectsInvalidDocuments) {
  EXPECT_THROW(parse_config("{not json"), ConfigError);
  EXPECT_THROW(parse_config(R"({"oracle": true})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"schema_version": 1, "scheme": {"scheme": "C"}})"), ConfigError);
  auto bad_version = parse_config(R"({"schema_version": 2})");
  EXPECT_THROW(bad_version.check(), ConfigError);
  auto bad_t = parse_config(R"({"schema_version": 1, "scheme": {"t": [1.0]}})");
  EXPECT_THROW(bad_t.check(), ConfigError);
  auto bad_steps = parse_config(R"({"schema_version": 1, "scheme": {"alpha": {"steps": 1}}})");
  EXPECT_THROW(bad_steps.check(), ConfigError);
  auto big_alpha = parse_config(R"({"schema_version": 1, "matrix_elements": {"alpha": 4.5}})");
  EXPECT_THROW(big_alpha.check(), ConfigError);
}

TEST(MatrixElementsCommand, GridAndValues) {
  MatrixElementsParams p;
  p.l_max = 1;
  p.n_max = 3;
  p.alpha = 1.0;
  const auto csv = matrix_elements_csv(p);
  const auto rows = parse_csv(csv);
  ASSERT_EQ(rows.size(), 9u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"l", "n", "alpha_re", "alpha_im", "c_re", "c_im", "F"}));
  EXPECT_EQ(rows[3][0], "0");
  EXPECT_EQ(rows[3][1], "2");
  EXPECT_NEAR(std::stod(rows[3][4]), 0.70711, 5e-6);
  EXPECT_EQ(matrix_elements_csv(p), csv);
}

TEST(SchemeCommand, RowCount) {
  SchemeParams p;
  const auto table = scheme_csv(p, false);
  EXPECT_EQ(table.rows, 300u);
  EXPECT_EQ(parse_csv(table.csv).size(), 301u);
  EXPECT_EQ(table.failed_rows, 0u);
}

TEST(SchemeCommand, BalancedProbabilityColumn) {
  SchemeParams p;
  p.balanced = true;
  p.t = {0.9};
  p.heralds = {{0, -1}, {2, -1}};
  p.alpha = {0.3, 1.5, 5};
  const auto rows = parse_csv(scheme_csv(p, false).csv);
  const auto& h = rows[0];
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double alpha = std::stod(rows[i][column(h, "alpha")]);
    const int n = std::stoi(rows[i][column(h, "herald_n")]);
    const double expected =
        success_prob_balanced_a(n, balanced_config_a(n, SchemeConfig::from_alpha(alpha, 0.9)));
    EXPECT_NEAR(std::stod(rows[i][column(h, "probability")]), expected, 1e-11);
  }
}

TEST(SchemeCommand, BalancedPoleRowIsFlagged) {
  SchemeParams p;
  p.balanced = true;
  p.t = {0.9};
  p.heralds = {{1, -1}};
  p.alpha = {0.5, 1.0, 2};
  const auto rows = parse_csv(scheme_csv(p, false).csv);
  EXPECT_EQ(rows[2][column(rows[0], "flags")], "pole");
  EXPECT_EQ(rows[2][column(rows[0], "probability")], "0");
}

TEST(SchemeCommand, OracleColumnsTrackAnalytic) {
  SchemeParams p;
  p.t = {0.99};
  p.alpha = {0.2, 2.0, 10};
  const auto rows = parse_csv(scheme_csv(p, true).csv);
  const auto& h = rows[0];
  double worst = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    worst = std::max(worst, std::abs(std::stod(rows[i][column(h, "probability")]) -
                                     std::stod(rows[i][column(h, "probability_oracle")])));
    EXPECT_GT(std::stod(rows[i][column(h, "fidelity_oracle")]), 0.95);
  }
  // The limit formulas neglect O(r^2) terms. At t = 0.99 the gap peaks near
  // 1e-2 at alpha = 0.2, where the cat is small.
  EXPECT_LT(worst, 1.5e-2);
}

TEST(SchemeCommand, DualRailOracleRow) {
  SchemeParams p;
  p.scheme = SchemeKind::B;
  p.t = {0.99};
  p.alpha = {0.9, 1.0, 2};
  p.heralds = {{0, 0}};
  const auto rows = parse_csv(scheme_csv(p, true).csv);
  const auto& h = rows[0];
  EXPECT_EQ(rows[1][column(h, "herald_m")], "0");
  EXPECT_EQ(rows[1][column(h, "fidelity_first_order")], "nan");
  EXPECT_GT(std::stod(rows[2][column(h, "fidelity_oracle")]), 0.99);
}

TEST(SchemeCommand, OutputIndependentOfThreadCount) {
  SchemeParams p;
  p.alpha = {0.2, 1.8, 9};
  setenv("HYBRIDGEN_THREADS", "1", 1);
  const auto one = scheme_csv(p, true).csv;
  EXPECT_EQ(worker_count(), 1u);
  setenv("HYBRIDGEN_THREADS", "4", 1);
  const auto four = scheme_csv(p, true).csv;
  EXPECT_EQ(worker_count(), 4u);
  unsetenv("HYBRIDGEN_THREADS");
  EXPECT_EQ(one, four);
}

TEST(FiguresCommand, CurveFamilies) {
  FiguresParams p;
  const auto files = figures_csv(p);
  ASSERT_EQ(files.size(), 7u);
  for (const char* name : {"fig2a.csv", "fig2b.csv", "fig2c.csv", "fig3a.csv", "fig3b.csv"}) {
    const auto rows = parse_csv(files.at(name));
    EXPECT_EQ(rows[0].size(), 4u) << name;
    EXPECT_EQ(rows.size(), 41u) << name;
  }
  EXPECT_EQ(parse_csv(files.at("fig3c.csv"))[0].size(), 5u);
  EXPECT_EQ(parse_csv(files.at("fig4.csv"))[0], (std::vector<std::string>{"t", "P_total"}));
  FiguresParams only4;
  only4.which = "fig4";
  EXPECT_EQ(figures_csv(only4).size(), 1u);
}

TEST(FiguresCommand, SumDominatesEveryTerm) {
  FiguresParams p;
  p.which = "fig3";
  const auto rows = parse_csv(figures_csv(p).at("fig3c.csv"));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double alpha = std::stod(rows[i][0]);
    const double sum = std::stod(rows[i][4]);
    const auto cfg = SchemeConfig::dual_from_alpha(alpha, alpha, 0.99);
    for (int n = 0; n <= 5; ++n) {
      for (int m = 0; n + m <= 5; ++m) EXPECT_GE(sum + 1e-12, success_prob_b(n, m, cfg));
    }
  }
}

TEST(FiguresCommand, UnknownFigure) {
  FiguresParams p;
  p.which = "fig9";
  EXPECT_THROW(figures_csv(p), ConfigError);
}

TEST(ValidateCommand, DefaultPassesAndReportsResiduals) {
  const auto checks = run_validation(ValidateParams{});
  for (const auto& c : checks) EXPECT_TRUE(c.pass) << c.name << " residual " << c.residual;
  const auto json = validation_report_json(checks);
  EXPECT_NE(json.find("\"tolerance\""), std::string::npos);
  EXPECT_NE(json.find("\"residual\""), std::string::npos);
}

TEST(ValidateCommand, MirroredBeamSplitterFailsContract) {
  ValidateParams p;
  p.mirrored_bs = true;
  for (const auto& c : run_validation(p)) {
    if (c.name == "coherent_contract") EXPECT_FALSE(c.pass);
  }
}

TEST(Cli, ExitCodesAndFiles) {
  const auto dir = scratch_dir("cli");
  const auto me = (dir / "me.csv").string();
  EXPECT_EQ(run({"matrix-elements", "--l-max", "1", "--n-max", "3", "--alpha", "1", "--out", me}), kExitOk);
  const auto first = read_file(me);
  EXPECT_EQ(run({"matrix-elements", "--l-max", "1", "--n-max", "3", "--alpha", "1", "--out", me}), kExitOk);
  EXPECT_EQ(read_file(me), first);
  EXPECT_EQ(first.find('\r'), std::string::npos);

  EXPECT_EQ(run({"figures", "fig2", "--out", (dir / "figs").string()}), kExitOk);
  EXPECT_TRUE(std::filesystem::exists(dir / "figs" / "fig2c.csv"));

  EXPECT_EQ(run({"validate", "--out", (dir / "report.json").string()}), kExitOk);
  EXPECT_EQ(run({"validate", "--inject-mirrored-bs", "--out", (dir / "bad.json").string()}),
            kExitValidation);

  EXPECT_EQ(run({"scheme", "--t", "1.5", "--out", (dir / "x.csv").string()}), kExitConfig);
  EXPECT_EQ(run({"figures", "fig7"}), kExitConfig);
  EXPECT_EQ(run({"scheme", "--config", (dir / "missing.json").string()}), kExitConfig);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const auto dir = scratch_dir("config");
  const auto path = dir / "run.json";
  std::ofstream(path) << R"({"schema_version": 1, "scheme": {"t": [0.9], "heralds": [0],
                           "alpha": {"start": 0.5, "stop": 1.0, "steps": 3}}})";
  const auto out = (dir / "s.csv").string();
  EXPECT_EQ(run({"scheme", "--config", path.string(), "--t", "0.95", "--out", out}), kExitOk);
  const auto rows = parse_csv(read_file(out));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1][column(rows[0], "t")], "0.95");
}

TEST(Cli, AllRowsTruncatedGivesTruncationExit) {
  const auto dir = scratch_dir("trunc");
  const auto path = dir / "run.json";
  std::ofstream(path) << R"({"schema_version": 1, "oracle": true,
      "scheme": {"t": [0.99], "heralds": [0], "alpha": {"start": 1.0, "stop": 1.2, "steps": 2},
                 "truncation": {"coherent_dim": 5}}})";
  EXPECT_EQ(run({"scheme", "--config", path.string(), "--out", (dir / "s.csv").string()}),
            kExitTruncation);
}
