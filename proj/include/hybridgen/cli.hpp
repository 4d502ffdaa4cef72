#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hybridgen/fock.hpp"
#include "hybridgen/scheme_config.hpp"

namespace hybridgen::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitTruncation = 4;

inline constexpr int kSchemaVersion = 1;
inline constexpr double kMaxAlpha = 4.0;

struct SweepAxis {
  double start = 0.0;
  double stop = 1.0;
  int steps = 2;

  std::vector<double> values() const;
};

struct MatrixElementsParams {
  int l_max = 4;
  int n_max = 40;
  Complex alpha{1.0};
};

enum class SchemeKind { A, B };

struct SchemeParams {
  SchemeKind scheme = SchemeKind::A;
  SweepAxis alpha{0.05, 2.0, 50};
  std::vector<double> t{0.8, 0.9, 0.99};
  // Scheme A uses the first entry of each pair; scheme B uses both.
  std::vector<std::pair<int, int>> heralds{{0, -1}, {1, -1}};
  Complex a0{kInvSqrt2};
  Complex a1{kInvSqrt2};
  bool balanced = false;
  // Auxiliary displacement for scheme B; negative means "same as alpha".
  double alpha1 = -1.0;
  TruncationOverrides truncation;
};

struct FiguresParams {
  std::string which = "all";
  SweepAxis alpha{0.05, 2.0, 40};
  SweepAxis t{0.8, 0.995, 40};
};

struct ValidateParams {
  unsigned seed = 20240611u;
  int samples = 50;
  // Negative control: run every beam-splitter check with r -> -r.
  bool mirrored_bs = false;
};

struct RunConfig {
  int schema_version = kSchemaVersion;
  bool oracle = false;
  std::string out;  // empty: command default
  MatrixElementsParams matrix_elements;
  SchemeParams scheme;
  FiguresParams figures;
  ValidateParams validate;

  // Throws ConfigError.
  void check() const;
};

// Parses a JSON document; missing fields keep their defaults. Throws
// ConfigError on malformed input or a schema_version mismatch.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

// Fixed 12-significant-digit formatting with -0 printed as 0.
std::string format_number(double x);
std::string csv_escape(const std::string& field);
std::string csv_line(const std::vector<std::string>& fields);

// Worker count from HYBRIDGEN_THREADS, else the logical core count.
unsigned worker_count();

struct SchemeTable {
  std::string csv;
  std::size_t rows = 0;
  std::size_t failed_rows = 0;
};

std::string matrix_elements_csv(const MatrixElementsParams& p);
SchemeTable scheme_csv(const SchemeParams& p, bool oracle);

// File name -> CSV contents for fig2 | fig3 | fig4 | all.
std::map<std::string, std::string> figures_csv(const FiguresParams& p);

struct CheckResult {
  std::string name;
  double tolerance = 0.0;
  double residual = 0.0;
  bool pass = false;
};

std::vector<CheckResult> run_validation(const ValidateParams& p);
std::string validation_report_json(const std::vector<CheckResult>& checks);

// Entry point of the hybridgen executable; returns the exit code.
int run_cli(int argc, char** argv);

}  // namespace hybridgen::cli
