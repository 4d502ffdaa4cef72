#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "hybridgen/cli.hpp"
#include "hybridgen/displaced.hpp"
#include "hybridgen/errors.hpp"
#include "hybridgen/fidelity.hpp"
#include "hybridgen/oracle.hpp"
#include "hybridgen/schemes.hpp"
#include "parallel.hpp"

namespace hybridgen::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Transmittances of the three curve families in the figure panels.
constexpr double kFigureT[] = {0.8, 0.9, 0.99};
constexpr double kSumT = 0.99;
constexpr int kSumOrder = 5;

std::string t_label(const std::string& prefix, double t) {
  return prefix + "_t" + format_number(t);
}

struct FlagSet {
  std::vector<std::string> names;

  void add(const std::string& f) {
    if (std::find(names.begin(), names.end(), f) == names.end()) names.push_back(f);
  }
  void add_oracle(unsigned bits) {
    if (bits & kFlagPole) add("pole");
    if (bits & kFlagTruncation) add("herald_tail");
    if (bits & kFlagFactorization) add("factorization");
    if (bits & kFlagZeroProbability) add("zero_probability");
  }
  std::string str() const {
    std::string s;
    for (const auto& n : names) s += (s.empty() ? "" : "|") + n;
    return s;
  }
};

struct SchemeRow {
  double alpha = 0.0;
  double t = 0.0;
  double beta = 0.0;
  int n = 0;
  int m = -1;
  double probability = kNaN;
  double fid0 = kNaN;
  double fid1 = kNaN;
  double p_oracle = kNaN;
  double f_oracle = kNaN;
  FlagSet flags;
  bool failed = false;
};

// Evaluates f, recording a flag instead of propagating domain failures.
template <class F>
double guarded(F f, FlagSet& flags, const char* on_domain) {
  try {
    return f();
  } catch (const DomainError&) {
    flags.add(on_domain);
  }
  return kNaN;
}

void oracle_a(SchemeRow& row, const SchemeConfig& cfg) {
  SchemeConfig run = cfg;
  run.herald_max = row.n;
  const auto res = run_scheme_a_exact(run).at(static_cast<std::size_t>(row.n));
  row.p_oracle = res.probability;
  row.f_oracle = res.fidelity_vs_ideal;
  row.flags.add_oracle(res.flags & ~static_cast<unsigned>(kFlagTruncation));
}

void oracle_b(SchemeRow& row, const SchemeConfig& cfg) {
  SchemeConfig run = cfg;
  run.herald_max = std::max(row.n, row.m);
  const auto all = run_scheme_b_exact(run);
  const auto idx = static_cast<std::size_t>(row.n * (run.herald_max + 1) + row.m);
  const auto& res = all.at(idx);
  row.p_oracle = res.probability;
  row.f_oracle = res.fidelity_vs_ideal;
  row.flags.add_oracle(res.flags & ~static_cast<unsigned>(kFlagTruncation));
}

void fill_row_a(SchemeRow& row, const SchemeParams& p, bool oracle) {
  SchemeConfig cfg = SchemeConfig::from_alpha(row.alpha, row.t, p.a0, p.a1);
  cfg.truncation = p.truncation;
  row.beta = cfg.beta();
  if (p.balanced) {
    try {
      cfg = balanced_config_a(row.n, cfg);
      row.probability = success_prob_balanced_a(row.n, cfg);
    } catch (const DomainError&) {
      // No balancing amplitudes at a pole; the limit of the balanced
      // probability is continuous there.
      row.flags.add("pole");
      row.probability = balanced_probability_a(row.n, row.alpha, row.beta);
      row.fid0 = fidelity_balanced(row.alpha, row.t);
      return;
    }
  } else {
    row.probability = success_prob_a(row.n, cfg);
  }
  if (hybrid_state_a(row.n, cfg).pole) row.flags.add("pole");
  row.fid0 = guarded([&] { return fidelity_a_analytic(row.n, cfg); }, row.flags,
                     "degenerate");
  row.fid1 = guarded([&] { return fidelity_first_order(row.n, cfg); }, row.flags,
                     "degenerate");
  if (oracle) oracle_a(row, cfg);
}

void fill_row_b(SchemeRow& row, const SchemeParams& p, bool oracle) {
  const double alpha1 = p.alpha1 >= 0.0 ? p.alpha1 : row.alpha;
  SchemeConfig cfg = SchemeConfig::dual_from_alpha(row.alpha, alpha1, row.t, p.a0, p.a1);
  cfg.truncation = p.truncation;
  row.beta = cfg.beta();
  if (p.balanced) {
    try {
      cfg = balanced_config_b(row.n, row.m, cfg);
      row.probability = row.n == row.m && alpha1 == row.alpha
                            ? success_prob_balanced_b(row.n, cfg)
                            : success_prob_weighted_b(row.n, row.m, cfg);
    } catch (const DomainError&) {
      row.flags.add("pole");
      row.probability =
          balanced_probability_b(row.n, row.m, row.alpha, alpha1, row.beta);
      return;
    }
  } else {
    row.probability = success_prob_b(row.n, row.m, cfg);
  }
  if (hybrid_state_b(row.n, row.m, cfg).pole) row.flags.add("pole");
  row.fid0 = guarded([&] { return fidelity_b_analytic(row.n, row.m, cfg); }, row.flags,
                     "degenerate");
  if (oracle) oracle_b(row, cfg);
}

}  // namespace

std::string matrix_elements_csv(const MatrixElementsParams& p) {
  std::string out =
      csv_line({"l", "n", "alpha_re", "alpha_im", "c_re", "c_im", "F"});
  const double f = envelope(p.alpha);
  for (int l = 0; l <= p.l_max; ++l) {
    for (int n = 0; n <= p.n_max; ++n) {
      const Complex c = matrix_element(l, n, p.alpha);
      out += csv_line({std::to_string(l), std::to_string(n), format_number(p.alpha.real()),
                       format_number(p.alpha.imag()), format_number(c.real()),
                       format_number(c.imag()), format_number(f)});
    }
  }
  return out;
}

SchemeTable scheme_csv(const SchemeParams& p, bool oracle) {
  const auto alphas = p.alpha.values();
  std::vector<SchemeRow> rows;
  for (double a : alphas) {
    for (double t : p.t) {
      for (const auto& [n, m] : p.heralds) {
        SchemeRow row;
        row.alpha = a;
        row.t = t;
        row.n = n;
        row.m = p.scheme == SchemeKind::B ? m : -1;
        rows.push_back(row);
      }
    }
  }

  detail::parallel_for(rows.size(), [&](std::size_t i) {
    auto& row = rows[i];
    try {
      if (p.scheme == SchemeKind::A) {
        fill_row_a(row, p, oracle);
      } else {
        fill_row_b(row, p, oracle);
      }
    } catch (const TruncationError&) {
      row.flags.add("truncation");
      row.failed = true;
    } catch (const DimensionError&) {
      row.flags.add("truncation");
      row.failed = true;
    }
  });

  SchemeTable table;
  table.csv = csv_line({"scheme", "alpha", "t", "beta", "herald_n", "herald_m",
                        "probability", "fidelity_zero_order", "fidelity_first_order",
                        "probability_oracle", "fidelity_oracle", "flags"});
  for (const auto& row : rows) {
    table.csv += csv_line(
        {p.scheme == SchemeKind::A ? "A" : "B", format_number(row.alpha),
         format_number(row.t), format_number(row.beta), std::to_string(row.n),
         row.m < 0 ? "" : std::to_string(row.m), format_number(row.probability),
         format_number(row.fid0), format_number(row.fid1), format_number(row.p_oracle),
         format_number(row.f_oracle), row.flags.str()});
    ++table.rows;
    if (row.failed) ++table.failed_rows;
  }
  return table;
}

std::map<std::string, std::string> figures_csv(const FiguresParams& p) {
  std::map<std::string, std::string> files;
  const auto alphas = p.alpha.values();
  const bool all = p.which == "all";

  // One column per transmittance, one row per alpha.
  auto panel = [&](const std::string& label, auto value,
                   const std::vector<std::pair<std::string, std::function<double(double)>>>&
                       extra = {}) {
    std::vector<std::string> header{"alpha"};
    for (double t : kFigureT) header.push_back(t_label(label, t));
    for (const auto& [name, fn] : extra) header.push_back(name);
    std::vector<std::vector<double>> cols(alphas.size());
    detail::parallel_for(alphas.size(), [&](std::size_t i) {
      for (double t : kFigureT) cols[i].push_back(value(alphas[i], t));
      for (const auto& [name, fn] : extra) cols[i].push_back(fn(alphas[i]));
    });
    std::string out = csv_line(header);
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      std::vector<std::string> line{format_number(alphas[i])};
      for (double v : cols[i]) line.push_back(format_number(v));
      out += csv_line(line);
    }
    return out;
  };

  auto beta_of = [](double alpha, double t) { return Arm::from_alpha(alpha, t).beta; };

  if (all || p.which == "fig2") {
    files["fig2a.csv"] = panel("P0", [&](double a, double t) {
      return balanced_probability_a(0, a, beta_of(a, t));
    });
    files["fig2b.csv"] = panel("P1", [&](double a, double t) {
      return balanced_probability_a(1, a, beta_of(a, t));
    });
    files["fig2c.csv"] =
        panel("Fid1", [&](double a, double t) { return fidelity_balanced(a, t); });
  }
  if (all || p.which == "fig3") {
    auto pnm = [&](int n, int m) {
      return [=](double a, double t) {
        return balanced_probability_b(n, m, a, a, beta_of(a, t));
      };
    };
    files["fig3a.csv"] = panel("P00", pnm(0, 0));
    files["fig3b.csv"] = panel("P11", pnm(1, 1));
    // Panel (c) uses equal input amplitudes without balancing.
    auto unbalanced = [](int n, int m, double a, double t) {
      return success_prob_b(n, m, SchemeConfig::dual_from_alpha(a, a, t));
    };
    const std::function<double(double)> sum = [&](double a) {
      double s = 0.0;
      for (int n = 0; n <= kSumOrder; ++n) {
        for (int m = 0; n + m <= kSumOrder; ++m) s += unbalanced(n, m, a, kSumT);
      }
      return s;
    };
    files["fig3c.csv"] =
        panel("P01", [&](double a, double t) { return unbalanced(0, 1, a, t); },
              {{"Psum_nm_le5_t" + format_number(kSumT), sum}});
  }
  if (all || p.which == "fig4") {
    const auto ts = p.t.values();
    std::vector<double> vals(ts.size());
    detail::parallel_for(ts.size(),
                         [&](std::size_t i) { vals[i] = fig4_total_probability(ts[i]); });
    std::string out = csv_line({"t", "P_total"});
    for (std::size_t i = 0; i < ts.size(); ++i) {
      out += csv_line({format_number(ts[i]), format_number(vals[i])});
    }
    files["fig4.csv"] = out;
  }
  if (files.empty()) throw ConfigError("unknown figure id \"" + p.which + "\"");
  return files;
}

}  // namespace hybridgen::cli
