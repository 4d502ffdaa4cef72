#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "hybridgen/cli.hpp"
#include "hybridgen/errors.hpp"

namespace hybridgen::cli {

namespace {

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

struct Overrides {
  std::string config_path;
  bool oracle = false;
  std::string out;

  std::optional<int> l_max, n_max;
  std::optional<double> alpha_re, alpha_im;

  std::optional<std::string> scheme;
  std::optional<double> alpha_start, alpha_stop;
  std::optional<int> alpha_steps;
  std::vector<double> t;
  std::vector<int> heralds;
  bool balanced = false;
  std::optional<double> alpha1;

  std::string which;
  std::optional<unsigned> seed;
  bool mirrored_bs = false;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON run configuration");
  cmd->add_flag("--oracle", o.oracle, "Also run the exact truncated-Fock oracle");
  cmd->add_option("--out", o.out, "Output file (directory for figures); - for stdout");
}

RunConfig resolve(const Overrides& o) {
  RunConfig cfg = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
  cfg.oracle = cfg.oracle || o.oracle;
  if (!o.out.empty()) cfg.out = o.out;

  auto& me = cfg.matrix_elements;
  if (o.l_max) me.l_max = *o.l_max;
  if (o.n_max) me.n_max = *o.n_max;
  if (o.alpha_re || o.alpha_im) {
    me.alpha = {o.alpha_re.value_or(me.alpha.real()), o.alpha_im.value_or(me.alpha.imag())};
  }

  auto& sc = cfg.scheme;
  if (o.scheme) sc.scheme = *o.scheme == "B" || *o.scheme == "b" ? SchemeKind::B : SchemeKind::A;
  if (o.alpha_start) sc.alpha.start = *o.alpha_start;
  if (o.alpha_stop) sc.alpha.stop = *o.alpha_stop;
  if (o.alpha_steps) sc.alpha.steps = *o.alpha_steps;
  if (!o.t.empty()) sc.t = o.t;
  if (!o.heralds.empty()) {
    sc.heralds.clear();
    if (sc.scheme == SchemeKind::A) {
      for (int n : o.heralds) sc.heralds.emplace_back(n, -1);
    } else {
      if (o.heralds.size() % 2 != 0) throw ConfigError("--herald for scheme B takes n m pairs");
      for (std::size_t i = 0; i < o.heralds.size(); i += 2) {
        sc.heralds.emplace_back(o.heralds[i], o.heralds[i + 1]);
      }
    }
  }
  sc.balanced = sc.balanced || o.balanced;
  if (o.alpha1) sc.alpha1 = *o.alpha1;

  if (!o.which.empty()) cfg.figures.which = o.which;
  if (o.seed) cfg.validate.seed = *o.seed;
  cfg.validate.mirrored_bs = o.mirrored_bs;
  cfg.check();
  return cfg;
}

int do_matrix_elements(const RunConfig& cfg) {
  write_text(cfg.out, matrix_elements_csv(cfg.matrix_elements));
  return kExitOk;
}

int do_scheme(const RunConfig& cfg) {
  const auto table = scheme_csv(cfg.scheme, cfg.oracle);
  write_text(cfg.out, table.csv);
  if (table.rows > 0 && table.failed_rows == table.rows) {
    std::cerr << "hybridgen: every row failed truncation\n";
    return kExitTruncation;
  }
  return kExitOk;
}

int do_figures(const RunConfig& cfg) {
  const std::filesystem::path dir = cfg.out.empty() ? "." : cfg.out;
  std::filesystem::create_directories(dir);
  for (const auto& [name, text] : figures_csv(cfg.figures)) {
    write_text((dir / name).string(), text);
  }
  return kExitOk;
}

int do_validate(const RunConfig& cfg) {
  const auto checks = run_validation(cfg.validate);
  write_text(cfg.out, validation_report_json(checks));
  for (const auto& c : checks) {
    if (!c.pass) return kExitValidation;
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Heralded hybrid entanglement on a highly transmissive beam splitter"};
  app.require_subcommand(1);
  Overrides o;

  auto* me = app.add_subcommand("matrix-elements", "Displaced-number matrix elements c_ln");
  add_common(me, o);
  me->add_option("--l-max", o.l_max, "Largest row index l");
  me->add_option("--n-max", o.n_max, "Largest Fock index n");
  me->add_option("--alpha", o.alpha_re, "Displacement (real part)");
  me->add_option("--alpha-im", o.alpha_im, "Displacement (imaginary part)");

  auto* sc = app.add_subcommand("scheme", "Probability and fidelity sweep");
  add_common(sc, o);
  sc->add_option("--scheme", o.scheme, "A (single-rail) or B (dual-rail)")
      ->check(CLI::IsMember({"A", "B", "a", "b"}));
  sc->add_option("--alpha-start", o.alpha_start);
  sc->add_option("--alpha-stop", o.alpha_stop);
  sc->add_option("--alpha-steps", o.alpha_steps);
  sc->add_option("--t", o.t, "Transmittance list");
  sc->add_option("--herald", o.heralds, "Heralds: n values (A) or n m pairs (B)");
  sc->add_flag("--balanced", o.balanced, "Use balancing amplitudes per herald");
  sc->add_option("--alpha1", o.alpha1, "Auxiliary displacement (scheme B)");

  auto* fig = app.add_subcommand("figures", "Figure data series");
  add_common(fig, o);
  fig->add_option("which", o.which, "fig2 | fig3 | fig4 | all")
      ->check(CLI::IsMember({"fig2", "fig3", "fig4", "all"}));

  auto* val = app.add_subcommand("validate", "Invariant checks with a JSON report");
  add_common(val, o);
  val->add_option("--seed", o.seed, "Seed for the sampled displacements");
  val->add_flag("--inject-mirrored-bs", o.mirrored_bs)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const RunConfig cfg = resolve(o);
    if (me->parsed()) return do_matrix_elements(cfg);
    if (sc->parsed()) return do_scheme(cfg);
    if (fig->parsed()) return do_figures(cfg);
    return do_validate(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "hybridgen: " << e.what() << "\n";
    return kExitConfig;
  } catch (const TruncationError& e) {
    std::cerr << "hybridgen: " << e.what() << " (suggested dim " << e.suggested_dim()
              << ")\n";
    return kExitTruncation;
  } catch (const DimensionError& e) {
    std::cerr << "hybridgen: " << e.what() << "\n";
    return kExitTruncation;
  } catch (const std::exception& e) {
    std::cerr << "hybridgen: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hybridgen::cli
