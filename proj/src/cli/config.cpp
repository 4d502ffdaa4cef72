#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "hybridgen/cli.hpp"
#include "hybridgen/errors.hpp"

namespace hybridgen::cli {

using nlohmann::json;

std::vector<double> SweepAxis::values() const {
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    out[static_cast<std::size_t>(i)] =
        i == steps - 1 ? stop : start + (stop - start) * i / (steps - 1);
  }
  return out;
}

namespace {

Complex read_complex(const json& j, const std::string& key) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_object() && j.contains("re")) {
    return {j.at("re").get<double>(), j.value("im", 0.0)};
  }
  throw ConfigError(key + ": expected a number, [re, im] or {\"re\", \"im\"}");
}

SweepAxis read_axis(const json& j, SweepAxis axis) {
  axis.start = j.value("start", axis.start);
  axis.stop = j.value("stop", axis.stop);
  axis.steps = j.value("steps", axis.steps);
  return axis;
}

SchemeKind read_scheme_kind(const std::string& s) {
  if (s == "A" || s == "a") return SchemeKind::A;
  if (s == "B" || s == "b") return SchemeKind::B;
  throw ConfigError("scheme must be \"A\" or \"B\", got \"" + s + "\"");
}

std::vector<std::pair<int, int>> read_heralds(const json& j) {
  std::vector<std::pair<int, int>> out;
  for (const auto& h : j) {
    if (h.is_number_integer()) {
      out.emplace_back(h.get<int>(), -1);
    } else if (h.is_array() && h.size() == 2) {
      out.emplace_back(h[0].get<int>(), h[1].get<int>());
    } else {
      throw ConfigError("heralds: expected n or [n, m] entries");
    }
  }
  return out;
}

void check_axis(const SweepAxis& a, const std::string& name) {
  if (a.steps < 2) throw ConfigError(name + ": sweep steps must be >= 2");
  if (!std::isfinite(a.start) || !std::isfinite(a.stop)) {
    throw ConfigError(name + ": sweep bounds must be finite");
  }
}

void check_t(double t, const std::string& name) {
  if (!(t > 0.0 && t < 1.0)) throw ConfigError(name + ": t must lie in (0, 1)");
}

void check_alpha(double a, const std::string& name) {
  if (!(std::abs(a) <= kMaxAlpha)) {
    throw ConfigError(name + ": |alpha| must not exceed 4");
  }
}

}  // namespace

void RunConfig::check() const {
  if (schema_version != kSchemaVersion) {
    throw ConfigError("unsupported schema_version " + std::to_string(schema_version));
  }
  const auto& me = matrix_elements;
  if (me.l_max < 0 || me.n_max < 0) throw ConfigError("l_max and n_max must be >= 0");
  check_alpha(std::abs(me.alpha), "matrix_elements.alpha");

  const auto& sc = scheme;
  check_axis(sc.alpha, "scheme.alpha");
  check_alpha(sc.alpha.start, "scheme.alpha.start");
  check_alpha(sc.alpha.stop, "scheme.alpha.stop");
  if (sc.alpha.start <= 0.0 || sc.alpha.stop <= 0.0) {
    throw ConfigError("scheme.alpha: displacements must be positive");
  }
  if (sc.t.empty()) throw ConfigError("scheme.t: at least one transmittance");
  for (double t : sc.t) check_t(t, "scheme.t");
  if (sc.heralds.empty()) throw ConfigError("scheme.heralds: at least one herald");
  for (const auto& [n, m] : sc.heralds) {
    if (n < 0) throw ConfigError("scheme.heralds: n must be >= 0");
    if (sc.scheme == SchemeKind::B && m < 0) {
      throw ConfigError("scheme.heralds: scheme B needs [n, m] pairs");
    }
  }
  if (std::abs(std::norm(sc.a0) + std::norm(sc.a1) - 1.0) > 1e-9) {
    throw ConfigError("scheme: |a0|^2 + |a1|^2 must equal 1");
  }
  if (sc.alpha1 >= 0.0) {
    check_alpha(sc.alpha1, "scheme.alpha1");
    if (sc.alpha1 == 0.0) throw ConfigError("scheme.alpha1 must be positive");
  }

  check_axis(figures.alpha, "figures.alpha");
  check_axis(figures.t, "figures.t");
  check_alpha(figures.alpha.start, "figures.alpha.start");
  check_alpha(figures.alpha.stop, "figures.alpha.stop");
  if (figures.alpha.start <= 0.0) throw ConfigError("figures.alpha must be positive");
  check_t(figures.t.start, "figures.t.start");
  check_t(figures.t.stop, "figures.t.stop");
  if (figures.which != "all" && figures.which != "fig2" && figures.which != "fig3" &&
      figures.which != "fig4") {
    throw ConfigError("unknown figure id \"" + figures.which + "\"");
  }
  if (validate.samples < 1) throw ConfigError("validate.samples must be >= 1");
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  try {
    const json doc = json::parse(text);
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    if (!doc.contains("schema_version")) throw ConfigError("missing schema_version");
    cfg.schema_version = doc.at("schema_version").get<int>();
    cfg.oracle = doc.value("oracle", cfg.oracle);
    cfg.out = doc.value("out", cfg.out);

    if (doc.contains("matrix_elements")) {
      const auto& j = doc.at("matrix_elements");
      auto& p = cfg.matrix_elements;
      p.l_max = j.value("l_max", p.l_max);
      p.n_max = j.value("n_max", p.n_max);
      if (j.contains("alpha")) p.alpha = read_complex(j.at("alpha"), "alpha");
    }
    if (doc.contains("scheme")) {
      const auto& j = doc.at("scheme");
      auto& p = cfg.scheme;
      if (j.contains("scheme")) p.scheme = read_scheme_kind(j.at("scheme").get<std::string>());
      if (j.contains("alpha")) p.alpha = read_axis(j.at("alpha"), p.alpha);
      if (j.contains("t")) p.t = j.at("t").get<std::vector<double>>();
      if (j.contains("heralds")) p.heralds = read_heralds(j.at("heralds"));
      if (j.contains("a0")) p.a0 = read_complex(j.at("a0"), "a0");
      if (j.contains("a1")) p.a1 = read_complex(j.at("a1"), "a1");
      p.balanced = j.value("balanced", p.balanced);
      p.alpha1 = j.value("alpha1", p.alpha1);
      if (j.contains("truncation")) {
        const auto& tr = j.at("truncation");
        p.truncation.coherent_dim = tr.value("coherent_dim", p.truncation.coherent_dim);
        p.truncation.aux_dim = tr.value("aux_dim", p.truncation.aux_dim);
      }
    }
    if (doc.contains("figures")) {
      const auto& j = doc.at("figures");
      auto& p = cfg.figures;
      p.which = j.value("which", p.which);
      if (j.contains("alpha")) p.alpha = read_axis(j.at("alpha"), p.alpha);
      if (j.contains("t")) p.t = read_axis(j.at("t"), p.t);
    }
    if (doc.contains("validate")) {
      const auto& j = doc.at("validate");
      cfg.validate.seed = j.value("seed", cfg.validate.seed);
      cfg.validate.samples = j.value("samples", cfg.validate.samples);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace hybridgen::cli
