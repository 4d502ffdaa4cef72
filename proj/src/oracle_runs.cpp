#include <cmath>
#include <limits>
#include <utility>

#include "hybridgen/errors.hpp"
#include "hybridgen/oracle.hpp"
#include "hybridgen/schemes.hpp"

namespace hybridgen {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Tail allowed on reference states built for overlaps inside the oracle.
constexpr double kReferenceTail = 1e-8;

void flag_truncation(std::vector<HeraldResult>& results) {
  double captured = 0.0;
  for (const auto& r : results) captured += r.probability;
  if (1.0 - captured > kHeraldTailThreshold) {
    for (auto& r : results) r.flags |= kFlagTruncation;
  }
}

HeraldResult make_result(int n, int m, MultiModeState unnormalized) {
  HeraldResult res;
  res.n = n;
  res.m = m;
  res.probability = unnormalized.norm_squared();
  res.fidelity_vs_ideal = kNaN;
  if (res.probability == 0.0) {
    res.state = MultiModeState::empty_sentinel(unnormalized.dims());
    res.flags |= kFlagZeroProbability;
  } else {
    res.state = unnormalized.scaled(1.0 / std::sqrt(res.probability));
  }
  return res;
}

}  // namespace

std::vector<HeraldResult> run_heralds_a(const SchemeConfig& cfg,
                                        const MultiModeState& ancilla23) {
  cfg.validate();
  if (ancilla23.num_modes() != 2) {
    throw ShapeError("ancilla must span exactly two modes");
  }
  const std::size_t dim = cfg.truncation.coherent_dim != 0
                              ? cfg.truncation.coherent_dim
                              : truncation_dim(cfg.beta());
  const auto even = scs_state(cfg.beta(), Parity::Even, dim);
  const auto input = tensor(even, ancilla23, cfg.fock);
  const auto spec = BeamSplitterSpec::from_transmittance(cfg.t);
  const std::size_t out_dim = dim + ancilla23.dims()[1] - 1;

  std::vector<HeraldResult> results;
  results.reserve(static_cast<std::size_t>(cfg.herald_max) + 1);
  for (int n = 0; n <= cfg.herald_max; ++n) {
    results.push_back(
        make_result(n, -1, herald_after_beam_splitter(input, 0, 2, spec, n, out_dim)));
  }
  flag_truncation(results);
  return results;
}

std::vector<HeraldResult> run_scheme_a_exact(const SchemeConfig& cfg) {
  const MultiModeState ancilla({2, 2}, {0.0, cfg.a0, cfg.a1, 0.0});
  auto results = run_heralds_a(cfg, ancilla);
  for (auto& res : results) {
    const auto ideal = hybrid_state_a(res.n, cfg);
    if (ideal.pole) res.flags |= kFlagPole;
    if (res.state.is_empty() || ideal.degenerate) continue;
    res.fidelity_vs_ideal =
        fidelity_pure(ideal.materialize(res.state.dims()[0]), res.state);
  }
  return results;
}

std::vector<HeraldResult> run_scheme_b_exact(const SchemeConfig& cfg) {
  cfg.validate();
  const double beta1 = cfg.aux_arm.beta;
  const std::size_t dim = cfg.truncation.coherent_dim != 0
                              ? cfg.truncation.coherent_dim
                              : truncation_dim(cfg.beta());
  const std::size_t aux_dim = cfg.truncation.aux_dim != 0
                                  ? cfg.truncation.aux_dim
                                  : truncation_dim(beta1);

  const auto even = scs_state(cfg.beta(), Parity::Even, dim);
  const auto aux = coherent_state(-beta1, aux_dim);
  MultiModeState pair({2, 2, 2, 2});
  std::vector<Complex> pair_amps(16, Complex{});
  pair_amps[pair.flat_index({0, 1, 0, 1})] = cfg.a0;
  pair_amps[pair.flat_index({1, 0, 1, 0})] = cfg.a1;
  const MultiModeState photons({2, 2, 2, 2}, std::move(pair_amps));
  const auto input = tensor(tensor(even, aux, cfg.fock), photons, cfg.fock);

  const auto spec = BeamSplitterSpec::from_transmittance(cfg.t);
  const auto reference = coherent_state(-beta1 / cfg.t, aux_dim + 1, kReferenceTail);

  std::vector<HeraldResult> results;
  for (int n = 0; n <= cfg.herald_max; ++n) {
    // Modes after the first herald: (1, 2, 3, 4, 6).
    const auto after_n = herald_after_beam_splitter(input, 0, 4, spec, n, dim + 1);
    for (int m = 0; m <= cfg.herald_max; ++m) {
      const auto after_nm =
          herald_after_beam_splitter(after_n, 1, 4, spec, m, aux_dim + 1);
      HeraldResult res = make_result(n, m, after_nm);
      const auto ideal = hybrid_state_b(n, m, cfg);
      if (ideal.pole) res.flags |= kFlagPole;
      if (!res.state.is_empty()) {
        const auto contracted = partial_inner(
            MultiModeState::single_mode(reference.amplitudes()), res.state, {1});
        res.aux_overlap = contracted.norm_squared();
        if (res.aux_overlap < kFactorizationThreshold) res.flags |= kFlagFactorization;
        if (res.aux_overlap > 0.0) {
          res.state = contracted.normalized();
          if (!ideal.degenerate) {
            res.fidelity_vs_ideal =
                fidelity_pure(ideal.materialize(res.state.dims()[0]), res.state);
          }
        }
      }
      results.push_back(std::move(res));
    }
  }
  flag_truncation(results);
  return results;
}

std::pair<MultiModeState, MultiModeState> run_converter_exact(
    double beta, const BeamSplitterSpec& spec, int herald_parity,
    std::size_t dim) {
  spec.validate();
  if (dim == 0) dim = truncation_dim(beta);
  const auto input = converter_input_state(beta, herald_parity, dim);
  const auto mixed = apply(bs_unitary(spec, 2, 2), input, {1, 2}, {2, 2});
  // Herald |01> on modes (2, 3), then |10>.
  auto herald = [&](std::size_t l2, std::size_t l3) {
    const auto slice = slice_mode(slice_mode(mixed, 2, l3), 1, l2);
    return slice.normalized();
  };
  return {herald(0, 1), herald(1, 0)};
}

}  // namespace hybridgen
