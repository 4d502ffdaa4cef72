import math

import pytest

import hybridgen as hg


def test_matrix_element_values():
    assert hg.matrix_element(0, 2, 1.0) == pytest.approx(1 / math.sqrt(2), abs=1e-15)
    assert hg.matrix_element(1, 1, 1.0) == 0
    assert hg.envelope(1.0) == pytest.approx(math.exp(-0.5), abs=1e-15)


def test_balanced_spot_values():
    cfg = hg.SchemeConfig.from_alpha(1.0, 0.8)
    assert cfg.beta == pytest.approx(4 / 3)
    assert hg.balanced_probability_a(0, 1.0, cfg.beta) == pytest.approx(0.358, abs=5e-3)
    assert hg.balanced_probability_b(0, 0, 1.0, 1.0, cfg.beta) == pytest.approx(0.132, abs=5e-3)


def test_balanced_fidelity_matches_zero_order():
    cfg = hg.balanced_config_a(0, hg.SchemeConfig.from_alpha(1.0, 0.9))
    assert hg.fidelity_a_analytic(0, cfg) == pytest.approx(hg.fidelity_balanced(1.0, 0.9), abs=1e-12)


def test_oracle_run():
    cfg = hg.SchemeConfig.from_alpha(1.0, 0.99)
    cfg.herald_max = 1
    results = hg.run_scheme_a_exact(cfg)
    assert [r.n for r in results] == [0, 1]
    assert results[0].fidelity_vs_ideal == pytest.approx(0.99486, abs=1e-5)
    assert results[1].pole


def test_cli_helpers():
    csv = hg.matrix_elements_csv(1, 3, 1.0)
    assert csv.splitlines()[0] == "l,n,alpha_re,alpha_im,c_re,c_im,F"
    assert len(csv.splitlines()) == 9
    assert set(hg.figures_csv("fig4")) == {"fig4.csv"}
    assert all(check["pass"] for check in hg.run_validation(seed=7, samples=5))


def test_errors_map_to_value_error():
    with pytest.raises(ValueError):
        hg.fidelity_balanced(1.0, 0.0)
    with pytest.raises(ValueError):
        hg.figures_csv("fig9")
