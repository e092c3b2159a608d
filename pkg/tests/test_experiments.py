"""The experiment registry: smoke runs, determinism, task seeding."""

import hashlib

import numpy as np
import pytest

import qplab.dynamics as dy
import qplab.experiments as ex
import qplab.potential as pt

AMO3 = pt.almost_mathieu(3.0)
SHIFT = dy.Shift((dy.GOLDEN_MEAN,))

ALL_NAMES = [
    "avalanche_fuzz", "bmo_trend", "concatenation_bound", "fourier_decay",
    "green_decay", "hellmann_feynman", "holder_scan", "ids", "ldt_decay",
    "lyapunov_scan", "min_gap", "positivity_probe", "thouless_check",
    "wegner", "zero_additivity", "zeros_probe",
]

# one small but nontrivial grid per experiment
SMOKE_GRIDS = {
    "lyapunov_scan": {"E": [0.0], "n_list": [50, 100], "m_samples": 50},
    "positivity_probe": {"E": [0.0], "ell": 16, "m_samples": 100},
    "avalanche_fuzz": {"trials": 12, "n": 20, "mu": 1e4, "chunk": 5},
    "ids": {"E": {"start": -3.0, "stop": 3.0, "count": 7}, "N": 100,
            "x_samples": 4, "chunk": 3},
    "holder_scan": {"E": [0.0], "h_list": [0.1, 0.01], "N": 100,
                    "x_samples": 4},
    "wegner": {"E": {"start": -1.0, "stop": 1.0, "count": 2},
               "H_list": [5.0, 10.0], "N": 50, "x_samples": 100},
    "min_gap": {"N_list": [20], "x_samples": 2},
    "ldt_decay": {"E": 0.0, "n_list": [50, 100], "x_samples": 200},
    "bmo_trend": {"E": 0.0, "n_list": [50], "grid_size": 256,
                  "statistic": "det"},
    "fourier_decay": {"E": 0.0, "n": 50, "grid_size": 512, "modes": 8,
                      "statistic": "det"},
    "thouless_check": {"E": [0.0], "N": 200, "x_samples": 50},
    "green_decay": {"E": [0.0], "N": 30, "eta": 1e-3},
    "hellmann_feynman": {"N": 30, "x_samples": 2},
    "concatenation_bound": {"E": 0.0, "N": 30, "eta_list": [0.05],
                            "x_samples": 2},
    "zero_additivity": {"E": 0.5, "m": 8, "n_disks": 2, "radius": 0.1},
    "zeros_probe": {"E": 0.5, "N": 16, "n_probes": 2, "radius": 0.05,
                    "annulus_y": 0.05},
}


def test_registry_holds_the_full_catalogue():
    assert sorted(ex.EXPERIMENTS) == ALL_NAMES
    for spec in ex.EXPERIMENTS.values():
        assert spec.doc and spec.columns


def test_unknown_experiment_lists_what_exists():
    with pytest.raises(ValueError) as exc:
        ex.run_experiment("spectral_gap", AMO3, SHIFT, {})
    msg = str(exc.value)
    assert "spectral_gap" in msg and "lyapunov_scan" in msg


@pytest.mark.parametrize("name", ALL_NAMES)
def test_experiment_smoke(name):
    columns, rows = ex.run_experiment(name, AMO3, SHIFT, SMOKE_GRIDS[name],
                                      seed=3)
    assert tuple(columns) == ex.EXPERIMENTS[name].columns
    assert rows
    for row in rows:
        assert len(row) == len(columns)


def test_unknown_grid_key_is_rejected():
    with pytest.raises(ValueError) as exc:
        ex.run_experiment("min_gap", AMO3, SHIFT,
                          {"N_list": [20], "x_samples": 1, "banana": 3})
    assert "banana" in str(exc.value)


def test_missing_required_parameter_is_rejected():
    with pytest.raises(ValueError):
        ex.run_experiment("green_decay", AMO3, SHIFT, {"N": 30, "eta": 1e-3})


@pytest.mark.parametrize("name", ["ids", "wegner", "lyapunov_scan"])
def test_thread_count_does_not_change_rows(name):
    one = ex.run_experiment(name, AMO3, SHIFT, SMOKE_GRIDS[name], seed=7,
                            threads=1)
    four = ex.run_experiment(name, AMO3, SHIFT, SMOKE_GRIDS[name], seed=7,
                             threads=4)
    assert one == four


def test_task_seed_is_a_sha256_prefix():
    digest = hashlib.sha256(b"11:ids:3").digest()
    expected = int.from_bytes(digest[:8], "big")
    assert ex.task_seed(11, "ids", 3) == expected
    assert ex.task_seed(11, "ids", 3) != ex.task_seed(11, "ids", 4)
    assert ex.task_seed(11, "ids", 3) != ex.task_seed(12, "ids", 3)


def test_ids_rows_are_monotone_in_energy():
    cols, rows = ex.run_experiment("ids", AMO3, SHIFT, SMOKE_GRIDS["ids"],
                                   seed=5)
    i = cols.index("ids")
    vals = [r[i] for r in rows]
    assert vals == sorted(vals)


def test_wegner_rows_shrink_with_sharper_resolution():
    cols, rows = ex.run_experiment("wegner", AMO3, SHIFT,
                                   SMOKE_GRIDS["wegner"], seed=5)
    iE, iH, im = (cols.index(k) for k in ("E", "H", "measure"))
    by_energy = {}
    for r in rows:
        by_energy.setdefault(r[iE], {})[r[iH]] = r[im]
    for pair in by_energy.values():
        assert pair[10.0] <= pair[5.0]


def test_avalanche_rows_report_the_verdict():
    cols, rows = ex.run_experiment("avalanche_fuzz", AMO3, SHIFT,
                                   SMOKE_GRIDS["avalanche_fuzz"], seed=1)
    ip = cols.index("passes")
    ih = cols.index("hypotheses_ok")
    for r in rows:
        if r[ih]:
            assert r[ip] == 1.0
        else:
            assert np.isnan(r[ip])
