""" test the command line through main, as a user would call it """

import json
from io import StringIO
from math import sqrt

import pandas as pd
import pytest

from entgeom.external.cli import join_multi_value_flags, main
from entgeom.states.bipartite import bell_state, save_state
from entgeom.states.multiqubit import ghz_state, save_multiqubit_state


def run(capsys, *args):
    main(list(args))
    return capsys.readouterr().out


def exit_code(*args):
    with pytest.raises(SystemExit) as e:
        main(list(args))
    return e.value.code


def test_boundary(capsys):
    lines = run(capsys, "boundary", "--points=3").strip().splitlines()
    assert lines[0] == "curve,param,E,SL"
    assert len(lines) == 10


def test_analyze_random_state(capsys):
    payload = json.loads(run(capsys, "analyze", "--random=2,3,7"))
    assert payload["input"] == {"source": "random", "dim_a": 2, "dim_b": 3, "seed": 7}
    assert payload["min_d2"] == pytest.approx(payload["linear_entropy"], abs=1e-10)
    assert payload["tangle"] == pytest.approx(payload["linear_entropy"], abs=1e-10)
    assert set(payload["minimizer"]) == {"theta", "phi"}


def test_analyze_random_state_separate_values(capsys):
    separate = json.loads(run(capsys, "analyze", "--random", "3", "4", "7", "--tol", "1e-9"))
    joined = json.loads(run(capsys, "analyze", "--random=3,4,7", "--tol=1e-9"))
    assert separate["input"] == {"source": "random", "dim_a": 3, "dim_b": 4, "seed": 7}
    assert separate == joined


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["analyze", "--random", "3", "4", "7"], ["analyze", "--random=3,4,7"]),
        (["analyze", "--random", "3,4,7", "--strict"], ["analyze", "--random=3,4,7", "--strict"]),
        (
            ["oracle-check", "--random", "2", "2", "1", "--grid", "36", "72", "--seed=1"],
            ["oracle-check", "--random=2,2,1", "--grid=36,72", "--seed=1"],
        ),
        (["analyze", "--random", "2", "2"], ["analyze", "--random=2,2"]),
        (["analyze", "--random", "--strict"], ["analyze", "--random", "--strict"]),
        (["boundary", "--points=3"], ["boundary", "--points=3"]),
    ],
)
def test_join_multi_value_flags(argv, expected):
    assert join_multi_value_flags(argv) == expected


def test_analyze_state_file(tmpdir):
    state, out = str(tmpdir.join("bell.json")), str(tmpdir.join("report.json"))
    save_state(bell_state(), state)
    main(["analyze", f"--state={state}", f"--out={out}", "--strict"])
    with open(out) as f:
        payload = json.load(f)
    assert payload["input"]["source"] == "file"
    assert not payload["separable"]
    assert payload["degenerate"]


def test_analyze_multiqubit_file(capsys, tmpdir):
    path = str(tmpdir.join("ghz.json"))
    save_multiqubit_state(ghz_state(3), path)
    payload = json.loads(run(capsys, "analyze", f"--state={path}"))
    assert payload["n_sites"] == 3
    assert [site["linear_entropy"] for site in payload["sites"]] == pytest.approx([1.0, 1.0, 1.0])


def test_analyze_input_errors(tmpdir):
    path = str(tmpdir.join("broken.json"))
    with open(path, "w") as f:
        f.write("{")
    assert exit_code("analyze", f"--state={path}") == 2
    assert exit_code("analyze") == 2
    assert exit_code("analyze", f"--state={path}", "--random=2,2,0") == 2
    assert exit_code("analyze", "--random=4,2,0") == 2


def test_oracle_check_grid(capsys):
    payload = json.loads(run(capsys, "oracle-check", "--random=2,2,1", "--grid=36,72"))
    assert payload["method"] == "grid"
    assert payload["grid"] == [36, 72]
    assert -1e-12 <= payload["gap"] <= 1e-6


def test_oracle_check_grid_separate_values(capsys):
    payload = json.loads(run(capsys, "oracle-check", "--random", "2", "2", "1", "--grid", "36", "72"))
    assert payload["input"]["dim_a"] == 2
    assert payload["grid"] == [36, 72]
    assert -1e-12 <= payload["gap"] <= 1e-6
    assert exit_code("analyze", "--random", "2", "2") == 2


def test_oracle_check_qutrit_frames(capsys):
    payload = json.loads(run(capsys, "oracle-check", "--random=3,3,2", "--samples=500", "--seed=4"))
    assert payload["method"] == "frames"
    assert payload["samples"] == 500
    assert payload["gap"] >= -1e-12


def test_oracle_check_rejects_grid_for_qutrits():
    assert exit_code("oracle-check", "--random=3,3,2", "--grid=10,10") == 2


def test_monogamy_fixtures(capsys):
    df = pd.read_csv(StringIO(run(capsys, "monogamy", "--n=3", "--fixture=w", "--seeds=0..1")))
    assert list(df.columns) == ["seed", "site", "lhs", "rhs", "slack"]
    assert len(df) == 6
    assert df["slack"].abs().max() < 1e-10


def test_monogamy_random_states(capsys):
    df = pd.read_csv(StringIO(run(capsys, "monogamy", "--n=4", "--seeds=0..2")))
    assert len(df) == 12
    assert (df["slack"] >= -1e-9).all()


def test_monogamy_errors():
    assert exit_code("monogamy", "--n=9") == 2
    assert exit_code("monogamy", "--fixture=cluster") == 2


def test_spinchain(capsys):
    df = pd.read_csv(StringIO(run(capsys, "spinchain", "--n=4", "--steps=3", "--hmax=1.0")))
    assert list(df.columns) == ["h", "ground_energy", "tangle_site0", "min_dE", "broken_tangle", "broken_min_dE"]
    assert list(df["h"]) == [0.0, 0.5, 1.0]
    assert (df["min_dE"] >= -1e-10).all()


def test_factorizing_field(capsys):
    payload = json.loads(run(capsys, "factorizing-field", "--n=6", "--gamma=0.5", "--scan_points=32"))
    assert payload["field"] == pytest.approx(sqrt(0.75), abs=1e-6)
    assert payload["closed_form"] == pytest.approx(sqrt(0.75))


def test_factorizing_field_not_found():
    assert exit_code("factorizing-field", "--n=4", "--gamma=1.0", "--scan_points=8") == 2


@pytest.mark.parametrize(
    "args",
    [
        ["analyze", "--random=2,4,42"],
        ["analyze", "--random", "3", "3", "5"],
        ["oracle-check", "--random=2,3,1", "--grid=18,36"],
        ["monogamy", "--n=3", "--seeds=0..2"],
        ["boundary", "--points=16"],
        ["spinchain", "--n=4", "--steps=3"],
    ],
)
def test_repeated_runs_are_byte_identical(capsys, args):
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first
    assert first == second
