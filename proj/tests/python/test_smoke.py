import json
import os
import subprocess

import pytest

import gpbvp


def test_case_names_round_trip():
    assert gpbvp.case_names() == [
        "heat1d",
        "disk_poisson",
        "disk_gaussian_source",
        "star_gaussian_source",
    ]


def test_disk_solution_matches_closed_form():
    field = gpbvp.solve(gpbvp.build_case("disk_poisson", 16, 5))
    assert field.mean([0.0, 0.0]) == pytest.approx(0.25, abs=5e-3)
    assert field.variance([0.0, 0.0]) >= 0.0
    assert field.jitter_used > 0.0


def test_exact_disk_solution_and_domain_error():
    assert gpbvp.exact_disk_solution([0.0, 0.0]) == 0.25
    assert gpbvp.exact_disk_solution([0.5, 0.5]) == 0.125
    with pytest.raises(gpbvp.GpbvpError):
        gpbvp.exact_disk_solution([1.5, 0.0])


def test_fd_reference():
    ref = gpbvp.fd_solve_heat1d(1000)
    assert ref.residual <= 1e-12
    assert ref.values[-1] == 0.0
    assert abs(ref(3.0)) <= 1e-12
    assert len(ref.values) == 1001


def test_lengthscale_selection_profile_normalized():
    spec = gpbvp.build_case("heat1d", 10, 2)
    best, profile = gpbvp.select_lengthscale(spec, 0.1, 2.0, 8)
    ells = [e for e, _ in profile]
    norms = [v for _, v in profile]
    assert ells == sorted(ells)
    assert max(norms) == 1.0
    assert all(0.0 <= v <= 1.0 for v in norms)
    assert 0.1 <= best <= 2.0


def test_config_round_trip(tmp_path):
    path = tmp_path / "disk_poisson.json"
    path.write_text(gpbvp.case_config_json("disk_poisson"))
    assert gpbvp.load_problem(str(path)) == gpbvp.build_case("disk_poisson", 16, 5)


def test_explicit_problem_construction():
    spec = gpbvp.ProblemSpec(
        gpbvp.Domain.interval(0.0, 1.0),
        gpbvp.LinearDiffOperator(1, [([2], "-1"), ([0], "1")]),
        "x1",
        [[0.25], [0.5], [0.75]],
        [([0.0], gpbvp.LinearDiffOperator.identity(1), 1.0)],
        gpbvp.SEKernel(1.2, [0.45]),
    )
    field = gpbvp.solve(spec)
    assert field.covariance([0.3], [0.3]) == pytest.approx(
        field.variance([0.3]), rel=1e-6, abs=1e-12
    )


def test_cli_solve(tmp_path):
    cli = os.environ.get("GPBVP_CLI")
    if not cli:
        pytest.skip("GPBVP_CLI not set")
    cfg = tmp_path / "heat1d.json"
    cfg.write_text(gpbvp.case_config_json("heat1d"))
    out = tmp_path / "out.csv"
    proc = subprocess.run(
        [cli, "solve", "--config", str(cfg), "--grid", "11", "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    lines = out.read_text().splitlines()
    assert lines[0].startswith("x1,mean,std")
    assert len(lines) == 12
    report = json.loads((tmp_path / "out.csv.json").read_text())
    assert report["command"] == "solve"
