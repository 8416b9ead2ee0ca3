import json

import pytest

from constellation_lab.biddings import Bidding
from constellation_lab.cli import main
from constellation_lab.permutations import Permutation


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_jackson_check_all_p(capsys):
    code, out = run(capsys, "jackson-check", "--n", "3", "--k", "2", "--all-p")
    assert code == 0
    assert out.count("lhs=") == 9
    assert "MISMATCH" not in out


def test_jackson_check_json_reports_are_byte_identical(capsys):
    code, first = run(capsys, "--format", "json", "jackson-check", "--n", "2", "--k", "2", "--all-p")
    assert code == 0
    code, second = run(capsys, "--format", "json", "jackson-check", "--n", "2", "--k", "2", "--all-p")
    assert first == second
    payload = json.loads(first)
    assert payload["schema"] == "constellation-lab/1"
    assert payload["ok"] is True
    assert payload["threads"] == 1
    assert all(r["lhs"] == r["rhs"] for r in payload["results"])


def test_puzzle_exact(capsys):
    code, out = run(capsys, "puzzle", "--n", "2", "--k", "3", "--p", "1,1,1", "--exact")
    assert code == 0
    assert "1/2" in out and "MISMATCH" not in out


def test_count_m_empty_case(capsys):
    code, out = run(capsys, "count", "--what", "m", "--n", "0", "--k", "2", "--p", "0,0")
    assert code == 0
    assert "= 1" in out


def test_count_m_shorthand_flag(capsys):
    code, out = run(capsys, "count", "--m", "--n", "0", "--k", "2", "--p", "0,0")
    assert code == 0
    assert "= 1" in out


def test_count_requires_arguments(capsys):
    code = main(["count", "--what", "colored", "--n", "2"])
    assert code == 2


def test_puzzle_sampling_deterministic(capsys):
    args = ["puzzle", "--n", "3", "--k", "2", "--p", "1,2", "--sample", "300", "--seed", "11"]
    code, first = run(capsys, *args)
    assert code == 0
    _, second = run(capsys, *args)
    assert first == second


def test_cap_env_var_is_default(capsys, monkeypatch):
    monkeypatch.setenv("CONSTELLATION_LAB_CAP", "1")
    code = main(["jackson-check", "--n", "4", "--k", "3", "--all-p"])
    assert code == 3


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_cap_exceeded_exit_code(capsys):
    code = main(["--cap", "1", "jackson-check", "--n", "4", "--k", "3", "--all-p"])
    assert code == 3


def test_roundtrip_commands(capsys):
    for bijection in ("phi", "swap", "lambda", "theta", "sigma", "psi"):
        code, out = run(capsys, "roundtrip", "--bijection", bijection, "--n", "2", "--k", "2")
        assert code == 0
        assert "0 failures" in out


def test_symmetry_check(capsys):
    code, out = run(capsys, "symmetry-check", "--n", "3", "--k", "2")
    assert code == 0
    assert "MISMATCH" not in out


def test_pointing_check(capsys):
    code, out = run(capsys, "pointing-check", "--n", "2", "--k", "2")
    assert code == 0


def test_gf_check(capsys):
    code, out = run(capsys, "gf-check", "--n", "2", "--k", "2", "--all-x")
    assert code == 0
    assert out.count("lhs=") == 9


def test_mv_check(capsys):
    code, out = run(capsys, "mv-check", "--n", "3", "--k", "2")
    assert code == 0


def test_enumerate_jsonl(capsys, tmp_path):
    path = tmp_path / "facts.jsonl"
    code = main(["--out", str(path), "enumerate", "--what", "factorizations", "--n", "3", "--k", "2"])
    assert code == 0
    lines = path.read_text().strip().splitlines()
    assert len(lines) == 6
    assert json.loads(lines[0])[0] == [2, 3, 1]  # pi_1 = long cycle when pi_2 = id

    code = main(["--out", str(path), "enumerate", "--what", "mtuples", "--n", "2", "--k", "2", "--p", "1,1"])
    lines = path.read_text().strip().splitlines()
    assert sorted(lines) == ['[[1], [2]]', '[[2], [1]]']


def test_render_constellation(capsys, tmp_path):
    from constellation_lab.constellations import from_permutations
    from constellation_lab.permutations import from_cycles

    c = from_permutations(
        (from_cycles(2, [[1, 2]]), from_cycles(2, [])), root=1
    )
    path = tmp_path / "c.json"
    path.write_text(json.dumps(c.to_json()))
    code, out = run(capsys, "render", "--kind", "constellation", "--input", str(path))
    assert code == 0
    assert out.startswith("graph constellation {")


def test_psi_cli_roundtrip(tmp_path, capsys):
    b = Bidding(
        omegas=(Permutation((1, 4, 3, 2)), Permutation((3, 2, 1, 4)), Permutation((4, 1, 3, 2))),
        subsets=(frozenset({2}), frozenset({2, 3}), frozenset({1, 2}), frozenset({2, 3})),
    )
    bidding_path = tmp_path / "bidding.json"
    bidding_path.write_text(json.dumps(b.to_json()))
    nebula_path = tmp_path / "nebula.json"
    code = main(["--out", str(nebula_path), "psi", "--direction", "inv", "--input", str(bidding_path)])
    assert code == 0
    code, out = run(capsys, "psi", "--direction", "fwd", "--input", str(nebula_path))
    assert code == 0
    assert json.loads(out) == b.to_json()
