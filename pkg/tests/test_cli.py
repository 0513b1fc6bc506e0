import json

import numpy as np
import pytest

from mucinf import cpinf, jsonio
from mucinf.cli import main
from mucinf.objects import Base

RNG = np.random.default_rng(123)


def write_channel(path, k):
    path.write_text(json.dumps(jsonio.channel_to_json(k)))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_channel_equiv_reflexive(tmp_path, capsys):
    p = write_channel(tmp_path / "id.json", cpinf.kraus_identity("mat",
                                                                 Base(2)))
    code, out, _ = run(capsys, "channel-equiv", p, p)
    assert code == 0
    payload = json.loads(out)
    assert payload["equivalent"] is True
    assert "seed" in payload and "tol" in payload


def test_channel_equiv_distinguishes(tmp_path, capsys):
    k1, k2 = cpinf.distinct_pair(RNG, 2, 2)
    p1 = write_channel(tmp_path / "a.json", k1)
    p2 = write_channel(tmp_path / "b.json", k2)
    code, out, _ = run(capsys, "channel-equiv", p1, p2)
    assert code == 1
    assert json.loads(out)["equivalent"] is False


def test_channel_apply_discard_is_trace(tmp_path, capsys):
    p = write_channel(tmp_path / "discard.json",
                      cpinf.env_discard("mat", Base(2)))
    rho = cpinf.random_density(RNG, 2)
    rho_path = tmp_path / "rho.json"
    rho_path.write_text(json.dumps(jsonio.matrix_to_json(rho)))
    code, out, _ = run(capsys, "channel-apply", p, str(rho_path))
    assert code == 0
    result = jsonio.matrix_from_json(json.loads(out))
    assert np.allclose(result, [[np.trace(rho)]])


def test_compose_then_apply(tmp_path, capsys):
    k1 = cpinf.random_kraus(RNG, 2, 3, 2)
    k2 = cpinf.random_kraus(RNG, 3, 2, 1)
    p1 = write_channel(tmp_path / "k1.json", k1)
    p2 = write_channel(tmp_path / "k2.json", k2)
    out_path = tmp_path / "out.json"
    code, _, _ = run(capsys, "channel-compose", p1, p2,
                     "--out", str(out_path))
    assert code == 0
    k = jsonio.channel_from_json(json.loads(out_path.read_text()))
    assert cpinf.equiv_decide(k, cpinf.kraus_compose(k1, k2))


def test_choi_purify_round_trip_twenty_fixtures(tmp_path, capsys):
    for i in range(20):
        k = cpinf.random_kraus(RNG)
        cpath = write_channel(tmp_path / f"chan{i}.json", k)
        choi_path = tmp_path / f"choi{i}.json"
        code, _, _ = run(capsys, "channel-choi", cpath,
                         "--out", str(choi_path))
        assert code == 0
        pur_path = tmp_path / f"pure{i}.json"
        code, _, _ = run(capsys, "channel-purify", str(choi_path),
                         "--out", str(pur_path), "--tol", "1e-8")
        assert code == 0
        code, out, _ = run(capsys, "channel-equiv", str(pur_path), cpath,
                           "--tol", "1e-7")
        assert code == 0, out


def test_channel_decompose(tmp_path, capsys):
    k = cpinf.random_kraus(RNG, 2, 2, 3)
    p = write_channel(tmp_path / "k.json", k)
    code, out, _ = run(capsys, "channel-decompose", p)
    assert code == 0
    blocks = [jsonio.matrix_from_json(b) for b in json.loads(out)["kraus"]]
    assert len(blocks) == 3
    for got, want in zip(blocks, cpinf.pure_decomposition(k)):
        assert np.array_equal(got, want)


def test_laws_run_exit_codes_and_lines(capsys):
    code, out, _ = run(capsys, "laws-run", "--model", "cplane",
                       "--trials", "2", "--seed", "7")
    assert code == 0
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert len(lines) >= 30
    assert all(line["pass"] for line in lines)
    assert all(line["seed"] == 7 for line in lines)


def test_laws_run_mat_emits_full_catalog(capsys):
    code, out, _ = run(capsys, "laws-run", "--model", "mat",
                       "--trials", "1", "--seed", "7")
    assert code == 0
    assert len(out.strip().splitlines()) >= 30


def test_laws_run_filter(capsys):
    code, out, _ = run(capsys, "laws-run", "--model", "mat",
                       "--trials", "2", "--filter", "DMIX")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 1 and json.loads(lines[0])["law"] == "DMIX"


def test_laws_list(capsys):
    code, out, _ = run(capsys, "laws-list")
    assert code == 0
    laws = json.loads(out)["laws"]
    assert any(entry["id"] == "DMIX" for entry in laws)
    assert len(laws) >= 30


def test_fmat_check(tmp_path, capsys):
    from mucinf.fmat import include_mat
    m = include_mat(np.eye(2))
    good = tmp_path / "good.json"
    good.write_text(json.dumps(jsonio.fmat_to_json(m)))
    code, out, _ = run(capsys, "fmat-check", str(good))
    assert code == 0 and json.loads(out)["valid"]

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "src": {"X": [0, 1], "A": [[0]], "B": [[0], [1], [0, 1], []]},
        "tgt": {"X": "omega", "A": "fin", "B": "all"},
        "entries": []}))
    code, out, _ = run(capsys, "fmat-check", str(bad))
    assert code == 1 and not json.loads(out)["valid"]


def test_seed_env_fallback(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("MUC_CPINF_SEED", "42")
    code, out, _ = run(capsys, "laws-run", "--model", "cplane",
                       "--trials", "1", "--filter", "DMIX")
    assert code == 0
    assert json.loads(out.strip())["seed"] == 42


def test_usage_error_exit_two(capsys):
    code, _, err = run(capsys, "channel-choi", "no-such-file.json")
    assert code == 2 and "error:" in err


def test_entry_point_parses():
    with pytest.raises(SystemExit):
        main(["--help"])
