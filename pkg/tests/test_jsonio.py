import json

import numpy as np
import pytest

from mucinf import cpinf, jsonio
from mucinf.errors import ShapeMismatch, TypingError
from mucinf.fmat import OMEGA_FIN, SparseMatrix, finite_space, include_mat

RNG = np.random.default_rng(77)


class TestMatrix:
    def test_round_trip(self):
        m = RNG.random((3, 2)) + 1j * RNG.random((3, 2))
        again = jsonio.matrix_from_json(jsonio.matrix_to_json(m))
        assert np.array_equal(m, again)

    def test_schema_shape(self):
        d = jsonio.matrix_to_json(np.eye(2))
        assert d == {"rows": 2, "cols": 2,
                     "entries": [[1.0, 0.0], [0.0, 0.0],
                                 [0.0, 0.0], [1.0, 0.0]]}

    def test_rejects_nan_and_inf(self):
        bad = {"rows": 1, "cols": 1, "entries": [[float("nan"), 0.0]]}
        with pytest.raises(TypingError):
            jsonio.matrix_from_json(bad)
        bad["entries"] = [[0.0, float("inf")]]
        with pytest.raises(TypingError):
            jsonio.matrix_from_json(bad)

    def test_rejects_wrong_entry_count(self):
        with pytest.raises(ShapeMismatch):
            jsonio.matrix_from_json({"rows": 2, "cols": 2,
                                     "entries": [[1.0, 0.0]]})


class TestChannel:
    def test_round_trip(self):
        k = cpinf.random_kraus(RNG, 2, 3, 2)
        d = jsonio.channel_to_json(k)
        assert (d["dom"], d["cod"], d["ancilla"]) == (2, 3, 2)
        again = jsonio.channel_from_json(d)
        assert cpinf.equiv_decide(k, again)
        assert np.array_equal(k.body.payload, again.body.payload)

    def test_shape_validation(self):
        k = cpinf.random_kraus(RNG, 2, 3, 2)
        d = jsonio.channel_to_json(k)
        d["ancilla"] = 3
        with pytest.raises(ShapeMismatch):
            jsonio.channel_from_json(d)


def test_choi_round_trip():
    c = cpinf.to_choi(cpinf.random_kraus(RNG, 2, 2, 2))
    again = jsonio.choi_from_json(jsonio.choi_to_json(c))
    assert np.max(np.abs(c.matrix - again.matrix)) == 0.0
    assert (again.dim_in, again.dim_out) == (2, 2)


class TestFmat:
    def test_round_trip_finite(self):
        m = include_mat(np.array([[1 + 2j, 0], [0, 3]], dtype=complex))
        again = jsonio.fmat_from_json(jsonio.fmat_to_json(m))
        assert again.entries == m.entries
        assert again.src == m.src and again.tgt == m.tgt

    def test_round_trip_omega(self):
        s = finite_space((0, 1))
        m = SparseMatrix(s, OMEGA_FIN, ((0, 5, 1 + 0j),))
        d = jsonio.fmat_to_json(m)
        assert d["tgt"]["X"] == "omega"
        assert d["tgt"]["A"] == "fin" and d["tgt"]["B"] == "all"
        again = jsonio.fmat_from_json(d)
        assert again.entries == m.entries

    def test_check_report_valid(self):
        m = include_mat(np.eye(2))
        report = jsonio.fmat_check_report(jsonio.fmat_to_json(m))
        assert report["valid"]

    def test_check_report_invalid_space(self):
        d = {"src": {"X": [0, 1], "A": [[0]], "B": [[0], [1], [0, 1], []]},
             "tgt": {"X": "omega", "A": "fin", "B": "all"},
             "entries": []}
        report = jsonio.fmat_check_report(d)
        assert not report["src_space_valid"] and not report["valid"]
        assert report["tgt_space_valid"]

    def test_check_report_invalid_relation(self):
        # an explicit family that omits the support image breaks the typing
        d = {"src": {"X": [0, 1], "A": [[0], [1], [0, 1], []],
                     "B": [[0], [1], [0, 1], []]},
             "tgt": {"X": "omega", "A": "fin", "B": "all"},
             "entries": [[0, 3, 1.0, 0.0]]}
        report = jsonio.fmat_check_report(d)
        assert report["src_space_valid"] and report["tgt_space_valid"]
        assert report["relation_valid"]  # finite image always lands in fin
        d["tgt"] = {"X": [7], "A": [[7], []], "B": [[7], []]}
        report = jsonio.fmat_check_report(d)
        assert not report["relation_valid"] and not report["valid"]


def test_reports_are_json_lines():
    from mucinf.laws import check_law
    lines = jsonio.reports_to_lines([check_law("DMIX", "mat", seed=1)])
    parsed = json.loads(lines[0])
    assert parsed["law"] == "DMIX" and parsed["pass"] is True
