"""JSON codecs for the file-based workflows.

Schemas:

* matrix:   ``{"rows": n, "cols": m, "entries": [[re, im], ...]}`` row-major
* channel:  ``{"dom": a, "cod": b, "ancilla": u, "body": <matrix>}``
* choi:     matrix fields plus ``{"a": dim_in, "b": dim_out}``
* fmat:     ``{"src": <space>, "tgt": <space>, "entries": [[x, y, re, im]..]}``
  where a space is ``{"X": "omega" | [labels...], "A": fam, "B": fam}`` and a
  family is ``"fin" | "all" | [[labels...], ...]``

Readers reject non-finite numbers.
"""

from __future__ import annotations

import math
from typing import List

import numpy as np

from .cpinf import ChoiMatrix, KrausMorphism, kraus_new
from .errors import ShapeMismatch, TypingError
from .fmat import (ALL, FIN, FiniteIndex, FinitenessSpace, OMEGA,
                   OmegaIndex, SetFamily, SparseMatrix, TagFamily,
                   explicit_family)
from .matc import _freeze
from .morphisms import Morphism
from .objects import Base, Par


def _check_finite(x: float, what: str) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise TypingError(f"non-finite number in {what}")
    return x


def matrix_to_json(m: np.ndarray) -> dict:
    rows, cols = m.shape
    entries = [[float(v.real), float(v.imag)] for v in m.reshape(-1)]
    return {"rows": int(rows), "cols": int(cols), "entries": entries}


def matrix_from_json(d: dict) -> np.ndarray:
    rows, cols = int(d["rows"]), int(d["cols"])
    entries = d["entries"]
    if len(entries) != rows * cols:
        raise ShapeMismatch(
            f"expected {rows * cols} entries, got {len(entries)}")
    flat = [complex(_check_finite(re, "matrix"), _check_finite(im, "matrix"))
            for re, im in entries]
    return _freeze(np.array(flat, dtype=complex).reshape(rows, cols))


def channel_to_json(k: KrausMorphism) -> dict:
    from .morphisms import get_model
    m = get_model(k.model)
    return {
        "dom": m.interpret(k.dom),
        "cod": m.interpret(k.cod),
        "ancilla": m.interpret(k.ancilla),
        "body": matrix_to_json(k.body.payload),
    }


def channel_from_json(d: dict) -> KrausMorphism:
    a, b, u = int(d["dom"]), int(d["cod"]), int(d["ancilla"])
    body_mat = matrix_from_json(d["body"])
    if body_mat.shape != (u * b, a):
        raise ShapeMismatch(
            f"body must be {(u * b, a)} for dom={a} cod={b} ancilla={u}, "
            f"got {body_mat.shape}")
    body = Morphism("mat", Base(a), Par(Base(u), Base(b)), body_mat)
    return kraus_new(body, Base(u))


def choi_to_json(c: ChoiMatrix) -> dict:
    out = matrix_to_json(c.matrix)
    out["a"] = c.dim_in
    out["b"] = c.dim_out
    return out


def choi_from_json(d: dict) -> ChoiMatrix:
    return ChoiMatrix(matrix_from_json(d), int(d["a"]), int(d["b"]))


# ---------------------------------------------------------------------------
# finiteness matrices


def _family_to_json(fam: SetFamily):
    if isinstance(fam, TagFamily):
        return fam.tag
    return sorted([sorted(s, key=repr) for s in fam.sets], key=repr)


def _family_from_json(obj) -> SetFamily:
    if isinstance(obj, str):
        if obj not in (FIN, ALL):
            raise TypingError(f"unknown family tag {obj!r}")
        return TagFamily(obj)
    return explicit_family([[_label(x) for x in subset] for subset in obj])


def _label(x):
    # JSON labels are scalars; lists are not hashable
    if isinstance(x, (str, int, float, bool)):
        return x
    raise TypingError(f"labels must be scalars, got {x!r}")


def _space_to_json(space: FinitenessSpace) -> dict:
    x = "omega" if isinstance(space.index, OmegaIndex) \
        else list(space.index.labels)
    return {"X": x, "A": _family_to_json(space.fam_a),
            "B": _family_to_json(space.fam_b)}


def _space_from_json(d: dict) -> FinitenessSpace:
    if d["X"] == "omega":
        index = OMEGA
    else:
        index = FiniteIndex(tuple(_label(x) for x in d["X"]))
    return FinitenessSpace(index, _family_from_json(d["A"]),
                           _family_from_json(d["B"]))


def fmat_to_json(m: SparseMatrix) -> dict:
    return {
        "src": _space_to_json(m.src),
        "tgt": _space_to_json(m.tgt),
        "entries": [[x, y, float(v.real), float(v.imag)]
                    for x, y, v in m.entries],
    }


def fmat_from_json(d: dict) -> SparseMatrix:
    src = _space_from_json(d["src"])
    tgt = _space_from_json(d["tgt"])
    entries = tuple(
        (_label(x), _label(y),
         complex(_check_finite(re, "fmat"), _check_finite(im, "fmat")))
        for x, y, re, im in d["entries"])
    return SparseMatrix(src, tgt, entries)


def fmat_check_report(d: dict) -> dict:
    """Granular validity report for a finiteness-matrix file: are the two
    space descriptions perp pairs, and is the support a finiteness relation?
    Never raises on invalid content; it reports instead."""
    from types import SimpleNamespace

    from .fmat import check_finiteness_relation, check_finiteness_space

    def parse_side(side):
        raw = d[side]
        index = OMEGA if raw["X"] == "omega" \
            else FiniteIndex(tuple(_label(x) for x in raw["X"]))
        fam_a = _family_from_json(raw["A"])
        fam_b = _family_from_json(raw["B"])
        return SimpleNamespace(index=index, fam_a=fam_a, fam_b=fam_b)

    out = {"src_space_valid": False, "tgt_space_valid": False,
           "relation_valid": False, "valid": False}
    try:
        src = parse_side("src")
        tgt = parse_side("tgt")
    except (TypingError, KeyError, ValueError) as exc:
        out["error"] = str(exc)
        return out
    out["src_space_valid"] = check_finiteness_space(src.index, src.fam_a,
                                                    src.fam_b)
    out["tgt_space_valid"] = check_finiteness_space(tgt.index, tgt.fam_a,
                                                    tgt.fam_b)
    support = [(x, y) for x, y, _, _ in d.get("entries", [])]
    out["relation_valid"] = check_finiteness_relation(support, src, tgt)
    out["valid"] = (out["src_space_valid"] and out["tgt_space_valid"]
                    and out["relation_valid"])
    return out


def reports_to_lines(reports) -> List[str]:
    import json
    return [json.dumps(r.to_json(), sort_keys=True) for r in reports]
