"""Desk-scale fragment of finiteness matrices.

A finiteness space is an index set together with two set families that are
each other's perp, where ``perp(F)`` collects the sets meeting every member
of F finitely.  Matrices between spaces are finitely supported and their
supports must be finiteness relations; that typing is what guarantees all
composition sums are finite.

Index sets are either explicit finite label tuples or the symbolic
countably-infinite ``OMEGA``.  Over OMEGA only the two-tag lattice
{FIN, ALL} of families is representable, which is exactly enough to make
the typing discipline non-vacuous.  Explicit families are closed downward
under subset on construction; the perp of any family is downward closed, so
this keeps the invariants checkable.

The inclusion of finite matrices lands on the spaces (X, P(X), P(X)) with X
finite; it is a strict functor, so all its strengths are identity matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, FrozenSet, Tuple, Union

import numpy as np

from .errors import (DimensionOverflow, ShapeMismatch, SpaceMismatch,
                     TypingError, UnsupportedInModel)
from .morphisms import Model, Morphism, get_model, register_model
from .objects import (Base, Dagger, Dual, ObjectExpr, Par, ParUnit, Tensor,
                      TensorUnit)

SUPPORT_EPS = 1e-14  # entries below this magnitude are dropped from support
MAX_EXPLICIT = 10    # explicit power families cap out at 2**10 subsets

FIN = "fin"
ALL = "all"


@dataclass(frozen=True)
class OmegaIndex:
    """The symbolic countably-infinite index set."""


@dataclass(frozen=True)
class FiniteIndex:
    labels: Tuple

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise TypingError("finite index set has repeated labels")


OMEGA = OmegaIndex()
IndexSet = Union[OmegaIndex, FiniteIndex]


@dataclass(frozen=True)
class TagFamily:
    tag: str  # FIN or ALL

    def __post_init__(self):
        if self.tag not in (FIN, ALL):
            raise TypingError(f"unknown family tag {self.tag!r}")


@dataclass(frozen=True)
class ExplicitFamily:
    sets: FrozenSet[FrozenSet]


SetFamily = Union[TagFamily, ExplicitFamily]


def downward_closure(sets) -> FrozenSet[FrozenSet]:
    closed = set()
    for s in sets:
        s = frozenset(s)
        for k in range(len(s) + 1):
            for sub in combinations(sorted(s, key=repr), k):
                closed.add(frozenset(sub))
    return frozenset(closed)


def explicit_family(sets, close: bool = True) -> ExplicitFamily:
    """Build an explicit family, downward closed unless told otherwise."""
    if close:
        return ExplicitFamily(downward_closure(sets))
    return ExplicitFamily(frozenset(frozenset(s) for s in sets))


def power_family(index: FiniteIndex) -> ExplicitFamily:
    if len(index.labels) > MAX_EXPLICIT:
        raise DimensionOverflow(
            f"power family over {len(index.labels)} labels is beyond desk scale")
    return explicit_family([index.labels])


def perp(family: SetFamily, index: IndexSet) -> SetFamily:
    """The family of sets meeting every member of ``family`` finitely."""
    if isinstance(index, FiniteIndex):
        # every subset of a finite set meets every member finitely
        return power_family(index)
    if isinstance(family, TagFamily):
        return TagFamily(ALL if family.tag == FIN else FIN)
    # explicit families over OMEGA consist of finite sets, all of which any
    # set meets finitely
    return TagFamily(ALL)


def family_member(family: SetFamily, subset: FrozenSet) -> bool:
    """Membership of a concrete finite set in a family."""
    if isinstance(family, TagFamily):
        return True  # concrete sets are finite, and FIN/ALL both admit them
    return frozenset(subset) in family.sets


def family_subset(first: SetFamily, second: SetFamily) -> bool:
    if isinstance(first, ExplicitFamily) and isinstance(second, ExplicitFamily):
        return first.sets <= second.sets
    if isinstance(first, TagFamily) and isinstance(second, TagFamily):
        return first.tag == second.tag or second.tag == ALL
    if isinstance(first, ExplicitFamily) and isinstance(second, TagFamily):
        return True  # finite members sit in both FIN and ALL
    return False


def check_finiteness_space(index: IndexSet, fam_a: SetFamily,
                           fam_b: SetFamily) -> bool:
    return perp(fam_a, index) == fam_b and perp(fam_b, index) == fam_a


@dataclass(frozen=True)
class FinitenessSpace:
    index: IndexSet
    fam_a: SetFamily
    fam_b: SetFamily

    def __post_init__(self):
        if not check_finiteness_space(self.index, self.fam_a, self.fam_b):
            raise TypingError("families are not a perp pair")

    def flip(self) -> "FinitenessSpace":
        return FinitenessSpace(self.index, self.fam_b, self.fam_a)


def finite_space(labels, close: bool = True) -> FinitenessSpace:
    """The space (X, P(X), P(X)) on explicit labels.

    ``close=False`` skips the downward closure and is only useful for
    demonstrating how the typing discipline breaks without it.
    """
    return _finite_space_cached(tuple(labels), close)


@lru_cache(maxsize=None)
def _finite_space_cached(labels: Tuple, close: bool) -> FinitenessSpace:
    index = FiniteIndex(tuple(labels))
    if len(index.labels) > MAX_EXPLICIT:
        raise DimensionOverflow(
            f"finite space on {len(index.labels)} labels is beyond desk scale")
    fam = explicit_family([index.labels], close=close)
    if close:
        return FinitenessSpace(index, fam, fam)
    # bypass validation so the broken families can be observed failing at
    # relation-typing time instead of at construction
    space = object.__new__(FinitenessSpace)
    object.__setattr__(space, "index", index)
    object.__setattr__(space, "fam_a", fam)
    object.__setattr__(space, "fam_b", fam)
    return space


OMEGA_FIN = FinitenessSpace(OMEGA, TagFamily(FIN), TagFamily(ALL))
OMEGA_ALL = FinitenessSpace(OMEGA, TagFamily(ALL), TagFamily(FIN))


def check_finiteness_relation(support, src: FinitenessSpace,
                              tgt: FinitenessSpace) -> bool:
    """Typing check for a finite support relation between two spaces."""
    support = frozenset((x, y) for x, y in support)
    domain = frozenset(x for x, _ in support)
    rng = frozenset(y for _, y in support)

    def image(subset):
        return frozenset(y for x, y in support if x in subset)

    def preimage(subset):
        return frozenset(x for x, y in support if y in subset)

    if isinstance(src.fam_a, ExplicitFamily):
        if not all(family_member(tgt.fam_a, image(a)) for a in src.fam_a.sets):
            return False
    else:
        # tag families are downward closed; the image of the full domain
        # dominates the image of every member
        if not family_member(tgt.fam_a, image(domain)):
            return False
    if isinstance(tgt.fam_b, ExplicitFamily):
        if not all(family_member(src.fam_b, preimage(b))
                   for b in tgt.fam_b.sets):
            return False
    else:
        if not family_member(src.fam_b, preimage(rng)):
            return False
    return True


@dataclass(frozen=True)
class SparseMatrix:
    """Finitely supported matrix with finiteness-relation typing."""

    src: FinitenessSpace
    tgt: FinitenessSpace
    entries: Tuple[Tuple[Tuple, Tuple, complex], ...] = field(default=())

    def __post_init__(self):
        cleaned = tuple(sorted(
            ((x, y, complex(v)) for x, y, v in self.entries
             if abs(v) > SUPPORT_EPS),
            key=lambda t: (repr(t[0]), repr(t[1]))))
        object.__setattr__(self, "entries", cleaned)
        if not check_finiteness_relation(
                [(x, y) for x, y, _ in cleaned], self.src, self.tgt):
            raise TypingError("support is not a finiteness relation")

    def as_dict(self) -> Dict[Tuple[Tuple, Tuple], complex]:
        return {(x, y): v for x, y, v in self.entries}

    def support(self) -> FrozenSet:
        return frozenset((x, y) for x, y, _ in self.entries)


def sparse_from_dict(src, tgt, mapping) -> SparseMatrix:
    return SparseMatrix(src, tgt, tuple((x, y, v)
                                        for (x, y), v in mapping.items()))


def sparse_identity(space: FinitenessSpace) -> SparseMatrix:
    if isinstance(space.index, OmegaIndex):
        raise UnsupportedInModel(
            "the identity on a symbolic infinite space has infinite support")
    return SparseMatrix(space, space,
                        tuple((x, x, 1.0 + 0j) for x in space.index.labels))


def fmat_compose(m1: SparseMatrix, m2: SparseMatrix) -> SparseMatrix:
    """Entrywise composite; finite supports keep every sum finite."""
    if m1.tgt != m2.src:
        raise SpaceMismatch("middle spaces differ")
    acc: Dict[Tuple[Tuple, Tuple], complex] = {}
    by_row: Dict[Tuple, list] = {}
    for y, z, v in m2.entries:
        by_row.setdefault(y, []).append((z, v))
    for x, y, v in m1.entries:
        for z, w in by_row.get(y, ()):
            acc[(x, z)] = acc.get((x, z), 0j) + v * w
    return sparse_from_dict(m1.src, m2.tgt, acc)


def fmat_dagger(m: SparseMatrix) -> SparseMatrix:
    """Flip the typing of both spaces, conjugate entries, transpose support."""
    return SparseMatrix(m.tgt.flip(), m.src.flip(),
                        tuple((y, x, v.conjugate()) for x, y, v in m.entries))


def include_mat(dense: np.ndarray, src_labels=None, tgt_labels=None
                ) -> SparseMatrix:
    """The inclusion functor on morphisms: a finite matrix becomes a
    finitely supported matrix between power-family spaces."""
    dense = np.asarray(dense, dtype=complex)
    rows, cols = dense.shape
    src_labels = tuple(range(cols)) if src_labels is None else tuple(src_labels)
    tgt_labels = tuple(range(rows)) if tgt_labels is None else tuple(tgt_labels)
    if len(src_labels) != cols or len(tgt_labels) != rows:
        raise ShapeMismatch("label count does not match matrix shape")
    src = finite_space(src_labels)
    tgt = finite_space(tgt_labels)
    entries = [(src_labels[j], tgt_labels[i], dense[i, j])
               for i in range(rows) for j in range(cols)]
    return SparseMatrix(src, tgt, tuple(entries))


def to_dense(m: SparseMatrix) -> np.ndarray:
    """Densify a matrix between finite spaces (column convention)."""
    if not (isinstance(m.src.index, FiniteIndex)
            and isinstance(m.tgt.index, FiniteIndex)):
        raise UnsupportedInModel("cannot densify a symbolic infinite space")
    src_pos = {x: j for j, x in enumerate(m.src.index.labels)}
    tgt_pos = {y: i for i, y in enumerate(m.tgt.index.labels)}
    out = np.zeros((len(tgt_pos), len(src_pos)), dtype=complex)
    for x, y, v in m.entries:
        out[tgt_pos[y], src_pos[x]] = v
    return out


def _product_space(left: FinitenessSpace, right: FinitenessSpace
                   ) -> FinitenessSpace:
    if isinstance(left.index, FiniteIndex) and isinstance(right.index,
                                                          FiniteIndex):
        labels = tuple((x, y) for x in left.index.labels
                       for y in right.index.labels)
        return finite_space(labels)
    # a finite factor is absorbed; two tags must agree to stay in the lattice
    if isinstance(left.index, FiniteIndex):
        return right
    if isinstance(right.index, FiniteIndex):
        return left
    if left.fam_a == right.fam_a:
        return left
    return _unsupported_mix()


def _unsupported_mix():
    raise UnsupportedInModel(
        "mixed fin/all products over the infinite index set fall outside "
        "the two-tag lattice")


_UNIT_SPACE = finite_space(("*",))


class FmatModel(Model):
    """Finiteness matrices as a law-suite model.

    The unitary subcategory is presented by the dense model; ``include``
    is the inclusion functor.  ``close_families=False`` reproduces the
    broken world without downward closure, for mutation testing only.
    """

    def __init__(self, name: str = "fmat", close_families: bool = True):
        self.name = name
        self.close_families = close_families

    def _finite_space(self, labels) -> FinitenessSpace:
        return finite_space(labels, close=self.close_families)

    # interpretation ---------------------------------------------------------
    def interpret(self, expr: ObjectExpr) -> FinitenessSpace:
        if isinstance(expr, Base):
            space = expr.label
            if not isinstance(space, FinitenessSpace):
                raise TypingError(
                    f"fmat base object needs a finiteness space, got {space!r}")
            return space
        if isinstance(expr, (Tensor, Par)):
            return _product_space(self.interpret(expr.left),
                                  self.interpret(expr.right))
        if isinstance(expr, (TensorUnit, ParUnit)):
            return _UNIT_SPACE
        if isinstance(expr, (Dagger, Dual)):
            return self.interpret(expr.inner).flip()
        raise TypeError(f"not an object expression: {expr!r}")

    def same_object(self, first, second) -> bool:
        return first == second

    # payload algebra ----------------------------------------------------------
    def identity_payload(self, expr: ObjectExpr) -> SparseMatrix:
        return sparse_identity(self.interpret(expr))

    def compose_payload(self, f: Morphism, g: Morphism) -> SparseMatrix:
        return fmat_compose(f.payload, g.payload)

    def tensor_payload(self, f: Morphism, g: Morphism) -> SparseMatrix:
        fp, gp = f.payload, g.payload
        src = _product_space(fp.src, gp.src)
        tgt = _product_space(fp.tgt, gp.tgt)
        if not (isinstance(src.index, FiniteIndex)
                and isinstance(tgt.index, FiniteIndex)):
            raise UnsupportedInModel("products of symbolic spaces")
        # go through the dense Kronecker product so the strict-inclusion
        # laws hold bit for bit, not merely within tolerance
        dense = np.kron(to_dense(fp), to_dense(gp))
        src_labels = src.index.labels
        tgt_labels = tgt.index.labels
        entries = [(src_labels[j], tgt_labels[i], dense[i, j])
                   for i in range(dense.shape[0])
                   for j in range(dense.shape[1])
                   if abs(dense[i, j]) > SUPPORT_EPS]
        return SparseMatrix(src, tgt, tuple(entries))

    par_payload = tensor_payload

    def dagger_payload(self, f: Morphism) -> SparseMatrix:
        return fmat_dagger(f.payload)

    def structural_payload(self, name, args, dom, cod) -> SparseMatrix:
        from .matc import bell_counit, bell_unit, commutation_perm

        src, tgt = self.interpret(dom), self.interpret(cod)
        if not (isinstance(src.index, FiniteIndex)
                and isinstance(tgt.index, FiniteIndex)):
            raise UnsupportedInModel(
                f"structural map {name!r} lives in the finite fragment")
        # the structural content is the same as in the dense model; here it
        # is transported onto the spaces' label enumerations
        if name in ("c_tensor", "c_par"):
            dims = []
            for arg in args:
                space = self.interpret(arg)
                if not isinstance(space.index, FiniteIndex):
                    raise UnsupportedInModel("commutation of symbolic spaces")
                dims.append(len(space.index.labels))
            dense = commutation_perm(dims[0], dims[1])
        elif name == "eta":
            dense = bell_unit(len(self.interpret(args[0]).index.labels))
        elif name == "eps":
            dense = bell_counit(len(self.interpret(args[0]).index.labels))
        else:
            if len(src.index.labels) != len(tgt.index.labels):
                raise UnsupportedInModel(
                    f"{name} would need a non-bijective relabelling")
            dense = np.eye(len(src.index.labels), dtype=complex)
        src_labels = src.index.labels
        tgt_labels = tgt.index.labels
        entries = [(src_labels[j], tgt_labels[i], dense[i, j])
                   for i in range(dense.shape[0])
                   for j in range(dense.shape[1])
                   if abs(dense[i, j]) > SUPPORT_EPS]
        return SparseMatrix(src, tgt, tuple(entries))

    def deviation(self, f: Morphism, g: Morphism) -> float:
        a, b = f.payload.as_dict(), g.payload.as_dict()
        keys = set(a) | set(b)
        return max((abs(a.get(k, 0j) - b.get(k, 0j)) for k in keys),
                   default=0.0)

    # sampling -----------------------------------------------------------------
    def random_object(self, rng, unitary: bool = False) -> ObjectExpr:
        # plain small bases: explicit power families grow as 2**labels, so
        # products of two objects must stay under the desk-scale cap
        return self.include_expr(Base(int(rng.integers(1, 4))))

    def random_morphism(self, rng, dom, cod) -> Morphism:
        src, tgt = self.interpret(dom), self.interpret(cod)
        if not (isinstance(src.index, FiniteIndex)
                and isinstance(tgt.index, FiniteIndex)):
            raise UnsupportedInModel("random morphisms need finite spaces")
        entries = []
        for x in src.index.labels:
            for y in tgt.index.labels:
                entries.append((x, y, complex(rng.random(), rng.random())))
        return Morphism(self.name, dom, cod,
                        SparseMatrix(src, tgt, tuple(entries)))

    # inclusion functor ----------------------------------------------------------
    @property
    def unitary_donor(self) -> Model:
        return get_model("mat")

    def include_expr(self, expr: ObjectExpr) -> ObjectExpr:
        if isinstance(expr, Base):
            return Base(self._finite_space(tuple(range(expr.label))))
        if isinstance(expr, Tensor):
            return Tensor(self.include_expr(expr.left),
                          self.include_expr(expr.right))
        if isinstance(expr, Par):
            return Par(self.include_expr(expr.left),
                       self.include_expr(expr.right))
        if isinstance(expr, Dagger):
            return Dagger(self.include_expr(expr.inner))
        if isinstance(expr, Dual):
            return Dual(self.include_expr(expr.inner))
        if isinstance(expr, (TensorUnit, ParUnit)):
            return expr
        raise TypeError(f"not an object expression: {expr!r}")

    def include(self, f: Morphism) -> Morphism:
        donor = self.unitary_donor
        if f.model != donor.name:
            raise TypingError("include expects a morphism of the dense model")
        dom = self.include_expr(f.dom)
        cod = self.include_expr(f.cod)
        src, tgt = self.interpret(dom), self.interpret(cod)
        src_labels = src.index.labels
        tgt_labels = tgt.index.labels
        dense = f.payload
        entries = [(src_labels[j], tgt_labels[i], dense[i, j])
                   for i in range(dense.shape[0])
                   for j in range(dense.shape[1])]
        return Morphism(self.name, dom, cod,
                        SparseMatrix(src, tgt, tuple(entries)))


FMAT = FmatModel()
register_model(FMAT)
