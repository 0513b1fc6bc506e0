"""Channels over a mixed-unitary model.

A channel representative is a morphism ``f : A -> U + B`` together with its
ancilla ``U`` drawn from the unitary subcategory.  Representatives are
identified when no test map can distinguish them; in the dense model that
relation is decided by equality of Choi matrices, in the discrete model by a
closed form, and a sampling oracle witnesses the test-map definition
directly.

The channel category built here inherits its two tensors, its mix structure
and (over the dense model) its dagger from the base model; the environment
operations at the bottom of the file realise discarding, purification and
the comparison functor between two environment presentations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np

from . import matc
from .cplane import CplaneKraus, CplaneModel, cplane_equiv
from .errors import (DomCodMismatch, NotPSD, TypingError, UnsupportedInModel)
from .fmat import FiniteIndex, FmatModel, to_dense
from .matc import MatModel
from .morphisms import (Model, Morphism, dagger, get_model, identity, par,
                        tensor)
from .objects import BOT, Base, Dagger, Dual, ObjectExpr, Par, Tensor
from .structural import structural


@dataclass(frozen=True)
class KrausMorphism:
    """A channel representative: body ``dom -> Par(ancilla, cod)``."""

    model: str
    dom: ObjectExpr
    cod: ObjectExpr
    ancilla: ObjectExpr
    body: Morphism


@dataclass(frozen=True)
class ChoiMatrix:
    """Canonical invariant of a dense-model channel.

    ``matrix`` is Hermitian of size (in*out) x (in*out) in the (out, in)
    double-index convention: entry ((b,a),(b',a')) is the sum over Kraus
    blocks of M[b,a] * conj(M[b',a']).  Positive semidefiniteness (within a
    -1e-9 eigenvalue floor) holds for every matrix produced here and is
    enforced where it matters, at purification.
    """

    matrix: np.ndarray
    dim_in: int
    dim_out: int

    def __post_init__(self):
        matc.check_hermitian(self.matrix)
        if self.matrix.shape[0] != self.dim_in * self.dim_out:
            raise TypingError("Choi matrix size must be dim_in * dim_out")


def _model_of(k: KrausMorphism) -> Model:
    return get_model(k.model)


def validate_body(f: Morphism, ancilla: ObjectExpr) -> None:
    if not (isinstance(f.cod, Par) and f.cod.left == ancilla):
        raise TypingError(
            "body codomain must be Par(ancilla, cod), got "
            f"{f.cod!r} with ancilla {ancilla!r}")
    model = get_model(f.model)
    if isinstance(model, MatModel):
        rows, cols = f.payload.shape
        if rows != model.interpret(f.cod) or cols != model.interpret(f.dom):
            raise TypingError(
                f"payload shape {f.payload.shape} does not match typing")
    elif isinstance(model, CplaneModel):
        if not model.same_object(model.interpret(f.dom),
                                 model.interpret(f.cod)):
            raise TypingError(
                "no such identity map: dom and codomain evaluate differently "
                "(need dom = ancilla * cod)")
    elif isinstance(model, FmatModel):
        if f.payload.src != model.interpret(f.dom) \
                or f.payload.tgt != model.interpret(f.cod):
            raise TypingError("sparse payload spaces do not match typing")


def kraus_new(f: Morphism, ancilla: ObjectExpr) -> KrausMorphism:
    """Wrap a morphism ``A -> Par(U, B)`` as a channel representative."""
    validate_body(f, ancilla)
    return KrausMorphism(f.model, f.dom, f.cod.right, ancilla, f)


def kraus_identity(model: Model | str, a: ObjectExpr) -> KrausMorphism:
    """The identity channel, with the par unit as ancilla."""
    m = get_model(model) if isinstance(model, str) else model
    body = (structural(m, "u_par_l_inv", [a])
            >> par(structural(m, "n_bot_inv", []), identity(m, a)))
    return kraus_new(body, body.cod.left)


def kraus_compose(k1: KrausMorphism, k2: KrausMorphism) -> KrausMorphism:
    """Composite channel; the ancillas accumulate as Par(U1, U2)."""
    if k1.model != k2.model:
        raise TypingError(f"models differ: {k1.model} vs {k2.model}")
    if k1.cod != k2.dom:
        raise TypingError(f"cod {k1.cod!r} != dom {k2.dom!r}")
    m = _model_of(k1)
    if isinstance(m, FmatModel):
        return _fmat_kraus_compose(m, k1, k2)
    body = (k1.body
            >> par(identity(m, k1.ancilla), k2.body)
            >> structural(m, "a_par", [k1.ancilla, k2.ancilla, k2.cod]))
    return kraus_new(body, Par(k1.ancilla, k2.ancilla))


def _fmat_kraus_compose(m: FmatModel, k1, k2) -> KrausMorphism:
    # direct support surgery: never materialises the identity on the first
    # ancilla, so symbolic infinite ancillas compose fine
    from .fmat import SparseMatrix
    by_mid = {}
    for b, vc, val in k2.body.payload.entries:
        by_mid.setdefault(b, []).append((vc, val))
    acc = {}
    for x, ub, val1 in k1.body.payload.entries:
        u, b = ub
        for (v, c), val2 in by_mid.get(b, ()):
            key = (x, ((u, v), c))
            acc[key] = acc.get(key, 0j) + val1 * val2
    ancilla = Par(k1.ancilla, k2.ancilla)
    cod_expr = Par(ancilla, k2.cod)
    payload = SparseMatrix(m.interpret(k1.dom), m.interpret(cod_expr),
                           tuple((x, y, v) for (x, y), v in acc.items()))
    body = Morphism(m.name, k1.dom, cod_expr, payload)
    return kraus_new(body, ancilla)


def _rewire_tensor(m: Model, u1, b, u2, d) -> Morphism:
    # Tensor(Par(u1,b), Par(u2,d)) -> Par(Par(u1,u2), Tensor(b,d))
    return (tensor(structural(m, "mx_inv", [u1, b]),
                   structural(m, "mx_inv", [u2, d]))
            >> structural(m, "a_tensor_inv", [u1, b, Tensor(u2, d)])
            >> tensor(identity(m, u1), structural(m, "a_tensor", [b, u2, d]))
            >> tensor(identity(m, u1),
                      tensor(structural(m, "c_tensor", [b, u2]),
                             identity(m, d)))
            >> tensor(identity(m, u1),
                      structural(m, "a_tensor_inv", [u2, b, d]))
            >> structural(m, "a_tensor", [u1, u2, Tensor(b, d)])
            >> structural(m, "mx", [Tensor(u1, u2), Tensor(b, d)])
            >> par(structural(m, "mx", [u1, u2]), identity(m, Tensor(b, d))))


def _rewire_par(m: Model, u1, b, u2, d) -> Morphism:
    # Par(Par(u1,b), Par(u2,d)) -> Par(Par(u1,u2), Par(b,d))
    return (structural(m, "a_par_inv", [u1, b, Par(u2, d)])
            >> par(identity(m, u1), structural(m, "a_par", [b, u2, d]))
            >> par(identity(m, u1),
                   par(structural(m, "c_par", [b, u2]), identity(m, d)))
            >> par(identity(m, u1), structural(m, "a_par_inv", [u2, b, d]))
            >> structural(m, "a_par", [u1, u2, Par(b, d)]))


def kraus_tensor(k1: KrausMorphism, k2: KrausMorphism) -> KrausMorphism:
    """Tensor of channels; the middle swap pulls both ancillas leftmost."""
    if k1.model != k2.model:
        raise TypingError(f"models differ: {k1.model} vs {k2.model}")
    m = _model_of(k1)
    body = (tensor(k1.body, k2.body)
            >> _rewire_tensor(m, k1.ancilla, k1.cod, k2.ancilla, k2.cod))
    return kraus_new(body, Par(k1.ancilla, k2.ancilla))


def kraus_par(k1: KrausMorphism, k2: KrausMorphism) -> KrausMorphism:
    """Par of channels; in the dense model it coincides with the tensor."""
    if k1.model != k2.model:
        raise TypingError(f"models differ: {k1.model} vs {k2.model}")
    m = _model_of(k1)
    body = (par(k1.body, k2.body)
            >> _rewire_par(m, k1.ancilla, k1.cod, k2.ancilla, k2.cod))
    return kraus_new(body, Par(k1.ancilla, k2.ancilla))


# ---------------------------------------------------------------------------
# dense-model channel analysis


def _require_mat(k: KrausMorphism) -> MatModel:
    m = _model_of(k)
    if not isinstance(m, MatModel):
        raise UnsupportedInModel(
            f"operation needs the dense model, got {k.model}")
    return m


def pure_decomposition(k: KrausMorphism) -> List[np.ndarray]:
    """Slice the body into its Kraus blocks M_i (cod x dom each)."""
    m = _require_mat(k)
    u = m.interpret(k.ancilla)
    b = m.interpret(k.cod)
    a = m.interpret(k.dom)
    return [np.array(block) for block in k.body.payload.reshape(u, b, a)]


def channel_action(k: KrausMorphism, density: np.ndarray,
                   tol: float = 1e-9) -> np.ndarray:
    """Apply the channel to a density matrix."""
    m = _require_mat(k)
    return matc.apply_channel(k.body.payload, m.interpret(k.ancilla),
                              density, tol)


def kraus_dagger(k: KrausMorphism) -> KrausMorphism:
    """Representative of the adjoint channel.

    Built from the pure decomposition: the blocks are daggered and stacked,
    which lands on the same channel as the dual-bending construction because
    every structural map of the dense model is a permutation.
    """
    m = _require_mat(k)
    blocks = pure_decomposition(k)
    dblocks = [m.dagger_payload(Morphism(k.model, k.dom, k.cod, blk))
               for blk in blocks]
    payload = matc._freeze(np.concatenate(dblocks, axis=0))
    body = Morphism(k.model, Dagger(k.cod),
                    Par(Dual(k.ancilla), Dagger(k.dom)), payload)
    return kraus_new(body, Dual(k.ancilla))


def to_choi(k: KrausMorphism) -> ChoiMatrix:
    """Glue the representative to its dagger along the ancilla."""
    m = _require_mat(k)
    a = m.interpret(k.dom)
    b = m.interpret(k.cod)
    u = m.interpret(k.ancilla)
    w = k.body.payload.reshape(u, b * a)
    c = w.T @ w.conj()
    # clip rounding asymmetry so the invariant holds exactly
    c = (c + c.conj().T) / 2.0
    return ChoiMatrix(c, a, b)


def _fmat_to_mat(k: KrausMorphism) -> KrausMorphism:
    m = _model_of(k)
    spaces = [m.interpret(e) for e in (k.dom, k.cod, k.ancilla)]
    if not all(isinstance(s.index, FiniteIndex) for s in spaces):
        raise UnsupportedInModel(
            "no decision procedure outside the finite fragment")
    dense = to_dense(k.body.payload)
    dims = [len(s.index.labels) for s in spaces]
    body = Morphism("mat", Base(dims[0]),
                    Par(Base(dims[2]), Base(dims[1])), matc._freeze(dense))
    return kraus_new(body, Base(dims[2]))


def _as_cplane(k: KrausMorphism) -> CplaneKraus:
    m = _model_of(k)
    anc = m.interpret(k.ancilla)
    if abs(anc.imag) > 1e-12 * max(1.0, abs(anc)):
        raise TypingError("ancilla of a discrete-model channel must be real")
    return CplaneKraus(m.interpret(k.dom), m.interpret(k.cod), anc.real)


def channel_deviation(k1: KrausMorphism, k2: KrausMorphism) -> float:
    """Distance between canonical forms (0 exactly when equivalent)."""
    if k1.model != k2.model:
        raise DomCodMismatch(f"models differ: {k1.model} vs {k2.model}")
    m = _model_of(k1)
    if isinstance(m, FmatModel):
        return channel_deviation(_fmat_to_mat(k1), _fmat_to_mat(k2))
    if isinstance(m, CplaneModel):
        c1, c2 = _as_cplane(k1), _as_cplane(k2)
        return 0.0 if cplane_equiv(c1, c2) else abs(c1.ancilla - c2.ancilla)
    dims1 = (m.interpret(k1.dom), m.interpret(k1.cod))
    dims2 = (m.interpret(k2.dom), m.interpret(k2.cod))
    if dims1 != dims2:
        raise DomCodMismatch(f"channel types differ: {dims1} vs {dims2}")
    c1, c2 = to_choi(k1), to_choi(k2)
    return float(np.max(np.abs(c1.matrix - c2.matrix), initial=0.0))


def equiv_decide(k1: KrausMorphism, k2: KrausMorphism,
                 tol: float = 1e-9) -> bool:
    """Decide channel equivalence via the canonical form."""
    m = _model_of(k1)
    if isinstance(m, CplaneModel):
        return cplane_equiv(_as_cplane(k1), _as_cplane(k2))
    return channel_deviation(k1, k2) <= tol


@dataclass(frozen=True)
class Channel:
    """Equivalence-class handle: canonical form plus one representative."""

    model: str
    canonical: object  # ChoiMatrix, or a (dom, cod, ratio) triple
    representative: KrausMorphism

    def equals(self, other: "Channel", tol: float = 1e-9) -> bool:
        if self.model != other.model:
            return False
        try:
            return equiv_decide(self.representative, other.representative,
                                tol)
        except DomCodMismatch:
            return False


def channel(k: KrausMorphism) -> Channel:
    m = _model_of(k)
    if isinstance(m, CplaneModel):
        c = _as_cplane(k)
        ratio = None if abs(c.cod) < 1e-12 else c.ancilla
        return Channel(k.model, (c.dom, c.cod, ratio), k)
    if isinstance(m, FmatModel):
        return Channel(k.model, to_choi(_fmat_to_mat(k)), k)
    return Channel(k.model, to_choi(k), k)


# ---------------------------------------------------------------------------
# the sampling oracle for the test-map definition of equivalence


def _testmap_side(k: KrausMorphism, h: Morphism, c_expr: ObjectExpr,
                  x_expr: ObjectExpr) -> Morphism:
    """One side of the defining equation, built literally from the wiring."""
    m = _model_of(k)
    u, a, b, f = k.ancilla, k.dom, k.cod, k.body
    return (
        tensor(f, identity(m, c_expr))
        >> structural(m, "dr", [u, b, c_expr])
        >> par(identity(m, u), h)
        >> structural(m, "mx_inv", [u, x_expr])
        >> tensor(structural(m, "phi", [u]), structural(m, "phi", [x_expr]))
        >> tensor(structural(m, "rho", [u]), structural(m, "rho", [x_expr]))
        >> tensor(identity(m, Dagger(u)),
                  dagger(h) >> structural(m, "lam_par_inv", [b, c_expr]))
        >> structural(m, "dl", [Dagger(u), Dagger(b), Dagger(c_expr)])
        >> par(structural(m, "lam_tensor", [u, b]),
               identity(m, Dagger(c_expr)))
        >> par(dagger(f), identity(m, Dagger(c_expr)))
        >> structural(m, "lam_par", [a, c_expr]))


def equiv_testmap_oracle(k1: KrausMorphism, k2: KrausMorphism,
                         trials: int = 200, seed: Optional[int] = None,
                         rng=None, c_dims=(1, 2, 3), x_dims=(1, 2),
                         tol: float = 1e-9) -> dict:
    """Sample test maps and look for one separating the two representatives.

    Independent of the canonical-form decision: both sides of the defining
    equation are composed literally from structural maps, so a witness is a
    concrete test map whose two glued composites differ.
    """
    m = _require_mat(k1)
    if (m.interpret(k1.dom) != m.interpret(k2.dom)
            or m.interpret(k1.cod) != m.interpret(k2.cod)):
        raise DomCodMismatch("representatives do not share dom/cod")
    if rng is None:
        rng = np.random.default_rng(seed if seed is not None else 0)
    b = k1.cod
    for trial in range(trials):
        c_expr = Base(int(rng.choice(c_dims)))
        x_expr = Base(int(rng.choice(x_dims)))
        h = m.random_morphism(rng, Tensor(b, c_expr), x_expr)
        h2 = Morphism(k2.model, Tensor(k2.cod, c_expr), x_expr, h.payload)
        lhs = _testmap_side(k1, h, c_expr, x_expr)
        rhs = _testmap_side(k2, h2, c_expr, x_expr)
        dev = float(np.max(np.abs(lhs.payload - rhs.payload), initial=0.0))
        if dev > tol:
            return {"consistent": False, "trials": trials,
                    "witness": {"trial": trial, "c_dim": c_expr.label,
                                "x_dim": x_expr.label, "deviation": dev}}
    return {"consistent": True, "trials": trials, "witness": None}


# ---------------------------------------------------------------------------
# samplers used by the suite and the acceptance checks


def random_kraus(rng, dom_dim: Optional[int] = None,
                 cod_dim: Optional[int] = None,
                 ancilla_dim: Optional[int] = None,
                 model: str = "mat") -> KrausMorphism:
    m = get_model(model)
    a = dom_dim if dom_dim is not None else int(rng.integers(1, 4))
    b = cod_dim if cod_dim is not None else int(rng.integers(1, 4))
    u = ancilla_dim if ancilla_dim is not None else int(rng.integers(1, 4))
    body = m.random_morphism(rng, Base(a), Par(Base(u), Base(b)))
    return kraus_new(body, Base(u))


def equivalent_variant(rng, k: KrausMorphism) -> KrausMorphism:
    """An equivalent representative: mix the ancilla by a unitary, or pad
    it with extra wires fed through an isometry."""
    m = _require_mat(k)
    u = m.interpret(k.ancilla)
    b = m.interpret(k.cod)
    if rng.random() < 0.5:
        alpha = matc.random_unitary(rng, u)
        new_u, mixer = u, alpha
    else:
        extra = int(rng.integers(1, 3))
        big = matc.random_unitary(rng, u + extra)
        new_u, mixer = u + extra, big[:, :u]  # isometry: mixer^ mixer = 1
    payload = matc.mat_kron(mixer, matc.mat_identity(b)) @ k.body.payload
    body = Morphism(k.model, k.dom, Par(Base(new_u), k.cod),
                    matc._freeze(payload))
    return kraus_new(body, Base(new_u))


def distinct_pair(rng, dom_dim=None, cod_dim=None, min_gap: float = 1e-3):
    """Two representatives of provably different channels."""
    a = dom_dim if dom_dim is not None else int(rng.integers(1, 4))
    b = cod_dim if cod_dim is not None else int(rng.integers(1, 4))
    k1 = random_kraus(rng, a, b)
    while True:
        k2 = random_kraus(rng, a, b)
        if channel_deviation(k1, k2) > min_gap:
            return k1, k2


def random_density(rng, dim: int) -> np.ndarray:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = z @ z.conj().T
    return rho / np.trace(rho).real


def random_cplane_kraus(rng, cod: Optional[complex] = None) -> KrausMorphism:
    """A discrete-model representative with a random nonzero real ancilla."""
    if cod is None:
        cod = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if abs(cod) < 0.25:
            cod += 0.5
    r = (0.25 + 1.75 * rng.random()) * (1 if rng.random() < 0.5 else -1)
    dom = complex(r) * cod
    body = Morphism("cplane", Base(dom), Par(Base(complex(r)), Base(cod)),
                    None)
    return kraus_new(body, Base(complex(r)))


# ---------------------------------------------------------------------------
# canonical functors into the channel category


def functor_Q(f: Morphism) -> KrausMorphism:
    """Every base-model morphism as a pure channel (ancilla the par unit)."""
    m = get_model(f.model)
    body = (f >> structural(m, "u_par_l_inv", [f.cod])
            >> par(structural(m, "n_bot_inv", []), identity(m, f.cod)))
    return kraus_new(body, body.cod.left)


def functor_N(f: Morphism, target_model: Optional[str] = None) -> KrausMorphism:
    """The unitary subcategory mapped through the inclusion, then Q."""
    m = get_model(target_model) if target_model else get_model(f.model)
    return functor_Q(m.include(f))


# ---------------------------------------------------------------------------
# environment structure: discard, purification, initiality probe


def env_discard(model: Model | str, u_expr: ObjectExpr) -> KrausMorphism:
    """Discard a unitary object: the whole input becomes the ancilla."""
    m = get_model(model) if isinstance(model, str) else model
    body = structural(m, "u_par_r_inv", [u_expr])
    return kraus_new(body, u_expr)


def purify(choi: ChoiMatrix, model: str = "mat",
           rank_cutoff: float = 1e-10) -> KrausMorphism:
    """Stinespring representative from the Choi eigendecomposition.

    The ancilla dimension is the Choi rank; Kraus blocks are the unvec'd
    scaled eigenvectors.  Raises NotPSD below the -1e-9 eigenvalue floor.
    """
    m = get_model(model)
    if not isinstance(m, MatModel):
        raise UnsupportedInModel("purification needs the dense model")
    w, v = matc.hermitian_eig(choi.matrix)
    scale = max(1.0, float(np.max(np.abs(w), initial=0.0)))
    if np.min(w, initial=0.0) < -1e-9 * scale:
        raise NotPSD(f"Choi eigenvalue {np.min(w)} below the PSD floor")
    a, b = choi.dim_in, choi.dim_out
    blocks = [np.sqrt(lam) * vec.reshape(b, a)
              for lam, vec in zip(w, v.T) if lam > rank_cutoff * scale]
    if not blocks:
        blocks = [np.zeros((b, a), dtype=complex)]
    payload = matc._freeze(np.concatenate(blocks, axis=0))
    body = Morphism(m.name, Base(a), Par(Base(len(blocks)), Base(b)), payload)
    return kraus_new(body, Base(len(blocks)))


@dataclass(frozen=True)
class EnvStructure:
    """A strict isomix functor on pure maps plus a discard family."""

    model: str
    functor: Callable[[Morphism], KrausMorphism]
    discard: Callable[[ObjectExpr], KrausMorphism]
    label: str = "canonical"


def canonical_env(model: str = "mat") -> EnvStructure:
    return EnvStructure(model, functor_Q,
                        lambda u: env_discard(model, u), "canonical")


def env_factor(structure: EnvStructure, k: KrausMorphism) -> KrausMorphism:
    """Push a representative through the structure: F(body), then discard
    the ancilla, then strip the par unit."""
    m = get_model(structure.model)
    pure = structure.functor(k.body)
    dis = kraus_par(structure.discard(k.ancilla),
                    kraus_identity(m, k.cod))
    unit = structure.functor(structural(m, "u_par_l", [k.cod]))
    return kraus_compose(kraus_compose(pure, dis), unit)


ENV_AXIOMS = ("Env.1a", "Env.1b", "Env.2", "Env.3")


def env_axiom_trial(structure: EnvStructure, axiom: str, rng,
                    tol: float = 1e-9):
    """One randomised instance of an environment axiom.

    Returns (deviation, witness-info); deviation 0 means the instance holds.
    """
    m = get_model(structure.model)
    if not isinstance(m, MatModel):
        raise UnsupportedInModel("environment checks run over the dense model")

    if axiom in ("Env.1a", "Env.1b"):
        u_expr = Base(int(rng.integers(1, 4)))
        v_expr = Base(int(rng.integers(1, 4)))
        unit_glue = structure.functor(structural(m, "u_par_l", [BOT]))
        pair = kraus_par(structure.discard(u_expr), structure.discard(v_expr))
        if axiom == "Env.1a":
            # discarding a tensor = tensor of discards, glued by the unit
            lhs = kraus_compose(kraus_compose(
                structure.functor(structural(m, "mx", [u_expr, v_expr])),
                pair), unit_glue)
            rhs = kraus_compose(
                structure.functor(
                    structural(m, "m_tensor", [u_expr, v_expr])),
                structure.discard(Tensor(u_expr, v_expr)))
        else:
            lhs = kraus_compose(kraus_compose(
                structure.functor(structural(m, "n_par", [u_expr, v_expr])),
                pair), unit_glue)
            rhs = structure.discard(Par(u_expr, v_expr))
        return (channel_deviation(lhs, rhs),
                {"u": u_expr.label, "v": v_expr.label})

    if axiom == "Env.2":
        # the discard equation holds iff the representatives are equivalent
        k1 = random_kraus(rng)
        if rng.random() < 0.5:
            k2 = equivalent_variant(rng, k1)
            expected = True
        else:
            k2 = random_kraus(rng, _model_dim(m, k1.dom),
                              _model_dim(m, k1.cod))
            expected = equiv_decide(k1, k2, tol)
        sides_equal = equiv_decide(env_factor(structure, k1),
                                   env_factor(structure, k2), tol)
        return (0.0 if sides_equal == expected else 1.0,
                {"expected": expected})

    if axiom == "Env.3":
        # purification: every channel factors as a pure map then discard
        k = random_kraus(rng)
        rebuilt = env_factor(structure, purify(to_choi(k)))
        return channel_deviation(rebuilt, k), None

    raise UnsupportedInModel(f"unknown environment axiom {axiom!r}")


def env_check(structure: EnvStructure, trials: int = 20,
              seed: Optional[int] = None, rng=None, tol: float = 1e-9):
    """Randomised verification of all environment axioms.

    Returns one LawCheckReport per axiom; zero trials pass vacuously.
    """
    from .laws import LawCheckReport

    if rng is None:
        rng = np.random.default_rng(seed if seed is not None else 0)
    reports = []
    for axiom in ENV_AXIOMS:
        worst, witness = 0.0, None
        for _ in range(max(0, trials)):
            dev, info = env_axiom_trial(structure, axiom, rng, tol)
            if dev > worst:
                worst, witness = dev, (info if dev > tol else None)
        reports.append(LawCheckReport(
            law=axiom, model=structure.model, trials=trials,
            max_abs_deviation=worst, passed=worst <= tol,
            witness=witness, seed=seed, tol=tol))
    return reports


def _model_dim(m: Model, expr: ObjectExpr) -> int:
    return m.interpret(expr)


def initiality_probe(src: EnvStructure, tgt: EnvStructure, samples: int = 50,
                     seed: Optional[int] = None, rng=None,
                     tol: float = 1e-9) -> dict:
    """Spot-check the comparison functor between two environment
    presentations on sampled channels.  This samples equations; it proves
    nothing.
    """
    if rng is None:
        rng = np.random.default_rng(seed if seed is not None else 0)
    m = get_model(src.model)

    def transport(k: KrausMorphism) -> KrausMorphism:
        return env_factor(tgt, purify(to_choi(k)))

    checks = {"well_defined": 0, "functorial": 0, "identity": 0,
              "discard": 0}
    failures = []
    for i in range(max(0, samples)):
        k1 = random_kraus(rng)
        k1_alt = equivalent_variant(rng, k1)
        if equiv_decide(transport(k1), transport(k1_alt), 1e-7):
            checks["well_defined"] += 1
        else:
            failures.append({"check": "well_defined", "sample": i})

        k2 = random_kraus(rng, _model_dim(m, k1.cod), None)
        lhs = transport(kraus_compose(k1, k2))
        rhs = kraus_compose(transport(k1), transport(k2))
        if equiv_decide(lhs, rhs, 1e-7):
            checks["functorial"] += 1
        else:
            failures.append({"check": "functorial", "sample": i})

        a = Base(int(rng.integers(1, 4)))
        if equiv_decide(transport(kraus_identity(m, a)),
                        kraus_identity(m, a), 1e-7):
            checks["identity"] += 1
        else:
            failures.append({"check": "identity", "sample": i})

        u = Base(int(rng.integers(1, 4)))
        if equiv_decide(transport(src.discard(u)), tgt.discard(u), 1e-7):
            checks["discard"] += 1
        else:
            failures.append({"check": "discard", "sample": i})

    return {"samples": samples, "checks": checks,
            "consistent": not failures, "failures": failures[:5],
            "seed": seed, "tol": tol}
