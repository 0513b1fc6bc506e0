"""The fully concrete model of finite complex matrices.

Objects are dimensions, both monoidal products are the Kronecker product,
the dagger is the conjugate transpose, and every structural map is an
explicit identity or permutation matrix.  Linear duals are witnessed by
Bell-style cups and caps.

Conventions
-----------
* Column convention: a morphism ``A -> B`` is stored as a ``dim(B) x dim(A)``
  matrix, so the diagram-order composite ``f ; g`` is ``payload(g) @
  payload(f)``.
* The interpretation is strict monoidal: both bracketings of a Kronecker
  product are literally the same array, so associators, unitors, mix and
  laxors are identity matrices of the right size.
* The dagger is stationary on objects (``dim(A^) = dim(A)``); only the
  syntax keeps track of daggers.
* Channel bodies put the ancilla wire first: a Kraus body ``A -> U * B`` is
  a ``(u*b) x a`` matrix whose block rows are the Kraus operators.
"""

from __future__ import annotations

import numpy as np

from .errors import (DimensionOverflow, NoConvergence, NotHermitian,
                     ShapeMismatch)
from .morphisms import Model, Morphism, register_model
from .objects import (Base, Dagger, Dual, ObjectExpr, Par, ParUnit, Tensor,
                      TensorUnit)

DIM_LIMIT = 2 ** 16  # desk-scale guard on matrix dimensions


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=complex)
    a.flags.writeable = False
    return a


def mat_identity(dim: int) -> np.ndarray:
    if dim > DIM_LIMIT:
        raise DimensionOverflow(f"identity of dimension {dim} exceeds "
                                f"{DIM_LIMIT}")
    return _freeze(np.eye(dim, dtype=complex))


def mat_kron(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Kronecker product; realises both monoidal products of the model."""
    rows = f.shape[0] * g.shape[0]
    cols = f.shape[1] * g.shape[1]
    if rows > DIM_LIMIT or cols > DIM_LIMIT:
        raise DimensionOverflow(
            f"kron result {rows}x{cols} exceeds dimension {DIM_LIMIT}")
    return _freeze(np.kron(f, g))


def mat_dagger(f: np.ndarray) -> np.ndarray:
    return _freeze(f.conj().T)


def commutation_perm(a: int, b: int) -> np.ndarray:
    """Permutation matrix P with ``P @ kron(x, y) = kron(y, x)``
    for x of dimension a and y of dimension b."""
    p = np.zeros((a * b, a * b), dtype=complex)
    for i in range(a):
        for j in range(b):
            p[j * a + i, i * b + j] = 1.0
    return _freeze(p)


def bell_unit(a: int) -> np.ndarray:
    """Cup eta: 1 -> a*a, the column sum of e_i (x) e_i."""
    v = np.zeros((a * a, 1), dtype=complex)
    for i in range(a):
        v[i * a + i, 0] = 1.0
    return _freeze(v)


def bell_counit(a: int) -> np.ndarray:
    """Cap eps: a*a -> 1, the transpose of the cup."""
    return _freeze(bell_unit(a).T)


def check_hermitian(h: np.ndarray, tol: float = 1e-9) -> None:
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ShapeMismatch(f"expected a square matrix, got {h.shape}")
    if np.max(np.abs(h - h.conj().T), initial=0.0) > tol:
        raise NotHermitian(f"matrix is not Hermitian within {tol}")


def apply_channel(body: np.ndarray, ancilla_dim: int,
                  density: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Act with the channel represented by a Kraus body on a density matrix.

    ``body`` is the ``(u*b) x a`` matrix of a Kraus map ``A -> U * B`` with
    the ancilla wire first; the result is the partial trace over U of
    ``body @ density @ body^``, i.e. the sum over the u Kraus blocks M_i of
    ``M_i @ density @ M_i^``.
    """
    density = np.asarray(density, dtype=complex)
    check_hermitian(density, tol)
    rows, a = body.shape
    if density.shape[0] != a:
        raise ShapeMismatch(
            f"density of dimension {density.shape[0]} under a channel with "
            f"input dimension {a}")
    if rows % ancilla_dim != 0:
        raise ShapeMismatch(
            f"body rows {rows} not divisible by ancilla dimension {ancilla_dim}")
    blocks = body.reshape(ancilla_dim, rows // ancilla_dim, a)
    return _freeze(np.einsum("ipa,aq,irq->pr", blocks, density, blocks.conj()))


def hermitian_eig(h: np.ndarray, threshold: float = 1e-12,
                  max_sweeps: int = 50):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(w, v)`` with eigenvalues ``w`` sorted descending and unitary
    ``v`` whose columns are the matching eigenvectors, so that
    ``h = v @ diag(w) @ v^`` up to the sweep threshold.
    """
    h = np.asarray(h, dtype=complex)
    check_hermitian(h)
    n = h.shape[0]
    a = h.copy()
    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.max(np.abs(h), initial=0.0)))
    for _ in range(max_sweeps):
        off = 0.0
        if n > 1:
            off = max(abs(a[p, q]) for p in range(n) for q in range(p + 1, n))
        if off <= threshold * scale:
            break
        for p in range(n):
            for q in range(p + 1, n):
                z = a[p, q]
                if abs(z) <= 1e-300:
                    continue
                alpha = z / abs(z)
                tau = (a[q, q].real - a[p, p].real) / (2.0 * abs(z))
                if tau == 0.0:
                    t = 1.0
                else:
                    t = np.sign(tau) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # columns, then rows, of the rotation in the (p, q) plane
                ap = a[:, p] * c - a[:, q] * s * np.conj(alpha)
                aq = a[:, p] * s * alpha + a[:, q] * c
                a[:, p], a[:, q] = ap, aq
                rp = a[p, :] * c - a[q, :] * s * alpha
                rq = a[p, :] * s * np.conj(alpha) + a[q, :] * c
                a[p, :], a[q, :] = rp, rq
                vp = v[:, p] * c - v[:, q] * s * np.conj(alpha)
                vq = v[:, p] * s * alpha + v[:, q] * c
                v[:, p], v[:, q] = vp, vq
    else:
        raise NoConvergence(f"Jacobi sweeps exhausted ({max_sweeps})")
    w = np.real(np.diag(a))
    order = np.argsort(-w)
    return w[order], _freeze(v[:, order])


# ---------------------------------------------------------------------------
# the model


class MatModel(Model):
    """Finite complex matrices as a law-suite model.

    ``mutations`` deliberately corrupts parts of the structure; it exists so
    the suite's sensitivity can be tested against broken fixtures and must
    stay empty for the real model.
    """

    def __init__(self, name: str = "mat", mutations=()):
        self.name = name
        self.mutations = frozenset(mutations)

    # interpretation ------------------------------------------------------
    def interpret(self, expr: ObjectExpr) -> int:
        if isinstance(expr, Base):
            dim = expr.label
            if not isinstance(dim, int) or dim < 1:
                raise ShapeMismatch(f"mat base object needs a positive "
                                    f"dimension, got {dim!r}")
            return dim
        if isinstance(expr, (Tensor, Par)):
            return self.interpret(expr.left) * self.interpret(expr.right)
        if isinstance(expr, (TensorUnit, ParUnit)):
            return 1
        if isinstance(expr, (Dagger, Dual)):
            return self.interpret(expr.inner)
        raise TypeError(f"not an object expression: {expr!r}")

    def same_object(self, first, second) -> bool:
        return first == second

    # payload algebra -------------------------------------------------------
    def identity_payload(self, expr: ObjectExpr) -> np.ndarray:
        return mat_identity(self.interpret(expr))

    def compose_payload(self, f: Morphism, g: Morphism) -> np.ndarray:
        return _freeze(g.payload @ f.payload)

    def tensor_payload(self, f: Morphism, g: Morphism) -> np.ndarray:
        return mat_kron(f.payload, g.payload)

    par_payload = tensor_payload

    def dagger_payload(self, f: Morphism) -> np.ndarray:
        if "transpose_only_dagger" in self.mutations:
            return _freeze(f.payload.T)
        return mat_dagger(f.payload)

    def structural_payload(self, name, args, dom, cod) -> np.ndarray:
        if name in ("c_tensor", "c_par"):
            p = commutation_perm(self.interpret(args[0]),
                                 self.interpret(args[1]))
            if "transpose_commutation" in self.mutations:
                p = _freeze(p.T)
            return p
        if name == "eta":
            return bell_unit(self.interpret(args[0]))
        if name == "eps":
            return bell_counit(self.interpret(args[0]))
        if name in ("m", "m_inv") and "scale_mix" in self.mutations:
            return _freeze(np.array([[2.0]], dtype=complex))
        if name == "lam_tensor" and "swap_laxor_tensor" in self.mutations:
            return commutation_perm(self.interpret(args[0]),
                                    self.interpret(args[1]))
        if name == "lam_tensor" and "skew_laxor_tensor" in self.mutations:
            return _freeze(float(self.interpret(args[0]))
                           * mat_identity(self.interpret(dom)))
        # everything else is an identity: the interpretation is strict and
        # the dagger is stationary on objects
        din, dout = self.interpret(dom), self.interpret(cod)
        if din != dout:
            raise ShapeMismatch(f"{name}: {din} != {dout}")
        return mat_identity(din)

    def deviation(self, f: Morphism, g: Morphism) -> float:
        return float(np.max(np.abs(f.payload - g.payload), initial=0.0))

    # sampling ----------------------------------------------------------------
    def random_object(self, rng, unitary: bool = False) -> ObjectExpr:
        def leaf():
            return Base(int(rng.integers(1, 4)))
        shape = rng.random()
        if shape < 0.75:
            return leaf()
        if shape < 0.85:
            return Tensor(leaf(), leaf())
        if shape < 0.95:
            return Par(leaf(), leaf())
        return Dagger(leaf())

    def random_morphism(self, rng, dom: ObjectExpr, cod: ObjectExpr) -> Morphism:
        rows, cols = self.interpret(cod), self.interpret(dom)
        payload = rng.random((rows, cols)) + 1j * rng.random((rows, cols))
        return Morphism(self.name, dom, cod, _freeze(payload))


def random_unitary(rng, dim: int) -> np.ndarray:
    """Haar-ish random unitary from the QR of a complex Gaussian matrix."""
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return _freeze(q * (np.diag(r) / np.abs(np.diag(r))))


MAT = MatModel()
register_model(MAT)
