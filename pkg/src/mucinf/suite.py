"""Executable harness over the full law catalog plus channel properties.

Laws and properties are enumerable entries; a suite run produces one report
per (entry, model) pair, deterministically for a given config: per-entry
random streams are derived from the config seed and a stable digest of the
entry id, so filtering does not shift anyone's stream.
"""

from __future__ import annotations

import fnmatch
import zlib
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from . import cpinf
from .errors import MucinfError, UnknownLaw
from .laws import LawCheckReport, catalog, check_law
from .matc import random_unitary
from .morphisms import Model, Morphism, dagger, get_model, identity
from .objects import Base, Par, Tensor
from .structural import structural


@dataclass(frozen=True)
class SuiteConfig:
    models: Tuple[str, ...] = ("mat", "cplane", "fmat")
    law_filter: str = "*"
    trials: int = 100
    seed: int = 0
    tol: float = 1e-9

    def __post_init__(self):
        if self.trials < 0:
            raise ValueError("trials must be >= 0")
        if not self.tol > 0:
            raise ValueError("tolerance must be positive")


TrialFn = Callable[[Model, np.random.Generator, float],
                   Tuple[float, Optional[dict]]]


@dataclass(frozen=True)
class PropertyEntry:
    entry_id: str
    anchor: str
    models: Tuple[str, ...]
    trial: TrialFn


_PROPERTIES: Dict[str, PropertyEntry] = {}


def _prop(entry_id: str, anchor: str, models=("mat",)):
    def deco(fn):
        _PROPERTIES[entry_id] = PropertyEntry(entry_id, anchor,
                                              tuple(models), fn)
        return fn
    return deco


def _rand_kraus(model: Model, rng) -> cpinf.KrausMorphism:
    if model.name.startswith("cplane"):
        return cpinf.random_cplane_kraus(rng)
    return cpinf.random_kraus(rng, model=model.name)


def _rand_kraus_from(model: Model, rng, src: cpinf.KrausMorphism):
    """A random representative whose domain is ``src``'s codomain."""
    if model.name.startswith("cplane"):
        k = cpinf.random_cplane_kraus(rng)
        # rebase so the chain composes: scale the new codomain
        cod = model.interpret(src.cod)
        r = k.ancilla.label
        body = Morphism(model.name, src.cod,
                        Par(Base(r), Base(cod / r)), None)
        return cpinf.kraus_new(body, Base(r))
    return cpinf.random_kraus(rng, model.interpret(src.cod),
                              model=model.name)


# ---------------------------------------------------------------------------
# channel category laws


@_prop("CP-CAT-ASSOC", "(k1 k2) k3 ~ k1 (k2 k3)", ("mat", "cplane"))
def _(model, rng, tol):
    k1 = _rand_kraus(model, rng)
    k2 = _rand_kraus_from(model, rng, k1)
    k3 = _rand_kraus_from(model, rng, k2)
    lhs = cpinf.kraus_compose(cpinf.kraus_compose(k1, k2), k3)
    rhs = cpinf.kraus_compose(k1, cpinf.kraus_compose(k2, k3))
    return cpinf.channel_deviation(lhs, rhs), None


@_prop("CP-CAT-IDENT", "1 k ~ k ~ k 1", ("mat", "cplane"))
def _(model, rng, tol):
    k = _rand_kraus(model, rng)
    left = cpinf.kraus_compose(cpinf.kraus_identity(model, k.dom), k)
    right = cpinf.kraus_compose(k, cpinf.kraus_identity(model, k.cod))
    return max(cpinf.channel_deviation(left, k),
               cpinf.channel_deviation(right, k)), None


@_prop("CP-WELLDEF", "k1 ~ k1' implies k0 k1 ~ k0 k1' and k1 k2 ~ k1' k2")
def _(model, rng, tol):
    k1 = cpinf.random_kraus(rng, model=model.name)
    k1_alt = cpinf.equivalent_variant(rng, k1)
    k2 = cpinf.random_kraus(rng, model.interpret(k1.cod), model=model.name)
    k0 = cpinf.random_kraus(rng, None, model.interpret(k1.dom),
                            model=model.name)
    post = cpinf.channel_deviation(cpinf.kraus_compose(k1, k2),
                                   cpinf.kraus_compose(k1_alt, k2))
    pre = cpinf.channel_deviation(cpinf.kraus_compose(k0, k1),
                                  cpinf.kraus_compose(k0, k1_alt))
    return max(post, pre), None


@_prop("CP-EQUIV-ORACLE",
       "canonical-form decision agrees with the test-map oracle")
def _(model, rng, tol):
    if rng.random() < 0.5:
        k1 = cpinf.random_kraus(rng, model=model.name)
        k2 = cpinf.equivalent_variant(rng, k1)
        if not cpinf.equiv_decide(k1, k2, tol):
            return 1.0, {"side": "decide on an equivalent pair"}
        oracle = cpinf.equiv_testmap_oracle(k1, k2, trials=20, rng=rng,
                                            tol=1e-7)
        if not oracle["consistent"]:
            return 1.0, {"side": "oracle witness on an equivalent pair",
                         "witness": oracle["witness"]}
    else:
        k1, k2 = cpinf.distinct_pair(rng)
        k1 = cpinf.KrausMorphism(model.name, k1.dom, k1.cod, k1.ancilla,
                                 Morphism(model.name, k1.body.dom,
                                          k1.body.cod, k1.body.payload))
        k2 = cpinf.KrausMorphism(model.name, k2.dom, k2.cod, k2.ancilla,
                                 Morphism(model.name, k2.body.dom,
                                          k2.body.cod, k2.body.payload))
        if cpinf.equiv_decide(k1, k2, tol):
            return 1.0, {"side": "decide on a distinct pair"}
        oracle = cpinf.equiv_testmap_oracle(k1, k2, trials=200, rng=rng)
        if oracle["consistent"]:
            return 1.0, {"side": "oracle blind on a distinct pair"}
    return 0.0, None


@_prop("CP-TENSOR-ACTION", "(k1 x k2)(rho1 x rho2) = k1(rho1) x k2(rho2)")
def _(model, rng, tol):
    k1 = cpinf.random_kraus(rng, model=model.name)
    k2 = cpinf.random_kraus(rng, model=model.name)
    r1 = cpinf.random_density(rng, model.interpret(k1.dom))
    r2 = cpinf.random_density(rng, model.interpret(k2.dom))
    joint = cpinf.channel_action(cpinf.kraus_tensor(k1, k2), np.kron(r1, r2))
    split = np.kron(cpinf.channel_action(k1, r1),
                    cpinf.channel_action(k2, r2))
    return float(np.max(np.abs(joint - split), initial=0.0)), None


@_prop("CP-PAR-ACTION", "(k1 + k2)(rho1 x rho2) = k1(rho1) x k2(rho2)")
def _(model, rng, tol):
    k1 = cpinf.random_kraus(rng, model=model.name)
    k2 = cpinf.random_kraus(rng, model=model.name)
    r1 = cpinf.random_density(rng, model.interpret(k1.dom))
    r2 = cpinf.random_density(rng, model.interpret(k2.dom))
    joint = cpinf.channel_action(cpinf.kraus_par(k1, k2), np.kron(r1, r2))
    split = np.kron(cpinf.channel_action(k1, r1),
                    cpinf.channel_action(k2, r2))
    return float(np.max(np.abs(joint - split), initial=0.0)), None


@_prop("CP-TENSOR-PAR-AGREE", "both channel tensors coincide (compact model)")
def _(model, rng, tol):
    k1 = cpinf.random_kraus(rng, model=model.name)
    k2 = cpinf.random_kraus(rng, model=model.name)
    return cpinf.channel_deviation(cpinf.kraus_tensor(k1, k2),
                                   cpinf.kraus_par(k1, k2)), None


@_prop("CP-BIFUNCTOR", "(k1 x k2)(k3 x k4) ~ (k1 k3) x (k2 k4)")
def _(model, rng, tol):
    k1 = cpinf.random_kraus(rng, model=model.name)
    k2 = cpinf.random_kraus(rng, model=model.name)
    k3 = cpinf.random_kraus(rng, model.interpret(k1.cod), model=model.name)
    k4 = cpinf.random_kraus(rng, model.interpret(k2.cod), model=model.name)
    lhs = cpinf.kraus_compose(cpinf.kraus_tensor(k1, k2),
                              cpinf.kraus_tensor(k3, k4))
    rhs = cpinf.kraus_tensor(cpinf.kraus_compose(k1, k3),
                             cpinf.kraus_compose(k2, k4))
    return cpinf.channel_deviation(lhs, rhs), None


@_prop("CP-MIX-INV", "Q(mx) is invertible up to ~", ("mat", "cplane"))
def _(model, rng, tol):
    a = model.random_object(rng, unitary=True)
    b = model.random_object(rng, unitary=True)
    fwd = cpinf.functor_Q(structural(model, "mx", [a, b]))
    bwd = cpinf.functor_Q(structural(model, "mx_inv", [a, b]))
    dev1 = cpinf.channel_deviation(
        cpinf.kraus_compose(fwd, bwd),
        cpinf.kraus_identity(model, Tensor(a, b)))
    dev2 = cpinf.channel_deviation(
        cpinf.kraus_compose(bwd, fwd),
        cpinf.kraus_identity(model, Par(a, b)))
    return max(dev1, dev2), None


@_prop("CP-DAG-INV", "(k dagger) dagger ~ k")
def _(model, rng, tol):
    k = cpinf.random_kraus(rng, model=model.name)
    return cpinf.channel_deviation(
        cpinf.kraus_dagger(cpinf.kraus_dagger(k)), k), None


@_prop("CP-DAG-CONTRA", "(k1 k2) dagger ~ k2 dagger k1 dagger")
def _(model, rng, tol):
    k1 = cpinf.random_kraus(rng, model=model.name)
    k2 = cpinf.random_kraus(rng, model.interpret(k1.cod), model=model.name)
    lhs = cpinf.kraus_dagger(cpinf.kraus_compose(k1, k2))
    rhs = cpinf.kraus_compose(cpinf.kraus_dagger(k2), cpinf.kraus_dagger(k1))
    return cpinf.channel_deviation(lhs, rhs), None


@_prop("CP-DAG-CHOI",
       "Choi of the adjoint is the wire-swapped conjugate Choi")
def _(model, rng, tol):
    k = cpinf.random_kraus(rng, model=model.name)
    a = model.interpret(k.dom)
    b = model.interpret(k.cod)
    direct = cpinf.to_choi(cpinf.kraus_dagger(k)).matrix
    c = cpinf.to_choi(k).matrix
    swapped = np.zeros((a * b, a * b), dtype=complex)
    for out1 in range(a):          # adjoint output index runs over dom
        for in1 in range(b):
            for out2 in range(a):
                for in2 in range(b):
                    swapped[out1 * b + in1, out2 * b + in2] = np.conj(
                        c[in1 * a + out1, in2 * a + out2])
    return float(np.max(np.abs(direct - swapped), initial=0.0)), None


@_prop("CP-Q-FUNCTOR", "Q(f g) ~ Q(f) Q(g) and Q(1) ~ 1", ("mat", "cplane"))
def _(model, rng, tol):
    if model.name.startswith("cplane"):
        a = model.random_object(rng)
        f = model.random_morphism(rng, a, a)
        g = model.random_morphism(rng, a, a)
    else:
        a = Base(int(rng.integers(1, 4)))
        b = Base(int(rng.integers(1, 4)))
        c = Base(int(rng.integers(1, 4)))
        f = model.random_morphism(rng, a, b)
        g = model.random_morphism(rng, b, c)
    comp = cpinf.channel_deviation(
        cpinf.functor_Q(f >> g),
        cpinf.kraus_compose(cpinf.functor_Q(f), cpinf.functor_Q(g)))
    ident = cpinf.channel_deviation(
        cpinf.functor_Q(identity(model, f.dom)),
        cpinf.kraus_identity(model, f.dom))
    return max(comp, ident), None


@_prop("CP-N-DAGGER", "N(f dagger) ~ N(f) dagger")
def _(model, rng, tol):
    a = Base(int(rng.integers(1, 4)))
    b = Base(int(rng.integers(1, 4)))
    f = model.random_morphism(rng, a, b)
    lhs = cpinf.functor_N(dagger(f))
    rhs = cpinf.kraus_dagger(cpinf.functor_N(f))
    return cpinf.channel_deviation(lhs, rhs), None


@_prop("CP-Q-PHASE", "Q identifies global phases: Q(u) ~ Q(e^{it} u)")
def _(model, rng, tol):
    d = int(rng.integers(1, 4))
    u = random_unitary(rng, d)
    theta = float(rng.uniform(0, 2 * np.pi))
    f = Morphism(model.name, Base(d), Base(d), u)
    g = Morphism(model.name, Base(d), Base(d), np.exp(1j * theta) * u)
    return cpinf.channel_deviation(cpinf.functor_Q(f),
                                   cpinf.functor_Q(g)), None


@_prop("CP-PURE-ACTION",
       "sum over Kraus blocks reproduces the channel action")
def _(model, rng, tol):
    k = cpinf.random_kraus(rng, model=model.name)
    rho = cpinf.random_density(rng, model.interpret(k.dom))
    b = model.interpret(k.cod)
    total = np.zeros((b, b), dtype=complex)
    for blk in cpinf.pure_decomposition(k):
        total += blk @ rho @ blk.conj().T
    acted = cpinf.channel_action(k, rho)
    return float(np.max(np.abs(total - acted), initial=0.0)), None


@_prop("CP-PURIFY-ROUNDTRIP", "purify(choi(k)) ~ k")
def _(model, rng, tol):
    k = cpinf.random_kraus(rng, model=model.name)
    return cpinf.channel_deviation(cpinf.purify(cpinf.to_choi(k)), k), None


def _env_entry(axiom):
    def trial(model, rng, tol):
        structure = cpinf.canonical_env(model.name)
        return cpinf.env_axiom_trial(structure, axiom, rng, tol)
    return trial


for _axiom, _text in (
        ("Env.1a", "discard of a tensor = glued tensor of discards"),
        ("Env.1b", "discard of a par = glued par of discards"),
        ("Env.2", "the discard equation decides equivalence"),
        ("Env.3", "every channel purifies through the discard")):
    _PROPERTIES[_axiom] = PropertyEntry(_axiom, _text, ("mat",),
                                        _env_entry(_axiom))


# ---------------------------------------------------------------------------
# finiteness-space properties


def _random_family(rng, labels):
    from .fmat import explicit_family
    subsets = []
    for _ in range(int(rng.integers(0, 4))):
        mask = rng.random(len(labels)) < 0.5
        subsets.append([x for x, keep in zip(labels, mask) if keep])
    return explicit_family(subsets)


def _masked_dense(rng, rows, cols):
    dense = rng.random((rows, cols)) + 1j * rng.random((rows, cols))
    dense[rng.random((rows, cols)) < 0.4] = 0.0
    return dense


def _int_dense(rng, rows, cols):
    re = rng.integers(-3, 4, size=(rows, cols))
    im = rng.integers(-3, 4, size=(rows, cols))
    return re.astype(complex) + 1j * im.astype(float)


@_prop("FMAT-PERP-TRIPLE", "perp perp perp = perp", ("fmat",))
def _(model, rng, tol):
    from .fmat import FIN, FiniteIndex, OMEGA, TagFamily, perp
    labels = tuple(range(int(rng.integers(1, 6))))
    idx = FiniteIndex(labels)
    fam = _random_family(rng, labels)
    once = perp(fam, idx)
    thrice = perp(perp(once, idx), idx)
    if thrice != once:
        return 1.0, {"labels": labels}
    tag = TagFamily(FIN)
    if perp(perp(perp(tag, OMEGA), OMEGA), OMEGA) != perp(tag, OMEGA):
        return 1.0, {"case": "omega"}
    return 0.0, None


@_prop("FMAT-PERP-ANTITONE", "F1 <= F2 implies perp(F2) <= perp(F1)",
       ("fmat",))
def _(model, rng, tol):
    from .fmat import (ALL, FIN, FiniteIndex, OMEGA, TagFamily,
                       explicit_family, family_subset, perp)
    labels = tuple(range(int(rng.integers(1, 6))))
    idx = FiniteIndex(labels)
    f1 = _random_family(rng, labels)
    extra = _random_family(rng, labels)
    f2 = explicit_family(list(f1.sets) + list(extra.sets))
    ok = family_subset(perp(f2, idx), perp(f1, idx))
    ok = ok and family_subset(perp(TagFamily(ALL), OMEGA),
                              perp(TagFamily(FIN), OMEGA))
    return (0.0 if ok else 1.0), None


@_prop("FMAT-SPACE", "perp pairs validate; non-pairs are rejected", ("fmat",))
def _(model, rng, tol):
    from .fmat import (ALL, FIN, FiniteIndex, OMEGA, TagFamily,
                       check_finiteness_space, explicit_family, power_family)
    n = int(rng.integers(2, 5))
    idx = FiniteIndex(tuple(range(n)))
    power = power_family(idx)
    good = check_finiteness_space(idx, power, power)
    good = good and check_finiteness_space(OMEGA, TagFamily(FIN),
                                           TagFamily(ALL))
    small = explicit_family([[0]])
    bad = check_finiteness_space(idx, small, power)
    return (0.0 if good and not bad else 1.0), None


@_prop("FMAT-RELATION-TYPING",
       "supports of included matrices are finiteness relations", ("fmat",))
def _(model, rng, tol):
    from .fmat import check_finiteness_relation
    rows, cols = int(rng.integers(1, 5)), int(rng.integers(1, 5))
    f = model.include(Morphism("mat", Base(cols), Base(rows),
                               _masked_dense(rng, rows, cols)))
    ok = check_finiteness_relation(f.payload.support(), f.payload.src,
                                   f.payload.tgt)
    return (0.0 if ok else 1.0), None


@_prop("FMAT-COMPOSE-ASSOC",
       "sparse composition associates exactly", ("fmat",))
def _(model, rng, tol):
    from .fmat import fmat_compose
    dims = [int(rng.integers(1, 5)) for _ in range(4)]
    mats = [model.include(Morphism("mat", Base(dims[i]), Base(dims[i + 1]),
                                   _int_dense(rng, dims[i + 1], dims[i])))
            for i in range(3)]
    lhs = fmat_compose(fmat_compose(mats[0].payload, mats[1].payload),
                       mats[2].payload)
    rhs = fmat_compose(mats[0].payload,
                       fmat_compose(mats[1].payload, mats[2].payload))
    la, ra = lhs.as_dict(), rhs.as_dict()
    keys = set(la) | set(ra)
    dev = max((abs(la.get(k, 0j) - ra.get(k, 0j)) for k in keys),
              default=0.0)
    # integer entries make every float operation exact
    return (0.0 if dev == 0.0 and lhs.src == rhs.src and lhs.tgt == rhs.tgt
            else max(dev, 1.0)), None


@_prop("FMAT-DAGGER-INV", "dagger of dagger is the identity on matrices",
       ("fmat",))
def _(model, rng, tol):
    from .fmat import fmat_dagger
    rows, cols = int(rng.integers(1, 5)), int(rng.integers(1, 5))
    f = model.include(Morphism("mat", Base(cols), Base(rows),
                               _masked_dense(rng, rows, cols)))
    back = fmat_dagger(fmat_dagger(f.payload))
    same = (back.src == f.payload.src and back.tgt == f.payload.tgt
            and back.entries == f.payload.entries)
    return (0.0 if same else 1.0), None


@_prop("FMAT-INCLUDE-FUNCTOR",
       "inclusion preserves composition and dagger on the nose", ("fmat",))
def _(model, rng, tol):
    donor = model.unitary_donor
    a, b, c = (Base(int(rng.integers(1, 4))) for _ in range(3))
    f = donor.random_morphism(rng, a, b)
    g = donor.random_morphism(rng, b, c)
    comp = model.deviation(model.include(f >> g),
                           model.include(f) >> model.include(g))
    dag = model.deviation(model.include(dagger(f)), dagger(model.include(f)))
    return max(comp, dag), None


# ---------------------------------------------------------------------------
# running the suite


def _entry_rng(seed: int, entry_id: str, model_name: str):
    digest = zlib.crc32(f"{entry_id}::{model_name}".encode())
    return np.random.default_rng(np.random.SeedSequence([seed, digest]))


def _base_name(model_name: str) -> str:
    return model_name.split("!", 1)[0]


def list_laws() -> List[dict]:
    """Machine-readable catalog: coherence laws plus property entries."""
    out = []
    for law in sorted(catalog().values(), key=lambda l: l.law_id):
        out.append({"id": law.law_id, "anchor": law.anchor,
                    "arity": law.arity, "models": list(law.models),
                    "kind": "coherence",
                    **({"note": law.note} if law.note else {})})
    for entry in sorted(_PROPERTIES.values(), key=lambda e: e.entry_id):
        out.append({"id": entry.entry_id, "anchor": entry.anchor,
                    "arity": 0, "models": list(entry.models),
                    "kind": "property"})
    return out


def _run_catalog_entry(law, model: Model, cfg: SuiteConfig) -> LawCheckReport:
    rng = _entry_rng(cfg.seed, law.law_id, model.name)
    worst, witness = 0.0, None
    for trial in range(cfg.trials):
        objects = [model.random_object(rng, unitary=law.needs_unitary)
                   for _ in range(law.arity)]
        rep = check_law(law.law_id, model, objects, rng=rng, tol=cfg.tol)
        if rep.max_abs_deviation > worst:
            worst = rep.max_abs_deviation
            if not rep.passed:
                witness = dict(rep.witness or {})
                witness["trial"] = trial
    return LawCheckReport(law=law.law_id, model=model.name, trials=cfg.trials,
                          max_abs_deviation=worst, passed=worst <= cfg.tol,
                          witness=witness, seed=cfg.seed, tol=cfg.tol)


def _run_property_entry(entry: PropertyEntry, model: Model,
                        cfg: SuiteConfig) -> LawCheckReport:
    rng = _entry_rng(cfg.seed, entry.entry_id, model.name)
    worst, witness = 0.0, None
    for trial in range(cfg.trials):
        try:
            dev, info = entry.trial(model, rng, cfg.tol)
        except MucinfError as exc:
            dev = float("inf")
            info = {"error": f"{type(exc).__name__}: {exc}"}
        if dev > worst:
            worst = dev
            if dev > cfg.tol:
                witness = dict(info or {})
                witness["trial"] = trial
    return LawCheckReport(law=entry.entry_id, model=model.name,
                          trials=cfg.trials, max_abs_deviation=worst,
                          passed=worst <= cfg.tol, witness=witness,
                          seed=cfg.seed, tol=cfg.tol)


def run_suite(cfg: SuiteConfig) -> List[LawCheckReport]:
    """One report per (entry, model) pair, deterministic for a given config."""
    reports = []
    known = set()
    for law in catalog().values():
        known.add(law.law_id)
        for model_name in cfg.models:
            if _base_name(model_name) not in law.models:
                continue
            if not fnmatch.fnmatch(law.law_id, cfg.law_filter):
                continue
            reports.append(_run_catalog_entry(law, get_model(model_name),
                                              cfg))
    for entry in _PROPERTIES.values():
        known.add(entry.entry_id)
        for model_name in cfg.models:
            if _base_name(model_name) not in entry.models:
                continue
            if not fnmatch.fnmatch(entry.entry_id, cfg.law_filter):
                continue
            reports.append(_run_property_entry(entry, get_model(model_name),
                                               cfg))
    if cfg.law_filter != "*" and not any(
            fnmatch.fnmatch(name, cfg.law_filter) for name in known):
        raise UnknownLaw(f"filter {cfg.law_filter!r} matches no law")
    reports.sort(key=lambda r: (r.law, r.model))
    return reports
