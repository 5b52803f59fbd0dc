"""Neron-Severi lattice model: classes, intersection pairing, dual graphs.

A SurfaceModel is pure lattice data: an integer intersection form of
signature (1, rho-1), a list of classes declared to be irreducible curves,
and one class asserted ample.  Everything downstream is relative to these
declarations.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import InputError
from .qext import QExt, as_exact

inertia = linalg.inertia  # exact Sylvester inertia of a symmetric matrix


def _coord(x):
    if isinstance(x, QExt):
        return as_exact(x)
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError(f"coordinate {x!r} is not exact")
    return Fraction(x)


@dataclass(frozen=True)
class DivisorClass:
    """A class in NS(S) with exact coordinates (rational, or in Q(sqrt(d)))."""

    coords: tuple

    def __init__(self, coords):
        object.__setattr__(self, "coords", tuple(_coord(x) for x in coords))

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __add__(self, other):
        other = as_divisor(other, len(self))
        return DivisorClass(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        other = as_divisor(other, len(self))
        return DivisorClass(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return DivisorClass(-a for a in self.coords)

    def scale(self, k):
        return DivisorClass(k * a for a in self.coords)

    def __rmul__(self, k):
        return self.scale(k)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coords)


def as_divisor(v, rank: int | None = None) -> DivisorClass:
    d = v if isinstance(v, DivisorClass) else DivisorClass(v)
    if rank is not None and len(d) != rank:
        raise InputError(f"class has {len(d)} coordinates, expected {rank}")
    return d


@dataclass(frozen=True)
class CurveRecord:
    label: str
    cls: tuple[int, ...]
    declared_irreducible: bool = True


@dataclass(frozen=True)
class SurfaceModel:
    rank: int
    gram: tuple[tuple[int, ...], ...]
    curves: tuple[CurveRecord, ...]
    ample_witness: tuple[Fraction, ...]

    def __init__(self, rank, gram, curves, ample_witness):
        if not isinstance(rank, int) or rank < 1:
            raise InputError("rank must be a positive integer")
        g = tuple(tuple(row) for row in gram)
        if len(g) != rank or any(len(row) != rank for row in g):
            raise InputError("intersection matrix must be rank x rank")
        for row in g:
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise InputError("intersection matrix entries must be integers")
        sig = linalg.inertia([list(r) for r in g])
        if sig != (1, rank - 1, 0):
            raise InputError(
                f"intersection form has inertia {sig}, expected (1, {rank - 1}, 0)"
            )
        recs = []
        seen = set()
        for c in curves:
            if not isinstance(c, CurveRecord):
                c = CurveRecord(str(c[0]), tuple(int(x) for x in c[1]))
            if c.label in seen:
                raise InputError(f"duplicate curve label {c.label!r}")
            seen.add(c.label)
            if len(c.cls) != rank:
                raise InputError(f"curve {c.label!r} has a class of wrong length")
            if all(x == 0 for x in c.cls):
                raise InputError(f"curve {c.label!r} has zero class")
            if any(not isinstance(x, int) or isinstance(x, bool) for x in c.cls):
                raise InputError(f"curve {c.label!r} must have an integer class")
            recs.append(c)
        witness = tuple(Fraction(x) for x in ample_witness)
        if len(witness) != rank:
            raise InputError("ample witness has wrong length")
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "gram", g)
        object.__setattr__(self, "curves", tuple(recs))
        object.__setattr__(self, "ample_witness", witness)
        w = DivisorClass(witness)
        if pair(self, w, w) <= 0:
            raise InputError("ample witness has nonpositive self-intersection")
        for c in recs:
            if pair(self, w, DivisorClass(c.cls)) <= 0:
                raise InputError(
                    f"ample witness does not pair positively with curve {c.label!r}"
                )

    # -- lookups -----------------------------------------------------------

    def labels(self) -> tuple[str, ...]:
        return tuple(c.label for c in self.curves)

    def curve(self, label: str) -> CurveRecord:
        for c in self.curves:
            if c.label == label:
                return c
        raise InputError(f"unknown curve label {label!r}")

    def class_of(self, label: str) -> DivisorClass:
        return DivisorClass(self.curve(label).cls)

    def declaration_index(self, label: str) -> int:
        for i, c in enumerate(self.curves):
            if c.label == label:
                return i
        raise InputError(f"unknown curve label {label!r}")

    def witness_class(self) -> DivisorClass:
        return DivisorClass(self.ample_witness)


def pair(model: SurfaceModel, u, v):
    """Intersection product u.v through the model's bilinear form."""
    u = as_divisor(u, model.rank)
    v = as_divisor(v, model.rank)
    total = Fraction(0)
    for i, ui in enumerate(u.coords):
        if ui == 0:
            continue
        row = model.gram[i]
        acc = Fraction(0)
        for j, vj in enumerate(v.coords):
            if vj != 0 and row[j] != 0:
                acc = acc + row[j] * vj
        total = total + ui * acc
    return as_exact(total) if isinstance(total, QExt) else total


def gram_matrix(model: SurfaceModel, labels) -> list[list[Fraction]]:
    classes = [model.class_of(l) for l in labels]
    return [[pair(model, a, b) for b in classes] for a in classes]


def is_negative_definite(model: SurfaceModel, labels) -> bool:
    """True iff the Gram matrix of the listed curves is negative definite."""
    labels = list(labels)
    if not labels:
        return True
    sig = linalg.inertia(gram_matrix(model, labels))
    return sig == (0, len(labels), 0)


def dual_graph_components(model: SurfaceModel, labels) -> list[list[str]]:
    """Connected components of the positivity graph on the listed curves.

    Edge between two curves iff their pairing is > 0.  Components keep the
    model's declaration order, and are sorted by their first member.
    """
    order = sorted(set(labels), key=model.declaration_index)
    if len(order) != len(list(labels)):
        raise InputError("duplicate labels in subset")
    idx = {l: i for i, l in enumerate(order)}
    parent = list(range(len(order)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, a in enumerate(order):
        for b in order[i + 1 :]:
            if pair(model, model.class_of(a), model.class_of(b)) > 0:
                ra, rb = find(idx[a]), find(idx[b])
                if ra != rb:
                    parent[rb] = ra
    groups: dict[int, list[str]] = {}
    for l in order:
        groups.setdefault(find(idx[l]), []).append(l)
    return sorted(groups.values(), key=lambda g: model.declaration_index(g[0]))


def is_model_ample(model: SurfaceModel, cls) -> bool:
    """Ampleness certificate relative to declared data: positive square and
    positive pairing with every declared curve."""
    c = as_divisor(cls, model.rank)
    if pair(model, c, c) <= 0:
        return False
    return all(
        pair(model, c, DivisorClass(rec.cls)) > 0 for rec in model.curves
    )
