"""Zariski decomposition relative to a declared candidate set of curves.

The decomposition D = P + N is computed by the standard fixed-point
iteration on the support: start from the curves D meets negatively, solve
the orthogonality system on that set, and keep enlarging by every candidate
the remainder still meets negatively.  The final set is the unique minimal
closed one, so enlarging simultaneously keeps the result deterministic
without affecting correctness.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .errors import InputError, ModelError
from .lattice import DivisorClass, SurfaceModel, as_divisor, gram_matrix, pair


@dataclass(frozen=True)
class ZariskiResult:
    """Certified decomposition: support, positive coefficients, nef remainder."""

    support: tuple[str, ...]
    coeffs: dict[str, Fraction] = field(compare=False)
    positive_part: DivisorClass = field(compare=False)

    def negative_part(self, model: SurfaceModel) -> DivisorClass:
        n = DivisorClass([0] * model.rank)
        for label, a in self.coeffs.items():
            n = n + model.class_of(label).scale(a)
        return n

    def coefficient(self, label: str) -> Fraction:
        return self.coeffs.get(label, Fraction(0))


def _solve_support(model, divisor, labels):
    """Coefficients a_i with (D - sum a_i C_i).C_j = 0 for every j in labels."""
    gram = gram_matrix(model, labels)
    rhs = [pair(model, divisor, model.class_of(l)) for l in labels]
    try:
        return linalg.solve(gram, rhs)
    except linalg.SingularSystem:
        raise ModelError(
            f"Gram matrix of {list(labels)} is singular; cannot solve"
        ) from None


def zariski_decompose(model: SurfaceModel, divisor, candidates) -> ZariskiResult:
    """Decompose `divisor` against the given candidate curves.

    Results mean "Zariski decomposition relative to the declared curves":
    the candidate list is trusted to contain every curve the true negative
    part could involve.
    """
    divisor = as_divisor(divisor, model.rank)
    cands = list(candidates)
    if len(set(cands)) != len(cands):
        raise InputError("candidate labels must be pairwise distinct")
    for l in cands:
        if not model.curve(l).declared_irreducible:
            raise InputError(f"candidate {l!r} is not declared irreducible")
    cands.sort(key=model.declaration_index)
    classes = {l: model.class_of(l) for l in cands}

    support = [l for l in cands if pair(model, divisor, classes[l]) < 0]
    coeffs: list[Fraction] = []
    while True:
        if support:
            sig = linalg.inertia(gram_matrix(model, support))
            if sig != (0, len(support), 0):
                raise ModelError(
                    "candidate set contains non-negative-definite support: "
                    f"{support} has inertia {sig}"
                )
            coeffs = _solve_support(model, divisor, support)
            for l, a in zip(support, coeffs):
                if a < 0:
                    raise ModelError(
                        "class not pseudo-effective within model, or candidate "
                        f"set inconsistent (coefficient of {l!r} solved to {a})"
                    )
        remainder = divisor
        for l, a in zip(support, coeffs):
            remainder = remainder - classes[l].scale(a)
        violators = [
            l
            for l in cands
            if l not in support and pair(model, remainder, classes[l]) < 0
        ]
        if not violators:
            positive = remainder
            break
        support = sorted(support + violators, key=model.declaration_index)

    kept = [(l, a) for l, a in zip(support, coeffs) if a != 0]
    result = ZariskiResult(
        support=tuple(l for l, _ in kept),
        coeffs={l: a for l, a in kept},
        positive_part=positive,
    )
    # orthogonality certificate
    for l in result.support:
        if pair(model, positive, classes[l]) != 0:
            raise ModelError(f"positive part not orthogonal to {l!r}")
    return result


def relative_negative_part(model: SurfaceModel, divisor, subset) -> dict[str, Fraction]:
    """Solve (D - sum b_i C_i).C_j = 0 over the subset alone.

    Unlike the full decomposition, coefficients may come out negative; no
    positivity is asserted.
    """
    divisor = as_divisor(divisor, model.rank)
    labels = list(subset)
    if not labels:
        return {}
    if len(set(labels)) != len(labels):
        raise InputError("subset labels must be pairwise distinct")
    labels.sort(key=model.declaration_index)
    sig = linalg.inertia(gram_matrix(model, labels))
    if sig[2] > 0:
        raise ModelError(f"Gram matrix of {labels} is singular")
    if sig != (0, len(labels), 0):
        raise ModelError(f"subset {labels} is not negative definite")
    sol = _solve_support(model, divisor, labels)
    return dict(zip(labels, sol))
