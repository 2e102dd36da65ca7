"""Linear checks on node configurations.

A configuration is a list of curve classes in a fixed homology space.
Smoothability asks for a vanishing combination with every coefficient
nonzero; Kahler positivity asks for a linear functional strictly
positive on every class.  Both are decided exactly over the rationals.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from ..errors import PreconditionError
from ..exact import Matrix


@dataclass(frozen=True)
class NodeConfiguration:
    classes: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.classes:
            raise PreconditionError("configuration needs at least one class")
        d = len(self.classes[0])
        if any(len(c) != d for c in self.classes):
            raise PreconditionError("classes must share a dimension")

    @classmethod
    def make(cls, classes) -> "NodeConfiguration":
        return cls(
            classes=tuple(tuple(Fraction(x) for x in c) for c in classes)
        )


@dataclass(frozen=True)
class SmoothabilityResult:
    smoothable: bool
    witness: tuple[Fraction, ...] | None


def node_smoothable(cfg: NodeConfiguration, seed: int = 0) -> SmoothabilityResult:
    """A vanishing relation with all coefficients nonzero exists iff the
    relation space avoids every coordinate hyperplane; the witness is a
    generic element of the relation space, re-verified exactly."""
    k = len(cfg.classes)
    m = Matrix.from_columns(cfg.classes)
    kernel = m.kernel_basis()
    if not kernel:
        return SmoothabilityResult(smoothable=False, witness=None)
    for j in range(k):
        if all(vec[j] == 0 for vec in kernel):
            return SmoothabilityResult(smoothable=False, witness=None)
    forms = [tuple(Fraction(int(i == j)) for i in range(k)) for j in range(k)]
    witness = generic_combination(kernel, forms, seed=seed)
    assert all(x == 0 for x in m.apply(witness)), "witness is not a relation"
    assert all(x != 0 for x in witness), "witness has a zero coefficient"
    return SmoothabilityResult(smoothable=True, witness=witness)


def node_kahler(cfg: NodeConfiguration) -> bool:
    """Feasibility of {y : y . c >= 1 for every class c}, decided by
    Fourier-Motzkin elimination; equivalent to strict positivity."""
    rows = [list(c) + [Fraction(1)] for c in cfg.classes]  # a.y >= b, b last
    return _fourier_motzkin_feasible(rows)


def _fourier_motzkin_feasible(rows) -> bool:
    """Rows are (a_1..a_d, b) meaning a . y >= b; decide feasibility."""
    if not rows:
        return True
    d = len(rows[0]) - 1
    for _ in range(d):
        lowers, uppers, keep = [], [], []
        for row in rows:
            c = row[0]
            rest = row[1:]
            if c > 0:
                lowers.append([x / c for x in rest])
            elif c < 0:
                uppers.append([x / c for x in rest])
            else:
                keep.append(rest)
        new_rows = keep
        for lo in lowers:
            for up in uppers:
                # lo-bound <= y_var <= up-bound: (up - lo) . (y,1) "&" signs:
                # lo gave y >= (b_lo - a_lo.y')/..., combined constraint is
                # a_up.y' - a_lo.y' >= b_up - b_lo after normalization.
                combined = [l - u for l, u in zip(lo, up)]
                new_rows.append(combined)
        rows = new_rows
        if not rows:
            return True
    return all(row[-1] <= 0 for row in rows)


def generic_combination(basis, forms, seed: int = 0, attempts: int = 1000):
    """An element of span(basis) on which every form that can be nonzero
    is nonzero.  Seeded random rationals first, then a deterministic
    power-basis fallback that is guaranteed to succeed."""
    relevant = [
        f
        for f in forms
        if any(_pair(vec, f) != 0 for vec in basis)
    ]
    rng = random.Random(seed)
    k = len(basis)
    for _ in range(attempts):
        coeffs = [
            Fraction(rng.randint(-97, 97), rng.randint(1, 97)) for _ in range(k)
        ]
        cand = _combine(basis, coeffs)
        if all(_pair(cand, f) != 0 for f in relevant):
            return cand
    # Sum of t^i basis_i: each pairing is a nonzero polynomial in t of
    # degree < k, so some t among k*len(relevant)+1 integers works.
    for t in range(1, k * len(relevant) + 2):
        coeffs = [Fraction(t) ** i for i in range(k)]
        cand = _combine(basis, coeffs)
        if all(_pair(cand, f) != 0 for f in relevant):
            return cand
    raise PreconditionError("no generic combination exists")


def _combine(basis, coeffs):
    out = None
    for c, vec in zip(coeffs, basis):
        term = [c * x for x in vec]
        out = term if out is None else [a + b for a, b in zip(out, term)]
    return tuple(out)


def _pair(vec, form):
    return sum(a * b for a, b in zip(vec, form))
