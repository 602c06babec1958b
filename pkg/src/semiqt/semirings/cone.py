"""Positive subsemirings: additive closure of the norms {x* x}.

Finite carriers get an explicit fixpoint enumeration with recorded
sum-of-norms witnesses; infinite carriers fall back to the closed form
registered on the carrier.  The set of norms is closed under products
((x*x)(y*y) = (xy)*(xy)), so only additive closure needs iterating.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable, Optional

from .base import Semiring
from ..errors import BudgetExceededError, NotEnumerableError


def enumeration_budget() -> int:
    return int(os.environ.get("SEMIQT_ENUM_BUDGET", "1000000"))


@dataclass
class PositiveCone:
    """Membership (and witnesses) for the positive subsemiring R of S."""

    semiring: Semiring
    description: str
    _contains: Callable
    elements: Optional[tuple] = None
    _witness: Callable = None

    def contains(self, r) -> bool:
        return self._contains(r)

    def witness(self, r):
        """[xi_1, ...] with sum xi_i* xi_i = r, when recorded; else None."""
        return None if self._witness is None else self._witness(r)

    def is_invertible(self, r) -> bool:
        inv = self.semiring.try_invert(r)
        return inv is not None and self.contains(inv)


def positive_subsemiring(semiring: Semiring, max_size: Optional[int] = None) -> PositiveCone:
    S = semiring
    if S.finite_enumerable:
        budget = max_size or enumeration_budget()
        if (S.size() or 0) > budget:
            raise BudgetExceededError(
                f"carrier of size {S.size()} exceeds enumeration budget {budget}")
        return _finite_cone(S)
    try:
        S.cone_contains(S.zero)
    except NotEnumerableError:
        raise NotEnumerableError(
            f"{S.kind}: infinite carrier with no registered positivity closed form")
    return PositiveCone(S, S.cone_description(), S.cone_contains,
                        None, S.cone_witness)


def _finite_cone(S: Semiring) -> PositiveCone:
    norms = {}
    for x in S.elements():
        n = S.norm(x)
        norms.setdefault(_key(S, n), (n, (x,)))
    members = dict(norms)  # key -> (value, witness tuple)
    frontier = list(norms.values())
    while frontier:
        new = []
        for v, wv in frontier:
            for u, wu in list(members.values()):
                s = S.add(v, u)
                k = _key(S, s)
                if k not in members:
                    members[k] = (s, wv + wu)
                    new.append(members[k])
        frontier = new
    values = tuple(sorted((v for v, _ in members.values()),
                          key=lambda e: _key(S, e)))
    table = {k: w for k, (v, w) in members.items()}

    def contains(r):
        return _key(S, r) in table

    def witness(r):
        w = table.get(_key(S, r))
        return list(w) if w is not None else None

    return PositiveCone(S, "finite fixpoint closure of norms", contains,
                        values, witness)


def _key(S: Semiring, v):
    return repr(S.format_element(v))


def decompose_pure(semiring: Semiring, r):
    """A single xi with xi* xi = r, or None; exact by construction."""
    return semiring.pure_witness(r)
