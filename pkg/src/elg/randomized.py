"""Deterministic random generators for property trials.

All generators take an explicit ``random.Random`` instance so batch runs are
reproducible from a single seed.
"""

from __future__ import annotations

import math
import random

from ._scalar import rat
from .multilinear import Alt, LieAlg
from .exc import ExcElem
from .subspaces import GroupWord
from .elgebra import Twist


def random_form(rng: random.Random, dim: int, deg: int,
                lo: int = -3, hi: int = 3) -> Alt:
    count = math.comb(dim, deg)
    return Alt.from_coords(dim, deg,
                           [rat(rng.randint(lo, hi)) for _ in range(count)])


def random_word(rng: random.Random, n: int, length: int = 3,
                lo: int = -2, hi: int = 2) -> GroupWord:
    """Word of nilpotent generators in the grades available at rank n."""
    kinds = ["a3", "w3"] if n < 6 else ["a3", "w3", "a6", "w6"]
    entries = []
    for _ in range(length):
        kind = rng.choice(kinds)
        deg = 3 if kind in ("a3", "w3") else 6
        form = random_form(rng, n, deg, lo, hi)
        if form:
            entries.append(ExcElem.make(n, **{kind: form}))
    return GroupWord(entries)


def random_lie4(rng: random.Random) -> LieAlg:
    """A 4-dimensional Lie algebra: abelian, Heisenberg + line, or
    almost-abelian solvable (one generator acting on an abelian ideal)."""
    shape = rng.randrange(3)
    if shape == 0:
        return LieAlg.abelian(4)
    if shape == 1:
        return LieAlg.heisenberg(4)
    f = []
    for i in range(1, 4):
        for k in range(1, 4):
            v = rng.randint(-2, 2)
            if v:
                f.append((4, i, k, rat(v)))
    return LieAlg(4, f)


def random_twist(rng: random.Random, dim: int) -> Twist:
    return Twist(random_form(rng, dim, 1), random_form(rng, dim, 4))
