from __future__ import annotations

import random

import pytest

from quadsperner.complex import build_pile, carve
from quadsperner.labelling import COLOR_TO_ALIAS, Labelling, random_sperner


def random_nl_cycle(rng: random.Random, n: int) -> list[int]:
    """Closed color walk of length n where consecutive colors are equal or adjacent."""
    while True:
        cycle = [rng.randint(1, 4)]
        for _ in range(n - 1):
            cycle.append((cycle[-1] - 1 + rng.choice((0, 0, 1, -1))) % 4 + 1)
        if (cycle[-1] - cycle[0]) % 4 != 2:
            return cycle


def random_nl_2d(rng: random.Random) -> Labelling:
    """Random neighboring labelling of a pile or a pile with a hole."""
    m, n = rng.randint(1, 5), rng.randint(1, 5)
    comp = build_pile((m, n))
    if m >= 3 and n >= 3 and rng.random() < 0.4:
        comp = carve(comp, [1 + m])
    labels = [COLOR_TO_ALIAS[rng.randint(1, 4)] for _ in range(comp.n_vertices)]
    for component in comp.boundary():
        walk = random_nl_cycle(rng, len(component.cycle))
        for v, c in zip(component.cycle, walk):
            labels[v] = COLOR_TO_ALIAS[c]
    return Labelling(comp, tuple(labels))


def random_nl_3d(rng: random.Random) -> Labelling:
    """Sperner labelling of a small 3-pile twisted by a cube symmetry, or collapsed."""
    dims = tuple(rng.randint(1, 2) for _ in range(3))
    pile = build_pile(dims)
    base = random_sperner(pile, rng.randrange(10**6))
    perm = rng.sample(range(3), 3)
    flips = rng.randrange(8)
    collapse = rng.random() < 0.25
    labels = []
    for lab in base.labels:
        bits = [(lab >> perm[i]) & 1 for i in range(3)]
        out = sum(b << i for i, b in enumerate(bits)) ^ flips
        if collapse:
            out &= ~1
        labels.append(out)
    return Labelling(pile, tuple(labels))


@pytest.fixture
def rng():
    return random.Random(20240517)
