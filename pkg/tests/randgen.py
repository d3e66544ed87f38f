"""Seeded plain-random generators for the fixed-size acceptance sweeps.

Hypothesis decides its own sample counts; the acceptance criteria name exact
ones, so these draw from a ``random.Random`` instead.
"""

import random
import string

from lsawfp.builder import count_representatives
from lsawfp.model import GMWf, Mode, Production, Sort, SortKind
from lsawfp.specfile import (
    KEYWORDS,
    AccreditDecl,
    ChoiceDecl,
    PolicyDecl,
    ProductionDecl,
    SortDecl,
    SpecDocument,
    StatusDecl,
)


def random_gmwf(rng: random.Random, max_sorts=8, max_prods=2, max_rhs=3, max_reps=300) -> GMWf:
    """Same shape as the ``gmwfs`` strategy: axiom X0, all sorts reachable."""
    while True:
        n = rng.randint(1, max_sorts)
        names = [f"X{i}" for i in range(n)]
        kinds = [SortKind.TASK] + [rng.choice(list(SortKind)) for _ in names[1:]]
        parent = {i: rng.randrange(i) for i in range(1, n)}
        keys: dict = {}
        for i, lhs in enumerate(names):
            forced = [names[c] for c, p in parent.items() if p == i]
            for j in range(rng.randint(1, max_prods)):
                extra = [rng.choice(names) for _ in range(rng.randint(0, max_rhs))]
                rhs = tuple(forced + extra) if j == 0 else tuple(extra)
                mode = rng.choice(list(Mode)) if len(rhs) > 1 else Mode.SEQ
                keys.setdefault((lhs, rhs, mode), None)
        prods = tuple(Production(f"P{i}", *k) for i, k in enumerate(keys, 1))
        g = GMWf(tuple(Sort(s, k) for s, k in zip(names, kinds)), prods, ("X0",))
        if count_representatives(g) <= max_reps:
            return g


def random_view(rng: random.Random, g: GMWf) -> frozenset:
    return frozenset(s for s in g.names if rng.random() < 0.5)


def _ident(rng: random.Random) -> str:
    while True:
        tail = "".join(rng.choices(string.ascii_letters + string.digits + "_", k=rng.randint(0, 4)))
        name = rng.choice(string.ascii_uppercase) + tail
        if name not in KEYWORDS:
            return name


def _idents(rng: random.Random, lo: int, hi: int) -> list[str]:
    out: dict[str, None] = {}
    target = rng.randint(lo, hi)
    while len(out) < target:
        out[_ident(rng)] = None
    return list(out)


def _text(rng: random.Random) -> str:
    alphabet = string.printable.replace("\n", "").replace("\r", "") + "éß∥⨟\"\\"
    return "".join(rng.choices(alphabet, k=rng.randint(0, 12)))


def random_doc(rng: random.Random) -> SpecDocument:
    names = _idents(rng, 1, 6)
    sorts = tuple(SortDecl(s, rng.random() < 0.3) for s in names)
    axioms = tuple(rng.sample(names, rng.randint(1, min(2, len(names)))))
    n_prods = rng.randint(0, 6)
    ids = _idents(rng, n_prods, n_prods) if rng.random() < 0.5 else [f"P{i}" for i in range(1, n_prods + 1)]
    prods = tuple(
        ProductionDecl(
            pid,
            rng.choice(names),
            tuple(rng.choice(names) for _ in range(rng.randint(0, 3))),
            rng.choice(list(Mode)),
        )
        for pid in ids
    )
    actors = tuple(_idents(rng, 0, 3))

    def subset():
        return tuple(rng.sample(names, rng.randint(0, min(3, len(names)))))

    accs = tuple(AccreditDecl(a, subset(), subset(), subset()) for a in actors if rng.random() < 0.7)
    policies = []
    for pname in _idents(rng, 0, 2):
        choices = tuple(
            ChoiceDecl(rng.choice(names), rng.choice([None, 0, 1, 2]), rng.choice(ids))
            for _ in range(rng.randint(0, 3) if ids else 0)
        )
        statuses = tuple(StatusDecl(rng.choice(names), _text(rng)) for _ in range(rng.randint(0, 2)))
        policies.append(PolicyDecl(pname, choices, statuses))
    return SpecDocument(_ident(rng), sorts, axioms, prods, actors, accs, tuple(policies))
