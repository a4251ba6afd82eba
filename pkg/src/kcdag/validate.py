"""Structural and semantic validation of canonical diagrams.

The structural pass is linear and always runs: ordering, reduction,
uniqueness, flat/disjoint/sorted conjunctions, and the bound on oversized
children.  The semantic pass proves canonicity outright for vertices small
enough to enumerate: a decision vertex must admit no in-bound factoring at
all, and a conjunction vertex's children must each be an independent factor
of its function.  Vertices above `semantic_limit` variables are skipped, and
the report says so.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Union

from .engine import KIND_CONJ, KIND_DECISION, DiagramStore
from .store import Bound, parse_bound

# exact-check gate: 2^12 masks is cheap, 2^20 is not
DEFAULT_SEMANTIC_LIMIT = 12


@dataclass
class ValidationReport:
    bound: Bound
    root: int
    vertex_count: int
    ordered_ok: bool = True
    reduced_ok: bool = True
    bounded_ok: bool = True
    decomposition_finest_ok: Union[bool, str] = True  # True / False / "skipped"
    offending: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (self.ordered_ok and self.reduced_ok and self.bounded_ok
                and self.decomposition_finest_ok is not False)

    def summary(self) -> str:
        flags = [
            f"ordered={self.ordered_ok}",
            f"reduced={self.reduced_ok}",
            f"bounded={self.bounded_ok}",
            f"finest={self.decomposition_finest_ok}",
        ]
        return f"root {self.root} @bound {self.bound}: " + " ".join(flags)


def _models(store: DiagramStore, u: int, cache: dict):
    """(sorted vars tuple, frozenset of bitmasks) of u's models, bottom-up.

    Bit k of a mask is the value of the k-th variable in the tuple.
    """
    hit = cache.get(u)
    if hit is not None:
        return hit
    k = store.kind(u)
    if k == KIND_DECISION:
        vt = tuple(sorted(store.vars_of(u)))
        x = store.var_of(u)
        xbit = 1 << vt.index(x)
        masks = set()
        for branch, phase in ((store.lo(u), 0), (store.hi(u), xbit)):
            bt, bmodels = _models(store, branch, cache)
            pos = {v: vt.index(v) for v in bt}
            free = [1 << p for p, v in enumerate(vt) if v != x and v not in bt]
            base_masks = []
            for m in bmodels:
                out = 0
                for idx, v in enumerate(bt):
                    if (m >> idx) & 1:
                        out |= 1 << pos[v]
                base_masks.append(out | phase)
            # expand variables skipped on this branch
            for bm in base_masks:
                for sel in range(1 << len(free)):
                    pad = 0
                    for j, bit in enumerate(free):
                        if (sel >> j) & 1:
                            pad |= bit
                    masks.add(bm | pad)
        result = (vt, frozenset(masks))
    elif k == KIND_CONJ:
        vt = tuple(sorted(store.vars_of(u)))
        masks = {0}
        for c in store.children(u):
            ct, cmodels = _models(store, c, cache)
            shifts = {idx: vt.index(v) for idx, v in enumerate(ct)}
            embedded = []
            for m in cmodels:
                out = 0
                for idx in shifts:
                    if (m >> idx) & 1:
                        out |= 1 << shifts[idx]
                embedded.append(out)
            masks = {a | b for a in masks for b in embedded}
        result = (vt, frozenset(masks))
    else:
        result = ((), frozenset([0]) if u == 1 else frozenset())
    cache[u] = result
    return result


def _side_is_factor(models_list, models_set, smask, rmask, rng) -> bool:
    """Is the variable set behind smask an independent factor of the function?

    A few random cross-combinations reject most non-factors immediately; the
    projection-count identity then decides exactly.
    """
    n = len(models_list)
    if n == 0:
        return True
    for _ in range(8):
        m1 = models_list[rng.randrange(n)]
        m2 = models_list[rng.randrange(n)]
        if ((m1 & smask) | (m2 & rmask)) not in models_set:
            return False
    left = {m & smask for m in models_list}
    right = {m & rmask for m in models_list}
    return len(left) * len(right) == len(models_list)


def _decision_is_finest(store, u, i, cache, rng) -> bool:
    """No in-bound factoring may exist for a canonical decision vertex."""
    vt, models = _models(store, u, cache)
    n = len(vt)
    if n <= 1:
        return True
    models_list = list(models)
    full = (1 << n) - 1
    limit = n - 1 if i == float("inf") else min(int(i), n - 1)
    if limit >= n - 1:
        # any factoring at all disqualifies; one side always contains bit 0
        for smask in _all_sides(n):
            if _side_is_factor(models_list, models, smask, full ^ smask, rng):
                return False
        return True
    for sz in range(1, limit + 1):
        for combo in combinations(range(n), sz):
            smask = 0
            for p in combo:
                smask |= 1 << p
            if _side_is_factor(models_list, models, smask, full ^ smask, rng):
                return False
    return True


def _all_sides(n: int):
    """Every bipartition side containing position 0, excluding the full set."""
    full = (1 << n) - 1
    for rest in range(1 << (n - 1)):
        smask = (rest << 1) | 1
        if smask != full:
            yield smask


def _conj_is_finest(store, u, i, cache, rng) -> bool:
    """Each child's variables must be an independent factor of the parent.

    Together with every child decision vertex passing its own check, this
    pins the children to exactly the finest in-bound factoring.
    """
    vt, models = _models(store, u, cache)
    if not models:
        return False  # conjunction vertices are never unsatisfiable
    models_list = list(models)
    pos = {v: k for k, v in enumerate(vt)}
    full = (1 << len(vt)) - 1
    for c in store.children(u):
        smask = 0
        for v in store.vars_of(c):
            smask |= 1 << pos[v]
        if not _side_is_factor(models_list, models, smask, full ^ smask, rng):
            return False
    return True


def validate(store: DiagramStore, root: int, bound: Bound,
             semantic_limit: int = DEFAULT_SEMANTIC_LIMIT,
             caches: dict | None = None) -> ValidationReport:
    """Check that the diagram rooted at `root` is canonical for `bound`.

    `caches` may be shared across calls on the same store to reuse model
    sets and per-bound finest verdicts between overlapping diagrams.
    """
    i = parse_bound(bound)
    topo = store.topological(root)
    report = ValidationReport(bound=i, root=root, vertex_count=len(topo))
    rank = store.rank
    seen_keys: dict = {}
    rng = random.Random(0xC0FFEE)

    for u in topo:
        k = store.kind(u)
        if k == KIND_DECISION:
            x = store.var_of(u)
            lo, hi = store.lo(u), store.hi(u)
            r = rank.get(x)
            if r is None or r >= store.min_rank(lo) or r >= store.min_rank(hi):
                report.ordered_ok = False
                report.offending.setdefault("ordered", u)
            if lo == hi:
                report.reduced_ok = False
                report.offending.setdefault("reduced", u)
            key = (KIND_DECISION, x, lo, hi)
            if key in seen_keys and seen_keys[key] != u:
                report.reduced_ok = False
                report.offending.setdefault("duplicate", u)
            seen_keys[key] = u
        elif k == KIND_CONJ:
            kids = store.children(u)
            if len(kids) < 2:
                report.bounded_ok = False
                report.offending.setdefault("conj-arity", u)
            total = 0
            union: set = set()
            nbig = 0
            last_rank = -1
            for c in kids:
                if not store.is_decision(c):
                    report.bounded_ok = False
                    report.offending.setdefault("conj-child-kind", u)
                cvs = store.vars_of(c)
                total += len(cvs)
                union |= cvs
                if len(cvs) > i:
                    nbig += 1
                if store.min_rank(c) <= last_rank:
                    report.bounded_ok = False
                    report.offending.setdefault("conj-child-order", u)
                last_rank = store.min_rank(c)
            if total != len(union):
                report.bounded_ok = False
                report.offending.setdefault("conj-overlap", u)
            if nbig > 1:
                report.bounded_ok = False
                report.offending.setdefault("bound", u)
            key = (KIND_CONJ, kids)
            if key in seen_keys and seen_keys[key] != u:
                report.reduced_ok = False
                report.offending.setdefault("duplicate", u)
            seen_keys[key] = u

    if not (report.ordered_ok and report.reduced_ok and report.bounded_ok):
        report.decomposition_finest_ok = False
        return report

    cache = caches if caches is not None else {}
    skipped = False
    for u in topo:
        k = store.kind(u)
        if k not in (KIND_DECISION, KIND_CONJ):
            continue
        if len(store.vars_of(u)) > semantic_limit:
            skipped = True
            continue
        # the verdict is exact, so it can be memoized per (vertex, bound)
        vkey = ("finest", u, i)
        ok = cache.get(vkey)
        if ok is None:
            if k == KIND_DECISION:
                ok = _decision_is_finest(store, u, i, cache, rng)
            else:
                ok = _conj_is_finest(store, u, i, cache, rng)
            cache[vkey] = ok
        if not ok:
            report.decomposition_finest_ok = False
            report.offending.setdefault("finest", u)
            return report
    if skipped:
        report.decomposition_finest_ok = "skipped"
    return report
