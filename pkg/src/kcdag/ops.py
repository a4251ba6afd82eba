"""Queries and transformations on canonical diagrams.

All transformations take and return canonical vertices at the stated bound.
The pure queries (consistency, validity, entailment checks, counting,
enumeration) never build new vertices beyond memoization.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

from .cnf import Literal
from .engine import FALSE, TRUE, DiagramStore
from .store import Bound, parse_bound


def _check_vars(store: DiagramStore, variables: Iterable[int]) -> None:
    for v in variables:
        if v not in store.rank:
            raise ValueError(f"variable {v} is not in this store's order")


def conjoin(store: DiagramStore, u: int, v: int, bound: Bound) -> int:
    return store.conjoin(u, v, parse_bound(bound))


def disjoin(store: DiagramStore, u: int, v: int, bound: Bound) -> int:
    return store.disjoin(u, v, parse_bound(bound))


def negate(store: DiagramStore, u: int, bound: Bound) -> int:
    return store.negate(u, parse_bound(bound))


def condition(store: DiagramStore, u: int, assignment: Mapping[int, bool],
              bound: Bound) -> int:
    _check_vars(store, assignment)
    return store.condition(u, dict(assignment), parse_bound(bound))


def forget(store: DiagramStore, u: int, variables: Iterable[int],
           bound: Bound) -> int:
    """Existentially quantify the given variables out of u."""
    i = parse_bound(bound)
    vs = list(dict.fromkeys(variables))
    _check_vars(store, vs)
    # deepest variable first keeps the intermediate diagrams local
    vs.sort(key=store.rank.__getitem__, reverse=True)
    for x in vs:
        u = store.disjoin(
            store.condition(u, {x: False}, i),
            store.condition(u, {x: True}, i),
            i,
        )
    return u


def is_consistent(store: DiagramStore, u: int) -> bool:
    """Every stored vertex except the false leaf is satisfiable."""
    return u != FALSE


def is_valid(store: DiagramStore, u: int) -> bool:
    return u == TRUE


def entails_clause(store: DiagramStore, u: int,
                   clause: Iterable[int | Literal]) -> bool:
    """Does u entail the given clause?  Linear in the diagram.

    Equivalent to conditioning u on the negation of every literal and
    checking for the false leaf.
    """
    assignment: dict[int, bool] = {}
    for lit in clause:
        if not isinstance(lit, Literal):
            lit = Literal.from_int(lit)
        if lit.var not in store.rank:
            raise ValueError(f"variable {lit.var} is not in this store's order")
        if assignment.get(lit.var) == lit.positive:
            return True  # clause is tautological over this variable
        assignment[lit.var] = not lit.positive
    return not store.sat_under(u, assignment)


def implied_by_term(store: DiagramStore, u: int,
                    term: Iterable[int | Literal]) -> bool:
    """Does the given term (conjunction of literals) entail u?"""
    assignment: dict[int, bool] = {}
    for lit in term:
        if not isinstance(lit, Literal):
            lit = Literal.from_int(lit)
        if lit.var not in store.rank:
            raise ValueError(f"variable {lit.var} is not in this store's order")
        if assignment.get(lit.var) == (not lit.positive):
            return True  # contradictory term entails everything
        assignment[lit.var] = lit.positive
    return store.valid_under(u, assignment)


def equivalent(store: DiagramStore, u: int, v: int) -> bool:
    """Semantic equivalence; canonical same-bound vertices simply compare ids."""
    if u == v:
        return True
    from .store import INF
    return store.decompose(u, INF) == store.decompose(v, INF)


def entails(store: DiagramStore, u: int, v: int, bound: Bound) -> bool:
    """Sentential entailment u |= v via u AND NOT v."""
    i = parse_bound(bound)
    return store.conjoin(u, store.negate(v, i), i) == FALSE


def model_count(store: DiagramStore, u: int,
                scope: Iterable[int] | None = None) -> int:
    """Exact model count over `scope` (default: the diagram's own variables)."""
    base = store.model_count(u)
    if scope is None:
        return base
    sc = set(scope)
    _check_vars(store, sc)
    missing = store.vars_of(u) - sc
    if missing:
        raise ValueError(f"scope is missing diagram variables {sorted(missing)}")
    return base << len(sc - store.vars_of(u))


def enumerate_models(store: DiagramStore, u: int,
                     scope: Iterable[int] | None = None,
                     limit: int | None = None) -> Iterator[dict[int, bool]]:
    """Yield total assignments over `scope` satisfying u, deterministically.

    Free variables (in scope but undecided on a path) are expanded false
    first, in ascending variable order.
    """
    if scope is None:
        sc = sorted(store.vars_of(u))
    else:
        sc = sorted(set(scope))
        _check_vars(store, sc)
        missing = store.vars_of(u) - set(sc)
        if missing:
            raise ValueError(f"scope is missing diagram variables {sorted(missing)}")

    def walk(w: int) -> Iterator[dict[int, bool]]:
        if w == FALSE:
            return
        if w == TRUE:
            yield {}
            return
        if store.is_decision(w):
            x = store.var_of(w)
            for m in walk(store.lo(w)):
                out = dict(m)
                out[x] = False
                yield out
            for m in walk(store.hi(w)):
                out = dict(m)
                out[x] = True
                yield out
            return
        kids = store.children(w)

        def product(k: int) -> Iterator[dict[int, bool]]:
            if k == len(kids):
                yield {}
                return
            for head in walk(kids[k]):
                for tail in product(k + 1):
                    merged = dict(head)
                    merged.update(tail)
                    yield merged

        yield from product(0)

    emitted = 0
    for partial in walk(u):
        free = [v for v in sc if v not in partial]
        for mask in range(1 << len(free)):
            model = dict(partial)
            for pos, v in enumerate(free):
                model[v] = bool((mask >> pos) & 1)
            yield {v: model[v] for v in sc}
            emitted += 1
            if limit is not None and emitted >= limit:
                return
