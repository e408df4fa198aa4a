"""Slow independent oracles the fast paths are validated against.

Each oracle recomputes a result along a different route than the
shipped implementation: literal axiom chaining instead of the key-set
closed form, naive graph search instead of worklists, and so on.  The
test suite and the `check` command compare the two routes.
"""

from __future__ import annotations

from .linkage import (FLD, PFLD, SPOT, VAL, DataLinkage, TCombine, TEmpty,
                      TLit, TOverride, override_key)
from .universe import Universe


def override_by_axioms(xs: frozenset, ys) -> frozenset:
    """Overriding combination computed the way the equations chain:
    distribute over the right operand down to single links, then peel
    the left operand one link at a time."""
    ys = list(ys)
    if not ys:
        return frozenset(xs)
    out: set = set()
    for y in ys:
        out |= _override_single(list(xs), y)
    return frozenset(out)


def _override_single(xs: list, y) -> set:
    if not xs:
        return {y}
    head, tail = xs[0], xs[1:]
    rest = _override_single(tail, y)
    if override_key(head) == override_key(y):
        return rest
    rest.add(head)
    return rest


def normalize_by_axioms(term, universe: Universe) -> DataLinkage:
    """Fold a term using only literal axiom steps."""
    def go(t) -> frozenset:
        if isinstance(t, TEmpty):
            return frozenset()
        if isinstance(t, TLit):
            return t.linkage.links
        if isinstance(t, TCombine):
            return go(t.left) | go(t.right)
        if isinstance(t, TOverride):
            return override_by_axioms(go(t.left), go(t.right))
        raise TypeError(f"not a linkage term: {t!r}")
    return DataLinkage(universe, sorted(go(term)))


def spot_reachable(l: DataLinkage) -> frozenset:
    """Atoms reachable from spots via field links, by plain BFS."""
    edges: dict = {}
    seeds = []
    for link in l.links:
        if link[0] == SPOT:
            seeds.append(link[2])
        elif link[0] == FLD:
            edges.setdefault(link[1], []).append(link[3])
    seen = set()
    frontier = list(seeds)
    while frontier:
        a = frontier.pop()
        if a in seen:
            continue
        seen.add(a)
        frontier.extend(edges.get(a, ()))
    return frozenset(seen)


def safe_dispose_closed_form(d: str, l: DataLinkage) -> DataLinkage:
    """Identity when d is spot-reachable, otherwise every link involving
    d goes: as spot target, field source or target, partial-link subject
    or value subject."""
    if d in spot_reachable(l):
        return l
    def involves(link):
        tag = link[0]
        if tag == SPOT:
            return link[2] == d
        if tag == FLD:
            return link[1] == d or link[3] == d
        return link[1] == d
    return l.with_links([x for x in l.iter_links() if not involves(x)])


def rgc_one_at_a_time(l: DataLinkage, rng=None) -> DataLinkage:
    """Reference-count collection by deleting a single zero-count-anchored
    link at a time (the shipped collector deletes in rounds)."""
    links = list(l.iter_links())
    while True:
        counts: dict = {}
        for link in links:
            if link[0] == SPOT:
                counts[link[2]] = counts.get(link[2], 0) + 1
            elif link[0] == FLD:
                counts[link[3]] = counts.get(link[3], 0) + 1
        dead = [x for x in links
                if x[0] != SPOT and counts.get(x[1], 0) == 0]
        if not dead:
            return l.with_links(links)
        victim = rng.choice(dead) if rng is not None else dead[0]
        links.remove(victim)


def cyclic_atoms(zeta: dict) -> frozenset:
    """Atoms on a field-link cycle, via strongly connected components:
    an atom is cyclic when its component has two or more members or it
    carries a self edge."""
    succ = {a: {b for b in fm.values() if b is not None}
            for a, fm in zeta.items()}
    index: dict = {}
    low: dict = {}
    stack: list = []
    on_stack: set = set()
    counter = [0]
    out: set = set()

    def strongconnect(v):
        index[v] = low[v] = counter[0]
        counter[0] += 1
        stack.append(v)
        on_stack.add(v)
        for w in succ.get(v, ()):
            if w not in index:
                strongconnect(w)
                low[v] = min(low[v], low[w])
            elif w in on_stack:
                low[v] = min(low[v], index[w])
        if low[v] == index[v]:
            component = []
            while True:
                w = stack.pop()
                on_stack.discard(w)
                component.append(w)
                if w == v:
                    break
            if len(component) > 1:
                out.update(component)
            elif v in succ.get(v, ()):
                out.add(v)

    for a in succ:
        if a not in index:
            strongconnect(a)
    return frozenset(out)


def reach_inductive(a: str, zeta: dict) -> frozenset:
    """Field-successor closure computed by iterating the two defining
    rules until nothing is added."""
    out = {a}
    changed = True
    while changed:
        changed = False
        for x in list(out):
            for b in zeta.get(x, {}).values():
                if b is not None and b not in out:
                    out.add(b)
                    changed = True
    return frozenset(out)
