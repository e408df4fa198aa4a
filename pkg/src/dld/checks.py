"""Verification suites runnable from the CLI and from the test suite.

Each suite returns a Summary whose line() matches
`checked=<n> passed=<n> failed=<n>` exactly; per-case failure details
are collected up to a cap.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import product

from .actions import Act, all_basic_actions, all_reclaim_actions
from .linkage import (DataLinkage, TCombine, TEmpty, TLit, TOverride, flink,
                      pflink, slink, valass)
from .oracles import normalize_by_axioms, rgc_one_at_a_time
from .reclaim import effect_dldr, fgc, rgc, yield_dldr
from .refine import check_commutation, enumerate_states, retrieve
from .semantics import Scan, effect, yield_
from .threads import (BLOCKED, DEADLOCK, STOP, TAU, Call, Post, Ref, Service,
                      ThreadSpec, use)
from .universe import Universe, small_universe

_DETAIL_CAP = 25


@dataclass
class Summary:
    name: str
    checked: int = 0
    passed: int = 0
    failed: int = 0
    failures: list = dc_field(default_factory=list)

    def ok(self):
        self.checked += 1
        self.passed += 1

    def fail(self, detail: str):
        self.checked += 1
        self.failed += 1
        if len(self.failures) < _DETAIL_CAP:
            self.failures.append(detail)

    def record(self, ok: bool, detail: str = ""):
        if ok:
            self.ok()
        else:
            self.fail(detail)

    def line(self) -> str:
        return f"checked={self.checked} passed={self.passed} failed={self.failed}"


# --- state and term generators ------------------------------------------------

def all_links(u: Universe) -> list:
    links = []
    for s in u.spots:
        for a in u.atoms:
            links.append(slink(s, a))
    for a in u.atoms:
        for f in u.fields:
            links.append(pflink(a, f))
    for a in u.atoms:
        for f in u.fields:
            for b in u.atoms:
                links.append(flink(a, f, b))
    for a in u.atoms:
        for n in range(u.modulus):
            links.append(valass(a, n))
    return links


def enumerate_linkages(u: Universe):
    """Every canonical state over the universe (all subsets of links)."""
    links = all_links(u)
    n = len(links)
    for mask in range(1 << n):
        yield DataLinkage(u, [links[i] for i in range(n) if mask >> i & 1])


def enumerate_deterministic(u: Universe):
    """Every deterministic state, built position by position."""
    spot_choices = [[None] + [slink(s, a) for a in u.atoms] for s in u.spots]
    field_choices = [[None, pflink(a, f)] + [flink(a, f, b) for b in u.atoms]
                     for a in u.atoms for f in u.fields]
    value_choices = [[None] + [valass(a, n) for n in range(u.modulus)]
                     for a in u.atoms]
    for picks in product(*(spot_choices + field_choices + value_choices)):
        yield DataLinkage(u, [x for x in picks if x is not None])


def random_linkage(rng: random.Random, u: Universe, max_links: int = 5) -> DataLinkage:
    pool = all_links(u)
    return DataLinkage(u, rng.sample(pool, rng.randint(0, min(max_links, len(pool)))))


def random_term(rng: random.Random, u: Universe, depth: int):
    if depth <= 0 or rng.random() < 0.3:
        if rng.random() < 0.15:
            return TEmpty()
        return TLit(random_linkage(rng, u))
    kind = TCombine if rng.random() < 0.5 else TOverride
    return kind(random_term(rng, u, depth - 1), random_term(rng, u, depth - 1))


def _norm(term, u):
    from .linkage import normalize

    return normalize(term, u)


# --- axiom suite ---------------------------------------------------------------

def _distinct(rng, pool, k):
    return rng.sample(list(pool), k)


def _axiom_cases(rng: random.Random, u: Universe):
    """One random closed instantiation of every combination and override
    axiom; yields (name, lhs term, rhs term)."""
    X = random_term(rng, u, 3)
    Y = random_term(rng, u, 3)
    Z = random_term(rng, u, 3)
    s, t = _distinct(rng, u.spots, 2) if len(u.spots) > 1 else (u.spots[0],) * 2
    a = rng.choice(u.atoms)
    b = rng.choice(u.atoms)
    c = rng.choice(u.atoms)
    d = rng.choice(u.atoms)
    f = rng.choice(u.fields)
    g = rng.choice(u.fields)
    n = rng.randrange(u.modulus)
    m = rng.randrange(u.modulus)

    def lit(link):
        return TLit(DataLinkage(u, [link]))

    yield ("combine-comm", TCombine(X, Y), TCombine(Y, X))
    yield ("combine-assoc", TCombine(X, TCombine(Y, Z)),
           TCombine(TCombine(X, Y), Z))
    yield ("combine-idem", TCombine(X, X), X)
    yield ("combine-unit", TCombine(X, TEmpty()), X)
    yield ("override-left-unit", TOverride(TEmpty(), X), X)
    yield ("override-right-unit", TOverride(X, TEmpty()), X)
    yield ("override-distrib", TOverride(X, TCombine(Y, Z)),
           TCombine(TOverride(X, Y), TOverride(X, Z)))

    def over(u1, u2):
        return (TOverride(TCombine(X, lit(u1)), lit(u2)),
                TOverride(X, lit(u2)))

    yield ("override-spot", *over(slink(s, a), slink(s, b)))
    yield ("override-pf-pf", *over(pflink(a, f), pflink(a, f)))
    yield ("override-fl-pf", *over(flink(a, f, b), pflink(a, f)))
    yield ("override-pf-fl", *over(pflink(a, f), flink(a, f, b)))
    yield ("override-fl-fl", *over(flink(a, f, b), flink(a, f, c)))
    yield ("override-val", *over(valass(a, n), valass(a, m)))

    def commute(name, u1, u2, ok=True):
        if not ok:
            return None
        return (name,
                TOverride(TCombine(X, lit(u1)), lit(u2)),
                TCombine(TOverride(X, lit(u2)), lit(u1)))

    a2, b2 = (_distinct(rng, u.atoms, 2) if len(u.atoms) > 1
              else (u.atoms[0],) * 2)
    fg_a, fg_b = a, b
    fg_f, fg_g = f, g
    if fg_a == fg_b and fg_f == fg_g:
        if len(u.atoms) > 1:
            fg_a, fg_b = _distinct(rng, u.atoms, 2)
        elif len(u.fields) > 1:
            fg_f, fg_g = _distinct(rng, u.fields, 2)
    n2, m2 = n, m

    cases = [
        commute("commute-s-s", slink(s, a), slink(t, b), s != t),
        commute("commute-pf-s", pflink(a, f), slink(s, b)),
        commute("commute-fl-s", flink(a, f, b), slink(s, c)),
        commute("commute-va-s", valass(a, n), slink(s, b)),
        commute("commute-s-pf", slink(s, a), pflink(b, f)),
        commute("commute-pf-pf", pflink(fg_a, fg_f), pflink(fg_b, fg_g),
                fg_a != fg_b or fg_f != fg_g),
        commute("commute-fl-pf", flink(fg_a, fg_f, b), pflink(fg_b, fg_g),
                fg_a != fg_b or fg_f != fg_g),
        commute("commute-va-pf", valass(a, n), pflink(b, f)),
        commute("commute-s-fl", slink(s, a), flink(b, f, c)),
        commute("commute-pf-fl", pflink(fg_a, fg_f), flink(fg_b, fg_g, c),
                fg_a != fg_b or fg_f != fg_g),
        commute("commute-fl-fl", flink(fg_a, fg_f, b), flink(fg_b, fg_g, d),
                fg_a != fg_b or fg_f != fg_g),
        commute("commute-va-fl", valass(a, n), flink(b, f, c)),
        commute("commute-s-va", slink(s, a), valass(b, n)),
        commute("commute-pf-va", pflink(a, f), valass(b, n)),
        commute("commute-fl-va", flink(a, f, b), valass(c, n)),
        commute("commute-va-va", valass(a2, n2), valass(b2, m2), a2 != b2),
    ]
    for case in cases:
        if case is not None:
            yield case


def suite_axioms(u: Universe | None = None, cases: int = 100,
                 seed: int = 0) -> Summary:
    u = u or small_universe(3, 2, 3, 3)
    rng = random.Random(seed)
    summary = Summary("axioms")
    for _ in range(cases):
        for name, lhs, rhs in _axiom_cases(rng, u):
            left = _norm(lhs, u)
            right = _norm(rhs, u)
            summary.record(left == right,
                           f"{name}: {left.canonical_text()} != "
                           f"{right.canonical_text()}")
    return summary


# --- normalization suite --------------------------------------------------------

def suite_thm1(u: Universe | None = None, terms: int = 1000,
               oracle_samples: int = 100, depth: int = 6,
               seed: int = 0) -> Summary:
    u = u or small_universe(2, 2, 3, 3)
    rng = random.Random(seed)
    summary = Summary("thm1")
    sampled = set(rng.sample(range(terms), min(oracle_samples, terms)))
    for i in range(terms):
        term = random_term(rng, u, depth)
        nf = _norm(term, u)
        ok = _norm(TCombine(term, term), u) == nf
        ok = ok and _norm(TCombine(TLit(nf), TLit(nf)), u) == nf
        if i in sampled:
            ok = ok and normalize_by_axioms(term, u) == nf
        summary.record(ok, f"term {i}: {nf.canonical_text()}")
    return summary


# --- uniqueness / totality suite -------------------------------------------------

def suite_thm2(u: Universe | None = None, shuffles: int = 5, seed: int = 0,
               nondet_reclaim_samples: int = 300) -> Summary:
    """Every basic action on every state, re-evaluated under shuffled
    link orders; reclamation actions likewise on every deterministic
    state plus sampled non-deterministic ones, with randomised worklist
    extraction."""
    u = u or small_universe(2, 1, 2, 2)
    rng = random.Random(seed)
    summary = Summary("thm2")
    basic = all_basic_actions(u)
    reclaim = all_reclaim_actions(u)

    states = list(enumerate_linkages(u))
    for l in states:
        scan = Scan(l)
        base = [(effect(a, l, scan), yield_(a, l, scan)) for a in basic]
        agree = [True] * len(basic)
        for _ in range(shuffles):
            order = list(l.iter_links())
            rng.shuffle(order)
            l2 = DataLinkage(u, order)
            scan2 = Scan(l2)
            for j, a in enumerate(basic):
                if not agree[j]:
                    continue
                if (effect(a, l2, scan2) != base[j][0]
                        or yield_(a, l2, scan2) != base[j][1]):
                    agree[j] = False
        for j, a in enumerate(basic):
            if agree[j] and isinstance(base[j][1], bool):
                summary.ok()
            else:
                summary.fail(f"{a} on {l.canonical_text()}: diverged under shuffle")

    det = list(enumerate_deterministic(u))
    nondet = [l for l in rng.sample(states, min(nondet_reclaim_samples,
                                                len(states)))
              if not l.is_deterministic()]
    for l in det + nondet:
        base = [(effect_dldr(a, l), yield_dldr(a, l)) for a in reclaim]
        agree = [True] * len(reclaim)
        for _ in range(2):
            order = list(l.iter_links())
            rng.shuffle(order)
            l2 = DataLinkage(u, order)
            for j, a in enumerate(reclaim):
                if not agree[j]:
                    continue
                if (effect_dldr(a, l2, rng=rng) != base[j][0]
                        or yield_dldr(a, l2) != base[j][1]):
                    agree[j] = False
        for j, a in enumerate(reclaim):
            if agree[j]:
                summary.ok()
            else:
                summary.fail(f"{a} on {l.canonical_text()}: diverged under shuffle")
    return summary


# --- differential suite -----------------------------------------------------------

def suite_thm3(u: Universe | None = None, include_nontight: bool = False,
               max_atoms: int | None = None) -> Summary:
    u = u or small_universe(2, 1, 2, 2)
    summary = Summary("thm3")
    instances = all_basic_actions(u) + all_reclaim_actions(u)
    for st in enumerate_states(u, max_atoms=max_atoms,
                               tight_only=not include_nontight):
        for act in instances:
            verdict = check_commutation(act, st)
            if verdict.passed:
                summary.ok()
            else:
                summary.fail(verdict.describe())
    return summary


# --- garbage collection cross-model suite -----------------------------------------

def suite_gc_cross(u: Universe | None = None, seed: int = 0) -> Summary:
    u = u or small_universe(2, 1, 2, 2)
    rng = random.Random(seed)
    summary = Summary("gc-cross")
    for st in enumerate_states(u, tight_only=True):
        for act_name in ("fgc", "rgc"):
            verdict = check_commutation(Act(act_name), st)
            if verdict.passed:
                summary.ok()
            else:
                summary.fail(verdict.describe())
    for l in enumerate_linkages(u):
        full = fgc(l)
        restricted = rgc(l)
        if (full.links <= restricted.links
                and fgc(restricted) == full
                and restricted == rgc_one_at_a_time(l, rng)):
            summary.ok()
        else:
            summary.fail(f"gc inclusion failed on {l.canonical_text()}")
    return summary


# --- thread/service suite -----------------------------------------------------------

class TableService(Service):
    """Finite randomized service: explicit reply and successor tables
    with a designated absorbing blocked state."""

    def __init__(self, table: dict, state):
        self.table = table
        self.state = state

    def reply(self, method):
        if self.state == "blocked":
            return BLOCKED
        return self.table[(method, self.state)][0]

    def derive(self, method) -> "TableService":
        if self.state == "blocked":
            return self
        return TableService(self.table, self.table[(method, self.state)][1])


def random_service(rng: random.Random, methods, n_states: int = 4) -> TableService:
    table = {}
    for m in methods:
        for s in range(n_states):
            roll = rng.random()
            if roll < 0.15:
                table[(m, s)] = (BLOCKED, "blocked")
            else:
                table[(m, s)] = (roll < 0.6, rng.randrange(n_states))
    return TableService(table, rng.randrange(n_states))


def random_thread(rng: random.Random, depth: int, foci, methods):
    if depth <= 0 or rng.random() < 0.25:
        return STOP if rng.random() < 0.6 else DEADLOCK
    left = random_thread(rng, depth - 1, foci, methods)
    right = random_thread(rng, depth - 1, foci, methods)
    if rng.random() < 0.15:
        return Post(TAU, left, left)
    return Post(Call(rng.choice(foci), rng.choice(methods)), left, right)


def thread_equal(t1, t2, depth: int = 32, spec: ThreadSpec | None = None) -> bool:
    def unfold(t):
        if isinstance(t, Ref):
            return spec.body(t.name)
        return t

    t1 = unfold(t1)
    t2 = unfold(t2)
    if depth <= 0:
        return True
    if t1 is STOP or t1 is DEADLOCK or t2 is STOP or t2 is DEADLOCK:
        return t1 is t2
    if not (isinstance(t1, Post) and isinstance(t2, Post)):
        return False
    if t1.action is not TAU or t2.action is not TAU:
        if t1.action is TAU or t2.action is TAU:
            return False
        if t1.action != t2.action:
            return False
    return (thread_equal(t1.then, t2.then, depth - 1, spec)
            and thread_equal(t1.orelse, t2.orelse, depth - 1, spec))


def suite_tsu(cases: int = 500, depth: int = 32, seed: int = 0) -> Summary:
    rng = random.Random(seed)
    summary = Summary("tsu")
    methods = ["m1", "m2", "m3"]
    foci = ["dld", "aux"]
    for i in range(cases):
        h = random_service(rng, methods)
        x = random_thread(rng, 4, foci, methods)
        y = random_thread(rng, 4, foci, methods)
        m = rng.choice(methods)
        f, g = "dld", "aux"

        ok = use(STOP, f, h) is STOP
        summary.record(ok, f"case {i}: TSU1")
        ok = use(DEADLOCK, f, h) is DEADLOCK
        summary.record(ok, f"case {i}: TSU2")

        lhs = use(Post(TAU, x, y), f, h)
        inner = use(x, f, h)
        summary.record(thread_equal(lhs, Post(TAU, inner, inner), depth),
                       f"case {i}: TSU3")

        lhs = use(Post(Call(g, m), x, y), f, h)
        rhs = Post(Call(g, m), use(x, f, h), use(y, f, h))
        summary.record(thread_equal(lhs, rhs, depth), f"case {i}: TSU4")

        reply = h.reply(m)
        lhs = use(Post(Call(f, m), x, y), f, h)
        if reply is BLOCKED or reply == BLOCKED:
            summary.record(lhs is DEADLOCK, f"case {i}: TSU7")
        else:
            branch = x if reply else y
            inner = use(branch, f, h.derive(m))
            axiom = "TSU5" if reply else "TSU6"
            summary.record(thread_equal(lhs, Post(TAU, inner, inner), depth),
                           f"case {i}: {axiom}")

        # blocked replies are absorbing along any method sequence
        svc = random_service(rng, methods)
        seen_blocked = False
        absorbed = True
        for _ in range(20):
            m2 = rng.choice(methods)
            r = svc.reply(m2)
            if seen_blocked and r is not BLOCKED:
                absorbed = False
                break
            if r is BLOCKED:
                seen_blocked = True
            svc = svc.derive(m2)
        summary.record(absorbed, f"case {i}: blocked absorption")
    return summary


SUITES = {
    "axioms": suite_axioms,
    "thm1": suite_thm1,
    "thm2": suite_thm2,
    "thm3": suite_thm3,
    "gc-cross": suite_gc_cross,
    "tsu": suite_tsu,
}
