"""Garbage reclamation: full GC, reference-count-style GC, disposal.

The collectors are worklist fixpoints over the link set.  Moves are
monotone (once a link is enabled it stays enabled within its priority
band), so moving every enabled link per round gives the same result as
any fair one-at-a-time strategy; the `rng` parameter switches to a
randomised one-move-at-a-time strategy so tests can confirm that.
"""

from __future__ import annotations

from .actions import Act
from .linkage import FLD, PFLD, SPOT, VAL, DataLinkage, pflink
from .semantics import (Scan, _spot_def, _spot_nondet, _field_state, effect,
                        yield_)


def _anchor(link) -> str:
    """Atom whose reachability justifies keeping a non-spot link."""
    return link[1]


def _targets(kept) -> set:
    """Atoms that spot links or field links in `kept` point to."""
    out = set()
    for link in kept:
        if link[0] == SPOT:
            out.add(link[2])
        elif link[0] == FLD:
            out.add(link[3])
    return out


def fgc(l: DataLinkage, rng=None) -> DataLinkage:
    """Keep the part reachable from spots; drop everything else.

    Worklist: spot links move unconditionally, any other link moves once
    its anchor is the target of an already-moved link.  Moves stay
    enabled as the kept part grows, so extraction order cannot change
    the result; with `rng` one random enabled move is taken at a time
    instead of a whole round."""
    kept: list = []
    remainder = list(l.iter_links())
    targets: set = set()
    while True:
        moves = [x for x in remainder
                 if x[0] == SPOT or _anchor(x) in targets]
        if not moves:
            return l.with_links(kept)
        if rng is not None:
            moves = [rng.choice(moves)]
        for link in moves:
            remainder.remove(link)
            kept.append(link)
            if link[0] == SPOT:
                targets.add(link[2])
            elif link[0] == FLD:
                targets.add(link[3])


def rgc(l: DataLinkage, rng=None) -> DataLinkage:
    """Repeatedly drop links anchored at atoms with no incoming link.

    The reference count of an atom is the number of spot links and field
    links to it; cycles keep each other alive, so this reclaims strictly
    less than fgc."""
    links = list(l.iter_links())
    if rng is not None:
        rng.shuffle(links)
    while True:
        counts: dict = {}
        for link in links:
            if link[0] == SPOT:
                counts[link[2]] = counts.get(link[2], 0) + 1
            elif link[0] == FLD:
                counts[link[3]] = counts.get(link[3], 0) + 1
        kept = [x for x in links
                if x[0] == SPOT or counts.get(_anchor(x), 0) > 0]
        if len(kept) == len(links):
            return l.with_links(kept)
        links = kept


def safe_dispose(d: str, l: DataLinkage, rng=None) -> DataLinkage:
    """Drop every link involving atom d, unless d is reachable from a
    spot via field links (then nothing changes).

    Three strict stages: first the spot-reachable part is kept (the
    collector's worklist), then the links to d when d turned out to be
    retained, then everything d is not involved in; the rest is
    discarded.  The stages do not feed back: a link kept in a later
    stage never extends the reachable part."""
    kept = list(fgc(l, rng).iter_links())
    kept_set = set(kept)
    retained = d in _targets(kept)
    for link in l.iter_links():
        if link in kept_set:
            continue
        tag = link[0]
        if tag == FLD:
            if (retained and link[3] == d) or (link[1] != d and link[3] != d):
                kept.append(link)
        elif link[1] != d:
            # spot links were all kept in stage one; partial links and
            # value associations stay unless they are d's own
            kept.append(link)
    return l.with_links(kept)


def clear_refs(d: str, l: DataLinkage) -> DataLinkage:
    """Remove spot links to d and turn field links to d into partial
    field links; everything else is untouched."""
    out = []
    for link in l.iter_links():
        tag = link[0]
        if tag == SPOT and link[2] == d:
            continue
        if tag == FLD and link[3] == d:
            out.append(pflink(link[1], link[2]))
            continue
        out.append(link)
    return l.with_links(out)


# --- dispatch for the extended action set -----------------------------------

_UNDERLYING = {
    "sdgetatobj": "getatobj", "sdsetspot": "setspot", "sdclrspot": "clrspot",
    "sdsetfield": "setfield", "sdclrfield": "clrfield", "sdgetfield": "getfield",
    "udgetatobj": "getatobj", "udsetspot": "setspot", "udclrspot": "clrspot",
    "udsetfield": "setfield", "udclrfield": "clrfield", "udgetfield": "getfield",
}


def _spot_target_any(scan: Scan, s: str):
    """First spot target in scan order; the disposal pattern binds one
    even on non-deterministic spots (the outcome does not depend on
    which, since such states are left unchanged and fully reachable)."""
    ts = scan.spot.get(s)
    return ts[0] if ts else None


def _field_target_any(scan: Scan, s: str, f: str):
    a = _spot_target_any(scan, s)
    if a is None:
        return None
    targets = scan.fl.get((a, f))
    return targets[0] if targets else None


def _ud_shielded(scan: Scan, act: Act) -> bool:
    """Extra priority-1 rows of the unsafe-disposal actions."""
    name, args = act.name, act.args
    if name == "udgetatobj" or name == "udclrspot":
        return _spot_nondet(scan, args[0])
    if name == "udsetspot":
        return _spot_nondet(scan, args[0]) or _spot_nondet(scan, args[1])
    if name in ("udsetfield", "udclrfield"):
        s, f = args[0], args[1]
        if _spot_nondet(scan, s):
            return True
        a = _spot_def(scan, s)
        if a is not None:
            targets, has_pf = _field_state(scan, a, f)
            if len(targets) >= 2 or (targets and has_pf):
                return True
        if name == "udsetfield" and _spot_nondet(scan, args[2]):
            return True
        return False
    # udgetfield
    s, t, f = args
    if _spot_nondet(scan, s) or _spot_nondet(scan, t):
        return True
    a = _spot_def(scan, t)
    if a is not None:
        targets, has_pf = _field_state(scan, a, f)
        if len(targets) >= 2 or (targets and has_pf):
            return True
    return False


def _displaced_atom(scan: Scan, act: Act):
    """Atom the action displaces: the old spot content for the spot
    variants and getfield variants, the old field content for the field
    variants.  None when the disposal pattern does not match."""
    name, args = act.name, act.args
    if name in ("sdgetatobj", "sdsetspot", "sdclrspot", "sdgetfield",
                "udgetatobj", "udsetspot", "udclrspot", "udgetfield"):
        return _spot_target_any(scan, args[0])
    return _field_target_any(scan, args[0], args[1])


def effect_dldr(act: Act, l: DataLinkage, rng=None) -> DataLinkage:
    if act.is_basic:
        return effect(act, l)
    if act.name == "fgc":
        return fgc(l, rng)
    if act.name == "rgc":
        return rgc(l, rng)
    scan = Scan(l)
    unsafe = act.name.startswith("ud")
    if unsafe and _ud_shielded(scan, act):
        return l
    d = _displaced_atom(scan, act)
    under = Act(_UNDERLYING[act.name], act.args)
    if d is None:
        return effect(under, l, scan)
    state = effect(under, l, scan)
    if unsafe:
        state = clear_refs(d, state)
    return safe_dispose(d, state, rng)


def yield_dldr(act: Act, l: DataLinkage) -> bool:
    if act.is_basic:
        return yield_(act, l)
    if act.name in ("fgc", "rgc"):
        return True
    return yield_(Act(_UNDERLYING[act.name], act.args), l)
