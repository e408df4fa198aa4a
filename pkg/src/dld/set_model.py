"""Set-based semantics: states as map triples (sigma, zeta, xi).

sigma maps every spot to an atom or None; zeta maps each in-use atom to
its field map (field -> atom or None); xi maps each in-use atom to its
value or None.  None is an explicit absent marker inside map codomains,
distinct from "not in the domain": dom(zeta) is the set of atoms in
use, whether or not anything links to them.
"""

from __future__ import annotations

from .actions import Act
from .errors import DldError
from .meadow import Meadow
from .universe import Universe


class SetState:
    """Immutable map-triple state over a universe."""

    __slots__ = ("universe", "sigma", "zeta", "xi", "_key")

    def __init__(self, universe: Universe, sigma: dict, zeta: dict, xi: dict):
        self.universe = universe
        self.sigma = {s: sigma.get(s) for s in universe.spots}
        self.zeta = {a: dict(fm) for a, fm in zeta.items()}
        self.xi = dict(xi)
        self._key = (
            tuple(self.sigma[s] for s in universe.spots),
            tuple(sorted((a, tuple(sorted(fm.items(), key=_field_key)))
                         for a, fm in self.zeta.items())),
            tuple(sorted(self.xi.items())),
        )

    @classmethod
    def empty(cls, universe: Universe) -> "SetState":
        return cls(universe, {}, {}, {})

    def check_invariants(self):
        if set(self.zeta) != set(self.xi):
            raise DldError("dom(zeta) != dom(xi)")
        for s, a in self.sigma.items():
            if a is not None and a not in self.zeta:
                raise DldError(f"spot {s} points outside dom(zeta)")
        for a, fm in self.zeta.items():
            for f, b in fm.items():
                if b is not None and b not in self.zeta:
                    raise DldError(f"field {a}.{f} points outside dom(zeta)")
        return self

    def replace(self, sigma=None, zeta=None, xi=None) -> "SetState":
        return SetState(self.universe,
                        self.sigma if sigma is None else sigma,
                        self.zeta if zeta is None else zeta,
                        self.xi if xi is None else xi)

    def describe(self) -> str:
        """Debug rendering as three labelled blocks."""
        spots = ", ".join(f"{s}->{v if v is not None else '_'}"
                          for s, v in self.sigma.items())
        zeta = "; ".join(
            f"{a}:{{" + ", ".join(f"{f}->{v if v is not None else '_'}"
                                  for f, v in sorted(fm.items())) + "}"
            for a, fm in sorted(self.zeta.items()))
        xi = ", ".join(f"{a}={v if v is not None else '_'}"
                       for a, v in sorted(self.xi.items()))
        return f"sigma {spots} / zeta {zeta} / xi {xi}"

    def __eq__(self, other):
        return (isinstance(other, SetState) and self._key == other._key
                and self.universe == other.universe)

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"SetState({self.describe()})"


def _field_key(item):
    return item[0]


def _def_spot(st: SetState, s: str) -> bool:
    return st.sigma[s] is not None


def _def_value(st: SetState, s: str) -> bool:
    a = st.sigma[s]
    return a is not None and st.xi[a] is not None


def _set_spot(st: SetState, s: str, value) -> SetState:
    sigma = dict(st.sigma)
    sigma[s] = value
    return st.replace(sigma=sigma)


def _set_field(st: SetState, a: str, f: str, value) -> SetState:
    zeta = {x: dict(fm) for x, fm in st.zeta.items()}
    zeta[a][f] = value
    return st.replace(zeta=zeta)


def _drop_field(st: SetState, a: str, f: str) -> SetState:
    zeta = {x: dict(fm) for x, fm in st.zeta.items()}
    del zeta[a][f]
    return st.replace(zeta=zeta)


def _set_value(st: SetState, a: str, value) -> SetState:
    xi = dict(st.xi)
    xi[a] = value
    return st.replace(xi=xi)


# --- effect and yield of the basic actions ----------------------------------

def effect_set(act: Act, st: SetState) -> SetState:
    name, args = act.name, act.args
    if name == "getatobj":
        fresh = st.universe.choose_fresh(st.zeta)
        if fresh is None:
            return st
        sigma = dict(st.sigma)
        sigma[args[0]] = fresh
        zeta = {x: dict(fm) for x, fm in st.zeta.items()}
        zeta[fresh] = {}
        xi = dict(st.xi)
        xi[fresh] = None
        return st.replace(sigma=sigma, zeta=zeta, xi=xi)
    if name == "setspot":
        return _set_spot(st, args[0], st.sigma[args[1]])
    if name == "clrspot":
        return _set_spot(st, args[0], None)
    if name in ("equaltst", "undeftst", "hasfield", "eqvaltst", "undefvtst"):
        return st
    if name == "addfield":
        s, f = args
        a = st.sigma[s]
        if a is not None and f not in st.zeta[a]:
            return _set_field(st, a, f, None)
        return st
    if name == "rmvfield":
        s, f = args
        a = st.sigma[s]
        if a is not None and f in st.zeta[a]:
            return _drop_field(st, a, f)
        return st
    if name == "setfield":
        s, f, t = args
        a = st.sigma[s]
        if a is not None and f in st.zeta[a]:
            return _set_field(st, a, f, st.sigma[t])
        return st
    if name == "clrfield":
        s, f = args
        a = st.sigma[s]
        if a is not None and f in st.zeta[a]:
            return _set_field(st, a, f, None)
        return st
    if name == "getfield":
        s, t, f = args
        a = st.sigma[t]
        if a is not None and f in st.zeta[a]:
            return _set_spot(st, s, st.zeta[a][f])
        return st
    md = Meadow(st.universe.modulus)
    if name in ("asszero", "assone"):
        a = st.sigma[args[0]]
        if a is not None:
            return _set_value(st, a, md.zero() if name == "asszero" else md.one())
        return st
    if name in ("assadd", "assmul"):
        s, t, u = args
        if _def_spot(st, s) and _def_value(st, t) and _def_value(st, u):
            n = st.xi[st.sigma[t]]
            m = st.xi[st.sigma[u]]
            value = md.add(n, m) if name == "assadd" else md.mul(n, m)
            return _set_value(st, st.sigma[s], value)
        return st
    if name in ("assneg", "assinv"):
        s, t = args
        if _def_spot(st, s) and _def_value(st, t):
            n = st.xi[st.sigma[t]]
            value = md.neg(n) if name == "assneg" else md.inv(n)
            return _set_value(st, st.sigma[s], value)
        return st
    raise DldError(f"not a basic action: {name}")


def yield_set(act: Act, st: SetState) -> bool:
    name, args = act.name, act.args
    if name == "getatobj":
        return len(st.zeta) < len(st.universe.atoms)
    if name in ("setspot", "clrspot"):
        return True
    if name == "equaltst":
        return st.sigma[args[0]] == st.sigma[args[1]]
    if name == "undeftst":
        return st.sigma[args[0]] is None
    if name == "addfield":
        a = st.sigma[args[0]]
        return a is not None and args[1] not in st.zeta[a]
    if name in ("rmvfield", "hasfield", "setfield", "clrfield"):
        a = st.sigma[args[0]]
        return a is not None and args[1] in st.zeta[a]
    if name == "getfield":
        a = st.sigma[args[1]]
        return a is not None and args[2] in st.zeta[a]
    if name in ("asszero", "assone"):
        return _def_spot(st, args[0])
    if name in ("assadd", "assmul"):
        return (_def_spot(st, args[0]) and _def_value(st, args[1])
                and _def_value(st, args[2]))
    if name in ("assneg", "assinv"):
        return _def_spot(st, args[0]) and _def_value(st, args[1])
    if name == "eqvaltst":
        # amended with the definedness conjunct: the table condition is
        # literally true when both values are absent, but the rewrite
        # semantics replies False there
        s, t = args
        if not (_def_spot(st, s) and _def_spot(st, t)):
            return False
        vs = st.xi[st.sigma[s]]
        return vs is not None and vs == st.xi[st.sigma[t]]
    if name == "undefvtst":
        return _def_spot(st, args[0]) and not _def_value(st, args[0])
    raise DldError(f"not a basic action: {name}")


# --- reachability and reclamation -------------------------------------------

def reach_from(a: str, zeta: dict) -> frozenset:
    """Field-successor closure of a, including a itself."""
    seen = {a}
    frontier = [a]
    while frontier:
        x = frontier.pop()
        for b in zeta.get(x, {}).values():
            if b is not None and b not in seen:
                seen.add(b)
                frontier.append(b)
    return frozenset(seen)


def reach_atoms(st: SetState) -> frozenset:
    out: set = set()
    for a in st.sigma.values():
        if a is not None and a not in out:
            out |= reach_from(a, st.zeta)
    return frozenset(out)


def incycle(zeta: dict) -> frozenset:
    out = set()
    for a, fm in zeta.items():
        for b in fm.values():
            if b is not None and a in reach_from(b, zeta):
                out.add(a)
                break
    return frozenset(out)


def clear_spot_refs(a: str, sigma: dict) -> dict:
    return {s: (None if v == a else v) for s, v in sigma.items()}


def clear_field_refs(a: str, zeta: dict) -> dict:
    return {x: {f: (None if v == a else v) for f, v in fm.items()}
            for x, fm in zeta.items()}


def sd_set(a, st: SetState) -> SetState:
    """Drop a from the in-use domain when it is unreachable; any field
    entries still targeting a (necessarily owned by unreachable atoms)
    are deleted so the state stays within its invariants."""
    if a is None or a not in st.zeta or a in reach_atoms(st):
        return st
    zeta = {x: {f: v for f, v in fm.items() if v != a}
            for x, fm in st.zeta.items() if x != a}
    xi = {x: v for x, v in st.xi.items() if x != a}
    return st.replace(zeta=zeta, xi=xi)


def ud_set(a, st: SetState) -> SetState:
    if a is None:
        return st
    return sd_set(a, st.replace(sigma=clear_spot_refs(a, st.sigma),
                                zeta=clear_field_refs(a, st.zeta)))


def _restrict(st: SetState, kept) -> SetState:
    zeta = {a: fm for a, fm in st.zeta.items() if a in kept}
    xi = {a: v for a, v in st.xi.items() if a in kept}
    return st.replace(zeta=zeta, xi=xi)


def _rgc_kept(st: SetState, literal: bool) -> frozenset:
    base = reach_atoms(st)
    cyclic = incycle(st.zeta)
    if literal:
        return base | cyclic
    out = set(base)
    for a in cyclic:
        if a not in out:
            out |= reach_from(a, st.zeta)
    return frozenset(out)


def effect_set_reclaim(act: Act, st: SetState, *, rgc_literal: bool = False) -> SetState:
    """Reclamation on map triples.  `rgc_literal` switches rgc to the
    bare reach-or-cycle kept set, which can strand field entries; the
    default closes the kept set under field successors, matching the
    rewrite collector."""
    name, args = act.name, act.args
    if name == "fgc":
        return _restrict(st, reach_atoms(st))
    if name == "rgc":
        return _restrict(st, _rgc_kept(st, rgc_literal))
    if act.is_basic:
        return effect_set(act, st)
    if name in ("sdgetatobj", "sdsetspot", "sdclrspot", "sdgetfield"):
        d = st.sigma[args[0]]
        return sd_set(d, effect_set(Act(_SET_UNDER[name], args), st))
    if name in ("sdsetfield", "sdclrfield"):
        d = _old_field_content(st, args[0], args[1])
        return sd_set(d, effect_set(Act(_SET_UNDER[name], args), st))
    if name in ("udgetatobj", "udsetspot", "udclrspot", "udgetfield"):
        d = st.sigma[args[0]]
        return ud_set(d, effect_set(Act(_SET_UNDER[name], args), st))
    if name in ("udsetfield", "udclrfield"):
        d = _old_field_content(st, args[0], args[1])
        return ud_set(d, effect_set(Act(_SET_UNDER[name], args), st))
    raise DldError(f"unknown action: {name}")


def yield_set_reclaim(act: Act, st: SetState) -> bool:
    if act.name in ("fgc", "rgc"):
        return True
    if act.is_basic:
        return yield_set(act, st)
    return yield_set(Act(_SET_UNDER[act.name], act.args), st)


_SET_UNDER = {
    "sdgetatobj": "getatobj", "sdsetspot": "setspot", "sdclrspot": "clrspot",
    "sdsetfield": "setfield", "sdclrfield": "clrfield", "sdgetfield": "getfield",
    "udgetatobj": "getatobj", "udsetspot": "setspot", "udclrspot": "clrspot",
    "udsetfield": "setfield", "udclrfield": "clrfield", "udgetfield": "getfield",
}


def _old_field_content(st: SetState, s: str, f: str):
    a = st.sigma[s]
    if a is None or f not in st.zeta[a]:
        return None
    return st.zeta[a][f]


# --- tightness ---------------------------------------------------------------

def _visible_atoms(st: SetState) -> set:
    out = set()
    for a in st.sigma.values():
        if a is not None:
            out.add(a)
    for a, fm in st.zeta.items():
        if fm:
            out.add(a)
        for b in fm.values():
            if b is not None:
                out.add(b)
    for a, v in st.xi.items():
        if v is not None:
            out.add(a)
    return out


def tighten(st: SetState) -> SetState:
    """Drop in-use atoms that no retrieved link would mention: nothing
    points at them, they own no fields and carry no value."""
    return _restrict(st, _visible_atoms(st))


def is_tight(st: SetState) -> bool:
    return _visible_atoms(st) == set(st.zeta)
