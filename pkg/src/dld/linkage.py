"""Data linkages: canonical duplicate-free sets of atomic links.

An atomic link is one of four shapes, encoded as a plain tuple whose
first element is a numeric tag (the tag order is also the canonical
rendering order):

    (SPOT,  s, a)      link via spot s to atom a          "s:a"
    (PFLD,  a, f)      partial link from atom a, field f  "a.f:?"
    (FLD,   a, f, b)   link from atom a via field f to b  "a.f:b"
    (VAL,   a, n)      value n associated with atom a     "a=n"

A state is a DataLinkage: a set of such links over a fixed universe.
Combination is union; overriding combination replaces same-keyed links.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DldError
from .universe import Universe

SPOT, PFLD, FLD, VAL = 0, 1, 2, 3

Link = tuple


def slink(s: str, a: str) -> Link:
    return (SPOT, s, a)


def pflink(a: str, f: str) -> Link:
    return (PFLD, a, f)


def flink(a: str, f: str, b: str) -> Link:
    return (FLD, a, f, b)


def valass(a: str, n: int) -> Link:
    return (VAL, a, n)


def override_key(link: Link) -> tuple:
    """The position a link occupies for overriding purposes.

    Spot links key on their spot; partial and full field links on their
    (atom, field) pair; value associations on their atom.
    """
    tag = link[0]
    if tag == SPOT:
        return (SPOT, link[1])
    if tag == PFLD or tag == FLD:
        return (PFLD, link[1], link[2])
    return (VAL, link[1])


def link_atoms(link: Link) -> tuple:
    """Atoms occurring in one link."""
    tag = link[0]
    if tag == SPOT:
        return (link[2],)
    if tag == FLD:
        return (link[1], link[3])
    return (link[1],)


def render_link(link: Link) -> str:
    tag = link[0]
    if tag == SPOT:
        return f"{link[1]}:{link[2]}"
    if tag == PFLD:
        return f"{link[1]}.{link[2]}:?"
    if tag == FLD:
        return f"{link[1]}.{link[2]}:{link[3]}"
    return f"{link[1]}={link[2]}"


class DataLinkage:
    """Immutable set of atomic links over a universe.

    Keeps the construction order of its links so that tests can probe
    order-independence of the semantics; equality and rendering only
    look at the set.
    """

    __slots__ = ("universe", "links", "_order", "_hash")

    def __init__(self, universe: Universe, links=()):
        seen = set()
        ordered = []
        for link in links:
            if link not in seen:
                seen.add(link)
                ordered.append(link)
        self.universe = universe
        self.links = frozenset(seen)
        self._order = tuple(ordered)
        self._hash = hash(self.links)

    @classmethod
    def empty(cls, universe: Universe) -> "DataLinkage":
        return cls(universe, ())

    def iter_links(self):
        return self._order

    def with_links(self, links) -> "DataLinkage":
        return DataLinkage(self.universe, links)

    def sort_key(self, link: Link):
        u = self.universe
        tag = link[0]
        if tag == SPOT:
            return (SPOT, u.spot_index[link[1]], u.atom_index[link[2]])
        if tag == PFLD:
            return (PFLD, u.atom_index[link[1]], u.field_index[link[2]])
        if tag == FLD:
            return (FLD, u.atom_index[link[1]], u.field_index[link[2]],
                    u.atom_index[link[3]])
        return (VAL, u.atom_index[link[1]], link[2])

    def canonical(self) -> tuple:
        return tuple(sorted(self.links, key=self.sort_key))

    def canonical_text(self) -> str:
        if not self.links:
            return "0"
        return ", ".join(render_link(x) for x in self.canonical())

    def atobj(self) -> frozenset:
        out = set()
        for link in self._order:
            out.update(link_atoms(link))
        return frozenset(out)

    def is_deterministic(self) -> bool:
        keys = {override_key(x) for x in self.links}
        return len(keys) == len(self.links)

    def combine(self, other: "DataLinkage") -> "DataLinkage":
        self._check_same(other)
        return DataLinkage(self.universe, self._order + other._order)

    def override(self, other: "DataLinkage") -> "DataLinkage":
        """Overriding combination, the closed form of the axioms.

        Distributing over the right operand bottoms out at single links,
        so a left link is dropped only when every right link claims its
        key: with one distinct right key, links on that key go; with two
        or more distinct right keys, every left link survives some
        branch and the result is a plain union.
        """
        self._check_same(other)
        if not other.links:
            return self
        keys = {override_key(y) for y in other.links}
        if len(keys) == 1:
            kept = [x for x in self._order if override_key(x) not in keys]
        else:
            kept = list(self._order)
        return DataLinkage(self.universe, tuple(kept) + other._order)

    def _check_same(self, other: "DataLinkage"):
        if self.universe is not other.universe and self.universe != other.universe:
            raise DldError("linkages belong to different universes")

    def __contains__(self, link: Link) -> bool:
        return link in self.links

    def __len__(self) -> int:
        return len(self.links)

    def __eq__(self, other) -> bool:
        return (isinstance(other, DataLinkage)
                and self.links == other.links
                and self.universe == other.universe)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"DataLinkage({self.canonical_text()!r})"


def combine(a: DataLinkage, b: DataLinkage) -> DataLinkage:
    return a.combine(b)


def override(a: DataLinkage, b: DataLinkage) -> DataLinkage:
    return a.override(b)


def is_deterministic(l: DataLinkage) -> bool:
    return l.is_deterministic()


def atobj(l: DataLinkage) -> frozenset:
    return l.atobj()


def canonical_text(l: DataLinkage) -> str:
    return l.canonical_text()


# --- terms over linkages ---------------------------------------------------

@dataclass(frozen=True)
class TEmpty:
    pass


@dataclass(frozen=True)
class TLit:
    linkage: DataLinkage


@dataclass(frozen=True)
class TCombine:
    left: object
    right: object


@dataclass(frozen=True)
class TOverride:
    left: object
    right: object


LinkageTerm = object


def normalize(term: LinkageTerm, universe: Universe) -> DataLinkage:
    """Fold a closed term down to its basic (override-free) form."""
    if isinstance(term, TEmpty):
        return DataLinkage.empty(universe)
    if isinstance(term, TLit):
        return term.linkage
    if isinstance(term, TCombine):
        return normalize(term.left, universe).combine(
            normalize(term.right, universe))
    if isinstance(term, TOverride):
        return normalize(term.left, universe).override(
            normalize(term.right, universe))
    raise DldError(f"not a linkage term: {term!r}")
