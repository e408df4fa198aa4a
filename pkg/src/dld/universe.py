"""Universe of names a computation runs over.

A universe fixes the spot names, field names, atom identifiers and the
value modulus once; every state, action and parser checks names against
it.  Declaration order is the total order used for canonical rendering
and for the fresh-atom choice function (least unused atom).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DldError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Universe:
    spots: tuple[str, ...]
    fields: tuple[str, ...]
    atoms: tuple[str, ...]
    modulus: int
    spot_index: dict = field(init=False, repr=False, compare=False)
    field_index: dict = field(init=False, repr=False, compare=False)
    atom_index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for kind, names in (("spot", self.spots), ("field", self.fields),
                            ("atom", self.atoms)):
            if not names:
                raise DldError(f"universe needs at least one {kind}")
            if len(set(names)) != len(names):
                raise DldError(f"duplicate {kind} name in universe")
        if not _is_prime(self.modulus):
            raise DldError(f"modulus must be prime, got {self.modulus}")
        object.__setattr__(self, "spot_index",
                           {n: i for i, n in enumerate(self.spots)})
        object.__setattr__(self, "field_index",
                           {n: i for i, n in enumerate(self.fields)})
        object.__setattr__(self, "atom_index",
                           {n: i for i, n in enumerate(self.atoms)})

    def choose_fresh(self, used) -> str | None:
        """Least atom (in declaration order) not in `used`, or None."""
        for a in self.atoms:
            if a not in used:
                return a
        return None

    def check_spot(self, name: str) -> str:
        if name not in self.spot_index:
            raise _undeclared("spot", name)
        return name

    def check_field(self, name: str) -> str:
        if name not in self.field_index:
            raise _undeclared("field", name)
        return name

    def check_atom(self, name: str) -> str:
        if name not in self.atom_index:
            raise _undeclared("atom", name)
        return name


def _undeclared(kind, name):
    from .errors import UndeclaredName

    return UndeclaredName(f"undeclared {kind} {name!r}")


_SPOT_POOL = ("s", "t", "u", "v", "w", "x", "y", "z")
_FIELD_POOL = ("f", "g", "h", "k", "l", "m", "n", "o")


def small_universe(n_spots: int, n_fields: int, n_atoms: int,
                   modulus: int = 2) -> Universe:
    """Generated universe for exhaustive suites: spots s,t,u,...; fields
    f,g,h,...; atoms #0,#1,...."""
    if n_spots > len(_SPOT_POOL) or n_fields > len(_FIELD_POOL):
        raise DldError("generated universe too large; declare names explicitly")
    return Universe(
        spots=_SPOT_POOL[:n_spots],
        fields=_FIELD_POOL[:n_fields],
        atoms=tuple(f"#{i}" for i in range(n_atoms)),
        modulus=modulus,
    )
