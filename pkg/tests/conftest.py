import pytest

from dld import Universe
from dld.parsing import parse_linkage
from dld.universe import small_universe


@pytest.fixture
def demo_universe():
    """Universe used by the worked computations: atoms #0..#9, p=11."""
    return Universe(
        spots=("r", "s", "t", "u"),
        fields=("up", "dn", "f", "g"),
        atoms=tuple(f"#{i}" for i in range(10)),
        modulus=11,
    )


@pytest.fixture
def tiny_universe():
    """Exhaustively enumerable universe: 2 spots, 1 field, 2 atoms, p=2."""
    return small_universe(2, 1, 2, 2)


@pytest.fixture
def L(demo_universe):
    def parse(text, u=None):
        return parse_linkage(text, u or demo_universe)
    return parse
