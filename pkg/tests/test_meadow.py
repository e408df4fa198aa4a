import pytest

from dld.meadow import Meadow


def brute_inverse(x, p):
    for y in range(p):
        if (x * y) % p == 1:
            return y
    return 0


def test_examples():
    assert Meadow(11).add(7, 8) == 4
    assert Meadow(7).inv(3) == brute_inverse(3, 7) == 5
    assert Meadow(11).neg(3) == 8
    assert Meadow(11).inv(0) == 0


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_field_axioms_exhaustive(p):
    md = Meadow(p)
    xs = range(p)
    for x in xs:
        assert md.add(x, 0) == x
        assert md.mul(x, 1 % p) == x
        assert md.mul(x, 0) == 0
        assert md.add(x, md.neg(x)) == 0
        for y in xs:
            assert md.add(x, y) == md.add(y, x)
            assert md.mul(x, y) == md.mul(y, x)
            for z in xs:
                assert md.add(md.add(x, y), z) == md.add(x, md.add(y, z))
                assert md.mul(md.mul(x, y), z) == md.mul(x, md.mul(y, z))
                assert md.mul(x, md.add(y, z)) == md.add(md.mul(x, y), md.mul(x, z))


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_meadow_laws_exhaustive(p):
    md = Meadow(p)
    assert md.inv(0) == 0
    for x in range(p):
        assert md.inv(md.inv(x)) == x
        assert md.mul(md.mul(x, x), md.inv(x)) == x
        assert md.inv(x) == brute_inverse(x, p)
