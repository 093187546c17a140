import pytest

from zigzag.quiver import build_named_algebra, loop
from zigzag.schema import Check


def failures(checks):
    return [c for c in checks if c.failed]


@pytest.fixture
def zigzag3():
    return build_named_algebra("zigzag", 3)


@pytest.fixture
def zigzag4():
    return build_named_algebra("zigzag", 4)


@pytest.fixture
def paths():
    """Index lookup by path tuple, with c_i spelled as ('c', i)."""

    def lookup(alg, *words):
        out = []
        for w in words:
            if w[0] == "c":
                out.append(loop(alg, w[1]).vec.bit_length() - 1)
            else:
                out.append(alg.index[tuple(w)])
        return tuple(out) if len(out) > 1 else out[0]

    return lookup


def assert_all_pass(checks):
    bad = failures(checks)
    assert not bad, [(c.name, c.witness) for c in bad]
    assert all(isinstance(c, Check) for c in checks)
