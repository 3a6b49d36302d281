import json

import pytest

from latwb.order import FiniteLattice, FinitePoset, boolean_cube, chain, m3, n5


@pytest.fixture
def diamond():
    """0 < x,y < 1, the smallest lattice with an incomparable pair."""
    return FiniteLattice.from_relation(
        ("0", "x", "y", "1"), [("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")]
    )


@pytest.fixture
def write_doc(tmp_path):
    def _write(data, name="doc.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return _write
