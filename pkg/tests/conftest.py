import pytest

from gmpdirac import tables
from gmpdirac.model import PotentialParams, RelativisticContext, Symmetry, kappa_from_label


def table_states(table_id):
    """(p, ctx, q, printed) for every valence (5) or hole (6) table row."""
    symmetry = Symmetry.SPIN if table_id == 5 else Symmetry.PSEUDOSPIN
    out = []
    for row in tables.load_golden(table_id):
        p = PotentialParams(15.0, float(row["alpha"]), float(row["r_e"]))
        ctx = RelativisticContext(1.0, float(row.get("C_ps", 0.0)))
        out.append((p, ctx, kappa_from_label(row["label"], symmetry), float(row["energy"])))
    return out


@pytest.fixture(scope="session")
def valence_states():
    return table_states(5)


@pytest.fixture(scope="session")
def hole_states():
    return table_states(6)
