"""Shared test fixtures: fields, standard diagrams and built amalgams."""

import os
from pathlib import Path

import pytest

# Keep runs quiet and reproducible regardless of a developer's .env
os.environ.setdefault("LOG_LEVEL", "WARNING")
os.environ.setdefault("DEFAULT_SEED", "0")

from ctgroups.core.field import make_field  # noqa: E402
from ctgroups.models.coords import ACoord, DirectedEdge, Pointing  # noqa: E402
from ctgroups.models.diagram import Diagram  # noqa: E402
from ctgroups.services.amalgam_service import build_amalgam  # noqa: E402
from ctgroups.services.diagram_service import cycle_diagram, path_diagram, theta_diagram  # noqa: E402

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA


# --- fields ---

@pytest.fixture
def gf4():
    return make_field(2, 2)


@pytest.fixture
def gf5():
    return make_field(5)


@pytest.fixture
def gf8():
    return make_field(2, 3)


@pytest.fixture
def gf9():
    return make_field(3, 2)


# --- diagrams ---

@pytest.fixture
def a2() -> Diagram:
    return path_diagram(2)


@pytest.fixture
def a3() -> Diagram:
    return path_diagram(3)


@pytest.fixture
def a4() -> Diagram:
    return path_diagram(4)


@pytest.fixture
def c4() -> Diagram:
    return cycle_diagram(4)


@pytest.fixture
def c5() -> Diagram:
    return cycle_diagram(5)


@pytest.fixture
def c6() -> Diagram:
    return cycle_diagram(6)


@pytest.fixture
def theta() -> Diagram:
    return theta_diagram()


@pytest.fixture
def triangle() -> Diagram:
    return Diagram(vertices=("x", "y", "z"), edges=(("x", "y"), ("y", "z"), ("z", "x")))


# --- amalgams ---

def twisted_c4(m: int, eps: int = 1, r: int = 0) -> Pointing:
    """Trivial everywhere except delta_(4,1) = (eps, r)."""
    return Pointing.from_mapping(m, {DirectedEdge("4", "1"): ACoord(eps, r, m)})


@pytest.fixture
def trivial_c4_gf4(c4, gf4):
    return build_amalgam(c4, Pointing.trivial(gf4.m), gf4)


@pytest.fixture
def twisted_c4_gf4(c4, gf4):
    return build_amalgam(c4, twisted_c4(gf4.m), gf4)


@pytest.fixture
def trivial_a3_gf4(a3, gf4):
    return build_amalgam(a3, Pointing.trivial(gf4.m), gf4)
