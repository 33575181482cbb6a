import os
from pathlib import Path
from typing import Callable

import pytest

from quantum_trace.surface import SplitStructure, Triangulation, parse_surface, split
from quantum_trace.tangle import TanglePresentation, parse_tangle

CORPUS_DIR = os.path.join(os.path.dirname(os.path.realpath(__file__)), "../corpus")
GOLDEN_DIR = os.path.join(os.path.dirname(os.path.realpath(__file__)), "golden")


def read_surface(name: str) -> Triangulation:
    path = Path(CORPUS_DIR) / name
    return parse_surface(path.read_text(), str(path))


@pytest.fixture
def corpus_dir() -> str:
    return CORPUS_DIR


@pytest.fixture
def torus() -> Triangulation:
    return read_surface("torus.surf")


@pytest.fixture
def torus_split(torus: Triangulation) -> SplitStructure:
    return split(torus)


@pytest.fixture
def triangle() -> Triangulation:
    return read_surface("triangle.surf")


@pytest.fixture
def triangle_split(triangle: Triangulation) -> SplitStructure:
    return split(triangle)


@pytest.fixture
def selffolded() -> Triangulation:
    return read_surface("selffolded.surf")


@pytest.fixture
def load() -> Callable[[str, str], TanglePresentation]:
    """Load a corpus tangle on a corpus surface."""

    def _load(surface_name: str, tangle_name: str) -> TanglePresentation:
        surface = read_surface(surface_name)
        path = Path(CORPUS_DIR) / tangle_name
        return parse_tangle(path.read_text(), split(surface), str(path))

    return _load
