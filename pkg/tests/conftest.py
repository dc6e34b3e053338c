from functools import lru_cache
from pathlib import Path

import pytest

from ybsegre.solution import enumerate_solutions, from_mapping, load_solution

DATA = Path(__file__).parent / "data"


def _x():
    moves = {(2, 1): (0, 2), (2, 0): (1, 2), (1, 0): (0, 1)}
    moves.update({v: k for k, v in moves.items()})
    return from_mapping(3, moves, ("x1", "x2", "x3"))


def _y():
    return from_mapping(2, {(1, 1): (0, 0), (0, 0): (1, 1)}, ("y1", "y2"))


@lru_cache(maxsize=None)
def solutions(n):
    return tuple(enumerate_solutions(n))


def corpus(max_n):
    return [qs for n in range(1, max_n + 1) for qs in solutions(n)]


@pytest.fixture
def X():
    return _x()


@pytest.fixture
def Y():
    return _y()


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def x_file():
    return str(DATA / "x_r1.json")


@pytest.fixture
def y_file():
    return str(DATA / "y_r2.json")


@pytest.fixture
def flip_file():
    return str(DATA / "flip2.json")

