import random
import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from algebra.src.tables import LetterMap  # noqa: E402
from fixtures.src import algebras  # noqa: E402
from forest.src.trees import Context, Forest, Tree  # noqa: E402
from src.logging_utils import quiet_logger  # noqa: E402

GOLDENS = ROOT / "tests" / "goldens"


@st.composite
def forests(draw, alphabet=("a", "b", "c"), max_height=3, max_width=3):
    if max_height == 0:
        return Forest()
    width = draw(st.integers(0, max_width))
    trees = [Tree(draw(st.sampled_from(alphabet)), draw(forests(alphabet, max_height - 1, max_width)))
             for _ in range(width)]
    return Forest(trees)


@st.composite
def contexts(draw, alphabet=("a", "b", "c"), max_depth=2):
    depth = draw(st.integers(0, max_depth))
    context = Context(draw(forests(alphabet, 2, 2)))
    for _ in range(depth):
        context = Context(draw(forests(alphabet, 2, 2)), draw(st.sampled_from(alphabet)), context)
    return context


@pytest.fixture
def logger():
    return quiet_logger()


@pytest.fixture
def rng():
    return random.Random(0)


@pytest.fixture(scope="session")
def bool_or():
    return algebras.bool_or()


@pytest.fixture(scope="session")
def bool_or_letters(bool_or):
    return LetterMap(("a", "b"), (bool_or.v_index("c1"), bool_or.v_index("id")))


@pytest.fixture(scope="session")
def sibling_pair_detector():
    return algebras.sibling_pair_detector()


@pytest.fixture(scope="session")
def bool_or_neg():
    return algebras.bool_or_neg()
