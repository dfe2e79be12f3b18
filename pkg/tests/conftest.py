import os
import random
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from affinehecke import weyl
from affinehecke.coeff import RatFunc, to_rat
from affinehecke.hecke import HeckeConfig, HeckeElement

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


small_rats = st.fractions(min_value=-5, max_value=5, max_denominator=6).map(to_rat)
nonzero_rats = small_rats.filter(lambda x: x != 0)


@st.composite
def polys(draw, max_deg=3):
    return [draw(small_rats) for _ in range(draw(st.integers(0, max_deg)) + 1)]


@st.composite
def ratfuncs(draw, max_deg=3):
    num = draw(polys(max_deg))
    den = draw(polys(2))
    if all(c == 0 for c in den):
        den = [1]
    return RatFunc.from_coeffs(num, den)


def random_window(rng: random.Random, rank: int, spread: int = 2) -> tuple:
    perm = list(range(1, rank + 1))
    rng.shuffle(perm)
    return tuple(p + rank * rng.randint(-spread, spread) for p in perm)


def random_coeff(rng: random.Random, config: HeckeConfig):
    c = to_rat(rng.randint(-4, 4)) / rng.randint(1, 3)
    if config.is_symbolic and rng.random() < 0.5:
        v = RatFunc.v()
        c = (v * rng.randint(-3, 3) + c) / (v + rng.randint(1, 3)) if rng.random() < 0.5 else v * c + 1
    return c


def random_element(rng: random.Random, config: HeckeConfig, max_terms: int = 3,
                   spread: int = 1) -> HeckeElement:
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        terms[random_window(rng, config.rank, spread)] = random_coeff(rng, config)
    return HeckeElement(config, terms)


def windows(rank: int, spread: int = 3):
    return st.tuples(st.permutations(range(1, rank + 1)),
                     st.lists(st.integers(-spread, spread), min_size=rank, max_size=rank)
                     ).map(lambda pk: tuple(p + rank * k for p, k in zip(*pk)))


def ball_elements(rank: int, max_len: int):
    return sorted(weyl.bfs_ball(rank, max_len))


# -- acceptance reporting -----------------------------------------------------

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): one numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = "PASS" if report.passed else "FAIL"
        prev = _ACCEPTANCE.get(number, (title, "PASS"))[1]
        _ACCEPTANCE[number] = (title, "FAIL" if "FAIL" in (prev, status) else "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, status = _ACCEPTANCE[number]
        terminalreporter.write_line(f"[{status}] {number:>2}. {title}")
