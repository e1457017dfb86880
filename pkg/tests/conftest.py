import pytest
from hypothesis import settings

from confequiv.groups import cyclic, dihedral, direct_product, named_group, quaternion, symmetric

settings.register_profile("default", derandomize=True, deadline=None, max_examples=100)
settings.load_profile("default")

# one representative of every isomorphism type of order <= 8
SMALL_GROUPS = {
    "Z1": lambda: cyclic(1),
    "Z2": lambda: cyclic(2),
    "Z3": lambda: cyclic(3),
    "Z4": lambda: cyclic(4),
    "V4": lambda: named_group("V4"),
    "Z5": lambda: cyclic(5),
    "Z6": lambda: cyclic(6),
    "S3": lambda: symmetric(3),
    "Z7": lambda: cyclic(7),
    "Z8": lambda: cyclic(8),
    "Z2xZ4": lambda: direct_product(cyclic(2), cyclic(4)),
    "Z2^3": lambda: named_group("Z2^3"),
    "D4": lambda: dihedral(4),
    "Q8": lambda: quaternion(),
}

_cache = {}


def small_group(name):
    if name not in _cache:
        _cache[name] = SMALL_GROUPS[name]()
    return _cache[name]


@pytest.fixture(params=sorted(SMALL_GROUPS))
def any_small_group(request):
    return small_group(request.param)


# acceptance criteria report: one line per criterion at the end of the run
ACCEPTANCE_LINES: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[num])
