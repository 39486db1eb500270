import pytest

from groupomega.groups import parse_group_spec

# (spec, p) for every p-group used by the cross-checks
PGROUP_CORPUS = [
    ("cyclic:2", 2),
    ("abelian:2,2", 2),
    ("abelian:2,2,2", 2),
    ("abelian:2,2,2,2", 2),
    ("abelian:2,2,2,2,2", 2),
    ("abelian:2,2,2,2,2,2", 2),
    ("cyclic:4", 2),
    ("cyclic:8", 2),
    ("cyclic:9", 3),
    ("cyclic:27", 3),
    ("abelian:4,4", 2),
    ("abelian:3,3,3", 3),
    ("ut:3,2", 2),
    ("ut:3,3", 3),
    ("ut:4,2", 2),
]

_cache: dict = {}


def group(spec):
    """Parsed groups are cached; they are immutable."""
    if spec not in _cache:
        _cache[spec] = parse_group_spec(spec)
    return _cache[spec]


@pytest.fixture(params=PGROUP_CORPUS, ids=[s for s, _ in PGROUP_CORPUS])
def pgroup(request):
    spec, p = request.param
    return group(spec), p


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
