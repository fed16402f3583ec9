import hypothesis.strategies as st
from hypothesis import settings

from gkmfilter.words import AlphabetSpec

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@st.composite
def specs(draw, max_ell=3, max_b=4):
    ell = draw(st.integers(1, max_ell))
    B = tuple(draw(st.lists(st.integers(2, max_b), min_size=ell, max_size=ell)))
    return AlphabetSpec(B)


@st.composite
def spec_and_k(draw, max_ell=3, max_b=4):
    spec = draw(specs(max_ell, max_b))
    return spec, draw(st.integers(0, spec.ell))


def words(spec, *texts):
    """Parse short word literals such as '0g' or '1-'."""
    out = tuple(spec.parse_word(t) for t in texts)
    return out[0] if len(out) == 1 else out


# one line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
