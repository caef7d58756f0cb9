import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hilbvertex.corealg import FieldElem, partitions_upto

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def laurent_polys(draw, max_terms=4, max_exp=3):
    """Small Laurent polynomials in u, v, m with integer coefficients."""
    n = draw(st.integers(0, max_terms))
    total = FieldElem.from_number(0)
    for _ in range(n):
        a = draw(st.integers(-max_exp, max_exp))
        b = draw(st.integers(-max_exp, max_exp))
        c = draw(st.integers(0, 2))
        k = draw(st.integers(-5, 5).filter(bool))
        total = total + FieldElem.monomial(u=a, v=b, m=c, coeff=k)
    return total


@st.composite
def field_elems(draw):
    num = draw(laurent_polys())
    den = draw(laurent_polys().filter(lambda d: not d.is_zero()))
    return num / den


def partitions(max_size):
    return st.sampled_from(partitions_upto(max_size))


@pytest.fixture
def tmp_cache(tmp_path):
    from hilbvertex import macdonald

    macdonald.set_cache_dir(tmp_path)
    macdonald.clear_memory_cache()
    yield tmp_path
    macdonald.set_cache_dir(None)
    macdonald.clear_memory_cache()
