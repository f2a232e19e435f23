import pytest

from hilbsam import groebner


@pytest.fixture
def verify_mode():
    """Cross-check colengths against extra stabilization steps, the oracle,
    and the truncation ladder while the fixture is active."""
    old = (groebner.VERIFY_EXTRA_STEPS, groebner.VERIFY_ORACLE_LIMIT)
    groebner.VERIFY_EXTRA_STEPS, groebner.VERIFY_ORACLE_LIMIT = 3, 400
    yield
    groebner.VERIFY_EXTRA_STEPS, groebner.VERIFY_ORACLE_LIMIT = old
