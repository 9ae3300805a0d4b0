import pytest

from elg.datasets import build_dataset

_CACHE: dict = {}


@pytest.fixture(scope="session")
def dataset():
    """Memoized dataset factory shared across the whole test session."""
    def get(family: str, n: int, **kw):
        key = (family, n, tuple(sorted(kw.items())))
        if key not in _CACHE:
            _CACHE[key] = build_dataset(family, n, **kw)
        return _CACHE[key]
    return get
