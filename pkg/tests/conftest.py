import pytest

from parmerge import _kernels


@pytest.fixture(scope="session", autouse=True)
def compiled_kernels():
    # pay the JIT cost once, before anything that measures time
    _kernels.warmup()
