import pytest

from monoid_factor import kernels


@pytest.fixture(params=kernels.AVAILABLE)
def backend(request):
    old = kernels.set_backend(request.param)
    yield request.param
    kernels.set_backend(old)
