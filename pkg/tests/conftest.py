import numpy as np
import pytest

from nibblemul.netlist.sim import KERNELS


@pytest.fixture(params=sorted(KERNELS))
def kernel(request):
    return request.param


@pytest.fixture
def all_pairs():
    a, b = np.meshgrid(np.arange(256), np.arange(256), indexing="ij")
    return a.ravel(), b.ravel()
