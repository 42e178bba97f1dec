import numpy as np
import pytest

from sphere_search import _kernels


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Trigger JIT compilation once so timed tests measure the algorithms."""
    pts = np.ascontiguousarray(np.array([[1.0, 0.0], [0.0, 1.0]]))
    verts = np.ascontiguousarray(np.array([[2.0, 0.0]]))
    _kernels.sees_any(pts, verts, 1e-9)
    _kernels.first_hit_scan(verts, False, np.array([1.0, 0.0]), 1.0, 1e-9)
    _kernels.support_max(pts, verts)
    _kernels.minimax_descent(pts, pts, 0.1, 5, 1e-12, 5, -1e9)
