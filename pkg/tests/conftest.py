import itertools
import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from mayerlap import FilteredComplex, PointCloud, vr_filtration
from mayerlap.spectral import HermitianMatrix, hermitian_eigenvalues

DATA = os.path.join(os.path.dirname(__file__), "data")


def data_path(name: str) -> str:
    return os.path.join(DATA, name)


def closure_items(top_simplices, value=0.0):
    """All faces of the given simplices at one filtration value."""
    simp = set()
    for s in top_simplices:
        s = tuple(sorted(s))
        for k in range(1, len(s) + 1):
            simp.update(itertools.combinations(s, k))
    return [(s, value) for s in sorted(simp, key=lambda t: (len(t), t))]


def explicit_complex(top_simplices, value=0.0) -> FilteredComplex:
    return FilteredComplex(closure_items(top_simplices, value))


TABLE1_TOPS = {
    "delta3": [(0, 1, 2, 3)],
    "boundary_delta3": [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)],
    "hexagon": [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)],
    "mobius": [(0, 1, 3), (1, 3, 4), (1, 2, 4), (2, 4, 5), (2, 3, 5), (0, 3, 5)],
    "torus": [(0, 1, 3), (0, 1, 7), (0, 2, 5), (0, 2, 6), (0, 3, 5), (0, 6, 7),
              (1, 2, 4), (1, 3, 4), (1, 2, 8), (1, 7, 8), (2, 4, 5), (2, 6, 8),
              (3, 5, 8), (3, 4, 6), (3, 6, 8), (4, 5, 7), (4, 6, 7), (5, 7, 8)],
    "octahedron": [(0, 1, 2, 4), (0, 1, 2, 5), (0, 2, 3, 4), (0, 2, 3, 5),
                   (0, 1, 4), (0, 1, 5), (1, 2, 4), (1, 2, 5), (2, 3, 4), (2, 3, 5),
                   (0, 3, 4), (0, 3, 5), (0, 1, 2), (0, 2, 3), (0, 2, 4), (0, 2, 5)],
}

X1_POINTS = [(0, 0), (1, 1), (1, -1), (2, 1), (2.5, 1.5), (2.5, 0.5), (3, 1)]
X2_POINTS = [(0, 0, 1.3), (0, 0, -1), (0, 1, 0), (0, -1, 0), (1, 0, 0), (-1, 0, 0)]


@pytest.fixture(scope="session")
def table1_complexes():
    return {name: explicit_complex(tops) for name, tops in TABLE1_TOPS.items()}


@pytest.fixture(scope="session")
def x1_complex():
    return vr_filtration(PointCloud(X1_POINTS), max_dim=6)


@pytest.fixture(scope="session")
def x2_complex():
    return vr_filtration(PointCloud(X2_POINTS), max_dim=5)


def random_cloud(rng: random.Random, max_points=6, dim=2) -> PointCloud:
    n = rng.randint(2, max_points)
    return PointCloud([[rng.uniform(0, 2) for _ in range(dim)] for _ in range(n)])


def random_complex(rng: random.Random, max_points=6, max_dim=3) -> FilteredComplex:
    """Random VR complex over a small uniform cloud, random radius cap."""
    cloud = random_cloud(rng, max_points)
    return vr_filtration(cloud, max_dim=max_dim, max_radius=rng.uniform(0.5, 3.0))


@pytest.fixture(scope="session", autouse=True)
def _warm_jacobi():
    # pay the optional JIT compilation cost outside of any timed test
    hermitian_eigenvalues(HermitianMatrix([[2.0, 1j], [-1j, 2.0]]))
