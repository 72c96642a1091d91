import os
import subprocess
import sys

import numpy as np
import pytest

from orbstab import classifier as cl
from orbstab.geometry import PointSet, _matrix_to_zero_one_inf
from orbstab.kernels import _CAP, _scan_numba, _scan_numpy, active_backend
from orbstab.oracle import _pick_base_triple
from orbstab.witness import dihedral_witness, polyhedral_orbit, trivial_witness


def scan_args(ps):
    z, w, nrm = ps.arrays()
    base = _pick_base_triple(ps)
    m = _matrix_to_zero_one_inf(*(ps.points[i] for i in base))
    return z, w, nrm, base, (m.a, m.b, m.c, m.d)


def run_numba(ps):
    z, w, nrm, base, m = scan_args(ps)
    out = np.empty((_CAP, 3), dtype=np.int64)
    stamp = np.zeros(ps.n, dtype=np.int64)
    cnt = _scan_numba(z, w, nrm, base[0], base[1], base[2],
                      m[0], m[1], m[2], m[3], ps.tol, out, stamp)
    assert cnt >= 0
    return sorted(map(tuple, out[:cnt].tolist()))


def run_numpy(ps):
    z, w, nrm, base, m = scan_args(ps)
    return sorted(map(tuple, _scan_numpy(z, w, nrm, base, m, ps.tol).tolist()))


@pytest.mark.skipif(_scan_numba is None, reason="numba backend unavailable")
@pytest.mark.parametrize("make", [
    lambda: PointSet.from_values([0, 1, float("inf")]),
    lambda: polyhedral_orbit(cl.S4, "V6"),
    lambda: polyhedral_orbit(cl.A5, "V12"),
    lambda: dihedral_witness(5, (1, 0, 1)),
    lambda: trivial_witness(9),
], ids=["triple", "octahedron", "icosahedron", "d5-mixed", "asymmetric"])
def test_backends_agree(make):
    ps = make()
    assert run_numba(ps) == run_numpy(ps)


@pytest.mark.skipif(_scan_numba is None, reason="numba backend unavailable")
def test_survivor_count_equals_group_order(make=lambda: polyhedral_orbit(cl.S4, "V8")):
    ps = make()
    assert len(run_numba(ps)) == 24


def test_active_backend_reports():
    assert active_backend() in ("numba", "numpy")


def test_numpy_backend_env_flag():
    """The env flag must force the numpy path end to end."""
    code = (
        "import os\n"
        "from orbstab.kernels import active_backend\n"
        "from orbstab.oracle import stabilizer\n"
        "from orbstab.geometry import PointSet\n"
        "assert active_backend() == 'numpy', active_backend()\n"
        "res = stabilizer(PointSet.from_values([0, 1, float('inf')]))\n"
        "assert res.order == 6 and str(res.label) == 'D_3'\n"
        "print('numpy backend ok')\n"
    )
    env = dict(os.environ, ORBSTAB_BACKEND="numpy")
    proc = subprocess.run([sys.executable, "-c", code], env=env,
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0, proc.stderr
    assert "numpy backend ok" in proc.stdout
