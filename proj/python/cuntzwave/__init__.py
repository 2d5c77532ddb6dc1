"""Python front end to the cuntzwave C++ core.

Matrix functions, filter banks, signatures and realizations are passed as the
same dicts the command-line tool reads from JSON files.
"""

import json

import numpy as np

from . import _core
from ._core import Error

__all__ = [
    "Error",
    "check_cn",
    "build_filter",
    "factor_R",
    "decompose_P",
    "periodic_map",
    "split",
    "verify_cuntz",
    "gleason",
    "solve_stein",
    "symmetry_T",
    "negative_squares",
    "evaluate",
    "fnv1a_hex",
    "run_cli",
    "matrix",
]


def _dump(obj):
    return json.dumps(obj)


def _load(text):
    return json.loads(text)


def matrix(rows):
    """Complex numpy array from the JSON matrix encoding."""
    return np.array(
        [[complex(*v) if isinstance(v, list) else complex(v) for v in row] for row in rows],
        dtype=complex,
    )


def check_cn(W, tol=1e-12, nonsquare=False):
    return _load(_core.check_cn(_dump(W), tol, nonsquare))


def build_filter(bank):
    return _load(_core.build_filter(_dump(bank)))


def factor_R(W, tol=1e-12):
    return _load(_core.factor_R(_dump(W), tol))


def decompose_P(W, P):
    return _load(_core.decompose_P(_dump(W), _dump(P)))


def periodic_map(W, tol=1e-12):
    return _load(_core.periodic_map(_dump(W), tol))


def split(N, f):
    return _load(_core.split(N, _dump(f)))


def verify_cuntz(N, degree, J=None):
    return _load(_core.verify_cuntz(N, degree, _dump(J or {"diag": [1]})))


def gleason(f, m, degree):
    if isinstance(m, dict):
        m = m["m"]
    return _load(_core.gleason(_dump(f), [_dump(x) for x in m], degree))


def solve_stein(R, J, tol=1e-8):
    return _load(_core.solve_stein(_dump(R), _dump(J), tol))


def symmetry_T(R, N, tol=1e-8):
    return _load(_core.symmetry_T(_dump(R), N, tol))


def negative_squares(spec, grid=None):
    return _load(_core.negative_squares(_dump(spec), _dump(grid or {})))


def evaluate(W, z):
    return np.asarray(_core.evaluate(_dump(W), complex(z)))


def fnv1a_hex(data):
    if isinstance(data, str):
        data = data.encode()
    return _core.fnv1a_hex(data)


def run_cli(args):
    """Runs the command-line tool in-process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
