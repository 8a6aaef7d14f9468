"""Integer verification kernels for the two hot axiom checks.

try_engine(H) packs the multiplication and comultiplication tables into
flat int64 arrays and returns an engine exposing check_associativity()
and check_comult_multiplicative(), each giving (ok, witness). The numba
engine is used when available, with a vectorized numpy fallback; the
RIBBONFORGE_BACKEND environment variable (auto, numba, numpy, reference)
or an explicit backend argument overrides the choice. None is returned
when no kernel applies (non-integer tables, overflow risk, or reference
forced), and the caller keeps the plain python path.
"""
import os

from .forms import pack

try:
    from .engine_numba import NumbaEngine
except ImportError:
    NumbaEngine = None

from .engine_numpy import NumpyEngine


def try_engine(H, backend=None):
    if backend is None:
        backend = os.environ.get("RIBBONFORGE_BACKEND", "auto")
    if backend == "reference":
        return None
    if backend not in ("auto", "numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    packed = pack(H)
    if packed is None:
        return None
    if backend == "numpy":
        return NumpyEngine(packed)
    if NumbaEngine is not None:
        return NumbaEngine(packed)
    if backend == "numba":
        return None
    return NumpyEngine(packed)
