from fractions import Fraction

import pytest

from ribbonforge.cyclotomic import make_context
from ribbonforge.double import build_double
from ribbonforge.hopf import HopfAlgebra
from ribbonforge.kernels import try_engine
from ribbonforge.kernels.forms import pack
from ribbonforge.radford import build_radford


@pytest.fixture(scope="module")
def algebra22():
    return build_double(build_radford(2, 2), verify=False).algebra


def _fresh_engine(algebra, backend):
    eng = try_engine(algebra, backend)
    if eng is None:
        pytest.skip(f"backend {backend} unavailable")
    return eng


@pytest.mark.parametrize("backend", ["numpy", "numba"])
def test_engine_passes_on_valid_tables(algebra22, backend):
    if backend == "numba":
        pytest.importorskip("numba")
    eng = _fresh_engine(algebra22, backend)
    ok, wit = eng.check_associativity()
    assert ok and wit is None
    ok, wit = eng.check_comult_multiplicative()
    assert ok and wit is None


@pytest.mark.parametrize("backend", ["numpy", "numba"])
def test_engine_detects_corrupted_mult(algebra22, backend):
    if backend == "numba":
        pytest.importorskip("numba")
    eng = _fresh_engine(algebra22, backend)
    eng.p.mult_val[17, 0] += 1
    ok, wit = eng.check_associativity()
    assert not ok
    assert wit == (1, 16, 17)
    ok, wit = eng.check_comult_multiplicative()
    assert not ok
    assert wit == (1, 16)


@pytest.mark.parametrize("backend", ["numpy", "numba"])
def test_engine_detects_corrupted_comult(algebra22, backend):
    if backend == "numba":
        pytest.importorskip("numba")
    eng = _fresh_engine(algebra22, backend)
    eng.p.com_val[4, 0] += 2
    ok, wit = eng.check_comult_multiplicative()
    assert not ok
    assert wit == (0, 1)
    ok, _ = eng.check_associativity()
    assert ok


def test_engines_agree_across_backends(algebra22):
    pytest.importorskip("numba")
    for check in ("check_associativity", "check_comult_multiplicative"):
        a = getattr(_fresh_engine(algebra22, "numpy"), check)()
        b = getattr(_fresh_engine(algebra22, "numba"), check)()
        assert a == b == (True, None)


def test_pack_rejects_fractional_tables():
    ctx = make_context(4)
    half = ctx.from_fraction(Fraction(1, 2))
    H = HopfAlgebra(
        ctx, ["e"], name="halfsies",
        mult_rows={(0, 0): {0: half}},
        comult_rows={0: {(0, 0): ctx.one()}},
        counit={0: ctx.one()},
        antipode_rows={0: {0: ctx.one()}},
        unit={0: ctx.one()},
    )
    assert pack(H) is None
    assert try_engine(H, "numpy") is None


def test_backend_dispatch(algebra22):
    assert try_engine(algebra22, "reference") is None
    with pytest.raises(ValueError):
        try_engine(algebra22, "gpu")
    eng = try_engine(algebra22, "numpy")
    assert eng.name == "numpy"


def test_try_engine_reads_environment(algebra22, monkeypatch):
    monkeypatch.setenv("RIBBONFORGE_BACKEND", "reference")
    assert try_engine(algebra22) is None
    monkeypatch.setenv("RIBBONFORGE_BACKEND", "numpy")
    assert try_engine(algebra22).name == "numpy"


def test_small_radford_tables_pack_and_pass():
    H = build_radford(3, 2)
    for backend in ("numpy",):
        eng = _fresh_engine(H, backend)
        assert eng.check_associativity() == (True, None)
        assert eng.check_comult_multiplicative() == (True, None)
