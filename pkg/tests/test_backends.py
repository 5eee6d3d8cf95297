"""Compiled-vs-pure kernel agreement.

Counts must match exactly except where a last-ulp difference in the
vectorized log flips a comparison sitting on the threshold; estimates are
therefore allowed to differ by a few trials in a million.
"""

import numpy as np
import pytest

from isacrom._kernels import poisson_cdf_table, pure

native = pytest.importorskip("isacrom._kernels._native")

GLX, GLW = np.polynomial.legendre.leggauss(15)
TABLE = poisson_cdf_table(1.3080919268028501)


@pytest.mark.parametrize("seed", [0, 42, 987654321])
def test_count_hits_agree(seed):
    args = (TABLE, 0.0328, 8.283894e-14, 1e-13, 0.0, 0.0, seed, 200_000, 0)
    assert abs(native.mc_count_hits(*args) - pure.mc_count_hits(*args)) <= 2


def test_count_hits_with_target_terms_agree():
    args = (TABLE, 0.0328, 8.283894e-14, 1e-13, 2e-14, 1e-14, 5, 100_000, 0)
    assert abs(native.mc_count_hits(*args) - pure.mc_count_hits(*args)) <= 2


def test_position_resolved_counts_agree():
    args = (TABLE, 328.28, 6.25, 13.75, 4.0, 8.283894e-14, 1e-13, 0.0, 0.0,
            42, 100_000, 0)
    a = native.mc_count_hits_pr(*args)
    b = pure.mc_count_hits_pr(*args)
    assert abs(a - b) <= 2


def test_samples_agree_to_ulp():
    a = native.mc_sample_clutter(TABLE, 1.0, 3, 100_000, 0)
    b = pure.mc_sample_clutter(TABLE, 1.0, 3, 100_000, 0)
    assert np.allclose(a, b, rtol=1e-13, atol=1e-15)
    assert np.array_equal(a == 0.0, b == 0.0)


def test_panel_blocks_agree():
    rng = np.random.default_rng(0)
    widths = rng.uniform(0.5, 5.0, size=64)
    starts = np.concatenate([[1e-3], 1e-3 + np.cumsum(widths)[:-1]])
    for lam, xs in ((0.1, 0.7), (1.0, 3.0), (7.5, 0.05), (1.3, 40.0)):
        sa, aa = native.cp_panel_block(lam, xs, starts, widths, GLX, GLW)
        sb, ab = pure.cp_panel_block(lam, xs, starts, widths, GLX, GLW)
        assert np.allclose(sa, sb, rtol=1e-12, atol=1e-16)
        assert np.allclose(aa, ab, rtol=1e-12, atol=1e-16)


def test_end_to_end_cdf_backends_agree(monkeypatch):
    import importlib

    import isacrom._kernels as kernels
    import isacrom.gilpelaez as gp
    from isacrom.clutter import CompoundClutterSpec, clutter_cf_handle

    spec = CompoundClutterSpec(lam=1.3080919268028501, mark_scale=0.0328)
    handle = clutter_cf_handle(spec)
    values = {}
    for backend in (native, pure):
        monkeypatch.setattr(gp, "_impl", backend)
        values[backend.__name__] = gp.cdf_from_cf(handle, 0.013)
    vals = list(values.values())
    assert vals[0] == pytest.approx(vals[1], abs=1e-12)
