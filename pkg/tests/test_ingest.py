import numpy as np
import pytest

from fracvar import (DomainError, FormatError, SampledPath, ShapeError, eval_f_grid, load_csv,
                     multiscale_variation, save_csv, variation_curve)
from fracvar.wtf import grid_csv


def _write(path, lines):
    path.write_text("\n".join(lines) + "\n")
    return path


def test_nine_rows(tmp_path):
    sp = load_csv(_write(tmp_path / "a.csv", [str(v) for v in range(9)]), 2)
    assert sp.n == 3 and sp.values.size == 9


def test_header_optional(tmp_path):
    sp = load_csv(_write(tmp_path / "a.csv", ["value"] + ["1.5"] * 5), 2)
    assert sp.n == 2


def test_bad_length(tmp_path):
    with pytest.raises(ShapeError, match=r"9, 17"):
        load_csv(_write(tmp_path / "a.csv", ["0"] * 10), 2)


def test_nan_row(tmp_path):
    with pytest.raises(FormatError, match=":4"):
        load_csv(_write(tmp_path / "a.csv", ["0", "1", "2", "NaN", "4"]), 2)
    with pytest.raises(FormatError, match=":2"):
        load_csv(_write(tmp_path / "b.csv", ["0", "x", "2"]), 2)


def test_round_trip(tmp_path, takagi):
    p = tmp_path / "g.csv"
    p.write_text(grid_csv(takagi, 10))
    curve = multiscale_variation(load_csv(p, 2), 2.0, 8)
    direct = variation_curve(takagi, 2.0, n_min=3, n_max=10)
    assert [n for n, _ in curve.levels] == list(range(3, 11))
    assert np.allclose(curve.values, direct.values, rtol=1e-12, atol=0)
    for n, v in curve.levels:
        assert v == pytest.approx(n * 2.0**-n, rel=1e-12)


def test_save_load(tmp_path, half):
    sp = SampledPath.from_values(eval_f_grid(half, 6), 2, "h")
    save_csv(tmp_path / "s.csv", sp)
    assert np.array_equal(load_csv(tmp_path / "s.csv", 2).values, sp.values)


def test_constant_and_ramp():
    const = SampledPath.from_values(np.ones(2**6 + 1), 2)
    assert multiscale_variation(const, 2.0, 6).values.tolist() == [0.0] * 6
    ramp = SampledPath.from_values(np.linspace(0, 1, 3**5 + 1), 3)
    assert multiscale_variation(ramp, 1.0, 5).values == pytest.approx([1.0] * 5, rel=1e-12)


def test_levels_bound():
    sp = SampledPath.from_values(np.zeros(9), 2)
    with pytest.raises(DomainError):
        multiscale_variation(sp, 2.0, 4)
