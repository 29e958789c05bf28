from kchaos.analysis import distance_profile
from kchaos.batteries import canonical_shift_pairs, pairs_1d
from kchaos.plotting import plot_profile
from kchaos.systems import make_induced_shift, make_shift

PNG = b"\x89PNG"


def test_heatmap_2d(tmp_path):
    x, y = canonical_shift_pairs()["blockline"]
    prof = distance_profile(make_shift(2), x, y, 1, 8)
    out = plot_profile(prof, tmp_path / "sub" / "p.png", "blockline")
    assert out.read_bytes()[:4] == PNG


def test_line_plot_1d(tmp_path):

    _, x, y = pairs_1d()[1]
    T = make_induced_shift((1,))
    prof = distance_profile(T, x, y, 1, 10)
    assert plot_profile(prof, tmp_path / "a.png").read_bytes()[:4] == PNG


def test_line_plot_3d(tmp_path):
    from kchaos.batteries import defect, zeros

    prof = distance_profile(make_shift(3), zeros(3), defect(3, (2, 2, 2)), 1, 3)
    assert plot_profile(prof, tmp_path / "b.png").read_bytes()[:4] == PNG
