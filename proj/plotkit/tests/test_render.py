import hashlib

import numpy as np
import pytest
from matplotlib import image

from plotkit import FIGURE_IDS, FigureJob, SchemaError, load, render
from plotkit.cli import main


def digest(path):
    return hashlib.sha256(path.read_bytes()).hexdigest()


@pytest.mark.parametrize("fig", FIGURE_IDS)
@pytest.mark.parametrize("suffix", ["csv", "json"])
def test_every_preset_renders(preset_files, tmp_path, fig, suffix):
    out = tmp_path / f"{fig}.png"
    summary = render(FigureJob([preset_files[fig][suffix]], fig, out))
    pixels = image.imread(out)
    assert pixels.ndim == 3 and pixels.shape[0] > 100 and pixels.shape[1] > 100
    assert summary.panels >= 1


def test_fig2_has_a_map_and_a_line_cut(preset_files, tmp_path):
    summary = render(FigureJob([preset_files["fig2"]["csv"]], "fig2", tmp_path / "fig2.png"))
    assert summary.panels == 2


def test_fig6_draws_one_eigenvalue_curve_per_two_photon_state(preset_files, tmp_path):
    scan = load(preset_files["fig6"]["csv"])
    pair = [n for n in scan.overlays if n.startswith("pair_eig_")]
    assert len(pair) == 16
    panels = len(scan.engines_for("G2mm"))
    summary = render(FigureJob([preset_files["fig6"]["csv"]], "fig6", tmp_path / "fig6.png"))
    assert summary.overlay_curves == panels * len(pair)


def test_fig5a_draws_the_correlation_zero_line(preset_files, tmp_path):
    summary = render(FigureJob([preset_files["fig5a"]["csv"]], "fig5a", tmp_path / "fig5a.png"))
    assert summary.overlay_curves == summary.panels


def test_overlays_can_be_switched_off(preset_files, tmp_path):
    job = FigureJob([preset_files["fig6"]["csv"]], "fig6", tmp_path / "fig6.png", overlays=False)
    assert render(job).overlay_curves == 0


def test_empty_mask_draws_no_markers(preset_files, tmp_path):
    scan = load(preset_files["fig4a"]["csv"])
    assert all(not m.any() for m in scan.masks.values())
    assert render(FigureJob([preset_files["fig4a"]["csv"]], "fig4a", tmp_path / "a.png")).mask_markers == 0


def test_masked_points_get_markers(preset_files, tmp_path):
    lines = preset_files["fig4a"]["csv"].read_text().splitlines()
    columns = next(l for l in lines if not l.startswith("#")).split(",")
    k = columns.index("mask_master")
    first = len([l for l in lines if l.startswith("#")]) + 1
    for row in (first, first + 3):
        fields = lines[row].split(",")
        fields[k] = "1"
        lines[row] = ",".join(fields)
    masked = tmp_path / "masked.csv"
    masked.write_text("\n".join(lines) + "\n")
    master_panels = 3
    assert render(FigureJob([masked], "fig4a", tmp_path / "m.png")).mask_markers == 2 * master_panels


def test_rendering_is_read_only_and_idempotent(preset_files, tmp_path):
    source = preset_files["fig3a"]["csv"]
    before = digest(source)
    first = tmp_path / "first.png"
    second = tmp_path / "second.png"
    render(FigureJob([source], "fig3a", first))
    render(FigureJob([source], "fig3a", second))
    assert digest(source) == before
    np.testing.assert_array_equal(image.imread(first), image.imread(second))


def test_figure_needs_its_observable(preset_files, tmp_path):
    with pytest.raises(SchemaError, match="fig6 needs a G2mm_<engine> column"):
        render(FigureJob([preset_files["fig4a"]["csv"]], "fig6", tmp_path / "x.png"))


def test_unknown_figure_id_is_rejected(preset_files, tmp_path):
    with pytest.raises(SchemaError, match="unknown figure id"):
        render(FigureJob([preset_files["fig2"]["csv"]], "fig7", tmp_path / "x.png"))


def test_cli_renders_and_reports(preset_files, tmp_path, capsys):
    out = tmp_path / "cli.png"
    assert main(["fig5a", "--in", str(preset_files["fig5a"]["csv"]), "--out", str(out)]) == 0
    assert out.is_file()
    assert "panels" in capsys.readouterr().out


def test_cli_reports_schema_errors(preset_files, tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text(preset_files["fig5a"]["csv"].read_text().replace("G2mm_diagrams", "G2mm_exact"))
    assert main(["fig5a", "--in", str(bad), "--out", str(tmp_path / "x.png")]) == 2
    assert "unknown column: G2mm_exact" in capsys.readouterr().err
