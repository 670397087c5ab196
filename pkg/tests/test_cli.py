import numpy as np
import pytest

from deblockkit.cli import main
from deblockkit.image import load_pgm, save_pgm
from deblockkit.synthetic import SyntheticSpec, gen_synthetic


@pytest.fixture
def ramp_pgm(tmp_path):
    path = tmp_path / "ramp.pgm"
    save_pgm(gen_synthetic(SyntheticSpec("ramp", 64, 64)), path)
    return path


def run(argv):
    return main([str(a) for a in argv])


class TestEncode:
    def test_writes_output_and_metrics(self, ramp_pgm, tmp_path, capsys):
        out = tmp_path / "blocky.pgm"
        assert run(["encode", ramp_pgm, out, "--quality", "10"]) == 0
        assert out.exists()
        text = capsys.readouterr().out
        assert "psnr=" in text and "mse=" in text

    def test_higher_quality_higher_psnr(self, ramp_pgm, tmp_path, capsys):
        def psnr_at(q):
            run(["encode", ramp_pgm, tmp_path / f"b{q}.pgm", "--quality", q])
            return float(capsys.readouterr().out.split("psnr=")[1].split()[0])

        assert psnr_at(50) > psnr_at(10)

    def test_deterministic_output(self, ramp_pgm, tmp_path):
        a, b = tmp_path / "a.pgm", tmp_path / "b.pgm"
        run(["encode", ramp_pgm, a, "--quality", "5"])
        run(["encode", ramp_pgm, b, "--quality", "5"])
        assert a.read_bytes() == b.read_bytes()

    def test_quality_zero_usage_error(self, ramp_pgm, tmp_path):
        with pytest.raises(SystemExit) as exc:
            run(["encode", ramp_pgm, tmp_path / "x.pgm", "--quality", "0"])
        assert exc.value.code == 2

    def test_missing_file_runtime_error(self, tmp_path):
        assert run(["encode", tmp_path / "nope.pgm", tmp_path / "x.pgm"]) == 1

    def test_bpp_flag(self, ramp_pgm, tmp_path, capsys):
        run(["encode", ramp_pgm, tmp_path / "x.pgm", "--bpp"])
        assert "bpp_estimate=" in capsys.readouterr().out


class TestDeblock:
    def test_constant_image_roundtrips(self, tmp_path):
        src = tmp_path / "flat.pgm"
        save_pgm(np.full((32, 32), 88.0), src)
        out = tmp_path / "out.pgm"
        assert run(["deblock", src, out]) == 0
        assert src.read_bytes() == out.read_bytes()

    def test_reference_reports_improvement(self, ramp_pgm, tmp_path, capsys):
        blocky = tmp_path / "blocky.pgm"
        run(["encode", ramp_pgm, blocky, "--quality", "5"])
        capsys.readouterr()
        out = tmp_path / "deb.pgm"
        assert run(["deblock", blocky, out, "--reference", ramp_pgm]) == 0
        text = capsys.readouterr().out
        delta = float(text.split("delta_psnr=")[1].split()[0])
        assert delta > 0

    def test_even_window_usage_error(self, ramp_pgm, tmp_path):
        with pytest.raises(SystemExit) as exc:
            run(["deblock", ramp_pgm, tmp_path / "x.pgm", "--window", "4"])
        assert exc.value.code == 2

    def test_th_out_of_range_usage_error(self, ramp_pgm, tmp_path):
        with pytest.raises(SystemExit) as exc:
            run(["deblock", ramp_pgm, tmp_path / "x.pgm", "--th", "9"])
        assert exc.value.code == 2


class TestSynth:
    def test_writes_expected_image(self, tmp_path):
        out = tmp_path / "s.pgm"
        assert run(["synth", "smooth-noise", out, "--size", "64x64", "--seed", "3"]) == 0
        expected = gen_synthetic(SyntheticSpec("smooth-noise", 64, 64, 3))
        assert np.array_equal(load_pgm(out), expected)

    def test_bad_size_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            run(["synth", "ramp", tmp_path / "s.pgm", "--size", "63x64"])
        assert exc.value.code == 2


class TestExperiment:
    def test_end_to_end(self, tmp_path, capsys):
        csv_path = tmp_path / "out.csv"
        dat_path = tmp_path / "out.dat"
        figdir = tmp_path / "figs"
        rc = run(
            [
                "experiment",
                "--synthetic", "ramp:64x64",
                "--synthetic", "smooth-noise:64x64:1",
                "--qualities", "1,5,10",
                "--csv", csv_path,
                "--plotdata", dat_path,
                "--figures", figdir,
            ]
        )
        assert rc == 0
        assert len(csv_path.read_text().splitlines()) == 7  # header + 6 rows
        assert dat_path.exists()
        pngs = sorted(p.name for p in figdir.glob("*.png"))
        assert "psnr_vs_quality_all.png" in pngs
        assert len(pngs) == 5  # 2 per image + combined

    def test_corpus_directory(self, ramp_pgm, tmp_path):
        csv_path = tmp_path / "out.csv"
        rc = run(
            ["experiment", "--corpus", ramp_pgm.parent, "--qualities", "5",
             "--csv", csv_path]
        )
        assert rc == 0
        lines = csv_path.read_text().splitlines()
        assert len(lines) == 2
        assert lines[1].startswith("ramp,5,")

    def test_empty_corpus_is_runtime_error(self, tmp_path):
        empty = tmp_path / "empty"
        empty.mkdir()
        rc = run(["experiment", "--corpus", empty, "--csv", tmp_path / "o.csv"])
        assert rc == 1

    def test_bad_synthetic_spec_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            run(["experiment", "--synthetic", "blob:64x64", "--csv", tmp_path / "o.csv"])
        assert exc.value.code == 2
