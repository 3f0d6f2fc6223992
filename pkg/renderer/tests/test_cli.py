"""End-to-end CLI runs against the golden corpus."""

from figure_renderer.cli import main


def test_cli_spectra(spectrum_csv, spectrum_csv_final, tmp_path, capsys):
    out = str(tmp_path / "spectra.png")
    rc = main([
        "spectra",
        "--input", spectrum_csv, spectrum_csv_final,
        "--label", "initial", "final",
        "--output", out,
    ])
    assert rc == 0
    assert capsys.readouterr().out.strip() == out
    assert (tmp_path / "spectra.png").stat().st_size > 0


def test_cli_trace(trace_csv, tmp_path):
    out = str(tmp_path / "trace.svg")
    assert main(["trace", "--input", trace_csv, "--output", out]) == 0
    assert (tmp_path / "trace.svg").stat().st_size > 0


def test_cli_pc(pc_csvs, tmp_path):
    out = str(tmp_path / "pc.png")
    assert main(["pc", "--input", *pc_csvs, "--output", out]) == 0
    assert (tmp_path / "pc.png").stat().st_size > 0


def test_cli_missing_input_fails(tmp_path, capsys):
    rc = main([
        "spectra",
        "--input", str(tmp_path / "absent.csv"),
        "--output", str(tmp_path / "x.png"),
    ])
    assert rc == 1
    assert "error:" in capsys.readouterr().err


def test_cli_bad_schema_fails(tmp_path, capsys):
    bad = tmp_path / "spectra_0.csv"
    bad.write_text("a,b\n1,2\n")
    rc = main(["spectra", "--input", str(bad), "--output", str(tmp_path / "x.png")])
    assert rc == 1
    assert "expected header" in capsys.readouterr().err
