"""Tests for the command-line front end"""
import pytest

from app.cli import EXIT_ERROR, EXIT_IO, EXIT_OK, build_parser, load_config, main


def test_weights_command(out_dir, capsys):
    code = main(["weights", "--scheme", "be", "--symbol", "resolvent:c=-1", "--kappa", "0.1",
                 "--steps", "16", "--out", str(out_dir)])
    assert code == EXIT_OK
    path = out_dir / "weights_be_resolvent.txt"
    assert path.exists()
    assert str(path) in capsys.readouterr().out


def test_config_file_with_flag_overrides(tmp_path):
    config = tmp_path / "run.env"
    config.write_text("scheme=radau3\nsteps=8\nsymbol=oscillator:c=2\nSIGNAL_RATE=0.5\n")
    args = build_parser().parse_args(["convolve", "--config", str(config), "--steps", "12"])
    cfg = load_config(args)
    assert cfg.scheme.value == "radau3"
    assert cfg.steps == 12
    assert cfg.symbol.params == {"c": 2.0}
    assert cfg.signal_rate == 0.5


def test_converge_prints_the_table(out_dir, capsys):
    code = main(["converge", "--scheme", "bdf2", "--symbol", "oscillator:c=1", "--kappa", "0.05",
                 "--final-time", "2", "--levels", "4", "--out", str(out_dir)])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("kappa,steps,error,order")
    assert (out_dir / "convergence_bdf2_oscillator.csv").exists()


def test_validation_error(capsys):
    code = main(["convolve", "--kappa", "-1"])
    assert code == EXIT_ERROR
    assert capsys.readouterr().err.startswith("error[invalid-argument]: kappa")


def test_engine_error_category(out_dir, capsys):
    code = main(["scatter", "--scheme", "bdf3", "--steps", "4", "--boundary-points", "4", "--out", str(out_dir)])
    assert code == EXIT_ERROR
    assert "error[invalid-argument]" in capsys.readouterr().err


def test_missing_reference(capsys):
    code = main(["converge", "--symbol", "power:alpha=3"])
    assert code == EXIT_ERROR
    assert "error[invalid-argument]" in capsys.readouterr().err


def test_unwritable_output(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code = main(["weights", "--steps", "4", "--out", str(blocker)])
    assert code == EXIT_IO
    assert capsys.readouterr().err.startswith("error[io]")


def test_unknown_scheme_is_an_argparse_error():
    with pytest.raises(SystemExit) as exc:
        main(["weights", "--scheme", "gauss"])
    assert exc.value.code == 2
