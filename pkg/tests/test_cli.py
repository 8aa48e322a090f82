import numpy as np
import pytest

from tlengine import cli, output, smatrix
from tlengine.cli import ConfigError


def run_cli(args):
    return cli.main(args)


# ---------------------------------------------------------------- config


def test_config_file_parsing(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text(
        "# engine settings\n"
        "mu = 0.9\n"
        "kappa12=0.25   # valve\n"
        "\n"
        "quanta_bound = 4\n"
        "format = json\n"
    )
    values = cli.read_config_file(str(path))
    assert values == {"mu": "0.9", "kappa12": "0.25",
                      "quanta_bound": "4", "format": "json"}


def test_config_rejects_malformed_line(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("mu 0.9\n")
    with pytest.raises(ConfigError):
        cli.read_config_file(str(path))


def test_unknown_config_key_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.cfg"
    path.write_text("coupling = 3\n")
    assert run_cli(["table1", "--config", str(path)]) == 2
    assert "coupling" in capsys.readouterr().err


def test_missing_config_file_exits_2(tmp_path):
    assert run_cli(["table1", "--config", str(tmp_path / "nope.cfg")]) == 2


def test_invalid_values_exit_2(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("tau1 = -2\n")
    assert run_cli(["table1", "--config", str(path)]) == 2
    assert run_cli(["simulate", "--quanta-bound", "0", "--cycles", "1"]) == 2
    assert run_cli(["simulate", "--cycles", "1",
                    "--initial", "product:1,q,0"]) == 2


def test_flags_override_config(tmp_path, capsys):
    path = tmp_path / "run.cfg"
    path.write_text("mu = 0.9\nquanta_bound = 2\n")
    out = tmp_path / "spec.csv"
    assert run_cli(["spectrum", "--config", str(path), "--mu", "0.7",
                    "--out", str(out)]) == 0
    table = output.parse_csv(out.read_text())
    # lambda_0 at resonance omega1 = 2 mu reduces to kappa12.
    assert len(table.rows) == 3
    lam0 = float(table.rows[0][1])
    params = cli.CycleParams(mu=0.7)
    expected = 0.5 * np.hypot(2 * params.kappa12, params.omega1 - 1.4)
    assert lam0 == pytest.approx(expected)


# -------------------------------------------------------------- spectrum


def test_spectrum_resonance_column(tmp_path):
    out = tmp_path / "spec.csv"
    assert run_cli(["spectrum", "--omega1", "1.4", "--mu", "0.7",
                    "--quanta-bound", "4", "--out", str(out)]) == 0
    table = output.parse_csv(out.read_text())
    rho = table.columns.index("rho_plus[quanta]")
    for row in table.rows:
        n = int(row[0])
        expected = np.sin(1.5 * 0.3 * np.sqrt(n + 1))
        assert float(row[rho]) == pytest.approx(expected, abs=1e-12)


def test_spectrum_sector_zero_has_zero_eigenphase(tmp_path):
    out = tmp_path / "spec.csv"
    assert run_cli(["spectrum", "--quanta-bound", "3", "--out", str(out)]) == 0
    table = output.parse_csv(out.read_text())
    phases = table.columns.index("sector_eigenphases[rad]")
    assert float(str(table.rows[0][phases]).split(";")[0]) == 0.0


def test_spectrum_round_trips_in_both_formats(tmp_path):
    for fmt in output.FORMATS:
        out = tmp_path / f"spec.{fmt}"
        assert run_cli(["spectrum", "--quanta-bound", "3", "--format", fmt,
                        "--out", str(out)]) == 0
        text = out.read_text()
        table = output.parse(text, fmt)
        assert output.emit(table, fmt) == text


def test_identical_invocations_are_byte_identical(tmp_path):
    texts = []
    for name in ("a.csv", "b.csv"):
        out = tmp_path / name
        assert run_cli(["simulate", "--cycles", "20", "--seed", "3",
                        "--initial", "sector_random:2",
                        "--quanta-bound", "4", "--out", str(out)]) == 0
        texts.append(out.read_bytes())
    assert texts[0] == texts[1]


# -------------------------------------------------------------- simulate


def test_simulate_ground_state_rows_identical(tmp_path):
    out = tmp_path / "run.csv"
    assert run_cli(["simulate", "--cycles", "10", "--initial", "product:0,g,0",
                    "--quanta-bound", "3", "--out", str(out)]) == 0
    table = output.parse_csv(out.read_text())
    assert len(table.rows) == 11
    assert len({row[1:] for row in table.rows}) == 1


def test_simulate_conserves_quanta_and_reports_zero_entropy(tmp_path):
    out = tmp_path / "run.csv"
    assert run_cli(["simulate", "--cycles", "200", "--initial", "product:2,g,1",
                    "--quanta-bound", "5", "--out", str(out)]) == 0
    table = output.parse_csv(out.read_text())
    quanta = table.columns.index("total_quanta[quanta]")
    entropy = table.columns.index("entropy_cold[nat]")
    values = [float(row[quanta]) for row in table.rows]
    assert max(abs(v - 3.0) for v in values) < 1e-9
    assert float(table.rows[0][entropy]) == 0.0


def test_simulate_plot_renders_figure(tmp_path):
    out = tmp_path / "run.csv"
    assert run_cli(["simulate", "--cycles", "10", "--quanta-bound", "3",
                    "--initial", "transfer:1,+,0", "--out", str(out),
                    "--plot"]) == 0
    figure = tmp_path / "run.png"
    assert figure.exists()
    assert figure.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_plot_without_out_exits_2():
    assert run_cli(["simulate", "--cycles", "1", "--quanta-bound", "2",
                    "--plot"]) == 2


def test_spectrum_plot_renders_figure(tmp_path):
    out = tmp_path / "spec.csv"
    assert run_cli(["spectrum", "--quanta-bound", "3", "--out", str(out),
                    "--plot"]) == 0
    assert (tmp_path / "spec.png").exists()


# ---------------------------------------------------------------- table1


def test_table1_emits_eight_rows(capsys, tmp_path):
    out = tmp_path / "table.csv"
    assert run_cli(["table1", "--out", str(out)]) == 0
    printed = capsys.readouterr().out.strip().splitlines()
    assert len(printed) == 9  # header + eight monomials
    table = output.parse_csv(out.read_text())
    assert len(table.rows) == 8
    assert table.rows[0][1:] == ("---", "---")
    assert table.rows[7][1:] == ("---", "---")


def test_table1_arrow_row(capsys):
    assert run_cli(["table1"]) == 0
    out = capsys.readouterr().out
    row = next(line for line in out.splitlines() if line.startswith("Ba x E1"))
    assert "->" in row


# ---------------------------------------------------------------- verify


def test_verify_small_run_passes(capsys, tmp_path):
    out = tmp_path / "verify.json"
    code = run_cli(["verify", "--draws", "2", "--spectrum-draws", "1",
                    "--quanta-bound", "2", "--out", str(out),
                    "--format", "json"])
    printed = capsys.readouterr().out
    assert code == 0
    assert printed.count("[PASS]") == 15
    table = output.parse_json(out.read_text())
    assert all(row[-1] == "pass" for row in table.rows)


def test_verify_corrupted_transcription_fails(capsys, monkeypatch):
    from tlengine import fock
    genuine = smatrix.compose_cycle_closed_form

    def corrupted(params, bound):
        op = genuine(params, bound)
        entries = op.entries.copy()
        entries[1, 2] += 1e-4
        return fock.Operator(entries, op.signature)

    monkeypatch.setattr(smatrix, "compose_cycle_closed_form", corrupted)
    code = run_cli(["verify", "--draws", "1", "--spectrum-draws", "1",
                    "--quanta-bound", "2"])
    captured = capsys.readouterr()
    assert code == 1
    assert "two-path" in captured.err


# ------------------------------------------------------- initial specs


def test_parse_initial_specs():
    assert cli.parse_initial_spec("product:1,e,2", 0) == ("product", 1, 1, 2)
    assert cli.parse_initial_spec("transfer:3,-,1", 0) == ("transfer_eigvec", 3, -1, 1)
    kind, components = cli.parse_initial_spec(
        "superposition:0.6*1,g,0;0.8j*0,e,0", 0)
    assert kind == "superposition"
    assert components[1][0] == 0.8j
    assert cli.parse_initial_spec("sector_random:2", 9) == ("sector_random", 2, 9)
    with pytest.raises(ConfigError):
        cli.parse_initial_spec("product:1,2", 0)
    with pytest.raises(ConfigError):
        cli.parse_initial_spec("thermal:0.5", 0)
