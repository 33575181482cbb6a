import json
from pathlib import Path
from typing import List

from click.testing import Result
import pytest
from typer.testing import CliRunner

from quantum_trace import cli, engines
from quantum_trace.omega_ring import ONE
from quantum_trace.qtorus import QuantumTorus

from .conftest import CORPUS_DIR, GOLDEN_DIR, read_surface

runner = CliRunner()


def run(*args: str) -> Result:
    app = cli.create_cli(corpus_dir=CORPUS_DIR)
    arguments: List[str] = ["--log-level", "ERROR", *args]
    return runner.invoke(app, arguments)


def test_check_passes() -> None:
    result = run("check", "torus.surf", "loop10.tng")
    assert result.exit_code == 0, result.output
    lines = result.output.splitlines()
    assert lines[0] == "PASS"
    assert lines[1] == "twist: 1*w^0"


def test_check_json_with_terms() -> None:
    result = run("check", "torus.surf", "loop10.tng", "--terms", "--json")
    assert result.exit_code == 0, result.output
    data = json.loads(result.output)
    assert data["schema"] == 1
    assert data["verdict"] == "PASS"
    assert data["global"] is True
    assert len(data["terms"]) == 3


def test_check_reports_failure(mocker) -> None:  # type: ignore
    algebra = QuantumTorus(read_surface("torus.surf"))
    failing = engines.TheoremReport(ONE, 0, 0, algebra.one(), algebra.zero())
    mocked = mocker.patch.object(engines, "check_main_theorem", autospec=True)
    mocked.return_value = failing
    result = run("check", "torus.surf", "empty.tng")
    assert result.exit_code == cli.EXIT_FAIL
    assert "FAIL" in result.output
    assert "global sums differ" in result.output
    mocked.assert_called_once()


def test_trace_of_empty_tangle() -> None:
    result = run("trace", "torus.surf", "empty.tng")
    assert result.exit_code == 0, result.output
    assert result.output.strip() == "1"


def test_trace_json() -> None:
    result = run("trace", "torus.surf", "contractible.tng", "--json")
    assert result.exit_code == 0, result.output
    assert json.loads(result.output) == {"schema": 1, "trace": "-1*w^-4 - 1*w^4"}


@pytest.mark.parametrize("extra", [[], ["--original-normalization"]])
def test_holonomy(extra: List[str]) -> None:
    result = run("holonomy", "torus.surf", "loop10.tng", *extra)
    assert result.exit_code == 0, result.output
    assert result.output.strip()


def test_classical_match() -> None:
    result = run("classical", "torus.surf", "loop11.tng")
    assert result.exit_code == 0, result.output
    assert result.output.splitlines()[-1] == "MATCH"


def test_classical_needs_curves() -> None:
    result = run("classical", "triangle.surf", "corner_arc.tng")
    assert result.exit_code == cli.EXIT_INPUT_ERROR


def test_validate() -> None:
    result = run("validate", "torus.surf", "loop10.tng", "--json")
    assert result.exit_code == 0, result.output
    data = json.loads(result.output)
    assert data["triangles"] == 2
    assert data["edges"] == 3
    assert data["exchange_matrix"] == [[0, 2, -2], [-2, 0, 2], [2, -2, 0]]
    assert data["closed"] is True
    assert data["states"] == 3
    assert data["writhe"] == 0

    result = run("validate", "triangle.surf", "corner_arc.tng")
    assert result.exit_code == 0, result.output
    assert "closed: False" in result.output
    assert result.output.splitlines()[-1] == "OK"


def test_report() -> None:
    result = run("report", "torus.surf", "loop10.tng")
    assert result.exit_code == 0, result.output
    data = json.loads(result.output)
    assert len(data["terms"]) == 3
    assert data["properties"]["highest"] == {"a": 0, "b": 1, "c": 1}
    assert data["properties"]["q_positive"] is True


@pytest.mark.parametrize(
    "surface_name, tangle_name, golden",
    [
        ("torus.surf", "loop10.tng", "report_loop10.json"),
        ("triangle.surf", "corner_arc.tng", "report_corner_arc.json"),
    ],
)
def test_report_matches_golden(surface_name: str, tangle_name: str, golden: str) -> None:
    result = run("report", surface_name, tangle_name)
    assert result.exit_code == 0, result.output
    expected = json.loads((Path(GOLDEN_DIR) / golden).read_text())
    assert json.loads(result.output) == expected


def test_missing_input() -> None:
    result = run("trace", "torus.surf", "no_such_tangle.tng")
    assert result.exit_code == cli.EXIT_INPUT_ERROR
    assert "error:" in result.output


def test_state_limit() -> None:
    result = run("--max-states", "1", "trace", "torus.surf", "loop10.tng")
    assert result.exit_code == cli.EXIT_INPUT_ERROR
    assert run("--max-states", "3", "trace", "torus.surf", "loop10.tng").exit_code == 0


def test_input_resolved_against_corpus(corpus_dir: str) -> None:
    cli.set_env_config({"corpus_dir": corpus_dir})
    assert cli.resolve_input(Path("loop10.tng")) == Path(corpus_dir) / "loop10.tng"
