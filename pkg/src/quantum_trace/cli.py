#!/usr/bin/env python3

"""Command line interface of the quantum trace library
"""

from contextlib import contextmanager
from enum import Enum
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterator, Optional

import typer

from . import engines
from .errors import QuantumTraceError
from .surface import exchange_matrix, parse_surface, split
from .tangle import TanglePresentation, boundary_correction, parse_tangle, writhe_surface

_LOG_LEVEL_STRINGS = ["CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG"]
LOCAL_ENV_CONFIG: Dict[str, Any] = {}

EXIT_FAIL = 1
EXIT_INPUT_ERROR = 2


class LoggingLevel(str, Enum):
    """
    Enum holding the different logging argument values.

    Attributes:
        CRITICAL (str): Represents the 'CRITICAL' logging level.
        ERROR (str): Represents the 'ERROR' logging level.
        WARNING (str): Represents the 'WARNING' logging level.
        INFO (str): Represents the 'INFO' logging level.
        DEBUG (str): Represents the 'DEBUG' logging level.
    """

    CRITICAL = "CRITICAL"
    ERROR = "ERROR"
    WARNING = "WARNING"
    INFO = "INFO"
    DEBUG = "DEBUG"


def set_env_config(config: Dict[str, Any]) -> None:
    """Set the configuration of the run

    Args:
        config (Dict[str, Any]): Configuration values (`corpus_dir`, `max_states`,
            `json_indent`).
    """
    global LOCAL_ENV_CONFIG
    LOCAL_ENV_CONFIG = config


def get_env_config() -> Dict[str, Any]:
    """Get the configuration of the run

    Returns:
        Dict[str, Any]: Configuration of the run
    """
    return LOCAL_ENV_CONFIG


def resolve_input(path: Path) -> Path:
    """Find an input file, falling back to the configured corpus directory.

    Args:
        path (Path): Path given on the command line.

    Returns:
        Path: ``path`` itself when it exists or when no corpus matches it.
    """
    if path.exists() or path.is_absolute():
        return path
    corpus_dir = get_env_config().get("corpus_dir")
    if corpus_dir:
        candidate = Path(corpus_dir) / path
        if candidate.exists():
            logging.debug(f"Resolved {path} to {candidate}")
            return candidate
    return path


def state_limit() -> Optional[int]:
    """Configured bound on the number of juncture states, None when unlimited."""
    limit = int(get_env_config().get("max_states", 0) or 0)
    return limit if limit > 0 else None


def load_presentation(surface_path: Path, tangle_path: Path) -> TanglePresentation:
    """Read a surface and a tangle file into a validated presentation.

    Args:
        surface_path (Path): `.surf` file.
        tangle_path (Path): `.tng` file.

    Raises:
        QuantumTraceError: If a file is missing or invalid.

    Returns:
        TanglePresentation: The presentation to evaluate.
    """
    texts = []
    for path in (resolve_input(surface_path), resolve_input(tangle_path)):
        try:
            texts.append((str(path), path.read_text()))
        except OSError as err:
            raise QuantumTraceError(f"cannot read input: {err.strerror}", path=str(path)) from err
    (surface_name, surface_text), (tangle_name, tangle_text) = texts
    surface = parse_surface(surface_text, surface_name)
    presentation = parse_tangle(tangle_text, split(surface), tangle_name)
    logging.info(
        f"Loaded {tangle_name}: {len(presentation.segments)} segments, "
        f"{len(presentation.junctures)} junctures"
    )
    return presentation


def _dump(data: Dict[str, Any]) -> str:
    indent = get_env_config().get("json_indent", 2)
    return json.dumps(data, indent=int(indent) if indent is not None else None, sort_keys=True)


@contextmanager
def _reported_errors() -> Iterator[None]:
    try:
        yield
    except QuantumTraceError as err:
        typer.echo(f"error: {err}", err=True)
        raise typer.Exit(EXIT_INPUT_ERROR)


def create_cli(
    corpus_dir: Optional[str] = None, env_config_arg: Optional[Dict[str, Any]] = None
) -> typer.Typer:
    """Create the command line interface of the quantum trace library

    Args:
        corpus_dir (Optional[str], optional): Directory searched for input files that are not
            found relative to the working directory. Defaults to None.
        env_config_arg (Optional[Dict[str, Any]], optional): Configuration of the run.
            Dictionary with the `max_states` and `json_indent` keys.

    Returns:
        typer.Typer: Typer class with the registered commands. See the main() function how an
        object can be instantiated.
    """
    app = typer.Typer()

    # commands read the configuration through get_env_config() when they run
    env_config = dict(env_config_arg or {})
    if corpus_dir:
        env_config.setdefault("corpus_dir", corpus_dir)
    set_env_config(env_config)

    @app.callback()
    def main(
        corpus_dir: Optional[Path] = typer.Option(
            corpus_dir, help="Directory searched for surface and tangle files"
        ),
        max_states: Optional[int] = typer.Option(
            None, help="Abort when a tangle has more juncture states (0 for no limit)"
        ),
        log_level: LoggingLevel = typer.Option(LoggingLevel.INFO, help="Set logging level"),
    ) -> None:
        """Main command arguments

        Args:
            corpus_dir (Optional[Path], optional): Directory with sample inputs.
            max_states (Optional[int], optional): Override of the configured state limit.
            log_level (LoggingLevel, optional): Executing logging level. Defaults to
                typer.Option(LoggingLevel.INFO, help="Set logging level").
        """
        if log_level not in _LOG_LEVEL_STRINGS:
            message = "invalid choice: {0} (choose from {1})".format(log_level, _LOG_LEVEL_STRINGS)
            typer.echo(message)
            raise typer.Exit(code=EXIT_INPUT_ERROR)
        log_level_int = getattr(logging, log_level, logging.INFO)
        assert isinstance(log_level_int, int)
        logging.basicConfig(level=log_level_int)
        config = get_env_config()
        if corpus_dir is not None:
            config["corpus_dir"] = str(corpus_dir)
        if max_states is not None:
            config["max_states"] = max_states

    @app.command()
    def validate(
        surface: Path = typer.Argument(..., help="Surface file (.surf)"),
        tangle: Path = typer.Argument(..., help="Tangle file (.tng)"),
        json_output: bool = typer.Option(False, "--json", help="Print JSON"),
    ) -> None:
        """Parse the inputs and print a summary of the presentation"""
        with _reported_errors():
            presentation = load_presentation(surface, tangle)
            summary = {
                "schema": 1,
                "triangles": presentation.surface.triangle_count,
                "edges": presentation.surface.edge_count,
                "exchange_matrix": exchange_matrix(presentation.surface).rows(),
                "segments": len(presentation.segments),
                "junctures": len(presentation.junctures),
                "closed": presentation.is_closed,
                "writhe": writhe_surface(presentation),
                "boundary_correction": boundary_correction(presentation),
                "states": engines.state_count(presentation, state_limit()),
            }
        if json_output:
            typer.echo(_dump(summary))
            return
        for key, value in summary.items():
            if key != "schema":
                typer.echo(f"{key}: {value}")
        typer.echo("OK")

    @app.command()
    def trace(
        surface: Path = typer.Argument(..., help="Surface file (.surf)"),
        tangle: Path = typer.Argument(..., help="Tangle file (.tng)"),
        json_output: bool = typer.Option(False, "--json", help="Print JSON"),
    ) -> None:
        """Print the quantum trace of a stated tangle"""
        with _reported_errors():
            value = engines.bw_trace(load_presentation(surface, tangle), state_limit())
        if json_output:
            typer.echo(_dump({"schema": 1, "trace": value.render()}))
        else:
            typer.echo(value.render())

    @app.command()
    def holonomy(
        surface: Path = typer.Argument(..., help="Surface file (.surf)"),
        tangle: Path = typer.Argument(..., help="Tangle file (.tng)"),
        original_normalization: bool = typer.Option(
            False, help="Write the result in the squared shear coordinates X = Z^2"
        ),
        json_output: bool = typer.Option(False, "--json", help="Print JSON"),
    ) -> None:
        """Print the quantum holonomy of a stated tangle"""
        with _reported_errors():
            presentation = load_presentation(surface, tangle)
            if original_normalization:
                value = engines.gabella_original(presentation, state_limit())
            else:
                value = engines.trhol(presentation, state_limit())
        if json_output:
            typer.echo(_dump({"schema": 1, "holonomy": value.render()}))
        else:
            typer.echo(value.render())

    @app.command()
    def check(
        surface: Path = typer.Argument(..., help="Surface file (.surf)"),
        tangle: Path = typer.Argument(..., help="Tangle file (.tng)"),
        terms: bool = typer.Option(False, help="Also print every juncture state"),
        json_output: bool = typer.Option(False, "--json", help="Print JSON"),
    ) -> None:
        """Compare the quantum trace with the twisted quantum holonomy"""
        with _reported_errors():
            report = engines.check_main_theorem(load_presentation(surface, tangle), state_limit())
        if json_output:
            data = report.as_json()
            if terms:
                data["terms"] = [t.as_json() for t in report.terms]
            typer.echo(_dump(data))
        else:
            typer.echo("PASS" if report.passed else "FAIL")
            typer.echo(f"twist: {report.twist}")
            if not report.global_ok:
                typer.echo("global sums differ")
            for failure in report.failures:
                typer.echo(f"term mismatch: {json.dumps(failure.as_json(), sort_keys=True)}")
            if terms:
                for term in report.terms:
                    typer.echo(json.dumps(term.as_json(), sort_keys=True))
        if not report.passed:
            raise typer.Exit(EXIT_FAIL)

    @app.command()
    def classical(
        surface: Path = typer.Argument(..., help="Surface file (.surf)"),
        tangle: Path = typer.Argument(..., help="Tangle file (.tng)"),
        json_output: bool = typer.Option(False, "--json", help="Print JSON"),
    ) -> None:
        """Print the classical trace and compare it with the quantum trace at w = 1"""
        with _reported_errors():
            comparison = engines.compare_classical(
                load_presentation(surface, tangle), state_limit()
            )
        verdict = "MATCH" if comparison.matches else "MISMATCH"
        if json_output:
            typer.echo(
                _dump(
                    {
                        "schema": 1,
                        "classical": str(comparison.classical),
                        "specialized": str(comparison.specialized),
                        "verdict": verdict,
                    }
                )
            )
        else:
            typer.echo(str(comparison.classical))
            typer.echo(verdict)
        if not comparison.matches:
            raise typer.Exit(EXIT_FAIL)

    @app.command()
    def report(
        surface: Path = typer.Argument(..., help="Surface file (.surf)"),
        tangle: Path = typer.Argument(..., help="Tangle file (.tng)"),
    ) -> None:
        """Print the per-state term reports as JSON"""
        with _reported_errors():
            presentation = load_presentation(surface, tangle)
            data: Dict[str, Any] = {
                "schema": 1,
                "terms": [
                    t.as_json() for t in engines.term_reports(presentation, state_limit())
                ],
            }
            if presentation.curves:
                found = engines.properties(presentation, state_limit())
                data["properties"] = {
                    "highest": found.highest_exponents,
                    "highest_coeff": str(found.highest_coefficient),
                    "q_positive": found.q_positive,
                    "star_invariant": found.star_invariant,
                    "intersections": found.intersections,
                }
        typer.echo(_dump(data))

    return app


def main() -> None:
    """Helper main function"""
    app = create_cli()
    app()


# Allow the script to be run standalone (useful during development).
if __name__ == "__main__":
    main()
