#!/usr/bin/env python

from pathlib import Path

import typer
import yaml

import quantum_trace

REPO_DIR = Path(__file__).parent.absolute()
CONFIG_FILE_PATH = REPO_DIR / "example-environment-cfg.yml"
CORPUS_DIR = REPO_DIR / "corpus"
ENV_CONFIG = {}


def read_config_file(file_path):
    with open(file_path, "r") as file:
        config_data = yaml.safe_load(file)
    return config_data


if __name__ == "__main__":

    all_config_data = read_config_file(CONFIG_FILE_PATH)

    app = typer.Typer()

    # Create a top level command for the repo CLI
    #
    @app.callback()
    def main(
        env_name: str = typer.Option("local", help="Environment name"),
    ):
        global ENV_CONFIG
        if env_name not in all_config_data:
            typer.echo(f"unknown environment {env_name} (choose from {list(all_config_data)})")
            raise typer.Exit(code=2)
        ENV_CONFIG = dict(all_config_data[env_name])
        ENV_CONFIG.setdefault("corpus_dir", str(CORPUS_DIR))
        quantum_trace.set_env_config(ENV_CONFIG)

    app.add_typer(
        quantum_trace.create_cli(corpus_dir=str(CORPUS_DIR), env_config_arg=ENV_CONFIG),
        name="qt",
    )

    app()
