import json
import logging
import sys
import typing
from dataclasses import dataclass

import polars as pl

from amice_utils import __version__
from amice_utils.config import RunConfig

logger = logging.getLogger(__name__)

TOOL_NAME: str = "amice_utils"


@dataclass(frozen=True)
class CommandResult:
    """ What a command handler hands back: the JSON result, optional table rows for
    ``--format table``, and the exit code """
    result: dict
    rows: typing.Optional[list[dict]] = None
    exit_code: int = 0


def envelope(command: str, config: typing.Optional[RunConfig], result: dict) -> dict:
    return {
        "tool": TOOL_NAME,
        "version": __version__,
        "command": command,
        "config": None if config is None else config.to_dict(),
        "result": result,
    }


def error_envelope(command: typing.Optional[str], config: typing.Optional[RunConfig], error: Exception) -> dict:
    report = envelope(command, config, None)
    report["error"] = {"type": type(error).__name__, "message": str(error)}
    return report


def render_json(report: dict) -> str:
    return json.dumps(report, indent=4) + "\n"


def render_table(rows: list[dict]) -> str:
    """ CSV through a polars DataFrame, every column as text """
    if not rows:
        return ""
    columns = list(dict.fromkeys(k for row in rows for k in row))
    data = {c: [None if row.get(c) is None else str(row.get(c)) for row in rows] for c in columns}
    df = pl.DataFrame(data, schema={c: pl.Utf8 for c in columns})
    return df.write_csv()


def _emit(text: str, outfile: typing.Optional[str]):
    if outfile is None:
        sys.stdout.write(text)
        return
    with open(outfile, "w") as f:
        logger.info(f"Writing report to {f.name}")
        f.write(text)


def write_report(command: str, config: RunConfig, outcome: CommandResult, outfile: str = None):
    if config.output_format == "table":
        if outcome.rows is None:
            logger.warning(f"{command} has no tabular output, writing JSON")
        else:
            _emit(render_table(outcome.rows), outfile)
            return
    _emit(render_json(envelope(command, config, outcome.result)), outfile)


def write_error(command: typing.Optional[str], config: typing.Optional[RunConfig], error: Exception,
                outfile: str = None):
    _emit(render_json(error_envelope(command, config, error)), outfile)
