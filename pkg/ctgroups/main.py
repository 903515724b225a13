"""Command-line entry point.

    ctgroups --command classify --field 2^2 --diagram tests/data/c4.txt

Exit codes: 0 ok, 2 bad input, 3 a verification failed.
"""

import argparse
import logging
import sys
from pathlib import Path

from pydantic import ValidationError

from ctgroups.core.config import settings
from ctgroups.core.errors import AmalgamConstructionError, CTError, SearchBudgetExceeded
from ctgroups.core.field import parse_field_spec
from ctgroups.models.coords import Pointing
from ctgroups.models.run_config import RunConfig
from ctgroups.services.amalgam_service import build_amalgam
from ctgroups.services.completion_service import emit_presentation, parse_presentation, verify_presentation
from ctgroups.services.diagram_service import parse_diagram, spanning_structure
from ctgroups.services.path_service import parse_pointing
from ctgroups.services.report_service import (
    classification_report,
    completion_report,
    oracle_report,
    verify_report,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_FAILED = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ctgroups", description="Curtis-Tits amalgams of SL2 over finite fields.")
    parser.add_argument("--command", required=True, choices=["classify", "verify", "oracle", "complete", "emit"])
    parser.add_argument("--field", required=True, help="field as p^m, e.g. 2^2")
    parser.add_argument("--diagram", required=True, help="diagram file")
    parser.add_argument("--pointing", help="pointing file (default: trivial pointing)")
    parser.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument("--base", help="base vertex of the spanning tree")
    parser.add_argument("--convention", choices=["forward", "reversed"], default="forward")
    return parser


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
        logger.info(f"Report written to {out}")
    else:
        sys.stdout.write(text)


def run(config: RunConfig) -> int:
    field = parse_field_spec(config.field)
    d = parse_diagram(Path(config.diagram).read_text(encoding="utf-8"))
    sd = spanning_structure(d, config.base)
    if config.pointing:
        delta = parse_pointing(Path(config.pointing).read_text(encoding="utf-8"), d, field.m)
    else:
        delta = Pointing.trivial(field.m)

    if config.command == "classify":
        report = classification_report(d, field, sd)
        ok = True
    elif config.command == "verify":
        report = verify_report(d, field, sd, delta, config.seed, config.convention)
        ok = report.ok
    elif config.command == "oracle":
        report = oracle_report(d, field, sd, config.seed)
        ok = report.ok
    elif config.command == "complete":
        report = completion_report(d, field, sd, delta, config.seed)
        ok = report.ok
    else:
        text = emit_presentation(build_amalgam(d, delta, field, config.convention))
        _write(text, config.out)
        roundtrip = verify_presentation(parse_presentation(text))
        if not roundtrip.ok:
            logger.error(f"Presentation does not re-verify: {len(roundtrip.failures())} failed checks")
            return EXIT_FAILED
        return EXIT_OK

    _write(report.model_dump_json(indent=2) + "\n", config.out)
    if not ok:
        logger.error(f"{config.command}: verification failed")
        return EXIT_FAILED
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=settings.LOG_LEVEL, stream=sys.stderr)
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(**{k: v for k, v in vars(args).items() if v is not None})
        return run(config)
    except ValidationError as e:
        logger.error(f"Invalid run configuration: {e}")
        return EXIT_INPUT
    except AmalgamConstructionError as e:
        logger.error(f"Amalgam failed its construction checks: {e}")
        return EXIT_FAILED
    except SearchBudgetExceeded as e:
        logger.error(f"Input too large for an exhaustive run: {e}")
        return EXIT_INPUT
    except (CTError, KeyError, OSError) as e:
        logger.error(f"Bad input: {e}")
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
