"""selberglab verify <suite...> [options]"""
from __future__ import annotations

import argparse
import os
import sys

import yaml

from .errors import ConfigError
from .report import SuiteConfig, emit_report, run_suite
from .suites import REGISTRY

CONFIG_ENV = "SELBERGLAB_CONFIG"


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="selberglab", description="Run verification suites and write a report.")
    sub = p.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run suites")
    v.add_argument("suites", nargs="*", help="suite names; 'all' runs every suite")
    v.add_argument("--config", help=f"YAML config file (default: ${CONFIG_ENV})")
    v.add_argument("--seed", type=int)
    v.add_argument("--tolerance", action="append", default=[], metavar="SUITE=VALUE")
    v.add_argument("--jobs", type=int)
    v.add_argument("--format", default="json_lines", choices=["json_lines", "csv", "summary_text"])
    v.add_argument("--out", help="write the report here instead of stdout")
    v.add_argument("--timing", action="store_true", help="fill the ms field (makes output non-reproducible)")
    sub.add_parser("list", help="list the available suites")
    return p


def load_config(path: str | None) -> SuiteConfig:
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return SuiteConfig()
    try:
        with open(path) as fh:
            data = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"bad YAML in {path}: {exc}") from exc
    if data is not None and not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    return SuiteConfig.from_mapping(data or {})


def build_config(args) -> SuiteConfig:
    cfg = load_config(args.config)
    if args.suites:
        cfg.suites = list(REGISTRY) if args.suites == ["all"] else list(args.suites)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.jobs is not None:
        cfg.jobs = args.jobs
    for item in args.tolerance:
        name, sep, value = item.partition("=")
        if not sep:
            raise ConfigError(f"--tolerance expects SUITE=VALUE, got {item!r}")
        try:
            cfg.tolerances[name] = float(value)
        except ValueError:
            raise ConfigError(f"--tolerance {name}: {value!r} is not a number") from None
    cfg.timing = cfg.timing or args.timing
    cfg.validate()
    return cfg


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "list":
        for name, suite in REGISTRY.items():
            print(f"{name:18} {suite.doc}")
        return 0
    try:
        cfg = build_config(args)
        records = run_suite(cfg)
        out = emit_report(records, args.format)
    except ConfigError as exc:
        print(f"selberglab: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(out)
    else:
        sys.stdout.buffer.write(out)
        sys.stdout.flush()
    return 0 if all(r.passed for r in records) else 1


if __name__ == "__main__":
    sys.exit(main())
