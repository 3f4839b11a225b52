"""Deterministic artifact emission (CSV/JSON) and run-configuration parsing
for the command-line interface.

CSV values are formatted with 12 significant digits; JSON reports carry a
schema_version field and sorted keys so that identical inputs produce
byte-identical files.
"""

import configparser
import json
import os
import pathlib

import numpy as np

from .errors import ConfigError

SCHEMA_VERSION = 1
OUTDIR_ENV = "DIPCRYSTAL_OUTDIR"


def resolve_outdir(override=None):
    """Output directory: CLI flag, else $DIPCRYSTAL_OUTDIR, else cwd."""
    d = pathlib.Path(override or os.environ.get(OUTDIR_ENV, "."))
    d.mkdir(parents=True, exist_ok=True)
    return d


def fmt(value):
    """Canonical scalar formatting: floats at 12 significant digits."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.12g" % float(value)
    if isinstance(value, complex):
        return "%.12g%+.12gj" % (value.real, value.imag)
    return str(value)


def write_csv(path, header, rows):
    """Write rows (iterables of scalars) under a fixed header; returns path."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    pathlib.Path(path).write_text("\n".join(lines) + "\n")
    return path


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, float) and obj in (float("inf"), float("-inf")):
        return "inf" if obj > 0 else "-inf"
    return obj


def write_json(path, payload):
    """Write a JSON report with schema_version; returns path."""
    doc = {"schema_version": SCHEMA_VERSION}
    doc.update(_jsonable(payload))
    pathlib.Path(path).write_text(
        json.dumps(doc, indent=2, sort_keys=True, allow_nan=True) + "\n")
    return path


# ---------------------------------------------------------------------------
# Run configuration

_SCHEMA = {
    "molecule": {"mu0_debye", "B_GHz", "mass_amu", "gamma_sr_MHz"},
    "states": {"g", "e", "E_b"},
    "crystal": {"dimension", "a0_nm", "N", "nu_kHz", "temperature_uK",
                "nu_perp_kHz", "gamma", "tau", "kappa", "epsilon",
                "nu_perp_tilde"},
    "cavity": {"d_um", "Gamma_c_kHz", "lambda_c_mm", "mode"},
    "numerics": {"N_max", "points", "tolerance"},
}


def load_config(path):
    """Parse the structured key-value config file into {section: {key: str}}.

    Sections and keys are validated against the documented schema; unknown
    entries are rejected.  Values stay strings; commands convert them."""
    parser = configparser.ConfigParser()
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}")
    except configparser.Error as exc:
        raise ConfigError(f"malformed config file: {exc}")
    out = {}
    for section in parser.sections():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown config section [{section}]")
        out[section] = {}
        for key, val in parser.items(section):
            matches = [k for k in _SCHEMA[section] if k.lower() == key.lower()]
            if not matches:
                raise ConfigError(f"unknown key '{key}' in section [{section}]")
        # keep the canonical capitalization from the schema
            out[section][matches[0]] = val
    return out


def config_get(cfg, section, key, cast=str, default=None):
    """Fetch cfg[section][key] with casting; raises ConfigError on bad values."""
    raw = cfg.get(section, {}).get(key)
    if raw is None:
        return default
    try:
        return cast(raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad value for {section}.{key}: {exc}")
