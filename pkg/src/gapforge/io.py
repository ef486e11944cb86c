"""JSON and CSV artifacts: schemas, (de)serialization, plot data, run manifests."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field

import jsonschema

from .certificates import GapCertificate
from .covering import CongruenceClass, CoveringSystem

FORMAT_VERSION = 1

_DEC = {"type": "string", "pattern": "^[0-9]+$"}

COVER_SCHEMA = {
    "type": "object",
    "required": ["version", "x", "y", "complete", "classes"],
    "properties": {
        "version": {"const": FORMAT_VERSION},
        "x": {"type": ["integer", "null"]},
        "y": {"type": "integer", "minimum": 0},
        "complete": {"type": "boolean"},
        "classes": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["p", "h", "stage"],
                "properties": {
                    "p": {"type": "integer", "minimum": 2},
                    "h": {"type": "integer", "minimum": 0},
                    "stage": {"type": "integer", "minimum": 0},
                },
                "additionalProperties": False,
            },
        },
        "manifest": {"type": "object"},
    },
    "additionalProperties": False,
}

CERT_SCHEMA = {
    "type": "object",
    "required": ["version", "x", "y", "modulus", "m0", "witnesses"],
    "properties": {
        "version": {"const": FORMAT_VERSION},
        "x": {"type": ["integer", "null"]},
        "y": {"type": "integer", "minimum": 0},
        "modulus": _DEC,
        "m0": _DEC,
        "witnesses": {
            "type": "array",
            "items": {"type": "array", "prefixItems": [{"type": "integer"}, {"type": "integer"}],
                      "minItems": 2, "maxItems": 2},
        },
        "stages": {"type": "array", "items": {"type": "array", "minItems": 2, "maxItems": 2}},
        "manifest": {"type": "object"},
    },
    "additionalProperties": False,
}


class ArtifactError(ValueError):
    pass


def _validate(obj, schema, what: str):
    try:
        jsonschema.validate(obj, schema)
    except jsonschema.ValidationError as e:
        raise ArtifactError(f"invalid {what}: {e.message}") from None


def cover_to_json(cs: CoveringSystem, manifest: dict | None = None) -> dict:
    obj = {
        "version": FORMAT_VERSION,
        "x": cs.x,
        "y": cs.y,
        "complete": bool(cs.complete),
        "classes": [{"p": c.modulus, "h": c.residue, "stage": c.stage} for c in cs.classes],
    }
    if manifest is not None:
        obj["manifest"] = manifest
    _validate(obj, COVER_SCHEMA, "covering")
    return obj


def cover_from_json(obj: dict) -> CoveringSystem:
    _validate(obj, COVER_SCHEMA, "covering")
    classes = [CongruenceClass(c["p"], c["h"], c["stage"]) for c in obj["classes"]]
    return CoveringSystem(obj["y"], classes, obj["complete"], obj["x"])


def cert_to_json(cert: GapCertificate, manifest: dict | None = None) -> dict:
    obj = {
        "version": FORMAT_VERSION,
        "x": cert.x,
        "y": cert.y,
        "modulus": str(cert.modulus),
        "m0": str(cert.m0),
        "witnesses": [[u, p] for u, p in sorted(cert.witnesses.items())],
        "stages": [[p, s] for p, s in sorted(cert.stages.items())],
    }
    if manifest is not None:
        obj["manifest"] = manifest
    _validate(obj, CERT_SCHEMA, "certificate")
    return obj


def cert_from_json(obj: dict) -> GapCertificate:
    _validate(obj, CERT_SCHEMA, "certificate")
    return GapCertificate(int(obj["m0"]), int(obj["modulus"]), obj["y"],
                          {int(u): int(p) for u, p in obj["witnesses"]}, obj["x"],
                          {int(p): int(s) for p, s in obj.get("stages", [])})


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=1, separators=(",", ": ")) + "\n"


def load_json(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# CSV


def _fmt(v) -> str:
    if isinstance(v, float):
        return "nan" if math.isnan(v) else repr(v)
    return str(v)


def to_csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in columns])
    return buf.getvalue()


PLOT_COLUMNS = {
    "gaps": ["p_lo", "p_hi", "gap", "merit", "rankin_merit"],
    "gap_curve": ["p_lo", "gap", "rankin_merit"],
}


def emit_plotdata(records, kind: str = "gap_curve") -> str:
    """CSV for gap-vs-bound curves; columns fixed by ``kind``."""
    records = list(records)
    if not records:
        raise ArtifactError("no records to emit")
    cols = PLOT_COLUMNS[kind]
    rows = [r if isinstance(r, dict) else asdict(r) for r in records]
    return to_csv(rows, cols)


def write_text(path: str, text: str, stdout=None):
    """Write UTF-8 text with LF endings; '-' means stdout."""
    if path == "-":
        import sys

        (stdout or sys.stdout).write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# Manifest


@dataclass
class RunManifest:
    """What produced an artifact. Timing is kept out of files so reruns are byte-identical."""

    command: str
    parameters: dict
    seed: int | None = None
    version: str = ""
    assumptions: dict = field(default_factory=dict)
    timing: float | None = None

    def as_dict(self) -> dict:
        d = {"command": self.command, "parameters": self.parameters, "seed": self.seed,
             "version": self.version, "assumptions": self.assumptions}
        return d
