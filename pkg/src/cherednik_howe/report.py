"""Report assembly and deterministic JSON serialization."""
from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from typing import Any, Dict, List, Optional

from . import __version__
from .coxeter import AssumptionVerdict

SCHEMA_VERSION = "1"


def jsonable(obj: Any) -> Any:
    """Rationals become "p/q" strings, tuples become lists; never floats."""
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        raise TypeError("floats are not allowed in reports")
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, AssumptionVerdict):
        return verdict_json(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def verdict_json(v: Optional[AssumptionVerdict]) -> Optional[dict]:
    if v is None:
        return None
    return {
        "generic": v.generic,
        "strong": v.strong,
        "violations": list(v.violations),
        "strong_violations": list(v.strong_violations),
        "n_values": {lab: str(x) for lab, x in v.n_values},
    }


def _find_witness(obj: Any):
    if isinstance(obj, dict):
        if "witness" in obj:
            w = obj["witness"]
            if "block" in obj and not (isinstance(w, dict) and "block" in w):
                # keep the block index next to a bare vector so it can be replayed
                w = {"block": obj["block"], **({"sigma": obj["sigma"]} if "sigma" in obj else {}), "vector": w}
            return w
        for v in obj.values():
            w = _find_witness(v)
            if w is not None:
                return w
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict) and v.get("status") in ("pass", "skipped"):
                continue
            w = _find_witness(v)
            if w is not None:
                return w
    return None


def finalize_section(section: dict) -> dict:
    """Make sure a failing section carries a witness at the top level."""
    if section.get("status") == "fail" and "witness" not in section:
        w = _find_witness({k: v for k, v in section.items() if k != "status"})
        if w is None and section.get("failures"):
            w = section["failures"][0]
        section["witness"] = w if w is not None else {"note": "no replayable witness recorded"}
    return section


def header(command: str, rs=None, group=None, c=None, tau: Optional[str] = None, n: Optional[int] = None, verdict=None) -> dict:
    return {
        "command": command,
        "group": rs.name if rs is not None else None,
        "r": rs.rank if rs is not None else None,
        "order": group.order if group is not None else None,
        "c": c.label() if c is not None else None,
        "tau": tau,
        "N": n,
        "assumption": verdict_json(verdict),
        "version": __version__,
        "schema_version": SCHEMA_VERSION,
    }


def build_report(head: dict, sections: List[dict]) -> dict:
    sections = [finalize_section(s) for s in sections]
    status = "fail" if any(s["status"] == "fail" for s in sections) else "pass"
    return {"header": head, "status": status, "checks": sections}


def dumps(report: dict) -> str:
    return json.dumps(jsonable(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_schema() -> Dict[str, Any]:
    text = resources.files(__package__).joinpath("report_schema.json").read_text(encoding="utf-8")
    return json.loads(text)
