"""Deterministic JSON reports.

Identical configurations must produce byte-identical reports: keys are
sorted, floats use repr round-tripping, and every report embeds the package
version and the full effective configuration.
"""

from __future__ import annotations

import json
from importlib.metadata import PackageNotFoundError, version


def package_version() -> str:
    try:
        return version("mockrep")
    except PackageNotFoundError:
        return "0.0.0+local"


def _clean(obj):
    import numpy as np

    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return [_clean(v) for v in obj.tolist()]
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, float) and obj != obj:  # NaN
        return None
    return obj


def finalize_report(report: dict, config: dict | None = None) -> dict:
    out = dict(report)
    out["version"] = package_version()
    if config is not None:
        out["config"] = _clean(config)
    return _clean(out)


def dump_report(report: dict, path=None) -> str:
    text = json.dumps(report, sort_keys=True, indent=2, allow_nan=False)
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text
