"""Color and verify a generated corpus, optionally across worker processes."""
from __future__ import annotations

import dataclasses
import hashlib
import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from .coloring import verify_acyclic
from .colorizer import ExtensionFailed, NoConfiguration, color_graph
from .generators import CorpusSpec, default_corpus, generate

JOBS_ENV = "ACYCLIC_PLANAR_JOBS"


def default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclasses.dataclass
class InstanceRecord:
    index: int
    label: str
    n: int
    m: int
    max_degree: int
    palette: int
    colors_used: int
    max_color: int
    status: str                     # ok | reject | no-configuration | extension-failed
    reason: str | None
    incidents: list[dict]
    digest: str                     # sha256 of the color list

    def as_json(self) -> dict:
        return dataclasses.asdict(self)


def run_instance(index: int, spec: CorpusSpec, fallback_radius: int = 6) -> InstanceRecord:
    g, _ = generate(spec)
    K = g.max_degree() + 7
    status, reason, used, top, incidents, digest = "ok", None, 0, 0, [], ""
    try:
        res = color_graph(g, fallback_radius)
        verdict = verify_acyclic(g, res.coloring, K)
        if not verdict:
            status, reason = "reject", str(verdict.reason)
        used = res.coloring.num_colors()
        top = res.coloring.max_color()
        incidents = [i.as_json() for i in res.stats.incidents]
        digest = hashlib.sha256(",".join(map(str, res.coloring.colors)).encode()).hexdigest()
    except NoConfiguration as exc:
        status, reason = "no-configuration", str(exc)
    except ExtensionFailed as exc:
        status, reason = "extension-failed", str(exc)
    return InstanceRecord(index, spec.label(), g.n, g.m, g.max_degree(), K, used, top,
                          status, reason, incidents, digest)


def _run_star(args):
    return run_instance(*args)


def run_corpus(specs: Sequence[CorpusSpec], jobs: int = 1, fallback_radius: int = 6) -> list[InstanceRecord]:
    """Records in corpus order, whatever the number of workers."""
    work = [(i, s, fallback_radius) for i, s in enumerate(specs)]
    if jobs <= 1:
        return [run_instance(*w) for w in work]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_star, work, chunksize=8))


def summarize(records: Sequence[InstanceRecord]) -> dict:
    ok = sum(r.status == "ok" for r in records)
    hist = Counter(r.colors_used for r in records if r.status == "ok")
    margins = [r.palette - r.max_color for r in records if r.status == "ok"]
    incidents = [(r.label, i) for r in records for i in r.incidents]
    return {
        "instances": len(records),
        "verified": ok,
        "failed": [{"label": r.label, "status": r.status, "reason": r.reason}
                   for r in records if r.status != "ok"],
        "colors_used_histogram": {str(k): hist[k] for k in sorted(hist)},
        "min_margin_to_palette": min(margins) if margins else None,
        "fallback_incidents": len(incidents),
        "unresolved_incidents": sum(not i["resolved"] for _, i in incidents),
        "incident_labels": sorted({lbl for lbl, _ in incidents}),
    }


def write_report(path, records: Sequence[InstanceRecord], summary: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for r in records:
            fh.write(json.dumps(r.as_json(), sort_keys=True) + "\n")
        fh.write(json.dumps({"summary": summary}, sort_keys=True) + "\n")


__all__ = ["JOBS_ENV", "InstanceRecord", "default_corpus", "default_jobs",
           "run_corpus", "run_instance", "summarize", "write_report"]
