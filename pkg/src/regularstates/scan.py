"""Entanglement width of the canonical witness for every regularity k at fixed n."""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from .constructions import ConstructionError, build_hard_family, build_regular_easy, easy_family_name, hard_family_case
from .width import entanglement_width

CSV_HEADER = ["k", "n", "family", "width", "exact", "runtime_ms"]


@dataclass(frozen=True)
class PhaseScanRow:
    k: int
    n: int
    family: str
    width_value: int | None
    exact: bool | None
    engine_runtime_ms: int

    @property
    def regime(self) -> str:
        if self.family == "none":
            return "none"
        return "hard" if self.family in HARD_NAMES else "easy"


HARD_NAMES = {"hexagonal-torus", "square-torus", "double-torus", "co-double-torus", "co-square-torus", "co-hexagonal-torus"}


def witness(n: int, k: int):
    """(family name, graph) for the canonical witness, or ("none", None)."""
    try:
        return easy_family_name(n, k), build_regular_easy(n, k)
    except ConstructionError:
        pass
    try:
        return hard_family_case(n, k).name, build_hard_family(n, k)
    except ConstructionError:
        return "none", None


def scan_row(n: int, k: int, exact_limit: int, effort: int = 1, seed: int = 0) -> PhaseScanRow:
    family, g = witness(n, k)
    if g is None:
        return PhaseScanRow(k, n, family, None, None, 0)
    t0 = time.perf_counter()
    report = entanglement_width(g, exact_limit, effort, seed)
    ms = int(round((time.perf_counter() - t0) * 1000))
    return PhaseScanRow(k, n, family, report.value, report.exact, ms)


def _row_args(args):
    return scan_row(*args)


def phase_scan(n: int, ks=None, exact_limit: int = 16, effort: int = 1, seed: int = 0, jobs: int = 1) -> list[PhaseScanRow]:
    """Rows for every k with n*k even (no k-regular graph exists otherwise)."""
    ks = range(1, n) if ks is None else ks
    ks = [k for k in ks if 1 <= k < n and (n * k) % 2 == 0]
    args = [(n, k, exact_limit, effort, seed) for k in ks]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            return list(pool.map(_row_args, args))
    return [scan_row(*a) for a in args]


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def rows_to_csv(rows: list[PhaseScanRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([r.k, r.n, r.family, _cell(r.width_value), _cell(r.exact), r.engine_runtime_ms])
    return buf.getvalue()


def rows_to_json(rows: list[PhaseScanRow]) -> str:
    return json.dumps([asdict(r) for r in rows], indent=2) + "\n"
