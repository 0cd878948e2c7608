"""Verification sweeps over ranges of k, with deterministic record output.

Each sweep maps a per-k worker over the k range (optionally in a process
pool), then concatenates the slices in ascending k.  Records are sorted by
(k, p, q) inside a slice, so output is identical for any worker count.
"""

from __future__ import annotations

import csv
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence, Union

from .classify import (FamilyMatch, gm_q_set, kinv2_triple, match_families,
                       reduce_p, conjecture_check)
from .errors import UsageError
from .invariants import Triple, gbar, is_genus_minimizing
from .params import QType, derive_params
from .structure import check_structure

log = logging.getLogger(__name__)

PERIOD = "period"
FORMATS = ("jsonl", "csv")
COLUMNS = ("k", "p", "q", "gbar", "gm", "families", "consistent")


@dataclass
class SweepConfig:
    k_min: int
    k_max: int
    # "period" means k^2 < p <= 2k^2; otherwise an explicit list of p
    p_window: Union[str, Sequence[int]] = PERIOD
    workers: int = 1
    out: Optional[Path] = None
    fmt: str = "jsonl"

    def __post_init__(self):
        if self.k_min < 2 or self.k_min > self.k_max:
            raise UsageError(f"need 2 <= kmin <= kmax, got {self.k_min}..{self.k_max}")
        if self.workers < 1:
            raise UsageError(f"workers must be >= 1, got {self.workers}")
        if self.fmt not in FORMATS:
            raise UsageError(f"unknown format {self.fmt!r}")
        if self.out is not None:
            self.out = Path(self.out)

    @property
    def ks(self) -> range:
        return range(self.k_min, self.k_max + 1)

    def p_values(self, k: int) -> list[int]:
        if self.p_window == PERIOD:
            return list(range(k * k + 1, 2 * k * k + 1))
        return sorted(p for p in self.p_window if p > k * k)


@dataclass
class VerificationRecord:
    k: int
    p: Optional[int]
    q: Optional[int]
    gbar: int
    gm: bool
    consistent: bool
    families: tuple[FamilyMatch, ...] = ()
    # wall time is kept for diagnostics but never serialised
    elapsed_ns: int = field(default=0, compare=False)

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "p": self.p,
            "q": self.q,
            "gbar": self.gbar,
            "gm": self.gm,
            "families": [m.as_dict() for m in self.families],
            "consistent": self.consistent,
        }

    def csv_row(self) -> list:
        d = self.as_dict()
        d["families"] = ";".join(m.token() for m in self.families)
        return [d[c] for c in COLUMNS]


@dataclass
class SweepSummary:
    kind: str
    records: list[VerificationRecord]
    skipped: int = 0

    @property
    def checked(self) -> int:
        return len(self.records)

    @property
    def mismatches(self) -> list[VerificationRecord]:
        return [r for r in self.records if not r.consistent]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def line(self) -> str:
        return (f"{self.kind}: checked={self.checked} skipped={self.skipped} "
                f"mismatches={len(self.mismatches)}")


# --- per-k workers (module level so they pickle) --------------------------

def _timed(fn: Callable[[], VerificationRecord]) -> VerificationRecord:
    t0 = time.perf_counter_ns()
    rec = fn()
    rec.elapsed_ns = time.perf_counter_ns() - t0
    return rec


def k2_slice(k: int) -> tuple[list[VerificationRecord], int]:
    """Brute-force every unit q mod k^2 and compare with the closed forms."""
    N = k * k
    forms = gm_q_set(k)
    out = []
    for q in range(1, N):
        if gcd(q, k) != 1:
            continue

        def one(q=q):
            g = gbar(Triple(N, q, k)).gbar
            gm = g < 2 * N
            return VerificationRecord(k, N, q, g, gm, gm == (q in forms))
        out.append(_timed(one))
    return out, 0


def theorem_slice(k: int, p_values: Sequence[int]) -> tuple[list[VerificationRecord], int]:
    out, skipped = [], 0
    for p in p_values:
        if gcd(p, k) != 1:
            skipped += 1
            continue

        def one(p=p):
            c = conjecture_check(p, k * k, k)
            return VerificationRecord(k, p, c.q, c.gbar, c.gm, c.consistent,
                                      c.families.matches)
        out.append(_timed(one))
    return out, skipped


def reduction_slice(k: int, p_values: Sequence[int]) -> tuple[list[VerificationRecord], int]:
    out, skipped = [], 0
    for p in p_values:
        if gcd(p, k) != 1:
            skipped += 1
            continue

        def one(p=p):
            t = kinv2_triple(p, k)
            gm = is_genus_minimizing(t)
            reduced = is_genus_minimizing(reduce_p(p, k).triple)
            return VerificationRecord(k, p, t.q, gbar(t).gbar, gm, gm == reduced,
                                      match_families(p, k).matches)
        out.append(_timed(one))
    return out, skipped


def structure_slice(k: int) -> tuple[list[VerificationRecord], int]:
    """Structural checks for every genus-minimising positive-type q at k^2."""
    if k < 3:
        return [], 0
    N = k * k
    out = []
    for q in sorted(gm_q_set(k)):
        if derive_params(k, q).q_type is not QType.POSITIVE:
            continue

        def one(q=q):
            chk = check_structure(k, q)
            g = gbar(Triple(N, q, k)).gbar
            return VerificationRecord(k, N, q, g, chk.genus_minimizing, chk.ok)
        out.append(_timed(one))
    return out, 0


def _call(args):
    fn, k, extra = args
    return fn(k, *extra)


def run_slices(cfg: SweepConfig, fn, per_k_args: Callable[[int], tuple] = lambda k: ()):
    """Map ``fn`` over k-slices and reduce in ascending k."""
    jobs = [(fn, k, per_k_args(k)) for k in cfg.ks]
    if cfg.workers == 1:
        results: Iterable = map(_call, jobs)
    else:
        pool = ProcessPoolExecutor(max_workers=cfg.workers)
        results = pool.map(_call, jobs)
    records, skipped = [], 0
    try:
        for recs, sk in results:
            records.extend(sorted(recs, key=lambda r: (r.k, r.p or 0, r.q or 0)))
            skipped += sk
    finally:
        if cfg.workers != 1:
            pool.shutdown()
    return records, skipped


def verify_k2(cfg: SweepConfig) -> SweepSummary:
    recs, sk = run_slices(cfg, k2_slice)
    return _finish(cfg, SweepSummary("verify-k2", recs, sk))


def verify_theorem(cfg: SweepConfig) -> SweepSummary:
    recs, sk = run_slices(cfg, theorem_slice, lambda k: (cfg.p_values(k),))
    return _finish(cfg, SweepSummary("verify-theorem", recs, sk))


def verify_reduction(cfg: SweepConfig) -> SweepSummary:
    recs, sk = run_slices(cfg, reduction_slice, lambda k: (cfg.p_values(k),))
    return _finish(cfg, SweepSummary("verify-reduction", recs, sk))


def verify_structure(cfg: SweepConfig) -> SweepSummary:
    recs, sk = run_slices(cfg, structure_slice)
    return _finish(cfg, SweepSummary("verify-structure", recs, sk))


def _finish(cfg: SweepConfig, summary: SweepSummary) -> SweepSummary:
    log.info(summary.line())
    if cfg.out is not None:
        write_records(summary.records, cfg.out, cfg.fmt)
    return summary


# --- output ---------------------------------------------------------------

def write_records(records: Iterable[VerificationRecord], path, fmt: str = "jsonl") -> None:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as fh:
            if fmt == "jsonl":
                for r in records:
                    fh.write(json.dumps(r.as_dict(), separators=(",", ":")) + "\n")
            elif fmt == "csv":
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(COLUMNS)
                for r in records:
                    w.writerow(r.csv_row())
            else:
                raise UsageError(f"unknown format {fmt!r}")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
