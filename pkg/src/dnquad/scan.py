"""Scans over a range of n: graph search, second-n search, JSONL output.

Output is one JSON object per line with keys ``n1``, ``quad``, ``n2s``,
``canonical_quad``, ``canonical_ns``; every integer is a decimal string.
Records are written in ascending n regardless of the worker count. After
each n is flushed, its value is written to the checkpoint file (a single
line, replaced atomically). A rerun with the same paths resumes after the
checkpoint.
"""

from __future__ import annotations

import json
import logging
import multiprocessing
import os
import traceback
from dataclasses import dataclass, field
from pathlib import Path

from .graphsearch import SearchBounds, build_graph, find_quadruples
from .model import normalize, verify_dn
from .secondn import find_all_n

log = logging.getLogger(__name__)

WORKERS_ENV = "DNQUAD_WORKERS"

DEFAULT_BOUNDS = SearchBounds(m_max=10**5, k_max=10**4, l_max=10**8)
DEFAULT_X_RANGE = (-10**6, 10**6)


class ScanError(RuntimeError):
    def __init__(self, n: int, detail: str):
        super().__init__(f"scan failed at n = {n}:\n{detail}")
        self.n = n


@dataclass(frozen=True)
class ScanConfig:
    n_from: int
    n_to: int
    out: Path
    bounds: SearchBounds = DEFAULT_BOUNDS
    x_from: int = DEFAULT_X_RANGE[0]
    x_to: int = DEFAULT_X_RANGE[1]
    workers: int = 1
    checkpoint: Path | None = None
    skip_2mod4: bool = False
    include_single: bool = False

    def __post_init__(self):
        if self.n_from > self.n_to:
            raise ValueError(f"empty n range [{self.n_from}, {self.n_to}]")
        if self.x_from > self.x_to:
            raise ValueError(f"empty x range [{self.x_from}, {self.x_to}]")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        object.__setattr__(self, "out", Path(self.out))
        ckpt = Path(self.checkpoint) if self.checkpoint else Path(str(self.out) + ".ckpt")
        object.__setattr__(self, "checkpoint", ckpt)


@dataclass(frozen=True)
class ResultRecord:
    n1: int
    quad: tuple[int, ...]
    n2s: tuple[int, ...]
    canonical_quad: tuple[int, ...]
    canonical_ns: tuple[int, ...]

    def to_json(self) -> str:
        return json.dumps({
            "n1": str(self.n1),
            "quad": [str(x) for x in self.quad],
            "n2s": [str(x) for x in self.n2s],
            "canonical_quad": [str(x) for x in self.canonical_quad],
            "canonical_ns": [str(x) for x in self.canonical_ns],
        })

    @classmethod
    def from_json(cls, line: str) -> "ResultRecord":
        obj = json.loads(line)
        ints = lambda xs: tuple(int(x) for x in xs)  # noqa: E731
        return cls(int(obj["n1"]), ints(obj["quad"]), ints(obj["n2s"]),
                   ints(obj["canonical_quad"]), ints(obj["canonical_ns"]))


@dataclass
class ScanSummary:
    n_processed: int = 0
    n_skipped: int = 0
    records: int = 0
    quadruples: int = 0
    resumed_after: int | None = None
    skipped: list[int] = field(default_factory=list)


def records_for_n(n: int, bounds: SearchBounds, x_from: int, x_to: int,
                  include_single: bool = False) -> tuple[list[ResultRecord], int]:
    """Records for one n, plus the number of quadruples found.

    Only quadruples with a second n in the window are kept unless
    ``include_single`` is set, in which case every quadruple is recorded.
    """
    quads = find_quadruples(build_graph(n, bounds))
    records = []
    for quad in quads:
        n2s = tuple(x for x in find_all_n(quad, x_from, x_to) if x != n)
        if not n2s and not include_single:
            continue
        canon = normalize(quad, (n,) + n2s)
        records.append(ResultRecord(n, quad, n2s, canon.quad, canon.ns))
    return records, len(quads)


def _worker(args):
    n, bounds, x_from, x_to, include_single = args
    try:
        records, nquads = records_for_n(n, bounds, x_from, x_to, include_single)
        return n, [r.to_json() for r in records], nquads, None
    except Exception:
        return n, None, 0, traceback.format_exc()


def _should_skip(n: int, cfg: ScanConfig) -> bool:
    return n == 0 or (cfg.skip_2mod4 and n % 4 == 2)


def read_checkpoint(path: Path) -> int | None:
    try:
        text = Path(path).read_text().strip()
    except FileNotFoundError:
        return None
    return int(text) if text else None


def write_checkpoint(path: Path, n: int) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w") as fh:
        fh.write(f"{n}\n")
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def _truncate_after(out: Path, last_n: int) -> None:
    """Keep only complete records with n1 <= last_n."""
    if not out.exists():
        return
    keep = 0
    with open(out, "rb") as fh:
        for raw in fh:
            if not raw.endswith(b"\n"):
                break
            try:
                n1 = int(json.loads(raw)["n1"])
            except (ValueError, KeyError):
                break
            if n1 > last_n:
                break
            keep += len(raw)
    with open(out, "r+b") as fh:
        fh.truncate(keep)


def run_scan(cfg: ScanConfig, *, stop_after: int | None = None) -> ScanSummary:
    """Scan n_from..n_to and append records to ``cfg.out``.

    ``stop_after`` ends the run after that many values of n have been
    checkpointed, as if interrupted (used to test resume).
    """
    summary = ScanSummary()
    start = cfg.n_from
    last = read_checkpoint(cfg.checkpoint)
    if last is not None and cfg.n_from <= last:
        summary.resumed_after = last
        start = last + 1
        _truncate_after(cfg.out, last)
        log.info("resuming after n = %d", last)
        mode = "a"
    else:
        mode = "w"
    cfg.out.parent.mkdir(parents=True, exist_ok=True)

    todo = []
    for n in range(start, cfg.n_to + 1):
        if _should_skip(n, cfg):
            summary.skipped.append(n)
        else:
            todo.append(n)
    summary.n_skipped = len(summary.skipped)
    skipped = set(summary.skipped)

    jobs = [(n, cfg.bounds, cfg.x_from, cfg.x_to, cfg.include_single) for n in todo]
    pool = multiprocessing.Pool(cfg.workers) if cfg.workers > 1 and len(jobs) > 1 else None
    results = pool.imap(_worker, jobs, chunksize=1) if pool else map(_worker, jobs)
    done = 0
    try:
        with open(cfg.out, mode) as fh:
            pending = iter(results)
            for n in range(start, cfg.n_to + 1):
                if n not in skipped:
                    got_n, lines, nquads, err = next(pending)
                    assert got_n == n
                    if err is not None:
                        log.error("worker failed at n = %d", n)
                        raise ScanError(n, err)
                    for line in lines:
                        fh.write(line + "\n")
                    fh.flush()
                    os.fsync(fh.fileno())
                    summary.n_processed += 1
                    summary.records += len(lines)
                    summary.quadruples += nquads
                    log.debug("n = %d: %d quadruples, %d records", n, nquads, len(lines))
                write_checkpoint(cfg.checkpoint, n)
                done += 1
                if stop_after is not None and done >= stop_after:
                    break
    finally:
        if pool:
            pool.terminate()
            pool.join()
    return summary


def audit(path: Path) -> list[str]:
    """Re-verify every record in a JSONL file; returns a list of problems."""
    problems = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            rec = ResultRecord.from_json(line)
            for n in (rec.n1,) + rec.n2s:
                w = verify_dn(rec.quad, n)
                if not w:
                    problems.append(f"line {lineno}: {w}")
            canon = normalize(rec.quad, (rec.n1,) + rec.n2s)
            if (canon.quad, canon.ns) != (rec.canonical_quad, rec.canonical_ns):
                problems.append(f"line {lineno}: canonical fields do not match normalize")
    return problems
