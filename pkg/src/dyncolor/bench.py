"""Experiment runner: feed a stream to a colorer, verify, audit and report.

A run is fully determined by its :class:`ExperimentConfig`; two runs with
the same config produce identical reports apart from ``wall_time``.
"""
from __future__ import annotations

import csv
import json
import math
import time
from collections.abc import Iterable
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from .base import Colorer, GreedyColorer
from .bucket import A1Colorer, A2Colorer
from .graph import DynamicGraph, Kind, UpdateEvent
from .level_const import ConstLevelColorer
from .level_log import LogLevelColorer
from .levels import LevelColorer
from .oracle import Violation, ViolationKind, verify_proper
from .sparse_dense import SparseDenseColorer
from .streams import (
    AdaptiveConflict,
    UpdateStream,
    gen_flip_stream,
    gen_oblivious_stream,
    gen_vertex_stream,
    parse_stream,
)

ALGORITHMS = ("greedy", "a1", "a2", "log", "const", "sparse-dense")
GENERATORS = ("oblivious", "adaptive-conflict", "flip", "vertex")
VERIFY_MODES = ("never", "every", "end")


class ConfigError(ValueError):
    """An experiment configuration outside its documented ranges."""


class VerificationFailure(RuntimeError):
    def __init__(self, step: int, violations: list[Violation]) -> None:
        self.step = step
        self.violations = violations
        shown = ", ".join(f"{v.kind.value}{v.witness}" for v in violations[:5])
        super().__init__(f"improper coloring after update {step}: {shown}")


@dataclass
class ExperimentConfig:
    algo: str = "greedy"
    # stream source: a file, or a generator
    stream: str | None = None
    gen: str | None = "oblivious"
    n: int = 100
    t: int = 1000
    seed: int = 0
    verify: str = "end"
    d: int = 2
    n_r: int | None = None
    static: str = "greedy"
    beta: int = 4
    epsilon: float = 0.3
    theta: float = 1 / 20
    batch_override: int | None = None
    recompute_every: int | None = None
    track_surplus: bool = False
    max_degree: int = 16
    k: int = 3
    audit: bool = False
    audit_every: int = 0
    trace: bool = False
    lazy_deletions: bool = False

    def validate(self) -> None:
        if self.algo not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {self.algo!r}; choose from {', '.join(ALGORITHMS)}")
        if self.stream is None and self.gen not in GENERATORS:
            raise ConfigError(f"unknown generator {self.gen!r}; choose from {', '.join(GENERATORS)}")
        if self.verify not in VERIFY_MODES:
            raise ConfigError(f"unknown verify mode {self.verify!r}")
        if self.stream is None:
            if self.n < 2:
                raise ConfigError(f"n must be >= 2, got {self.n}")
            if self.t < 0:
                raise ConfigError(f"t must be >= 0, got {self.t}")
        if self.d < 1:
            raise ConfigError(f"d must be >= 1, got {self.d}")
        if self.n_r is not None and self.n_r < 2:
            raise ConfigError(f"N_R must be >= 2, got {self.n_r}")
        if self.static not in ("greedy", "exact"):
            raise ConfigError(f"unknown static colorer {self.static!r}")
        if self.beta < 2:
            raise ConfigError(f"beta must be >= 2, got {self.beta}")
        if not 0 < self.epsilon < 1:
            raise ConfigError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if self.theta <= 0:
            raise ConfigError(f"theta must be positive, got {self.theta}")
        if self.batch_override is not None and self.batch_override < 1:
            raise ConfigError(f"batch override must be >= 1, got {self.batch_override}")
        if self.recompute_every is not None and self.recompute_every < 1:
            raise ConfigError(f"recompute interval must be >= 1, got {self.recompute_every}")
        if self.max_degree < 1:
            raise ConfigError(f"max degree must be >= 1, got {self.max_degree}")
        if self.k < 0:
            raise ConfigError(f"k must be >= 0, got {self.k}")
        if self.audit_every < 0:
            raise ConfigError(f"audit interval must be >= 0, got {self.audit_every}")


@dataclass
class MetricsReport:
    algo: str
    seed: int
    n0: int
    updates: int = 0
    insertions: int = 0
    recolorings: int = 0
    amortized_recolorings: float = 0.0
    work: int = 0
    init_work: int = 0
    amortized_work: float = 0.0
    colors_used: int = 0
    max_color: int = 0
    delta: int = 0
    n_final: int = 0
    max_color_load: int = 0
    violations: int = 0
    invariant_violations: int = 0
    audits: dict = field(default_factory=dict)
    epochs: dict | None = None
    surplus: list | None = None
    trace: list | None = None
    config: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, with_wall_time: bool = True) -> str:
        d = self.to_dict()
        if not with_wall_time:
            d.pop("wall_time")
        return json.dumps(d, sort_keys=True, indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> MetricsReport:
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in d.items() if k in names})


CSV_COLUMNS = (
    "algo",
    "seed",
    "n0",
    "updates",
    "insertions",
    "recolorings",
    "amortized_recolorings",
    "work",
    "init_work",
    "amortized_work",
    "colors_used",
    "max_color",
    "delta",
    "max_color_load",
    "violations",
    "invariant_violations",
    "wall_time",
)


def emit_report(report: MetricsReport, path: str | Path | None, csv_path: str | Path | None = None) -> str:
    """Write the JSON report (if ``path``) and append a CSV row (if ``csv_path``); returns the JSON."""
    text = report.to_json()
    if path is not None:
        Path(path).write_text(text + "\n")
    if csv_path is not None:
        p = Path(csv_path)
        new = not p.exists() or p.stat().st_size == 0
        with p.open("a", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            if new:
                w.writerow(CSV_COLUMNS)
            d = report.to_dict()
            w.writerow([d[c] for c in CSV_COLUMNS])
    return text


def make_colorer(cfg: ExperimentConfig, n0: int) -> Colorer:
    algo = cfg.algo
    if algo == "greedy":
        return GreedyColorer(n0, cfg.seed)
    if algo == "a1":
        return A1Colorer(n0, cfg.seed, d=cfg.d, n_r=cfg.n_r, static=cfg.static)
    if algo == "a2":
        return A2Colorer(n0, cfg.seed, d=cfg.d, n_r=cfg.n_r, static=cfg.static)
    if algo == "log":
        return LogLevelColorer(n0, cfg.seed, beta=cfg.beta, lazy_deletions=cfg.lazy_deletions)
    if algo == "const":
        return ConstLevelColorer(n0, cfg.seed, lazy_deletions=cfg.lazy_deletions)
    if algo == "sparse-dense":
        return SparseDenseColorer(
            n0,
            cfg.seed,
            epsilon=cfg.epsilon,
            theta=cfg.theta,
            batch_override=cfg.batch_override,
            recompute_every=cfg.recompute_every,
            track_surplus=cfg.track_surplus,
        )
    raise ConfigError(f"unknown algorithm {algo!r}")


def load_stream(cfg: ExperimentConfig) -> UpdateStream | None:
    """The stream to replay, or None for the adaptive adversary (generated online)."""
    if cfg.stream is not None:
        return parse_stream(Path(cfg.stream).read_text())
    if cfg.gen == "oblivious":
        return gen_oblivious_stream(cfg.n, cfg.t, cfg.seed)
    if cfg.gen == "flip":
        return gen_flip_stream(cfg.n, cfg.t, cfg.seed, cfg.max_degree)
    if cfg.gen == "vertex":
        return gen_vertex_stream(cfg.n, cfg.k, cfg.seed)
    return None


class IncrementalVerifier:
    """Re-checks only the vertices an update could have broken.

    Keeps its own copy of the coloring and its own color -> vertices index,
    fed from the colorer's write log, so a check costs about
    ``min(load, degree)`` per checked vertex. Checking the vertices whose
    color changed plus the endpoints of the update is complete as long as
    the coloring was proper before the update: a new monochromatic edge
    has a recolored endpoint or is itself new.
    """

    def __init__(self, g: DynamicGraph, chi: dict[int, int]) -> None:
        self.g = g
        self.chi: dict[int, int] = {}
        self.members: dict[int, set[int]] = {}
        self.sync(chi, list(chi))

    def sync(self, chi: dict[int, int], vs: Iterable[int]) -> list[int]:
        """Copy the colors of ``vs``; returns the vertices whose color actually changed."""
        mine, members = self.chi, self.members
        moved = []
        for v in vs:
            old = mine.get(v)
            new = chi.get(v) if v in self.g.adj else None
            if old == new:
                continue
            moved.append(v)
            if old is not None:
                members[old].discard(v)
            if new is None:
                mine.pop(v, None)
            else:
                mine[v] = new
                members.setdefault(new, set()).add(v)
        return moved

    def check(self, touched: Iterable[int], palette: int | None) -> list[Violation]:
        g = self.g
        adj, chi, members = g.adj, self.chi, self.members
        out: set[Violation] = set()
        for v in set(touched):
            if v not in adj:
                continue
            c = chi.get(v)
            if c is None:
                out.add(Violation(ViolationKind.MISSING_COLOR, (v,)))
                continue
            if c < 1 or (palette is not None and c > palette):
                out.add(Violation(ViolationKind.PALETTE_OVERFLOW, (v, c)))
            same = members.get(c, set())
            nbrs = adj[v]
            pool = same if len(same) < len(nbrs) else nbrs
            for w in pool:
                if w != v and w in nbrs and w in same and g.has_edge(v, w):
                    a, b = (v, w) if v < w else (w, v)
                    out.add(Violation(ViolationKind.MONOCHROMATIC_EDGE, (a, b, c)))
        return sorted(out, key=lambda x: (x.kind.value, x.witness))


def _endpoints(e: UpdateEvent) -> tuple[int, ...]:
    if e.kind is Kind.VERTEX_INSERT:
        return (e.u, *e.nbrs)
    if e.v is None:
        return (e.u,)
    return (e.u, e.v)


class _Auditor:
    """Per-update invariant checks for the level and sparse-dense colorers."""

    def __init__(self, colorer: Colorer, every: int) -> None:
        self.c = colorer
        self.every = every
        self.counts = {
            "candidate_bound_checks": 0,
            "candidate_bound_violations": 0,
            "invariant_checks": 0,
            "invariant_violations": 0,
            "full_sweeps": 0,
        }
        if isinstance(colorer, LevelColorer):
            colorer.audit_touched = set()

    def step(self, index: int) -> int:
        c = self.c
        bad = 0
        full = self.every and index % self.every == 0
        if isinstance(c, LevelColorer):
            touched = c.audit_touched if not full else None
            c.audit_touched = set()
            bad += self._levels(touched)
        elif isinstance(c, SparseDenseColorer) and full:
            bad += self._sweep_generic()
        if full:
            self.counts["full_sweeps"] += 1
        return bad

    def final(self) -> int:
        self.counts["full_sweeps"] += 1
        if isinstance(self.c, LevelColorer):
            return self._levels(None)
        return self._sweep_generic()

    def _levels(self, vs) -> int:
        c = self.c
        bad = 0
        if isinstance(c, LogLevelColorer):
            self.counts["candidate_bound_checks"] += len(c.level) if vs is None else len(vs)
            short = c.candidate_bound_violations(vs)
            self.counts["candidate_bound_violations"] += len(short)
            inv = c.check_invariants(vs)
            self.counts["invariant_checks"] += 1
            self.counts["invariant_violations"] += len(inv)
            bad += len(short) + len(inv)
        return bad

    def _sweep_generic(self) -> int:
        inv = self.c.check_invariants()
        self.counts["invariant_checks"] += 1
        self.counts["invariant_violations"] += len(inv)
        return len(inv)


def _colorer_audits(c: Colorer) -> dict:
    out: dict = {}
    if isinstance(c, LogLevelColorer):
        big = [length for d, length in c.chain_log if d >= 50]
        out["chains"] = len(c.chain_log)
        out["chains_delta50"] = len(big)
        out["mean_chain_delta50"] = sum(big) / len(big) if big else None
        out["max_chain"] = max((length for _, length in c.chain_log), default=0)
        out["max_fanout"] = c.max_fanout
        out["draws"] = c.draws
        out["recursive_draws"] = c.recursive_draws
        out["level_moves"] = c.level_moves
        out["top_level"] = c.top_level
    elif isinstance(c, ConstLevelColorer):
        out["random_recolors"] = c.random_calls
        out["deterministic_recolors"] = c.deterministic_calls
        out["original_calls"] = c.original_calls
        out["induced_calls"] = c.induced_calls
        out["palette_records"] = len(c.palette_log)
        out["palette_cap_violations"] = len(c.palette_cap_violations())
        out["phi_mismatches"] = c.phi_mismatches
        out["cap_level"] = c.cap_level
    elif isinstance(c, SparseDenseColorer):
        out.update(c.stats)
        out["max_load_seen"] = c.max_load_seen
        out["load_bound_violations"] = c.load_violations
        out["final_load_bound"] = None if math.isinf(c.load_bound()) else round(c.load_bound(), 6)
    elif isinstance(c, (A1Colorer, A2Colorer)):
        out["resets"] = c.resets
        out["cascades"] = c.cascades
        out["n_r"] = c.n_r
        out["moves_per_level"] = list(c.moves_per_level)
        out["bucket_sizes"] = c.bucket_sizes()
        out["high_points"] = list(c.h)
    return out


def run_experiment(cfg: ExperimentConfig, stream: UpdateStream | None = None) -> MetricsReport:
    """Run one experiment; raises :class:`VerificationFailure` on an improper coloring."""
    return execute(cfg, stream)[0]


def execute(cfg: ExperimentConfig, stream: UpdateStream | None = None) -> tuple[MetricsReport, Colorer]:
    """:func:`run_experiment` that also hands back the finished colorer for inspection."""
    cfg.validate()
    t0 = time.perf_counter()
    if stream is None:
        stream = load_stream(cfg)
    adversary = None
    if stream is None:
        adversary = AdaptiveConflict(cfg.seed)
        n0, total = cfg.n, cfg.t
    else:
        n0, total = stream.n0, len(stream.events)
    colorer = make_colorer(cfg, n0)
    colorer.initialize()
    g, coloring = colorer.graph, colorer.coloring
    verifier = IncrementalVerifier(g, coloring.chi) if cfg.verify == "every" else None
    if verifier is not None:
        bad = verifier.check(list(g.adj), g.delta + 1 if colorer.delta_palette else None)
        if bad:
            raise VerificationFailure(0, bad)
    auditor = _Auditor(colorer, cfg.audit_every) if cfg.audit else None
    report = MetricsReport(cfg.algo, cfg.seed, n0, config=asdict(cfg))
    trace: list | None = [] if cfg.trace else None
    invariant_bad = 0
    insertions = recolorings = 0
    monochromatic = 0
    for i in range(total):
        if adversary is not None:
            e = adversary.step(g, coloring.members)
            if coloring.chi[e.u] == coloring.chi[e.v]:
                monochromatic += 1
        else:
            e = stream.events[i]
        rep = colorer.update(e)
        if e.is_insertion:
            insertions += 1
        recolorings += len(rep.recolored)
        if trace is not None:
            trace.append([i + 1, len(rep.recolored), list(rep.chains)])
        changed = coloring.drain_changes()
        if verifier is not None:
            ends = _endpoints(e)
            moved = verifier.sync(coloring.chi, [*changed, *ends])
            moved.extend(ends)
            bad = verifier.check(moved, g.delta + 1 if colorer.delta_palette else None)
            if bad:
                raise VerificationFailure(i + 1, bad)
        if auditor is not None:
            invariant_bad += auditor.step(i + 1)
    if auditor is not None:
        invariant_bad += auditor.final()
    if cfg.verify in ("every", "end"):
        final = verify_proper(g, coloring.chi, g.delta + 1 if colorer.delta_palette else None)
        if final:
            raise VerificationFailure(total, final)
    report.updates = total
    report.insertions = insertions
    report.recolorings = recolorings
    report.amortized_recolorings = recolorings / total if total else 0.0
    report.work = colorer.work - colorer.init_work
    report.init_work = colorer.init_work
    report.amortized_work = report.work / total if total else 0.0
    report.colors_used = coloring.colors_used()
    report.max_color = coloring.max_color()
    report.delta = g.delta
    report.n_final = g.n
    report.max_color_load = coloring.max_load()
    report.invariant_violations = invariant_bad
    audits = _colorer_audits(colorer)
    if auditor is not None:
        audits.update(auditor.counts)
    if adversary is not None:
        audits["adversary_events"] = total
        audits["adversary_monochromatic"] = monochromatic
    report.audits = audits
    if isinstance(colorer, ConstLevelColorer):
        report.epochs = colorer.epoch_report().summary()
    if isinstance(colorer, SparseDenseColorer) and cfg.track_surplus:
        report.surplus = [asdict(s) for s in colorer.surplus_log]
    report.trace = trace
    report.wall_time = time.perf_counter() - t0
    return report, colorer
