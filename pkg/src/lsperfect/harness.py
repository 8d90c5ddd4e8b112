"""Batch verification: corpora, per-graph verdicts, experiment suites and reports."""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Callable

from . import generators as gen
from .graphcore import (
    Graph,
    GraphInputError,
    are_isomorphic,
    delete_node,
    is_claw_free,
    is_quasi_line,
    mask_of,
    parse_edge_list,
    stability_number,
)
from .inequalities import antihole_clique_join_parts, is_joined_a_perfect
from .lsplus import GAP_TOL, MAX_ITER, THRESHOLD, eta_plus_outcome, is_lsplus_perfect
from .polytope import is_facet_defining_graph, is_full_support

log = logging.getLogger(__name__)

CSV_FIELDS = (
    "graph_id",
    "n",
    "m",
    "claw_free",
    "quasi_line",
    "alpha",
    "eta_plus",
    "eta_bound",
    "ls_status",
    "joined_a_perfect",
    "consistent",
    "runtime_ms",
)
RUNTIME_FIELDS = ("runtime_ms",)


class ConfigError(ValueError):
    """Invalid run configuration or unreadable input."""


# --- named generators ----------------------------------------------------------


def _ears(cycle: int, *triples: int) -> Graph:
    if len(triples) % 3:
        raise GraphInputError("ears take (a, b, length) triples")
    ears = tuple(gen.Ear(*triples[i : i + 3]) for i in range(0, len(triples), 3))
    return gen.hypomatchable_from_ears(gen.EarDecompositionSpec(cycle, ears))


GENERATORS: dict[str, Callable[..., Graph]] = {
    "empty": Graph.empty,
    "complete": Graph.complete,
    "cycle": Graph.cycle,
    "path": Graph.path,
    "antiweb": gen.antiweb,
    "web": gen.web,
    "odd_hole": gen.odd_hole,
    "odd_antihole": gen.odd_antihole,
    "wheel": gen.wheel,
    "g_lt": gen.g_lt,
    "g_emn": gen.g_emn,
    "ears": _ears,
    "ear_line": lambda *a: gen.line_graph(_ears(*a)),
    "random": gen.random_claw_free,
}


def generate(name: str, *args: int) -> Graph:
    """Build a graph from a generator name and integer parameters."""
    try:
        fn = GENERATORS[name]
    except KeyError:
        raise ConfigError(f"unknown generator {name!r}; known: {', '.join(sorted(GENERATORS))}") from None
    try:
        return fn(*args)
    except TypeError as exc:
        raise ConfigError(f"bad parameters for {name}: {exc}") from None


# --- configuration -------------------------------------------------------------


@dataclass(frozen=True)
class CorpusEntry:
    graph_id: str
    generator: str | None = None
    params: tuple[int, ...] = ()
    path: str | None = None

    def build(self) -> Graph:
        if self.path is not None:
            return parse_graph_file(self.path)
        return generate(self.generator, *self.params)


@dataclass
class RunConfig:
    corpus: list[CorpusEntry] = field(default_factory=list)
    tol: float = GAP_TOL
    threshold: float = THRESHOLD
    max_iter: int = MAX_ITER
    workers: int = 0  # 0 means one per available core
    output: str | None = None
    format: str = "json"
    dedupe: bool = False

    @property
    def width(self) -> int:
        return self.workers or os.cpu_count() or 1


def _ints(tokens: list[str], lineno: int) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in tokens)
    except ValueError:
        raise ConfigError(f"line {lineno}: parameters must be integers, got {tokens}") from None


def parse_config(text: str, base: Path | None = None) -> RunConfig:
    """Read the ``key = value`` config format.

    Corpus lines::

        graph  = <id> <generator> [int ...]
        random = <prefix> <n> <first seed> <count>
        file   = <path>            (id is the file stem; relative to ``base``)

    Scalar keys: ``tol``, ``threshold``, ``max_iter``, ``workers``, ``output``,
    ``format`` and ``dedupe``.
    """
    cfg = RunConfig()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (s.strip() for s in line.partition("="))
        if not sep or not value:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        tokens = value.split()
        try:
            if key == "graph":
                if len(tokens) < 2:
                    raise ConfigError(f"line {lineno}: graph needs an id and a generator")
                if tokens[1] not in GENERATORS:
                    raise ConfigError(f"line {lineno}: unknown generator {tokens[1]!r}")
                cfg.corpus.append(CorpusEntry(tokens[0], tokens[1], _ints(tokens[2:], lineno)))
            elif key == "random":
                if len(tokens) != 4:
                    raise ConfigError(f"line {lineno}: random needs prefix, n, seed, count")
                n, seed, count = _ints(tokens[1:], lineno)
                for s in range(seed, seed + count):
                    cfg.corpus.append(CorpusEntry(f"{tokens[0]}-{n}-{s}", "random", (n, s)))
            elif key == "file":
                p = Path(value)
                if base is not None and not p.is_absolute():
                    p = base / p
                cfg.corpus.append(CorpusEntry(p.stem, path=str(p)))
            elif key in ("tol", "threshold"):
                setattr(cfg, key, float(value))
            elif key in ("max_iter", "workers"):
                setattr(cfg, key, int(value))
            elif key == "output":
                cfg.output = value
            elif key == "format":
                if value not in ("json", "csv"):
                    raise ConfigError(f"line {lineno}: format must be json or csv")
                cfg.format = value
            elif key == "dedupe":
                cfg.dedupe = value.lower() in ("1", "true", "yes")
            else:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
        except ValueError as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"line {lineno}: {exc}") from None
    ids = [e.graph_id for e in cfg.corpus]
    dup = sorted({i for i in ids if ids.count(i) > 1})
    if dup:
        raise ConfigError(f"duplicate graph ids: {', '.join(dup)}")
    return cfg


def load_config(path: str | Path) -> RunConfig:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {p}: {exc}") from None
    return parse_config(text, p.parent)


# --- verdicts ------------------------------------------------------------------


@dataclass
class Verdict:
    graph_id: str
    n: int | None = None
    m: int | None = None
    claw_free: bool | None = None
    quasi_line: bool | None = None
    alpha: int | None = None
    eta_plus: float | None = None
    eta_bound: float | None = None
    ls_status: str | None = None
    joined_a_perfect: bool | None = None
    unrecognized_facets: int | None = None
    consistent: bool | None = None
    error: str | None = None
    runtime_ms: float = 0.0

    @property
    def ls_kind(self) -> str | None:
        return None if self.ls_status is None else self.ls_status.split("(", 1)[0]


def consistency(ls_kind: str | None, joined: bool | None) -> bool | None:
    """``perfect <=> joined a-perfect``; undefined for inconclusive or missing data."""
    if ls_kind not in ("perfect", "imperfect") or joined is None:
        return None
    return (ls_kind == "perfect") == joined


def verify_graph(
    graph_id: str,
    g: Graph,
    tol: float = GAP_TOL,
    threshold: float = THRESHOLD,
    max_iter: int = MAX_ITER,
) -> Verdict:
    """Full pipeline on one graph; any failure is recorded, never raised."""
    start = time.perf_counter()
    v = Verdict(graph_id, g.n, g.m)
    try:
        v.claw_free = is_claw_free(g)
        v.quasi_line = is_quasi_line(g)
        v.alpha = stability_number(g)
        eta = eta_plus_outcome(g, tol, max_iter)
        v.eta_plus, v.eta_bound = round(eta.value, 9), round(eta.bound, 9)
        status = is_lsplus_perfect(g, threshold, tol, max_iter)
        v.ls_status = status.summary()
        report = is_joined_a_perfect(g)
        v.joined_a_perfect = report.joined_a_perfect
        v.unrecognized_facets = len(report.unrecognized)
        v.consistent = consistency(status.kind, report.joined_a_perfect)
    except Exception as exc:  # isolation: the run goes on
        log.warning("graph %s failed: %s", graph_id, exc)
        v.error = f"{type(exc).__name__}: {exc}"
    v.runtime_ms = round((time.perf_counter() - start) * 1000, 1)
    return v


def _job(args: tuple) -> Verdict:
    entry, tol, threshold, max_iter = args
    try:
        g = entry.build()
    except Exception as exc:
        return Verdict(entry.graph_id, error=f"{type(exc).__name__}: {exc}")
    return verify_graph(entry.graph_id, g, tol, threshold, max_iter)


def dedupe_corpus(entries: list[CorpusEntry]) -> list[CorpusEntry]:
    """Keep the first entry of every isomorphism class (entries that fail to build are kept)."""
    kept: list[tuple[CorpusEntry, Graph | None]] = []
    for e in entries:
        try:
            g = e.build()
        except Exception:
            kept.append((e, None))
            continue
        if not any(h is not None and are_isomorphic(g, h) for _, h in kept):
            kept.append((e, g))
    return [e for e, _ in kept]


def run_verification(config: RunConfig) -> list[Verdict]:
    """One verdict per corpus entry, sorted by graph id."""
    for e in config.corpus:
        if e.path is not None and not os.access(e.path, os.R_OK):
            raise ConfigError(f"cannot read graph file {e.path}")
    entries = dedupe_corpus(config.corpus) if config.dedupe else list(config.corpus)
    jobs = [(e, config.tol, config.threshold, config.max_iter) for e in entries]
    if config.width <= 1 or len(jobs) <= 1:
        out = [_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=config.width) as pool:
            out = list(pool.map(_job, jobs))
    return sorted(out, key=lambda v: v.graph_id)


# --- files and reports ---------------------------------------------------------


def parse_graph_file(path: str | Path) -> Graph:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read graph file {p}: {exc}") from None
    try:
        return parse_edge_list(text)
    except GraphInputError as exc:
        raise GraphInputError(f"{p}: {exc}") from None


def write_graph_file(g: Graph, path: str | Path) -> None:
    Path(path).write_text(g.to_edge_list())


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def format_report(verdicts: list[Verdict], fmt: str = "json") -> str:
    if fmt == "json":
        if not verdicts:
            return "[]"
        return json.dumps([asdict(v) for v in verdicts], indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for v in verdicts:
            row = asdict(v)
            w.writerow([_csv_cell(row[f]) for f in CSV_FIELDS])
        return buf.getvalue()
    raise ConfigError(f"unsupported report format {fmt!r}")


def emit_report(verdicts: list[Verdict], path: str | Path | None, fmt: str = "json") -> str:
    """Format the verdicts and write them to ``path`` (if given); returns the text."""
    text = format_report(verdicts, fmt)
    if path is not None:
        Path(path).write_text(text if text.endswith("\n") else text + "\n")
    return text


def strip_runtime(report: list[dict]) -> list[dict]:
    return [{k: v for k, v in row.items() if k not in RUNTIME_FIELDS} for row in report]


# --- suites -------------------------------------------------------------------


def c7bar_plus_node(non_neighbors: int) -> Graph:
    """Antihole on 7 nodes plus node 7 adjacent to everything outside ``non_neighbors``."""
    base = gen.odd_antihole(3)
    nb = base.nodes_mask & ~non_neighbors
    edges = base.edges() + [(u, 7) for u in range(7) if nb >> u & 1]
    return Graph.from_edges(8, edges)


def _dihedral(n: int) -> list[list[int]]:
    rots = [[(i + r) % n for i in range(n)] for r in range(n)]
    return rots + [[(r - i) % n for i in range(n)] for r in range(n)]


def antihole_plus_node_family() -> list[tuple[int, Graph]]:
    """One representative per symmetry orbit of non-neighbour sets keeping alpha = 2.

    The non-neighbourhood must be a clique of the antihole, i.e. a stable set of
    the 7-cycle; the dihedral group acts on the choices.
    """
    c7 = Graph.cycle(7)
    seen, out = set(), []
    for size in range(4):
        for s in combinations(range(7), size):
            mask = mask_of(s)
            if not c7.is_stable(mask):
                continue
            key = min(mask_of(perm[i] for i in s) for perm in _dihedral(7))
            if key in seen:
                continue
            seen.add(key)
            out.append((mask, c7bar_plus_node(mask)))
    return out


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


def _suite(name: str, fn: Callable[[], tuple[bool, str]]) -> SuiteResult:
    try:
        ok, detail = fn()
    except Exception as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return SuiteResult(name, ok, detail)


def suite_antihole_plus_node(threshold: float = THRESHOLD) -> tuple[bool, str]:
    rows, ok = [], True
    for non_nb, g in antihole_plus_node_family():
        st = is_lsplus_perfect(g, threshold)
        joined = non_nb == 0
        ok &= stability_number(g) == 2 and st.kind != "inconclusive" and st.perfect == joined
        rows.append(f"|N(v)|={7 - bin(non_nb).count('1')}:{st.kind}")
    return ok, ", ".join(rows)


def suite_stretching(threshold: float = THRESHOLD) -> tuple[bool, str]:
    g = gen.g_lt()
    kinds = []
    for v in range(g.n):
        for spec in gen.all_stretchings(g, v):
            st = is_lsplus_perfect(gen.node_stretching(g, spec), threshold)
            kinds.append(st.kind)
    imperfect = kinds.count("imperfect")
    return imperfect >= 3 and "inconclusive" not in kinds, f"{imperfect}/{len(kinds)} stretchings imperfect"


def suite_webs(threshold: float = THRESHOLD) -> tuple[bool, str]:
    perfect = [gen.odd_hole(k) for k in (2, 3, 4)] + [gen.web(7, 2)]
    imperfect = [gen.web(9, 2), gen.web(10, 2)]
    p = [is_lsplus_perfect(g, threshold).kind for g in perfect]
    q = [is_lsplus_perfect(g, threshold).kind for g in imperfect]
    ok = all(k == "perfect" for k in p) and all(k == "imperfect" for k in q)
    return ok, f"holes/antihole {p}, W9_2/W10_2 {q}"


def suite_seeds(threshold: float = THRESHOLD) -> tuple[bool, str]:
    ok, parts = True, []
    for name, g in (("g_lt", gen.g_lt()), ("g_emn", gen.g_emn())):
        st = is_lsplus_perfect(g, threshold)
        subs = [is_lsplus_perfect(delete_node(g, v), threshold).kind for v in range(g.n)]
        good = st.imperfect and is_full_support(st.facet) and all(k == "perfect" for k in subs)
        ok &= good
        parts.append(f"{name}: {st.summary()}")
    return ok, "; ".join(parts)


def suite_line_graphs(threshold: float = THRESHOLD) -> tuple[bool, str]:
    bad = gen.line_graph(_ears(5, 0, 1, 3))
    good = [gen.line_graph(Graph.complete(3)), gen.line_graph(Graph.from_edges(5, [(0, i) for i in range(1, 5)]))]
    good += [gen.line_graph(Graph.cycle(k)) for k in (5, 7)]
    kb = is_lsplus_perfect(bad, threshold).kind
    kg = [is_lsplus_perfect(g, threshold).kind for g in good]
    return kb == "imperfect" and all(k == "perfect" for k in kg), f"ear line graph {kb}; cliques/holes {kg}"


def suite_alpha2_joins(threshold: float = THRESHOLD) -> tuple[bool, str]:
    checked, ok = 0, True
    for _, g in antihole_plus_node_family():
        if stability_number(g) != 2 or not is_facet_defining_graph(g):
            continue
        if is_lsplus_perfect(g, threshold).perfect:
            checked += 1
            ok &= antihole_clique_join_parts(g) is not None
    return ok and checked > 0, f"{checked} perfect facet-defining alpha=2 graphs, all antihole-clique joins: {ok}"


SUITES: dict[str, Callable[[float], tuple[bool, str]]] = {
    "antihole-plus-node": suite_antihole_plus_node,
    "stretching": suite_stretching,
    "webs": suite_webs,
    "minimal-seeds": suite_seeds,
    "line-graphs": suite_line_graphs,
    "alpha2-joins": suite_alpha2_joins,
}


def theorem_suites(names: list[str] | None = None, threshold: float = THRESHOLD) -> list[SuiteResult]:
    """Run the named experiments (all by default); failures are report entries."""
    chosen = list(SUITES) if names is None else names
    out = []
    for name in chosen:
        if name not in SUITES:
            out.append(SuiteResult(name, False, "unknown suite"))
            continue
        out.append(_suite(name, lambda: SUITES[name](threshold)))
    return out


__all__ = [
    "CSV_FIELDS",
    "ConfigError",
    "CorpusEntry",
    "GENERATORS",
    "RunConfig",
    "SuiteResult",
    "Verdict",
    "c7bar_plus_node",
    "consistency",
    "dedupe_corpus",
    "emit_report",
    "format_report",
    "generate",
    "load_config",
    "parse_config",
    "parse_graph_file",
    "run_verification",
    "antihole_plus_node_family",
    "theorem_suites",
    "verify_graph",
    "write_graph_file",
]
