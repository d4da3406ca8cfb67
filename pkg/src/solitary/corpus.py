"""Embedded example corpus and the runner that re-derives its expected facts."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from importlib import resources
from typing import Any, Callable, Iterable

from . import constructions, exact
from .lie import (
    JacobiError,
    LieAlgebra,
    derivation_space,
    is_nice,
    is_nilpotent,
    is_solvable,
    parse_salamon,
)
from .metric import (
    Metric,
    all_derivations_traceless,
    check_adinvariant,
    classify_solitary,
    find_sigma_diagonal_metric,
    parse_metric,
)
from . import nikolayevsky as nik

SIGMA_SEARCH = "sigma-search"


def load_corpus() -> dict:
    text = resources.files("solitary").joinpath("data/corpus.json").read_text(encoding="utf-8")
    return json.loads(text)


def corpus_entries(tag: str | None = None) -> list[dict]:
    entries = load_corpus()["entries"]
    if tag is None or tag == "all":
        return entries
    return [e for e in entries if tag in e.get("tags", ())]


class EntryContext:
    """Lazily built algebra, metric and derived objects for one corpus entry."""

    def __init__(self, entry: dict, resolve: Callable[[str], "EntryContext"] | None = None):
        self.entry = entry
        self._resolve = resolve
        self.sigma = None

    @cached_property
    def algebra(self) -> LieAlgebra:
        built = self._constructed
        if built is not None:
            return built[0]
        return parse_salamon(self.entry["salamon"])

    @cached_property
    def _constructed(self):
        recipe = self.entry.get("construct")
        if recipe is None:
            return None
        base = self._resolve(recipe["from"])
        if recipe["op"] == "cotangent":
            pkg = constructions.cotangent(base.algebra)
            return pkg.algebra, pkg.metric
        if recipe["op"] == "realify":
            R, _ = constructions.realify(constructions.complexify(base.algebra))
            G = base.metric
            RG = None if G is None else constructions.realify_metric(constructions.complexify_metric(G))
            return R, RG
        raise ValueError(f"unknown construction {recipe['op']!r}")

    @cached_property
    def metric(self) -> Metric | None:
        built = self._constructed
        if built is not None:
            return built[1]
        text = self.entry.get("metric")
        if text is None:
            return None
        if text == SIGMA_SEARCH:
            found = find_sigma_diagonal_metric(self.algebra)
            if found is None:
                return None
            G, self.sigma = found
            return G
        return parse_metric(text, self.algebra.dim)

    def require_metric(self) -> Metric:
        if self.metric is None:
            raise ValueError("entry has no metric")
        return self.metric

    @cached_property
    def verdict(self):
        return classify_solitary(self.algebra, self.require_metric())

    @cached_property
    def nik(self):
        return nik.nikolayevsky_nice(self.algebra)

    @cached_property
    def metric_nik(self):
        return nik.metric_nikolayevsky(self.algebra, self.require_metric())


def _fracs(values: Iterable) -> list[str]:
    return [exact.format_scalar(Fraction(x)) for x in values]


def _jacobi(ctx: EntryContext):
    try:
        ctx.algebra
    except JacobiError:
        return False
    return True


def _der_cap_so_dim(ctx: EntryContext) -> int:
    G = ctx.require_metric()
    space = nik.der_cap_co(ctx.algebra, G)
    # l is a linear functional on the space; so = its kernel
    ls = [nik.conformal_factor(M, G) for M in space.matrices()]
    return space.dim - (1 if any(ls) else 0)


FACTS: dict[str, Callable[[EntryContext], Any]] = {
    "jacobi": _jacobi,
    "nice": lambda c: is_nice(c.algebra)[0],
    "nilpotent": lambda c: is_nilpotent(c.algebra),
    "solvable": lambda c: is_solvable(c.algebra),
    "der_dim": lambda c: derivation_space(c.algebra).dim,
    "der_cap_so_dim": _der_cap_so_dim,
    "adinvariant": lambda c: not check_adinvariant(c.algebra, c.require_metric()),
    "sigma_metric": lambda c: c.metric is not None and c.sigma is not None,
    "dim_s": lambda c: c.verdict.dim_s,
    "dim_d": lambda c: c.verdict.dim_d,
    "verdict": lambda c: c.verdict.status,
    "traceless": lambda c: all_derivations_traceless(c.algebra),
    "tstar": lambda c: constructions.tstar_solitary(c.algebra).solitary,
    "tstar_by_grading": lambda c: nik.tstar_by_grading(c.algebra),
    "nik": lambda c: _fracs(c.nik.lam),
    "metric_nik": lambda c: _fracs(c.metric_nik.lam),
    "metric_nik_path": lambda c: c.metric_nik.path,
    "positivity": lambda c: nik.solitary_by_positivity(c.algebra, c.require_metric()),
    "cotangent_scale": lambda c: exact.format_scalar(nik.cotangent_scale(c.nik.lam)),
    "cotangent_nik": lambda c: _fracs(nik.cotangent_nikolayevsky(c.algebra, c.nik).lam),
}


@dataclass
class FactResult:
    kind: str
    expected: Any
    actual: Any
    anchor: str
    ok: bool
    error: str | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "expected": self.expected, "actual": self.actual, "anchor": self.anchor, "ok": self.ok}
        if self.error:
            out["error"] = self.error
        return out

    def message(self) -> str:
        if self.ok:
            return f"{self.kind}: ok"
        why = self.error or f"expected {self.expected!r}, got {self.actual!r}"
        return f"{self.kind} [{self.anchor}]: {why}"


@dataclass
class EntryResult:
    id: str
    facts: list[FactResult]
    seconds: float = 0.0
    sigma: list | None = None

    @property
    def passed(self) -> bool:
        return all(f.ok for f in self.facts)

    def to_json(self) -> dict:
        out = {"id": self.id, "passed": self.passed, "facts": [f.to_json() for f in self.facts]}
        if self.sigma is not None:
            out["sigma"] = [s + 1 for s in self.sigma]
        return out


@dataclass
class Report:
    entries: list[EntryResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def to_json(self) -> dict:
        """Deterministic form: timings are left out."""
        return {
            "passed": self.passed,
            "count": len(self.entries),
            "failures": sum(not e.passed for e in self.entries),
            "entries": [e.to_json() for e in self.entries],
        }

    def render(self) -> str:
        lines = []
        width = max((len(e.id) for e in self.entries), default=2)
        for e in self.entries:
            status = "PASS" if e.passed else "FAIL"
            lines.append(f"{e.id:<{width}}  {status}  {len(e.facts):>2} facts  {e.seconds:6.2f}s")
            for f in e.facts:
                if not f.ok:
                    lines.append(f"    {f.message()}")
        total = len(self.entries)
        bad = sum(not e.passed for e in self.entries)
        lines.append(f"{total - bad}/{total} entries passed")
        return "\n".join(lines)


def run_entry(ctx: EntryContext) -> EntryResult:
    start = time.perf_counter()
    results = []
    for fact in ctx.entry.get("facts", []):
        kind, expected, anchor = fact["kind"], fact["expected"], fact.get("anchor", "")
        fn = FACTS.get(kind)
        if fn is None:
            results.append(FactResult(kind, expected, None, anchor, False, f"unknown fact kind {kind!r}"))
            continue
        try:
            actual = fn(ctx)
        except Exception as exc:  # reported per fact so one failure does not hide the rest
            results.append(FactResult(kind, expected, None, anchor, False, f"{type(exc).__name__}: {exc}"))
            continue
        results.append(FactResult(kind, expected, actual, anchor, actual == expected))
    sigma = list(ctx.sigma) if ctx.sigma is not None else None
    return EntryResult(ctx.entry["id"], results, time.perf_counter() - start, sigma)


def _resolver() -> Callable[[str], EntryContext]:
    """Shared contexts so constructed entries reuse their base entry."""
    by_id = {e["id"]: e for e in load_corpus()["entries"]}
    contexts: dict[str, EntryContext] = {}

    def resolve(entry_id: str) -> EntryContext:
        if entry_id not in contexts:
            contexts[entry_id] = EntryContext(by_id[entry_id], resolve)
        return contexts[entry_id]

    return resolve


def run_corpus(tag: str | None = None) -> Report:
    resolve = _resolver()
    selected = corpus_entries(tag)
    report = Report()
    for entry in selected:
        report.entries.append(run_entry(resolve(entry["id"])))
    return report


def corpus_algebras(tag: str | None = None, max_dim: int | None = None, with_metric: bool = False):
    """Yield ``(id, algebra, metric)`` for the Jacobi-valid entries."""
    resolve = _resolver()
    for entry in corpus_entries(tag):
        if "negative" in entry.get("tags", ()):
            continue
        ctx = resolve(entry["id"])
        alg = ctx.algebra
        if max_dim is not None and alg.dim > max_dim:
            continue
        G = ctx.metric if ("metric" in entry or "construct" in entry) else None
        if with_metric and G is None:
            continue
        yield entry["id"], alg, G
