"""k-anonymity: generalization lattices, minimal generalization search,
suppression, the discernibility cost metric, and l-diversity.

A generalization hierarchy for one attribute is a chain of total maps
level-0 -> level-1 -> ... -> top; a generalization vector picks one level
per quasi-identifier. Feasibility of a vector (k-anonymity after suppressing
at most max_suppress records from undersized classes) is monotone along the
lattice order, which both search strategies rely on.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from itertools import groupby
from pathlib import Path
from typing import Iterable, Optional, Sequence

from ..core.model import KIND_STR, Record, Table, Value, kind_of
from ..errors import AnonymityError, HierarchyError


@dataclass(frozen=True)
class GeneralizationHierarchy:
    """Value generalization chain for one attribute.

    maps[h] sends a level-h value to its level-(h+1) ancestor; ground values
    are the keys of maps[0] (or the explicit ground set for height 0).
    """

    attribute: str
    ground: frozenset
    maps: tuple[dict, ...]

    @property
    def height(self) -> int:
        return len(self.maps)

    def __post_init__(self):
        if not self.ground:
            raise HierarchyError(f"{self.attribute}: empty ground level")
        domain = self.ground
        for h, m in enumerate(self.maps):
            missing = domain - m.keys()
            if missing:
                raise HierarchyError(
                    f"{self.attribute}: level-{h + 1} map not total (missing {sorted(missing)[:3]})"
                )
            domain = frozenset(m[v] for v in domain)
        if self.maps and len(domain) != 1:
            raise HierarchyError(
                f"{self.attribute}: hierarchy must converge to a single top value, got {len(domain)}"
            )

    def ancestor(self, value: Value, level: int, base: int = 0):
        """Level-`level` ancestor of a value currently at level `base`."""
        if not (0 <= base <= level <= self.height):
            raise HierarchyError(f"{self.attribute}: level {level} outside 0..{self.height}")
        if base == 0 and value not in self.ground:
            raise HierarchyError(f"{self.attribute}: value {value!r} not in ground level")
        v = value
        for h in range(base, level):
            try:
                v = self.maps[h][v]
            except KeyError:
                raise HierarchyError(
                    f"{self.attribute}: value {v!r} missing from level-{h + 1} map"
                ) from None
        return v


def hierarchy_from_rows(attribute: str, rows: Sequence[Sequence[Value]]) -> GeneralizationHierarchy:
    """Build a hierarchy from (ground, level1, ..., top) rows."""
    if not rows:
        raise HierarchyError(f"{attribute}: no hierarchy rows")
    width = len(rows[0])
    if width < 1:
        raise HierarchyError(f"{attribute}: empty hierarchy row")
    maps: list[dict] = [dict() for _ in range(width - 1)]
    ground = set()
    for row in rows:
        if len(row) != width:
            raise HierarchyError(f"{attribute}: ragged hierarchy rows")
        ground.add(row[0])
        for h in range(width - 1):
            prev = maps[h].get(row[h])
            if prev is not None and prev != row[h + 1]:
                raise HierarchyError(
                    f"{attribute}: value {row[h]!r} maps to both {prev!r} and {row[h + 1]!r}"
                )
            maps[h][row[h]] = row[h + 1]
    return GeneralizationHierarchy(attribute, frozenset(ground), tuple(maps))


def load_hierarchy_csv(path, attribute: Optional[str] = None) -> GeneralizationHierarchy:
    """CSV mapping file, one `ground,level1,...,top` row per line."""
    p = Path(path)
    with p.open(newline="", encoding="utf-8") as fh:
        rows = [tuple(r) for r in csv.reader(fh) if r]
    return hierarchy_from_rows(attribute or p.stem, rows)


GeneralizationVector = tuple[int, ...]


def _check_vector(hierarchies: Sequence[GeneralizationHierarchy], vector: Sequence[int]) -> GeneralizationVector:
    if len(vector) != len(hierarchies):
        raise AnonymityError("vector arity differs from hierarchy count")
    for h, l in zip(hierarchies, vector):
        if not (0 <= l <= h.height):
            raise AnonymityError(f"{h.attribute}: level {l} outside 0..{h.height}")
    return tuple(vector)


def generalize(
    table: Table,
    hierarchies: Sequence[GeneralizationHierarchy],
    vector: Sequence[int],
    base: Optional[Sequence[int]] = None,
) -> Table:
    """Replace each quasi-identifier value by its level-h ancestor.

    `base` declares the level the column values are currently at (all zeros
    for raw data), letting generalizations compose: applying `vector` on top
    of a table already at `base` equals applying `vector` to the raw table.
    """
    vector = _check_vector(hierarchies, vector)
    base = tuple(base) if base is not None else (0,) * len(hierarchies)
    if any(b > v for b, v in zip(base, vector)):
        raise AnonymityError("base level exceeds target level")
    col_idx = [table.column_index(h.attribute) for h in hierarchies]
    new_records = []
    for rec in table.records:
        values = list(rec.values)
        for j, hier in enumerate(hierarchies):
            values[col_idx[j]] = hier.ancestor(values[col_idx[j]], vector[j], base[j])
        new_records.append(Record(rec.id, tuple(values)))
    kinds = list(table.kinds)
    for j, hier in enumerate(hierarchies):
        if vector[j] > base[j] or base[j] > 0:
            sample = new_records[0].values[col_idx[j]] if new_records else None
            kinds[col_idx[j]] = kind_of(sample) if sample is not None else KIND_STR
    return Table(table.name, table.columns, tuple(kinds), tuple(new_records))


@dataclass(frozen=True)
class EquivalenceClass:
    qi_values: tuple
    record_ids: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.record_ids)


@dataclass(frozen=True)
class AnonymityReport:
    k: int
    classes: tuple[EquivalenceClass, ...]
    failing: tuple[EquivalenceClass, ...]

    @property
    def passed(self) -> bool:
        return not self.failing


def partition_by_qi(table: Table, qi_columns: Sequence[str]) -> tuple[EquivalenceClass, ...]:
    if not qi_columns:
        raise AnonymityError("quasi-identifier column set is empty")
    idx = [table.column_index(c) for c in qi_columns]
    keyed = sorted(
        ((tuple(r.values[i] for i in idx), r.id) for r in table.records),
        key=lambda kv: (repr(kv[0]), kv[1]),
    )
    classes = []
    for qi, group in groupby(keyed, key=lambda kv: kv[0]):
        classes.append(EquivalenceClass(qi, tuple(rid for _, rid in group)))
    return tuple(classes)


def k_anonymity_check(table: Table, qi_columns: Sequence[str], k: int) -> AnonymityReport:
    if k < 2:
        raise AnonymityError("k must be at least 2")
    classes = partition_by_qi(table, qi_columns)
    failing = tuple(c for c in classes if c.size < k)
    return AnonymityReport(k, classes, failing)


def discernibility_metric(class_sizes: Iterable[int], k: int, total: int) -> int:
    """DM cost: |E|^2 per surviving class, |D| per suppressed record."""
    sizes = list(class_sizes)
    if any(s < 0 for s in sizes):
        raise AnonymityError("negative class size")
    if sum(sizes) > total:
        raise AnonymityError("class sizes exceed the relation size")
    return sum(s * s for s in sizes if s >= k) + sum(total * s for s in sizes if s < k)


@dataclass(frozen=True)
class DiversityReport:
    l: int
    failing: tuple[EquivalenceClass, ...]

    @property
    def passed(self) -> bool:
        return not self.failing


def l_diversity_check(
    table: Table, qi_columns: Sequence[str], sensitive_column: str, l: int
) -> DiversityReport:
    """Simplest-form l-diversity: >= l distinct sensitive values per class."""
    if l < 1:
        raise AnonymityError("l must be at least 1")
    sens_idx = table.column_index(sensitive_column)
    by_id = {r.id: r for r in table.records}
    failing = []
    for cls in partition_by_qi(table, qi_columns):
        distinct = {by_id[rid].values[sens_idx] for rid in cls.record_ids}
        if len(distinct) < l:
            failing.append(cls)
    return DiversityReport(l, tuple(failing))


# ---------------------------------------------------------------------------
# Minimal generalization search
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MinimizationResult:
    vector: GeneralizationVector
    suppressed_ids: tuple[int, ...]
    dm_cost: int


class _Feasibility:
    """Vector -> (feasible, suppressed ids, class sizes), memoized."""

    def __init__(self, table, hierarchies, k, max_suppress):
        self.table = table
        self.hierarchies = list(hierarchies)
        self.qi = [h.attribute for h in self.hierarchies]
        self.k = k
        self.max_suppress = max_suppress
        self._cache: dict[GeneralizationVector, tuple[bool, tuple[int, ...], tuple[int, ...]]] = {}

    def evaluate(self, vector: GeneralizationVector):
        hit = self._cache.get(vector)
        if hit is None:
            generalized = generalize(self.table, self.hierarchies, vector)
            classes = partition_by_qi(generalized, self.qi)
            suppressed = tuple(
                rid for c in classes if c.size < self.k for rid in c.record_ids
            )
            hit = (
                len(suppressed) <= self.max_suppress,
                suppressed,
                tuple(c.size for c in classes),
            )
            self._cache[vector] = hit
        return hit

    def feasible(self, vector: GeneralizationVector) -> bool:
        return self.evaluate(vector)[0]

    def result(self, vector: GeneralizationVector) -> MinimizationResult:
        _, suppressed, sizes = self.evaluate(vector)
        dm = discernibility_metric(sizes, self.k, len(self.table.records))
        return MinimizationResult(vector, tuple(sorted(suppressed)), dm)


def _chains(heights: Sequence[int]):
    """All maximal bottom-to-top chains of the generalization lattice."""
    start = (0,) * len(heights)

    def walk(vec):
        yield vec
        nexts = [
            vec[:j] + (vec[j] + 1,) + vec[j + 1 :]
            for j in range(len(vec))
            if vec[j] < heights[j]
        ]
        if not nexts:
            return
        for nxt in nexts:
            for chain in walk(nxt):
                yield chain

    # Regroup the depth-first traversal into explicit chains.
    def chains_from(vec):
        nexts = [
            vec[:j] + (vec[j] + 1,) + vec[j + 1 :]
            for j in range(len(vec))
            if vec[j] < heights[j]
        ]
        if not nexts:
            yield (vec,)
            return
        for nxt in nexts:
            for rest in chains_from(nxt):
                yield (vec,) + rest

    return chains_from(start)


def _vectors_at_height(heights: Sequence[int], total: int):
    """Every vector with component sum == total, lexicographic order."""

    def rec(j, remaining):
        if j == len(heights):
            if remaining == 0:
                yield ()
            return
        for h in range(min(heights[j], remaining) + 1):
            for rest in rec(j + 1, remaining - h):
                yield (h,) + rest

    return rec(0, total)


def minimize_naive(feas: _Feasibility) -> Optional[GeneralizationVector]:
    """Bottom-up scan of every lattice path; globally preferred winner."""
    heights = [h.height for h in feas.hierarchies]
    best: Optional[GeneralizationVector] = None
    for chain in _chains(heights):
        for vec in chain:
            if feas.feasible(vec):
                if best is None or (sum(vec), vec) < (sum(best), best):
                    best = vec
                break
    return best


def minimize_binary(feas: _Feasibility) -> Optional[GeneralizationVector]:
    """Binary search on total height; feasibility is monotone in height."""
    heights = [h.height for h in feas.hierarchies]

    def best_at(total: int) -> Optional[GeneralizationVector]:
        for vec in _vectors_at_height(heights, total):
            if feas.feasible(vec):
                return vec  # lexicographically first by construction
        return None

    lo, hi = 0, sum(heights)
    if best_at(hi) is None:
        return None
    found: Optional[GeneralizationVector] = None
    while lo <= hi:
        mid = (lo + hi) // 2
        vec = best_at(mid)
        if vec is not None:
            found = vec
            hi = mid - 1
        else:
            lo = mid + 1
    return found


def minimal_generalization(
    table: Table,
    hierarchies: Sequence[GeneralizationHierarchy],
    k: int,
    max_suppress: int = 0,
    strategy: str = "both",
) -> MinimizationResult:
    """Lowest-total-height vector reaching k-anonymity with bounded suppression.

    Suppression removes all and only the records in classes still below k.
    Ties on total height break to the lexicographically smallest vector.
    """
    if k < 2:
        raise AnonymityError("k must be at least 2")
    if max_suppress < 0:
        raise AnonymityError("max_suppress must be non-negative")
    feas = _Feasibility(table, hierarchies, k, max_suppress)
    if strategy == "naive":
        vec = minimize_naive(feas)
    elif strategy == "binary":
        vec = minimize_binary(feas)
    elif strategy == "both":
        vec_naive = minimize_naive(feas)
        vec = minimize_binary(feas)
        assert (vec_naive is None) == (vec is None)
        if vec is not None:
            assert sum(vec_naive) == sum(vec), "search strategies disagree on height"
    else:
        raise AnonymityError(f"unknown strategy {strategy!r}")
    if vec is None:
        raise AnonymityError(
            f"no generalization satisfies k={k} within {max_suppress} suppressions"
        )
    return feas.result(vec)
