"""Johnson coverage instances and exact solvers.

An instance is a collection E of z-element subsets of [n] together with a
budget k; a solution picks at most k subsets of size y and covers every
T in E that contains one of them.  Everything here is exact: coverage
fractions are rationals, brute force enumerates the full search space or
refuses, and ties break lexicographically so witnesses are reproducible.
"""

import math
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import BudgetExceededError

DEFAULT_BUDGET = 5_000_000


def _check_subset(s, n, size, what="subset"):
    s = tuple(sorted(s))
    if len(s) != size or len(set(s)) != size:
        raise ValueError(f"{what} {s} must have exactly {size} distinct elements")
    if s and (s[0] < 1 or s[-1] > n):
        raise ValueError(f"{what} {s} has elements outside [1, {n}]")
    return s


@dataclass(frozen=True)
class JohnsonInstance:
    """Universe [n], arity-z edge collection, cover arity y, budget k."""

    n: int
    z: int
    y: int
    edges: tuple
    k: int

    def __post_init__(self):
        if not (1 <= self.y < self.z <= self.n):
            raise ValueError(f"need 1 <= y < z <= n, got n={self.n} z={self.z} y={self.y}")
        if self.k < 0:
            raise ValueError("budget k must be nonnegative")
        normalized = sorted(set(_check_subset(e, self.n, self.z, "edge") for e in self.edges))
        if len(normalized) != len(tuple(self.edges)):
            raise ValueError("duplicate edges in instance")
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def num_edges(self):
        return len(self.edges)


@dataclass(frozen=True)
class CoverageReport:
    covered: int
    total: int
    fraction: Fraction

    @property
    def is_complete(self):
        return self.covered == self.total


def normalize_cover(sets, inst):
    """Sort/validate a collection of y-subsets; duplicates are rejected."""
    out = tuple(sorted(_check_subset(s, inst.n, inst.y, "cover set") for s in sets))
    if len(set(out)) != len(out):
        raise ValueError("duplicate sets in cover collection")
    return out


def cov(s, inst):
    """All edges of the instance containing the y-subset s, sorted."""
    s = _check_subset(s, inst.n, inst.y, "cover set")
    members = set(s)
    return tuple(t for t in inst.edges if members.issubset(t))


def coverage_fraction(cover, inst):
    """Count edges covered by the union of the collection (each edge once).

    An empty edge set counts as fully covered (fraction 1).
    """
    cover = normalize_cover(cover, inst)
    if len(cover) > inst.k:
        raise ValueError(f"cover has {len(cover)} sets, instance budget is k={inst.k}")
    sets = [set(s) for s in cover]
    covered = sum(1 for t in inst.edges if any(s.issubset(t) for s in sets))
    total = inst.num_edges
    fraction = Fraction(covered, total) if total else Fraction(1)
    return CoverageReport(covered=covered, total=total, fraction=fraction)


# ---------------------------------------------------------------------------
# brute force
# ---------------------------------------------------------------------------

def _candidate_masks(inst):
    """Lex-ordered y-subsets with bitmasks over the edge list."""
    edge_sets = [set(t) for t in inst.edges]
    cands = []
    for s in combinations(range(1, inst.n + 1), inst.y):
        mask = 0
        ss = set(s)
        for i, t in enumerate(edge_sets):
            if ss.issubset(t):
                mask |= 1 << i
        cands.append((s, mask))
    return cands


def _unrank_combination(rank, n_items, r):
    # lexicographic unranking of an r-subset of range(n_items)
    out = []
    x = 0
    for slot in range(r, 0, -1):
        while True:
            block = math.comb(n_items - x - 1, slot - 1)
            if rank < block:
                break
            rank -= block
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def _next_combination(idx, n_items):
    idx = list(idx)
    r = len(idx)
    i = r - 1
    while i >= 0 and idx[i] == n_items - r + i:
        i -= 1
    if i < 0:
        return None
    idx[i] += 1
    for j in range(i + 1, r):
        idx[j] = idx[j - 1] + 1
    return tuple(idx)


def _scan_chunk(cands, r, start, stop, full_mask):
    """Best (covered, index-tuple) over combination ranks [start, stop)."""
    n_items = len(cands)
    idx = _unrank_combination(start, n_items, r)
    best_count = -1
    best_idx = None
    for _ in range(stop - start):
        mask = 0
        for i in idx:
            mask |= cands[i][1]
        c = mask.bit_count()
        if c > best_count:
            best_count = c
            best_idx = idx
            if mask == full_mask:
                break  # full coverage; first hit in lex order is the tie-winner
        idx = _next_combination(idx, n_items)
    return best_count, best_idx


def worker_count(workers=None):
    if workers is None:
        workers = int(os.environ.get("JCHLAB_THREADS", "1"))
    return max(1, workers)


def brute_force_max_coverage(inst, budget=DEFAULT_BUDGET, workers=None):
    """Exact max coverage over all collections of min(k, #candidates) y-subsets.

    Ties break lexicographically on the collection.  Refuses (loudly) if the
    number of collections exceeds the budget.  The scan may be partitioned
    over workers; the reduction is deterministic, so the result does not
    depend on the worker count.
    """
    cands = _candidate_masks(inst)
    r = min(inst.k, len(cands))
    total = math.comb(len(cands), r)
    if budget is not None and total > budget:
        raise BudgetExceededError(
            f"brute force needs {total} collections, budget is {budget}",
            required=total, budget=budget)
    if r == 0:
        return (), coverage_fraction((), inst)
    full_mask = (1 << inst.num_edges) - 1
    workers = worker_count(workers)
    bounds = [total * i // workers for i in range(workers + 1)]
    chunks = [(lo, hi) for lo, hi in zip(bounds, bounds[1:]) if hi > lo]
    if len(chunks) == 1:
        results = [_scan_chunk(cands, r, chunks[0][0], chunks[0][1], full_mask)]
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            results = list(pool.map(
                lambda c: _scan_chunk(cands, r, c[0], c[1], full_mask), chunks))
    best_count, best_idx = -1, None
    for count, idx in results:  # chunk order = lex order, first strict max wins
        if count > best_count:
            best_count, best_idx = count, idx
    best = tuple(cands[i][0] for i in best_idx)
    return best, coverage_fraction(best, inst)


# ---------------------------------------------------------------------------
# FPT branching for full-cover decision (y = z-1)
# ---------------------------------------------------------------------------

def fpt_cover_decide(inst):
    """Decide full coverage by depth-<=k branching over the z subsets of an edge.

    Only the y = z-1 regime is supported; each uncovered edge has exactly z
    candidate (z-1)-subsets, giving a branching tree of size at most z^k.
    Returns (decision, witness or None); the witness lists at most k subsets.
    """
    if inst.y != inst.z - 1:
        raise ValueError("branching decision procedure requires y = z-1")

    def branch(remaining, k, chosen):
        if not remaining:
            return tuple(chosen)
        if k == 0:
            return None
        t = remaining[0]
        for s in combinations(t, inst.z - 1):
            ss = set(s)
            rest = [e for e in remaining if not ss.issubset(e)]
            got = branch(rest, k - 1, chosen + [s])
            if got is not None:
                return got
        return None

    witness = branch(list(inst.edges), inst.k, [])
    if witness is None:
        return False, None
    return True, tuple(sorted(witness))


# ---------------------------------------------------------------------------
# generators and file format
# ---------------------------------------------------------------------------

def gen_instance(kind, n, z, y, k, m=None, seed=None, dense=False):
    """Build a complete instance (all z-subsets) or a seeded random one.

    Random instances draw m distinct z-subsets uniformly; runs with the same
    seed produce identical edge sets.  The `dense` flag only checks the
    density condition m > k * n^(z-y-1); it carries no hardness claim.
    """
    if kind == "complete":
        edges = tuple(combinations(range(1, n + 1), z))
    elif kind == "random":
        total = math.comb(n, z)
        if m is None or not (0 <= m <= total):
            raise ValueError(f"random instance needs 0 <= m <= C({n},{z}) = {total}")
        rng = random.Random(seed)
        ranks = sorted(rng.sample(range(total), m))
        edges = tuple(tuple(x + 1 for x in _unrank_combination(rk, n, z)) for rk in ranks)
    else:
        raise ValueError(f"unknown instance kind {kind!r}")
    if dense and len(edges) <= k * n ** (z - y - 1):
        raise ValueError(
            f"density check failed: |E|={len(edges)} <= k*n^(z-y-1)={k * n ** (z - y - 1)}")
    return JohnsonInstance(n=n, z=z, y=y, edges=edges, k=k)


def write_instance(inst, fh):
    fh.write(f"jc {inst.n} {inst.z} {inst.y} {inst.k}\n")
    for t in inst.edges:
        fh.write(" ".join(map(str, t)) + "\n")


def read_instance(fh):
    header = fh.readline().split()
    if len(header) != 5 or header[0] != "jc":
        raise ValueError("instance file must start with 'jc n z y k'")
    n, z, y, k = map(int, header[1:])
    edges = []
    for line in fh:
        line = line.strip()
        if line:
            edges.append(tuple(map(int, line.split())))
    return JohnsonInstance(n=n, z=z, y=y, edges=tuple(edges), k=k)


# ---------------------------------------------------------------------------
# closed-form quantities
# ---------------------------------------------------------------------------

def turan_random_uncovered(z):
    """Fraction of z-cliques missed by the extremal (C(z,2)-1)-partition graph.

    Product form prod_{i=1}^{z} (1 - (i-1)/(C(z,2)-1)), exact rational; tends
    to 1/e as z grows.
    """
    if z < 2:
        raise ValueError("need z >= 2")
    w = math.comb(z, 2) - 1
    out = Fraction(1)
    for i in range(1, z + 1):
        out *= 1 - Fraction(i - 1, w)
    return out


@dataclass(frozen=True)
class FactorTable:
    """Inapproximability factors derived from a coverage gap alpha.

    gamma_lower is a certified lower bound on the embedding gap ratio for
    co-arity delta; zeta1 = 1 + (1-alpha)(gamma-1) is the median-side factor
    and zeta2 = 1 + (1-alpha)(gamma^2-1) the means-side factor.
    """

    p: int
    delta: int
    alpha: object
    gamma_lower: object
    gamma_sq: object
    zeta1: object
    zeta2: object
    provenance: str = "formula"


def inapprox_factors(p, delta, alpha):
    """Factor table for p in {1, 2}.

    p=1: gamma = (delta+2)/delta exactly.  p=2: gamma^2 = (delta+2)/delta
    (the scaled-embedding bound in the limit of large set size), so zeta2 is
    exact there too while zeta1 needs a square root.  Rational alpha keeps
    every exact quantity a Fraction.
    """
    if delta < 1:
        raise ValueError("need delta >= 1")
    if not 0 <= alpha <= 1:
        raise ValueError("need 0 <= alpha <= 1")
    gamma_sq = Fraction(delta + 2, delta)
    if p == 1:
        gamma = Fraction(delta + 2, delta)
        gamma_sq = gamma * gamma
    elif p == 2:
        gamma = math.sqrt(gamma_sq)
    else:
        raise ValueError("closed forms cover p in {1, 2}; other p is certified "
                         "empirically through the embedding verifier")
    one_minus = 1 - alpha
    zeta1 = 1 + one_minus * (gamma - 1)
    zeta2 = 1 + one_minus * (gamma_sq - 1)
    return FactorTable(p=p, delta=delta, alpha=alpha, gamma_lower=gamma,
                       gamma_sq=gamma_sq, zeta1=zeta1, zeta2=zeta2)
