"""Continuous center computations and pairwise cost identities.

Everything operates on numpy arrays of shape (m, d).  Integer inputs keep
integer costs on the l1/l0 paths; the Euclidean paths use floats.
"""

import math

import numpy as np

from .errors import ConvergenceError

WEISZFELD_TOL = 1e-8
WEISZFELD_CAP = 100_000
MEB_TOL = 1e-6
MEB_CAP = 200_000


def as_points(points):
    arr = np.asarray(points)
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise ValueError("need a nonempty (m, d) point array")
    return arr


def pointwise_distance(u, v, metric, p=None):
    u = np.asarray(u)
    v = np.asarray(v)
    if metric == "l0":
        return int(np.count_nonzero(u != v))
    diff = u - v
    if metric == "l1":
        d = np.abs(diff).sum()
        return int(d) if np.issubdtype(np.asarray(d).dtype, np.integer) else float(d)
    if metric == "l2":
        return float(math.sqrt(float((diff * diff).sum())))
    if metric == "lp":
        return float((np.abs(diff).astype(float) ** p).sum() ** (1.0 / p))
    raise ValueError(f"unknown metric {metric!r}")


def kmeans_partition_cost(points, partition):
    """Pairwise form of the squared-Euclidean clustering cost.

    sum_i (1 / (2|C_i|)) sum_{p,q in C_i} |p - q|_2^2 over a disjoint cover
    of the points by nonempty index lists.
    """
    pts = as_points(points).astype(float)
    _check_partition(partition, len(pts))
    total = 0.0
    for part in partition:
        block = pts[list(part)]
        sq = (block * block).sum(axis=1)
        gram = block @ block.T
        pair_sum = float((sq[:, None] + sq[None, :] - 2 * gram).sum())
        total += pair_sum / (2 * len(part))
    return total


def kmeans_partition_cost_centroid(points, partition):
    """Centroid form of the same cost; agrees with the pairwise form."""
    pts = as_points(points).astype(float)
    _check_partition(partition, len(pts))
    total = 0.0
    for part in partition:
        block = pts[list(part)]
        c = block.mean(axis=0)
        total += float(((block - c) ** 2).sum())
    return total


def _check_partition(partition, m):
    for part in partition:
        if len(part) == 0:
            raise ValueError("empty part in partition")
    flat = [i for part in partition for i in part]
    if sorted(flat) != list(range(m)):
        raise ValueError("partition must cover all points disjointly")


def coordinate_median(points):
    """Lower coordinatewise median; on 0/1 data a tie at half resolves to 0."""
    pts = as_points(points)
    sorted_pts = np.sort(pts, axis=0)
    return sorted_pts[(len(pts) - 1) // 2]


def weiszfeld_geometric_median(points, tol=WEISZFELD_TOL, cap=WEISZFELD_CAP):
    """Geometric median by Weiszfeld iteration to gradient norm <= tol.

    When an iterate lands on a data point the standard optimality test
    (|sum of unit vectors to the other points| <= 1) either stops there or
    nudges the iterate off the singularity.
    """
    pts = as_points(points).astype(float)
    m = len(pts)
    if m == 1:
        return pts[0].copy(), 0.0
    x = pts.mean(axis=0)
    for _ in range(cap):
        d = np.sqrt(((pts - x) ** 2).sum(axis=1))
        anchored = d < 1e-12
        if anchored.any():
            j = int(np.argmax(anchored))
            others = ~anchored
            r = ((pts[others] - x) / d[others, None]).sum(axis=0)
            rnorm = float(np.sqrt((r * r).sum()))
            if rnorm <= 1.0 + 1e-12:
                return x, float(np.sqrt(((pts - x) ** 2).sum(axis=1)).sum())
            x = x + (1e-6 / rnorm) * r  # push off the data point
            continue
        w = 1.0 / d
        grad = ((x - pts) * w[:, None]).sum(axis=0)
        if float(np.sqrt((grad * grad).sum())) <= tol:
            return x, float(d.sum())
        x = (pts * w[:, None]).sum(axis=0) / w.sum()
    raise ConvergenceError(f"Weiszfeld did not reach gradient norm {tol} in {cap} steps")


def l1sq_cost(points, center):
    pts = as_points(points).astype(float)
    return float((np.abs(pts - np.asarray(center, dtype=float)).sum(axis=1) ** 2).sum())


def l1sq_pairwise_lower_bound(points):
    """Certified lower bound on min_c sum (|p - c|_1)^2 via the pairwise relaxation.

    From |p - q|_1^2 <= 2|p - c|_1^2 + 2|q - c|_1^2 summed over ordered pairs:
    cost >= sum_{p,q} |p - q|_1^2 / (4m).
    """
    pts = as_points(points).astype(float)
    m = len(pts)
    total = 0.0
    for i in range(m):
        total += float((np.abs(pts - pts[i]).sum(axis=1) ** 2).sum())
    return total / (4 * m)


def _pattern_search(cost, x0, step0, tol=1e-7):
    x = np.asarray(x0, dtype=float).copy()
    best = cost(x)
    step = float(step0)
    while step > tol:
        improved = False
        for j in range(len(x)):
            for delta in (step, -step):
                trial = x.copy()
                trial[j] += delta
                c = cost(trial)
                if c < best - 1e-15:
                    x, best = trial, c
                    improved = True
        if not improved:
            step /= 2.0
    return x, best


def l1sq_center_heuristic(points):
    """Local-search center for the squared-l1 objective (no closed form).

    Seeded at the centroid and the coordinate median; the result is a
    heuristic upper bound, to be read against l1sq_pairwise_lower_bound.
    """
    pts = as_points(points).astype(float)
    spread = float(np.ptp(pts)) or 1.0
    best = None
    for seed in (pts.mean(axis=0), coordinate_median(pts).astype(float)):
        x, c = _pattern_search(lambda v: l1sq_cost(pts, v), seed, spread / 2)
        if best is None or c < best[1]:
            best = (x, c)
    return best


def best_center_continuous(points, metric, exponent):
    """Optimal (or flagged-heuristic) single center for one cluster.

    (l2, 2) centroid; (l1/l0, 1) coordinatewise lower median; (l2, 1)
    Weiszfeld; (l1, 2) local-search heuristic (squared-l1 cost is not
    coordinatewise separable, so no exact closed form is used).
    """
    pts = as_points(points)
    if metric == "l2" and exponent == 2:
        c = pts.astype(float).mean(axis=0)
        return c, float(((pts - c) ** 2).sum())
    if metric in ("l0", "l1") and exponent == 1:
        if metric == "l0" and not np.isin(pts, (0, 1)).all():
            raise ValueError("l0 center requires 0/1 data")
        c = coordinate_median(pts)
        cost = np.abs(pts - c).sum()
        return c, (int(cost) if np.issubdtype(pts.dtype, np.integer) else float(cost))
    if metric == "l2" and exponent == 1:
        return weiszfeld_geometric_median(pts)
    if metric == "l1" and exponent == 2:
        return l1sq_center_heuristic(pts)
    raise ValueError(f"no center rule for metric={metric!r} exponent={exponent}")


# ---------------------------------------------------------------------------
# minimum enclosing ball
# ---------------------------------------------------------------------------

def min_enclosing_ball(points, tol=MEB_TOL, cap=MEB_CAP):
    """Center and radius of the smallest ball containing the points.

    Frank-Wolfe with away steps on the dual max_l l.b - |P^T l|^2 over the
    simplex; each iteration moves toward the farthest point (the subgradient
    of the max-distance objective).  Stops when the primal radius and the
    dual bound agree to tol.
    """
    pts = as_points(points).astype(float)
    m = len(pts)
    if m == 1:
        return pts[0].copy(), 0.0
    sq = (pts * pts).sum(axis=1)
    lam = np.full(m, 1.0 / m)
    for _ in range(cap):
        c = lam @ pts
        d2 = sq - 2.0 * (pts @ c) + float(c @ c)
        primal = float(d2.max())
        dual = float(lam @ sq - c @ c)
        if math.sqrt(max(primal, 0.0)) - math.sqrt(max(dual, 0.0)) <= tol:
            return c, math.sqrt(max(primal, 0.0))
        fw = int(np.argmax(d2))
        support = np.nonzero(lam > 0)[0]
        away = int(support[np.argmin(d2[support])])
        gain_fw = d2[fw] - float(lam @ d2)
        gain_away = float(lam @ d2) - d2[away]
        if gain_fw >= gain_away:
            direction = -lam.copy()
            direction[fw] += 1.0
            gamma_max = 1.0
        else:
            direction = lam.copy()
            direction[away] -= 1.0
            gamma_max = lam[away] / (1.0 - lam[away]) if lam[away] < 1.0 else 1.0
        dc = direction @ pts
        curv = float(dc @ dc)
        lin = float(direction @ sq) - 2.0 * float(c @ dc)
        if curv <= 0:
            gamma = gamma_max
        else:
            gamma = min(max(lin / (2.0 * curv), 0.0), gamma_max)
        if gamma <= 0:
            return c, math.sqrt(max(primal, 0.0))
        lam = lam + gamma * direction
        np.clip(lam, 0.0, None, out=lam)
        lam /= lam.sum()
    raise ConvergenceError(f"enclosing-ball solve did not reach tol {tol} in {cap} steps")


def separation_center_bound_check(points, eps):
    """For pairwise-separated points, certify that no center is close to all.

    Preconditions: pairwise l2 distances >= sqrt(2) and more than 4/eps + 1
    points.  Returns True when the minimum enclosing ball radius is at least
    1 - eps.
    """
    pts = as_points(points).astype(float)
    m = len(pts)
    if not m > 4.0 / eps + 1:
        raise ValueError(f"need more than 4/eps + 1 = {4.0 / eps + 1:.2f} points, got {m}")
    for i in range(m):
        d2 = ((pts[i + 1:] - pts[i]) ** 2).sum(axis=1)
        if len(d2) and float(d2.min()) < 2.0 - 1e-9:
            raise ValueError("pairwise distances must be at least sqrt(2)")
    _, radius = min_enclosing_ball(pts)
    return radius >= 1.0 - eps
