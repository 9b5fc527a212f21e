"""Gap realizations of set-containment graphs in l0/l1/l2/lp.

A realization maps the t-subsets and s-subsets of a ground set {0,...,q-1}
to vectors so that every containment pair (S subset of T) sits at one common
distance beta and every non-containment pair at distance >= lambda*beta.
The verifier certifies lambda by exhaustive pairwise distance computation,
in exact arithmetic wherever the construction allows it (l0/l1, and lp with
integer p where distances are dyadic), floats with a 1e-9 tolerance for l2.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import BudgetExceededError, CertificationError

TOL = 1e-9
DEFAULT_PAIR_BUDGET = 10_000_000


@dataclass(frozen=True)
class GapRealization:
    metric: str            # "l0" | "l1" | "l2" | "lp"
    p: object              # exponent behind the metric tag (0 for l0)
    q: int
    t: int
    s: int
    beta: object           # common containment distance
    lambda_claimed: object
    kind: str              # "indicator" | "scaled" | "halfshift"

    @property
    def dim(self):
        return self.q

    def vector(self, x):
        """Realized vector for a t-subset or s-subset of range(q)."""
        x = _check_vertex(x, self.q, (self.t, self.s))
        chi = [1 if i in set(x) else 0 for i in range(self.q)]
        if self.kind == "indicator":
            return tuple(chi)
        if self.kind == "scaled":
            if len(x) == self.s and self.s != self.t:
                scale = math.sqrt(self.t / self.s)
                return tuple(scale * c for c in chi)
            return tuple(float(c) for c in chi)
        if self.kind == "halfshift":
            if len(x) == self.s and self.s != self.t:
                return tuple(Fraction(1, 2) + c for c in chi)
            return tuple(Fraction(c) for c in chi)
        raise ValueError(f"unknown realization kind {self.kind!r}")

    @property
    def exact(self):
        """True when pairwise distances are computed in exact arithmetic."""
        if self.metric in ("l0", "l1"):
            return True
        return self.metric == "lp" and isinstance(self.p, int)


def _check_vertex(x, q, sizes):
    x = tuple(sorted(x))
    if len(set(x)) != len(x) or len(x) not in sizes:
        raise ValueError(f"vertex {x} must be a t- or s-subset (sizes {sizes})")
    if x and (x[0] < 0 or x[-1] >= q):
        raise ValueError(f"vertex {x} has elements outside range({q})")
    return x


def embed_l1(q, t, s):
    """Characteristic vectors; containment at t-s, everything else >= t-s+2."""
    _check_params(q, t, s)
    return GapRealization(metric="l1", p=1, q=q, t=t, s=s, beta=t - s,
                          lambda_claimed=Fraction(t - s + 2, t - s), kind="indicator")


def embed_l0(q, t, s):
    """Same map as embed_l1; on 0/1 vectors the l0 distances coincide."""
    _check_params(q, t, s)
    return GapRealization(metric="l0", p=0, q=q, t=t, s=s, beta=t - s,
                          lambda_claimed=Fraction(t - s + 2, t - s), kind="indicator")


def embed_indicator_lp(q, t, s, p):
    """Characteristic vectors read in lp; gap ((t-s+2)/(t-s))^(1/p)."""
    _check_params(q, t, s)
    if p < 1:
        raise ValueError("need p >= 1")
    return GapRealization(metric="lp", p=p, q=q, t=t, s=s,
                          beta=(t - s) ** (1.0 / p),
                          lambda_claimed=((t - s + 2) / (t - s)) ** (1.0 / p),
                          kind="indicator")


def embed_l2_scaled(q, t, s):
    """Scale s-set indicators by sqrt(t/s).

    Containment pairs land at sqrt(2)*sqrt(t - sqrt(t*s)); the certified gap
    sqrt(1 + 1/(sqrt(t*s) - s)) strictly beats the square root of the l1 gap.
    """
    _check_params(q, t, s)
    beta = math.sqrt(2.0) * math.sqrt(t - math.sqrt(t * s))
    lam = math.sqrt(1.0 + 1.0 / (math.sqrt(t * s) - s))
    return GapRealization(metric="l2", p=2, q=q, t=t, s=s, beta=beta,
                          lambda_claimed=lam, kind="scaled")


def embed_lp_halfshift(q, t, p):
    """Shift the (t-1)-set indicators by the all-halves vector.

    Containment pairs differ by +-1/2 everywhere (distance q^(1/p)/2) while a
    non-containment pair has a coordinate at 3/2, so lambda = 3/q^(1/p),
    which approaches the triangle-inequality ceiling 3 as p grows.
    """
    _check_params(q, t, t - 1)
    if p < 1:
        raise ValueError("need p >= 1")
    beta = q ** (1.0 / p) / 2.0
    return GapRealization(metric="lp", p=p, q=q, t=t, s=t - 1, beta=beta,
                          lambda_claimed=3.0 / q ** (1.0 / p), kind="halfshift")


def _check_params(q, t, s):
    if not (q >= t > s >= 1):
        raise ValueError(f"need q >= t > s >= 1, got q={q} t={t} s={s}")


# ---------------------------------------------------------------------------
# distances
# ---------------------------------------------------------------------------

def _distance_pow(real, vt, vs):
    """|vt - vs|_p^p, exact (int/Fraction) for exact realizations, else float."""
    if real.metric in ("l0", "l1"):
        return sum(abs(a - b) for a, b in zip(vt, vs))
    if real.metric == "l2":
        return sum((a - b) * (a - b) for a, b in zip(vt, vs))
    return sum(abs(a - b) ** real.p for a, b in zip(vt, vs))


def realized_distance(real, x1, x2):
    """Metric distance between the realized vectors of two subsets."""
    dpow = _distance_pow(real, real.vector(x1), real.vector(x2))
    if real.metric in ("l0", "l1"):
        return dpow
    return float(dpow) ** (1.0 / real.p)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

@dataclass
class GapReport:
    min_nonedge_over_edge: object   # None when the graph has no non-edges
    pairs_checked: int
    worst_pair: object
    edge_distance: object
    min_nonedge_distance: object
    edge_pairs: int
    nonedge_pairs: int

    @property
    def certified_ratio(self):
        if self.min_nonedge_over_edge is None:
            return math.inf
        return float(self.min_nonedge_over_edge)


def verify_gap_realization(real, edge_subset=None, budget=DEFAULT_PAIR_BUDGET,
                           tol=TOL):
    """Exhaustively check every (t-set, s-set) pair of the realization.

    Certifies that containment pairs share one distance beta and that every
    other pair is at least lambda_claimed * beta away (exact comparisons for
    exact realizations, tolerance tol for l2 / non-integer p).  When s = t-1
    and non-edges exist, also asserts the observed ratio stays below the
    triangle-inequality ceiling 3.  Restricting to an edge subset can only
    raise the certified ratio.  Raises CertificationError with the worst pair
    on any violation.
    """
    q, t, s = real.q, real.t, real.s
    if edge_subset is None:
        tsets = list(combinations(range(q), t))
    else:
        tsets = sorted(_check_vertex(x, q, (t,)) for x in edge_subset)
        if len(set(tsets)) != len(tsets):
            raise ValueError("duplicate t-sets in edge subset")
    ssets = list(combinations(range(q), s))
    pairs = len(tsets) * len(ssets)
    if budget is not None and pairs > budget:
        raise BudgetExceededError(f"{pairs} pairs exceed budget {budget}",
                                  required=pairs, budget=budget)

    vt = {x: real.vector(x) for x in tsets}
    vs = {x: real.vector(x) for x in ssets}
    p_exp = 1 if real.metric in ("l0", "l1") else real.p
    beta_pow = _beta_pow(real)
    floor_pow = _floor_pow(real)

    edge_pairs = nonedge_pairs = 0
    min_nonedge = None
    worst = None
    for tset in tsets:
        tmembers = set(tset)
        for sset in ssets:
            d = _distance_pow(real, vt[tset], vs[sset])
            if tmembers.issuperset(sset):
                edge_pairs += 1
                if not _close_pow(d, beta_pow, real, tol):
                    raise CertificationError(
                        f"containment pair {tset}/{sset} at distance^p {d}, "
                        f"expected beta^p = {beta_pow}", witness=(tset, sset))
            else:
                nonedge_pairs += 1
                if min_nonedge is None or d < min_nonedge:
                    min_nonedge = d
                    worst = (tset, sset)

    if min_nonedge is not None:
        slack = 0 if real.exact else tol * max(1.0, float(floor_pow))
        if min_nonedge < floor_pow - slack:
            raise CertificationError(
                f"non-containment pair {worst} at distance^p {min_nonedge}, "
                f"below claimed floor {floor_pow}", witness=worst)

    ratio = None
    min_nonedge_dist = None
    if min_nonedge is not None:
        if real.exact and isinstance(min_nonedge, (int, Fraction)) \
                and isinstance(beta_pow, (int, Fraction)) and p_exp == 1:
            ratio = Fraction(min_nonedge, beta_pow)
        else:
            ratio = (float(min_nonedge) / float(beta_pow)) ** (1.0 / p_exp)
        min_nonedge_dist = min_nonedge if p_exp == 1 else float(min_nonedge) ** (1.0 / p_exp)
        if s == t - 1 and float(ratio) > 3.0 + tol:
            raise CertificationError(
                f"observed ratio {float(ratio)} exceeds the ceiling 3", witness=worst)

    return GapReport(min_nonedge_over_edge=ratio, pairs_checked=pairs,
                     worst_pair=worst, edge_distance=real.beta,
                     min_nonedge_distance=min_nonedge_dist,
                     edge_pairs=edge_pairs, nonedge_pairs=nonedge_pairs)


def _beta_pow(real):
    if real.metric in ("l0", "l1"):
        return real.beta
    if real.kind == "halfshift" and isinstance(real.p, int):
        return Fraction(real.q, 2 ** real.p)
    if real.kind == "indicator" and real.metric == "lp" and isinstance(real.p, int):
        return real.t - real.s
    return float(real.beta) ** real.p


def _floor_pow(real):
    lam = real.lambda_claimed
    if real.metric in ("l0", "l1"):
        return lam * real.beta
    if real.kind == "halfshift" and isinstance(real.p, int):
        return Fraction(3 ** real.p, 2 ** real.p)
    if real.kind == "indicator" and real.metric == "lp" and isinstance(real.p, int):
        return real.t - real.s + 2
    return (float(lam) * float(real.beta)) ** real.p


def _close_pow(d, expected, real, tol):
    if real.exact:
        return d == expected
    return abs(float(d) - float(expected)) <= tol * max(1.0, float(expected))


def empirical_gamma(p, delta, q, t=None):
    """Best certified gap ratio for lp at co-arity delta, by construction + check.

    Used for p outside {1, 2}, where no closed form is tabulated.  Tries the
    characteristic-vector map (any delta) and the half-shift map (delta = 1),
    returning (ratio, realization, report) for the larger certified ratio.
    """
    if t is None:
        t = delta + 1
    s = t - delta
    candidates = [embed_indicator_lp(q, t, s, p)]
    if delta == 1:
        candidates.append(embed_lp_halfshift(q, t, p))
    best = None
    for real in candidates:
        report = verify_gap_realization(real)
        ratio = report.certified_ratio
        if best is None or ratio > best[0]:
            best = (ratio, real, report)
    return best


def export_realization(real, fh):
    """One line per vertex: comma-joined subset label, then q coordinates."""
    for size in (real.t, real.s):
        for x in combinations(range(real.q), size):
            label = ",".join(map(str, x))
            coords = " ".join(_fmt(c) for c in real.vector(x))
            fh.write(f"{label} {coords}\n")


def _fmt(c):
    if isinstance(c, Fraction):
        return str(float(c)) if c.denominator > 1 else str(c.numerator)
    if isinstance(c, float):
        return repr(c)
    return str(c)
