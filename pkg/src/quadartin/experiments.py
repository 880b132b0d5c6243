"""Order experiments over families of quadratic integers: per-prime order
profiles, attainment statistics for the (p^2 - 1)/24 threshold, exact
multiplicative-independence verdicts, subgroup growth counts, and the
pigeonhole bookkeeping that splits p^2 - 1 into its p - 1 and p + 1 sides.
"""

from __future__ import annotations

import itertools
import logging
import math
from bisect import bisect_left
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .arith import (
    factor_with_table,
    factorize,
    jacobi,
    primes_up_to,
    smallest_factor_table,
)
from .fp2 import Fp2Context, OrderRecord, order_record
from .quadfield import FieldContext, QuadElem, norm
from .sieve import sieving_limit

log = logging.getLogger(__name__)


class RemarkViolation(AssertionError):
    """An order-chain identity failed at a specific (p, element) pair."""

    def __init__(self, p: int, label: str, detail: str):
        self.p = p
        self.label = label
        super().__init__(f"order chain broken at p = {p}, member {label}: {detail}")


class DependentGenerators(ValueError):
    """A generator set expected to be independent admits a relation."""

    def __init__(self, relation: Tuple[int, ...]):
        self.relation = relation
        super().__init__(f"generators admit the relation {relation}")


@dataclass(frozen=True)
class AlphaFamily:
    """A labelled family of integral elements, all nonzero with nonzero norm."""

    ctx: FieldContext
    members: Tuple[QuadElem, ...]
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        if not self.members:
            raise ValueError("empty family")
        for a in self.members:
            if a.ctx.delta != self.ctx.delta:
                raise ValueError("member from a different field")
            if not a.is_integral:
                raise ValueError(f"non-integral member {a}")
            if a.is_zero() or norm(a) == 0:
                raise ValueError(f"member {a} is zero or has zero norm")
        if not self.labels:
            object.__setattr__(
                self,
                "labels",
                tuple(f"{int(a.x)}+{int(a.y)}r{self.ctx.delta}" for a in self.members),
            )
        if len(self.labels) != len(self.members):
            raise ValueError("labels do not match members")

    @classmethod
    def from_coords(cls, delta: int, coords: Sequence[Sequence[int]]) -> "AlphaFamily":
        ctx = FieldContext(delta)
        return cls(ctx, tuple(ctx.integer(x, y) for x, y in coords))


def inert_primes(ctx: FieldContext, lo: int, hi: int) -> List[int]:
    """Odd inert primes in [lo, hi] for the field (ramified primes skipped)."""
    out = []
    for p in primes_up_to(hi):
        if p < lo or p == 2 or ctx.delta % p == 0:
            continue
        if jacobi(ctx.delta, p) == -1:
            out.append(p)
    return out


def congruence_primes(u: int, v: int, lo: int, hi: int) -> List[int]:
    """Primes p = u (mod v) in [lo, hi]."""
    return [p for p in primes_up_to(hi) if p >= lo and p % v == u % v]


@dataclass(frozen=True)
class ScanSummary:
    """Aggregates of one order scan."""

    prime_count: int
    skipped: int
    labels: Tuple[str, ...]
    attained_per_member: Tuple[int, ...]
    attained_family: int
    index_histogram: Dict[int, int]

    def __post_init__(self):
        if self.attained_per_member and self.prime_count >= 0:
            best = max(self.attained_per_member)
            if self.attained_family < best or self.attained_family > self.prime_count:
                raise ValueError("family attainment count out of range")

    @property
    def fractions(self) -> Tuple[float, ...]:
        if self.prime_count == 0:
            return tuple(0.0 for _ in self.attained_per_member)
        return tuple(c / self.prime_count for c in self.attained_per_member)

    @property
    def family_fraction(self) -> float:
        return self.attained_family / self.prime_count if self.prime_count else 0.0


def _scan_block(args) -> List[Tuple[int, int, int, int, int, bool]]:
    delta, coords, primes = args
    ctx = FieldContext(delta)
    members = [ctx.integer(x, y) for x, y in coords]
    rows = []
    for p in primes:
        try:
            fctx = Fp2Context.for_prime(p, ctx)
        except ValueError:
            rows.append((p, -1, 0, 0, 0, False))
            continue
        usable = True
        recs = []
        for i, a in enumerate(members):
            if int(norm(a)) % p == 0:
                usable = False
                break
            r = order_record(a, fctx)
            recs.append((p, i, r.ord_alpha, r.ord_n, r.ord_m, r.attained))
        if usable:
            rows.extend(recs)
        else:
            rows.append((p, -1, 0, 0, 0, False))
    return rows


def order_scan(
    family: AlphaFamily,
    primes: Iterable[int],
    workers: int = 1,
) -> Tuple[List[Tuple[str, OrderRecord]], ScanSummary]:
    """Order profile of every family member at every usable prime.

    Primes that are not inert, ramify, or divide some member's norm are
    skipped (logged and counted), not fatal.  Records come back sorted by
    (p, member position) regardless of worker count.
    """
    plist = sorted(set(int(p) for p in primes))
    coords = [(int(a.x), int(a.y)) for a in family.members]
    delta = family.ctx.delta
    if workers > 1 and len(plist) > 64:
        chunks = [plist[i::workers] for i in range(workers)]
        args = [(delta, coords, c) for c in chunks if c]
        rows: List[Tuple[int, int, int, int, int, bool]] = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_scan_block, args):
                rows.extend(part)
    else:
        rows = _scan_block((delta, coords, plist))
    rows.sort(key=lambda r: (r[0], r[1]))

    records: List[Tuple[str, OrderRecord]] = []
    per_member = [0] * len(family.members)
    family_attained = 0
    histogram: Dict[int, int] = {}
    skipped = 0
    seen_primes = set()
    attained_primes = set()
    for p, i, oa, on, om, att in rows:
        if i < 0:
            skipped += 1
            log.debug("skipping p = %d (not inert or divides a norm)", p)
            continue
        seen_primes.add(p)
        rec = OrderRecord(p, oa, on, om, att)
        records.append((family.labels[i], rec))
        if att:
            per_member[i] += 1
            attained_primes.add(p)
        idx = (p * p - 1) // oa
        histogram[idx] = histogram.get(idx, 0) + 1
    summary = ScanSummary(
        len(seen_primes),
        skipped,
        family.labels,
        tuple(per_member),
        len(attained_primes),
        histogram,
    )
    return records, summary


def remark12_verify(family: AlphaFamily, primes: Iterable[int]) -> Dict[str, int]:
    """Check the order-chain identities at every usable (p, member) pair:
    the norm's order divides p - 1, the conjugate ratio's order divides
    p + 1, both divide the element's order, and their product divides twice
    the element's order.  Any failure raises RemarkViolation.
    """
    ctx = family.ctx
    checked = 0
    skipped = 0
    for p in sorted(set(int(q) for q in primes)):
        try:
            fctx = Fp2Context.for_prime(p, ctx)
        except ValueError:
            skipped += 1
            continue
        if any(int(norm(a)) % p == 0 for a in family.members):
            skipped += 1
            continue
        for label, a in zip(family.labels, family.members):
            r = order_record(a, fctx)
            n2 = p * p - 1
            if (p - 1) % r.ord_n:
                raise RemarkViolation(p, label, f"ord_n = {r.ord_n} does not divide p - 1")
            if (p + 1) % r.ord_m:
                raise RemarkViolation(p, label, f"ord_m = {r.ord_m} does not divide p + 1")
            if n2 % r.ord_alpha:
                raise RemarkViolation(p, label, "ord_alpha does not divide p^2 - 1")
            if r.ord_alpha % r.ord_n or r.ord_alpha % r.ord_m:
                raise RemarkViolation(p, label, "component order does not divide ord_alpha")
            if (2 * r.ord_alpha) % (r.ord_n * r.ord_m):
                raise RemarkViolation(
                    p, label, f"{r.ord_n} * {r.ord_m} does not divide 2 * {r.ord_alpha}"
                )
            checked += 1
    return {"checked": checked, "skipped": skipped, "violations": 0}


# ---------------------------------------------------------------------------
# multiplicative independence

@dataclass(frozen=True)
class IndependenceVerdict:
    """Outcome of an independence check.  relation, when present, is a
    nonzero integer exponent vector with product exactly +-1 (rational case)
    or exactly 1 (norm-one case)."""

    independent: bool
    relation: Optional[Tuple[int, ...]] = None
    search_bound: Optional[int] = None


def _exponent_matrix(values: Sequence[Fraction]) -> Tuple[List[List[int]], List[int]]:
    primes: List[int] = []
    rows = []
    for val in values:
        num = factorize(val.numerator)
        den = factorize(val.denominator)
        exps: Dict[int, int] = {p: e for p, e in num.factors}
        for p, e in den.factors:
            exps[p] = exps.get(p, 0) - e
        for p in exps:
            if p not in primes:
                primes.append(p)
        rows.append(exps)
    primes.sort()
    return [[r.get(p, 0) for p in primes] for r in rows], primes


def _kernel_vector(mat: List[List[int]]) -> Optional[Tuple[int, ...]]:
    """A nonzero integer vector e with sum(e_i * row_i) = 0, or None."""
    k = len(mat)
    m = len(mat[0]) if mat else 0
    # Row reduce [mat | I] over Q; a zero row in the mat part exposes a kernel
    # vector in the identity part.
    aug = [
        [Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(k)]
        for i, row in enumerate(mat)
    ]
    pivot_row = 0
    for col in range(m):
        sel = None
        for r in range(pivot_row, k):
            if aug[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        aug[pivot_row], aug[sel] = aug[sel], aug[pivot_row]
        pv = aug[pivot_row][col]
        aug[pivot_row] = [x / pv for x in aug[pivot_row]]
        for r in range(k):
            if r != pivot_row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[pivot_row])]
        pivot_row += 1
        if pivot_row == k:
            break
    for r in range(pivot_row, k):
        if all(x == 0 for x in aug[r][:m]):
            tail = aug[r][m:]
            denom = math.lcm(*(x.denominator for x in tail))
            ints = [int(x * denom) for x in tail]
            g = math.gcd(*(abs(t) for t in ints))
            ints = [t // g for t in ints]
            lead = next(t for t in ints if t != 0)
            if lead < 0:
                ints = [-t for t in ints]
            return tuple(ints)
    return None


def mult_indep_rational(values: Sequence[Fraction]) -> IndependenceVerdict:
    """Exact multiplicative independence of nonzero rationals, by the rank
    of their prime-exponent matrix over Q.  Signs are ignored, so a returned
    relation has product +1 or -1; it is re-verified exactly before return.
    """
    vals = [Fraction(v) for v in values]
    if not vals:
        raise ValueError("empty input")
    for i, v in enumerate(vals):
        if v == 0:
            raise ValueError("zero is not allowed")
        if v == 1 or v == -1:
            rel = tuple(1 if j == i else 0 for j in range(len(vals)))
            return IndependenceVerdict(False, rel)
    mat, _ = _exponent_matrix(vals)
    rel = _kernel_vector(mat)
    if rel is None:
        return IndependenceVerdict(True)
    prod = Fraction(1)
    for v, e in zip(vals, rel):
        prod *= v**e
    assert prod in (1, -1), f"relation {rel} does not verify"
    return IndependenceVerdict(False, rel)


def mult_indep_norm_one(
    values: Sequence[QuadElem], bound: int = 10
) -> IndependenceVerdict:
    """Bounded relation search among norm-one field elements.

    Exhausts exponent vectors with |e_i| <= bound (real-logarithm screening
    first, exact Fraction verification after).  Either returns the first
    relation with product exactly 1, or reports independence up to the
    bound.  Inverses are conjugates here, so the exact check is cheap.
    """
    if not values:
        raise ValueError("empty input")
    for v in values:
        if norm(v) != 1:
            raise ValueError(f"norm of {v} is {norm(v)}, need 1")
        if v.y == 0 and abs(v.x) == 1:
            raise ValueError(f"{v} is a unit of finite order, not allowed")
    k = len(values)
    sq = math.sqrt(values[0].ctx.delta)
    logs = [math.log(abs(float(v.x) + float(v.y) * sq)) for v in values]
    scale = max(max(abs(t) for t in logs), 1.0)
    one = values[0].ctx.element(1, 0)
    for e in itertools.product(range(-bound, bound + 1), repeat=k):
        if all(t == 0 for t in e):
            continue
        first = next(t for t in e if t != 0)
        if first < 0:
            continue  # -e covers it
        if abs(math.fsum(t * l for t, l in zip(e, logs))) > 1e-6 * scale * bound:
            continue
        prod = one
        for v, t in zip(values, e):
            prod = prod * v**t
        if prod.x == 1 and prod.y == 0:
            return IndependenceVerdict(False, tuple(e), bound)
    return IndependenceVerdict(True, None, bound)


# ---------------------------------------------------------------------------
# subgroup growth

def subgroup_size(p: int, gens: Sequence[int]) -> int:
    """Order of the subgroup of (Z/p)^* generated by gens: the lcm of the
    generators' orders (the group is cyclic)."""
    f = factorize(p - 1)
    out = 1
    for g in gens:
        if g % p == 0:
            raise ValueError(f"generator {g} vanishes mod {p}")
        n = p - 1
        for q in f.primes:
            while n % q == 0 and pow(g, n // q, p) == 1:
                n //= q
        out = math.lcm(out, n)
    return out


@dataclass(frozen=True)
class GrowthFit:
    """Counts N(y) = #{p <= x : |<gens> mod p| < y} on a grid of y values,
    with the least-squares slope of log N against log y."""

    x: int
    gens: Tuple[int, ...]
    samples: Tuple[Tuple[float, int], ...]
    slope: float
    prime_count: int


def lemma42_scan(
    gens: Sequence[int],
    x: int,
    y_grid: Optional[Sequence[float]] = None,
    workers: int = 1,
) -> GrowthFit:
    """Tabulate how often the reduction of a fixed independent generator set
    spans a small subgroup.  The generators must be multiplicatively
    independent integers; primes dividing any generator are skipped.
    """
    verdict = mult_indep_rational([Fraction(g) for g in gens])
    if not verdict.independent:
        raise DependentGenerators(verdict.relation)
    if y_grid is None:
        y_grid = [float(t) for t in np.geomspace(10.0, 1e4, 13)]
    y_grid = sorted(float(y) for y in y_grid)

    plist = [p for p in primes_up_to(x) if all(g % p != 0 for g in gens)]
    if workers > 1 and len(plist) > 1000:
        chunks = [plist[i::workers] for i in range(workers)]
        sizes: List[int] = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(
                _subgroup_block, [(tuple(gens), x, c) for c in chunks]
            ):
                sizes.extend(part)
    else:
        sizes = _subgroup_block((tuple(gens), x, plist))
    sizes.sort()

    samples = tuple((y, bisect_left(sizes, y)) for y in y_grid)
    pts = [(math.log(y), math.log(n)) for y, n in samples if n > 0]
    if len(pts) >= 2:
        xs = np.array([t[0] for t in pts])
        ys = np.array([t[1] for t in pts])
        slope = float(np.polyfit(xs, ys, 1)[0])
    else:
        slope = float("nan")
    return GrowthFit(x, tuple(gens), samples, slope, len(plist))


def _subgroup_block(args) -> List[int]:
    gens, x, plist = args
    spf = smallest_factor_table(x)
    out = []
    for p in plist:
        fact = factor_with_table(p - 1, spf)
        size = 1
        for g in gens:
            n = p - 1
            for q in fact:
                while n % q == 0 and pow(g, n // q, p) == 1:
                    n //= q
            size = math.lcm(size, n)
        out.append(size)
    return out


# ---------------------------------------------------------------------------
# pigeonhole bookkeeping

@dataclass(frozen=True)
class PigeonholeRow:
    """Per-prime split of p^2 - 1 into its two sides."""

    p: int
    survivor: bool
    d_minus: int
    d_plus: int
    m_minus: int
    m_plus: int
    d_minus_divides: bool
    d_plus_divides: bool


@dataclass(frozen=True)
class PigeonholeReport:
    """How the two sides of p^2 - 1 carry the order threshold.

    Component attainment asks for ord_n * d_minus >= p - 1 (norm side) and
    ord_m * d_plus >= p + 1 (ratio side); full attainment is the usual
    24 * ord_alpha >= p^2 - 1.  All three are tabulated per member, none is
    derived from another.
    """

    threshold: int
    rows: Tuple[PigeonholeRow, ...]
    labels: Tuple[str, ...]
    minus_attained: Tuple[int, ...]
    plus_attained: Tuple[int, ...]
    full_attained: Tuple[int, ...]
    max_side_factors: int

    @property
    def members_needed(self) -> int:
        """Pigeonhole demand implied by the observed worst split: six
        holes per large prime factor, one spare."""
        return 6 * self.max_side_factors + 1


def pigeonhole_report(
    family: AlphaFamily,
    primes: Iterable[int],
    x: Optional[int] = None,
    delta1: float = 0.01,
    v_excluded: int = 24,
) -> PigeonholeReport:
    """Tabulate, for each usable prime, the side parameters d_- and d_+
    (4 and 6, or 12 and 2, by p mod 3), the number of prime factors above
    the trial threshold on each side, and which members attain the
    component and full thresholds.

    Survivors (p^2 - 1 free of small primes outside v_excluded) must have
    at most 7 large factors per side; that bound is asserted, everything
    else is only measured.
    """
    plist = sorted(set(int(p) for p in primes))
    if x is None:
        x = max(plist) if plist else 2
    threshold = sieving_limit(x, delta1)
    ctx = family.ctx
    rows: List[PigeonholeRow] = []
    k = len(family.members)
    minus_att = [0] * k
    plus_att = [0] * k
    full_att = [0] * k
    max_m = 0
    small = [q for q in primes_up_to(threshold) if v_excluded % q != 0]
    for p in plist:
        try:
            fctx = Fp2Context.for_prime(p, ctx)
        except ValueError:
            continue
        if any(int(norm(a)) % p == 0 for a in family.members):
            continue
        if p % 3 == 1:
            d_minus, d_plus = 12, 2
        else:
            d_minus, d_plus = 4, 6
        m_minus = sum(
            e for q, e in fctx.fact_pm1.factors if q > threshold
        )
        m_plus = sum(e for q, e in fctx.fact_pp1.factors if q > threshold)
        t = p * p - 1
        survivor = True
        for q in small:
            if t % q == 0:
                survivor = False
                break
        if survivor:
            if m_minus > 7 or m_plus > 7:
                raise AssertionError(
                    f"survivor p = {p} has {max(m_minus, m_plus)} large factors on one side"
                )
            max_m = max(max_m, m_minus, m_plus)
        rows.append(
            PigeonholeRow(
                p,
                survivor,
                d_minus,
                d_plus,
                m_minus,
                m_plus,
                (p - 1) % d_minus == 0,
                (p + 1) % d_plus == 0,
            )
        )
        for i, a in enumerate(family.members):
            r = order_record(a, fctx)
            if r.ord_n * d_minus >= p - 1:
                minus_att[i] += 1
            if r.ord_m * d_plus >= p + 1:
                plus_att[i] += 1
            if r.attained:
                full_att[i] += 1
    return PigeonholeReport(
        threshold,
        tuple(rows),
        family.labels,
        tuple(minus_att),
        tuple(plus_att),
        tuple(full_att),
        max_m,
    )
