"""Exact Laurent series truncated in a simplicial cone.

Every series lives over a fixed integer lattice equipped with a unimodular
change of basis K mapping raw monomial exponents to cone coordinates.  A
monomial is admissible when its cone coordinates are componentwise
nonnegative; its degree is their sum, so each degree slice is finite and
truncation at a degree cutoff is exact.  Coefficients are Python ints.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from operator import add


class SeriesError(Exception):
    """Base class for series arithmetic failures."""


class LatticeMismatch(SeriesError):
    pass


class NotInvertible(SeriesError):
    pass


class SupportViolation(SeriesError):
    pass


class BeyondCutoff(SeriesError):
    pass


def _invert_unimodular(rows):
    """Invert an integer matrix, insisting on det = +-1.

    Returns (inverse rows as ints, det).
    """
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(rows)]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("K is singular")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    if det not in (1, -1):
        raise ValueError(f"K must be unimodular, det={det}")
    inv_rows = []
    for r in range(n):
        row = a[r][n:]
        if any(x.denominator != 1 for x in row):
            raise ValueError("non-integer inverse")
        inv_rows.append(tuple(int(x) for x in row))
    return tuple(inv_rows), int(det)


@dataclass(frozen=True)
class LatticeSpec:
    """Rank and unimodular raw-exponent -> cone-coordinate matrix K (rows)."""

    rank: int
    K: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rank <= 0:
            raise ValueError("rank must be positive")
        if len(self.K) != self.rank or any(len(r) != self.rank for r in self.K):
            raise ValueError("K must be rank x rank")
        kinv, det = _invert_unimodular(self.K)
        object.__setattr__(self, "_Kinv", kinv)
        object.__setattr__(self, "_det", det)

    @property
    def Kinv(self) -> tuple[tuple[int, ...], ...]:
        return self._Kinv

    def to_coords(self, exps):
        if len(exps) != self.rank:
            raise ValueError(f"expected {self.rank} exponents, got {len(exps)}")
        return tuple(sum(k * e for k, e in zip(row, exps)) for row in self.K)

    def to_exps(self, coords):
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        return tuple(sum(k * c for k, c in zip(row, coords)) for row in self._Kinv)

    def degree(self, exps) -> int:
        return sum(self.to_coords(exps))


def cone_coords(lattice: LatticeSpec, exps):
    """Cone coordinates K.e, membership flag and degree of a raw exponent."""
    coords = lattice.to_coords(exps)
    return coords, all(c >= 0 for c in coords), sum(coords)


def gl_lattice() -> LatticeSpec:
    # raw exponents (n, a, b1, b2) of q^n x^a y1^b1 y2^b2;
    # coords (b1+n, a+n, b2+n, n), the dual basis of {y1, x, y2, q/(x y1 y2)}
    return LatticeSpec(4, ((1, 0, 1, 0), (1, 1, 0, 0), (1, 0, 0, 1), (1, 0, 0, 0)))


def finite_gl_lattice() -> LatticeSpec:
    # raw exponents (a, b1, b2) of x^a y1^b1 y2^b2; K = identity
    return LatticeSpec(3, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def sl21_lattice() -> LatticeSpec:
    # raw exponents (n, b1, b2) of z^n u1^b1 u2^b2; coords (b1+n, b2+n, n)
    return LatticeSpec(3, ((1, 1, 0), (1, 0, 1), (1, 0, 0)))


def q_lattice() -> LatticeSpec:
    return LatticeSpec(1, ((1,),))


class GradedSeries:
    """Truncated exact series with cone-supported terms.

    Immutable by convention: no public mutator, operations return new
    instances.  Terms are stored keyed by cone coordinates.
    """

    __slots__ = ("lattice", "cutoff", "_terms")

    def __init__(self, lattice: LatticeSpec, cutoff: int, terms=None, _validated=False):
        if cutoff < 0:
            raise ValueError("cutoff must be nonnegative")
        terms = terms or {}
        if not _validated:
            for k, c in terms.items():
                if len(k) != lattice.rank or any(x < 0 for x in k):
                    raise SupportViolation(f"coordinates {k} outside cone")
                if sum(k) > cutoff:
                    raise SupportViolation(f"coordinates {k} beyond cutoff {cutoff}")
                if not isinstance(c, int) or c == 0:
                    raise ValueError(f"bad coefficient {c!r}")
        self.lattice = lattice
        self.cutoff = cutoff
        self._terms = terms

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, lattice, cutoff):
        return cls(lattice, cutoff, {}, _validated=True)

    @classmethod
    def one(cls, lattice, cutoff):
        return cls(lattice, cutoff, {(0,) * lattice.rank: 1}, _validated=True)

    @classmethod
    def monomial(cls, lattice, cutoff, exps, coeff=1):
        coords, in_cone, deg = cone_coords(lattice, exps)
        if not in_cone:
            raise SupportViolation(f"monomial {exps} outside cone")
        if deg > cutoff:
            raise SupportViolation(f"monomial {exps} beyond cutoff {cutoff}")
        if coeff == 0:
            return cls.zero(lattice, cutoff)
        return cls(lattice, cutoff, {coords: coeff}, _validated=True)

    @classmethod
    def from_terms(cls, lattice, cutoff, raw_terms):
        """Build from a {raw exponents: coefficient} mapping."""
        terms = {}
        for exps, c in raw_terms.items():
            if c == 0:
                continue
            coords, in_cone, deg = cone_coords(lattice, exps)
            if not in_cone:
                raise SupportViolation(f"monomial {exps} outside cone")
            if deg > cutoff:
                raise SupportViolation(f"monomial {exps} beyond cutoff {cutoff}")
            terms[coords] = terms.get(coords, 0) + c
        return cls(lattice, cutoff, {k: v for k, v in terms.items() if v}, _validated=True)

    # -- queries ---------------------------------------------------------

    def __len__(self):
        return len(self._terms)

    @property
    def constant_term(self) -> int:
        return self._terms.get((0,) * self.lattice.rank, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def coeff(self, exps) -> int:
        """Exact coefficient of the raw-exponent monomial.

        Raises BeyondCutoff for in-cone monomials above the truncation
        degree; out-of-cone monomials have coefficient 0 by construction.
        """
        coords, in_cone, deg = cone_coords(self.lattice, exps)
        if not in_cone:
            return 0
        if deg > self.cutoff:
            raise BeyondCutoff(f"degree {deg} beyond truncation {self.cutoff}")
        return self._terms.get(coords, 0)

    def slice(self, d: int):
        """All monomials of degree exactly d, as {raw exponents: coefficient}."""
        if d > self.cutoff:
            raise BeyondCutoff(f"degree {d} beyond truncation {self.cutoff}")
        return {self.lattice.to_exps(k): c for k, c in self._terms.items() if sum(k) == d}

    def support(self):
        """Raw exponents of all stored monomials, canonically ordered."""
        return [e for _, e, _ in self.items_canonical()]

    def items_canonical(self):
        """(coords, raw exponents, coefficient), degree-major then lex order."""
        for k in sorted(self._terms, key=lambda k: (sum(k), k)):
            yield k, self.lattice.to_exps(k), self._terms[k]

    def equal_up_to(self, other: "GradedSeries", d: int) -> bool:
        return not self.diff_up_to(other, d, limit=1)

    def diff_up_to(self, other: "GradedSeries", d: int, limit=None):
        """Monomials of degree <= d where the two series differ.

        Returns [(raw exponents, self coefficient, other coefficient)] in
        canonical order.
        """
        if self.lattice != other.lattice:
            raise LatticeMismatch("cannot compare series over different lattices")
        if d > self.cutoff or d > other.cutoff:
            raise BeyondCutoff(f"degree {d} beyond truncation")
        keys = set(self._terms) | set(other._terms)
        diffs = []
        for k in sorted(keys, key=lambda k: (sum(k), k)):
            if sum(k) > d:
                continue
            ca = self._terms.get(k, 0)
            cb = other._terms.get(k, 0)
            if ca != cb:
                diffs.append((self.lattice.to_exps(k), ca, cb))
                if limit is not None and len(diffs) >= limit:
                    break
        return diffs

    def restrict(self, m: int) -> "GradedSeries":
        """The same series truncated at the lower cutoff m."""
        if m > self.cutoff:
            raise BeyondCutoff(f"cannot extend cutoff {self.cutoff} to {m}")
        return GradedSeries(self.lattice, m,
                            {k: c for k, c in self._terms.items() if sum(k) <= m},
                            _validated=True)

    def __eq__(self, other):
        return (isinstance(other, GradedSeries)
                and self.lattice == other.lattice
                and self.cutoff == other.cutoff
                and self._terms == other._terms)

    __hash__ = None

    def __repr__(self):
        return (f"GradedSeries(rank={self.lattice.rank}, cutoff={self.cutoff}, "
                f"terms={len(self._terms)})")


def _check_same_lattice(a: GradedSeries, b: GradedSeries):
    if a.lattice != b.lattice:
        raise LatticeMismatch("series over different lattices")


def _slices(terms, cutoff):
    out = [dict() for _ in range(cutoff + 1)]
    for k, c in terms.items():
        out[sum(k)][k] = c
    return out


def linear_combine(pairs) -> GradedSeries:
    """Exact integer linear combination; cutoff is the min of the inputs."""
    pairs = list(pairs)
    if not pairs:
        raise ValueError("empty combination")
    lattice = pairs[0][1].lattice
    cutoff = min(s.cutoff for _, s in pairs)
    out = {}
    for scalar, s in pairs:
        _check_same_lattice(pairs[0][1], s)
        if scalar == 0:
            continue
        for k, c in s._terms.items():
            if sum(k) <= cutoff:
                out[k] = out.get(k, 0) + scalar * c
    return GradedSeries(lattice, cutoff, {k: v for k, v in out.items() if v},
                        _validated=True)


def mul(a: GradedSeries, b: GradedSeries) -> GradedSeries:
    """Exact product, truncated at min(cutoff_a, cutoff_b)."""
    _check_same_lattice(a, b)
    cutoff = min(a.cutoff, b.cutoff)
    if len(a._terms) > len(b._terms):
        a, b = b, a
    bl = sorted((sum(k), k, c) for k, c in b._terms.items())
    out = {}
    get = out.get
    for ka, ca in a._terms.items():
        budget = cutoff - sum(ka)
        if budget < 0:
            continue
        for db, kb, cb in bl:
            if db > budget:
                break
            key = tuple(map(add, ka, kb))
            out[key] = get(key, 0) + ca * cb
    return GradedSeries(a.lattice, cutoff, {k: v for k, v in out.items() if v},
                        _validated=True)


def invert(s: GradedSeries) -> GradedSeries:
    """Multiplicative inverse up to the cutoff, slice by slice.

    Requires constant term +-1; this is exactly invertibility in the
    cone-supported integer ring.
    """
    rank = s.lattice.rank
    zero = (0,) * rank
    c0 = s._terms.get(zero, 0)
    if c0 not in (1, -1):
        raise NotInvertible(
            f"constant term {c0} is not a unit in the cone-supported ring")
    n = s.cutoff
    ssl = _slices(s._terms, n)
    rsl = [{zero: c0}]
    for d in range(1, n + 1):
        acc = {}
        get = acc.get
        for j in range(1, d + 1):
            sj = ssl[j]
            if not sj:
                continue
            rj = rsl[d - j]
            if not rj:
                continue
            for ku, cu in sj.items():
                for kv, cv in rj.items():
                    key = tuple(map(add, ku, kv))
                    acc[key] = get(key, 0) + cu * cv
        rsl.append({k: -c0 * v for k, v in acc.items() if v})
    terms = {}
    for sl in rsl:
        terms.update(sl)
    return GradedSeries(s.lattice, n, terms, _validated=True)


def _binomial_coords(lattice, cutoff, exps):
    coords, in_cone, deg = cone_coords(lattice, exps)
    if not in_cone or deg <= 0:
        raise SupportViolation(
            f"binomial monomial {exps} must lie in the cone with positive degree")
    return coords, deg


def mul_binomial(s: GradedSeries, sign: int, exps) -> GradedSeries:
    """Multiply by (1 + sign * m) for an in-cone monomial m of positive degree."""
    g, dg = _binomial_coords(s.lattice, s.cutoff, exps)
    return _mul_binomial(s, sign, g, dg)


def _mul_binomial(s, sign, g, dg):
    cutoff = s.cutoff
    out = dict(s._terms)
    get = out.get
    for k, c in s._terms.items():
        if sum(k) + dg <= cutoff:
            key = tuple(map(add, k, g))
            out[key] = get(key, 0) + sign * c
    return GradedSeries(s.lattice, cutoff, {k: v for k, v in out.items() if v},
                        _validated=True)


def div_binomial(s: GradedSeries, sign: int, exps) -> GradedSeries:
    """Divide by (1 + sign * m): multiply by the geometric series of -sign*m."""
    g, dg = _binomial_coords(s.lattice, s.cutoff, exps)
    return _div_binomial(s, sign, g, dg)


def _div_binomial(s, sign, g, dg):
    cutoff = s.cutoff
    ssl = _slices(s._terms, cutoff)
    rsl = []
    for d in range(cutoff + 1):
        cur = dict(ssl[d])
        if d >= dg:
            for k, c in rsl[d - dg].items():
                key = tuple(map(add, k, g))
                cur[key] = cur.get(key, 0) - sign * c
        rsl.append({k: v for k, v in cur.items() if v})
    terms = {}
    for sl in rsl:
        terms.update(sl)
    return GradedSeries(s.lattice, cutoff, terms, _validated=True)


def apply_pochhammer(s: GradedSeries, head, step, sign: int,
                     inverse: bool = False) -> GradedSeries:
    """Multiply (or divide) by prod_{n>=0} (1 + sign * step^n * head).

    Only factors whose monomial has degree <= cutoff differ from 1 below
    the truncation, so the loop is finite.
    """
    lattice = s.lattice
    h, dh = _binomial_coords(lattice, s.cutoff, head)
    g, dg = _binomial_coords(lattice, s.cutoff, step)
    op = _div_binomial if inverse else _mul_binomial
    m, dm = h, dh
    while dm <= s.cutoff:
        s = op(s, sign, m, dm)
        m = tuple(map(add, m, g))
        dm += dg
    return s


def pochhammer(lattice: LatticeSpec, cutoff: int, head, step, sign: int) -> GradedSeries:
    """Truncation of prod_{n>=0} (1 + sign * step^n * head)."""
    return apply_pochhammer(GradedSeries.one(lattice, cutoff), head, step, sign)


def _vneg(e):
    return tuple(-x for x in e)


def _vadd(a, b):
    return tuple(map(add, a, b))


def expand_term(lattice: LatticeSpec, cutoff: int, sign: int, base,
                nums=(), dens=()) -> GradedSeries:
    """Expand sign * m^base * prod(1 - m^nu) / prod(1 + m^mu) into the cone.

    Factors whose monomial has negative degree are rewritten by pulling the
    monomial out ((1 - m) = -m(1 - 1/m), 1/(1+m) = (1/m)/(1 + 1/m)), which
    keeps every partial expansion cone-supported.  A nonconstant factor
    monomial of degree exactly 0 is rejected.
    """
    base = tuple(base)
    num_g, den_g = [], []
    for e in nums:
        e = tuple(e)
        d = lattice.degree(e)
        if d > 0:
            num_g.append(e)
        elif d < 0:
            sign = -sign
            base = _vadd(base, e)
            num_g.append(_vneg(e))
        else:
            if all(x == 0 for x in e):
                return GradedSeries.zero(lattice, cutoff)
            raise SupportViolation(f"factor monomial {e} of degree 0")
    for e in dens:
        e = tuple(e)
        d = lattice.degree(e)
        if d > 0:
            den_g.append(e)
        elif d < 0:
            base = _vadd(base, _vneg(e))
            den_g.append(_vneg(e))
        else:
            raise SupportViolation(f"denominator monomial {e} of degree 0")
    coords, in_cone, deg = cone_coords(lattice, base)
    if not in_cone:
        raise SupportViolation(f"leading monomial {base} outside cone")
    if deg > cutoff:
        return GradedSeries.zero(lattice, cutoff)
    s = GradedSeries(lattice, cutoff, {coords: sign}, _validated=True)
    for e in num_g:
        g, dg = _binomial_coords(lattice, cutoff, e)
        s = _mul_binomial(s, -1, g, dg)
    for e in den_g:
        g, dg = _binomial_coords(lattice, cutoff, e)
        s = _div_binomial(s, 1, g, dg)
    return s


# -- interchange format ------------------------------------------------------


def serialize(s: GradedSeries) -> str:
    """Canonical JSON: header plus degree-major, lex-ordered term records."""
    records = [{"k": list(k), "e": list(e), "c": str(c)}
               for k, e, c in s.items_canonical()]
    doc = {"rank": s.lattice.rank,
           "K": [list(r) for r in s.lattice.K],
           "cutoff": s.cutoff,
           "terms": records}
    return json.dumps(doc, separators=(",", ":"))


def deserialize(text: str) -> GradedSeries:
    try:
        doc = json.loads(text)
        lattice = LatticeSpec(doc["rank"], tuple(tuple(r) for r in doc["K"]))
        cutoff = doc["cutoff"]
        records = doc["terms"]
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise SeriesError(f"malformed series stream: {exc}") from None
    terms = {}
    for rec in records:
        coords = tuple(rec["k"])
        exps = tuple(rec["e"])
        c = int(rec["c"])
        if coords != lattice.to_coords(exps):
            raise SeriesError(f"inconsistent record {rec}")
        if any(x < 0 for x in coords):
            raise SeriesError(f"out-of-cone record {rec}")
        if sum(coords) > cutoff:
            raise SeriesError(f"record {rec} beyond cutoff")
        if c == 0:
            raise SeriesError(f"zero coefficient record {rec}")
        if coords in terms:
            raise SeriesError(f"duplicate record {rec}")
        terms[coords] = c
    return GradedSeries(lattice, cutoff, terms, _validated=True)
