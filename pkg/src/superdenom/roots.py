"""Weight space, bilinear form, Weyl group and signed orbit expansions.

Weights live in the six-dimensional space with ordered basis
(eps1, eps2, d1, d2, delta, L0); the form is diagonal +1,+1,-1,-1 on the
first four vectors, delta and L0 are isotropic and pair to 1.  The Weyl
group is the product of two infinite dihedral factors, generated by the
reflections along alpha and gamma together with the translations along
them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .series import GradedSeries, LatticeSpec, SeriesError, expand_term, linear_combine


class RootError(Exception):
    pass


@dataclass(frozen=True)
class Weight:
    coords: tuple[Fraction, ...]

    @staticmethod
    def of(*vals) -> "Weight":
        if len(vals) != 6:
            raise ValueError("weights have six coordinates")
        return Weight(tuple(Fraction(v) for v in vals))

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def __rmul__(self, scalar) -> "Weight":
        scalar = Fraction(scalar)
        return Weight(tuple(scalar * a for a in self.coords))

    def serialize(self) -> list[str]:
        return [str(c) for c in self.coords]

    @staticmethod
    def deserialize(items) -> "Weight":
        return Weight.of(*[Fraction(s) for s in items])


ZERO = Weight.of(0, 0, 0, 0, 0, 0)
EPS1 = Weight.of(1, 0, 0, 0, 0, 0)
EPS2 = Weight.of(0, 1, 0, 0, 0, 0)
D1 = Weight.of(0, 0, 1, 0, 0, 0)
D2 = Weight.of(0, 0, 0, 1, 0, 0)
DELTA = Weight.of(0, 0, 0, 0, 1, 0)
LAMBDA0 = Weight.of(0, 0, 0, 0, 0, 1)

BETA1 = D1 - EPS1
ALPHA = EPS1 - EPS2
BETA2 = EPS2 - D2
GAMMA = BETA1 + ALPHA + BETA2          # = D1 - D2
RHO = Fraction(-1, 2) * (BETA1 + BETA2)


def inner(a: Weight, b: Weight) -> Fraction:
    x, y = a.coords, b.coords
    return (x[0] * y[0] + x[1] * y[1] - x[2] * y[2] - x[3] * y[3]
            + x[4] * y[5] + x[5] * y[4])


def reflect(nu: Weight, lam: Weight) -> Weight:
    nn = inner(nu, nu)
    if nn == 0:
        raise RootError("cannot reflect along an isotropic vector")
    return lam - (2 * inner(lam, nu) / nn) * nu


def translate(mu: Weight, lam: Weight) -> Weight:
    ld = inner(lam, DELTA)
    return lam + ld * mu - (inner(lam, mu) + Fraction(inner(mu, mu), 2) * ld) * DELTA


@dataclass(frozen=True)
class WeylElement:
    """t_{p*alpha} s_alpha^eps . t_{pp*gamma} s_gamma^epsp, in normal form."""

    p: int = 0
    eps: int = 0
    pp: int = 0
    epsp: int = 0

    def sgn(self) -> int:
        return -1 if (self.eps + self.epsp) % 2 else 1

    def apply(self, lam: Weight) -> Weight:
        v = lam
        if self.epsp:
            v = reflect(GAMMA, v)
        if self.pp:
            v = translate(self.pp * GAMMA, v)
        if self.eps:
            v = reflect(ALPHA, v)
        if self.p:
            v = translate(self.p * ALPHA, v)
        return v

    def serialize(self) -> dict:
        return {"p": self.p, "eps": self.eps, "pp": self.pp, "epsp": self.epsp}


IDENTITY = WeylElement()
S_ALPHA = WeylElement(eps=1)
S_GAMMA = WeylElement(epsp=1)
T_ALPHA = WeylElement(p=1)
T_GAMMA = WeylElement(pp=1)


def weyl_apply(w: WeylElement, lam: Weight) -> Weight:
    return w.apply(lam)


def weyl_sgn(w: WeylElement) -> int:
    return w.sgn()


def compose(w1: WeylElement, w2: WeylElement) -> WeylElement:
    # s t_p s = t_{-p} within each infinite dihedral factor
    p = w1.p + (-w2.p if w1.eps else w2.p)
    pp = w1.pp + (-w2.pp if w1.epsp else w2.pp)
    return WeylElement(p, (w1.eps + w2.eps) % 2, pp, (w1.epsp + w2.epsp) % 2)


@dataclass(frozen=True)
class OrbitTerm:
    """sign * e^top * prod(1 - e^{-nu}) / prod(1 + e^{-mu})."""

    sign: int
    top: Weight
    nums: tuple[Weight, ...] = ()
    dens: tuple[Weight, ...] = ()


STANDARD_SEED = OrbitTerm(1, RHO, (), (BETA1, BETA2))
R_RHO_SEED = OrbitTerm(1, RHO, (ALPHA, GAMMA),
                       (BETA1, BETA2, ALPHA + BETA1, ALPHA + BETA2))


def apply_weyl_term(w: WeylElement, t: OrbitTerm) -> OrbitTerm:
    return OrbitTerm(t.sign * w.sgn(), w.apply(t.top),
                     tuple(w.apply(v) for v in t.nums),
                     tuple(w.apply(v) for v in t.dens))


def weight_to_exp(lam: Weight, affine: bool = True):
    """Raw exponents of the monomial e^lam.

    lam must lie in Z<delta, alpha, beta1, beta2> (delta coefficient 0 in
    the finite case); e.g. e^{-delta} is q, so e^lam = q^{-n} x^{-a} ...
    """
    c = lam.coords
    b1 = c[2]
    b2 = -c[3]
    a = c[0] + b1
    n = c[4]
    if c[1] != -a + b2 or c[5] != 0:
        raise RootError(f"{lam} outside the root lattice")
    vals = (n, a, b1, b2)
    if any(v.denominator != 1 for v in vals):
        raise RootError(f"{lam} has non-integer root coordinates; "
                        "requires rho-normalization")
    if not affine:
        if n != 0:
            raise RootError(f"{lam} has a delta component in the finite case")
        return (-int(a), -int(b1), -int(b2))
    return (-int(n), -int(a), -int(b1), -int(b2))


def exp_to_weight(exps, affine: bool = True) -> Weight:
    if affine:
        n, a, b1, b2 = exps
    else:
        a, b1, b2 = exps
        n = 0
    return -(n * DELTA + a * ALPHA + b1 * BETA1 + b2 * BETA2)


def expand_orbit_term(term: OrbitTerm, lattice: LatticeSpec, cutoff: int,
                      affine: bool = True) -> GradedSeries:
    """Expansion of e^{-rho} * term as a cone-supported series."""
    base = weight_to_exp(term.top - RHO, affine)
    nums = [weight_to_exp(-v, affine) for v in term.nums]
    dens = [weight_to_exp(-v, affine) for v in term.dens]
    return expand_term(lattice, cutoff, term.sign, base, nums, dens)


_FINITE_GROUPS = {
    "W_alpha": (IDENTITY, S_ALPHA),
    "W_gamma": (IDENTITY, S_GAMMA),
}


def _ring(group: str, n: int):
    """Group elements whose translation power is +-n."""
    if group in _FINITE_GROUPS:
        return _FINITE_GROUPS[group] if n == 0 else ()
    if group == "T_alpha":
        return (IDENTITY,) if n == 0 else (WeylElement(p=n), WeylElement(p=-n))
    if group == "T_gamma":
        return (IDENTITY,) if n == 0 else (WeylElement(pp=n), WeylElement(pp=-n))
    if group == "What_alpha":
        if n == 0:
            return (IDENTITY, S_ALPHA)
        return (WeylElement(p=n), WeylElement(p=n, eps=1),
                WeylElement(p=-n), WeylElement(p=-n, eps=1))
    if group == "What_gamma":
        if n == 0:
            return (IDENTITY, S_GAMMA)
        return (WeylElement(pp=n), WeylElement(pp=n, epsp=1),
                WeylElement(pp=-n), WeylElement(pp=-n, epsp=1))
    raise ValueError(f"unknown group {group!r}")


def orbit_sum(group: str, seed: OrbitTerm, lattice: LatticeSpec, cutoff: int,
              affine: bool = True) -> GradedSeries:
    """Signed sum of seed over the group, rho-normalized and truncated.

    Group elements are visited ring by ring in the translation power; the
    sum stops once a full ring contributes nothing below the cutoff, which
    a safety bound turns into an error for non-terminating inputs.
    """
    parts = []
    n = 0
    while True:
        ring = _ring(group, n)
        if not ring:
            break
        contributed = False
        for w in ring:
            s = expand_orbit_term(apply_weyl_term(w, seed), lattice, cutoff, affine)
            if not s.is_zero():
                parts.append((1, s))
                contributed = True
        if n > 0 and not contributed:
            break
        if n > cutoff + 8:
            raise SeriesError(f"orbit sum over {group} did not terminate")
        n += 1
    if not parts:
        return GradedSeries.zero(lattice, cutoff)
    return linear_combine(parts)
