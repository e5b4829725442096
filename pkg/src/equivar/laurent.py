"""Exact multivariate Laurent polynomials and factored rational characters.

A RationalCharacter is a finite sum of terms, each a Laurent numerator over a
factored denominator prod (1 - c t^w).  Every denominator factor carries an
expansion direction:

    expandPositive   1/(1 - c t^w)  ->  sum_{n>=0} c^n t^{n w}
    expandNegative   1/(1 - c t^w)  ->  -sum_{n>=1} c^{-n} t^{-n w}

A factor with no direction must divide the numerator exactly.  Expansion of a
term is defined when its directed step vectors admit a common positive linear
functional; the functional also bounds how far each geometric series must be
taken for the requested window to be exact.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import MissingExpansionDirection, NonIntegerCoefficients, OutOfRange

EXPAND_POSITIVE = 1
EXPAND_NEGATIVE = -1


class LaurentPoly:
    """dict exponent-tuple -> Fraction, exponents in Z^nvars."""

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars, coeffs=None):
        self.nvars = nvars
        self.coeffs = {}
        if coeffs:
            for k, v in coeffs.items():
                v = Fraction(v)
                if v != 0:
                    self.coeffs[tuple(k)] = v

    @classmethod
    def monomial(cls, expo, c=1):
        return cls(len(expo), {tuple(expo): Fraction(c)})

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def one(cls, nvars):
        return cls(nvars, {(0,) * nvars: 1})

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return LaurentPoly(self.nvars, out)

    def __neg__(self):
        return LaurentPoly(self.nvars, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, Fraction(0)) + v1 * v2
        return LaurentPoly(self.nvars, out)

    def scaled(self, c):
        c = Fraction(c)
        return LaurentPoly(self.nvars, {k: v * c for k, v in self.coeffs.items()})

    def shifted(self, expo):
        return LaurentPoly(self.nvars,
                           {tuple(a + b for a, b in zip(k, expo)): v
                            for k, v in self.coeffs.items()})

    def div_exact_factor(self, w, c):
        """self / (1 - c t^w) if the division is exact, else None.

        Solved line by line along the w direction via q_v = f_v + c q_{v-w};
        exactness means the recurrence closes off at the top of each line.
        """
        c = Fraction(c)
        if all(x == 0 for x in w):
            if c == 1:
                return None
            return self.scaled(1 / (1 - c))
        i0 = next(i for i, x in enumerate(w) if x != 0)
        lines = {}
        for v, f in self.coeffs.items():
            k = v[i0] // w[i0]
            rep = tuple(a - k * b for a, b in zip(v, w))
            lines.setdefault(rep, {})[k] = f
        out = {}
        for rep, fline in lines.items():
            lo, hi = min(fline), max(fline)
            q_prev = Fraction(0)
            for k in range(lo, hi + 1):
                q = fline.get(k, Fraction(0)) + c * q_prev
                if k < hi:
                    if q != 0:
                        out[tuple(a + k * b for a, b in zip(rep, w))] = q
                    q_prev = q
                else:
                    if q != 0:
                        return None
        return LaurentPoly(self.nvars, out)


@dataclass(frozen=True)
class DenomFactor:
    """One denominator factor (1 - c t^w) with its expansion direction."""

    weight: tuple
    c: Fraction = Fraction(1)
    direction: int | None = None

    def directed(self, direction):
        return DenomFactor(self.weight, self.c, direction)

    def step(self):
        """Support step vector of the chosen geometric series."""
        if self.direction == EXPAND_POSITIVE:
            return self.weight
        if self.direction == EXPAND_NEGATIVE:
            return tuple(-x for x in self.weight)
        return None


@dataclass(frozen=True)
class RCTerm:
    num: LaurentPoly
    den: tuple = ()


class RationalCharacter:
    """Finite sum of numerator-over-factored-denominator terms."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=()):
        self.nvars = nvars
        self.terms = tuple(t for t in terms if t.num)

    @classmethod
    def zero(cls, nvars):
        return cls(nvars)

    @classmethod
    def from_poly(cls, p):
        return cls(p.nvars, (RCTerm(p),))

    @classmethod
    def one(cls, nvars):
        return cls.from_poly(LaurentPoly.one(nvars))

    @classmethod
    def reciprocal(cls, nvars, factors):
        return cls(nvars, (RCTerm(LaurentPoly.one(nvars), tuple(factors)),))

    def __add__(self, other):
        return RationalCharacter(self.nvars, self.terms + other.terms)

    def __mul__(self, other):
        out = []
        for t1 in self.terms:
            for t2 in other.terms:
                out.append(RCTerm(t1.num * t2.num, t1.den + t2.den))
        return RationalCharacter(self.nvars, tuple(out))

    def scaled(self, c):
        return RationalCharacter(self.nvars,
                                 tuple(RCTerm(t.num.scaled(c), t.den) for t in self.terms))

    def shifted(self, expo):
        return RationalCharacter(self.nvars,
                                 tuple(RCTerm(t.num.shifted(expo), t.den) for t in self.terms))


def _positivity_functional(steps, nvars, bound=4):
    """Small integer phi with phi . s >= 1 for every step, or None."""
    if not steps:
        return (0,) * nvars
    def search(prefix):
        if len(prefix) == nvars:
            if all(sum(p * s for p, s in zip(prefix, st)) >= 1 for st in steps):
                return tuple(prefix)
            return None
        for v in range(-bound, bound + 1):
            got = search(prefix + [v])
            if got is not None:
                return got
        return None
    return search([])


def _expand_term(term, radius, nvars):
    num = term.num
    for f in term.den:
        if f.direction is None:
            q = num.div_exact_factor(f.weight, f.c)
            if q is None:
                raise MissingExpansionDirection(
                    f"factor (1 - {f.c} t^{f.weight}) has no direction and does not divide")
            num = q
    directed = [f for f in term.den if f.direction is not None]
    if not num:
        return {}
    if not directed:
        return dict(num.coeffs)
    steps = [f.step() for f in directed]
    phi = _positivity_functional(steps, nvars)
    if phi is None:
        raise MissingExpansionDirection(
            "declared expansion directions admit no common positivity functional")
    box_max = sum(abs(p) for p in phi) * radius
    num_min = min(sum(p * v for p, v in zip(phi, mono)) for mono in num.coeffs)
    budget = box_max - num_min
    acc = dict(num.coeffs)
    for f, s in zip(directed, steps):
        sigma = sum(p * x for p, x in zip(phi, s))
        nmax = max(0, budget // sigma)
        series = {}
        if f.direction == EXPAND_POSITIVE:
            cpow = Fraction(1)
            for n in range(nmax + 1):
                series[tuple(n * x for x in f.weight)] = cpow
                cpow *= f.c
        else:
            cinv = 1 / f.c
            cpow = cinv
            for n in range(1, nmax + 1):
                series[tuple(-n * x for x in f.weight)] = -cpow
                cpow *= cinv
        nxt = {}
        for v1, c1 in acc.items():
            for v2, c2 in series.items():
                v = tuple(a + b for a, b in zip(v1, v2))
                if sum(p * x for p, x in zip(phi, v)) > box_max:
                    continue
                nxt[v] = nxt.get(v, Fraction(0)) + c1 * c2
        acc = {v: c for v, c in nxt.items() if c != 0}
    return acc


def expand_box(rc, radius):
    """Exact coefficients of rc on the box max_i |v_i| <= radius, as Fractions."""
    total = {}
    for term in rc.terms:
        for v, c in _expand_term(term, radius, rc.nvars).items():
            total[v] = total.get(v, Fraction(0)) + c
    return {v: c for v, c in total.items()
            if c != 0 and all(abs(x) <= radius for x in v)}


class DistributionalCharacter:
    """Window-exact coefficient table, optionally backed by a closed form.

    multiplicity(w) answers from the window when |w|_inf <= window, from the
    closed form when one is declared, and raises OutOfRange otherwise.
    """

    __slots__ = ("nvars", "coeffs", "window", "closed_form", "family")

    def __init__(self, nvars, coeffs, window, closed_form=None, family=None):
        self.nvars = nvars
        self.coeffs = dict(coeffs)
        self.window = window
        self.closed_form = closed_form
        self.family = family

    def multiplicity(self, w):
        w = tuple(w)
        if len(w) != self.nvars:
            raise OutOfRange(f"weight length {len(w)} != {self.nvars}")
        if all(abs(x) <= self.window for x in w):
            return self.coeffs.get(w, 0)
        if self.closed_form is not None:
            return self.closed_form(w)
        raise OutOfRange(f"weight {w} outside the window (radius {self.window})")

    def support(self):
        return sorted(self.coeffs)


def expand_to_degree(rc, max_degree, closed_form=None, family=None):
    """DistributionalCharacter exact on the box of radius max_degree.

    Raises NonIntegerCoefficients if any window coefficient is not an
    integer; integer multiplicities are part of the character contract, and a
    fractional value signals a normalization error upstream.
    """
    box = expand_box(rc, max_degree)
    out = {}
    for v, c in box.items():
        if c.denominator != 1:
            raise NonIntegerCoefficients(f"coefficient {c} at weight {v}")
        out[v] = int(c)
    return DistributionalCharacter(rc.nvars, out, max_degree, closed_form, family)


def multiplicity(dist, w):
    return dist.multiplicity(w)


def lattice_comb(nvars, direction):
    """Sum over the full sublattice Z*direction, split as the two directed
    geometric halves of the same factor (n >= 0 and n <= -1)."""
    one = LaurentPoly.one(nvars)
    pos = RCTerm(one, (DenomFactor(tuple(direction), Fraction(1), EXPAND_POSITIVE),))
    neg = RCTerm(-one, (DenomFactor(tuple(direction), Fraction(1), EXPAND_NEGATIVE),))
    return RationalCharacter(nvars, (pos, neg))
