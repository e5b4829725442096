"""Graded-commutative calculus with delta-distribution coefficients.

Elements are finite sums of terms over exact rationals.  A term is a
rational coefficient times a monomial in the equivariant parameters
X_1..X_r, an optional delta-derivative factor, a square-free product of
odd generators, and a monomial in even generators.  The equivariant
differential D = d - iota(X) acts through per-generator tables, except
that a frame form's D-image is its primitive closed argument u_j by
construction; the u_j are D-closed symbols of even parity.

Degree bookkeeping truncates any term whose total form degree exceeds
the declared manifold dimension.  Closed arguments count 0 toward that
degree: they stand for dalpha_j + f_j(X) and the moment part has degree
zero, so truncating on their nominal degree would be wrong.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DeltaClash, InvariantViolation, NotDifferentiable

ODD = "odd"
EVEN = "even"

PLAIN_FORM = "plainForm"
FRAME_FORM = "frameForm"
CLOSED_ARGUMENT = "closedArgument"
FIBRE_COORDINATE = "fibreCoordinate"
FIBRE_COFORM = "fibreCoform"

_KINDS = (PLAIN_FORM, FRAME_FORM, CLOSED_ARGUMENT, FIBRE_COORDINATE, FIBRE_COFORM)

# Delta argument tags.  "closed" is the computational form delta(u); "moment"
# marks the display expansion delta(f), which no operation differentiates.
ARG_CLOSED = "closed"
ARG_MOMENT = "moment"


@dataclass(frozen=True)
class Generator:
    name: str
    parity: str
    form_degree: int
    kind: str = PLAIN_FORM
    frame_id: str | None = None
    slot: int | None = None

    def truncation_degree(self):
        return 0 if self.kind == CLOSED_ARGUMENT else self.form_degree


@dataclass(frozen=True)
class DeltaFactor:
    """delta_0^(deriv) applied to the closed arguments of one frame."""

    frame_id: str
    deriv: tuple[int, ...]
    argument: str = ARG_CLOSED

    def order(self):
        return sum(self.deriv)

    def key(self):
        return (self.frame_id, self.deriv, self.argument)


@dataclass(frozen=True)
class Term:
    coeff: Fraction
    x_mono: tuple[int, ...]
    delta: DeltaFactor | None
    odd_mono: tuple[str, ...]
    even_mono: tuple[tuple[str, int], ...]

    def key(self):
        dk = self.delta.key() if self.delta is not None else ("", (), "")
        return (self.x_mono, dk, self.odd_mono, self.even_mono)


@dataclass(frozen=True)
class Element:
    """Normal-form sum of terms; construct through FormalModel helpers."""

    terms: tuple[Term, ...] = ()

    def is_zero(self):
        return not self.terms

    def __neg__(self):
        return Element(tuple(
            Term(-t.coeff, t.x_mono, t.delta, t.odd_mono, t.even_mono) for t in self.terms))

    def scaled(self, c):
        c = Fraction(c)
        if c == 0:
            return Element()
        return Element(tuple(
            Term(t.coeff * c, t.x_mono, t.delta, t.odd_mono, t.even_mono) for t in self.terms))


@dataclass(frozen=True)
class FrameDecl:
    """A co-orientation frame: slot forms alpha_1..alpha_k and their closed
    arguments u_1..u_k, plus optional moment samples and display split."""

    frame_id: str
    rank: int
    alpha_slots: tuple[str, ...]
    u_slots: tuple[str, ...]
    moment_samples: tuple | None = None      # tuple of k x r Fraction matrices
    dalpha: tuple | None = None              # tuple of Elements (display split)


@dataclass
class FormalModel:
    name: str
    manifold_dim: int
    parameters: tuple[str, ...]
    generators: dict
    d_table: dict
    iota_table: dict
    frames: dict = field(default_factory=dict)
    base: dict | None = None
    pipeline_case: str | None = None
    fixed_loci: tuple = ()

    def __post_init__(self):
        self.r = len(self.parameters)
        odd_names = [g.name for g in self.generators.values() if g.parity == ODD]
        odd_names.sort(key=lambda n: self._order_key(self.generators[n]))
        self.odd_order = {n: i for i, n in enumerate(odd_names)}
        self._u_frame = {}
        for fr in self.frames.values():
            for j, un in enumerate(fr.u_slots):
                self._u_frame[un] = (fr.frame_id, j)
        self._d_images = {}

    @staticmethod
    def _order_key(g):
        return (g.frame_id or "", g.slot if g.slot is not None else 0, g.name)

    # -- element constructors ------------------------------------------------

    def zero(self):
        return Element()

    def scalar(self, c):
        c = Fraction(c)
        if c == 0:
            return Element()
        return Element((Term(c, (0,) * self.r, None, (), ()),))

    def one(self):
        return self.scalar(1)

    def x(self, a, exp=1):
        mono = tuple(exp if i == a else 0 for i in range(self.r))
        return Element((Term(Fraction(1), mono, None, (), ()),))

    def gen(self, name, exp=1):
        g = self.generators[name]
        if g.parity == ODD:
            if exp > 1:
                return Element()
            return Element((Term(Fraction(1), (0,) * self.r, None, (name,), ()),))
        return Element((Term(Fraction(1), (0,) * self.r, None, (), ((name, exp),)),))

    def delta(self, frame_id, deriv=None, argument=ARG_CLOSED):
        fr = self.frames[frame_id]
        if deriv is None:
            deriv = (0,) * fr.rank
        d = DeltaFactor(frame_id, tuple(deriv), argument)
        return Element((Term(Fraction(1), (0,) * self.r, d, (), ()),))

    # -- structure helpers ---------------------------------------------------

    def parity_of_term(self, t):
        return len(t.odd_mono) % 2

    def term_degree(self, t):
        deg = sum(self.generators[n].form_degree for n in t.odd_mono)
        deg += sum(e * self.generators[n].truncation_degree() for n, e in t.even_mono)
        return deg

    def u_frame_slot(self, name):
        """(frame_id, zero-based slot) if name is a closed argument, else None."""
        return self._u_frame.get(name)

    def d_image(self, name):
        """D applied to a single generator, as an Element."""
        cached = self._d_images.get(name)
        if cached is not None:
            return cached
        g = self.generators[name]
        if g.kind == FRAME_FORM:
            fr = self.frames[g.frame_id]
            el = self.gen(fr.u_slots[g.slot - 1])
        elif g.kind == CLOSED_ARGUMENT:
            el = Element()
        else:
            el = self.d_table.get(name, Element())
            for a in range(self.r):
                it = self.iota_table.get((name, a))
                if it is not None and not it.is_zero():
                    el = add(el, multiply(self.x(a), it, self).scaled(-1), self)
        self._d_images[name] = el
        return el


# ---------------------------------------------------------------------------
# term assembly

def _finalize(acc, m):
    """Absorb closed arguments into deltas, truncate by degree, drop zeros."""
    out = {}
    for key, coeff in acc.items():
        if coeff == 0:
            continue
        x_mono, dk, odd_mono, even_mono = key
        delta = None if dk[0] == "" and not dk[1] else DeltaFactor(*dk)
        even = dict(even_mono)
        if delta is not None and delta.argument == ARG_CLOSED:
            coeff, delta, even = _absorb(coeff, delta, even, m)
            if coeff == 0:
                continue
        even_mono = tuple(sorted((n, e) for n, e in even.items() if e != 0))
        t = Term(coeff, x_mono, delta, odd_mono, even_mono)
        if m.term_degree(t) > m.manifold_dim:
            continue
        k2 = t.key()
        out[k2] = out.get(k2, Fraction(0)) + coeff
    terms = tuple(
        Term(c, k[0], None if k[1][0] == "" and not k[1][1] else DeltaFactor(*k[1]), k[2], k[3])
        for k, c in sorted(out.items()) if c != 0)
    return Element(terms)


def _absorb(coeff, delta, even, m):
    """Apply u_j * delta^(I) = -I_j * delta^(I - e_j) until no same-frame u remains."""
    deriv = list(delta.deriv)
    changed = True
    while changed:
        changed = False
        for name in list(even):
            fs = m.u_frame_slot(name)
            if fs is None or fs[0] != delta.frame_id or even[name] == 0:
                continue
            j = fs[1]
            if deriv[j] == 0:
                return Fraction(0), delta, even
            coeff *= -deriv[j]
            deriv[j] -= 1
            even[name] -= 1
            changed = True
    return coeff, DeltaFactor(delta.frame_id, tuple(deriv), delta.argument), even


def _merge_sign(odd1, odd2, order):
    inv = 0
    for g2 in odd2:
        o2 = order[g2]
        inv += sum(1 for g1 in odd1 if order[g1] > o2)
    return -1 if inv % 2 else 1


def normal_form(a, m):
    """Canonical representative: merged terms, eager delta rewrites, truncation."""
    acc = {}
    for t in a.terms:
        acc[t.key()] = acc.get(t.key(), Fraction(0)) + t.coeff
    return _finalize(acc, m)


def add(a, b, m):
    acc = {}
    for t in list(a.terms) + list(b.terms):
        acc[t.key()] = acc.get(t.key(), Fraction(0)) + t.coeff
    return _finalize(acc, m)


def multiply(a, b, m):
    """Koszul-signed product.  Raises DeltaClash on any delta * delta: the
    source calculus never multiplies two generalized-coefficient forms, so no
    product rule exists (same frame included)."""
    acc = {}
    order = m.odd_order
    for t1 in a.terms:
        for t2 in b.terms:
            if t1.delta is not None and t2.delta is not None:
                if t1.delta.frame_id == t2.delta.frame_id:
                    raise DeltaClash(
                        f"product of two delta factors on frame {t1.delta.frame_id!r}")
                raise DeltaClash(
                    f"product of delta factors on distinct frames "
                    f"{t1.delta.frame_id!r} and {t2.delta.frame_id!r}")
            if set(t1.odd_mono) & set(t2.odd_mono):
                continue
            sign = _merge_sign(t1.odd_mono, t2.odd_mono, order)
            odd = tuple(sorted(t1.odd_mono + t2.odd_mono, key=order.__getitem__))
            even = dict(t1.even_mono)
            for n, e in t2.even_mono:
                even[n] = even.get(n, 0) + e
            x_mono = tuple(i + j for i, j in zip(t1.x_mono, t2.x_mono))
            delta = t1.delta if t1.delta is not None else t2.delta
            dk = delta.key() if delta is not None else ("", (), "")
            key = (x_mono, dk, odd, tuple(sorted(even.items())))
            acc[key] = acc.get(key, Fraction(0)) + t1.coeff * t2.coeff * sign
    return _finalize(acc, m)


def product(factors, m):
    out = m.one()
    for f in factors:
        out = multiply(out, f, m)
    return out


def _derivation_on_term(t, image, m):
    """Odd derivation applied to one term; the delta factor and X-monomial are
    constants (the delta's argument is D-closed)."""
    if t.delta is not None and t.delta.argument == ARG_MOMENT:
        raise NotDifferentiable("display-form element (moment-argument delta)")
    factors = [(n, 1, ODD) for n in t.odd_mono]
    factors += [(n, e, EVEN) for n, e in t.even_mono]
    head = Element((Term(t.coeff, t.x_mono, t.delta, (), ()),))
    out = Element()
    sign = 1
    for i, (name, exp, parity) in enumerate(factors):
        img = image(name)
        if img.is_zero():
            if parity == ODD:
                sign = -sign
            continue
        if parity == ODD:
            dfi = img
        else:
            dfi = multiply(m.gen(name, exp - 1) if exp > 1 else m.one(), img, m).scaled(exp)
        pre = [m.gen(n, e) for n, e, _ in factors[:i]]
        post = [m.gen(n, e) for n, e, _ in factors[i + 1:]]
        piece = product([head] + pre + [dfi] + post, m).scaled(sign)
        out = add(out, piece, m)
        if parity == ODD:
            sign = -sign
    return out


def equivariant_differential(a, m):
    """D = d - iota(X).  Frame forms map to their closed arguments, closed
    arguments and delta factors to zero; everything else follows the tables."""
    out = Element()
    for t in a.terms:
        out = add(out, _derivation_on_term(t, m.d_image, m), m)
    return out


def apply_table_derivation(a, image, m):
    """Odd derivation from an arbitrary generator->Element image map.  Used by
    the model validator for the bare d and iota(e_a) checks."""
    out = Element()
    for t in a.terms:
        out = add(out, _derivation_on_term(t, image, m), m)
    return out


# ---------------------------------------------------------------------------
# model validation

def validate_model(m):
    names = set()
    for g in m.generators.values():
        if g.name in names:
            raise InvariantViolation(f"duplicate generator {g.name!r}")
        names.add(g.name)
        if g.parity not in (ODD, EVEN):
            raise InvariantViolation(f"bad parity on {g.name!r}")
        if g.kind not in _KINDS:
            raise InvariantViolation(f"bad kind on {g.name!r}")
        if g.form_degree < 0:
            raise InvariantViolation(f"negative degree on {g.name!r}")
        nominal = g.form_degree % 2
        if g.kind == CLOSED_ARGUMENT:
            nominal = 0
        if (g.parity == ODD) != (nominal == 1):
            raise InvariantViolation(f"parity/degree mismatch on {g.name!r}")
    if len(set(m.parameters)) != m.r:
        raise InvariantViolation("duplicate parameter names")

    for fr in m.frames.values():
        if len(fr.alpha_slots) != fr.rank or len(fr.u_slots) != fr.rank:
            raise InvariantViolation(f"frame {fr.frame_id!r} slot count != rank")
        for j, (an, un) in enumerate(zip(fr.alpha_slots, fr.u_slots), start=1):
            ga, gu = m.generators.get(an), m.generators.get(un)
            if ga is None or ga.kind != FRAME_FORM or ga.frame_id != fr.frame_id \
                    or ga.slot != j or ga.form_degree != 1:
                raise InvariantViolation(f"bad frame form {an!r} in {fr.frame_id!r}")
            if gu is None or gu.kind != CLOSED_ARGUMENT or gu.frame_id != fr.frame_id \
                    or gu.slot != j:
                raise InvariantViolation(f"bad closed argument {un!r} in {fr.frame_id!r}")
        if fr.moment_samples is not None:
            for s in fr.moment_samples:
                if len(s) != fr.rank or any(len(row) != m.r for row in s):
                    raise InvariantViolation(
                        f"moment sample shape in frame {fr.frame_id!r} is not k x r")
        if fr.dalpha is not None and len(fr.dalpha) != fr.rank:
            raise InvariantViolation(f"split length != rank in frame {fr.frame_id!r}")

    frame_forms = {g.name for g in m.generators.values() if g.kind == FRAME_FORM}
    closed_args = {g.name for g in m.generators.values() if g.kind == CLOSED_ARGUMENT}

    def check_table_element(el, where):
        for t in el.terms:
            if t.delta is not None:
                raise InvariantViolation(f"delta factor inside table image {where}")
            used = set(t.odd_mono) | {n for n, _ in t.even_mono}
            if used & frame_forms:
                raise InvariantViolation(
                    f"frame form inside table image {where}: d is not defined there")

    for name, el in m.d_table.items():
        if name in frame_forms:
            raise InvariantViolation(f"d-table entry for frame form {name!r}; D(alpha)=u is implied")
        if name in closed_args and not el.is_zero():
            raise InvariantViolation(f"closed argument {name!r} must have zero d-image")
        check_table_element(el, f"d({name})")
    for (name, a), el in m.iota_table.items():
        if name in frame_forms:
            raise InvariantViolation(f"iota-table entry for frame form {name!r}")
        if name in closed_args and not el.is_zero():
            raise InvariantViolation(f"closed argument {name!r} must have zero iota-image")
        check_table_element(el, f"iota_{a}({name})")

    def d_img(n):
        if n in closed_args:
            return Element()
        return m.d_table.get(n, Element())

    def iota_img(a):
        def img(n):
            if n in closed_args:
                return Element()
            return m.iota_table.get((n, a), Element())
        return img

    for name in m.generators:
        if name in frame_forms:
            continue
        dd = apply_table_derivation(d_img(name), d_img, m)
        if not dd.is_zero():
            raise InvariantViolation(f"d(d({name})) != 0")
        for a in range(m.r):
            ia = iota_img(a)
            for b in range(m.r):
                ib = iota_img(b)
                anti = add(apply_table_derivation(ia(name), ib, m),
                           apply_table_derivation(ib(name), ia, m), m)
                if not anti.is_zero():
                    raise InvariantViolation(f"iota_{a} iota_{b} fails to anticommute on {name!r}")
            cartan = add(apply_table_derivation(ia(name), d_img, m),
                         apply_table_derivation(d_img(name), ia, m), m)
            if not cartan.is_zero():
                raise InvariantViolation(
                    f"generator {name!r} is not invariant: (d iota_{a} + iota_{a} d) != 0")
    return True
