"""Delta-coefficient calculus: rewrites, substitution, display form, Fourier."""

import dataclasses
import math
import random
from fractions import Fraction

import pytest

from equivar.errors import (
    InvariantViolation,
    MissingFibre,
    NotDifferentiable,
    SplittingMissing,
)
from equivar.genco import (
    delta_linear_substitute,
    fourier_fibre_integrate,
    multi_indices,
    taylor_expand_delta,
    with_fibre_coordinates,
)
from equivar.jform import j_form
from equivar.modelfile import load_builtin
from equivar.randmodels import random_gl_plus, random_model
from equivar.superalg import (
    Element,
    Term,
    add,
    equivariant_differential,
    multiply,
    normal_form,
    product,
)


def test_multi_indices():
    assert set(multi_indices(1, 2)) == {(0,), (1,), (2,)}
    assert set(multi_indices(2, 1)) == {(0, 0), (1, 0), (0, 1)}
    assert list(multi_indices(0, 3)) == [()]


def test_rewrite_confluence_order_independent():
    # u-factors may be absorbed in any order; |I| <= 4, k up to 3.
    m3 = random_model(random.Random(0), max_rank=3, with_theta=False)
    cases = [
        (load_builtin("t2-on-t2"), "tau", ("u1", "u2")),
        (m3, "fr", ("u1", "u2", "u3")),
    ]
    rng = random.Random(23)
    for m, fid, us in cases:
        k = len(us)
        for _ in range(40):
            deriv = tuple(rng.randint(0, 4 // k + 1) for _ in range(k))
            powers = [rng.randint(0, 2) for _ in range(k)]
            factors = [m.gen(u, p) for u, p in zip(us, powers) if p]
            base = m.delta(fid, deriv=deriv)
            ordered = product(factors + [base], m)
            rng.shuffle(factors)
            shuffled = product([base] + factors, m)
            assert ordered == shuffled


def _compose(e, a_matrix, m):
    # apply the substitution to every delta factor of an element
    out = m.zero()
    for t in e.terms:
        sub = delta_linear_substitute(t.delta, a_matrix, m)
        carried = Element((Term(t.coeff, t.x_mono, None, t.odd_mono, t.even_mono),))
        out = add(out, multiply(carried, sub, m), m)
    return out


def test_substitute_composition_randomized():
    m3 = random_model(random.Random(0), max_rank=3, with_theta=False)
    cases = [
        (load_builtin("hopf"), "conn", 1),
        (load_builtin("t2-on-t2"), "tau", 2),
        (m3, "fr", 3),
    ]
    rng = random.Random(31)
    for m, fid, k in cases:
        for _ in range(25):
            a = random_gl_plus(rng, k)
            b = random_gl_plus(rng, k)
            ab = tuple(
                tuple(sum(a[i][l] * b[l][j] for l in range(k)) for j in range(k))
                for i in range(k)
            )
            deriv = tuple(rng.randint(0, 2) for _ in range(k))
            d = m.delta(fid, deriv=deriv).terms[0].delta
            assert _compose(delta_linear_substitute(d, a, m), b, m) == \
                delta_linear_substitute(d, ab, m)


def test_substitute_scaling_k1():
    # delta^(n)(c u) = c^-(n+1) delta^(n)(u) for c > 0
    m = load_builtin("hopf")
    for n, c in ((0, Fraction(2)), (1, Fraction(3)), (2, Fraction(1, 2))):
        d = m.delta("conn", deriv=(n,)).terms[0].delta
        got = delta_linear_substitute(d, ((c,),), m)
        assert got == m.delta("conn", deriv=(n,)).scaled(c ** -(n + 1))


def test_substitute_determinant_only_at_order_zero():
    m = load_builtin("t2-on-t2")
    d = m.delta("tau").terms[0].delta
    a = ((Fraction(2), Fraction(1)), (Fraction(1), Fraction(1)))  # det 1
    assert delta_linear_substitute(d, a, m) == m.delta("tau")


def _pair(e, phi, m):
    """Analytic pairing of a k=1 delta combination against a polynomial.

    phi is a coefficient list; <delta^(n), phi> = (-1)^n n! phi[n].
    """
    total = Fraction(0)
    for t in e.terms:
        assert t.delta is not None and not t.odd_mono and not t.even_mono
        (n,) = t.delta.deriv
        if n < len(phi):
            total += t.coeff * (-1) ** n * math.factorial(n) * phi[n]
    return total


def test_derivative_rule_matches_analytic_pairing():
    # x delta^(n) = -n delta^(n-1) must reproduce <delta^(n), x phi>.
    m = load_builtin("hopf")
    rng = random.Random(41)
    for n in range(5):
        for p in range(4):
            engine = normal_form(
                multiply(m.gen("u1", p) if p else m.one(),
                         m.delta("conn", deriv=(n,)), m), m)
            for _ in range(5):
                phi = [Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                       for _ in range(n + 1)]
                shifted = [Fraction(0)] * p + phi  # x^p phi
                direct = (-1) ** n * math.factorial(n) * (
                    shifted[n] if n < len(shifted) else Fraction(0))
                assert _pair(engine, phi, m) == direct


def test_taylor_display_k1():
    # u = dalpha + f: delta_0(u) -> sum_j delta^(j)(f) dalpha^j / j!
    m = load_builtin("hopf")  # dim 3 keeps j <= 1
    disp = taylor_expand_delta(m.delta("conn"), "conn", m)
    assert len(disp.terms) == 2
    by_deriv = {t.delta.deriv: t for t in disp.terms}
    assert all(t.delta.argument == "moment" for t in disp.terms)
    assert by_deriv[(0,)].even_mono == ()
    assert by_deriv[(1,)].even_mono == (("Psi", 1),)
    assert by_deriv[(1,)].coeff == 1

    deep = dataclasses.replace(m, manifold_dim=5)  # j <= 2 now
    disp5 = taylor_expand_delta(deep.delta("conn"), "conn", deep)
    by_deriv5 = {t.delta.deriv: t for t in disp5.terms}
    assert by_deriv5[(2,)].even_mono == (("Psi", 2),)
    assert by_deriv5[(2,)].coeff == Fraction(1, 2)


def test_display_form_is_not_differentiable():
    m = load_builtin("hopf")
    disp = taylor_expand_delta(m.delta("conn"), "conn", m)
    with pytest.raises(NotDifferentiable):
        equivariant_differential(disp, m)


def test_taylor_display_requires_splitting():
    m = random_model(random.Random(3), max_rank=2, with_theta=False, dim_cap=6)
    fid = sorted(m.frames)[0]
    with pytest.raises(SplittingMissing):
        taylor_expand_delta(m.delta(fid), fid, m)


def test_fourier_requires_fibre_coordinates():
    m = load_builtin("s1-on-s1")
    with pytest.raises(MissingFibre):
        fourier_fibre_integrate(m, "tau")


def test_fourier_rank_one():
    m = load_builtin("s1-on-s1")
    lam = with_fibre_coordinates(m, "tau")
    assert fourier_fibre_integrate(lam, "tau") == \
        multiply(m.gen("deta"), m.delta("tau"), m)


def test_fourier_rank_two_sign():
    # canonical storage of deta2 deta1 delta_0 carries the reversal sign
    m = load_builtin("t2-on-t2")
    lam = with_fibre_coordinates(m, "tau")
    got = fourier_fibre_integrate(lam, "tau")
    expected = product([m.gen("deta1"), m.gen("deta2")], m)
    expected = multiply(expected, m.delta("tau"), m).scaled(-1)
    assert got == expected


def test_fourier_rank_zero_is_unit():
    m = load_builtin("cp1-dolbeault")
    assert fourier_fibre_integrate(m, "triv") == m.one()


def test_fibre_names_must_be_fresh():
    m = load_builtin("s1-on-s1")
    lam = with_fibre_coordinates(m, "tau")
    with pytest.raises(InvariantViolation):
        with_fibre_coordinates(lam, "tau")


def test_fourier_equals_j_form_on_builtins():
    for name in ("s1-on-s1", "t2-on-t2", "s3-contact", "hopf", "cp1-dolbeault"):
        m = load_builtin(name)
        for fid in sorted(m.frames):
            lam = with_fibre_coordinates(m, fid) if m.frames[fid].rank else m
            assert fourier_fibre_integrate(lam, fid) == j_form(m, fid).value, name
