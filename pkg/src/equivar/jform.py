"""Assembly and verification of the canonical closed form of a frame.

For a co-oriented rank-k distribution presented by frame forms
alpha_1..alpha_k with closed arguments u_j, the canonical value is

    J = alpha_k ^ ... ^ alpha_1 * delta_0(u)

in descending slot order; reversing the order flips the sign by
(-1)^(k(k-1)/2).  The empty frame gives J = 1.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import NotPrincipal, NotTransverse, RankDataMissing
from .genco import delta_linear_substitute
from .superalg import (DeltaFactor, Element, Term, equivariant_differential, multiply,
                       normal_form, product)


@dataclass(frozen=True)
class JForm:
    frame_id: str
    value: Element


def check_transversality(m, frame_id):
    """(ok, witness): the moment matrix must have full rank k at every sample.

    The rank condition says X -> f_alpha(X) hits every co-direction of the
    frame, which is what makes delta_0(u) well defined as a generalized
    coefficient.  Rank is computed exactly over the rationals.
    """
    fr = m.frames[frame_id]
    if fr.rank == 0:
        return True, None
    if fr.moment_samples is None:
        raise RankDataMissing(f"frame {frame_id!r} declares no moment samples")
    for i, sample in enumerate(fr.moment_samples):
        r = linalg.rank(sample)
        if r != fr.rank:
            return False, {"sampleIndex": i, "rank": r, "required": fr.rank,
                           "matrix": [[str(x) for x in row] for row in sample]}
    return True, None


def j_form(m, frame_id):
    fr = m.frames[frame_id]
    ok, witness = check_transversality(m, frame_id)
    if not ok:
        raise NotTransverse(f"frame {frame_id!r} moment data not full rank: {witness}")
    if fr.rank == 0:
        return JForm(frame_id, m.one())
    alphas = [m.gen(name) for name in reversed(fr.alpha_slots)]
    value = multiply(product(alphas, m), m.delta(frame_id), m)
    return JForm(frame_id, value)


def check_closed(m, j):
    value = j.value if isinstance(j, JForm) else j
    return equivariant_differential(value, m).is_zero()


def transformed_j_form(m, frame_id, a_matrix, allow_reversal=False):
    """J of the frame beta = A alpha, re-expressed in the alpha basis.

    beta_j = sum_l A[j][l] alpha_l, u^beta = A u, and delta_0(A u) is
    rewritten through delta_linear_substitute.  For det(A) > 0 this equals
    j_form exactly; the test-only reversal mode exposes the sign flip.
    """
    fr = m.frames[frame_id]
    k = fr.rank
    a = linalg.mat(a_matrix)
    betas = []
    for row in reversed(range(k)):
        b = Element()
        for col in range(k):
            if a[row][col] != 0:
                b = normal_form(Element(
                    b.terms + m.gen(fr.alpha_slots[col]).scaled(a[row][col]).terms), m)
        betas.append(b)
    d0 = DeltaFactor(frame_id, (0,) * k)
    delta_part = delta_linear_substitute(d0, a, m, allow_reversal=allow_reversal)
    return multiply(product(betas, m), delta_part, m)


def frame_change_compare(m, frame_id, a_matrix):
    """True iff the frame change by A (constant, det > 0) preserves J exactly."""
    lhs = transformed_j_form(m, frame_id, a_matrix)
    return lhs == j_form(m, frame_id).value


def chern_weil_pair(m, frame_id, poly):
    """Pair the delta class of a principal-connection frame with an invariant
    polynomial: integrating delta_0(X - curvature) against p(X) over the
    parameter space evaluates p on the curvature, truncated by base degree.

    Requires the connection normalization: the split must be declared, k must
    equal the parameter count, and every moment sample must be minus the
    identity (f_j(X) = -X_j).  poly maps exponent tuples over the parameters
    to rational coefficients.
    """
    fr = m.frames[frame_id]
    if fr.dalpha is None:
        raise NotPrincipal(f"frame {frame_id!r} declares no curvature split")
    if fr.rank != m.r:
        raise NotPrincipal("frame rank differs from parameter count")
    if fr.moment_samples is None:
        raise RankDataMissing(f"frame {frame_id!r} declares no moment samples")
    minus_id = tuple(tuple(Fraction(-1 if i == j else 0) for j in range(m.r))
                     for i in range(fr.rank))
    for sample in fr.moment_samples:
        if linalg.mat(sample) != minus_id:
            raise NotPrincipal("moment data is not the connection pairing f(X) = -X")
    j_form(m, frame_id)  # transversality and shape guard
    out = Element()
    for expo, c in poly.items():
        piece = m.scalar(c)
        for slot, e in enumerate(expo):
            for _ in range(e):
                piece = multiply(piece, fr.dalpha[slot], m)
        out = normal_form(Element(out.terms + piece.terms), m)
    return out
