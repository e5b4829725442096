"""Element rendering (text and LaTeX) and the machine-readable report format.

Reports are self-describing: every envelope embeds the conventions block, so
a stored report pins down the normalization its numbers were computed under.
Serialization is deterministic (sorted keys, no floats) so identical inputs
produce byte-identical files.
"""

import json
from fractions import Fraction

from .genco import taylor_expand_delta
from .jform import j_form
from .superalg import ARG_MOMENT

CONVENTIONS = {
    "twoPiPolicy": "the (2 pi i)^-k prefactor and all Haar volumes are "
                   "normalized into the engine; multiplicities are unscaled",
    "fourierSign": "delta_0(x) = (2 pi)^-k Integral exp(-i<xi,x>) dxi",
    "orientationRule": "slot products run descending alpha_k..alpha_1; "
                       "reversing the order flips the sign by (-1)^(k(k-1)/2)",
}

TEXT = "text"
LATEX = "latex"


def _name(n, fmt):
    if fmt == LATEX:
        return n if len(n) == 1 else r"\mathrm{" + n + "}"
    return n


def _pow(n, e, fmt):
    if e == 1:
        return _name(n, fmt)
    if fmt == LATEX:
        return _name(n, fmt) + "^{" + str(e) + "}"
    return n + "^" + str(e)


def _delta(d, m, fmt):
    fr = m.frames[d.frame_id]
    if d.argument == ARG_MOMENT:
        args = "f_{\\mathrm{%s}}" % d.frame_id if fmt == LATEX else f"f[{d.frame_id}]"
    else:
        names = fr.u_slots
        args = ",".join(_name(n, fmt) for n in names)
    sup = ""
    if any(d.deriv):
        sup = "^{(%s)}" % ",".join(map(str, d.deriv)) if fmt == LATEX \
            else "^(%s)" % ",".join(map(str, d.deriv))
    head = r"\delta_0" if fmt == LATEX else "delta0"
    return f"{head}{sup}({args})"


def render_term(t, m, fmt=TEXT):
    """Body of one term without its sign; coefficient magnitude included."""
    odd = [_name(n, fmt) for n in t.odd_mono]
    factors = []
    for a, e in enumerate(t.x_mono):
        if e:
            factors.append(_pow(m.parameters[a], e, fmt))
    if odd:
        factors.append((r" \wedge " if fmt == LATEX else "*").join(odd))
    if t.delta is not None:
        factors.append(_delta(t.delta, m, fmt))
    for n, e in t.even_mono:
        factors.append(_pow(n, e, fmt))
    sep = r"\," if fmt == LATEX else "*"
    body = sep.join(factors)
    c = abs(t.coeff)
    if c != 1 or not body:
        cs = str(c)
        body = cs + (sep + body if body else "")
    return body


def render_element(e, m, fmt=TEXT):
    if e.is_zero():
        return "0"
    out = []
    for i, t in enumerate(e.terms):
        body = render_term(t, m, fmt)
        if i == 0:
            out.append(("-" if t.coeff < 0 else "") + body)
        else:
            out.append((" - " if t.coeff < 0 else " + ") + body)
    return "".join(out)


def render_frame_value(m, frame_id, fmt=TEXT, display=True):
    """The canonical form of the frame, in Taylor display form when the model
    declares a split, otherwise in closed-argument form."""
    jf = j_form(m, frame_id)
    value = jf.value
    if display and m.frames[frame_id].dalpha is not None:
        value = taylor_expand_delta(value, frame_id, m)
    return render_element(value, m, fmt)


# ---------------------------------------------------------------------------
# report envelope

def _jsonable(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    return str(x)


def make_report(command, model_name, results, characters=None, extra=None):
    rep = {
        "command": command,
        "model": model_name,
        "conventions": dict(CONVENTIONS),
        "results": results,
    }
    if characters is not None:
        rep["characters"] = characters
    if extra:
        for k, v in extra.items():
            rep.setdefault(k, v)
    return rep


def report_status(rep):
    if any(r["status"] == "fail" for r in rep["results"]):
        return "fail"
    return "pass"


def report_to_json(rep):
    return json.dumps(_jsonable(rep), sort_keys=True, indent=2) + "\n"


def report_from_json(text):
    return json.loads(text)
