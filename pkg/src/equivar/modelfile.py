"""JSON model-file ingestion.

A model file is one JSON document:

    {"name": ..., "manifoldDim": int, "parameters": ["X1", ...],
     "generators": [{"name", "parity", "formDegree", "kind", "frame"?, "slot"?}],
     "dTable": {gen: element-expr},
     "iotaTable": {gen: [element-expr, one per parameter]},
     "frames": [{"frameId", "rank", "slots", "momentSamples"?, "split"?}],
     "fixedLoci": [...], "base": {...}, "pipelineCase": str?}

element-expr grammar: sum of '+'/'-' separated terms, each a '*'-separated
product of rational literals (p or p/q), parameter names, and generator
names with optional ^int powers.  No parentheses.

Closed-argument generators are matched to frame slots by their declared
(frame, slot) pair, so frames list only the slot forms.  "split" gives the
display decomposition of each closed argument (its exterior-derivative part)
and is required only by models that render Taylor expansions or declare a
principal-bundle structure.  Structural problems raise ParseError; semantic
problems raise InvariantViolation naming the failing invariant.
"""

import json
import re
from dataclasses import replace
from fractions import Fraction
from importlib import resources

from .charclass import CIRCLE, ISOLATED_POINT, FixedLocusDatum
from .errors import InvariantViolation, ParseError, UnknownExample
from .laurent import EXPAND_NEGATIVE, EXPAND_POSITIVE
from .superalg import (CLOSED_ARGUMENT, EVEN, FIBRE_COFORM, FIBRE_COORDINATE,
                       FRAME_FORM, ODD, PLAIN_FORM, FormalModel, FrameDecl,
                       Generator, add, product, validate_model)

_KIND_NAMES = {
    "plainForm": PLAIN_FORM,
    "frameForm": FRAME_FORM,
    "closedArgument": CLOSED_ARGUMENT,
    "fibreCoordinate": FIBRE_COORDINATE,
    "fibreCoform": FIBRE_COFORM,
}
_DIRECTION_NAMES = {"positive": EXPAND_POSITIVE, "negative": EXPAND_NEGATIVE}

_RAT = re.compile(r"\d+(?:/\d+)?")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def parse_rational(v, where=""):
    if isinstance(v, bool):
        raise ParseError(f"boolean is not a rational {where}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad rational literal {v!r} {where}") from None
    raise ParseError(f"bad rational {v!r} {where}")


def _tokenize(src):
    toks = []
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        mm = _RAT.match(src, i)
        if mm:
            toks.append(("rat", mm.group(), i))
            i = mm.end()
            continue
        mm = _NAME.match(src, i)
        if mm:
            toks.append(("name", mm.group(), i))
            i = mm.end()
            continue
        if ch in "+-*^":
            toks.append(("op", ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", column=i)
    return toks


def _name_element(name, exp, m, col):
    if name in m.parameters:
        return m.x(m.parameters.index(name), exp)
    if name in m.generators:
        return m.gen(name, exp)
    raise ParseError(f"unknown symbol {name!r}", column=col)


def _parse_term(toks, pos, m):
    factors = []
    while True:
        if pos >= len(toks):
            raise ParseError("unexpected end of expression", column=toks[-1][2])
        kind, val, col = toks[pos]
        if kind == "rat":
            factors.append(m.scalar(Fraction(val)))
            pos += 1
        elif kind == "name":
            exp = 1
            pos += 1
            if pos < len(toks) and toks[pos][:2] == ("op", "^"):
                pos += 1
                if pos >= len(toks) or toks[pos][0] != "rat" or "/" in toks[pos][1]:
                    raise ParseError("expected integer exponent after '^'", column=col)
                exp = int(toks[pos][1])
                pos += 1
            factors.append(_name_element(val, exp, m, col))
        else:
            raise ParseError(f"unexpected {val!r}", column=col)
        if pos < len(toks) and toks[pos][:2] == ("op", "*"):
            pos += 1
            continue
        break
    return product(factors, m), pos


def parse_element(src, m):
    """Element over m from the sum-of-products expression grammar."""
    toks = _tokenize(src)
    if not toks:
        raise ParseError("empty element expression", column=0)
    total = m.zero()
    pos = 0
    while pos < len(toks):
        sign = 1
        while pos < len(toks) and toks[pos][0] == "op" and toks[pos][1] in "+-":
            if toks[pos][1] == "-":
                sign = -sign
            pos += 1
        term, pos = _parse_term(toks, pos, m)
        total = add(total, term.scaled(sign), m)
        if pos < len(toks) and not (toks[pos][0] == "op" and toks[pos][1] in "+-"):
            raise ParseError(f"expected '+' or '-' before {toks[pos][1]!r}",
                             column=toks[pos][2])
    return total


def _require(doc, key, types, where):
    if key not in doc:
        raise ParseError(f"missing {key!r} in {where}")
    v = doc[key]
    if not isinstance(v, types):
        raise ParseError(f"bad type for {key!r} in {where}")
    return v


def _parse_generators(items):
    gens = {}
    for it in items:
        name = _require(it, "name", str, "generator")
        parity = _require(it, "parity", str, name)
        if parity not in (ODD, EVEN):
            raise ParseError(f"bad parity {parity!r} on {name!r}")
        degree = _require(it, "formDegree", int, name)
        kind_name = it.get("kind", "plainForm")
        kind = _KIND_NAMES.get(kind_name)
        if kind is None:
            raise ParseError(f"unknown kind {kind_name!r} on {name!r}")
        frame = it.get("frame")
        slot = it.get("slot")
        if kind != PLAIN_FORM and (frame is None or slot is None):
            raise ParseError(f"{kind_name} generator {name!r} needs frame and slot")
        gens[name] = Generator(name, parity, degree, kind, frame, slot)
    return gens


def _parse_weight(v, nvars, where):
    if not isinstance(v, list) or len(v) != nvars or not all(isinstance(x, int) for x in v):
        raise ParseError(f"bad weight {v!r} in {where}")
    return tuple(v)


def _parse_locus(it, nvars):
    lid = _require(it, "locusId", str, "fixed locus")
    ltype = _require(it, "locusType", str, lid)
    if ltype not in (ISOLATED_POINT, CIRCLE):
        raise ParseError(f"unknown locus type {ltype!r} in {lid}")
    tangent = tuple(_parse_weight(w, nvars, lid) for w in it.get("tangentWeights", []))
    normal = []
    for nw in it.get("normalWeights", []):
        w = _parse_weight(_require(nw, "weight", list, lid), nvars, lid)
        c = parse_rational(_require(nw, "eval", (int, str), lid), f"in {lid}")
        normal.append((w, c))
    dirs = []
    for d in it.get("expansionDirections", []):
        if d not in _DIRECTION_NAMES:
            raise ParseError(f"unknown expansion direction {d!r} in {lid}")
        dirs.append(_DIRECTION_NAMES[d])
    twist = it.get("twistWeight")
    twist = _parse_weight(twist, nvars, lid) if twist is not None else (0,) * nvars
    circle = it.get("circleWeight")
    circle = _parse_weight(circle, nvars, lid) if circle is not None else None
    sign = it.get("orientationSign", 1)
    if sign not in (1, -1):
        raise ParseError(f"orientationSign must be +1 or -1 in {lid}")
    return FixedLocusDatum(lid, ltype, tangent, tuple(normal), twist, circle,
                           tuple(dirs), sign)


def model_from_dict(doc):
    name = _require(doc, "name", str, "model")
    dim = _require(doc, "manifoldDim", int, name)
    params = tuple(_require(doc, "parameters", list, name))
    if not all(isinstance(p, str) for p in params):
        raise ParseError(f"parameters must be names in {name}")
    gens = _parse_generators(_require(doc, "generators", list, name))
    if set(params) & set(gens):
        raise InvariantViolation("a parameter name collides with a generator name")

    frames = {}
    splits = {}
    for fd in doc.get("frames", []):
        fid = _require(fd, "frameId", str, "frame")
        rank = _require(fd, "rank", int, fid)
        slots = tuple(_require(fd, "slots", list, fid))
        u_by_slot = {g.slot: g.name for g in gens.values()
                     if g.kind == CLOSED_ARGUMENT and g.frame_id == fid}
        try:
            u_slots = tuple(u_by_slot[j] for j in range(1, rank + 1))
        except KeyError as e:
            raise InvariantViolation(
                f"frame {fid!r} has no closed argument for slot {e.args[0]}") from None
        samples = fd.get("momentSamples")
        if samples is not None:
            samples = tuple(
                tuple(tuple(parse_rational(x, f"in frame {fid!r}") for x in row)
                      for row in s)
                for s in samples)
        frames[fid] = FrameDecl(fid, rank, slots, u_slots, samples, None)
        if "split" in fd:
            splits[fid] = fd["split"]

    m = FormalModel(name, dim, params, gens, {}, {}, frames,
                    base=None, pipeline_case=doc.get("pipelineCase"))

    d_table = {}
    for gname, expr in doc.get("dTable", {}).items():
        if gname not in gens:
            raise ParseError(f"dTable entry for unknown generator {gname!r}")
        d_table[gname] = parse_element(expr, m)
    iota_table = {}
    for gname, exprs in doc.get("iotaTable", {}).items():
        if gname not in gens:
            raise ParseError(f"iotaTable entry for unknown generator {gname!r}")
        if not isinstance(exprs, list) or len(exprs) != len(params):
            raise ParseError(f"iotaTable for {gname!r} needs one entry per parameter")
        for a, expr in enumerate(exprs):
            el = parse_element(expr, m)
            if not el.is_zero():
                iota_table[(gname, a)] = el
    m.d_table = d_table
    m.iota_table = iota_table

    for fid, exprs in splits.items():
        if not isinstance(exprs, list) or len(exprs) != frames[fid].rank:
            raise ParseError(f"split for frame {fid!r} needs one entry per slot")
        dalpha = tuple(parse_element(e, m) for e in exprs)
        m.frames[fid] = replace(m.frames[fid], dalpha=dalpha)

    if "base" in doc:
        b = doc["base"]
        m.base = {
            "tangentWeight": parse_rational(_require(b, "tangentWeight", (int, str), "base")),
            "curvatureVolume": parse_rational(_require(b, "curvatureVolume", (int, str), "base")),
            "dimension": _require(b, "dimension", int, "base"),
        }

    nloc = len(params)
    m.fixed_loci = tuple(_parse_locus(it, nloc) for it in doc.get("fixedLoci", []))

    validate_model(m)
    return m


def loads_model(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno, column=e.colno) from None
    if not isinstance(doc, dict):
        raise ParseError("model file must hold one JSON object")
    return model_from_dict(doc)


def load_model(path):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return loads_model(text)


def builtin_names():
    root = resources.files("equivar").joinpath("models")
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_builtin(name):
    root = resources.files("equivar").joinpath("models")
    path = root.joinpath(name + ".json")
    if not path.is_file():
        raise UnknownExample(f"no built-in model {name!r}; have {builtin_names()}")
    return loads_model(path.read_text(encoding="utf-8"))
