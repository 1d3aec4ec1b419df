"""JSON schemas and DOT export for the workbench objects.

Kinds are detected structurally: a poset has "le", a frame has "poset",
a biframe "total", a space "opens", a congruence "classes", a paircover
"pairs", a quasi-uniformity "base" of paircovers, a uniformity "base" of
element lists.
"""

from __future__ import annotations

import json

from .biframes import Biframe, FiniteSpace, make_biframe, validate_space
from .congruence import FrameCongruence, frame_congruence
from .covers import CoverDownset, Uniformity
from .errors import UnknownFormat
from .morphisms import FrameHom, validate_hom
from .order import FiniteFrame, Poset, downset_frame, validate_poset
from .paircovers import Paircover, QuasiUniformity, make_paircover


def dumps(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


# ---- to JSON ----------------------------------------------------------------

def poset_to_json(p: Poset) -> dict:
    return {"n": p.n, "le": p.matrix()}


def frame_to_json(f: FiniteFrame) -> dict:
    return {"poset": poset_to_json(f.jposet)}


def hom_to_json(h: FrameHom) -> dict:
    return {"dom": frame_to_json(h.dom), "cod": frame_to_json(h.cod),
            "map": list(h.map)}


def congruence_to_json(t: FrameCongruence) -> dict:
    return {"frame": frame_to_json(t.frame),
            "classes": [list(c) for c in t.classes()]}


def biframe_to_json(bf: Biframe) -> dict:
    return {"total": frame_to_json(bf.total),
            "part1": list(bf.part1), "part2": list(bf.part2)}


def space_to_json(s: FiniteSpace) -> dict:
    return {"points": s.points,
            "opens": [[x for x in range(s.points) if (u >> x) & 1]
                      for u in s.opens]}


def paircover_to_json(u: Paircover, with_biframe: bool = True) -> dict:
    out = {"pairs": [list(g) for g in u.gens]}
    if with_biframe:
        out["biframe"] = biframe_to_json(u.biframe)
    return out


def qu_to_json(qu: QuasiUniformity) -> dict:
    return {"biframe": biframe_to_json(qu.biframe),
            "base": [paircover_to_json(u, with_biframe=False) for u in qu.base]}


def uniformity_to_json(u: Uniformity) -> dict:
    return {"frame": frame_to_json(u.frame),
            "base": [list(c.gens) for c in u.base]}


def to_json(obj) -> dict:
    if isinstance(obj, Poset):
        return poset_to_json(obj)
    if isinstance(obj, FiniteFrame):
        return frame_to_json(obj)
    if isinstance(obj, Biframe):
        return biframe_to_json(obj)
    if isinstance(obj, FiniteSpace):
        return space_to_json(obj)
    if isinstance(obj, FrameCongruence):
        return congruence_to_json(obj)
    if isinstance(obj, Paircover):
        return paircover_to_json(obj)
    if isinstance(obj, QuasiUniformity):
        return qu_to_json(obj)
    if isinstance(obj, Uniformity):
        return uniformity_to_json(obj)
    if isinstance(obj, FrameHom):
        return hom_to_json(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


# ---- from JSON ---------------------------------------------------------------

def poset_from_json(payload: dict) -> Poset:
    return validate_poset(payload["le"])


def frame_from_json(payload: dict) -> FiniteFrame:
    return downset_frame(poset_from_json(payload["poset"]))


def hom_from_json(payload: dict) -> FrameHom:
    return validate_hom(frame_from_json(payload["dom"]),
                        frame_from_json(payload["cod"]), payload["map"])


def congruence_from_json(payload: dict) -> FrameCongruence:
    frame = frame_from_json(payload["frame"])
    class_of = [0] * frame.n
    for cid, cls in enumerate(payload["classes"]):
        for x in cls:
            class_of[x] = cid
    return frame_congruence(frame, class_of)


def biframe_from_json(payload: dict) -> Biframe:
    return make_biframe(frame_from_json(payload["total"]),
                        payload["part1"], payload["part2"])


def space_from_json(payload: dict) -> FiniteSpace:
    opens = [sum(1 << x for x in u) for u in payload["opens"]]
    return validate_space(FiniteSpace(payload["points"], opens), require_t0=False)


def paircover_from_json(payload: dict, biframe: Biframe | None = None) -> Paircover:
    bf = biframe or biframe_from_json(payload["biframe"])
    return make_paircover(bf, [tuple(p) for p in payload["pairs"]])


def qu_from_json(payload: dict) -> QuasiUniformity:
    bf = biframe_from_json(payload["biframe"])
    return QuasiUniformity(bf, [paircover_from_json(u, bf) for u in payload["base"]])


def uniformity_from_json(payload: dict) -> Uniformity:
    frame = frame_from_json(payload["frame"])
    return Uniformity(frame, [CoverDownset(frame, gens) for gens in payload["base"]])


def detect_kind(payload: dict) -> str:
    if "le" in payload:
        return "poset"
    if "opens" in payload:
        return "space"
    if "classes" in payload:
        return "congruence"
    if "pairs" in payload:
        return "paircover"
    if "total" in payload:
        return "biframe"
    if "map" in payload:
        return "hom"
    if "base" in payload and "biframe" in payload:
        return "qu"
    if "base" in payload and "frame" in payload:
        return "uniformity"
    if "poset" in payload:
        return "frame"
    raise ValueError("unrecognised object payload")


def from_json(payload: dict):
    kind = detect_kind(payload)
    return {
        "poset": poset_from_json,
        "frame": frame_from_json,
        "biframe": biframe_from_json,
        "space": space_from_json,
        "congruence": congruence_from_json,
        "paircover": paircover_from_json,
        "qu": qu_from_json,
        "uniformity": uniformity_from_json,
        "hom": hom_from_json,
    }[kind](payload)


# ---- DOT export --------------------------------------------------------------

def _frame_dot(frame: FiniteFrame, colors: dict[int, str] | None = None) -> str:
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for a in range(frame.n):
        label = f"{a}"
        style = ""
        if colors and a in colors:
            style = f' style=filled fillcolor="{colors[a]}"'
        lines.append(f'  n{a} [label="{label}"{style}];')
    for b in range(frame.n):
        for a in frame.lower_covers(b):
            lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _poset_dot(p: Poset) -> str:
    lines = ["digraph hasse {", "  rankdir=BT;"]
    for a in range(p.n):
        lines.append(f'  n{a} [label="{a}"];')
    for (a, b) in p.covers():
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _biframe_dot(bf: Biframe) -> str:
    colors = {}
    p1, p2 = set(bf.part1), set(bf.part2)
    for a in range(bf.total.n):
        if a in p1 and a in p2:
            colors[a] = "plum"
        elif a in p1:
            colors[a] = "lightblue"
        elif a in p2:
            colors[a] = "lightsalmon"
    return _frame_dot(bf.total, colors)


def _paircover_dot(payload: dict) -> str:
    lines = ["graph paircover {", "  rankdir=LR;"]
    pairs = payload["pairs"]
    lefts = sorted({p[0] for p in pairs})
    rights = sorted({p[1] for p in pairs})
    for x in lefts:
        lines.append(f'  l{x} [label="1:{x}" shape=box];')
    for y in rights:
        lines.append(f'  r{y} [label="2:{y}" shape=ellipse];')
    for (x, y) in pairs:
        lines.append(f"  l{x} -- r{y};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_payload(payload: dict, fmt: str) -> str:
    """Render a JSON payload in the requested format."""
    if fmt == "json":
        return dumps(to_json(from_json(payload)))
    if fmt != "dot":
        raise UnknownFormat(fmt)
    kind = detect_kind(payload)
    if kind == "poset":
        return _poset_dot(poset_from_json(payload))
    if kind == "frame":
        return _frame_dot(frame_from_json(payload))
    if kind == "biframe":
        return _biframe_dot(biframe_from_json(payload))
    if kind == "paircover":
        return _paircover_dot(payload)
    raise UnknownFormat(f"dot for {kind}")
