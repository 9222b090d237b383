"""Kirby diagram data model and exports.

Diagrams are algebraic shadows: dotted 1-handle pairs with exact layout
positions, 2-handle attaching words over the 1-handle labels with framings
and panel tags, and 3/4-handle counts.  Handle slides are not first-class
moves; cancelling a 1-handle rewrites every other attaching word through the
solved relation, which is exactly the slide bookkeeping the pictures do.

Handle-count conventions (all verified by the Euler characteristic):
an unfilled diagram has one 0-handle and no 4-handle; each boundary filling
contributes its zero-framed 2-handle plus one 3-handle, and closing the last
boundary adds one extra 3-handle and the single 4-handle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction

from . import census, cover as cover_mod, cusps, groups
from .exact import QS2
from .layout import LAYOUT, REFLECT_X_CENTER
from .polytope import SIDE_INDEX

LayoutTable = LAYOUT

PANELS = ("xy", "xz", "yz", "off")


class KirbyError(Exception):
    pass


class NotCancellable(KirbyError):
    pass


class BookkeepingError(KirbyError):
    pass


class TraceError(KirbyError):
    def __init__(self, step_index, step, message, diagram):
        super().__init__(f"step {step_index} {step!r}: {message}")
        self.step_index = step_index
        self.step = step
        self.diagram = diagram


@dataclass(frozen=True)
class OneHandle:
    label: str               # pairing name
    sides: tuple             # display names of the two balls
    positions: tuple         # two QS2 triples


@dataclass(frozen=True)
class TwoHandle:
    id: str
    color: int               # palette index; -1 for killing/filling handles
    word: tuple              # attaching word over 1-handle labels
    framing: int | None      # None = unspecified (ridge handles)
    panel: str
    origin: str              # "ridge" | "filling" | "killing"
    ridges: tuple = ()           # (sheet, side, side) triples for ridge handles


@dataclass(frozen=True)
class KirbyDiagram:
    source: str              # "base" | "cover"
    one_handles: tuple
    two_handles: tuple
    three_handles: int
    four_handles: int
    trace: tuple = ()

    def one_handle(self, label):
        h = next((h for h in self.one_handles if h.label == label), None)
        if h is None:
            raise KirbyError(f"no 1-handle {label!r}")
        return h

    def two_handle(self, hid):
        h = next((h for h in self.two_handles if h.id == hid), None)
        if h is None:
            raise KirbyError(f"no 2-handle {hid!r}")
        return h

    def counts(self):
        return {
            "one_handles": len(self.one_handles),
            "two_handles": len(self.two_handles),
            "three_handles": self.three_handles,
            "four_handles": self.four_handles,
        }


def _panel_of(word, handles_by_label) -> str:
    # The doubled copy is laid out by reflecting across x = 2*c, so its
    # "y-z plane" is the parallel plane at x = 4c; each plane panel accepts
    # positions on either of its two copies.
    mirror = REFLECT_X_CENTER * 2
    positions = []
    for sym, _sign in word:
        positions.extend(handles_by_label[sym].positions)
    if not positions:
        return "off"
    for panel, axis in (("xy", 2), ("xz", 1), ("yz", 0)):
        if all(
            p[axis] == QS2(0) or (axis == 0 and p[axis] == mirror)
            for p in positions
        ):
            return panel
    return "off"


def _assign_colors(two_handles):
    by_panel = {}
    out = []
    for h in two_handles:
        if h.origin != "ridge":
            out.append(replace(h, color=-1))
            continue
        idx = by_panel.get(h.panel, 0)
        by_panel[h.panel] = idx + 1
        out.append(replace(h, color=idx))
    return tuple(out)


def build_base_diagram(pairings, cycles, fillings=()) -> KirbyDiagram:
    """Kirby data of the census manifold itself: one 1-handle per pairing,
    one 2-handle per ridge cycle, plus zero-framed filling handles."""
    one_handles = tuple(
        OneHandle(
            label=p.letter,
            sides=(p.source.label, p.target.label),
            positions=(LAYOUT[p.source.label], LAYOUT[p.target.label]),
        )
        for p in pairings
    )
    by_label = {h.label: h for h in one_handles}
    two = []
    for i, c in enumerate(cycles, 1):
        two.append(
            TwoHandle(
                id=f"cycle-{i:02d}",
                color=0,
                word=c.relator,
                framing=None,
                panel=_panel_of(c.relator, by_label),
                origin="ridge",
                ridges=tuple(
                    (0,) + tuple(sorted(r, key=SIDE_INDEX.get)) for r in sorted(
                        c.ridges, key=lambda r: sorted(r, key=SIDE_INDEX.get)
                    )
                ),
            )
        )
    for fid, word in fillings:
        two.append(
            TwoHandle(
                id=fid,
                color=-1,
                word=tuple(word),
                framing=0,
                panel=_panel_of(word, by_label),
                origin="filling",
            )
        )
    three = 12 + (len(fillings) + 1 if fillings else 0)
    four = 1 if fillings else 0
    return KirbyDiagram(
        source="base",
        one_handles=one_handles,
        two_handles=_assign_colors(tuple(two)),
        three_handles=three,
        four_handles=four,
    )


def build_cover_diagram(cover, cycles, fillings=()) -> KirbyDiagram:
    """Kirby data of the doubled domain: one 1-handle per cover pairing
    (including the glued wall pair), the killing 2-handle over the wall,
    one 2-handle per cover ridge cycle, plus filling handles."""
    one_handles = []
    for p in cover.pairings:
        one_handles.append(
            OneHandle(
                label=p.name,
                sides=(
                    cover_mod.side_name(p.source),
                    cover_mod.side_name(p.target),
                ),
                positions=(
                    cover_mod.cover_layout(p.source, cover),
                    cover_mod.cover_layout(p.target, cover),
                ),
            )
        )
    one_handles = tuple(one_handles)
    by_label = {h.label: h for h in one_handles}
    wall = cover.wall_pairing().name
    two = [
        TwoHandle(
            id="killing",
            color=-1,
            word=((wall, 1),),
            framing=None,
            panel=_panel_of(((wall, 1),), by_label),
            origin="killing",
        )
    ]
    for i, c in enumerate(cycles, 1):
        word = tuple((n, s) for n, s in reversed(c.arrows))
        word = groups.free_reduce(word)
        two.append(
            TwoHandle(
                id=f"cycle-{i:02d}",
                color=0,
                word=word,
                framing=None,
                panel=_panel_of(word, by_label),
                origin="ridge",
                ridges=tuple(sorted(
                    (r[0][0], r[0][1], r[1][1])
                    for ridge in c.ridges
                    for r in [sorted(ridge, key=lambda s: (s[0], SIDE_INDEX[s[1]]))]
                )),
            )
        )
    for fid, word in fillings:
        two.append(
            TwoHandle(
                id=fid,
                color=-1,
                word=tuple(word),
                framing=0,
                panel=_panel_of(word, by_label),
                origin="filling",
            )
        )
    three = 24 + (len(fillings) + 1 if fillings else 0)
    four = 1 if fillings else 0
    return KirbyDiagram(
        source="cover",
        one_handles=one_handles,
        two_handles=_assign_colors(tuple(two)),
        three_handles=three,
        four_handles=four,
    )


# ---------------------------------------------------------------------------
# Moves
# ---------------------------------------------------------------------------


def cancel_pair(d: KirbyDiagram, one_label: str, two_id: str) -> KirbyDiagram:
    """Cancel a 1-handle against a 2-handle running over it exactly once.

    Every other attaching word is rewritten by substituting the solved
    1-handle letter (the algebraic shadow of the slides the pictures do).
    """
    d.one_handle(one_label)  # existence check
    two = d.two_handle(two_id)
    hits = [i for i, (sym, _s) in enumerate(two.word) if sym == one_label]
    if len(hits) != 1:
        raise NotCancellable(
            f"2-handle {two_id} runs over {one_label} {len(hits)} times"
        )
    k = hits[0]
    sign = two.word[k][1]
    before, after = two.word[:k], two.word[k + 1:]
    solved = groups.word_mul(groups.word_inverse(before), groups.word_inverse(after))
    replacement = solved if sign == 1 else groups.word_inverse(solved)
    new_two = []
    for h in d.two_handles:
        if h.id == two_id:
            continue
        new_word = groups.free_reduce(
            tuple(
                part
                for sym, s in h.word
                for part in (
                    (replacement if s == 1 else groups.word_inverse(replacement))
                    if sym == one_label
                    else ((sym, s),)
                )
            )
        )
        new_two.append(replace(h, word=new_word))
    return replace(
        d,
        one_handles=tuple(h for h in d.one_handles if h.label != one_label),
        two_handles=tuple(new_two),
        trace=d.trace + (f"cancel {one_label} with {two_id}",),
    )


def delete_trivial(d: KirbyDiagram) -> KirbyDiagram:
    """Delete every 2-handle whose attaching word is freely trivial; each
    deletion cancels one 3-handle."""
    trivial = [h for h in d.two_handles if not groups.free_reduce(h.word)]
    if not trivial:
        return d
    if d.three_handles < len(trivial):
        raise BookkeepingError(
            f"{len(trivial)} trivial 2-handles but only {d.three_handles} "
            "3-handles left"
        )
    return replace(
        d,
        two_handles=tuple(h for h in d.two_handles if groups.free_reduce(h.word)),
        three_handles=d.three_handles - len(trivial),
        trace=d.trace
        + tuple(f"delete trivial {h.id} (cancels a 3-handle)" for h in trivial),
    )


def diagram_presentation(d: KirbyDiagram) -> groups.Presentation:
    """1-handles as generators, 2-handle words as relators."""
    return groups.Presentation(
        generators=tuple(h.label for h in d.one_handles),
        relators=tuple(h.word for h in d.two_handles),
    )


@dataclass(frozen=True)
class TraceResult:
    diagram: KirbyDiagram
    presentation: groups.Presentation
    log: tuple


def _resolve_two_handle(d: KirbyDiagram, selector):
    if isinstance(selector, str):
        return d.two_handle(selector).id
    sheet = selector.get("sheet", 0)
    want = frozenset(selector["sides"])
    for h in d.two_handles:
        for ridge in h.ridges:
            if ridge[0] == sheet and frozenset(ridge[1:]) == want:
                return h.id
    raise KirbyError(f"no ridge 2-handle for selector {selector!r}")


def simplification_trace(d: KirbyDiagram, script) -> TraceResult:
    """Replay a script of cancel/delete steps, reporting the end state.

    Each step is checked at execution time; the first failing step raises
    TraceError carrying the diagram state reached so far.
    """
    log = []
    for i, step in enumerate(script):
        try:
            op = step["op"]
            if op == "cancel":
                two_id = _resolve_two_handle(d, step["two"])
                d = cancel_pair(d, step["one"], two_id)
                log.append(f"cancel ({step['one']}) with {two_id}")
            elif op == "delete_trivial":
                before = len(d.two_handles)
                d = delete_trivial(d)
                log.append(f"delete_trivial removed {before - len(d.two_handles)}")
            else:
                raise KirbyError(f"unknown trace op {op!r}")
        except KirbyError as exc:
            raise TraceError(i, step, str(exc), d) from exc
    return TraceResult(diagram=d, presentation=diagram_presentation(d), log=tuple(log))


def _ridge_sel(sheet, a, b):
    return {"sheet": sheet, "sides": [a, b]}


# The published cancellation order for the filled double cover of the
# reference code: ridge handles are addressed by a ridge they attach along.
SHIPPED_SCRIPTS = {
    "m35-cover-fill": [
        {"op": "cancel", "one": "g⁻¹g", "two": "killing"},
        {"op": "delete_trivial"},
        {"op": "cancel", "one": "a", "two": "fill-a"},
        {"op": "delete_trivial"},
        {"op": "cancel", "one": "c", "two": "fill-c"},
        {"op": "delete_trivial"},
        {"op": "cancel", "one": "b", "two": _ridge_sel(0, "A", "J")},
        {"op": "delete_trivial"},
        {"op": "cancel", "one": "g⁻¹bg", "two": _ridge_sel(0, "A", "F")},
        {"op": "delete_trivial"},
        {"op": "cancel", "one": "g⁻¹ag", "two": _ridge_sel(1, "A", "I")},
        {"op": "delete_trivial"},
        {"op": "cancel", "one": "d", "two": _ridge_sel(0, "A", "C")},
        {"op": "delete_trivial"},
        {"op": "cancel", "one": "g⁻¹dg", "two": _ridge_sel(0, "C", "H")},
        {"op": "delete_trivial"},
        {"op": "cancel", "one": "g⁻¹cg", "two": _ridge_sel(1, "C", "G")},
        {"op": "delete_trivial"},
        {"op": "cancel", "one": "j", "two": "fill-j"},
        {"op": "delete_trivial"},
        {"op": "cancel", "one": "k", "two": "fill-k"},
        {"op": "delete_trivial"},
        {"op": "cancel", "one": "l", "two": _ridge_sel(0, "D", "K")},
        {"op": "delete_trivial"},
        {"op": "cancel", "one": "g⁻¹kg", "two": _ridge_sel(1, "E", "K")},
        {"op": "delete_trivial"},
        {"op": "cancel", "one": "g⁻¹lg", "two": _ridge_sel(0, "E", "K")},
        {"op": "delete_trivial"},
        {"op": "cancel", "one": "g⁻¹ig", "two": _ridge_sel(0, "H", "J")},
        {"op": "delete_trivial"},
        {"op": "cancel", "one": "i", "two": _ridge_sel(0, "I", "K")},
        {"op": "delete_trivial"},
        {"op": "cancel", "one": "g⁻¹jg", "two": _ridge_sel(1, "H", "J")},
        {"op": "delete_trivial"},
        {"op": "cancel", "one": "g⁻¹h", "two": _ridge_sel(0, "G", "K")},
        {"op": "delete_trivial"},
        {"op": "cancel", "one": "hg", "two": _ridge_sel(0, "B", "G")},
        {"op": "delete_trivial"},
        {"op": "cancel", "one": "gg", "two": _ridge_sel(1, "A", "G")},
        {"op": "delete_trivial"},
        {"op": "cancel", "one": "fg", "two": _ridge_sel(0, "E", "I")},
        {"op": "delete_trivial"},
        {"op": "cancel", "one": "g⁻¹f", "two": _ridge_sel(1, "E", "I")},
        {"op": "delete_trivial"},
        {"op": "cancel", "one": "eg", "two": _ridge_sel(0, "D", "E")},
        {"op": "delete_trivial"},
    ]
}


# ---------------------------------------------------------------------------
# Pipeline assembly and invariant reports
# ---------------------------------------------------------------------------


def filling_pairs(pairings, for_diagram=False):
    """(id, base word) pairs for the published fillings, in class order."""
    fills = cusps.canonical_fillings(pairings, for_diagram=for_diagram)
    return [(f"fill-{groups.word_str(f.word)}", f.word) for f in fills]


def assemble_diagram(code: str, want_cover=False, fill=False, alpha="g"):
    """Build the requested diagram for a code, from scratch."""
    pairings = census.build_pairings(census.parse_code(code))
    if not want_cover:
        cycles = census.ridge_cycles(pairings)
        fills = filling_pairs(pairings) if fill else ()
        return build_base_diagram(pairings, cycles, fills)
    eps = census.orientation_character(pairings)
    dc = cover_mod.build_double_cover(pairings, eps, alpha)
    cycles = cover_mod.cover_ridge_cycles(dc)
    fills = ()
    if fill:
        base = filling_pairs(pairings, for_diagram=True)
        lifted = cover_mod.lift_filling_words([w for _, w in base], dc)
        fills = [(fid, lw) for (fid, _), lw in zip(base, lifted)]
    return build_cover_diagram(dc, cycles, fills)


@dataclass(frozen=True)
class InvariantReport:
    stage: str
    euler_characteristic: int | None
    h1_torsion: tuple
    h1_rank: int
    group_order: int | None
    orientable: bool
    candidate_remark: str

    def render(self) -> str:
        chi = "n/a" if self.euler_characteristic is None else self.euler_characteristic
        h1 = " + ".join(
            [f"Z/{t}" for t in self.h1_torsion] + ["Z"] * self.h1_rank
        ) or "0"
        order = "inconclusive" if self.group_order is None else self.group_order
        return (
            f"stage {self.stage}: chi = {chi}, H1 = {h1}, "
            f"group order = {order}, orientable = {self.orientable}\n"
            f"  {self.candidate_remark}"
        )


STAGES = ("base", "cover", "filled", "filled_cover", "degree2_of_filled_cover")


def invariant_report(
    stage: str, code: str = "146928", alpha: str = "g",
    max_cosets: int = 100_000, unfilled_max_cosets: int = 3_000,
) -> InvariantReport:
    """Algebraic invariants at each stage of the construction.

    The Euler characteristic starts from the census datum chi = 1 and is
    multiplied by covering degree; boundary filling along flat cusps leaves
    it unchanged.  Enumeration on the unfilled (infinite) groups runs with a
    small budget and reports inconclusive.
    """
    if stage not in STAGES:
        raise KirbyError(f"unknown stage {stage!r}; expected one of {STAGES}")
    pairings = census.build_pairings(census.parse_code(code))
    eps = census.orientation_character(pairings)
    base = census.presentation(pairings, census.ridge_cycles(pairings))
    fills = [w for _, w in filling_pairs(pairings)]

    if stage == "base":
        torsion, rank = groups.abelianization(base)
        return InvariantReport(
            stage, 1, torsion, rank,
            groups.todd_coxeter(base, unfilled_max_cosets),
            orientable=False,
            candidate_remark="cusped census manifold; chi = 1 is the census datum",
        )
    if stage == "filled":
        filled = groups.add_relations(base, fills)
        torsion, rank = groups.abelianization(filled)
        return InvariantReport(
            stage, None, torsion, rank,
            groups.todd_coxeter(filled, max_cosets),
            orientable=False,
            candidate_remark="closed filling along the five cusp translations",
        )

    dc = cover_mod.build_double_cover(pairings, eps, alpha)
    cover_pres = cover_mod.cover_presentation(dc)
    if stage == "cover":
        torsion, rank = groups.abelianization(cover_pres)
        return InvariantReport(
            stage, 2, torsion, rank,
            groups.todd_coxeter(cover_pres, unfilled_max_cosets),
            orientable=True,
            candidate_remark="orientable double cover; chi doubles to 2",
        )

    lifted = cover_mod.lift_filling_words(fills, dc)
    filled_cover = groups.add_relations(cover_pres, lifted)
    if stage == "filled_cover":
        torsion, rank = groups.abelianization(filled_cover)
        return InvariantReport(
            stage, 2, torsion, rank,
            groups.todd_coxeter(filled_cover, max_cosets),
            orientable=True,
            candidate_remark="filled orientable double cover; filling along "
            "flat cusps preserves chi",
        )

    # Degree-2 cover of the filled cover, handled algebraically: simplify to
    # a single generator of order two, then rewrite its kernel.
    simplified = groups.tietze_simplify(filled_cover)
    if len(simplified.generators) != 1 or groups.abelianization(simplified) != ((2,), 0):
        raise KirbyError(
            "filled cover did not simplify to a single order-2 generator"
        )
    x = simplified.generators[0]
    final = groups.rs_double_cover(simplified, {x: -1}, x)
    torsion, rank = groups.abelianization(final)
    return InvariantReport(
        stage, 4, torsion, rank,
        groups.todd_coxeter(final, max_cosets),
        orientable=True,
        candidate_remark="simply connected with chi = 4; the two remaining "
        "zero-framed 2-handles form the standard diagram of S^2 x S^2 "
        "(Freedman/Donaldson classification quoted, not re-derived)",
    )


# ---------------------------------------------------------------------------
# Exports
# ---------------------------------------------------------------------------


def _qs2_json(x: QS2):
    return [f"{x.a.numerator}/{x.a.denominator}", f"{x.b.numerator}/{x.b.denominator}"]


def _qs2_from_json(pair):
    return QS2(Fraction(pair[0]), Fraction(pair[1]))


def export_json(d: KirbyDiagram) -> dict:
    return {
        "source": d.source,
        "one_handles": [
            {
                "label": h.label,
                "sides": list(h.sides),
                "pos": [[_qs2_json(c) for c in p] for p in h.positions],
            }
            for h in d.one_handles
        ],
        "two_handles": [
            {
                "id": h.id,
                "color": h.color,
                "word": [{"handle": sym, "sign": s} for sym, s in h.word],
                "framing": h.framing,
                "panel": h.panel,
                "origin": h.origin,
                "ridges": [list(r) for r in h.ridges],
            }
            for h in d.two_handles
        ],
        "three_handles": d.three_handles,
        "four_handles": d.four_handles,
        "trace": list(d.trace),
    }


def import_json(doc: dict) -> KirbyDiagram:
    return KirbyDiagram(
        source=doc["source"],
        one_handles=tuple(
            OneHandle(
                label=h["label"],
                sides=tuple(h["sides"]),
                positions=tuple(
                    tuple(_qs2_from_json(c) for c in p) for p in h["pos"]
                ),
            )
            for h in doc["one_handles"]
        ),
        two_handles=tuple(
            TwoHandle(
                id=h["id"],
                color=h["color"],
                word=tuple((w["handle"], w["sign"]) for w in h["word"]),
                framing=h["framing"],
                panel=h["panel"],
                origin=h["origin"],
                ridges=tuple(tuple(r) for r in h["ridges"]),
            )
            for h in doc["two_handles"]
        ),
        three_handles=doc["three_handles"],
        four_handles=doc["four_handles"],
        trace=tuple(doc["trace"]),
    )


def json_text(d: KirbyDiagram) -> str:
    return json.dumps(export_json(d), indent=2, sort_keys=True, ensure_ascii=True)


# Twelve named colours, matching the published legend names.
DEFAULT_PALETTE = (
    ("orange", "#e69f00"),
    ("brown", "#8c510a"),
    ("turquoise", "#40e0d0"),
    ("yellow", "#f0e442"),
    ("dark green", "#006400"),
    ("light green", "#90ee90"),
    ("green", "#009e73"),
    ("pink", "#cc79a7"),
    ("grey", "#999999"),
    ("red", "#d55e00"),
    ("blue", "#0072b2"),
    ("black", "#000000"),
)


def _project(pos, panel):
    x, y, z = (float(c) for c in pos)
    if panel == "xy":
        u, v = x, y
    elif panel == "xz":
        u, v = x, z
    elif panel == "yz":
        u, v = y, z
    else:
        u, v = x - 0.35 * z, y - 0.35 * z
    return u, v


def export_svg(d: KirbyDiagram, panel: str, palette=DEFAULT_PALETTE) -> str:
    """One static panel: dotted circles for the 1-handle balls, a chord
    polyline per 2-handle in its colour, and a legend.  Output is a pure
    function of the input."""
    if panel not in PANELS:
        raise KirbyError(f"unknown panel {panel!r}; expected one of {PANELS}")
    handles = [h for h in d.two_handles if h.panel == panel]
    by_label = {h.label: h for h in d.one_handles}
    shown = set()
    for h in handles:
        for sym, _s in h.word:
            shown.add(sym)
    circles = []
    axis = {"xy": 2, "xz": 1, "yz": 0}.get(panel)
    for oh in d.one_handles:
        in_plane = axis is not None and all(
            p[axis] == QS2(0) for p in oh.positions
        )
        if oh.label in shown or in_plane:
            circles.append(oh)

    scale, margin = 60.0, 80.0
    pts = [
        _project(p, panel) for oh in circles for p in oh.positions
    ] or [(0.0, 0.0)]
    min_u = min(u for u, _ in pts)
    max_v = max(v for _, v in pts)

    def at(pos):
        u, v = _project(pos, panel)
        return (margin + scale * (u - min_u), margin + scale * (max_v - v))

    legend_h = 22 * (len(handles) + 1)
    width = margin * 2 + scale * (max(u for u, _ in pts) - min_u)
    height = margin * 2 + scale * (max_v - min(v for _, v in pts)) + legend_h
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<title>{d.source} diagram, {panel} panel</title>',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    for h in handles:
        color = "#000000" if h.color < 0 else palette[h.color % len(palette)][1]
        dash = ' stroke-dasharray="6 4"' if h.origin != "ridge" else ""
        chain = []
        for sym, s in h.word:
            a, b = by_label[sym].positions
            entry, exit_ = (a, b) if s == 1 else (b, a)
            chain.append((at(entry), at(exit_)))
        if not chain:
            continue
        points = []
        for (entry, exit_) in chain:
            points.append(entry)
            points.append(exit_)
        points.append(chain[0][0])
        path = " ".join(f"{u:.2f},{v:.2f}" for u, v in points)
        out.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="2"{dash} '
            f'points="{path}"/>'
        )
    for oh in circles:
        for name, pos in zip(oh.sides, oh.positions):
            u, v = at(pos)
            out.append(
                f'<circle cx="{u:.2f}" cy="{v:.2f}" r="14" fill="none" '
                f'stroke="black" stroke-dasharray="3 3"/>'
            )
            out.append(
                f'<text x="{u:.2f}" y="{v + 4:.2f}" font-size="11" '
                f'text-anchor="middle">{name}</text>'
            )
    ly = height - legend_h + 10
    out.append(
        f'<text x="{margin:.2f}" y="{ly:.2f}" font-size="12" '
        f'font-weight="bold">2-handles ({panel})</text>'
    )
    for i, h in enumerate(handles, 1):
        color = "#000000" if h.color < 0 else palette[h.color % len(palette)][1]
        cname = "dashed black" if h.color < 0 else palette[h.color % len(palette)][0]
        y = ly + 18 * i
        out.append(
            f'<rect x="{margin:.2f}" y="{y - 9:.2f}" width="12" height="12" '
            f'fill="{color}"/>'
        )
        word = groups.word_str(h.word)
        framing = "-" if h.framing is None else str(h.framing)
        out.append(
            f'<text x="{margin + 18:.2f}" y="{y:.2f}" font-size="11">'
            f"{h.id} [{cname}] framing {framing}: {word}</text>"
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
