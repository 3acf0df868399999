"""Enhanced level graphs and stratum dimension ledgers.

A level graph describes a degree-p admissible cover of nodal curves:
source vertices carry genus, level in {0, ..., -L} and a cover type
(artin_schreier or etale at the top level, frobenius below), source
edges carry integer slopes and map to target edges, and markings carry
the ramification data (lambda_i, xi_i) of the discrete Hurwitz datum.

The validator enforces the Riemann-Hurwitz count, the per-vertex
conductor balance at Artin-Schreier vertices, the degree balance of
component forms at Frobenius vertices through the slope/order
dictionary (zero order = slope + (p-1) at downward points and markings,
pole order = slope - (p-1) at points incoming from above), slope
congruence rules, level contiguity, and stability of the source curve.

The dimension ledger splits a stratum's dimension into Mod^AS (covers
at the top level), Mod^ex (exact forms at intermediate levels) and
Mod^qu-ex (quasi-exact forms at the bottom level in mixed
characteristic); for genus-0 targets the total is checked against the
closed form N - 3 - #E_D^hor - #V_C^ex.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dfield

AS = "artin_schreier"
FROB = "frobenius"
ETALE = "etale"


class GraphError(ValueError):
    """Malformed level graph data."""


@dataclass(frozen=True)
class HurwitzData:
    """Discrete datum A = (h, g, N, Lambda) with regime and twists Xi."""

    p: int
    h: int
    g: int
    N: int
    Lam: tuple
    Xi: tuple = None
    regime: str = "mixed"

    def __post_init__(self):
        object.__setattr__(self, "Lam", tuple(self.Lam))
        xi = tuple(self.Xi) if self.Xi is not None else tuple(0 for _ in self.Lam)
        object.__setattr__(self, "Xi", xi)
        if self.regime not in ("mixed", "equicharacteristic"):
            raise GraphError(f"unknown regime {self.regime!r}")
        if len(self.Lam) != len(self.Xi):
            raise GraphError("Lambda and Xi lengths differ")

    @property
    def b(self):
        return len(self.Lam)

    def rh_holds(self) -> bool:
        lhs = 2 * self.h - 2
        rhs = self.p * (2 * self.g - 2) + sum(l + x - 1 for l, x in zip(self.Lam, self.Xi))
        return lhs == rhs

    def errors(self):
        out = []
        if not self.rh_holds():
            out.append("Riemann-Hurwitz count fails for the discrete datum")
        if self.regime == "mixed" and any(self.Xi):
            out.append("mixed regime requires all xi to vanish")
        return out


@dataclass(frozen=True)
class SourceVertex:
    id: str
    genus: int
    level: int
    cover_type: str
    image: str  # target vertex id


@dataclass(frozen=True)
class SourceEdge:
    id: str
    v1: str
    v2: str
    slope: int
    image: str  # target edge id


@dataclass(frozen=True)
class TargetVertex:
    id: str
    level: int


@dataclass(frozen=True)
class TargetEdge:
    id: str
    v1: str
    v2: str


@dataclass(frozen=True)
class Marking:
    vertex: str  # source vertex id
    lam: int
    xi: int
    image: str  # target marking label


class LevelGraph:
    """Enhanced level graph of a degree-p cover."""

    def __init__(self, p, regime, source_vertices, source_edges, target_vertices, target_edges, markings):
        self.p = p
        self.regime = regime
        self.source_vertices = tuple(source_vertices)
        self.source_edges = tuple(source_edges)
        self.target_vertices = tuple(target_vertices)
        self.target_edges = tuple(target_edges)
        self.markings = tuple(markings)
        self._sv = {v.id: v for v in self.source_vertices}
        self._tv = {v.id: v for v in self.target_vertices}
        self._se = {e.id: e for e in self.source_edges}
        self._te = {e.id: e for e in self.target_edges}
        if len(self._sv) != len(self.source_vertices):
            raise GraphError("duplicate source vertex id")
        if len(self._tv) != len(self.target_vertices):
            raise GraphError("duplicate target vertex id")
        if len(self._se) != len(self.source_edges):
            raise GraphError("duplicate source edge id")
        if len(self._te) != len(self.target_edges):
            raise GraphError("duplicate target edge id")
        for e in self.source_edges:
            if e.v1 not in self._sv or e.v2 not in self._sv:
                raise GraphError(f"edge {e.id} has unknown endpoint")
            if e.image not in self._te:
                raise GraphError(f"edge {e.id} has unknown image edge")
        for e in self.target_edges:
            if e.v1 not in self._tv or e.v2 not in self._tv:
                raise GraphError(f"target edge {e.id} has unknown endpoint")
        for v in self.source_vertices:
            if v.image not in self._tv:
                raise GraphError(f"vertex {v.id} has unknown image vertex")
        for m in self.markings:
            if m.vertex not in self._sv:
                raise GraphError(f"marking on unknown vertex {m.vertex}")

    # -- derived structure -------------------------------------------------

    def source_vertex(self, vid) -> SourceVertex:
        return self._sv[vid]

    def levels(self):
        return sorted({v.level for v in self.source_vertices}, reverse=True)

    @property
    def min_level(self):
        return min(v.level for v in self.source_vertices)

    def is_horizontal(self, e: SourceEdge) -> bool:
        return self._sv[e.v1].level == self._sv[e.v2].level

    def edge_down_up(self, e: SourceEdge):
        """(lower endpoint, upper endpoint) of a level-crossing edge."""
        a, b = self._sv[e.v1], self._sv[e.v2]
        return (a, b) if a.level < b.level else (b, a)

    def edges_at(self, vid):
        out = []
        for e in self.source_edges:
            if e.v1 == vid:
                out.append(e)
            if e.v2 == vid:
                out.append(e)  # loops appear twice
        return out

    def out_edges(self, vid):
        """Level-crossing edges whose upper endpoint is vid."""
        v = self._sv[vid]
        return [
            e
            for e in self.source_edges
            if not self.is_horizontal(e) and self.edge_down_up(e)[1].id == vid
        ]

    def in_edges(self, vid):
        v = self._sv[vid]
        return [
            e
            for e in self.source_edges
            if not self.is_horizontal(e) and self.edge_down_up(e)[0].id == vid
        ]

    def markings_at(self, vid):
        return [m for m in self.markings if m.vertex == vid]

    def horizontal_target_edges(self):
        """Target edges that are images of horizontal source edges."""
        out = set()
        for e in self.source_edges:
            if self.is_horizontal(e):
                out.add(e.image)
        return out

    def etale_target_vertices(self):
        """Target vertices covered by degree-1 sheets."""
        out = set()
        for v in self.source_vertices:
            if v.cover_type == ETALE:
                out.add(v.image)
        return out

    def exact_vertices(self):
        """Source components carrying exact forms.

        In the mixed regime the bottom level carries the quasi-exact
        forms, so exact components live strictly between; in
        equicharacteristic every level below the top is exact.
        """
        lmin = self.min_level
        out = []
        for v in self.source_vertices:
            if v.level < 0 and (self.regime == "equicharacteristic" or v.level > lmin):
                out.append(v)
        return out

    def quasi_exact_vertices(self):
        if self.regime == "equicharacteristic":
            return []
        lmin = self.min_level
        if lmin == 0:
            return []
        return [v for v in self.source_vertices if v.level == lmin]

    def source_betti(self):
        comps = self._components(self.source_vertices, self.source_edges)
        return len(self.source_edges) - len(self.source_vertices) + comps, comps

    def target_betti(self):
        comps = self._components(self.target_vertices, self.target_edges)
        return len(self.target_edges) - len(self.target_vertices) + comps, comps

    @staticmethod
    def _components(vertices, edges):
        parent = {v.id: v.id for v in vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in edges:
            a, b = find(e.v1), find(e.v2)
            if a != b:
                parent[a] = b
        return len({find(v.id) for v in vertices})

    def total_source_genus(self):
        b1, _ = self.source_betti()
        return sum(v.genus for v in self.source_vertices) + b1

    def total_target_genus(self):
        b1, _ = self.target_betti()
        return b1

    def marking_groups(self):
        """Target markings: image label -> list of marking positions."""
        groups = {}
        for i, m in enumerate(self.markings):
            groups.setdefault(m.image, []).append(i)
        return groups

    # -- serialization -----------------------------------------------------

    def to_json_obj(self):
        return {
            "p": self.p,
            "regime": self.regime,
            "source": {
                "vertices": [
                    {"id": v.id, "genus": v.genus, "level": v.level,
                     "cover_type": v.cover_type, "image": v.image}
                    for v in self.source_vertices
                ],
                "edges": [
                    {"id": e.id, "v1": e.v1, "v2": e.v2, "slope": e.slope, "image": e.image}
                    for e in self.source_edges
                ],
            },
            "target": {
                "vertices": [{"id": v.id, "level": v.level} for v in self.target_vertices],
                "edges": [{"id": e.id, "v1": e.v1, "v2": e.v2} for e in self.target_edges],
            },
            "markings": [
                {"vertex": m.vertex, "lambda": m.lam, "xi": m.xi, "image": m.image}
                for m in self.markings
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj):
        try:
            src = obj["source"]
            tgt = obj["target"]
            return cls(
                int(obj["p"]),
                obj.get("regime", "mixed"),
                [
                    SourceVertex(str(v["id"]), int(v["genus"]), int(v["level"]),
                                 v["cover_type"], str(v["image"]))
                    for v in src["vertices"]
                ],
                [
                    SourceEdge(str(e["id"]), str(e["v1"]), str(e["v2"]),
                               int(e["slope"]), str(e["image"]))
                    for e in src["edges"]
                ],
                [TargetVertex(str(v["id"]), int(v["level"])) for v in tgt["vertices"]],
                [TargetEdge(str(e["id"]), str(e["v1"]), str(e["v2"])) for e in tgt["edges"]],
                [
                    Marking(str(m["vertex"]), int(m["lambda"]), int(m["xi"]), str(m["image"]))
                    for m in obj.get("markings", [])
                ],
            )
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed level graph JSON: {exc}") from exc

    @classmethod
    def from_json(cls, text: str):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"invalid JSON: {exc}") from exc
        return cls.from_json_obj(obj)

    def to_dot(self) -> str:
        lines = ["digraph levelgraph {", "  rankdir=TB;"]
        for lvl in self.levels():
            ids = " ".join(f'"{v.id}"' for v in self.source_vertices if v.level == lvl)
            lines.append(f"  {{ rank=same; {ids} }}")
        for v in self.source_vertices:
            label = f"{v.id}\\ng={v.genus} L{v.level}\\n{v.cover_type}"
            lines.append(f'  "{v.id}" [label="{label}"];')
        for e in self.source_edges:
            if self.is_horizontal(e):
                lines.append(f'  "{e.v1}" -> "{e.v2}" [dir=none label="0" style=dashed];')
            else:
                down, up = self.edge_down_up(e)
                lines.append(f'  "{up.id}" -> "{down.id}" [label="{e.slope}"];')
        for i, m in enumerate(self.markings):
            node = f"mark{i}"
            lines.append(f'  "{node}" [shape=plaintext label="m{i + 1}"];')
            lines.append(f'  "{m.vertex}" -> "{node}" [style=dotted arrowhead=none];')
        lines.append("}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    ok: bool
    errors: list = dfield(default_factory=list)

    def add(self, rule, detail):
        self.ok = False
        self.errors.append({"rule": rule, "detail": detail})


def _ramified_points(G: LevelGraph, vid):
    """(kind, slope-or-xi) for the ramified points of an AS vertex."""
    pts = []
    for e in G.out_edges(vid):
        pts.append(("edge", e.id, e.slope))
    for i, m in enumerate(G.markings):
        if m.vertex == vid and m.lam == G.p:
            pts.append(("marking", str(i), m.xi))
    return pts


def _frobenius_orders(G: LevelGraph, vid):
    """Plain orders of the component form at the special points of a Frobenius vertex."""
    p = G.p
    orders = []
    for e in G.out_edges(vid):
        orders.append(("edge-out", e.id, e.slope + (p - 1)))
    for e in G.in_edges(vid):
        orders.append(("edge-in", e.id, -(e.slope - (p - 1))))
    for i, m in enumerate(G.markings):
        if m.vertex == vid:
            orders.append(("marking", str(i), m.xi + (p - 1)))
    return orders


def validate(G: LevelGraph, A: HurwitzData) -> ValidationReport:
    report = ValidationReport(ok=True)
    p = A.p
    if G.p != A.p:
        report.add("datum", f"graph p={G.p} differs from datum p={A.p}")
    if G.regime != A.regime:
        report.add("datum", f"graph regime {G.regime} differs from datum {A.regime}")
    for err in A.errors():
        report.add("riemann-hurwitz", err)

    # level structure
    levels = G.levels()
    if not levels or levels[0] != 0 or levels != list(range(0, min(levels) - 1, -1)):
        report.add("levels", f"levels {levels} are not a contiguous set {{0,...,-L}}")
    tlevels = sorted({v.level for v in G.target_vertices}, reverse=True)
    if tlevels != levels:
        report.add("levels", f"target levels {tlevels} differ from source levels {levels}")
    for v in G.source_vertices:
        if G._tv[v.image].level != v.level:
            report.add("levels", f"vertex {v.id} and its image are on different levels")

    # cover types
    for v in G.source_vertices:
        if v.cover_type not in (AS, FROB, ETALE):
            report.add("cover-type", f"unknown cover type {v.cover_type} at {v.id}")
        elif v.level == 0 and v.cover_type == FROB:
            report.add("cover-type", f"frobenius vertex {v.id} at the top level")
        elif v.level < 0 and v.cover_type != FROB:
            report.add("cover-type", f"separable vertex {v.id} below the top level")

    # connectivity
    _, comps = G.source_betti()
    if comps != 1:
        report.add("connectivity", f"source graph has {comps} components")
    _, tcomps = G.target_betti()
    if tcomps != 1:
        report.add("connectivity", f"target graph has {tcomps} components")

    # genus bookkeeping
    h = G.total_source_genus()
    if h != A.h:
        report.add("genus", f"source arithmetic genus {h} differs from datum h={A.h}")
    g = G.total_target_genus()
    if g != A.g:
        report.add("genus", f"target arithmetic genus {g} differs from datum g={A.g}")

    # markings against the datum
    if len(G.markings) != A.b:
        report.add("markings", f"{len(G.markings)} markings, datum has b={A.b}")
    else:
        for i, m in enumerate(G.markings):
            if m.lam != A.Lam[i] or m.xi != A.Xi[i]:
                report.add("markings", f"marking {i} carries ({m.lam},{m.xi}), datum says ({A.Lam[i]},{A.Xi[i]})")
    groups = G.marking_groups()
    if len(groups) != A.N:
        report.add("markings", f"{len(groups)} target markings, datum has N={A.N}")
    for label, idxs in groups.items():
        if sum(G.markings[i].lam for i in idxs) != p:
            report.add("markings", f"target marking {label} has fiber multiplicities summing to != p")
        if len({G._sv[G.markings[i].vertex].image for i in idxs}) != 1:
            report.add("markings", f"target marking {label} spread over several target vertices")

    # edges: slopes, images, horizontality
    for e in G.source_edges:
        if e.slope < 0:
            report.add("slope", f"edge {e.id} has negative slope")
        te = G._te[e.image]
        imgs = {G._sv[e.v1].image, G._sv[e.v2].image}
        if imgs != {te.v1, te.v2}:
            report.add("edge-image", f"edge {e.id} endpoints do not map onto its image edge")
        if G.is_horizontal(e):
            if e.slope != 0:
                report.add("slope", f"horizontal edge {e.id} has nonzero slope {e.slope}")
            if G._sv[e.v1].level != 0:
                report.add("slope", f"horizontal edge {e.id} below the top level")
        else:
            if e.slope == 0:
                report.add("slope", f"level-crossing edge {e.id} has slope 0")
            down, up = G.edge_down_up(e)
            if down.cover_type == FROB and e.slope % p == 0:
                report.add("slope", f"edge {e.id}: slope {e.slope} is 0 mod p at a Frobenius vertex")
            if up.cover_type == FROB and e.slope % p == 0:
                report.add("slope", f"edge {e.id}: slope {e.slope} is 0 mod p at a Frobenius vertex")
            if up.cover_type == AS and e.slope % (p - 1) != 0:
                report.add("slope", f"edge {e.id}: top-level outgoing slope {e.slope} not divisible by p-1")

    # per-AS-vertex conductor balance
    for v in G.source_vertices:
        if v.cover_type != AS:
            continue
        if 2 * v.genus % (p - 1) != 0:
            report.add("as-balance", f"2g({v.id}) not divisible by p-1")
            continue
        conductors = []
        bad = False
        for kind, ident, val in _ramified_points(G, v.id):
            if val % (p - 1) != 0:
                report.add("as-balance", f"ramified {kind} {ident} at {v.id}: value {val} not divisible by p-1")
                bad = True
                continue
            e = val // (p - 1) + 1
            if e % p == 1:
                report.add("as-balance", f"ramified {kind} {ident} at {v.id}: conductor {e} is 1 mod p")
                bad = True
            conductors.append(e)
        if not bad and sum(conductors) != 2 * v.genus // (p - 1) + 2:
            report.add(
                "as-balance",
                f"vertex {v.id}: conductors {conductors} sum to {sum(conductors)}, "
                f"expected {2 * v.genus // (p - 1) + 2}",
            )

    # per-Frobenius-vertex degree balance of the component form
    for v in G.source_vertices:
        if v.cover_type != FROB:
            continue
        total = sum(o for _, _, o in _frobenius_orders(G, v.id))
        expected = (2 * v.genus - 2) * (1 - p)
        if total != expected:
            report.add(
                "frobenius-balance",
                f"vertex {v.id}: plain orders sum to {total}, expected {expected}",
            )

    # etale sheets
    for tv_id in G.etale_target_vertices():
        sheets = [v for v in G.source_vertices if v.image == tv_id]
        if len(sheets) != p or any(v.cover_type != ETALE for v in sheets):
            report.add("etale", f"target vertex {tv_id} is not covered by exactly p degree-1 sheets")
        for v in sheets:
            for e in G.edges_at(v.id):
                if not G.is_horizontal(e):
                    report.add("etale", f"etale sheet {v.id} has a level-crossing edge {e.id}")

    # stability of the source curve
    for v in G.source_vertices:
        special = len(G.edges_at(v.id)) + len(G.markings_at(v.id))
        if special < 3 - 2 * v.genus:
            report.add("stability", f"vertex {v.id} (genus {v.genus}) has only {special} special points")

    # regime rules
    if A.regime == "mixed":
        # the minimal level is the quasi-exact level log(p); nothing may lie
        # below it, which holds structurally since levels are contiguous.
        pass
    return report


# ---------------------------------------------------------------------------
# dimension ledger and monoid rank


@dataclass
class StratumLedger:
    contributions: list  # (label, value) per component
    mod_as: int
    mod_ex: int
    mod_quex: int
    total: int
    closed_form: int  # N-3-#E_D^hor-#V_C^ex when g=0, else None
    e_d_hor: int
    v_c_ex: int
    monoid_rank: int
    monoid_free: bool


def _etale_special_points(G: LevelGraph, vid):
    """Count etale special points on the target component under an AS vertex."""
    v = G.source_vertex(vid)
    tv = v.image
    hor = G.horizontal_target_edges()
    count = 0
    for te in G.target_edges:
        if te.id in hor:
            if te.v1 == tv:
                count += 1
            if te.v2 == tv:
                count += 1
    for label, idxs in G.marking_groups().items():
        ms = [G.markings[i] for i in idxs]
        if all(m.lam == 1 for m in ms) and G._sv[ms[0].vertex].image == tv:
            count += 1
    return count


def _target_half_edges(G: LevelGraph, tv_id):
    count = 0
    for te in G.target_edges:
        if te.v1 == tv_id:
            count += 1
        if te.v2 == tv_id:
            count += 1
    for label, idxs in G.marking_groups().items():
        if G._sv[G.markings[idxs[0]].vertex].image == tv_id:
            count += 1
    return count


def monoid_rank(G: LevelGraph, A: HurwitzData):
    """Rank of the minimal base monoid and whether it is free."""
    rank = len(G.horizontal_target_edges()) + len(G.exact_vertices())
    if A.regime == "mixed":
        rank += 1
    return rank, A.p == 2


def stratum_dimension(G: LevelGraph, A: HurwitzData) -> StratumLedger:
    report = validate(G, A)
    if not report.ok:
        raise GraphError(f"invalid level graph: {report.errors}")
    p = A.p
    contributions = []
    mod_as = mod_ex = mod_quex = 0

    for v in G.source_vertices:
        if v.cover_type == AS:
            ram = _ramified_points(G, v.id)
            val = (
                2 * v.genus // (p - 1)
                + _etale_special_points(G, v.id)
                - 1
                - sum(s // (p * (p - 1)) for _, _, s in ram)
            )
            mod_as += val
            contributions.append((f"AS:{v.id}", val))
    for tv_id in sorted(G.etale_target_vertices()):
        val = _target_half_edges(G, tv_id) - 3
        mod_as += val
        contributions.append((f"etale-target:{tv_id}", val))

    exact_ids = {v.id for v in G.exact_vertices()}
    quex_ids = {v.id for v in G.quasi_exact_vertices()}
    for v in G.source_vertices:
        if v.id in exact_ids:
            orders = _frobenius_orders(G, v.id)
            val = len(orders) - 4 + sum(_floordiv(o, p) for _, _, o in orders)
            mod_ex += val
            contributions.append((f"exact:{v.id}", val))
        elif v.id in quex_ids:
            orders = _frobenius_orders(G, v.id)
            val = len(orders) - 3 + sum(_floordiv(o, p) for _, _, o in orders)
            mod_quex += val
            contributions.append((f"quasi-exact:{v.id}", val))

    total = mod_as + mod_ex + mod_quex
    e_d_hor = len(G.horizontal_target_edges())
    v_c_ex = len(exact_ids)
    closed = None
    if A.g == 0 and A.regime == "mixed":
        closed = A.N - 3 - e_d_hor - v_c_ex
        assert total == closed, f"ledger total {total} != closed form {closed}"
    rank, free = monoid_rank(G, A)
    return StratumLedger(
        contributions=contributions,
        mod_as=mod_as,
        mod_ex=mod_ex,
        mod_quex=mod_quex,
        total=total,
        closed_form=closed,
        e_d_hor=e_d_hor,
        v_c_ex=v_c_ex,
        monoid_rank=rank,
        monoid_free=free,
    )


def _floordiv(a, b):
    return a // b


def generic_dimension(A: HurwitzData) -> int:
    """Dimension of the generic stratum: 3g-3+N (mixed), N-3+sum (xi+1)/2 (equichar p=2)."""
    errs = A.errors()
    if errs:
        raise GraphError("; ".join(errs))
    if A.regime == "mixed":
        return 3 * A.g - 3 + A.N
    if A.p != 2:
        raise GraphError("equicharacteristic generic dimension implemented for p=2 only")
    total2 = sum(x + 1 for x in A.Xi)
    if total2 % 2 != 0:
        raise GraphError("sum (xi_i + 1) must be even")
    return A.N - 3 + total2 // 2


# ---------------------------------------------------------------------------
# canonical labeling


def canonical_form(G: LevelGraph):
    """A canonical hashable encoding, minimal over invariant-preserving relabelings.

    Vertices may only be permuted within classes sharing (level, genus,
    cover_type, incident slope multiset, marking positions); markings are
    never permuted, so graphs differing only in which labeled marking
    sits where stay distinct.
    """
    verts = list(G.source_vertices)
    invariants = {}
    for v in verts:
        slopes = []
        for e in G.edges_at(v.id):
            down, up = (None, None)
            if G.is_horizontal(e):
                slopes.append((0, 0))
            else:
                down, up = G.edge_down_up(e)
                slopes.append((1 if up.id == v.id else -1, e.slope))
        marks = tuple(i for i, m in enumerate(G.markings) if m.vertex == v.id)
        invariants[v.id] = (-v.level, v.genus, v.cover_type, tuple(sorted(slopes)), marks)

    classes = {}
    for v in verts:
        classes.setdefault(invariants[v.id], []).append(v.id)
    ordered_classes = sorted(classes.items())

    best = None
    class_lists = [ids for _, ids in ordered_classes]
    perms_per_class = [list(itertools.permutations(ids)) for ids in class_lists]
    for combo in itertools.product(*perms_per_class):
        sigma = {}
        idx = 0
        for perm in combo:
            for vid in perm:
                sigma[vid] = idx
                idx += 1
        enc = _encode(G, sigma)
        if best is None or enc < best:
            best = enc
    return best


def _encode(G: LevelGraph, sigma):
    verts = tuple(
        (sigma[v.id], -v.level, v.genus, v.cover_type)
        for v in sorted(G.source_vertices, key=lambda v: sigma[v.id])
    )
    edge_reps = {}
    for e in G.source_edges:
        a, b = sigma[e.v1], sigma[e.v2]
        edge_reps[e.id] = (min(a, b), max(a, b), e.slope)
    edges = tuple(sorted(edge_reps.values()))
    # target identifications: group source vertices / edges by image
    vgroups = {}
    for v in G.source_vertices:
        vgroups.setdefault(v.image, []).append(sigma[v.id])
    vgrouping = tuple(sorted(tuple(sorted(g)) for g in vgroups.values()))
    egroups = {}
    for e in G.source_edges:
        egroups.setdefault(e.image, []).append(edge_reps[e.id])
    egrouping = tuple(sorted(tuple(sorted(g)) for g in egroups.values()))
    marks = tuple((sigma[m.vertex], m.lam, m.xi) for m in G.markings)
    mgroups = {}
    for i, m in enumerate(G.markings):
        mgroups.setdefault(m.image, []).append(i)
    mgrouping = tuple(sorted(tuple(g) for g in mgroups.values()))
    return (verts, edges, vgrouping, egrouping, marks, mgrouping)


# ---------------------------------------------------------------------------
# enumeration of irreducible components (p = 2, g = 0, mixed)


def _labeled_trees(n):
    """All labeled trees on vertices 0..n-1 as edge lists, via Pruefer sequences."""
    if n == 1:
        yield []
        return
    if n == 2:
        yield [(0, 1)]
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        degree = [1] * n
        for s in seq:
            degree[s] += 1
        edges = []
        ptr = 0
        leaves = sorted(i for i in range(n) if degree[i] == 1)
        import heapq

        heap = list(leaves)
        heapq.heapify(heap)
        deg = degree[:]
        for s in seq:
            leaf = heapq.heappop(heap)
            edges.append((leaf, s))
            deg[s] -= 1
            if deg[s] == 1:
                heapq.heappush(heap, s)
        u = heapq.heappop(heap)
        v = heapq.heappop(heap)
        edges.append((u, v))
        yield edges


def _odd_compositions(total, parts):
    """Compositions of `total` into `parts` positive odd summands."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    first = 1
    while first <= total - (parts - 1):
        for rest in _odd_compositions(total - first, parts - 1):
            yield (first,) + rest
        first += 2


def _partitions_into_sizes(items, sizes):
    """All ways to split `items` (ordered) into ordered boxes of given sizes."""
    if not sizes:
        yield []
        return
    k = sizes[0]
    for chosen in itertools.combinations(items, k):
        remaining = [i for i in items if i not in chosen]
        for rest in _partitions_into_sizes(remaining, sizes[1:]):
            yield [list(chosen)] + rest


def enumerate_components(A: HurwitzData, max_vertices: int = 8):
    """All two-level, no-horizontal-edge graphs up to isomorphism.

    These are the irreducible components of the special fiber for p = 2,
    g = 0 in the mixed regime with all markings ramified (lambda = 2).
    Markings are labeled; graphs differing only by which markings sit on
    which bottom component count separately.
    """
    if A.p != 2 or A.g != 0:
        raise GraphError("enumeration supports p=2, g=0 only")
    if A.regime != "mixed":
        raise GraphError("enumeration supports the mixed regime only")
    if any(l != 2 for l in A.Lam):
        raise GraphError("enumeration supports ramified markings (lambda=2) only")
    if A.errors():
        return []
    b = A.b
    if A.N != b:
        return []
    h = A.h
    if h < 1:
        return []  # a genus-0 top vertex can never be stable in a two-level graph

    seen = {}
    for t in range(1, h + 1):
        for genera in _compositions(h, t):
            for s in range(1, max_vertices - t + 1):
                n = t + s
                for tree in _labeled_trees(n):
                    # vertices 0..t-1 are tops, t..n-1 are bottoms
                    if any((u < t) == (v < t) for u, v in tree):
                        continue
                    deg = [0] * n
                    incident = [[] for _ in range(n)]
                    for i, (u, v) in enumerate(tree):
                        deg[u] += 1
                        deg[v] += 1
                        incident[u].append(i)
                        incident[v].append(i)
                    if any(deg[v] > genera[v] + 1 for v in range(t)):
                        continue
                    slope_choices = [
                        list(_odd_compositions(2 * genera[v] + 2 - deg[v], deg[v]))
                        for v in range(t)
                    ]
                    if any(not c for c in slope_choices):
                        continue
                    for slopes_per_top in itertools.product(*slope_choices):
                        slope = [0] * len(tree)
                        for v in range(t):
                            for ei, sl in zip(incident[v], slopes_per_top[v]):
                                slope[ei] = sl
                        mark_counts = []
                        ok = True
                        for wv in range(t, n):
                            mw = 2 + sum(slope[ei] - 1 for ei in incident[wv])
                            if mw + deg[wv] < 3:
                                ok = False
                                break
                            mark_counts.append(mw)
                        if not ok or sum(mark_counts) != b:
                            continue
                        for assignment in _partitions_into_sizes(list(range(b)), mark_counts):
                            G = _build_two_level(A, t, genera, n, tree, slope, assignment)
                            key = canonical_form(G)
                            if key not in seen:
                                rep = validate(G, A)
                                assert rep.ok, rep.errors
                                seen[key] = G
    return [seen[k] for k in sorted(seen)]


def _compositions(total, parts):
    """Compositions of `total` into `parts` positive summands."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _build_two_level(A, t, genera, n, tree, slope, assignment):
    svs = []
    tvs = []
    for v in range(n):
        level = 0 if v < t else -1
        ct = AS if v < t else FROB
        genus = genera[v] if v < t else 0
        svs.append(SourceVertex(f"v{v}", genus, level, ct, f"d{v}"))
        tvs.append(TargetVertex(f"d{v}", level))
    ses = []
    tes = []
    for i, (u, v) in enumerate(tree):
        ses.append(SourceEdge(f"e{i}", f"v{u}", f"v{v}", slope[i], f"f{i}"))
        tes.append(TargetEdge(f"f{i}", f"d{u}", f"d{v}"))
    marks = [None] * A.b
    for wi, idxs in enumerate(assignment):
        for mi in idxs:
            marks[mi] = Marking(f"v{t + wi}", 2, 0, f"q{mi}")
    return LevelGraph(A.p, A.regime, svs, ses, tvs, tes, marks)
