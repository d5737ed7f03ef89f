"""Torus-fixed loci of quotient spaces and the virtual localization sum.

Fixed loci are indexed by decorated graphs (:class:`FixedGraph`).  Numeric
evaluation covers projective targets (``r = 1``) with torsion-free vertices
of genus at most one, optionally twisted by a sum of line bundles ``O(k)``.

Weight conventions: ``O(1)`` has weight ``lambda_i`` at the i-th fixed point,
so ``T_{p_i}`` has weights ``lambda_i - lambda_k`` (``k != i``) and ``O(k)``
has weight ``k*lambda_i``.  A degree-``delta`` cover of the line through
``p_i, p_j`` has tangent weight ``(lambda_i - lambda_j)/delta`` at the point
over ``p_i``.
"""

from __future__ import annotations

import itertools
import json
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator, Sequence

from .arith import MultiPoly, RationalFunction, linear
from .errors import ConsistencyError, SizeLimitError, UnsupportedScopeError
from .hassett import hodge_integral
from .quotients import _compositions, _connected, vdim

__all__ = [
    "FixedVertex",
    "FixedEdge",
    "FixedGraph",
    "TwistSpec",
    "geometry",
    "enumerate_fixed_graphs",
    "validate_fixed_graph",
    "count_up_to_target_symmetry",
    "vertex_contribution",
    "edge_contribution",
    "graph_contribution",
    "localization_terms",
    "assemble_invariant",
]


@dataclass(frozen=True, order=True)
class FixedVertex:
    iota: tuple[int, ...]  # r-subset of {1..n}: the fixed point the vertex maps to
    genus: int = 0
    s: tuple[int, ...] = ()  # torsion degrees, one per entry of iota
    markings: tuple[int, ...] = ()

    @property
    def torsion_degree(self) -> int:
        return sum(self.s)


@dataclass(frozen=True, order=True)
class FixedEdge:
    ends: tuple[int, int]
    delta: int


@dataclass(frozen=True)
class FixedGraph:
    vertices: tuple[FixedVertex, ...]
    edges: tuple[FixedEdge, ...]
    rank: tuple[int, int]
    automorphisms: int = 1  # decorated graph automorphisms, edge permutations included

    @property
    def genus(self) -> int:
        return sum(v.genus for v in self.vertices) + len(self.edges) - len(self.vertices) + 1

    @property
    def degree(self) -> int:
        return sum(v.torsion_degree for v in self.vertices) + sum(e.delta for e in self.edges)

    @property
    def n_markings(self) -> int:
        return sum(len(v.markings) for v in self.vertices)

    def valence(self, i: int) -> int:
        return sum((e.ends[0] == i) + (e.ends[1] == i) for e in self.edges)

    def flags(self, i: int) -> list[tuple[FixedEdge, int]]:
        """``(edge, other end)`` for every edge at vertex ``i``."""
        out = []
        for e in self.edges:
            a, b = e.ends
            if a == i:
                out.append((e, b))
            elif b == i:
                out.append((e, a))
        return out

    def aut_factor(self) -> int:
        """``|Aut|`` used in the localization sum: graph automorphisms times all covering degrees."""
        out = self.automorphisms
        for e in self.edges:
            out *= e.delta
        return out

    def to_dict(self) -> dict:
        return {
            "vertices": [
                {"genus": v.genus, "markings": list(v.markings), "iota": list(v.iota), "s": list(v.s)}
                for v in self.vertices
            ],
            "edges": [list(e.ends) for e in self.edges],
            "delta": [e.delta for e in self.edges],
            "rank": list(self.rank),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


# --- geometries ----------------------------------------------------------------


@dataclass(frozen=True)
class TwistSpec:
    """Projective space ``P^{n-1}`` with the integrand ``e`` of a sum of ``O(k)`` pushforwards.

    Negative ``k`` contributes ``e(R^1 pi_* f^*O(k))``, positive ``k``
    contributes ``e(pi_* f^*O(k))``.
    """

    name: str
    n: int
    twists: tuple[int, ...] = ()

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need n >= 2")
        if any(k == 0 for k in self.twists):
            raise ValueError("twist degrees must be nonzero")

    def rank(self, g: int, d: int) -> int:
        """Rank of the twisting bundle on the moduli space."""
        total = 0
        for k in self.twists:
            chi = k * d + 1 - g
            total += -chi if k < 0 else chi
        return total


_GEOMETRIES = {
    "conifold": TwistSpec("conifold", 2, (-1, -1)),
    "local-p2": TwistSpec("local-p2", 3, (-3,)),
    "quintic": TwistSpec("quintic", 5, (5,)),
}


def geometry(name: str) -> TwistSpec:
    """Look up ``conifold``, ``local-p2``, ``quintic`` or ``projective(n)``."""
    if name in _GEOMETRIES:
        return _GEOMETRIES[name]
    m = re.fullmatch(r"projective\((\d+)\)", name.strip())
    if m:
        return TwistSpec(f"projective({m.group(1)})", int(m.group(1)))
    raise ValueError(f"unknown geometry {name!r}; expected conifold, local-p2, quintic or projective(n)")


# --- enumeration ---------------------------------------------------------------


def _loopless_shapes(nv: int, ne: int):
    """Connected loopless multigraphs up to isomorphism, with their vertex automorphisms."""
    pairs = [(a, b) for a in range(nv) for b in range(a + 1, nv)]
    if nv == 1:
        return [((), [tuple([0])])] if ne == 0 else []
    perms = list(itertools.permutations(range(nv)))
    seen = set()
    shapes = []
    for combo in itertools.combinations_with_replacement(pairs, ne):
        if not _connected(nv, combo):
            continue
        images = [tuple(sorted(tuple(sorted((p[a], p[b]))) for a, b in combo)) for p in perms]
        key = min(images)
        if key in seen:
            continue
        seen.add(key)
        shapes.append((combo, [p for p, img in zip(perms, images) if img == combo]))
    return shapes


def _ample(eps: Fraction, graph_vertices, edges, valence) -> bool:
    def w(i):
        v = graph_vertices[i]
        return min(0, 2 * v.genus - 2 + eps * v.torsion_degree + valence[i] + len(v.markings))

    return all(eps * delta + w(a) + w(b) > 0 for (a, b), delta in edges)


def _decorated_key(verts, edges, perm):
    # perm[old] = new
    nv = len(verts)
    inv = [0] * nv
    for old, new in enumerate(perm):
        inv[new] = old
    new_verts = tuple(verts[inv[k]] for k in range(nv))
    new_edges = tuple(sorted((tuple(sorted((perm[a], perm[b]))), delta) for (a, b), delta in edges))
    return new_verts, new_edges


def enumerate_fixed_graphs(
    g: int, m: int, d: int, r: int, n: int, eps, limit: int = 100_000
) -> list[FixedGraph]:
    """Every fixed-locus graph of ``Q^eps_{g,m}(G(r,n), d)``, one per isomorphism class."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    if not 1 <= r < n:
        raise ValueError("need 1 <= r < n")
    if min(g, m, d) < 0:
        raise ValueError("g, m, d must be nonnegative")
    if d > 8 or g > 3 or m > 4 or n > 8:
        raise SizeLimitError(f"fixed-graph enumeration bounds exceeded (g={g}, m={m}, d={d}, n={n})")
    points = list(itertools.combinations(range(1, n + 1), r))
    allow_torsion = eps <= 1
    out: list[FixedGraph] = []
    seen = set()
    for nv in range(1, d + 2):
        for h1 in range(g + 1):
            ne = nv - 1 + h1
            if ne > d or (nv > 1 and ne == 0):
                continue
            for edges, auts in _loopless_shapes(nv, ne):
                val = [sum((a == i) + (b == i) for a, b in edges) for i in range(nv)]
                for graph in _decorate(nv, edges, val, g - h1, m, d, r, points, allow_torsion, eps):
                    verts, dec_edges = graph
                    base = _decorated_key(verts, dec_edges, tuple(range(nv)))
                    keys = [_decorated_key(verts, dec_edges, p) for p in auts]
                    # parallel edges with permuted degrees also repeat a graph
                    if min(keys) != base or base in seen:
                        continue
                    seen.add(base)
                    stab = sum(1 for k in keys if k == base)
                    mult = 1
                    for _, grp in itertools.groupby(sorted(dec_edges)):
                        mult *= factorial(len(list(grp)))
                    out.append(
                        FixedGraph(
                            base[0],
                            tuple(FixedEdge(ends, delta) for ends, delta in base[1]),
                            (r, n),
                            stab * mult,
                        )
                    )
                    if len(out) > limit:
                        raise SizeLimitError(f"more than {limit} fixed graphs")
    return out


def _decorate(nv, edges, val, genus_total, m, d, r, points, allow_torsion, eps) -> Iterator:
    ne = len(edges)
    for iota in itertools.product(points, repeat=nv):
        if any(len(set(iota[a]) & set(iota[b])) != r - 1 for a, b in edges):
            continue
        for genera in _compositions(genus_total, nv):
            for owners in itertools.product(range(nv), repeat=m):
                marks = [tuple(j + 1 for j in range(m) if owners[j] == i) for i in range(nv)]
                torsion_total = range(d + 1) if allow_torsion else (0,)
                for tt in torsion_total:
                    if d - tt < ne or (ne == 0 and d - tt != 0):
                        continue
                    for deltas in (_compositions(d - tt - ne, ne) if ne else [()]):
                        deltas = tuple(x + 1 for x in deltas)
                        for per_vertex in _compositions(tt, nv):
                            for s in itertools.product(*(list(_compositions(t, r)) for t in per_vertex)):
                                verts = tuple(
                                    FixedVertex(iota[i], genera[i], s[i], marks[i]) for i in range(nv)
                                )
                                dec_edges = tuple(zip(edges, deltas))
                                if nv == 1:
                                    v = verts[0]
                                    if 2 * v.genus - 2 + len(v.markings) + eps * v.torsion_degree <= 0:
                                        continue
                                elif not _ample(eps, verts, dec_edges, val):
                                    continue
                                yield verts, dec_edges


def validate_fixed_graph(fg: FixedGraph, g: int, m: int, d: int, eps) -> list[str]:
    """Violated fixed-graph conditions (empty if ``fg`` is valid)."""
    eps = Fraction(eps)
    r, n = fg.rank
    problems = []
    if fg.genus != g:
        problems.append(f"genus {fg.genus} != {g}")
    if fg.degree != d:
        problems.append(f"degree {fg.degree} != {d}")
    labels = sorted(p for v in fg.vertices for p in v.markings)
    if labels != list(range(1, m + 1)):
        problems.append(f"markings {labels} are not 1..{m}")
    if not _connected(len(fg.vertices), [e.ends for e in fg.edges]):
        problems.append("graph is disconnected")
    for i, v in enumerate(fg.vertices):
        if len(v.iota) != r or len(set(v.iota)) != r or not all(1 <= x <= n for x in v.iota):
            problems.append(f"vertex {i}: {v.iota} is not an {r}-subset of 1..{n}")
        if len(v.s) != r or any(x < 0 for x in v.s):
            problems.append(f"vertex {i}: torsion degrees {v.s} malformed")
        if eps > 1 and v.torsion_degree:
            problems.append(f"vertex {i}: torsion at eps = {eps} > 1")
    for e in fg.edges:
        a, b = e.ends
        if a == b:
            problems.append(f"self-edge at vertex {a}")
            continue
        if e.delta < 1:
            problems.append(f"edge {e.ends}: covering degree {e.delta} < 1")
        if len(set(fg.vertices[a].iota) & set(fg.vertices[b].iota)) != r - 1:
            problems.append(f"edge {e.ends} does not join adjacent fixed points")
    val = [fg.valence(i) for i in range(len(fg.vertices))]
    if fg.edges and not _ample(eps, fg.vertices, [(e.ends, e.delta) for e in fg.edges], val):
        problems.append("ampleness inequality fails on some edge")
    return problems


def _graph_key(fg: FixedGraph, relabel=None):
    nv = len(fg.vertices)
    verts = fg.vertices
    if relabel is not None:
        verts = tuple(
            FixedVertex(tuple(sorted(relabel[x - 1] for x in v.iota)), v.genus, v.s, v.markings) for v in verts
        )
    edges = [(e.ends, e.delta) for e in fg.edges]
    return min(_decorated_key(verts, edges, p) for p in itertools.permutations(range(nv)))


def count_up_to_target_symmetry(graphs: Sequence[FixedGraph]) -> int:
    """Number of classes when fixed points related by a permutation of coordinates are identified.

    Torsion degrees ``s`` are carried along with ``iota`` only for ``r = 1``,
    where the relabelling acts trivially on them.
    """
    classes = set()
    for fg in graphs:
        r, n = fg.rank
        if r != 1 and any(v.torsion_degree for v in fg.vertices):
            raise UnsupportedScopeError("symmetry classes with torsion are computed for r = 1 only")
        keys = [_graph_key(fg, [x + 1 for x in perm]) for perm in itertools.permutations(range(n))]
        classes.add(min(keys))
    return len(classes)


# --- contributions -------------------------------------------------------------


def _check_scope(fg: FixedGraph):
    r, _ = fg.rank
    if r != 1:
        raise UnsupportedScopeError(f"numeric localization needs r = 1, got r = {r}")
    for v in fg.vertices:
        if v.torsion_degree:
            raise UnsupportedScopeError("numeric localization needs torsion-free vertices (s = 0)")
        if v.genus > 1:
            raise UnsupportedScopeError(f"vertex of genus {v.genus}: only genus 0 and 1 vertices are supported")


def _rf(p: MultiPoly) -> RationalFunction:
    return RationalFunction.from_poly(p)


def _interp(i: int, j: int, a: int, b: int, delta: int, n: int) -> MultiPoly:
    """``(a*lambda_i + b*lambda_j)/delta``."""
    return linear({i: Fraction(a, delta), j: Fraction(b, delta)}, n) if i != j else linear({i: Fraction(a + b, delta)}, n)


def edge_contribution(fg: FixedGraph, e: FixedEdge, twist: TwistSpec | None = None) -> RationalFunction:
    """Inverse Euler class of the moving deformations of the edge map, times the twist on the edge.

    The ``1/delta`` deck factor is applied during assembly.
    """
    _check_scope(fg)
    n = fg.rank[1]
    (i,), (j,) = fg.vertices[e.ends[0]].iota, fg.vertices[e.ends[1]].iota
    delta = e.delta
    out = RationalFunction(n, 1)
    den = []
    for a in range(-delta, delta + 1):
        if a:
            den.append(linear({i: Fraction(a, delta), j: Fraction(-a, delta)}, n))
    for k in range(1, n + 1):
        if k in (i, j):
            continue
        for a in range(delta + 1):
            den.append(_interp(i, j, a, delta - a, delta, n) - linear({k: 1}, n))
    out = RationalFunction(n, 1, None, _multiset(den))
    for k in (twist.twists if twist else ()):
        if k < 0:
            rng = range(k * delta + 1, 0)
        else:
            rng = range(0, k * delta + 1)
        num = [_interp(i, j, a, k * delta - a, delta, n) for a in rng]
        out = out * RationalFunction(n, 1, _multiset(num))
    return out


def _multiset(polys) -> dict:
    out: dict = {}
    for p in polys:
        out[p] = out.get(p, 0) + 1
    return out


def vertex_contribution(fg: FixedGraph, index: int, twist: TwistSpec | None = None) -> RationalFunction:
    """Vertex factor: Hodge and node terms, flag denominators integrated over the vertex moduli."""
    _check_scope(fg)
    n = fg.rank[1]
    v = fg.vertices[index]
    (i,) = v.iota
    flags = fg.flags(index)
    val = len(flags)
    mv = len(v.markings)
    twists = twist.twists if twist else ()
    if v.genus > 0 and any(k > 0 for k in twists):
        raise UnsupportedScopeError("positive twists are only evaluated in genus 0")
    omegas = []
    for e, other in flags:
        (j,) = fg.vertices[other].iota
        omegas.append(linear({i: Fraction(1, e.delta), j: Fraction(-1, e.delta)}, n))
    tangent = [linear({i: 1, k: -1}, n) for k in range(1, n + 1) if k != i]
    twist_w = [(k, linear({i: k}, n)) for k in twists]

    # twist factors at the point
    out = RationalFunction(n, 1)
    for k, w in twist_w:
        power = val - 1 if k < 0 else 1 - val
        out = out * _rf(w) ** power

    if v.genus == 0 and val + mv < 3:
        if val == 1 and mv == 0:
            return out * _rf(omegas[0])
        if val == 1 and mv == 1:
            return out
        if val == 2 and mv == 0:
            tan = RationalFunction(n, 1, _multiset(tangent))
            return out * tan / _rf(omegas[0] + omegas[1])
        raise ValueError(f"vertex {index} has no edges")  # pragma: no cover - excluded by connectivity

    # stable vertex: e(E^dual (x) T)/e(T) * e(T)^val * twist Hodge terms, then integrate
    # the Hodge bundle has rank genus, so genus-0 vertices carry no (x - h) factors
    hodge_linear = tangent + [w for k, w in twist_w if k < 0] if v.genus == 1 else []
    c0 = RationalFunction(n, 1, _multiset(hodge_linear))
    c1 = RationalFunction(n, 0)
    for x in hodge_linear:
        c1 = c1 - c0 / _rf(x)
    out = out * RationalFunction(n, 1, _multiset(tangent)) ** (val - 1)
    dim = 3 * v.genus - 3 + val + mv
    total = RationalFunction(n, 0)
    for p, cp in ((0, c0), (1, c1)):
        if cp.is_zero() or dim - p < 0:
            continue
        for a in _compositions(dim - p, val):
            integral = hodge_integral(v.genus, tuple(a) + (0,) * mv, p)
            if not integral:
                continue
            term = cp * integral
            for x, ak in zip(omegas, a):
                term = term / _rf(x) ** (ak + 1)
            total = total + term
    return out * total


def graph_contribution(fg: FixedGraph, twist: TwistSpec | None = None) -> RationalFunction:
    """``prod Cont(v) * prod Cont(e) / |Aut|`` for one fixed graph."""
    n = fg.rank[1]
    out = RationalFunction(n, Fraction(1, fg.aut_factor()))
    for i in range(len(fg.vertices)):
        out = out * vertex_contribution(fg, i, twist)
    for e in fg.edges:
        out = out * edge_contribution(fg, e, twist)
    return out


def localization_terms(g: int, m: int, d: int, eps, twist: TwistSpec) -> list[tuple[FixedGraph, RationalFunction]]:
    """Fixed graphs and their contributions; each summand is checked for homogeneity."""
    graphs = enumerate_fixed_graphs(g, m, d, 1, twist.n, eps)
    expected = twist.rank(g, d) - vdim(g, m, 1, twist.n, d)
    out = []
    for fg in graphs:
        c = graph_contribution(fg, twist)
        if not c.is_zero():
            deg = c.homogeneous_degree()
            if deg != expected:
                raise ConsistencyError(
                    f"graph contribution has lambda-degree {deg}, expected {expected}: {fg.to_dict()}"
                )
        out.append((fg, c))
    return out


def _sample_points(n: int, tries: int = 50, seed: int = 20240611) -> Iterator[tuple[int, ...]]:
    rng = random.Random(seed)
    for _ in range(tries):
        yield tuple(rng.randint(-10**6, 10**6) for _ in range(n))


def assemble_invariant(g: int, m: int, d: int, eps, twist: TwistSpec, n: int | None = None, points: int = 3) -> Fraction:
    """Exact value of the twisted localization sum.

    The sum is evaluated at ``points`` generic integer lambda-vectors; the
    values must agree, otherwise :class:`ConsistencyError` is raised.
    """
    if n is not None and n != twist.n:
        raise ValueError(f"geometry {twist.name} lives on P^{twist.n - 1}, not n = {n}")
    if any(k > 0 for k in twist.twists) and g > 0:
        raise UnsupportedScopeError("positive twists are only evaluated in genus 0")
    expected = twist.rank(g, d) - vdim(g, m, 1, twist.n, d)
    if expected > 0:
        raise UnsupportedScopeError(
            f"integrand degree exceeds the virtual dimension by {expected}; the answer is not a number"
        )
    terms = localization_terms(g, m, d, eps, twist)
    values = []
    for pt in _sample_points(twist.n):
        try:
            values.append(sum((c.substitute(pt) for _, c in terms), Fraction(0)))
        except ZeroDivisionError:
            continue
        if len(values) == points:
            break
    if len(values) < points:
        raise ConsistencyError("could not find enough lambda-vectors avoiding the poles")
    if len(set(values)) != 1:
        raise ConsistencyError(f"localization sum depends on lambda: values {values}")
    value = values[0]
    if expected < 0 and value != 0:
        raise ConsistencyError(f"negative-degree localization sum is nonzero ({value})")
    return value
