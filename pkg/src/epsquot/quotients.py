"""Combinatorial quasi-stable quotients and their epsilon-stability.

A :class:`CombQuotient` records only what the stability conditions see: the
dual graph of the curve, the genus, markings and quotient degree of each
component, and the lengths of the torsion points on each component.
"""

from __future__ import annotations

import itertools
import json
import math
import warnings
from bisect import bisect_left
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

from .errors import SizeLimitError

__all__ = [
    "Component",
    "CombQuotient",
    "StabilityVerdict",
    "WallSet",
    "INF",
    "total_degree",
    "is_epsilon_stable",
    "is_mop_stable",
    "walls",
    "chamber_index",
    "vdim",
    "genus0_dim",
    "embedding_h0",
    "contract",
    "plucker",
    "enumerate_quotients",
    "nonempty_threshold",
    "VeryAmplenessWarning",
]

INF = math.inf


@dataclass(frozen=True, order=True)
class Component:
    genus: int = 0
    markings: tuple[int, ...] = ()
    degree: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "markings", tuple(sorted(self.markings)))
        object.__setattr__(self, "torsion", tuple(sorted(self.torsion)))
        if self.genus < 0 or self.degree < 0:
            raise ValueError("genus and degree must be nonnegative")
        if any(t <= 0 for t in self.torsion):
            raise ValueError("torsion lengths must be positive")
        if sum(self.torsion) > self.degree:
            raise ValueError(
                f"torsion {list(self.torsion)} exceeds the quotient degree {self.degree} of its component"
            )


@dataclass(frozen=True)
class CombQuotient:
    """Decorated dual graph of a quasi-stable quotient of type ``(r, n, d)``."""

    vertices: tuple[Component, ...]
    edges: tuple[tuple[int, int], ...] = ()
    rank: tuple[int, int] = (1, 2)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        edges = tuple(sorted(tuple(sorted(e)) for e in self.edges))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "rank", tuple(self.rank))
        nv = len(self.vertices)
        if nv == 0:
            raise ValueError("a quotient needs at least one component")
        r, n = self.rank
        if not 1 <= r < n:
            raise ValueError(f"rank data must satisfy 1 <= r < n, got {self.rank}")
        for a, b in edges:
            if not (0 <= a < nv and 0 <= b < nv):
                raise ValueError(f"edge {(a, b)} refers to a missing component")
        if not _connected(nv, edges):
            raise ValueError("dual graph is not connected")
        labels = [p for v in self.vertices for p in v.markings]
        if sorted(labels) != list(range(1, len(labels) + 1)):
            raise ValueError(f"marking labels must be exactly 1..m, got {sorted(labels)}")
        self._set_special()

    def _set_special(self):
        ends = [0] * len(self.vertices)
        for a, b in self.edges:
            ends[a] += 1
            ends[b] += 1
        special = tuple(e + len(v.markings) for e, v in zip(ends, self.vertices))
        object.__setattr__(self, "_special", special)
        # (2g - 2 + special points, degree, longest torsion) per component, for the stability test
        object.__setattr__(
            self,
            "_stab",
            tuple(
                (2 * v.genus - 2 + s, v.degree, v.torsion[-1] if v.torsion else 0)
                for v, s in zip(self.vertices, special)
            ),
        )

    @classmethod
    def _trusted(cls, vertices: tuple, edges: tuple, rank: tuple) -> CombQuotient:
        """Skip validation for data that is valid by construction (sorted, connected, labelled)."""
        q = object.__new__(cls)
        object.__setattr__(q, "vertices", vertices)
        object.__setattr__(q, "edges", edges)
        object.__setattr__(q, "rank", rank)
        q._set_special()
        return q

    @cached_property
    def genus(self) -> int:
        return sum(v.genus for v in self.vertices) + len(self.edges) - len(self.vertices) + 1

    @cached_property
    def n_markings(self) -> int:
        return sum(len(v.markings) for v in self.vertices)

    @cached_property
    def degree(self) -> int:
        return sum(v.degree for v in self.vertices)

    def edge_ends(self, i: int) -> int:
        """Node preimages on component ``i``; a loop counts twice."""
        return self._special[i] - len(self.vertices[i].markings)

    def special_points(self, i: int) -> int:
        return self._special[i]

    def with_rank(self, r: int, n: int) -> CombQuotient:
        return replace(self, rank=(r, n))

    def canonical(self) -> CombQuotient:
        """Isomorphic copy with canonically ordered components."""
        best = None
        nv = len(self.vertices)
        for perm in itertools.permutations(range(nv)):
            # perm[new] = old
            inv = [0] * nv
            for new, old in enumerate(perm):
                inv[old] = new
            verts = tuple(self.vertices[old] for old in perm)
            edges = tuple(sorted(tuple(sorted((inv[a], inv[b]))) for a, b in self.edges))
            key = (verts, edges)
            if best is None or key < best:
                best = key
        return CombQuotient(best[0], best[1], self.rank)

    def to_dict(self) -> dict:
        return {
            "vertices": [
                {
                    "genus": v.genus,
                    "markings": list(v.markings),
                    "degree": v.degree,
                    "torsion": list(v.torsion),
                }
                for v in self.vertices
            ],
            "edges": [list(e) for e in self.edges],
            "rank": list(self.rank),
        }

    @classmethod
    def from_dict(cls, data: dict) -> CombQuotient:
        try:
            verts = [
                Component(
                    genus=int(v["genus"]),
                    markings=tuple(int(p) for p in v.get("markings", [])),
                    degree=int(v["degree"]),
                    torsion=tuple(int(t) for t in v.get("torsion", [])),
                )
                for v in data["vertices"]
            ]
            edges = [tuple(int(x) for x in e) for e in data.get("edges", [])]
            rank = tuple(int(x) for x in data.get("rank", [1, 2]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed quotient data: {exc}") from exc
        if any(len(e) != 2 for e in edges) or len(rank) != 2:
            raise ValueError("edges must be pairs and rank must be [r, n]")
        return cls(tuple(verts), tuple(edges), rank)

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def loads(cls, text: str) -> CombQuotient:
        return cls.from_dict(json.loads(text))


def _connected(nv: int, edges) -> bool:
    seen = {0}
    stack = [0]
    adj: dict[int, list[int]] = {i: [] for i in range(nv)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == nv


def total_degree(q: CombQuotient) -> int:
    return q.degree


class StabilityVerdict:
    """Truthy iff stable; ``reason`` names the first violated condition."""

    __slots__ = ("stable", "_detail")

    def __init__(self, stable: bool, detail=None):
        self.stable = stable
        self._detail = detail

    def __bool__(self):
        return self.stable

    def __repr__(self):
        return f"StabilityVerdict({self.stable}, {self.reason!r})"

    @property
    def reason(self) -> str:
        if self.stable:
            return "stable"
        kind, i, v, s, eps = self._detail
        if kind == "ample":
            return (
                f"component {i} (genus {v.genus}, {s} special points, degree {v.degree}): "
                f"2g-2+s+eps*b = {2 * v.genus - 2 + s + eps * v.degree} <= 0"
            )
        length = v.torsion[-1]
        return f"component {i}: torsion point of length {length} has eps*length = {eps * length} > 1"


_STABLE = StabilityVerdict(True)


def is_epsilon_stable(q: CombQuotient, eps) -> StabilityVerdict:
    """Ampleness of ``omega(markings) (x) det(Q)^eps`` plus the torsion bound."""
    if not isinstance(eps, Fraction):
        eps = Fraction(eps)
    num, den = eps.numerator, eps.denominator
    if num <= 0:
        raise ValueError("epsilon must be positive")
    for i, (k, b, longest) in enumerate(q._stab):
        # integer form of 2g - 2 + s + eps*b > 0 and eps*length <= 1
        if k * den + num * b <= 0:
            return StabilityVerdict(False, ("ample", i, q.vertices[i], q._special[i], eps))
        if longest * num > den:
            return StabilityVerdict(False, ("torsion", i, q.vertices[i], q._special[i], eps))
    return _STABLE


def is_mop_stable(q: CombQuotient) -> bool:
    """Stability in the limit ``eps -> 0+``: ample for every positive epsilon."""
    for i, v in enumerate(q.vertices):
        k = 2 * v.genus - 2 + q.special_points(i)
        if k < 0 or (k == 0 and v.degree == 0):
            return False
    return True


@dataclass(frozen=True)
class WallSet:
    g: int
    m: int
    d: int
    walls: tuple = field(default=())

    @property
    def finite(self) -> tuple[Fraction, ...]:
        return tuple(w for w in self.walls if w != INF)

    def chambers(self) -> list[tuple[Fraction, Fraction | float]]:
        """Right-closed intervals ``(lower, upper]`` in increasing order."""
        lows = (Fraction(0),) + tuple(self.walls[:-1])
        return list(zip(lows, self.walls))

    def format(self) -> str:
        return " ".join("inf" if w == INF else str(w) for w in self.walls)


def walls(g: int, m: int, d: int) -> WallSet:
    """Critical values of epsilon for ``Q^eps_{g,m}(G(r,n), d)``."""
    if d <= 0:
        raise ValueError("d must be a positive integer")
    if (g, m) != (0, 0):
        ws = [Fraction(1, d - i + 1) for i in range(1, d + 1)]
    elif d == 1:
        ws = [Fraction(2)]
    else:
        dp = d // 2
        if d % 2:
            ws = [Fraction(2, d)] + [Fraction(1, dp - i + 2) for i in range(2, dp + 2)]
        else:
            ws = [Fraction(1, dp - i + 1) for i in range(1, dp + 1)]
    return WallSet(g, m, d, tuple(ws) + (INF,))


def chamber_index(ws: WallSet, eps) -> int:
    """1-based ``i`` with ``eps`` in ``(eps_{i-1}, eps_i]``."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    return bisect_left(list(ws.walls), eps) + 1


def vdim(g: int, m: int, r: int, n: int, d: int) -> int:
    # r = n is allowed: the target is a point and only the torsion of Q moves
    if not 1 <= r <= n:
        raise ValueError("need 1 <= r <= n")
    return n * d + r * (n - r) * (1 - g) + 3 * g - 3 + m


def genus0_dim(m: int, r: int, n: int, d: int) -> int:
    if not 1 <= r <= n:
        raise ValueError("need 1 <= r <= n")
    return n * d + r * (n - r) + m - 3


class VeryAmplenessWarning(UserWarning):
    """The embedding line bundle is only known to be very ample for k >= 5."""


def embedding_h0(g: int, m: int, d: int, l: int, k: int) -> int:
    """``h^0`` of the k-th power of the polarisation used to embed the curves."""
    if l <= 0:
        raise ValueError("l must be positive")
    if k < 5:
        warnings.warn(f"k = {k} < 5: formula evaluated but very-ampleness is not guaranteed", VeryAmplenessWarning)
    return 1 - g + k * l * (2 * g - 2) + k * d + m


def nonempty_threshold(g: int, m: int, d: int) -> Fraction:
    """Largest epsilon at which the moduli space is still empty (0 if never)."""
    return Fraction(*_threshold(g, m, d))


def _threshold(g: int, m: int, d: int) -> tuple[int, int]:
    if (g, m) == (0, 0):
        return 2, d
    if (g, m) == (0, 1):
        return 1, d
    return 0, 1


def _contract_tails(q: CombQuotient, k: int) -> CombQuotient:
    nv = len(q.vertices)
    # a rational tail of degree k: genus 0, one special point (the node), no markings
    tails = [
        i
        for i, (v, (kk, b, _)) in enumerate(zip(q.vertices, q._stab))
        if kk == -1 and b == k and not v.markings and nv > 1
    ]
    if not tails:
        return q
    tail_set = set(tails)
    verts = [list((v.genus, v.markings, v.degree, list(v.torsion))) for v in q.vertices]
    for t in tails:
        (a, b), = [e for e in q.edges if t in e]
        host = b if a == t else a
        if host in tail_set:
            raise ValueError("two rational tails meet each other; contraction would empty the curve")
        verts[host][2] += k
        verts[host][3].append(k)
    keep = [i for i in range(nv) if i not in tail_set]
    index = {old: new for new, old in enumerate(keep)}
    new_edges = tuple((index[a], index[b]) for a, b in q.edges if a not in tail_set and b not in tail_set)
    new_verts = tuple(Component(verts[i][0], verts[i][1], verts[i][2], tuple(verts[i][3])) for i in keep)
    # deleting leaves keeps the graph connected and the relabelling is monotone
    return CombQuotient._trusted(new_verts, new_edges, q.rank)


def contract(q: CombQuotient, eps, eps_to) -> CombQuotient:
    """Image of ``q`` under the contraction morphism from epsilon to a smaller epsilon.

    Walls ``1/k`` with ``eps_to <= 1/k < eps`` are crossed from the top down;
    at each one, every genus-0 rational tail of quotient degree ``k`` is
    removed and replaced by a torsion point of length ``k`` on the component
    it was attached to.
    """
    if not isinstance(eps, Fraction) or not isinstance(eps_to, Fraction):
        eps, eps_to = Fraction(eps), Fraction(eps_to)
    if q.rank[0] != 1:
        raise ValueError(f"contraction is only defined for r = 1, got r = {q.rank[0]}")
    a, b = eps.numerator, eps.denominator
    c, e = eps_to.numerator, eps_to.denominator
    # integer comparisons; Fraction ones dominate the cost in exhaustive checks
    if c <= 0 or a * e < c * b:
        raise ValueError("need eps >= eps_to > 0")
    if not is_epsilon_stable(q, eps):
        raise ValueError(f"input quotient is not {eps}-stable")
    d = q.degree
    t_num, t_den = _threshold(q.genus, q.n_markings, d)
    if c * t_den <= t_num * e:
        raise ValueError(f"target epsilon {eps_to} lies in the empty range for (g, m, d) = "
                         f"({q.genus}, {q.n_markings}, {d})")
    # the wall 1/k is crossed when eps_to <= 1/k < eps
    low = b // a + 1
    high = min(d, e // c)
    out = q
    for k in range(low, high + 1):
        out = _contract_tails(out, k)
    return out


def plucker(q: CombQuotient) -> CombQuotient:
    r, n = q.rank
    return q.with_rank(1, math.comb(n, r))


# --- enumeration ---------------------------------------------------------------


def _partitions(total: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    if max_part is None:
        max_part = total
    if total == 0:
        yield ()
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def _torsion_choices(b: int) -> list[tuple[int, ...]]:
    return [tuple(sorted(p)) for s in range(b + 1) for p in _partitions(s)]


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _graph_shapes(nv: int, ne: int) -> list[tuple[tuple[tuple[int, int], ...], list[tuple[int, ...]]]]:
    """Connected multigraphs with loops up to isomorphism, with their automorphisms."""
    pairs = [(a, b) for a in range(nv) for b in range(a, nv)]
    perms = list(itertools.permutations(range(nv)))
    seen = set()
    shapes = []
    for combo in itertools.combinations_with_replacement(pairs, ne):
        if not _connected(nv, combo):
            continue
        images = []
        for p in perms:
            images.append(tuple(sorted(tuple(sorted((p[a], p[b]))) for a, b in combo)))
        key = min(images)
        if key in seen:
            continue
        seen.add(key)
        auts = [p for p, img in zip(perms, images) if img == combo]
        shapes.append((combo, auts))
    return shapes


def enumerate_quotients(
    g: int,
    m: int,
    d: int,
    max_vertices: int,
    rank: tuple[int, int] = (1, 2),
    limit: int = 200_000,
) -> list[CombQuotient]:
    """All decorated dual graphs of total genus ``g``, ``m`` markings and degree ``d``.

    One representative per isomorphism class, in a deterministic order.
    Raises :class:`SizeLimitError` once more than ``limit`` classes appear.
    """
    if min(g, m, d) < 0 or max_vertices < 1:
        raise ValueError("g, m, d must be nonnegative and max_vertices positive")
    if max_vertices > 6 or g > 4 or d > 8 or m > 4:
        raise SizeLimitError(
            f"enumeration bounds too large (g={g}, m={m}, d={d}, max_vertices={max_vertices}); "
            "limits are g<=4, m<=4, d<=8, max_vertices<=6"
        )
    torsion_cache = {b: _torsion_choices(b) for b in range(d + 1)}
    rank = tuple(rank)
    if not 1 <= rank[0] < rank[1]:
        raise ValueError(f"rank data must satisfy 1 <= r < n, got {rank}")
    out: list[CombQuotient] = []
    for nv in range(1, max_vertices + 1):
        for h1 in range(g + 1):
            ne = nv - 1 + h1
            for edges, auts in _graph_shapes(nv, ne):
                for deco in _decorations(nv, g - h1, m, d, torsion_cache):
                    if len(auts) > 1:
                        # keep only the lexicographically smallest member of the orbit
                        if any(tuple(deco[p.index(i)] for i in range(nv)) < deco for p in auts):
                            continue
                    out.append(CombQuotient._trusted(deco, edges, rank))
                    if len(out) > limit:
                        raise SizeLimitError(f"more than {limit} quotients for (g, m, d) = ({g}, {m}, {d})")
    return out


def _decorations(nv, genus_total, m, d, torsion_cache) -> Iterator[tuple[Component, ...]]:
    for genera in _compositions(genus_total, nv):
        for owners in itertools.product(range(nv), repeat=m):
            marks = [tuple(j + 1 for j in range(m) if owners[j] == i) for i in range(nv)]
            for degs in _compositions(d, nv):
                choices = [
                    [Component(genera[i], marks[i], degs[i], t) for t in torsion_cache[degs[i]]] for i in range(nv)
                ]
                yield from itertools.product(*choices)


def canonical_key(q: CombQuotient):
    c = q.canonical()
    return (c.vertices, c.edges, c.rank)


def count_by_relabeling(qs: Sequence[CombQuotient]) -> int:
    return len({canonical_key(q) for q in qs})
