"""Polytopes of invariant states in reduced coordinates.

Reduced coordinates are ``(alpha_0, ..., alpha_{2j-1})``; ``alpha_2j`` is
fixed by unit trace.  Halfspaces are stored as ``normal . x <= offset``.

Vertices are enumerated combinatorially (every ``dim``-subset of bounding
hyperplanes is intersected and kept when feasible).  Up to three dimensions
this runs exactly over :class:`~rotstate.exact.Surd`; higher dimensions use
floats with a ``1e-10`` merge radius.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .errors import DomainError, UnsupportedError
from .exact import Surd
from .invariant import _check_n, norm_weights, theta_matrix

__all__ = [
    "Halfspace",
    "Polytope",
    "theta_affine_map",
    "simplex_S",
    "image_under_theta",
    "intersect",
    "ppt_polytope",
    "separable_polytope",
    "fixed_point_set",
    "export",
    "from_json",
]

FLOAT_TOL = 1e-10
EXACT_MAX_DIM = 3


@dataclass(frozen=True)
class Halfspace:
    """The set ``normal . x <= offset``."""

    normal: tuple
    offset: object

    def slack(self, x):
        """``offset - normal . x`` (non-negative inside)."""
        return self.offset - _dot(self.normal, x)


@dataclass(frozen=True)
class Polytope:
    dim: int
    vertices: tuple
    halfspaces: tuple

    @property
    def exact(self) -> bool:
        items = [c for v in self.vertices for c in v] + [h.offset for h in self.halfspaces]
        return bool(items) and all(isinstance(c, Surd) for c in items)

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def affine_dim(self) -> int:
        """Dimension of the affine hull of the vertices (-1 when empty)."""
        if not self.vertices:
            return -1
        pts = _float_array(self.vertices, self.dim)
        if len(pts) == 1:
            return 0
        return int(np.linalg.matrix_rank(pts[1:] - pts[0], tol=1e-9))

    def float_vertices(self) -> np.ndarray:
        return _float_array(self.vertices, self.dim)

    def contains(self, x, tol: float = FLOAT_TOL) -> bool:
        for h in self.halfspaces:
            s = h.slack(x)
            if isinstance(s, Surd):
                if s.sign() < 0:
                    return False
            elif float(s) < -tol:
                return False
        return True

    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def to_float(self) -> "Polytope":
        return Polytope(
            self.dim,
            tuple(tuple(float(c) for c in v) for v in self.vertices),
            tuple(Halfspace(tuple(float(c) for c in h.normal), float(h.offset)) for h in self.halfspaces),
        )


def _dot(a, b):
    if a and isinstance(a[0], Surd) and b and isinstance(b[0], Surd):
        return sum((x * y for x, y in zip(a, b)), Surd())
    return float(sum(float(x) * float(y) for x, y in zip(a, b)))


def _float_array(points, dim) -> np.ndarray:
    return np.array([[float(c) for c in p] for p in points], dtype=float).reshape(len(points), dim)


# --- reduced coordinates and the theta map -------------------------------


@lru_cache(maxsize=None)
def _theta_affine_exact(n: int):
    theta = theta_matrix(n)
    w = norm_weights(n)
    d = n - 1
    last = w[d]
    A = tuple(tuple(theta.surd(J, K) - theta.surd(J, d) * w[K] / last for K in range(d)) for J in range(d))
    b = tuple(theta.surd(J, d) / last for J in range(d))
    return A, b


def theta_affine_map(n: int, exact: bool = True):
    """``(A, b)`` such that partial time reversal acts as ``x -> A x + b``."""
    n = _check_n(n)
    A, b = _theta_affine_exact(n)
    if exact:
        return A, b
    return np.array([[float(x) for x in r] for r in A]), np.array([float(x) for x in b])


def _apply_affine(A, b, x):
    if isinstance(A, np.ndarray):
        return tuple(float(v) for v in A @ np.array([float(c) for c in x]) + b)
    return tuple(_dot(row, x) + bi for row, bi in zip(A, b))


# --- vertex enumeration --------------------------------------------------


def _solve_exact(rows, rhs):
    m = len(rows)
    aug = [list(r) + [c] for r, c in zip(rows, rhs)]
    for col in range(m):
        piv = next((r for r in range(col, m) if not aug[r][col].is_zero()), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(m):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(aug[r][m] for r in range(m))


def _independent_exact(eqs):
    """Drop exactly redundant equalities (keeps a maximal independent subset)."""
    kept, basis = [], []
    for h in eqs:
        row = list(h.normal)
        for piv, b in basis:
            if not row[piv].is_zero():
                f = row[piv] / b[piv]
                row = [x - f * y for x, y in zip(row, b)]
        piv = next((i for i, x in enumerate(row) if not x.is_zero()), None)
        if piv is not None:
            basis.append((piv, row))
            kept.append(h)
    return kept


def _independent_float(eqs):
    kept = []
    for h in eqs:
        trial = kept + [h]
        M = np.array([[float(c) for c in g.normal] for g in trial])
        if np.linalg.matrix_rank(M, tol=1e-9) == len(trial):
            kept.append(h)
    return kept


def _enumerate(dim: int, ineqs, eqs, exact: bool):
    eqs = _independent_exact(eqs) if exact else _independent_float(eqs)
    free = dim - len(eqs)
    found: list[tuple] = []
    seen = set()
    if free < 0:
        return found
    for combo in combinations(ineqs, free):
        active = list(eqs) + list(combo)
        if exact:
            x = _solve_exact([list(h.normal) for h in active], [h.offset for h in active])
            if x is None:
                continue
            if all(h.slack(x).sign() >= 0 for h in ineqs) and all(h.slack(x).is_zero() for h in eqs):
                if x not in seen:
                    seen.add(x)
                    found.append(x)
        else:
            M = np.array([[float(c) for c in h.normal] for h in active]).reshape(dim, dim)
            if dim and np.linalg.matrix_rank(M, tol=1e-9) < dim:
                continue
            x = np.linalg.solve(M, np.array([float(h.offset) for h in active])) if dim else np.zeros(0)
            if all(h.slack(tuple(x)) >= -FLOAT_TOL for h in ineqs) and all(
                abs(h.slack(tuple(x))) <= 1e-9 for h in eqs
            ):
                if not any(np.max(np.abs(x - np.array(y)), initial=0.0) < FLOAT_TOL for y in found):
                    x = np.where(np.abs(x) < 1e-13, 0.0, x) + 0.0
                    found.append(tuple(float(c) for c in x))
    return found


def _facets(dim: int, vertices, halfspaces):
    """Halfspaces supporting a (dim-1)-face, deduplicated by their tight vertex set."""
    if dim == 0:
        return []
    pts = _float_array(vertices, dim)
    out, seen = [], set()
    for h in halfspaces:
        tight = tuple(i for i, v in enumerate(vertices) if _is_tight(h, v))
        if len(tight) < dim or tight in seen:
            continue
        sub = pts[list(tight)]
        rank = np.linalg.matrix_rank(sub[1:] - sub[0], tol=1e-9) if len(sub) > 1 else 0
        if rank == dim - 1:
            seen.add(tight)
            out.append(h)
    return out


def _is_tight(h: Halfspace, v) -> bool:
    s = h.slack(v)
    if isinstance(s, Surd):
        return s.is_zero()
    return abs(float(s)) <= 1e-9


def _build(dim: int, ineqs, eqs=(), exact: bool = True) -> Polytope:
    verts = _enumerate(dim, list(ineqs), list(eqs), exact)
    halfspaces = list(ineqs)
    for h in eqs:
        halfspaces += [h, Halfspace(tuple(-c for c in h.normal), -h.offset)]
    poly = Polytope(dim, tuple(verts), tuple(halfspaces))
    if verts and not eqs and poly.affine_dim == dim:
        poly = Polytope(dim, poly.vertices, tuple(_facets(dim, verts, ineqs)))
    return poly


# --- the state-space polytopes -------------------------------------------


def _simplex_halfspaces(n: int, exact: bool):
    d = n - 1
    w = norm_weights(n)
    one = Surd.rational(1) if exact else 1.0
    zero = Surd() if exact else 0.0
    conv = (lambda x: x) if exact else float
    hs = []
    for J in range(d):
        normal = tuple((-one if K == J else zero) for K in range(d))
        hs.append(Halfspace(normal, zero))
    hs.append(Halfspace(tuple(conv(w[K]) for K in range(d)), one))
    return hs


def simplex_S(n: int, exact: bool | None = None) -> Polytope:
    """The invariant states: ``alpha_J >= 0`` and ``sum_{J<2j} sqrt(2J+1)/N alpha_J <= 1``."""
    n = _check_n(n)
    if exact is None:
        exact = n <= 5
    d = n - 1
    w = norm_weights(n)
    zero = Surd() if exact else 0.0
    verts = [tuple(zero for _ in range(d))]
    for J in range(d):
        top = w[J].inverse() if exact else 1.0 / float(w[J])
        verts.append(tuple(top if K == J else zero for K in range(d)))
    return Polytope(d, tuple(verts), tuple(_simplex_halfspaces(n, exact)))


def image_under_theta(p: Polytope, n: int) -> Polytope:
    """Image of ``p`` under partial time reversal (an affine involution)."""
    n = _check_n(n)
    if p.dim != n - 1:
        raise DomainError(f"polytope has dimension {p.dim}, expected {n - 1} for n={n}")
    exact = p.exact
    A, b = theta_affine_map(n, exact=exact)
    verts = tuple(_apply_affine(A, b, v) for v in p.vertices)
    # y = A x + b with A^2 = I, so x = A y + b and h.x <= o becomes (A^T h).y <= o - h.b
    hs = []
    for h in p.halfspaces:
        if exact:
            normal = tuple(sum((h.normal[J] * A[J][K] for J in range(p.dim)), Surd()) for K in range(p.dim))
            offset = h.offset - _dot(h.normal, b)
        else:
            hn = np.array([float(c) for c in h.normal])
            normal = tuple(float(c) for c in A.T @ hn)
            offset = float(h.offset) - float(hn @ b)
        hs.append(Halfspace(normal, offset))
    return Polytope(p.dim, verts, tuple(hs))


def intersect(p: Polytope, q: Polytope) -> Polytope:
    """Intersection by halfspace union and vertex enumeration.

    Exact when both inputs are exact and ``dim <= 3``.  The result may have
    empty interior; check :attr:`Polytope.affine_dim`.
    """
    if p.dim != q.dim:
        raise DomainError(f"dimension mismatch: {p.dim} vs {q.dim}")
    exact = p.exact and q.exact and p.dim <= EXACT_MAX_DIM
    hs = list(p.halfspaces) + list(q.halfspaces)
    if not exact:
        hs = [Halfspace(tuple(float(c) for c in h.normal), float(h.offset)) for h in hs]
    return _build(p.dim, hs, exact=exact)


def ppt_polytope(n: int) -> Polytope:
    S = simplex_S(n)
    return intersect(S, image_under_theta(S, n))


def separable_polytope(n: int) -> Polytope:
    """Separable invariant states for ``n <= 4``."""
    n = _check_n(n)
    if n >= 5:
        raise UnsupportedError("the separable set is only known for n <= 4")
    Sp = ppt_polytope(n)
    if n < 4:
        return Sp
    # prism cut: alpha_0/sqrt(5) - alpha_2 <= 0
    cut = Halfspace((Surd.sqrt(5).inverse(), Surd(), Surd.rational(-1)), Surd())
    return _build(3, list(Sp.halfspaces) + [cut], exact=True)


def fixed_point_set(n: int) -> Polytope:
    """States left unchanged by partial time reversal (the +1 eigenspace within S)."""
    n = _check_n(n)
    d = n - 1
    exact = d <= EXACT_MAX_DIM
    A, b = theta_affine_map(n, exact=exact)
    eqs = []
    for J in range(d):
        if exact:
            normal = tuple(A[J][K] - (1 if J == K else 0) for K in range(d))
            eqs.append(Halfspace(normal, -b[J]))
        else:
            eqs.append(Halfspace(tuple(A[J] - np.eye(d)[J]), float(-b[J])))
    return _build(d, _simplex_halfspaces(n, exact), eqs, exact=exact)


# --- export --------------------------------------------------------------


def _coord_json(c):
    return c.to_json() if isinstance(c, Surd) else float(c)


def _coord_from_json(obj):
    if isinstance(obj, dict):
        return Surd.parse(obj["exact"])
    return float(obj)


def _off_faces(p: Polytope):
    pts = p.float_vertices()
    if p.affine_dim < 2:
        return []
    if p.dim == 2:
        return [_ccw(pts, list(range(len(pts))), None)]
    faces = []
    for h in _facets(3, p.vertices, p.halfspaces):
        idx = [i for i, v in enumerate(p.vertices) if _is_tight(h, v)]
        faces.append(_ccw(pts, idx, np.array([float(c) for c in h.normal])))
    return faces


def _ccw(pts, idx, normal):
    sub = pts[idx]
    c = sub.mean(axis=0)
    if normal is None:
        ang = [math.atan2(q[1] - c[1], q[0] - c[0]) for q in sub]
    else:
        u = sub[0] - c
        u = u / np.linalg.norm(u)
        w = np.cross(normal, u)
        ang = [math.atan2((q - c) @ w, (q - c) @ u) for q in sub]
    return [i for _, i in sorted(zip(ang, idx))]


def export(p: Polytope, fmt: str = "json") -> bytes:
    """Serialise to ``json``, ``off`` (mesh, dim <= 3) or ``csv`` (vertex rows)."""
    if fmt == "json":
        obj = {
            "schema": "rotstate/1",
            "dim": p.dim,
            "affine_dim": p.affine_dim,
            "vertices": [[_coord_json(c) for c in v] for v in p.vertices],
            "halfspaces": [
                {"normal": [_coord_json(c) for c in h.normal], "offset": _coord_json(h.offset)}
                for h in p.halfspaces
            ],
        }
        return (json.dumps(obj, indent=2) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        buf.write(",".join(f"x{i}" for i in range(p.dim)) + "\n")
        for v in p.vertices:
            buf.write(",".join(repr(float(c)) for c in v) + "\n")
        return buf.getvalue().encode()
    if fmt == "off":
        if p.dim > 3:
            raise UnsupportedError("OFF export needs dim <= 3")
        pts = p.float_vertices()
        faces = _off_faces(p)
        lines = ["OFF", f"{len(pts)} {len(faces)} 0"]
        for q in pts:
            padded = list(q) + [0.0] * (3 - p.dim)
            lines.append(" ".join(repr(float(x)) for x in padded))
        for f in faces:
            lines.append(" ".join(str(i) for i in [len(f)] + f))
        return ("\n".join(lines) + "\n").encode()
    raise UnsupportedError(f"unknown export format {fmt!r}")


def from_json(data) -> Polytope:
    obj = json.loads(data) if isinstance(data, (bytes, str)) else data
    dim = int(obj["dim"])
    verts = tuple(tuple(_coord_from_json(c) for c in v) for v in obj["vertices"])
    hs = tuple(
        Halfspace(tuple(_coord_from_json(c) for c in h["normal"]), _coord_from_json(h["offset"]))
        for h in obj["halfspaces"]
    )
    return Polytope(dim, verts, hs)
