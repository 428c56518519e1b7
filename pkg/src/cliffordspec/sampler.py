"""Locating the joint spectrum: indicator fields on grids, isosurface
extraction, 4D slicing, and file export.

Three indicator fields are supported:

* ``det-sign``   - det(L_lambda), real; its zero-level contour misses
  even-multiplicity crossings by design (that failure mode is preserved
  deliberately as a regression target);
* ``sigma-min``  - smallest |eigenvalue| of L_lambda, contoured at a small
  positive threshold, an outer approximation of the zero set;
* ``pfaffian-sign`` - the archetypal (Pfaffian) value on self-dual
  triples, which restores sign changes where the determinant is a square.

Isosurfaces use marching tetrahedra on the Kuhn 6-tetrahedron cube split:
the split tiles space consistently, has no ambiguous cases, and closed
level sets yield closed meshes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .cliffordrep import GammaRep, rep_for
from .errors import ContractError, SymmetryError
from .invariants import _conjugation_unitary, require_self_dual_triple
from .linalg import _pfaffian_parlett_reid, operator_norm
from .localizer import build
from .matrices import HermitianTuple, kron
from .multipoly import MultiPoly, polar_radial_coefficients
from .parallel import ordered_chunk_map

DET_SIGN = "det-sign"
SIGMA_MIN = "sigma-min"
PFAFFIAN_SIGN = "pfaffian-sign"
INDICATORS = (DET_SIGN, SIGMA_MIN, PFAFFIAN_SIGN)

SIGMA_MIN_LEVEL_FACTOR = 1e-2  # default isolevel: 1e-2 * ||L_0||
DEGENERATE_AREA = 1e-12
_CHUNK = 4096


@dataclass(frozen=True)
class AxisSpec:
    index: int
    lo: float
    hi: float
    count: int

    def __post_init__(self):
        if self.count < 2:
            raise ContractError("axis needs at least 2 samples")
        if not self.lo < self.hi:
            raise ContractError("axis needs lo < hi")

    def nodes(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.count)


@dataclass(frozen=True)
class GridSpec:
    axes: tuple
    fixed: tuple = ()  # ((lambda_index, value), ...)

    @staticmethod
    def cube(d: int, lo: float, hi: float, count: int, fixed: dict | None = None) -> "GridSpec":
        fixed = dict(fixed or {})
        axes = tuple(
            AxisSpec(i, lo, hi, count) for i in range(d) if i not in fixed
        )
        return GridSpec(axes, tuple(sorted(fixed.items())))

    def validate_for(self, d: int) -> None:
        indices = [a.index for a in self.axes] + [i for i, _ in self.fixed]
        if sorted(indices) != list(range(d)):
            raise ContractError(
                f"grid axes plus fixed coordinates must cover lambda 0..{d - 1}"
            )


@dataclass(frozen=True, eq=False)
class SpectrumGrid:
    spec: GridSpec
    indicator: str
    values: np.ndarray  # shape = axis counts, in spec.axes order
    reference_norm: float  # ||L_0|| of the sampled tuple


@dataclass(frozen=True, eq=False)
class SpectrumMesh:
    vertices: np.ndarray  # (V, 3)
    triangles: np.ndarray  # (T, 3), 0-based
    channel: np.ndarray | None = None  # optional per-vertex scalar
    axis_indices: tuple = (0, 1, 2)

    @property
    def is_closed(self) -> bool:
        """Every edge borders exactly two triangles."""
        if len(self.triangles) == 0:
            return True
        counts: dict = {}
        for tri in self.triangles:
            for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])):
                key = (min(a, b), max(a, b))
                counts[key] = counts.get(key, 0) + 1
        return all(c == 2 for c in counts.values())


def _lambda_grid(spec: GridSpec, d: int) -> np.ndarray:
    """All grid nodes as an (N, d) array, row-major in axis order."""
    axis_nodes = [a.nodes() for a in spec.axes]
    mesh = np.array(list(itertools.product(*axis_nodes)))
    out = np.zeros((mesh.shape[0], d))
    for value_col, axis in enumerate(spec.axes):
        out[:, axis.index] = mesh[:, value_col]
    for i, v in spec.fixed:
        out[:, i] = v
    return out


def _field_det_sign(l0, parts, lam):
    mats = l0[None, :, :] - np.tensordot(lam, parts, axes=(1, 0))
    return np.linalg.det(mats).real


def _field_sigma_min(l0, parts, lam):
    mats = l0[None, :, :] - np.tensordot(lam, parts, axes=(1, 0))
    eigs = np.linalg.eigvalsh(mats)
    return np.min(np.abs(eigs), axis=1)


def sample(
    tuple_: HermitianTuple,
    spec: GridSpec,
    indicator: str,
    rep: GammaRep | None = None,
    threads: int | None = None,
) -> SpectrumGrid:
    """Evaluate an indicator field over a grid of lambda values."""
    if indicator not in INDICATORS:
        raise ContractError(f"indicator must be one of {INDICATORS}")
    ft = tuple_.as_float()
    d = ft.d
    spec.validate_for(d)
    if rep is None:
        rep = rep_for(d)
    lam = _lambda_grid(spec, d)
    gammas = rep.as_float()
    eye = np.eye(ft.n, dtype=complex)
    l0 = build(ft, rep, [0.0] * d).matrix
    parts = np.stack([kron(eye, g) for g in gammas])
    ref = operator_norm(l0)

    if indicator == PFAFFIAN_SIGN:
        require_self_dual_triple(ft)
        if rep.d != 3:
            raise ContractError("the pfaffian indicator needs the d = 3 localizer")
        q = _conjugation_unitary(ft.n, "float")
        qh = q.conj().T
        a0 = 0.5 * (qh @ l0 @ q)
        bj = [0.5 * (qh @ parts[j] @ q) for j in range(d)]
        # conjugation must produce a skew matrix for every lambda, which
        # reduces to skewness of the constant part and each lambda slope
        for m in (a0, *bj):
            scale = float(np.max(np.abs(m))) or 1.0
            if float(np.max(np.abs(m + m.T))) > 1e-10 * scale:
                raise SymmetryError(
                    "conjugated localizer is not skew-symmetric; "
                    "the pfaffian indicator needs the standard triple representation"
                )

        def run(chunk):
            out = np.empty(chunk.shape[0])
            for i, point in enumerate(chunk):
                skew = a0.copy()
                for j in range(d):
                    if point[j]:
                        skew = skew - point[j] * bj[j]
                out[i] = _pfaffian_parlett_reid(skew).real
            return out

    elif indicator == DET_SIGN:

        def run(chunk):
            return _field_det_sign(l0, parts, chunk)

    else:

        def run(chunk):
            return _field_sigma_min(l0, parts, chunk)

    chunks = [lam[i : i + _CHUNK] for i in range(0, lam.shape[0], _CHUNK)]
    pieces = ordered_chunk_map(run, chunks, threads)
    values = np.concatenate(pieces) if pieces else np.zeros(0)
    if not np.all(np.isfinite(values)):
        raise ArithmeticError("indicator field produced non-finite values")
    shape = tuple(a.count for a in spec.axes)
    return SpectrumGrid(spec, indicator, values.reshape(shape), ref)


def slice_4d(
    tuple_: HermitianTuple,
    spec: GridSpec,
    indicator: str,
    rep: GammaRep | None = None,
    threads: int | None = None,
) -> SpectrumGrid:
    """Sample a 3-axis slice of a 4-tuple's spectrum (one coordinate fixed)."""
    if tuple_.d != 4:
        raise ContractError("slicing needs a 4-tuple")
    if len(spec.axes) != 3 or len(spec.fixed) != 1:
        raise ContractError("a 4D slice needs exactly 3 sampled axes and 1 fixed")
    return sample(tuple_, spec, indicator, rep, threads)


# ---------------------------------------------------------------------------
# marching tetrahedra

# cube corners in (i, j, k) offsets; Kuhn split around the 0-6 diagonal
_CORNERS = np.array(
    [
        (0, 0, 0),
        (1, 0, 0),
        (1, 1, 0),
        (0, 1, 0),
        (0, 0, 1),
        (1, 0, 1),
        (1, 1, 1),
        (0, 1, 1),
    ]
)
_TETS = ((0, 1, 2, 6), (0, 2, 3, 6), (0, 3, 7, 6), (0, 7, 4, 6), (0, 4, 5, 6), (0, 5, 1, 6))


def default_level(grid: SpectrumGrid) -> float:
    if grid.indicator == SIGMA_MIN:
        return SIGMA_MIN_LEVEL_FACTOR * grid.reference_norm
    return 0.0


def extract_isosurface(grid: SpectrumGrid, level: float | None = None) -> SpectrumMesh:
    """Triangulate {field = level}.  An empty mesh is a valid result (the
    null plot); for sigma-min fields the default level is a small positive
    threshold since the field itself is nonnegative."""
    if len(grid.spec.axes) != 3:
        raise ContractError("isosurface extraction needs 3 sampled axes")
    if level is None:
        level = default_level(grid)
    vals = grid.values
    nx, ny, nz = vals.shape
    axes_nodes = [a.nodes() for a in grid.spec.axes]

    f = vals - level
    # candidate cubes: those whose corner values straddle 0
    stack = np.stack(
        [
            f[dx : nx - 1 + dx, dy : ny - 1 + dy, dz : nz - 1 + dz]
            for dx, dy, dz in _CORNERS
        ]
    )
    cmin = stack.min(axis=0)
    cmax = stack.max(axis=0)
    cand = np.argwhere((cmin <= 0.0) & (cmax > 0.0))

    verts: list = []
    vert_ids: dict = {}
    tris: list = []

    def node_flat(i, j, k):
        return (i * ny + j) * nz + k

    def edge_vertex(ca, cb, fa, fb):
        key_a = node_flat(*ca)
        key_b = node_flat(*cb)
        if key_a > key_b:
            key_a, key_b = key_b, key_a
            ca, cb = cb, ca
            fa, fb = fb, fa
        key = (key_a, key_b)
        hit = vert_ids.get(key)
        if hit is not None:
            return hit
        t = fa / (fa - fb)
        pos = tuple(
            axes_nodes[m][ca[m]] + t * (axes_nodes[m][cb[m]] - axes_nodes[m][ca[m]])
            for m in range(3)
        )
        vert_ids[key] = len(verts)
        verts.append(pos)
        return vert_ids[key]

    for ci, cj, ck in cand:
        corner_cells = [(ci + dx, cj + dy, ck + dz) for dx, dy, dz in _CORNERS]
        fvals = [f[c] for c in corner_cells]
        for tet in _TETS:
            pos_side = [fvals[t] > 0.0 for t in tet]
            n_pos = sum(pos_side)
            if n_pos in (0, 4):
                continue
            ins = [tet[m] for m in range(4) if pos_side[m]]
            outs = [tet[m] for m in range(4) if not pos_side[m]]

            def ev(a, b):
                return edge_vertex(
                    corner_cells[a], corner_cells[b], fvals[a], fvals[b]
                )

            if n_pos == 1 or n_pos == 3:
                lone, others = (
                    (ins[0], outs) if n_pos == 1 else (outs[0], ins)
                )
                tris.append(
                    (ev(lone, others[0]), ev(lone, others[1]), ev(lone, others[2]))
                )
            else:
                a, b = ins
                c, d = outs
                v_ac, v_ad = ev(a, c), ev(a, d)
                v_bc, v_bd = ev(b, c), ev(b, d)
                tris.append((v_ac, v_ad, v_bd))
                tris.append((v_ac, v_bd, v_bc))

    vertices = np.array(verts) if verts else np.zeros((0, 3))
    triangles = []
    for tri in tris:
        if len(set(tri)) < 3:
            continue
        p0, p1, p2 = vertices[list(tri)]
        area = 0.5 * np.linalg.norm(np.cross(p1 - p0, p2 - p0))
        if area > DEGENERATE_AREA:
            triangles.append(tri)
    triangles = np.array(triangles, dtype=int) if triangles else np.zeros((0, 3), dtype=int)

    channel = None
    if grid.spec.fixed:
        # carry the fixed coordinate (4D slices) as a per-vertex scalar
        channel = np.full(len(vertices), float(grid.spec.fixed[0][1]))
    axis_indices = tuple(a.index for a in grid.spec.axes)
    return SpectrumMesh(vertices, triangles, channel, axis_indices)


def mesh_topology(mesh: SpectrumMesh):
    """(Euler characteristic, connected component count) of a mesh.

    For clean sign-indicator contours this identifies the surface: a sphere
    has characteristic 2, a genus-g surface 2 - 2g.  Thin sigma-min shells
    below grid resolution do not produce meaningful numbers.
    """
    v_count = len(mesh.vertices)
    parent = list(range(v_count))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    edges = set()
    for tri in mesh.triangles:
        for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2])):
            edges.add((min(a, b), max(a, b)))
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    components = len({find(i) for i in range(v_count)})
    chi = v_count - len(edges) + len(mesh.triangles)
    return chi, components


# ---------------------------------------------------------------------------
# torus radius profile


def radial_section(poly: MultiPoly, theta: float, phi: float):
    """Real radial polynomial r -> Re p(r cos t, r sin t, r cos f, r sin f)
    and its derivative, as coefficient arrays."""
    coeffs = polar_radial_coefficients(poly, theta, phi).real
    deriv = coeffs[1:] * np.arange(1, len(coeffs))
    return coeffs, deriv


def _polyval(coeffs: np.ndarray, r: float) -> float:
    acc = 0.0
    for c in coeffs[::-1]:
        acc = acc * r + c
    return float(acc)


def torus_radius_profile(
    poly: MultiPoly,
    theta: float,
    phi: float,
    r_max: float = 2.0,
    residual_tol: float = 1e-10,
) -> float:
    """Radius where the polar-substituted real part crosses zero.

    `poly` is a reduced characteristic polynomial whose real part, on the
    equal-radius locus, is negative at r = 0 and increasing; bisection
    finds the unique root.  Raises if the bracket shows no sign change.
    """
    coeffs, _ = radial_section(poly, theta, phi)
    lo, hi = 0.0, float(r_max)
    f_lo = _polyval(coeffs, lo)
    f_hi = _polyval(coeffs, hi)
    if not (f_lo < 0.0 < f_hi):
        raise ArithmeticError(
            f"no sign change on [0, {r_max}]: f(0) = {f_lo:.3e}, f(r_max) = {f_hi:.3e}"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = _polyval(coeffs, mid)
        if abs(f_mid) <= residual_tol:
            return mid
        if f_mid < 0.0:
            lo = mid
        else:
            hi = mid
    raise ArithmeticError("bisection failed to reach the residual tolerance")


# ---------------------------------------------------------------------------
# export


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def export_mesh_obj(mesh: SpectrumMesh, path) -> None:
    """OBJ with 1-based faces; a per-vertex scalar channel, when present,
    is appended as a fourth value on each v line."""
    try:
        with open(path, "w") as fh:
            for i, v in enumerate(mesh.vertices):
                parts = ["v", _fmt(v[0]), _fmt(v[1]), _fmt(v[2])]
                if mesh.channel is not None:
                    parts.append(_fmt(mesh.channel[i]))
                fh.write(" ".join(parts) + "\n")
            for t in mesh.triangles:
                fh.write(f"f {t[0] + 1} {t[1] + 1} {t[2] + 1}\n")
    except OSError as exc:
        raise OSError(f"writing OBJ to {path}: {exc}") from exc


def export_grid_csv(grid: SpectrumGrid, path) -> None:
    """CSV of every node, row-major in axis order, 17 significant digits."""
    d = len(grid.spec.axes) + len(grid.spec.fixed)
    header = ",".join([f"l{i + 1}" for i in range(d)] + ["value"])
    axis_nodes = [a.nodes() for a in grid.spec.axes]
    flat = grid.values.reshape(-1)
    try:
        with open(path, "w") as fh:
            fh.write(header + "\n")
            for row_idx, combo in enumerate(itertools.product(*axis_nodes)):
                lam = [0.0] * d
                for axis, value in zip(grid.spec.axes, combo):
                    lam[axis.index] = value
                for i, v in grid.spec.fixed:
                    lam[i] = v
                cells = [_fmt(v) for v in lam] + [_fmt(flat[row_idx])]
                fh.write(",".join(cells) + "\n")
    except OSError as exc:
        raise OSError(f"writing CSV to {path}: {exc}") from exc
