from fractions import Fraction

import numpy as np
import pytest

from cliffordspec.charpoly import reduced_char_poly
from cliffordspec.errors import ContractError
from cliffordspec.gallery import (
    direct_sum_sphere,
    gamma_tuple,
    even_odd,
    pauli,
    self_dual_path,
    torus_quadruple,
    torus_triple,
)
from cliffordspec.linalg import operator_norm, smallest_eigen_magnitude
from cliffordspec.localizer import build
from cliffordspec.sampler import (
    DET_SIGN,
    GridSpec,
    PFAFFIAN_SIGN,
    SIGMA_MIN,
    AxisSpec,
    export_grid_csv,
    export_mesh_obj,
    extract_isosurface,
    radial_section,
    sample,
    slice_4d,
    torus_radius_profile,
    SpectrumMesh,
)


def test_grid_spec_validation():
    with pytest.raises(ContractError):
        AxisSpec(0, 0.0, 1.0, 1)  # too few samples
    with pytest.raises(ContractError):
        AxisSpec(0, 1.0, -1.0, 5)  # inverted range
    spec = GridSpec.cube(3, -1, 1, 5)
    spec.validate_for(3)
    with pytest.raises(ContractError):
        spec.validate_for(4)  # missing a coordinate


def test_sample_fields_basic():
    spec = GridSpec.cube(3, -2, 2, 9)
    g = sample(pauli(), spec, SIGMA_MIN)
    assert g.values.shape == (9, 9, 9)
    assert np.all(g.values >= 0)
    assert g.reference_norm == pytest.approx(3.0)
    gd = sample(pauli(), spec, DET_SIGN)
    # center node has det = -3, corner nodes are far outside (positive)
    assert gd.values[4, 4, 4] == pytest.approx(-3.0, rel=1e-9)


def test_sigma_min_zeros_near_unit_sphere():
    spec = GridSpec.cube(3, -2, 2, 41)
    g = sample(pauli(), spec, SIGMA_MIN)
    nodes = np.linspace(-2, 2, 41)
    close = g.values <= 1e-2
    idx = np.argwhere(close)
    radii = np.linalg.norm(nodes[idx], axis=1)
    cell = 4.0 / 40
    assert np.all(np.abs(radii - 1.0) <= 3 * cell)


def test_pauli_mesh_radii():
    spec = GridSpec.cube(3, -1.5, 1.5, 41)
    mesh = extract_isosurface(sample(pauli(), spec, DET_SIGN), 0.0)
    assert len(mesh.triangles) > 0
    assert mesh.is_closed
    radii = np.linalg.norm(mesh.vertices, axis=1)
    assert np.max(np.abs(radii - 1.0)) <= 0.05


def test_null_plot_and_sigma_min_fix():
    spec = GridSpec.cube(3, -1.5, 1.5, 41)
    bad = direct_sum_sphere(0)
    assert len(extract_isosurface(sample(bad, spec, DET_SIGN), 0.0).triangles) == 0
    mesh = extract_isosurface(sample(bad, spec, SIGMA_MIN))
    radii = np.linalg.norm(mesh.vertices, axis=1)
    assert len(mesh.triangles) > 0
    assert radii.min() >= 0.93 and radii.max() <= 1.07


def test_pfaffian_indicator_restores_sphere():
    spec = GridSpec.cube(3, -1.5, 1.5, 21)
    g = sample(self_dual_path(0), spec, PFAFFIAN_SIGN)
    mesh = extract_isosurface(g, 0.0)
    assert len(mesh.triangles) > 0
    radii = np.linalg.norm(mesh.vertices, axis=1)
    assert np.max(np.abs(radii - 1.0)) <= 0.1


def test_pfaffian_indicator_requires_self_dual():
    spec = GridSpec.cube(3, -1, 1, 3)
    from cliffordspec.errors import SymmetryError

    with pytest.raises(SymmetryError):
        sample(pauli(), spec, PFAFFIAN_SIGN)


def test_pfaffian_squared_matches_det(rng):
    spec = GridSpec.cube(3, -1.2, 1.2, 5)
    t = self_dual_path(0)
    gp = sample(t, spec, PFAFFIAN_SIGN)
    gd = sample(t, spec, DET_SIGN)
    scale = np.maximum(1.0, np.abs(gd.values))
    assert np.max(np.abs(gp.values**2 - gd.values) / scale) <= 1e-9


def test_far_sphere_is_spectrum_free():
    t = pauli()
    norm0 = operator_norm(build(t.as_float()).matrix)
    rng = np.random.default_rng(4)
    for _ in range(20):
        u = rng.normal(size=3)
        u /= np.linalg.norm(u)
        lam = 1.5 * norm0 * u
        assert smallest_eigen_magnitude(build(t.as_float(), lam=lam).matrix) > 0


def test_slice_4d_even_odd():
    t = even_odd(Fraction(3, 2))
    spec = GridSpec.cube(4, -2.5, 2.5, 15, fixed={3: 0.0})
    g = slice_4d(t, spec, SIGMA_MIN)
    assert g.values.shape == (15, 15, 15)
    assert g.values.min() <= 0.05  # the z = 0 slice meets the spectrum


def test_slice_4d_gamma_point():
    spec = GridSpec.cube(4, -1.0, 1.0, 9, fixed={0: 0.0})
    g = slice_4d(gamma_tuple(), spec, SIGMA_MIN)
    nodes = np.linspace(-1, 1, 9)
    hits = np.argwhere(g.values <= 1e-8)
    assert len(hits) == 1
    assert np.allclose(nodes[hits[0]], 0)


def test_slice_needs_three_axes():
    with pytest.raises(ContractError):
        slice_4d(gamma_tuple(), GridSpec.cube(4, -1, 1, 5), SIGMA_MIN)


def test_mesh_channel_carries_fixed_coordinate():
    t = even_odd(0)
    spec = GridSpec.cube(4, -2.5, 2.5, 11, fixed={3: 0.0})
    mesh = extract_isosurface(slice_4d(t, spec, SIGMA_MIN))
    assert mesh.channel is not None
    assert np.all(mesh.channel == 0.0)
    assert mesh.axis_indices == (0, 1, 2)


def test_torus_radius_profile():
    p3 = reduced_char_poly(torus_quadruple(3))
    r = torus_radius_profile(p3, 0.0, 0.0)
    # independent univariate oracle: roots of 8r^6 + 12r^4 - 4r^3 + 3r^2 - 1
    roots = np.roots([8, 0, 12, -4, 3, 0, -1])
    real_roots = sorted(
        rt.real for rt in roots if abs(rt.imag) < 1e-9 and rt.real > 0
    )
    assert len(real_roots) == 1
    assert r == pytest.approx(real_roots[0], abs=1e-9)
    coeffs, _ = radial_section(p3, 0.0, 0.0)
    assert abs(sum(c * r**k for k, c in enumerate(coeffs))) <= 1e-10


def test_torus_radius_profile_no_bracket():
    p = reduced_char_poly(torus_quadruple(3))
    with pytest.raises(ArithmeticError):
        torus_radius_profile(p, 0.0, 0.0, r_max=0.1)


def test_export_obj(tmp_path):
    empty = SpectrumMesh(np.zeros((0, 3)), np.zeros((0, 3), dtype=int))
    path = tmp_path / "empty.obj"
    export_mesh_obj(empty, path)
    assert path.read_text() == ""
    one = SpectrumMesh(
        np.array([[0.0, 0, 0], [1, 0, 0], [0, 1, 0]]), np.array([[0, 1, 2]])
    )
    path = tmp_path / "one.obj"
    export_mesh_obj(one, path)
    lines = path.read_text().strip().split("\n")
    assert len([l for l in lines if l.startswith("v ")]) == 3
    assert lines[-1] == "f 1 2 3"


def test_export_csv(tmp_path):
    spec = GridSpec.cube(3, -1, 1, 11)
    g = sample(pauli(), spec, SIGMA_MIN)
    path = tmp_path / "grid.csv"
    export_grid_csv(g, path)
    lines = path.read_text().strip().split("\n")
    assert lines[0] == "l1,l2,l3,value"
    assert len(lines) == 1 + 11**3


def test_exports_deterministic_across_threads(tmp_path):
    spec = GridSpec.cube(3, -1, 1, 9)
    out = []
    for threads in (1, 4):
        g = sample(pauli(), spec, SIGMA_MIN, threads=threads)
        path = tmp_path / f"grid_{threads}.csv"
        export_grid_csv(g, path)
        out.append(path.read_bytes())
    assert out[0] == out[1]


def test_torus_slice_vertices_on_reduced_zero_set():
    t = torus_quadruple(4)
    p = reduced_char_poly(t)
    spec = GridSpec.cube(4, -1.2, 1.2, 25, fixed={3: 0.0})
    mesh = extract_isosurface(slice_4d(t, spec, SIGMA_MIN))
    assert len(mesh.triangles) > 0
    # extracted vertices sit near the zero set of the reduced polynomial
    worst = max(
        abs(p.evaluate([v[0], v[1], v[2], 0.0]))
        / max(1.0, p.evaluate_abs([v[0], v[1], v[2], 0.0]))
        for v in mesh.vertices
    )
    assert worst <= 0.15


def test_polar_real_part_matches_tabulated_profile():
    p = reduced_char_poly(torus_quadruple(4))
    from cliffordspec.multipoly import substitute_polar

    f = substitute_polar(p)
    rng = np.random.default_rng(6)
    for _ in range(25):
        r = rng.uniform(0, 1.6)
        th, ph = rng.uniform(0, 2 * np.pi, 2)
        want = (
            r**4 * (-2 * np.cos(4 * ph) - 2 * np.cos(4 * th) + 20)
            + 16 * r**8
            + 32 * r**6
            - 4
        )
        got = f(r, th, ph)
        assert abs(got.real - want) <= 1e-9 * max(1.0, abs(want))
        assert abs(got.imag) <= 1e-9 * max(1.0, abs(want))


def test_vertex_sigma_min_within_lipschitz_bound():
    spec = GridSpec.cube(3, -1.5, 1.5, 21)
    g = sample(pauli(), spec, SIGMA_MIN)
    mesh = extract_isosurface(g)
    level = 1e-2 * g.reference_norm
    t = pauli().as_float()
    cell = 3.0 / 20
    bound = level + 2 * cell * np.sqrt(3) * np.sqrt(3)  # level + 2 diam ||grad||
    for v in mesh.vertices[::7]:
        s = smallest_eigen_magnitude(build(t, lam=v).matrix)
        assert s <= bound


def test_mesh_obj_deterministic_across_threads(tmp_path):
    spec = GridSpec.cube(3, -1.4, 1.4, 15)
    blobs = []
    for threads in (1, 3):
        g = sample(pauli(), spec, DET_SIGN, threads=threads)
        mesh = extract_isosurface(g, 0.0)
        path = tmp_path / f"m{threads}.obj"
        export_mesh_obj(mesh, path)
        blobs.append(path.read_bytes())
    assert blobs[0] == blobs[1]


def test_torus_triple_has_nonempty_spectrum():
    t = torus_triple(5, 0.9, 0.4)
    spec = GridSpec.cube(3, -2.0, 2.0, 15)
    g = sample(t, spec, SIGMA_MIN)
    assert g.values.min() <= 0.2


def test_direct_sum_det_field_never_negative():
    spec = GridSpec.cube(3, -1.5, 1.5, 21)
    g = sample(direct_sum_sphere(0), spec, DET_SIGN)
    scale = float(np.max(np.abs(g.values)))
    assert g.values.min() >= -1e-9 * scale  # a perfect square up to roundoff


def test_mesh_topology_sphere_and_genus_two():
    from cliffordspec.gallery import sykora_two_torus
    from cliffordspec.sampler import mesh_topology

    sphere = extract_isosurface(
        sample(pauli(), GridSpec.cube(3, -1.5, 1.5, 41), DET_SIGN), 0.0
    )
    assert mesh_topology(sphere) == (2, 1)

    spec = GridSpec(
        (AxisSpec(0, -1.0, 3.0, 51), AxisSpec(1, -1.3, 1.3, 33), AxisSpec(2, -0.6, 4.6, 61))
    )
    two_holed = extract_isosurface(sample(sykora_two_torus(1), spec, DET_SIGN), 0.0)
    assert two_holed.is_closed
    chi, comps = mesh_topology(two_holed)
    assert (chi, comps) == (-2, 1)  # genus 2: the two-holed torus

    pf_sphere = extract_isosurface(
        sample(self_dual_path(0), GridSpec.cube(3, -1.5, 1.5, 41), PFAFFIAN_SIGN), 0.0
    )
    assert mesh_topology(pf_sphere) == (2, 1)
