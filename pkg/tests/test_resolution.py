"""The bimodule resolution: differentials, flattening, and the full audit."""

from fractions import Fraction

import pytest

from beilinson_hh.quiver import DownUpParams, Path, block_basis, hilbert_coeff
from beilinson_hh.resolution import (
    FlatComplex,
    Triple,
    build_d0,
    build_d1,
    build_d2,
    differential_terms,
    generators,
    triple_basis,
    verify_resolution,
)
from beilinson_hh.scalar import QuadScalar


def params(n, alpha, beta, d=None):
    return DownUpParams(n, alpha if isinstance(alpha, QuadScalar) else QuadScalar(alpha),
                        beta if isinstance(beta, QuadScalar) else QuadScalar(beta))


def test_generator_sets():
    p = params(2, 1, 1)
    assert [g.name for g in generators(0, p)] == [f"e{v}" for v in range(1, 7)]
    assert [g.name for g in generators(1, p)] == [
        "x1", "x2", "x3", "x4", "x5", "y1", "y2", "y3", "y4",
    ]
    assert [g.name for g in generators(2, p)] == ["f1", "f2", "g"]


def test_d0_is_multiplication():
    p = params(2, 1, 1)
    images = build_d0(p)
    assert images["e1"].coefficient(Path.stationary(1)) == 1
    flat = FlatComplex.build(p)
    # column of x1 (x) e2 (x) e2 triple under d0... pick the triple u=e1, h=e1, v=x1
    basis0 = flat.bases[0]
    x1 = Path(1, (p.x_arrow(1),))
    col = basis0.index(Triple(Path.stationary(1), generators(0, p)[0], x1))
    row = flat.lam_basis.index(x1)
    assert flat.d0.entry(row, col) == 1
    # u=x1, h=e2, v=x2 maps to x1.x2
    col = basis0.index(Triple(x1, generators(0, p)[1], Path(2, (p.x_arrow(2),))))
    row = flat.lam_basis.index(Path(1, (p.x_arrow(1), p.x_arrow(2))))
    assert flat.d0.entry(row, col) == 1


def test_d1_generator_images():
    p = params(2, 1, 1)
    images = build_d1(p)
    e = {g.name: g for g in generators(0, p)}
    x1 = Path(1, (p.x_arrow(1),))
    img = dict(images["x1"].items())
    assert img[Triple(Path.stationary(1), e["e1"], x1)] == 1
    assert img[Triple(x1, e["e2"], Path.stationary(2))] == QuadScalar(-1)
    assert len(img) == 2
    y1 = Path(1, (p.y_arrow(1),))
    img = dict(images["y1"].items())
    assert img[Triple(Path.stationary(1), e["e1"], y1)] == 1
    assert img[Triple(y1, e["e3"], Path.stationary(3))] == QuadScalar(-1)


def test_d2_generator_images():
    p = params(2, 1, 1)
    images = build_d2(p)
    arrows = {g.name: g for g in generators(1, p)}
    # coefficient of the x1 generator in the image of f1: e1 (x) (x2.y3 - alpha y2.x4)
    img = dict(images["f1"].items())
    e1 = Path.stationary(1)
    x2y3 = Path(2, (p.x_arrow(2), p.y_arrow(3)))
    y2x4 = Path(2, (p.y_arrow(2), p.x_arrow(4)))
    assert img[Triple(e1, arrows["x1"], x2y3)] == 1
    assert img[Triple(e1, arrows["x1"], y2x4)] == -p.alpha
    # coefficient of the y1 generator in the image of g: -beta e1 (x) y3.x5 - alpha e1 (x) x3.y4
    img = dict(images["g"].items())
    y3x5 = Path(3, (p.y_arrow(3), p.x_arrow(5)))
    x3y4 = Path(3, (p.x_arrow(3), p.y_arrow(4)))
    assert img[Triple(e1, arrows["y1"], y3x5)] == -p.beta
    assert img[Triple(e1, arrows["y1"], x3y4)] == -p.alpha


def test_differential_terms_have_positive_degree():
    for n in (1, 2, 3):
        p = params(n, 1, 1)
        for level in (1, 2):
            for name, terms in differential_terms(level, p).items():
                for _, left, _, right in terms:
                    assert left.degree + right.degree >= 1, (n, level, name)


def test_complex_property():
    p = params(2, 1, 1)
    flat = FlatComplex.build(p)
    assert (flat.d0 * flat.d1).is_zero()
    assert (flat.d1 * flat.d2).is_zero()


def test_triple_basis_dimension_formula():
    # dim P^level = sum over generators of (paths into source) * (paths out of target)
    for n in (1, 2, 3):
        p = params(n, 1, 1)
        for level in (0, 1, 2):
            expected = 0
            for g in generators(level, p):
                into = sum(hilbert_coeff(n, g.source - i) for i in range(1, g.source + 1))
                outof = sum(
                    hilbert_coeff(n, j - g.target) for j in range(g.target, 2 * n + 3)
                )
                expected += into * outof
            assert len(triple_basis(level, p)) == expected


@pytest.mark.parametrize(
    "n,alpha,beta",
    [
        (2, 0, 1),
        (3, 2, -1),
        (1, 1, 1),
        (1, 0, 1),
    ],
)
def test_verify_resolution_passes(n, alpha, beta):
    report = verify_resolution(params(n, alpha, beta))
    assert report.complex_ok
    assert report.exact
    assert report.euler_ok
    assert report.minimal
    assert report.ok
    assert not report.failures


def test_verify_resolution_with_quadratic_point():
    p = DownUpParams(2, QuadScalar(1), QuadScalar(Fraction(-3, 2), Fraction(1, 2), 5))
    report = verify_resolution(p)
    assert report.ok


def test_euler_identity_n2():
    report = verify_resolution(params(2, 1, 1))
    dims = report.dims
    assert dims["Lambda"] == 41
    assert dims["P0"] - dims["P1"] + dims["P2"] == 41


def test_report_json_shape():
    report = verify_resolution(params(1, 2, -1))
    data = report.to_json_dict()
    assert set(data) >= {"n", "alpha", "beta", "dims", "ranks", "exact", "minimal"}
    assert data["exact"] is True
    assert data["dims"]["Lambda"] == data["dims"]["P0"] - data["dims"]["P1"] + data["dims"]["P2"]
