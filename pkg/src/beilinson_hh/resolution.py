"""The minimal projective bimodule resolution 0 -> P2 -> P1 -> P0 -> A -> 0.

P^i is the direct sum, over a generator set G^i (stationary paths, arrows,
relations), of the bimodules A s(h) (x) t(h) A.  The differentials send each
generator to a Leibniz-style expansion of its underlying element over the
lower generators.  Everything is flattened to exact scalar matrices over
bases of triples (left path, generator, right path) so that being a
resolution is checked by plain ranks.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import Matrix
from .quiver import (
    AlgebraElement,
    DownUpParams,
    Path,
    block_basis,
    algebra_dimension,
    lambda_basis,
    multiply,
    relations,
)
from .scalar import QuadScalar

__all__ = [
    "BimoduleGenerator",
    "Triple",
    "BimoduleElement",
    "generators",
    "differential_terms",
    "triple_basis",
    "build_d0",
    "build_d1",
    "build_d2",
    "FlatComplex",
    "ResolutionReport",
    "verify_resolution",
]


@dataclass(frozen=True)
class BimoduleGenerator:
    """A summand marker of P^level: carries the source/target of its element."""

    level: int
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Triple:
    """Basis element u (x)_h v of P^level: u ends at s(h), v starts at t(h)."""

    left: Path
    gen: BimoduleGenerator
    right: Path


def generators(level: int, p: DownUpParams) -> list[BimoduleGenerator]:
    """G^0 = stationary paths, G^1 = arrows, G^2 = relations."""
    if level == 0:
        return [BimoduleGenerator(0, f"e{v}", v, v) for v in p.vertices()]
    if level == 1:
        return [BimoduleGenerator(1, str(a), a.source, a.target) for a in p.arrows()]
    if level == 2:
        return [BimoduleGenerator(2, r.name, r.source, r.target) for r in relations(p)]
    raise ValueError("resolution levels are 0, 1, 2")


class BimoduleElement:
    """An element of P^level as a combination of triples, with the bimodule action."""

    __slots__ = ("params", "level", "_coeffs")

    def __init__(self, params: DownUpParams, level: int, coeffs=None):
        self.params = params
        self.level = level
        self._coeffs: dict[Triple, QuadScalar] = {}
        if coeffs:
            for t, c in dict(coeffs).items():
                if c:
                    self._coeffs[t] = c

    @classmethod
    def generator(cls, params: DownUpParams, gen: BimoduleGenerator) -> "BimoduleElement":
        t = Triple(Path.stationary(gen.source), gen, Path.stationary(gen.target))
        return cls(params, gen.level, {t: QuadScalar(1)})

    def items(self):
        return list(self._coeffs.items())

    def is_zero(self) -> bool:
        return not self._coeffs

    def __eq__(self, other):
        if not isinstance(other, BimoduleElement):
            return NotImplemented
        return self.level == other.level and self._coeffs == other._coeffs

    def __add__(self, other):
        if not isinstance(other, BimoduleElement) or other.level != self.level:
            return NotImplemented
        coeffs = dict(self._coeffs)
        for t, c in other._coeffs.items():
            total = coeffs.get(t, QuadScalar(0)) + c
            if total:
                coeffs[t] = total
            else:
                coeffs.pop(t, None)
        return BimoduleElement(self.params, self.level, coeffs)

    def scale(self, scalar) -> "BimoduleElement":
        return BimoduleElement(
            self.params, self.level, {t: c * scalar for t, c in self._coeffs.items()}
        )

    def act(self, left: Path, right: Path) -> "BimoduleElement":
        """left . self . right, re-expanded over basis triples.

        The products left*u and v*right are normalized in the algebra, so a
        single triple may fan out into several.
        """
        p = self.params
        out: dict[Triple, QuadScalar] = {}
        for t, c in self._coeffs.items():
            if left.target != t.left.source or t.right.target != right.source:
                continue
            lprod = multiply(
                AlgebraElement.from_path(p, left), AlgebraElement.from_path(p, t.left)
            )
            rprod = multiply(
                AlgebraElement.from_path(p, t.right), AlgebraElement.from_path(p, right)
            )
            for lp, lc in lprod.items():
                for rp, rc in rprod.items():
                    tri = Triple(lp, t.gen, rp)
                    total = out.get(tri, QuadScalar(0)) + c * lc * rc
                    if total:
                        out[tri] = total
                    else:
                        out.pop(tri, None)
        return BimoduleElement(p, self.level, out)

    def __str__(self):
        if not self._coeffs:
            return "0"
        return " + ".join(
            f"({c})*{t.left}(x){t.gen.name}(x){t.right}" for t, c in self._coeffs.items()
        )

    __repr__ = __str__


def differential_terms(level: int, p: DownUpParams):
    """Images of the level-``level`` generators as triples one level down.

    Returns ``{generator name: ((coeff, left, lower generator, right), ...)}``.
    Level 1 sends an arrow a to e(x)a - a(x)e over the endpoint generators;
    level 2 expands each relation Leibniz-style over its arrows.
    """
    if level == 1:
        lower = {g.name: g for g in generators(0, p)}
        one = QuadScalar(1)
        out = {}
        for a in p.arrows():
            src, tgt = a.source, a.target
            arrow_path = Path(src, (a,))
            out[str(a)] = (
                (one, Path.stationary(src), lower[f"e{src}"], arrow_path),
                (-one, arrow_path, lower[f"e{tgt}"], Path.stationary(tgt)),
            )
        return out
    if level == 2:
        lower = {g.name: g for g in generators(1, p)}
        out = {}
        for rel in relations(p):
            terms = []
            for mono, coeff in rel.terms:
                arrows = mono.arrows
                for pos, arrow in enumerate(arrows):
                    left = Path(mono.source, arrows[:pos])
                    right = Path(arrow.target, arrows[pos + 1 :])
                    terms.append((coeff, left, lower[str(arrow)], right))
            out[rel.name] = tuple(terms)
        return out
    raise ValueError("differentials exist at levels 1 and 2")


def triple_basis(level: int, p: DownUpParams) -> list[Triple]:
    """Ordered basis of P^level: generator order, then left block, then right block."""
    out = []
    for gen in generators(level, p):
        lefts = [u for i in p.vertices() for u in block_basis(i, gen.source, p)]
        rights = [v for j in p.vertices() for v in block_basis(gen.target, j, p)]
        for u in lefts:
            for v in rights:
                out.append(Triple(u, gen, v))
    return out


def build_d0(p: DownUpParams) -> dict[str, AlgebraElement]:
    """The multiplication map on P^0 generators: e_v (x) e_v -> e_v."""
    return {g.name: AlgebraElement.from_vertex(p, g.source) for g in generators(0, p)}


def build_d1(p: DownUpParams) -> dict[str, BimoduleElement]:
    """Generator images of P^1 -> P^0."""
    return {
        name: BimoduleElement(p, 0, {Triple(l, g, r): c for c, l, g, r in terms})
        for name, terms in differential_terms(1, p).items()
    }


def build_d2(p: DownUpParams) -> dict[str, BimoduleElement]:
    """Generator images of P^2 -> P^1."""
    return {
        name: BimoduleElement(p, 1, {Triple(l, g, r): c for c, l, g, r in terms})
        for name, terms in differential_terms(2, p).items()
    }


@dataclass
class FlatComplex:
    """The resolution flattened to scalar matrices (rows = codomain basis)."""

    params: DownUpParams
    lam_basis: list[Path]
    bases: dict[int, list[Triple]]
    d0: Matrix
    d1: Matrix
    d2: Matrix

    @classmethod
    def build(cls, p: DownUpParams) -> "FlatComplex":
        lam = lambda_basis(p)
        lam_index = {path: k for k, path in enumerate(lam)}
        bases = {level: triple_basis(level, p) for level in (0, 1, 2)}
        indexes = {
            level: {t: k for k, t in enumerate(basis)} for level, basis in bases.items()
        }

        entries0: dict[tuple[int, int], QuadScalar] = {}
        for col, t in enumerate(bases[0]):
            if t.left.target != t.gen.source or t.right.source != t.gen.target:
                raise ValueError("malformed triple")
            prod = multiply(
                AlgebraElement.from_path(p, t.left), AlgebraElement.from_path(p, t.right)
            )
            for path, c in prod.items():
                entries0[(lam_index[path], col)] = c
        d0 = Matrix.from_entry_map(len(lam), len(bases[0]), entries0, d=p.d)

        images = {1: build_d1(p), 2: build_d2(p)}
        mats = {}
        for level in (1, 2):
            entries: dict[tuple[int, int], QuadScalar] = {}
            row_index = indexes[level - 1]
            for col, t in enumerate(bases[level]):
                image = images[level][t.gen.name].act(t.left, t.right)
                for tri, c in image.items():
                    entries[(row_index[tri], col)] = c
            mats[level] = Matrix.from_entry_map(
                len(bases[level - 1]), len(bases[level]), entries, d=p.d
            )
        return cls(p, lam, bases, d0, mats[1], mats[2])


@dataclass
class ResolutionReport:
    """Outcome of the full resolution audit at one parameter point."""

    params: DownUpParams
    dims: dict[str, int]
    ranks: dict[str, int]
    complex_ok: bool
    exact: bool
    euler_ok: bool
    minimal: bool
    failures: list[str]

    @property
    def ok(self) -> bool:
        return self.complex_ok and self.exact and self.euler_ok and self.minimal

    def to_json_dict(self) -> dict:
        p = self.params
        return {
            "n": p.n,
            "alpha": str(p.alpha),
            "beta": str(p.beta),
            "d": p.d,
            "dims": dict(self.dims),
            "ranks": dict(self.ranks),
            "exact": self.exact,
            "minimal": self.minimal,
            "complex_ok": self.complex_ok,
            "euler_ok": self.euler_ok,
            "ok": self.ok,
            "failures": list(self.failures),
        }


def verify_resolution(p: DownUpParams) -> ResolutionReport:
    """Audit the flattened complex: d.d = 0, exactness ranks, Euler count, minimality."""
    flat = FlatComplex.build(p)
    dim_lambda = len(flat.lam_basis)
    dims = {
        "P0": len(flat.bases[0]),
        "P1": len(flat.bases[1]),
        "P2": len(flat.bases[2]),
        "Lambda": dim_lambda,
    }
    failures = []

    if dims["Lambda"] != algebra_dimension(p):
        failures.append("basis count disagrees with the dimension formula")

    complex_ok = True
    if not (flat.d0 * flat.d1).is_zero():
        complex_ok = False
        failures.append("d0.d1 != 0")
    if not (flat.d1 * flat.d2).is_zero():
        complex_ok = False
        failures.append("d1.d2 != 0")

    rank0 = flat.d0.rank()
    # the verified products bound the next ranks: im d1 <= ker d0, im d2 <= ker d1
    bound1 = dims["P0"] - rank0 if complex_ok else None
    rank1 = flat.d1.rank(known_upper_bound=bound1)
    bound2 = min(dims["P1"] - rank1, dims["P2"]) if complex_ok else None
    rank2 = flat.d2.rank(known_upper_bound=bound2)
    ranks = {"D0": rank0, "D1": rank1, "D2": rank2}

    exact = True
    if rank0 != dim_lambda:
        exact = False
        failures.append(f"d0 not surjective: rank {rank0} != dim {dim_lambda}")
    if dims["P0"] - rank0 != rank1:
        exact = False
        failures.append(f"not exact at P0: ker d0 = {dims['P0'] - rank0}, rank d1 = {rank1}")
    if dims["P1"] - rank1 != rank2:
        exact = False
        failures.append(f"not exact at P1: ker d1 = {dims['P1'] - rank1}, rank d2 = {rank2}")
    if rank2 != dims["P2"]:
        exact = False
        failures.append(f"d2 not injective: kernel dimension {dims['P2'] - rank2}")

    euler_ok = dims["P0"] - dims["P1"] + dims["P2"] == dim_lambda
    if not euler_ok:
        failures.append("Euler identity P0 - P1 + P2 = dim Lambda fails")

    minimal = True
    for builder in (build_d1(p), build_d2(p)):
        for name, image in builder.items():
            for tri, _ in image.items():
                if tri.left.degree + tri.right.degree < 1:
                    minimal = False
                    failures.append(f"generator {name} has a degree-0 coefficient")
    return ResolutionReport(p, dims, ranks, complex_ok, exact, euler_ok, minimal, failures)
