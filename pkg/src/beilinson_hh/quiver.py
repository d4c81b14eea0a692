"""The bound quiver algebra of a graded down-up algebra on its Beilinson window.

For weights (deg x, deg y) = (1, n) the algebra lives on vertices 1..2n+2
with arrows x_i: i -> i+1 (1 <= i <= 2n+1) and y_j: j -> j+n (1 <= j <= n+2),
modulo every shift of the two down-up relations that fits in the window:

    f_i = x_i x_{i+1} y_{i+2} - beta y_i x_{i+n} x_{i+n+1} - alpha x_i y_{i+1} x_{i+n+1}
    g   = x_1 y_2 y_{n+2}     - beta y_1 y_{n+1} x_{2n+1}  - alpha y_1 x_{n+1} y_{n+2}

Elements are kept in a normal form whose monomials read y^a (xy)^b x^c;
every composable arrow triple of kind pattern x.x.y or x.y.y is a relation
instance, so rewriting those patterns terminates in that form.  Dimensions
of the vertex blocks are cross-checked against a weighted-composition count
(:func:`hilbert_coeff`) and a rewriting-free quotient oracle
(:func:`quotient_oracle`), so confluence is verified rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .linalg import Matrix
from .scalar import QuadScalar, _unify_tags, as_scalar

__all__ = [
    "X",
    "Y",
    "Arrow",
    "DownUpParams",
    "Path",
    "QuiverDescription",
    "Relation",
    "AlgebraElement",
    "build_quiver",
    "relations",
    "normal_form",
    "multiply",
    "block_basis",
    "hilbert_coeff",
    "quotient_oracle",
    "free_paths",
    "algebra_dimension",
    "lambda_basis",
]

X = "x"
Y = "y"


@dataclass(frozen=True)
class Arrow:
    """A quiver arrow; x arrows step one vertex, y arrows step n vertices."""

    kind: str
    index: int
    source: int
    target: int

    def __str__(self):
        return f"{self.kind}{self.index}"


@dataclass(frozen=True)
class DownUpParams:
    """Weight n of y plus the two exact parameters; beta must be nonzero."""

    n: int
    alpha: QuadScalar
    beta: QuadScalar

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"n must be an integer >= 1, got {self.n!r}")
        object.__setattr__(self, "alpha", as_scalar(self.alpha))
        object.__setattr__(self, "beta", as_scalar(self.beta))
        if self.beta.is_zero():
            raise ValueError(
                "beta must be nonzero: A(alpha, beta) is AS-regular of dimension 3 "
                "if and only if beta != 0"
            )
        _unify_tags(self.alpha.d, self.beta.d)

    @property
    def d(self):
        return _unify_tags(self.alpha.d, self.beta.d)

    @property
    def ell(self) -> int:
        """Gorenstein parameter 2(deg x + deg y) = 2n + 2; also the vertex count."""
        return 2 * self.n + 2

    @property
    def vertex_count(self) -> int:
        return 2 * self.n + 2

    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    def x_arrow(self, i: int) -> Arrow:
        if not 1 <= i <= 2 * self.n + 1:
            raise ValueError(f"x{i} is not an arrow for n={self.n}")
        return Arrow(X, i, i, i + 1)

    def y_arrow(self, j: int) -> Arrow:
        if not 1 <= j <= self.n + 2:
            raise ValueError(f"y{j} is not an arrow for n={self.n}")
        return Arrow(Y, j, j, j + self.n)

    def arrows(self) -> list[Arrow]:
        return [self.x_arrow(i) for i in range(1, 2 * self.n + 2)] + [
            self.y_arrow(j) for j in range(1, self.n + 3)
        ]


@dataclass(frozen=True)
class Path:
    """A composable arrow sequence; the empty sequence is the stationary path e_v."""

    source: int
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        at = self.source
        for a in self.arrows:
            if a.source != at:
                raise ValueError(f"arrow {a} does not start at vertex {at}")
            at = a.target

    @staticmethod
    def stationary(v: int) -> "Path":
        return Path(v, ())

    @property
    def target(self) -> int:
        return self.arrows[-1].target if self.arrows else self.source

    @property
    def degree(self) -> int:
        return self.target - self.source

    @property
    def kinds(self) -> tuple[str, ...]:
        return tuple(a.kind for a in self.arrows)

    def is_stationary(self) -> bool:
        return not self.arrows

    def concat(self, other: "Path") -> "Path":
        if self.target != other.source:
            raise ValueError(f"paths {self} and {other} do not compose")
        return Path(self.source, self.arrows + other.arrows)

    def __str__(self):
        if not self.arrows:
            return f"e{self.source}"
        return ".".join(str(a) for a in self.arrows)


def _path_sort_key(path: Path):
    return (path.source, path.target, tuple(reversed(path.kinds)))


@dataclass(frozen=True)
class QuiverDescription:
    vertices: tuple[int, ...]
    arrows: tuple[Arrow, ...]


def build_quiver(p: DownUpParams) -> QuiverDescription:
    """Vertices 1..2n+2 with 2n+1 x-arrows and n+2 y-arrows."""
    return QuiverDescription(tuple(p.vertices()), tuple(p.arrows()))


@dataclass(frozen=True)
class Relation:
    """A defining relation: a scalar combination of three degree-equal paths."""

    name: str
    source: int
    target: int
    terms: tuple[tuple[Path, QuadScalar], ...]


def relations(p: DownUpParams) -> list[Relation]:
    """All window-fitting relations: f_1..f_n, then g."""
    n = p.n
    one = QuadScalar(1)
    out = []
    for i in range(1, n + 1):
        lead = _path_from_arrows(i, [p.x_arrow(i), p.x_arrow(i + 1), p.y_arrow(i + 2)])
        yxx = _path_from_arrows(i, [p.y_arrow(i), p.x_arrow(i + n), p.x_arrow(i + n + 1)])
        xyx = _path_from_arrows(i, [p.x_arrow(i), p.y_arrow(i + 1), p.x_arrow(i + n + 1)])
        out.append(
            Relation(
                f"f{i}",
                i,
                i + n + 2,
                ((lead, one), (yxx, -p.beta), (xyx, -p.alpha)),
            )
        )
    lead = _path_from_arrows(1, [p.x_arrow(1), p.y_arrow(2), p.y_arrow(n + 2)])
    yyx = _path_from_arrows(1, [p.y_arrow(1), p.y_arrow(n + 1), p.x_arrow(2 * n + 1)])
    yxy = _path_from_arrows(1, [p.y_arrow(1), p.x_arrow(n + 1), p.y_arrow(n + 2)])
    out.append(
        Relation("g", 1, 2 * n + 2, ((lead, one), (yyx, -p.beta), (yxy, -p.alpha)))
    )
    return out


def _path_from_arrows(source: int, arrows) -> Path:
    return Path(source, tuple(arrows))


# -- rewriting ----------------------------------------------------------------


def _validate_path(path: Path, p: DownUpParams) -> None:
    for a in path.arrows:
        expected = p.x_arrow(a.index) if a.kind == X else p.y_arrow(a.index)
        if a != expected:
            raise ValueError(f"arrow {a} does not belong to the n={p.n} quiver")
    if not (1 <= path.source and path.target <= p.vertex_count):
        raise ValueError(f"path {path} leaves the vertex window")


def _reduce_once(path: Path, p: DownUpParams):
    """First reducible factor, or None if the path is normal.

    Returns the two replacement paths with their coefficients (beta first).
    """
    kinds = path.kinds
    n = p.n
    for t in range(len(kinds) - 2):
        triple = kinds[t : t + 3]
        if triple == (X, X, Y):
            i = path.arrows[t].index
            first = (p.y_arrow(i), p.x_arrow(i + n), p.x_arrow(i + n + 1))
            second = (p.x_arrow(i), p.y_arrow(i + 1), p.x_arrow(i + n + 1))
        elif triple == (X, Y, Y):
            # composability forces this factor to sit at vertex 1
            first = (p.y_arrow(1), p.y_arrow(n + 1), p.x_arrow(2 * n + 1))
            second = (p.y_arrow(1), p.x_arrow(n + 1), p.y_arrow(n + 2))
        else:
            continue
        pre = path.arrows[:t]
        post = path.arrows[t + 3 :]
        return (
            (Path(path.source, pre + first + post), p.beta),
            (Path(path.source, pre + second + post), p.alpha),
        )
    return None


class AlgebraElement:
    """A scalar combination of normal-form paths in the bound quiver algebra."""

    __slots__ = ("params", "_coeffs")

    def __init__(self, params: DownUpParams, coeffs=None, _normal=False):
        self.params = params
        if not coeffs:
            self._coeffs = {}
        elif _normal:
            self._coeffs = dict(coeffs)
        else:
            self._coeffs = _normalize(coeffs, params)

    @classmethod
    def zero(cls, params: DownUpParams) -> "AlgebraElement":
        return cls(params)

    @classmethod
    def from_path(cls, params: DownUpParams, path: Path, coeff=1) -> "AlgebraElement":
        return cls(params, {path: as_scalar(coeff)})

    @classmethod
    def from_vertex(cls, params: DownUpParams, v: int) -> "AlgebraElement":
        return cls(params, {Path.stationary(v): QuadScalar(1)}, _normal=True)

    def coefficient(self, path: Path) -> QuadScalar:
        return self._coeffs.get(path, QuadScalar(0))

    def items(self):
        return list(self._coeffs.items())

    def support(self) -> list[Path]:
        return list(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        coeffs = dict(self._coeffs)
        for path, c in other._coeffs.items():
            acc = coeffs.get(path)
            total = c if acc is None else acc + c
            if total:
                coeffs[path] = total
            else:
                coeffs.pop(path, None)
        out = AlgebraElement(self.params)
        out._coeffs = dict(sorted(coeffs.items(), key=lambda kv: _path_sort_key(kv[0])))
        return out

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        out = AlgebraElement(self.params)
        out._coeffs = {path: -c for path, c in self._coeffs.items()}
        return out

    def scale(self, scalar) -> "AlgebraElement":
        s = as_scalar(scalar)
        out = AlgebraElement(self.params)
        if s:
            out._coeffs = {path: c * s for path, c in self._coeffs.items()}
        return out

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __str__(self):
        if not self._coeffs:
            return "0"
        return " + ".join(f"({c})*{path}" for path, c in self._coeffs.items())

    __repr__ = __str__


def _normalize(combo, params: DownUpParams) -> dict:
    """Rewrite a free-path combination to normal form; order of rewrites is immaterial."""
    if hasattr(combo, "items"):
        work = [(path, as_scalar(c)) for path, c in combo.items()]
    else:
        work = [(path, as_scalar(c)) for path, c in combo]
    for path, _ in work:
        _validate_path(path, params)
    out: dict[Path, QuadScalar] = {}
    while work:
        path, c = work.pop()
        if not c:
            continue
        red = _reduce_once(path, params)
        if red is None:
            acc = out.get(path)
            total = c if acc is None else acc + c
            if total:
                out[path] = total
            else:
                out.pop(path, None)
        else:
            for new_path, factor in red:
                if factor:
                    work.append((new_path, c * factor))
    return dict(sorted(out.items(), key=lambda kv: _path_sort_key(kv[0])))


def normal_form(combo, p: DownUpParams) -> AlgebraElement:
    """Normal form of a free-path combination (a mapping or pair iterable)."""
    return AlgebraElement(p, combo)


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Product in the algebra; non-composable path pairs contribute zero."""
    if a.params != b.params:
        raise ValueError("cannot multiply elements over different parameters")
    combo: dict[Path, QuadScalar] = {}
    for pa, ca in a._coeffs.items():
        for pb, cb in b._coeffs.items():
            if pa.target != pb.source:
                continue
            prod = pa.concat(pb)
            c = ca * cb
            acc = combo.get(prod)
            combo[prod] = c if acc is None else acc + c
    return AlgebraElement(a.params, combo)


# -- bases and dimension oracles ------------------------------------------------


def hilbert_coeff(n: int, deg: int) -> int:
    """Number of monomials y^a (xy)^b x^c of weighted degree deg for weights (1, n).

    Counts triples (a, b, c) >= 0 with n*a + (n+1)*b + c = deg, which is the
    dimension of the degree-deg piece of the down-up algebra.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if deg < 0:
        raise ValueError("degree must be >= 0")
    count = 0
    for a in range(deg // n + 1):
        rest = deg - n * a
        count += rest // (n + 1) + 1
    return count


@lru_cache(maxsize=None)
def _block_kind_words(n: int, deg: int) -> tuple[tuple[str, ...], ...]:
    words = []
    for a in range(deg // n + 1):
        rest = deg - n * a
        for b in range(rest // (n + 1) + 1):
            c = rest - (n + 1) * b
            words.append((Y,) * a + (X, Y) * b + (X,) * c)
    # read right to left, x before y: reproduces the block listing order
    words.sort(key=lambda w: tuple(reversed(w)))
    return tuple(words)


def block_basis(i: int, j: int, p: DownUpParams) -> list[Path]:
    """All normal-form paths from vertex i to vertex j, in the canonical order."""
    if not (1 <= i <= p.vertex_count and 1 <= j <= p.vertex_count):
        raise ValueError(f"vertices must lie in 1..{p.vertex_count}")
    if j < i:
        return []
    out = []
    for word in _block_kind_words(p.n, j - i):
        at = i
        arrows = []
        for kind in word:
            arrow = p.x_arrow(at) if kind == X else p.y_arrow(at)
            arrows.append(arrow)
            at = arrow.target
        out.append(Path(i, tuple(arrows)))
    return out


def free_paths(i: int, j: int, p: DownUpParams) -> list[Path]:
    """All paths i -> j in the free path category (no relations, no rewriting)."""
    if not (1 <= i <= p.vertex_count and 1 <= j <= p.vertex_count):
        raise ValueError(f"vertices must lie in 1..{p.vertex_count}")
    out: list[Path] = []

    def walk(at: int, arrows: tuple[Arrow, ...]):
        if at == j:
            out.append(Path(i, arrows))
            return
        if at + 1 <= j and at <= 2 * p.n + 1:
            walk(at + 1, arrows + (p.x_arrow(at),))
        if at + p.n <= j and at <= p.n + 2:
            walk(at + p.n, arrows + (p.y_arrow(at),))

    walk(i, ())
    return out


def quotient_oracle(i: int, j: int, p: DownUpParams) -> int:
    """dim e_i A e_j computed without any rewriting assumption.

    Spans all free paths i -> j, subtracts the rank of the subspace spanned
    by u * r * v over every relation r and composable free paths u, v.
    """
    paths = free_paths(i, j, p)
    if not paths:
        return 0
    index = {path: k for k, path in enumerate(paths)}
    rows = []
    for rel in relations(p):
        lefts = free_paths(i, rel.source, p)
        rights = free_paths(rel.target, j, p)
        for u in lefts:
            for v in rights:
                row = [QuadScalar(0)] * len(paths)
                for mono, coeff in rel.terms:
                    k = index[u.concat(mono).concat(v)]
                    row[k] = row[k] + coeff
                rows.append(row)
    if not rows:
        return len(paths)
    return len(paths) - Matrix(rows, d=p.d).rank()


def algebra_dimension(p: DownUpParams) -> int:
    """Total dimension: sum over d of (2n+2-d) * hilbert_coeff(n, d)."""
    n = p.n
    return sum((2 * n + 2 - d) * hilbert_coeff(n, d) for d in range(2 * n + 2))


def lambda_basis(p: DownUpParams) -> list[Path]:
    """All normal paths, ordered by source, then target, then block order."""
    out = []
    for i in p.vertices():
        for j in range(i, p.vertex_count + 1):
            out.extend(block_basis(i, j, p))
    return out
