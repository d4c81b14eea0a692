"""Hochschild cohomology of the Beilinson algebra, by brute force and closed form.

Applying Hom(-, A) to the bimodule resolution gives a three-term complex of
dual spaces with bases theta_h^m (h a generator, m a monomial of its block).
The two dual differentials are flattened to exact matrices; cohomology
dimensions fall out of ranks.  In the reordered bases rho1/rho2 the second
differential is block diagonal with an (2n+2) x (3n+3) block and an
(n+2) x (n+2) block whose closed form is built from the recurrence

    a_1 = 1, b_1 = 0,  a_i = alpha*a_{i-1} + b_{i-1},  b_i = beta*a_{i-1},

with delta_n = a_{n+1} controlling the case split of the dimension table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .linalg import Matrix
from .quiver import (
    AlgebraElement,
    DownUpParams,
    Path,
    X,
    Y,
    block_basis,
    multiply,
)
from .resolution import BimoduleGenerator, differential_terms, generators
from .scalar import QuadScalar

__all__ = [
    "ALPHA_ZERO",
    "ODD_ALPHA_ZERO",
    "DELTA_ZERO",
    "DISC_ZERO",
    "GENERIC",
    "InternalCheckError",
    "DualBasisElement",
    "ABSequence",
    "HHReport",
    "BlockDecomposition",
    "sequence_ab",
    "classify_case",
    "hh_dims_closed_form",
    "hh_dims_bruteforce",
    "dual_space",
    "hat_d",
    "extract_blocks",
    "build_L2_closed_form",
    "rank_L1",
    "rank_L2",
    "hochschild_report",
    "delta_zero_point",
    "case_representatives",
]

ALPHA_ZERO = "ALPHA_ZERO"
ODD_ALPHA_ZERO = "ODD_ALPHA_ZERO"
DELTA_ZERO = "DELTA_ZERO"
DISC_ZERO = "DISC_ZERO"
GENERIC = "GENERIC"


class InternalCheckError(RuntimeError):
    """An internal structural assertion failed; signals a bug, not bad input."""


@dataclass(frozen=True)
class DualBasisElement:
    """The map theta_h^m sending generator h to monomial m and all others to 0."""

    generator: BimoduleGenerator
    monomial: Path

    @property
    def label(self) -> str:
        return f"{self.generator.name}^{self.monomial}"


def dual_space(level: int, p: DownUpParams) -> list[DualBasisElement]:
    """Ordered basis of the dual of P^level, enumerated per block basis."""
    return [
        DualBasisElement(g, m)
        for g in generators(level, p)
        for m in block_basis(g.source, g.target, p)
    ]


def hat_d(level: int, p: DownUpParams) -> Matrix:
    """Matrix of theta -> theta o d^level in dual bases (rows = level side)."""
    if level not in (1, 2):
        raise ValueError("dual differentials exist at levels 1 and 2")
    domain = dual_space(level - 1, p)
    codomain = dual_space(level, p)
    row_index = {(e.generator.name, e.monomial): k for k, e in enumerate(codomain)}
    terms = differential_terms(level, p)
    entries: dict[tuple[int, int], QuadScalar] = {}
    for col, theta in enumerate(domain):
        substituted = AlgebraElement.from_path(p, theta.monomial)
        for hname, hterms in terms.items():
            for coeff, left, lgen, right in hterms:
                if lgen.name != theta.generator.name:
                    continue
                value = multiply(
                    multiply(AlgebraElement.from_path(p, left), substituted),
                    AlgebraElement.from_path(p, right),
                ).scale(coeff)
                for path, c in value.items():
                    key = (row_index[(hname, path)], col)
                    total = entries.get(key, QuadScalar(0)) + c
                    if total:
                        entries[key] = total
                    else:
                        entries.pop(key, None)
    return Matrix.from_entry_map(len(codomain), len(domain), entries, d=p.d)


# -- the coefficient recurrence and the case split ------------------------------


@dataclass(frozen=True)
class ABSequence:
    """a_1..a_{n+1}, b_1..b_{n+1}; delta = a_{n+1}; disc = alpha^2 + 4 beta."""

    a: tuple[QuadScalar, ...]
    b: tuple[QuadScalar, ...]
    delta: QuadScalar
    disc: QuadScalar


def sequence_ab(p: DownUpParams) -> ABSequence:
    """Run the recurrence and cross-check delta against the 2x2 matrix power."""
    a = [QuadScalar(1)]
    b = [QuadScalar(0)]
    for _ in range(p.n):
        a.append(p.alpha * a[-1] + b[-1])
        b.append(p.beta * a[-2])
    delta = a[-1]
    power = Matrix([[p.alpha, 1], [p.beta, 0]], d=p.d) ** p.n
    if power.entry(0, 0) != delta:
        raise InternalCheckError("recurrence delta disagrees with the matrix power")
    disc = p.alpha * p.alpha + 4 * p.beta
    return ABSequence(tuple(a), tuple(b), delta, disc)


def classify_case(p: DownUpParams) -> str:
    """Stratification label for the dimension table.

    n = 1 splits ALPHA_ZERO / DISC_ZERO / GENERIC; n >= 2 splits
    ODD_ALPHA_ZERO / DELTA_ZERO / DISC_ZERO / GENERIC.  delta_n = 0 together
    with alpha^2 + 4 beta = 0 cannot happen for beta != 0; that overlap is
    checked, not silently tie-broken.
    """
    seq = sequence_ab(p)
    delta_zero = seq.delta.is_zero()
    disc_zero = seq.disc.is_zero()
    if delta_zero and disc_zero:
        raise InternalCheckError("delta_n and alpha^2+4beta vanish together")
    if p.n == 1:
        if p.alpha.is_zero():
            return ALPHA_ZERO
        return DISC_ZERO if disc_zero else GENERIC
    if p.n % 2 == 1 and p.alpha.is_zero():
        if not delta_zero:
            raise InternalCheckError("odd n with alpha = 0 must give delta_n = 0")
        return ODD_ALPHA_ZERO
    if delta_zero:
        return DELTA_ZERO
    return DISC_ZERO if disc_zero else GENERIC


def hh_dims_closed_form(p: DownUpParams) -> tuple[int, int, int]:
    """The case table for (dim HH^0, dim HH^1, dim HH^2); HH^i = 0 for i >= 3."""
    case = classify_case(p)
    n = p.n
    if n == 1:
        return {
            ALPHA_ZERO: (1, 6, 9),
            DISC_ZERO: (1, 3, 6),
            GENERIC: (1, 1, 4),
        }[case]
    h1 = {ODD_ALPHA_ZERO: 4, DELTA_ZERO: 3, DISC_ZERO: 2, GENERIC: 1}[case]
    if n == 2:
        h2 = {DELTA_ZERO: 8, DISC_ZERO: 7, GENERIC: 6}[case]
    else:
        h2 = {ODD_ALPHA_ZERO: n + 5, DELTA_ZERO: n + 4, DISC_ZERO: n + 3, GENERIC: n + 2}[case]
    return (1, h1, h2)


def hh_dims_bruteforce(p: DownUpParams) -> tuple[int, int, int]:
    """Cohomology of the dual complex from exact ranks, no block structure used."""
    d1 = hat_d(1, p)
    d2 = hat_d(2, p)
    r1 = d1.rank()
    r2 = d2.rank()
    h0 = d1.cols - r1
    h1 = (d2.cols - r2) - r1
    h2 = d2.rows - r2
    return (h0, h1, h2)


# -- the block structure of the second dual differential ------------------------


def _monomial(p: DownUpParams, start: int, a: int, b: int, c: int) -> Path:
    """The normal path y^a (xy)^b x^c from ``start``."""
    arrows = []
    at = start
    for kind in (Y,) * a + (X, Y) * b + (X,) * c:
        arrow = p.x_arrow(at) if kind == X else p.y_arrow(at)
        arrows.append(arrow)
        at = arrow.target
    return Path(start, tuple(arrows))


def _rho1(p: DownUpParams) -> list[tuple[str, Path]]:
    n = p.n
    keys = []
    for i in range(1, 2 * n + 2):
        keys.append((f"x{i}", Path(i, (p.x_arrow(i),))))
    for j in range(1, n + 3):
        keys.append((f"y{j}", Path(j, (p.y_arrow(j),))))
    for j in range(n + 2, 0, -1):
        keys.append((f"y{j}", _monomial(p, j, 0, 0, n)))
    return keys


def _rho2(p: DownUpParams) -> list[tuple[str, Path]]:
    n = p.n
    keys = [("g", _monomial(p, 1, 2, 0, 1))]
    for k in range(1, n + 1):
        keys.append((f"f{k}", _monomial(p, k, 1, 0, 2)))
        if k == 1:
            keys.append(("g", _monomial(p, 1, 1, 1, 0)))
        else:
            keys.append((f"f{k - 1}", _monomial(p, k - 1, 0, 1, 1)))
    keys.append((f"f{n}", _monomial(p, n, 0, 1, 1)))
    for k in range(n, 0, -1):
        keys.append((f"f{k}", _monomial(p, k, 0, 0, n + 2)))
    keys.append(("g", _monomial(p, 1, 1, 0, n + 1)))
    keys.append(("g", _monomial(p, 1, 0, 1, n)))
    keys.append(("g", _monomial(p, 1, 0, 0, 2 * n + 1)))
    if n == 2:
        keys.append(("f1", _monomial(p, 1, 2, 0, 0)))
        keys.append(("f2", _monomial(p, 2, 2, 0, 0)))
    return keys


@dataclass
class BlockDecomposition:
    """hat_d(2) reordered into the rho bases, with its two live blocks."""

    matrix: Matrix
    L1: Matrix
    L2: Matrix
    zero_rows: int


def extract_blocks(p: DownUpParams) -> BlockDecomposition:
    """Reorder hat_d(2) into rho1/rho2 and split off L1, L2 and the zero rows.

    The reordered matrix must have the exact shape [[L1, 0], [0, L2], [0, 0]]
    with L1 of size (2n+2) x (3n+3) and L2 of size (n+2) x (n+2); any entry
    outside those blocks signals a basis-ordering bug.
    """
    if p.n < 2:
        raise ValueError("block extraction requires n >= 2")
    n = p.n
    full = hat_d(2, p)
    dom_index = {(e.generator.name, e.monomial): k for k, e in enumerate(dual_space(1, p))}
    cod_index = {(e.generator.name, e.monomial): k for k, e in enumerate(dual_space(2, p))}
    cols = [dom_index[key] for key in _rho1(p)]
    rows = [cod_index[key] for key in _rho2(p)]
    reordered = full.permuted(rows, cols)

    r1, c1 = 2 * n + 2, 3 * n + 3
    r2, c2 = n + 2, n + 2
    zero_rows = reordered.rows - r1 - r2
    if reordered.cols != c1 + c2 or zero_rows != (3 if n == 2 else 1):
        raise InternalCheckError("dual space dimensions disagree with the block layout")
    for i in range(reordered.rows):
        for j in range(reordered.cols):
            in_l1 = i < r1 and j < c1
            in_l2 = r1 <= i < r1 + r2 and j >= c1
            if not (in_l1 or in_l2) and reordered.entry(i, j):
                raise InternalCheckError(
                    f"entry outside the block pattern at ({i}, {j}); basis-ordering bug"
                )
    l1 = reordered.submatrix(range(r1), range(c1))
    l2 = reordered.submatrix(range(r1, r1 + r2), range(c1, c1 + c2))
    return BlockDecomposition(reordered, l1, l2, zero_rows)


def build_L2_closed_form(p: DownUpParams) -> Matrix:
    """The (n+2) x (n+2) block in closed form from the coefficient recurrence."""
    if p.n < 2:
        raise ValueError("the closed-form block requires n >= 2")
    n = p.n
    seq = sequence_ab(p)
    a, b = seq.a, seq.b
    zero, one = QuadScalar(0), QuadScalar(1)
    size = n + 2
    rows = [[zero] * size for _ in range(size)]
    for r in range(n):
        rows[r][r] = one
        rows[r][r + 1] = -p.alpha
        rows[r][r + 2] = -p.beta
    rows[n][0] = -p.alpha
    rows[n][1] = -p.beta
    rows[n][n] = b[n]
    rows[n][n + 1] = -(p.beta * b[n - 1] + p.alpha * b[n])
    rows[n + 1][0] = one
    rows[n + 1][n] = a[n]
    rows[n + 1][n + 1] = -(p.beta * a[n - 1] + p.alpha * a[n])
    return Matrix(rows, d=p.d)


def rank_L1(p: DownUpParams) -> int:
    return extract_blocks(p).L1.rank()


def rank_L2(p: DownUpParams) -> int:
    return extract_blocks(p).L2.rank()


# -- reports ---------------------------------------------------------------------


@dataclass
class HHReport:
    """Brute-force vs closed-form Hochschild dimensions at one parameter point."""

    params: DownUpParams
    delta: QuadScalar
    disc: QuadScalar
    case: str
    brute: tuple[int, int, int]
    closed: tuple[int, int, int]
    agree: bool
    rank_l1: int | None
    rank_l2: int | None

    @property
    def euler(self) -> int:
        h0, h1, h2 = self.brute
        return h0 - h1 + h2

    def to_json_dict(self) -> dict:
        p = self.params
        return {
            "n": p.n,
            "alpha": str(p.alpha),
            "beta": str(p.beta),
            "d": p.d,
            "delta": str(self.delta),
            "disc": str(self.disc),
            "case": self.case,
            "brute": list(self.brute),
            "closed": list(self.closed),
            "agree": self.agree,
            "rankL1": self.rank_l1,
            "rankL2": self.rank_l2,
        }


def hochschild_report(p: DownUpParams) -> HHReport:
    seq = sequence_ab(p)
    case = classify_case(p)
    brute = hh_dims_bruteforce(p)
    closed = hh_dims_closed_form(p)
    if p.n >= 2:
        blocks = extract_blocks(p)
        rl1: int | None = blocks.L1.rank()
        rl2: int | None = blocks.L2.rank()
    else:
        rl1 = rl2 = None
    return HHReport(p, seq.delta, seq.disc, case, brute, closed, brute == closed, rl1, rl2)


# -- representative parameter points for sweeps ----------------------------------


def _delta_poly_alpha_one(n: int) -> list[int]:
    """Coefficients (in beta) of delta_n evaluated at alpha = 1."""
    a, b = [1], [0]
    for _ in range(n):
        width = max(len(a), len(b))
        na = [(a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(width)]
        nb = [0] + a
        a, b = na, nb
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_eval(coeffs: list[int], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _divisors(m: int) -> list[int]:
    out = [k for k in range(1, isqrt(m) + 1) if m % k == 0]
    out += [m // k for k in reversed(out) if m // k > isqrt(m)]
    return sorted(set(out))


def _find_rational_root(coeffs: list[int]) -> Fraction | None:
    c0, lead = coeffs[0], coeffs[-1]
    if c0 == 0:
        return Fraction(0)
    for q in _divisors(abs(lead)):
        for num in _divisors(abs(c0)):
            for sign in (1, -1):
                cand = Fraction(sign * num, q)
                if _poly_eval(coeffs, cand) == 0:
                    return cand
    return None


def _squarefree_decompose(m: int) -> tuple[int, int]:
    """m = s^2 * f with f squarefree; returns (s, f) for m > 0."""
    s, f = 1, 1
    k = 2
    while k * k <= m:
        e = 0
        while m % k == 0:
            m //= k
            e += 1
        s *= k ** (e // 2)
        if e % 2:
            f *= k
        k += 1
    return s, f * m


def _find_sqrt5_root(coeffs: list[int]) -> QuadScalar | None:
    if len(coeffs) != 3:
        return None
    c, b, a = coeffs
    disc = b * b - 4 * a * c
    if disc <= 0:
        return None
    s, f = _squarefree_decompose(disc)
    if f != 5:
        return None
    return QuadScalar(Fraction(-b, 2 * a), Fraction(s, 2 * a), 5)


def delta_zero_point(n: int) -> DownUpParams | None:
    """A parameter point with delta_n = 0, found over Q, then over Q(sqrt(5)).

    Uses alpha = 1 (the odd-n branch with delta_n = 0 requires alpha != 0).
    Returns None when no representable point exists, so that sweeps can mark
    the branch as not exercised instead of skipping it silently.
    """
    coeffs = _delta_poly_alpha_one(n)
    root = _find_rational_root(coeffs)
    if root is not None and root != 0:
        return DownUpParams(n, QuadScalar(1), QuadScalar(root))
    quad = _find_sqrt5_root(coeffs)
    if quad is not None:
        return DownUpParams(n, QuadScalar(1), quad)
    return None


def case_representatives(n: int) -> list[tuple[str, DownUpParams | None]]:
    """One representative parameter point per reachable case branch, in table order."""
    generic = DownUpParams(n, QuadScalar(1), QuadScalar(1))
    disc0 = DownUpParams(n, QuadScalar(2), QuadScalar(-1))
    if n == 1:
        alpha0 = DownUpParams(1, QuadScalar(0), QuadScalar(1))
        return [(ALPHA_ZERO, alpha0), (DISC_ZERO, disc0), (GENERIC, generic)]
    out: list[tuple[str, DownUpParams | None]] = []
    if n % 2 == 1:
        out.append((ODD_ALPHA_ZERO, DownUpParams(n, QuadScalar(0), QuadScalar(1))))
    out.append((DELTA_ZERO, delta_zero_point(n)))
    out.append((DISC_ZERO, disc0))
    out.append((GENERIC, generic))
    return out
