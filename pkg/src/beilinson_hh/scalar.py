"""Exact field arithmetic over the rationals and fixed real quadratic extensions.

A :class:`QuadScalar` is a value ``a + b*sqrt(d)`` with rational ``a``, ``b``
and a squarefree tag ``d > 1``, or a plain rational when ``d`` is the
``rational-only`` sentinel (``None``).  Plain rationals embed into any
``Q(sqrt(d))``; scalars with two different non-rational tags never mix.

The rational part is carried by :class:`fractions.Fraction`, which keeps the
canonical form (positive denominator, gcd 1) after every operation.
"""

from __future__ import annotations

import ast
from fractions import Fraction
from math import isqrt

__all__ = [
    "Rational",
    "QuadScalar",
    "ScalarError",
    "FieldMismatchError",
    "ScalarParseError",
    "as_scalar",
    "parse_scalar",
    "validate_field_tag",
]

#: Exact rational numbers; arbitrary-precision numerator, positive denominator.
Rational = Fraction


class ScalarError(ValueError):
    """Base class for scalar contract violations."""


class FieldMismatchError(ScalarError):
    """Raised when scalars from two different quadratic fields are combined."""


class ScalarParseError(ScalarError):
    """Raised when a scalar string does not match the grammar."""


def validate_field_tag(d):
    """Check that ``d`` is a valid field tag: ``None`` or a squarefree int > 1."""
    if d is None:
        return None
    if not isinstance(d, int) or isinstance(d, bool) or d <= 1:
        raise ScalarError(f"field tag must be a squarefree integer > 1, got {d!r}")
    if not _is_squarefree(d):
        raise ScalarError(f"field tag must be squarefree, got {d}")
    return d


def _is_squarefree(d: int) -> bool:
    if d % 4 == 0:
        return False
    f = 3
    while f <= isqrt(d):
        if d % (f * f) == 0:
            return False
        f += 2
    return True


def _unify_tags(d1, d2):
    if d1 is None:
        return d2
    if d2 is None or d1 == d2:
        return d1
    raise FieldMismatchError(f"cannot mix sqrt({d1}) and sqrt({d2}) scalars")


class QuadScalar:
    """An exact element ``a + b*sqrt(d)`` of Q or of a fixed Q(sqrt(d)).

    Values are immutable after construction and normalized so that a scalar
    with ``b == 0`` always carries the rational-only tag.  Since ``d`` is a
    non-square, ``a + b*sqrt(d) == 0`` iff ``a == b == 0``, so equality and
    zero tests are exact.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d=None):
        a = Fraction(a)
        b = Fraction(b)
        d = validate_field_tag(d)
        if b and d is None:
            raise ScalarError("a nonzero sqrt coefficient requires a field tag d")
        self.a = a
        self.b = b
        self.d = d if b else None

    @classmethod
    def _make(cls, a, b, d):
        # internal fast path: a, b already Fractions, d already validated
        self = object.__new__(cls)
        self.a = a
        self.b = b
        self.d = d if b else None
        return self

    @classmethod
    def sqrt(cls, d) -> "QuadScalar":
        """The generator sqrt(d) of Q(sqrt(d))."""
        return cls(0, 1, d)

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def is_rational(self) -> bool:
        return not self.b

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = _unify_tags(self.d, other.d)
        return QuadScalar._make(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = _unify_tags(self.d, other.d)
        return QuadScalar._make(self.a - other.a, self.b - other.b, d)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = _unify_tags(self.d, other.d)
        a = self.a * other.a
        bb = self.b * other.b
        if bb:
            a += bb * d
        return QuadScalar._make(a, self.a * other.b + self.b * other.a, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __neg__(self):
        return QuadScalar._make(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def conjugate(self) -> "QuadScalar":
        """a - b*sqrt(d)."""
        return QuadScalar._make(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """The field norm a^2 - d*b^2; zero iff the scalar is zero."""
        n = self.a * self.a
        if self.b:
            n -= self.d * self.b * self.b
        return n

    def inverse(self) -> "QuadScalar":
        """Multiplicative inverse; raises ZeroDivisionError on zero."""
        if not self:
            raise ZeroDivisionError("division by zero scalar")
        if not self.b:
            return QuadScalar._make(1 / self.a, Fraction(0), None)
        n = self.norm()
        return QuadScalar._make(self.a / n, -self.b / n, self.d)

    # -- comparison / hashing -----------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.b != other.b:
            return False
        if self.b and self.d != other.d:
            return False
        return self.a == other.a

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    # -- rendering ----------------------------------------------------------

    def __str__(self):
        if not self.b:
            return str(self.a)
        root = f"{self.b}*sqrt({self.d})" if self.b > 0 else f"{-self.b}*sqrt({self.d})"
        sign = "+" if self.b > 0 else "-"
        if not self.a:
            return root if self.b > 0 else f"-{root}"
        return f"{self.a}{sign}{root}"

    def __repr__(self):
        return f"QuadScalar({self})"


def as_scalar(value) -> QuadScalar:
    """Coerce an int, Fraction or QuadScalar to a QuadScalar."""
    if isinstance(value, QuadScalar):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return QuadScalar._make(Fraction(value), Fraction(0), None)
    raise TypeError(f"cannot interpret {value!r} as a scalar")


def _coerce(value):
    if isinstance(value, QuadScalar):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return QuadScalar._make(Fraction(value), Fraction(0), None)
    return NotImplemented


# -- parsing ----------------------------------------------------------------
#
# Grammar: INT | INT/INT | expressions in "a+b*sqrt(d)" form with rational
# a, b, including parenthesized variants such as "(-3+1*sqrt(5))/2".

_ALLOWED_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div)


def parse_scalar(text: str, d=None) -> QuadScalar:
    """Parse a scalar string against the session field tag ``d``.

    ``sqrt(k)`` is accepted only when ``k`` equals the supplied tag; plain
    rational strings parse under any tag.
    """
    d = validate_field_tag(d)
    if not isinstance(text, str) or not text.strip():
        raise ScalarParseError(f"empty or non-string scalar {text!r}")
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ScalarParseError(f"malformed scalar {text!r}") from exc
    try:
        return _eval_node(tree.body, d, text)
    except ZeroDivisionError as exc:
        raise ScalarParseError(f"zero denominator in {text!r}") from exc


def _eval_node(node, d, text) -> QuadScalar:
    if isinstance(node, ast.Constant):
        if isinstance(node.value, int) and not isinstance(node.value, bool):
            return QuadScalar(node.value)
        raise ScalarParseError(f"only integer literals allowed, got {node.value!r} in {text!r}")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
        val = _eval_node(node.operand, d, text)
        return -val if isinstance(node.op, ast.USub) else val
    if isinstance(node, ast.BinOp) and isinstance(node.op, _ALLOWED_BINOPS):
        lhs = _eval_node(node.left, d, text)
        rhs = _eval_node(node.right, d, text)
        if isinstance(node.op, ast.Add):
            return lhs + rhs
        if isinstance(node.op, ast.Sub):
            return lhs - rhs
        if isinstance(node.op, ast.Mult):
            return lhs * rhs
        return lhs / rhs
    if isinstance(node, ast.Call):
        if not (isinstance(node.func, ast.Name) and node.func.id == "sqrt"):
            raise ScalarParseError(f"unknown function in {text!r}")
        if len(node.args) != 1 or node.keywords:
            raise ScalarParseError(f"sqrt takes one integer argument in {text!r}")
        arg = node.args[0]
        if not (isinstance(arg, ast.Constant) and isinstance(arg.value, int)):
            raise ScalarParseError(f"sqrt argument must be an integer literal in {text!r}")
        if d is None:
            raise ScalarParseError(
                f"sqrt({arg.value}) needs a field tag, but the session is rational-only"
            )
        if arg.value != d:
            raise ScalarParseError(f"sqrt({arg.value}) does not match the field tag d={d}")
        return QuadScalar.sqrt(d)
    raise ScalarParseError(f"malformed scalar {text!r}")
