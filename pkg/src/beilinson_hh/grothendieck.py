"""Cartan, Serre and Coxeter matrices on the Grothendieck group, plus the trace check.

The Gram matrix of K0 is the Cartan matrix of the algebra: entry (i, j) is
dim e_i A e_j, a pure path count independent of the parameters.  The Serre
action is M^-1 M^T, the Coxeter matrix is -M^-T M, and the alternating sum
of the Hochschild dimensions must equal -tr of the Coxeter matrix (the trace
formula for finite global dimension).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .hochschild import hh_dims_bruteforce
from .linalg import Matrix
from .quiver import DownUpParams, hilbert_coeff
from .scalar import QuadScalar

__all__ = [
    "cartan_matrix",
    "serre_matrix",
    "coxeter_matrix",
    "K0Report",
    "happel_check",
]


@lru_cache(maxsize=None)
def cartan_matrix(n: int) -> Matrix:
    """(2n+2) x (2n+2), entry (i, j) = hilbert_coeff(n, j - i) for j >= i, else 0."""
    if n < 1:
        raise ValueError("n must be >= 1")
    size = 2 * n + 2
    return Matrix(
        [[hilbert_coeff(n, j - i) if j >= i else 0 for j in range(size)] for i in range(size)]
    )


@lru_cache(maxsize=None)
def serre_matrix(n: int) -> Matrix:
    """K0 action of the Serre functor: M^-1 M^T for the Cartan matrix M."""
    m = cartan_matrix(n)
    return m.inverse() * m.transpose()


@lru_cache(maxsize=None)
def coxeter_matrix(n: int) -> Matrix:
    """-M^-T M for the Cartan matrix M."""
    m = cartan_matrix(n)
    return -(m.transpose().inverse() * m)


@dataclass
class K0Report:
    """K0 matrices for one n plus the trace identity checked at one parameter point."""

    params: DownUpParams
    cartan: Matrix
    serre: Matrix
    coxeter: Matrix
    unipotent: bool
    k0_rank: int
    neg_trace_coxeter: QuadScalar
    euler_hh: int
    happel_ok: bool

    def to_json_dict(self) -> dict:
        p = self.params
        return {
            "n": p.n,
            "alpha": str(p.alpha),
            "beta": str(p.beta),
            "d": p.d,
            "unipotent": self.unipotent,
            "k0_rank": self.k0_rank,
            "neg_trace_coxeter": str(self.neg_trace_coxeter),
            "euler_hh": self.euler_hh,
            "happel_ok": self.happel_ok,
            "cartan": self.cartan.to_json_dict(),
            "serre": self.serre.to_json_dict(),
            "coxeter": self.coxeter.to_json_dict(),
        }


def happel_check(p: DownUpParams) -> K0Report:
    """Compare the Hochschild Euler characteristic with -tr of the Coxeter matrix."""
    n = p.n
    cartan = cartan_matrix(n)
    serre = serre_matrix(n)
    coxeter = coxeter_matrix(n)
    h0, h1, h2 = hh_dims_bruteforce(p)
    euler = h0 - h1 + h2
    neg_trace = -coxeter.trace()
    return K0Report(
        params=p,
        cartan=cartan,
        serre=serre,
        coxeter=coxeter,
        unipotent=serre.is_unipotent(),
        k0_rank=2 * n + 2,
        neg_trace_coxeter=neg_trace,
        euler_hh=euler,
        happel_ok=neg_trace == euler,
    )
