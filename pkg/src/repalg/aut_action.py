"""Action of Aut F_n (and of endomorphisms) on the truncated algebra.

Right action: ``s_ij(x_l)^e = s_ij(x_l^e)``.  The left action of an
automorphism is the right action of its inverse, which turns the induced maps
on J/J^k into a homomorphism rather than an anti-homomorphism.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .rep_algebra import AlgebraContext
from .trunc_poly import NotInIdeal, PolyRing, TruncPoly, substitute
from .words import AutPair, Endo, aut_identity


def _endo(e: Endo | AutPair) -> Endo:
    return e.fwd if isinstance(e, AutPair) else e


class AlgebraAction:
    """Memoized images s_ij(x_l) -> s_entry(x_l^e, i, j) for one endomorphism."""

    def __init__(self, ctx: AlgebraContext, e: Endo | AutPair):
        self.ctx = ctx
        self.endo = _endo(e)
        ctx.check_word(self.endo.images[0])
        self._images: dict[int, TruncPoly] = {}
        self._lock = threading.Lock()

    def image(self, v: int) -> TruncPoly:
        got = self._images.get(v)
        if got is None:
            l, i, j = self.ctx.var_keys[v]
            got = self.ctx.s_entry(self.endo.images[l - 1], i, j)
            with self._lock:
                self._images[v] = got
        return got

    def __call__(self, f: TruncPoly) -> TruncPoly:
        _check_ring(self.ctx, f)
        return substitute(f, self.image)


def _check_ring(ctx: AlgebraContext, f: TruncPoly) -> None:
    if f.ring != ctx.ring:
        raise ValueError("polynomial does not belong to this algebra context")


def act_right(ctx: AlgebraContext, e: Endo | AutPair, f: TruncPoly) -> TruncPoly:
    return AlgebraAction(ctx, e)(f)


def act_left(ctx: AlgebraContext, a: AutPair, f: TruncPoly) -> TruncPoly:
    return AlgebraAction(ctx, a.bwd)(f)


def s_sigma(ctx: AlgebraContext, e: Endo | AutPair, f: TruncPoly) -> TruncPoly:
    """f^e - f for f in the augmentation ideal."""
    if f.constant_term():
        raise NotInIdeal("s_sigma is defined on J only")
    return act_right(ctx, e, f) - f


@dataclass
class TruncAuto:
    """An algebra map of a truncated ring given by the images of its variables.

    Used for rho_k (data on J/J^k, so ring cap k-1) and for lifts built by the
    section in ``crossed``.  Composition is ``(self @ other)(f) = self(other(f))``.
    """

    ring: PolyRing
    images: dict[int, TruncPoly]

    def __call__(self, f: TruncPoly) -> TruncPoly:
        if f.ring.cap != self.ring.cap:
            f = f.with_cap(self.ring.cap)
        return substitute(f, self.images, target=self.ring)

    def __matmul__(self, other: "TruncAuto") -> "TruncAuto":
        if self.ring != other.ring:
            raise ValueError("cannot compose maps on different rings")
        return TruncAuto(self.ring, {v: self(p) for v, p in other.images.items()})

    def __eq__(self, other):
        if not isinstance(other, TruncAuto) or self.ring != other.ring:
            return NotImplemented
        return all(self.images[v] == other.images[v] for v in range(self.ring.nvars))

    def image(self, v: int) -> TruncPoly:
        return self.images[v]

    def linear_matrix(self) -> list[list[Fraction]]:
        """Degree-1 block: column v holds the T_1 coordinates of the image of variable v."""
        N = self.ring.nvars
        cols = [[self.images[v].coeff((u,)) for u in range(N)] for v in range(N)]
        return [list(r) for r in zip(*cols)]

    def is_identity(self) -> bool:
        return all(self.images[v] == self.ring.var(v) for v in range(self.ring.nvars))


def identity_auto(ring: PolyRing) -> TruncAuto:
    return TruncAuto(ring, {v: ring.var(v) for v in range(ring.nvars)})


def rho_k(ctx: AlgebraContext, a: AutPair, k: int) -> TruncAuto:
    """Induced automorphism of J/J^k under the left action (images truncated at degree k-1)."""
    if k < 2:
        raise ValueError("rho_k needs k >= 2")
    if k - 1 > ctx.cap:
        raise ValueError(f"rho_{k} needs cap >= {k - 1}")
    ring = ctx.ring.with_cap(k - 1)
    act = AlgebraAction(ctx, a.bwd)
    return TruncAuto(ring, {v: act.image(v).with_cap(k - 1) for v in range(ctx.nvars)})


def rho_from_linear(ring: PolyRing, beta: list[list[Fraction]]) -> TruncAuto:
    """The linear automorphism of a truncated ring whose degree-1 matrix is ``beta``."""
    N = ring.nvars
    images = {}
    for v in range(N):
        images[v] = ring.from_terms({(u,): beta[u][v] for u in range(N) if beta[u][v]})
    return TruncAuto(ring, images)


def left_action_on_hom(ctx2: AlgebraContext, a: AutPair, phi: Mapping[int, TruncPoly]) -> dict[int, TruncPoly]:
    """(a . phi)(v) = a . phi(a^{-1} . v) for phi: gr^1 -> gr^2 given on T_1 generators.

    Uses only linear data of a, as befits a map between graded pieces.
    """
    ring1 = ctx2.ring.with_cap(1)
    fwd_lin = TruncAuto(ring1, {v: AlgebraAction(ctx2, a.bwd).image(v).with_cap(1) for v in range(ctx2.nvars)})
    inv_lin = TruncAuto(ring1, {v: AlgebraAction(ctx2, a.fwd).image(v).with_cap(1) for v in range(ctx2.nvars)})
    ring2 = ctx2.ring.with_cap(2)
    lifted = {v: p.with_cap(2) for v, p in fwd_lin.images.items()}
    out = {}
    for v in range(ctx2.nvars):
        pre = inv_lin.images[v]  # a^{-1} . v, a linear form
        val = ring2.zero()
        for (u,), c in pre.terms.items():
            if u in phi and phi[u]:
                val = val + phi[u].with_cap(2).scale(c)
        out[v] = substitute(val, lifted, target=ring2).graded_part(2)
    return out


def aut_identity_of(ctx: AlgebraContext) -> AutPair:
    return aut_identity(ctx.n)
