"""Sparse commutative polynomials over Q truncated at a total-degree cap.

A monomial is a sorted tuple of variable indices with repetition, so its
degree is its length and the empty tuple is the constant monomial.  The
canonical term order is graded, then lexicographic on the index tuple; the
variable indices themselves are assigned in the order the ring lists them.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

Monomial = tuple[int, ...]
INF_DEGREE = 10**9


class CapMismatch(ValueError):
    pass


class NotInIdeal(ValueError):
    """A substitution image (or argument) has a nonzero constant term."""


class PolyRing:
    """Variable namespace plus degree cap.  Rings compare by identity of names and cap."""

    def __init__(self, names: Sequence[str], cap: int, namespace: str = "algebra"):
        if cap < 0:
            raise ValueError("cap must be non-negative")
        self.names = tuple(names)
        self.cap = cap
        self.namespace = namespace
        self._key = (self.names, namespace)
        self.index = {name: i for i, name in enumerate(self.names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def same_space(self, other: "PolyRing") -> bool:
        return self is other or self._key == other._key

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.cap == other.cap and self.same_space(other)

    def __hash__(self):
        return hash((self._key, self.cap))

    def __repr__(self):
        return f"PolyRing({self.nvars} vars, cap={self.cap}, {self.namespace})"

    def with_cap(self, cap: int) -> "PolyRing":
        r = PolyRing.__new__(PolyRing)
        r.names, r.cap, r.namespace, r._key, r.index = self.names, cap, self.namespace, self._key, self.index
        return r

    # constructors
    def zero(self) -> "TruncPoly":
        return TruncPoly(self, {})

    def one(self) -> "TruncPoly":
        return self.const(1)

    def const(self, c) -> "TruncPoly":
        c = Fraction(c)
        return TruncPoly(self, {(): c} if c else {})

    def var(self, v: int | str) -> "TruncPoly":
        i = self.index[v] if isinstance(v, str) else v
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable {v!r} not in ring")
        return TruncPoly(self, {(i,): Fraction(1)} if self.cap >= 1 else {})

    def monomial(self, mono: Monomial, coeff=1) -> "TruncPoly":
        mono = tuple(sorted(mono))
        if len(mono) > self.cap or not coeff:
            return self.zero()
        return TruncPoly(self, {mono: Fraction(coeff)})

    def from_terms(self, terms: Mapping[Monomial, object]) -> "TruncPoly":
        out: dict[Monomial, Fraction] = defaultdict(Fraction)
        for mono, c in terms.items():
            mono = tuple(sorted(mono))
            if len(mono) <= self.cap:
                out[mono] += Fraction(c)
        return TruncPoly(self, {k: v for k, v in out.items() if v})

    def monomials_of_degree(self, k: int, variables: Sequence[int] | None = None) -> list[Monomial]:
        """All degree-k monomials in the given variables, canonically ordered."""
        from itertools import combinations_with_replacement

        vs = sorted(range(self.nvars) if variables is None else variables)
        return list(combinations_with_replacement(vs, k))

    def mono_str(self, mono: Monomial) -> str:
        if not mono:
            return "1"
        parts, i = [], 0
        while i < len(mono):
            j = i
            while j < len(mono) and mono[j] == mono[i]:
                j += 1
            name = self.names[mono[i]]
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(parts)


def mono_key(mono: Monomial):
    return (len(mono), mono)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b))


class TruncPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict[Monomial, Fraction]):
        self.ring = ring
        self.terms = terms

    # -- basic protocol --------------------------------------------------
    @property
    def cap(self) -> int:
        return self.ring.cap

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(): Fraction(other)} if other else {})
        if not isinstance(other, TruncPoly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __repr__(self):
        return f"TruncPoly({self})"

    def __str__(self):
        return self.to_text()

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: mono_key(t[0]))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for k, (mono, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            body = f"{abs(c)} {self.ring.mono_str(mono)}" if mono else f"{abs(c)}"
            out.append((f"-{body}" if sign == "-" else body) if k == 0 else f"{sign} {body}")
        return " ".join(out)

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def coeff(self, mono: Monomial) -> Fraction:
        return self.terms.get(tuple(sorted(mono)), Fraction(0))

    # -- ring operations -------------------------------------------------
    def _check(self, other: "TruncPoly") -> None:
        if self.ring.cap != other.ring.cap:
            raise CapMismatch(f"cap {self.ring.cap} vs {other.ring.cap}")
        if not self.ring.same_space(other.ring):
            raise CapMismatch("polynomials from different variable namespaces")

    def _coerce(self, other) -> "TruncPoly":
        if isinstance(other, TruncPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        raise TypeError(f"cannot combine TruncPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return TruncPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncPoly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "TruncPoly":
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return TruncPoly(self.ring, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return inverse_of_unit(self) ** (-k)
        out, base = self.ring.one(), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- grading ---------------------------------------------------------
    def min_degree(self) -> int:
        """Lowest degree present; ``INF_DEGREE`` for the zero polynomial."""
        return min((len(m) for m in self.terms), default=INF_DEGREE)

    def max_degree(self) -> int:
        return max((len(m) for m in self.terms), default=-1)

    def graded_part(self, k: int) -> "TruncPoly":
        return TruncPoly(self.ring, {m: c for m, c in self.terms.items() if len(m) == k})

    def truncate(self, k: int) -> "TruncPoly":
        """Drop every term of degree > k (stays in the same ring)."""
        return TruncPoly(self.ring, {m: c for m, c in self.terms.items() if len(m) <= k})

    def with_cap(self, cap: int) -> "TruncPoly":
        ring = self.ring.with_cap(cap)
        return TruncPoly(ring, {m: c for m, c in self.terms.items() if len(m) <= cap})

    def variables(self) -> set[int]:
        return {v for m in self.terms for v in m}


def add(f: TruncPoly, g: TruncPoly) -> TruncPoly:
    return f + g


def scale(c, f: TruncPoly) -> TruncPoly:
    return f.scale(c)


def mul(f: TruncPoly, g: TruncPoly) -> TruncPoly:
    f._check(g)
    cap = f.ring.cap
    if not f.terms or not g.terms:
        return f.ring.zero()
    by_deg: dict[int, list] = defaultdict(list)
    for m, c in g.terms.items():
        by_deg[len(m)].append((m, c))
    gdegs = sorted(by_deg)
    out: dict[Monomial, Fraction] = {}
    get = out.get
    for m1, c1 in f.terms.items():
        room = cap - len(m1)
        for d in gdegs:
            if d > room:
                break
            for m2, c2 in by_deg[d]:
                m = mono_mul(m1, m2)
                out[m] = get(m, 0) + c1 * c2
    return TruncPoly(f.ring, {m: c for m, c in out.items() if c})


def sum_polys(ring: PolyRing, polys: Iterable[TruncPoly]) -> TruncPoly:
    out: dict[Monomial, Fraction] = {}
    for p in polys:
        for m, c in p.terms.items():
            out[m] = out.get(m, 0) + c
    return TruncPoly(ring, {m: c for m, c in out.items() if c})


def inverse_of_unit(f: TruncPoly) -> TruncPoly:
    """Multiplicative inverse by geometric series; the constant term must be nonzero."""
    c0 = f.constant_term()
    if not c0:
        raise ZeroDivisionError("inverse_of_unit: zero constant term")
    ring = f.ring
    a = 1 / c0
    nil = -(f.scale(a) - 1)  # f = c0 (1 - nil), nil in the ideal
    out, power = ring.one(), ring.one()
    for _ in range(ring.cap):
        power = power * nil
        if not power:
            break
        out = out + power
    return out.scale(a)


def substitute(
    f: TruncPoly,
    images: Mapping[int, TruncPoly] | Callable[[int], TruncPoly],
    target: PolyRing | None = None,
    check_ideal: bool = True,
) -> TruncPoly:
    """Replace each variable ``v`` of ``f`` by ``images[v]`` and truncate.

    Images must have zero constant term unless ``check_ideal`` is False.
    Variables absent from the mapping are left alone when the target ring is
    the source ring.
    """
    target = target or f.ring
    lookup = images if callable(images) else None
    cache: dict[Monomial, TruncPoly] = {(): target.one()}

    def image(v: int) -> TruncPoly:
        if lookup is not None:
            img = lookup(v)
        elif v in images:
            img = images[v]
        elif target.same_space(f.ring):
            img = target.var(v)
        else:
            raise KeyError(f"no image for variable {f.ring.names[v]}")
        if img.ring.cap != target.cap:
            img = img.with_cap(target.cap)
        if check_ideal and img.constant_term():
            raise NotInIdeal(f"image of {f.ring.names[v]} has a nonzero constant term")
        return img

    var_img: dict[int, TruncPoly] = {}

    def mono_image(mono: Monomial) -> TruncPoly:
        got = cache.get(mono)
        if got is not None:
            return got
        head = mono_image(mono[:-1])
        v = mono[-1]
        if v not in var_img:
            var_img[v] = image(v)
        res = head * var_img[v] if head else head
        cache[mono] = res
        return res

    out: dict[Monomial, Fraction] = {}
    for mono, c in sorted(f.terms.items(), key=lambda t: mono_key(t[0])):
        if check_ideal and len(mono) > target.cap:
            continue
        p = mono_image(mono)
        for m, d in p.terms.items():
            out[m] = out.get(m, 0) + c * d
    return TruncPoly(target, {m: c for m, c in out.items() if c})


def min_degree(f: TruncPoly) -> int:
    return f.min_degree()


def graded_part(f: TruncPoly, k: int) -> TruncPoly:
    return f.graded_part(k)
