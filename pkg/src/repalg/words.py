"""Reduced words in the free group F_n, endomorphisms and Nielsen/Magnus automorphisms.

Endomorphisms act on the right: ``apply_endo(compose(a, b), w)`` applies ``a``
first and then ``b``, i.e. ``w^(ab) = (w^a)^b``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

Letter = tuple[int, int]


class WordError(ValueError):
    pass


class ContextMismatch(ValueError):
    """Raised when objects built for different ranks are combined."""


def reduce(letters: Iterable[Letter], n: int | None = None) -> tuple[Letter, ...]:
    """Freely reduce a raw letter sequence; checks generator indices against ``n``."""
    out: list[Letter] = []
    for gen, sign in letters:
        if sign not in (1, -1):
            raise WordError(f"bad exponent {sign!r} on x{gen}")
        if gen < 1 or (n is not None and gen > n):
            raise WordError(f"generator index {gen} out of range 1..{n}")
        if out and out[-1][0] == gen and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((gen, sign))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    n: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", reduce(self.letters, self.n))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return mul(self, other)

    def __invert__(self) -> "Word":
        return inv(self)

    def is_identity(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"x{g}" if s == 1 else f"x{g}^-1" for g, s in self.letters)


def _check(a: Word, b: Word) -> None:
    if a.n != b.n:
        raise ContextMismatch(f"words over F_{a.n} and F_{b.n} cannot be combined")


def identity(n: int) -> Word:
    return Word(n)


def gen(n: int, l: int, sign: int = 1) -> Word:
    return Word(n, ((l, sign),))


def mul(a: Word, b: Word) -> Word:
    _check(a, b)
    return Word(a.n, a.letters + b.letters)


def inv(a: Word) -> Word:
    return Word(a.n, tuple((g, -s) for g, s in reversed(a.letters)))


def power(a: Word, k: int) -> Word:
    base = a if k >= 0 else inv(a)
    out = identity(a.n)
    for _ in range(abs(k)):
        out = mul(out, base)
    return out


def commutator(a: Word, b: Word) -> Word:
    """[a, b] = a b a^-1 b^-1."""
    _check(a, b)
    return Word(a.n, a.letters + b.letters + inv(a).letters + inv(b).letters)


def left_normed(ws: Sequence[Word]) -> Word:
    """[[...[y1, y2], ...], yk]; a single word is returned unchanged."""
    if not ws:
        raise WordError("left_normed needs at least one word")
    out = ws[0]
    for w in ws[1:]:
        out = commutator(out, w)
    return out


def abelianize(w: Word) -> tuple[int, ...]:
    vec = [0] * w.n
    for g, s in w.letters:
        vec[g - 1] += s
    return tuple(vec)


# --- parsing -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(x\d+|\^-?\d+|[\[\],()])")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise WordError(f"cannot parse word near {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def parse_word(text: str, n: int) -> Word:
    """Parse ``x1 x2^-1 [x1,x2] ([x1,x2] x3)^2``-style literals.

    ``[a,b,c]`` is the left-normed commutator [[a,b],c]; ``(...)`` groups and
    may carry an exponent.
    """
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take():
        nonlocal pos
        if pos >= len(toks):
            raise WordError(f"unexpected end of input in {text!r}")
        pos += 1
        return toks[pos - 1]

    def word(stop: set[str]) -> Word:
        out = identity(n)
        while peek() is not None and peek() not in stop:
            out = mul(out, factor())
        return out

    def factor() -> Word:
        tok = take()
        if tok.startswith("x"):
            base = gen(n, int(tok[1:])) if 1 <= int(tok[1:]) <= n else None
            if base is None:
                raise WordError(f"generator {tok} out of range 1..{n}")
        elif tok == "[":
            parts = [word({",", "]"})]
            while peek() == ",":
                take()
                parts.append(word({",", "]"}))
            if take() != "]":
                raise WordError("unbalanced '['")
            if len(parts) < 2:
                raise WordError("commutator needs at least two entries")
            base = left_normed(parts)
        elif tok == "(":
            base = word({")"})
            if peek() != ")":
                raise WordError("unbalanced '('")
            take()
        else:
            raise WordError(f"unexpected token {tok!r}")
        if peek() is not None and peek().startswith("^"):
            base = power(base, int(take()[1:]))
        return base

    result = word(set())
    if pos != len(toks):
        raise WordError(f"trailing input in {text!r}")
    return result


# --- endomorphisms ------------------------------------------------------


@dataclass(frozen=True)
class Endo:
    n: int
    images: tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != self.n:
            raise WordError(f"need {self.n} generator images, got {len(self.images)}")
        for w in self.images:
            if w.n != self.n:
                raise ContextMismatch("image word over a different free group")

    def __call__(self, w: Word) -> Word:
        return apply_endo(self, w)

    def __str__(self) -> str:
        return "{" + ", ".join(f"x{l + 1} -> {w}" for l, w in enumerate(self.images)) + "}"


def endo_identity(n: int) -> Endo:
    return Endo(n, tuple(gen(n, l) for l in range(1, n + 1)))


def apply_endo(e: Endo, w: Word) -> Word:
    if e.n != w.n:
        raise ContextMismatch("endomorphism and word live in different free groups")
    letters: list[Letter] = []
    for g, s in w.letters:
        img = e.images[g - 1]
        letters.extend(img.letters if s == 1 else inv(img).letters)
    return Word(e.n, tuple(letters))


def compose(e1: Endo, e2: Endo) -> Endo:
    """The endomorphism x -> (x^e1)^e2."""
    if e1.n != e2.n:
        raise ContextMismatch("cannot compose endomorphisms of different free groups")
    return Endo(e1.n, tuple(apply_endo(e2, w) for w in e1.images))


def abelian_matrix(e: Endo) -> list[list[int]]:
    """Integer matrix whose l-th column is the abelianized image of x_l."""
    cols = [abelianize(w) for w in e.images]
    return [[cols[c][r] for c in range(e.n)] for r in range(e.n)]


@dataclass(frozen=True)
class AutPair:
    fwd: Endo
    bwd: Endo
    name: str = ""

    def __post_init__(self):
        if self.fwd.n != self.bwd.n:
            raise ContextMismatch("forward and backward maps over different ranks")
        n = self.fwd.n
        for l in range(1, n + 1):
            x = gen(n, l)
            if apply_endo(self.bwd, apply_endo(self.fwd, x)) != x or apply_endo(
                self.fwd, apply_endo(self.bwd, x)
            ) != x:
                raise WordError(f"{self.name or 'pair'} is not an automorphism/inverse pair")

    @property
    def n(self) -> int:
        return self.fwd.n

    def inverse(self) -> "AutPair":
        return AutPair(self.bwd, self.fwd, _inv_name(self.name))

    def __mul__(self, other: "AutPair") -> "AutPair":
        return compose_aut(self, other)

    def __str__(self) -> str:
        return self.name or str(self.fwd)


def _inv_name(name: str) -> str:
    if not name:
        return ""
    if " " not in name:
        return name[:-3] if name.endswith("^-1") else name + "^-1"
    return " ".join(_inv_name(t) for t in reversed(name.split()))


def aut_identity(n: int) -> AutPair:
    e = endo_identity(n)
    return AutPair(e, e, "1")


def compose_aut(a: AutPair, b: AutPair) -> AutPair:
    """Group product ab acting on the right: x^(ab) = (x^a)^b."""
    if a.n != b.n:
        raise ContextMismatch("automorphisms of different free groups")
    name = " ".join(t for t in (a.name, b.name) if t and t != "1") or "1"
    return AutPair(compose(a.fwd, b.fwd), compose(b.bwd, a.bwd), name)


def aut_commutator(a: AutPair, b: AutPair) -> AutPair:
    return compose_aut(compose_aut(compose_aut(a, b), a.inverse()), b.inverse())


def _endo_from(n: int, changes: dict[int, Word]) -> Endo:
    return Endo(n, tuple(changes.get(l, gen(n, l)) for l in range(1, n + 1)))


def nielsen(name: str, n: int) -> AutPair:
    """Nielsen generators P, Q, S, U of Aut F_n."""
    if n < 1:
        raise WordError("rank must be positive")
    x = lambda l, s=1: gen(n, l, s)  # noqa: E731
    if name == "S":
        e = _endo_from(n, {1: x(1, -1)})
        return AutPair(e, e, "S")
    if n < 2:
        raise WordError(f"{name} needs n >= 2")
    if name == "P":
        e = _endo_from(n, {1: x(2), 2: x(1)})
        return AutPair(e, e, "P")
    if name == "Q":
        fwd = Endo(n, tuple(x(l % n + 1) for l in range(1, n + 1)))
        bwd = Endo(n, tuple(x((l - 2) % n + 1) for l in range(1, n + 1)))
        return AutPair(fwd, bwd, "Q")
    if name == "U":
        fwd = _endo_from(n, {1: mul(x(1), x(2))})
        bwd = _endo_from(n, {1: mul(x(1), x(2, -1))})
        return AutPair(fwd, bwd, "U")
    raise WordError(f"unknown Nielsen generator {name!r}")


def magnus_Kij(i: int, j: int, n: int) -> AutPair:
    """K_ij : x_i -> x_j^-1 x_i x_j."""
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise WordError(f"K_{i}{j} needs distinct indices in 1..{n}")
    xi, xj = gen(n, i), gen(n, j)
    fwd = _endo_from(n, {i: inv(xj) * xi * xj})
    bwd = _endo_from(n, {i: xj * xi * inv(xj)})
    return AutPair(fwd, bwd, f"K{i},{j}" if n > 9 else f"K{i}{j}")


def magnus_Kijl(i: int, j: int, l: int, n: int) -> AutPair:
    """K_ijl : x_i -> x_i [x_j, x_l]  (j < l)."""
    if len({i, j, l}) != 3 or not all(1 <= t <= n for t in (i, j, l)) or not j < l:
        raise WordError(f"K_{i}{j}{l} needs distinct indices in 1..{n} with j < l")
    xi, xj, xl = gen(n, i), gen(n, j), gen(n, l)
    fwd = _endo_from(n, {i: xi * commutator(xj, xl)})
    bwd = _endo_from(n, {i: xi * commutator(xl, xj)})
    return AutPair(fwd, bwd, f"K{i},{j},{l}" if n > 9 else f"K{i}{j}{l}")


def magnus_generators(n: int) -> list[AutPair]:
    out = [magnus_Kij(i, j, n) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    out += [
        magnus_Kijl(i, j, l, n)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        for l in range(j + 1, n + 1)
        if i not in (j, l)
    ]
    return out


_AUT_TOKEN = re.compile(r"^(P|Q|S|U|1|K(?:\d+|\(\d+(?:,\d+)*\)|\d+(?:,\d+)+))(\^-1|\^1)?$")


def parse_aut(text: str, n: int) -> AutPair:
    """Parse whitespace-separated tokens such as ``U S U^-1`` or ``K12 K1,2,3^-1``.

    Tokens are composed left to right (the leftmost acts first).
    """
    out = aut_identity(n)
    tokens = text.split()
    if not tokens:
        raise WordError("empty automorphism specification")
    for tok in tokens:
        m = _AUT_TOKEN.match(tok)
        if not m:
            raise WordError(f"bad automorphism token {tok!r}")
        head, exp = m.group(1), m.group(2)
        if head == "1":
            g = aut_identity(n)
        elif head in "PQSU":
            g = nielsen(head, n)
        else:
            body = head[1:].strip("()")
            idx = [int(t) for t in body.split(",")] if "," in body else [int(c) for c in body]
            if len(idx) == 2:
                g = magnus_Kij(*idx, n)
            elif len(idx) == 3:
                g = magnus_Kijl(*idx, n)
            else:
                raise WordError(f"Magnus generator {tok!r} needs 2 or 3 indices")
        if exp == "^-1":
            g = g.inverse()
        out = compose_aut(out, g)
    return out


# --- random generation --------------------------------------------------


def random_word(n: int, length: int, rng: random.Random) -> Word:
    return Word(n, tuple((rng.randint(1, n), rng.choice((1, -1))) for _ in range(length)))


def random_nielsen_tokens(n: int, length: int, rng: random.Random) -> list[str]:
    names = ["P", "Q", "S", "U"]
    return [rng.choice(names) + rng.choice(("", "^-1")) for _ in range(length)]


def random_nielsen_word(n: int, length: int, rng: random.Random) -> AutPair:
    toks = random_nielsen_tokens(n, length, rng)
    return parse_aut(" ".join(toks), n) if toks else aut_identity(n)
