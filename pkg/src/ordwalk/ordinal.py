"""Ordinals below epsilon_0 in Cantor normal form.

An ordinal is stored as a nested tuple key: a tuple of ``(exponent_key, coef)``
pairs with strictly decreasing exponents.  Zero is the empty tuple.  With this
encoding Python's built-in tuple comparison coincides with the ordinal order,
so comparisons run at C speed.
"""

from __future__ import annotations

import random
import re
from functools import lru_cache
from typing import Iterable, Sequence, Union

__all__ = [
    "Ordinal",
    "ZERO",
    "ONE",
    "OMEGA",
    "ord_",
    "omega_power",
    "compare",
    "add",
    "classify",
    "fundamental_sequence",
    "parse",
    "render",
    "random_below",
    "OrdinalParseError",
]


class OrdinalParseError(ValueError):
    pass


class Ordinal:
    """Immutable CNF ordinal.  Use :func:`ord_` or :func:`parse` to build one."""

    __slots__ = ("_t", "_h")

    def __init__(self, key: tuple = ()):
        self._t = key
        # finite ordinals hash like the matching int, so 5 and Ordinal(5) agree
        if not key:
            self._h = 0
        elif len(key) == 1 and key[0][0] == ():
            self._h = hash(key[0][1])
        else:
            self._h = hash(key)

    # construction helpers

    @staticmethod
    def of(n: "OrdinalLike") -> "Ordinal":
        if isinstance(n, Ordinal):
            return n
        if isinstance(n, bool) or not isinstance(n, int):
            raise TypeError(f"cannot make an ordinal from {n!r}")
        return _finite(n)

    @property
    def key(self) -> tuple:
        return self._t

    def terms(self) -> list[tuple["Ordinal", int]]:
        return [(Ordinal(e), c) for e, c in self._t]

    # order

    def __eq__(self, other):
        if isinstance(other, Ordinal):
            return self._t == other._t
        if isinstance(other, int) and not isinstance(other, bool):
            return other >= 0 and self._t == _finite(other)._t
        return NotImplemented

    def __hash__(self):
        return self._h

    def __lt__(self, other):
        return self._t < _key(other)

    def __le__(self, other):
        return self._t <= _key(other)

    def __gt__(self, other):
        return self._t > _key(other)

    def __ge__(self, other):
        return self._t >= _key(other)

    # arithmetic

    def __add__(self, other):
        return add(self, other)

    def __radd__(self, other):
        return add(Ordinal.of(other), self)

    # predicates

    def is_zero(self) -> bool:
        return not self._t

    def is_finite(self) -> bool:
        return not self._t or (len(self._t) == 1 and self._t[0][0] == ())

    def is_successor(self) -> bool:
        return bool(self._t) and self._t[-1][0] == ()

    def is_limit(self) -> bool:
        return bool(self._t) and self._t[-1][0] != ()

    def __int__(self):
        if not self.is_finite():
            raise ValueError(f"{self} is not finite")
        return self._t[0][1] if self._t else 0

    def __index__(self):
        return int(self)

    def __bool__(self):
        return bool(self._t)

    def succ(self) -> "Ordinal":
        return add(self, ONE)

    def pred(self) -> "Ordinal":
        if not self.is_successor():
            raise ValueError(f"{self} has no predecessor")
        e, c = self._t[-1]
        if c == 1:
            return Ordinal(self._t[:-1])
        return Ordinal(self._t[:-1] + ((e, c - 1),))

    def leading_exponent(self) -> "Ordinal":
        return Ordinal(self._t[0][0]) if self._t else ZERO

    def __repr__(self):
        return f"Ordinal({render(self)!r})"

    def __str__(self):
        return render(self)


OrdinalLike = Union[Ordinal, int]


def _key(x) -> tuple:
    if isinstance(x, Ordinal):
        return x._t
    return Ordinal.of(x)._t


@lru_cache(maxsize=4096)
def _finite(n: int) -> Ordinal:
    if n < 0:
        raise ValueError("ordinals are nonnegative")
    return Ordinal(((((), n),)) if n else ())


ZERO = Ordinal(())
ONE = _finite(1)
OMEGA = Ordinal(((ONE._t, 1),))


def ord_(x: OrdinalLike | str) -> Ordinal:
    """Coerce an int, Ordinal or literal string to an Ordinal."""
    if isinstance(x, str):
        return parse(x)
    return Ordinal.of(x)


def omega_power(e: OrdinalLike, coef: int = 1) -> Ordinal:
    """omega^e * coef."""
    if coef < 0:
        raise ValueError("negative coefficient")
    if coef == 0:
        return ZERO
    return Ordinal(((_key(e), coef),))


def compare(a: OrdinalLike, b: OrdinalLike) -> str:
    ka, kb = _key(a), _key(b)
    if ka < kb:
        return "less"
    if ka > kb:
        return "greater"
    return "equal"


def add(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    ta, tb = _key(a), _key(b)
    if not tb:
        return a if isinstance(a, Ordinal) else Ordinal(ta)
    if not ta:
        return b if isinstance(b, Ordinal) else Ordinal(tb)
    lead, c = tb[0]
    kept = []
    for e, ca in ta:
        if e > lead:
            kept.append((e, ca))
        elif e == lead:
            kept.append((e, ca + c))
            return Ordinal(tuple(kept) + tb[1:])
        else:
            break
    return Ordinal(tuple(kept) + tb)


def classify(a: OrdinalLike) -> tuple[str, Ordinal | None]:
    """Return ("zero", None), ("successor", predecessor) or ("limit", None)."""
    a = Ordinal.of(a)
    if a.is_zero():
        return ("zero", None)
    if a.is_successor():
        return ("successor", a.pred())
    return ("limit", None)


def _split_last(t: tuple) -> tuple[tuple, tuple]:
    """Write t = delta + omega^e and return (delta_key, e_key)."""
    e, c = t[-1]
    delta = t[:-1] if c == 1 else t[:-1] + ((e, c - 1),)
    return delta, e


def _fs_key(t: tuple, k: int) -> tuple:
    delta, e = _split_last(t)
    if e[-1][0] == ():
        # e = e' + 1
        ep = Ordinal(e).pred()._t
        return delta + ((ep, k),) if k else delta
    return delta + ((_fs_key(e, k), 1),)


def fundamental_sequence(a: OrdinalLike, k: int) -> Ordinal:
    """k-th element of the canonical ladder of the limit ordinal a."""
    a = Ordinal.of(a)
    if not a.is_limit():
        raise ValueError(f"{a} is not a limit ordinal")
    if k < 0:
        raise ValueError("negative ladder index")
    return Ordinal(_fs_key(a._t, k))


# literal syntax

_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


def _tokenize(s: str) -> list[str]:
    out = []
    pos = 0
    s = s.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None:
            break
        tok = m.group(1) or m.group(2)
        if tok.isspace():
            pos = m.end()
            continue
        out.append(tok)
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            want = expected or "a token"
            raise OrdinalParseError(f"expected {want} in {self.text!r}, got {tok!r}")
        self.i += 1
        return tok

    def nat(self) -> int:
        tok = self.take()
        if not tok.isdigit():
            raise OrdinalParseError(f"expected a natural number in {self.text!r}, got {tok!r}")
        return int(tok)

    def ord(self) -> Ordinal:
        acc = self.term()
        while self.peek() == "+":
            self.take("+")
            acc = add(acc, self.term())
        return acc

    def term(self) -> Ordinal:
        tok = self.peek()
        if tok is not None and tok.isdigit():
            return _finite(self.nat())
        self.take("w")
        exp: Ordinal = ONE
        if self.peek() == "^":
            self.take("^")
            exp = self.atom()
        coef = 1
        if self.peek() == "*":
            self.take("*")
            coef = self.nat()
        return omega_power(exp, coef)

    def atom(self) -> Ordinal:
        if self.peek() == "(":
            self.take("(")
            val = self.ord()
            self.take(")")
            return val
        return _finite(self.nat())


def parse(text: str) -> Ordinal:
    p = _Parser(text)
    if not p.toks:
        raise OrdinalParseError("empty ordinal literal")
    val = p.ord()
    if p.peek() is not None:
        raise OrdinalParseError(f"trailing input in {text!r} at {p.peek()!r}")
    return val


def _render_key(t: tuple) -> str:
    if not t:
        return "0"
    parts = []
    for e, c in t:
        if e == ():
            parts.append(str(c))
            continue
        if e == ONE._t:
            base = "w"
        elif len(e) == 1 and e[0][0] == ():
            base = f"w^{e[0][1]}"
        else:
            base = f"w^({_render_key(e)})"
        parts.append(base if c == 1 else f"{base}*{c}")
    return "+".join(parts)


def render(a: OrdinalLike) -> str:
    return _render_key(_key(a))


# sampling


def random_below(rng: random.Random, bound: OrdinalLike, max_coef: int = 4,
                 max_terms: int = 3) -> Ordinal:
    """Draw a random ordinal < bound from random CNF terms."""
    bound = Ordinal.of(bound)
    if bound.is_zero():
        raise ValueError("nothing lies below 0")
    if bound.is_finite():
        return _finite(rng.randrange(int(bound)))
    top = bound.leading_exponent().succ()
    while True:
        if rng.random() < 0.15:
            return _finite(rng.randrange(2 * max_coef + 1))
        nterms = rng.randint(1, max_terms)
        exps = {random_below(rng, top, max_coef, max_terms) for _ in range(nterms)}
        key = tuple((e._t, rng.randint(1, max_coef)) for e in sorted(exps, reverse=True))
        cand = Ordinal(key)
        if cand < bound:
            return cand


def sorted_tuple(xs: Iterable[OrdinalLike]) -> tuple[Ordinal, ...]:
    return tuple(sorted(Ordinal.of(x) for x in xs))


def as_tuple(xs: Sequence[OrdinalLike | str]) -> tuple[Ordinal, ...]:
    return tuple(ord_(x) for x in xs)


def limit_part(a: OrdinalLike) -> Ordinal:
    """a with its finite tail removed (0 when a is finite)."""
    t = _key(a)
    if t and t[-1][0] == ():
        t = t[:-1]
    return Ordinal(t)


def random_limit_at_most(rng: random.Random, x: OrdinalLike, tries: int = 20):
    """A random limit ordinal <= x, or None when none was found."""
    x = Ordinal.of(x)
    for _ in range(tries):
        y = limit_part(random_below(rng, x.succ()))
        if not y.is_zero():
            return y
    return None
