"""Clubs and higher C-sequences.

A club is a lazily enumerated closed subset of an ordinal.  Indices into a
club are ordinals (finite for the omega-type ladders, arbitrary for full
clubs), so compounding can push clubs through order isomorphisms.
"""

from __future__ import annotations

from typing import Callable, Iterator, Optional

from .ordinal import (
    OMEGA,
    ZERO,
    Ordinal,
    OrdinalLike,
    fundamental_sequence,
    parse,
)

__all__ = [
    "Club",
    "EmptyClub",
    "FiniteClub",
    "LadderClub",
    "FullClub",
    "ImageClub",
    "RelativizedClub",
    "HigherCSequence",
    "CoherenceViolation",
    "UndefinedClub",
    "trivial_sequence",
    "canonical_sequence",
    "compound",
    "square_like",
    "full_at",
    "parse_cseq",
]


class CoherenceViolation(ValueError):
    pass


class UndefinedClub(KeyError):
    pass


def _o(x) -> Ordinal:
    return Ordinal.of(x)


class Club:
    """Closed subset of an ordinal with order-isomorphism access."""

    def order_type(self) -> Ordinal:
        raise NotImplementedError

    def element_at(self, i: OrdinalLike) -> Ordinal:
        raise NotImplementedError

    def min_above(self, x: OrdinalLike) -> Optional[Ordinal]:
        """Least member >= x, or None."""
        raise NotImplementedError

    def sup(self) -> Ordinal:
        raise NotImplementedError

    def index_of(self, x: OrdinalLike) -> Optional[Ordinal]:
        raise NotImplementedError

    def max_below(self, x: OrdinalLike) -> Optional[Ordinal]:
        """Largest member < x; None if there is none.  Raises if no max exists."""
        raise NotImplementedError

    def sup_strictly_below(self, x: OrdinalLike) -> Ordinal:
        """sup(x & C), with sup of the empty set equal to 0."""
        raise NotImplementedError

    def contains(self, x: OrdinalLike) -> bool:
        m = self.min_above(x)
        return m is not None and m == x

    def __contains__(self, x):
        return self.contains(x)

    def is_empty(self) -> bool:
        return self.min_above(ZERO) is None

    def count_below(self, x: OrdinalLike) -> Ordinal:
        """Order type of x & C."""
        m = self.min_above(x)
        if m is None:
            return self.order_type()
        return self.index_of(m)

    def is_accumulation(self, a: OrdinalLike) -> bool:
        a = _o(a)
        return a.is_limit() and self.sup_strictly_below(a) == a

    def members(self, limit: int = 32) -> Iterator[Ordinal]:
        """First members in increasing order, at most ``limit`` of them."""
        x = ZERO
        for _ in range(limit):
            m = self.min_above(x)
            if m is None:
                return
            yield m
            x = m.succ()


class EmptyClub(Club):
    def order_type(self):
        return ZERO

    def element_at(self, i):
        raise IndexError("empty club")

    def min_above(self, x):
        return None

    def sup(self):
        return ZERO

    def index_of(self, x):
        return None

    def max_below(self, x):
        return None

    def sup_strictly_below(self, x):
        return ZERO

    def __repr__(self):
        return "EmptyClub()"

    def __eq__(self, other):
        return isinstance(other, EmptyClub)

    def __hash__(self):
        return 0


EMPTY = EmptyClub()


class FiniteClub(Club):
    def __init__(self, elems):
        self.elems = tuple(sorted(set(_o(e) for e in elems)))

    def order_type(self):
        return _o(len(self.elems))

    def element_at(self, i):
        return self.elems[int(i)]

    def min_above(self, x):
        for e in self.elems:
            if e >= x:
                return e
        return None

    def sup(self):
        return self.elems[-1] if self.elems else ZERO

    def index_of(self, x):
        try:
            return _o(self.elems.index(x))
        except ValueError:
            return None

    def max_below(self, x):
        best = None
        for e in self.elems:
            if e < x:
                best = e
        return best

    def sup_strictly_below(self, x):
        m = self.max_below(x)
        return ZERO if m is None else m

    def __repr__(self):
        return f"FiniteClub({[str(e) for e in self.elems]})"

    def __eq__(self, other):
        return isinstance(other, FiniteClub) and self.elems == other.elems

    def __hash__(self):
        return hash(self.elems)


class LadderClub(Club):
    """The canonical fundamental sequence of a limit ordinal, order type omega."""

    def __init__(self, lam: OrdinalLike):
        lam = _o(lam)
        if not lam.is_limit():
            raise ValueError(f"{lam} is not a limit")
        self.lam = lam
        self._elems: list[Ordinal] = []
        self._min_cache: dict = {}

    def order_type(self):
        return OMEGA

    def _at(self, k: int) -> Ordinal:
        el = self._elems
        while len(el) <= k:
            el.append(fundamental_sequence(self.lam, len(el)))
        return el[k]

    def element_at(self, i):
        return self._at(int(i))

    def _least_index(self, x: Ordinal) -> Optional[int]:
        # least k with ladder[k] >= x, by galloping then bisection
        if x >= self.lam:
            return None
        hit = self._min_cache.get(x)
        if hit is not None:
            return hit
        if self._at(0) >= x:
            self._min_cache[x] = 0
            return 0
        lo, hi = 0, 1
        while self._ladder_value(hi) < x:
            lo, hi = hi, hi * 2
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self._ladder_value(mid) >= x:
                hi = mid
            else:
                lo = mid
        self._min_cache[x] = hi
        return hi

    def _ladder_value(self, k: int) -> Ordinal:
        if k < len(self._elems) or k < 64:
            return self._at(k)
        return fundamental_sequence(self.lam, k)

    def min_above(self, x):
        k = self._least_index(_o(x))
        return None if k is None else self._ladder_value(k)

    def sup(self):
        return self.lam

    def index_of(self, x):
        x = _o(x)
        k = self._least_index(x)
        if k is None or self._ladder_value(k) != x:
            return None
        return _o(k)

    def max_below(self, x):
        x = _o(x)
        k = self._least_index(x)
        if k is None:
            raise ValueError(f"ladder of {self.lam} has no max below {x}")
        return None if k == 0 else self._ladder_value(k - 1)

    def sup_strictly_below(self, x):
        x = _o(x)
        k = self._least_index(x)
        if k is None:
            return self.lam
        return ZERO if k == 0 else self._ladder_value(k - 1)

    def count_below(self, x):
        k = self._least_index(_o(x))
        return OMEGA if k is None else _o(k)

    def __repr__(self):
        return f"LadderClub({self.lam})"

    def __eq__(self, other):
        return isinstance(other, LadderClub) and self.lam == other.lam

    def __hash__(self):
        return hash(("ladder", self.lam))


class FullClub(Club):
    """All ordinals below b; enumeration is the identity."""

    def __init__(self, b: OrdinalLike):
        self.b = _o(b)

    def order_type(self):
        return self.b

    def element_at(self, i):
        i = _o(i)
        if i >= self.b:
            raise IndexError(f"index {i} beyond {self.b}")
        return i

    def min_above(self, x):
        x = _o(x)
        return x if x < self.b else None

    def sup(self):
        b = self.b
        return b.pred() if b.is_successor() else b

    def index_of(self, x):
        x = _o(x)
        return x if x < self.b else None

    def max_below(self, x):
        y = min(_o(x), self.b)
        if y.is_zero():
            return None
        if y.is_successor():
            return y.pred()
        raise ValueError(f"no largest ordinal below the limit {y}")

    def sup_strictly_below(self, x):
        y = min(_o(x), self.b)
        return y.pred() if y.is_successor() else y

    def __repr__(self):
        return f"FullClub({self.b})"

    def __eq__(self, other):
        return isinstance(other, FullClub) and self.b == other.b

    def __hash__(self):
        return hash(("full", self.b))


class ImageClub(Club):
    """Image of ``inner`` (a set of indices) under the enumeration of ``outer``."""

    def __init__(self, inner: Club, outer: Club):
        self.inner = inner
        self.outer = outer

    def order_type(self):
        return self.inner.order_type()

    def element_at(self, i):
        return self.outer.element_at(self.inner.element_at(i))

    def _outer_index_at_or_above(self, x) -> Optional[Ordinal]:
        m = self.outer.min_above(x)
        return None if m is None else self.outer.index_of(m)

    def min_above(self, x):
        j = self._outer_index_at_or_above(x)
        if j is None:
            return None
        k = self.inner.min_above(j)
        if k is None or k >= self.outer.order_type():
            return None
        return self.outer.element_at(k)

    def sup(self):
        return self._sup_of_indices_below(self.outer.order_type())

    def index_of(self, x):
        j = self.outer.index_of(x)
        if j is None:
            return None
        return self.inner.index_of(j)

    def max_below(self, x):
        j = self._outer_index_at_or_above(x)
        if j is None:
            j = self.outer.order_type()
        k = self.inner.max_below(j)
        return None if k is None else self.outer.element_at(k)

    def sup_strictly_below(self, x):
        j = self._outer_index_at_or_above(x)
        if j is None:
            j = self.outer.order_type()
        return self._sup_of_indices_below(j)

    def _sup_of_indices_below(self, j):
        s = self.inner.sup_strictly_below(j)
        if self.inner.contains(s) and s < j:
            return self.outer.element_at(s)
        if s.is_zero():
            return ZERO
        # s is a limit index not attained: take the sup of the outer prefix
        if s < self.outer.order_type():
            return self.outer.sup_strictly_below(self.outer.element_at(s))
        return self.outer.sup()

    def __repr__(self):
        return f"ImageClub({self.inner!r} -> {self.outer!r})"

    def __eq__(self, other):
        return (isinstance(other, ImageClub) and self.inner == other.inner
                and self.outer == other.outer)

    def __hash__(self):
        return hash(("image", self.inner, self.outer))


class RelativizedClub(Club):
    """Members of ``club`` below ``bound``."""

    def __init__(self, club: Club, bound: OrdinalLike):
        self.club = club
        self.bound = _o(bound)

    def order_type(self):
        return self.club.count_below(self.bound)

    def element_at(self, i):
        x = self.club.element_at(i)
        if x >= self.bound:
            raise IndexError(f"index {i} beyond the relativized club")
        return x

    def min_above(self, x):
        m = self.club.min_above(x)
        return m if m is not None and m < self.bound else None

    def sup(self):
        return self.club.sup_strictly_below(self.bound)

    def index_of(self, x):
        return self.club.index_of(x) if _o(x) < self.bound else None

    def max_below(self, x):
        return self.club.max_below(min(_o(x), self.bound))

    def sup_strictly_below(self, x):
        return self.club.sup_strictly_below(min(_o(x), self.bound))

    def __repr__(self):
        return f"RelativizedClub({self.club!r} below {self.bound})"

    def __eq__(self, other):
        return (isinstance(other, RelativizedClub) and self.club == other.club
                and self.bound == other.bound)

    def __hash__(self):
        return hash(("rel", self.club, self.bound))


def _same_below(a: Club, b: Club, bound: Ordinal, probes: int = 32) -> bool:
    """Compare a & bound with b on their sups and leading members."""
    if a.sup_strictly_below(bound) != b.sup_strictly_below(bound):
        return False
    xs = [m for m in a.members(probes) if m < bound]
    ys = [m for m in b.members(probes) if m < bound]
    return xs == ys


Resolver = Callable[["HigherCSequence", tuple, Optional[Club]], Club]


class HigherCSequence:
    """An order-n C-sequence given by a resolver on valid C-indices.

    ``domain`` is the ordinal the sequence lives on; ``None`` means all of
    epsilon_0.  The resolver receives the index tuple and the already
    resolved club of its tail (None for length-1 indices).
    """

    def __init__(self, order: int, domain: Optional[OrdinalLike], resolver: Resolver,
                 kind: str):
        if order < 1:
            raise ValueError("order must be positive")
        self.order = order
        self.domain = None if domain is None else _o(domain)
        self._resolver = resolver
        self.kind = kind
        self._cache: dict = {}

    def __repr__(self):
        return f"HigherCSequence({self.kind}, order={self.order})"

    def in_domain(self, x: Ordinal) -> bool:
        return self.domain is None or x < self.domain

    def club(self, index) -> Optional[Club]:
        """C at the index tuple, or None when the tuple is not a C-index."""
        index = tuple(_o(x) for x in index)
        if not index:
            if self.domain is None:
                raise UndefinedClub("C of the empty index needs a bounded domain")
            return FullClub(self.domain)
        try:
            return self._cache[index]
        except KeyError:
            pass
        club = self._resolve(index)
        self._cache[index] = club
        return club

    def _resolve(self, index: tuple) -> Optional[Club]:
        if len(index) > self.order:
            return None
        if len(index) == 1:
            if not self.in_domain(index[0]):
                return None
            return self._resolver(self, index, None)
        parent = self.club(index[1:])
        if parent is None or not parent.contains(index[0]):
            return None
        return self._resolver(self, index, parent)

    def is_index(self, index) -> bool:
        return self.club(index) is not None

    def __getitem__(self, index):
        if not isinstance(index, tuple):
            index = (index,)
        club = self.club(index)
        if club is None:
            raise UndefinedClub(index)
        return club


def _canonical_club(b: Ordinal) -> Club:
    if b.is_zero():
        return EMPTY
    if b.is_successor():
        return FiniteClub((b.pred(),))
    return LadderClub(b)


def trivial_sequence(eps: Optional[OrdinalLike] = None, n: int = 1) -> HigherCSequence:
    def resolve(seq, index, parent):
        return FullClub(index[0]) if index[0] else EMPTY
    return HigherCSequence(n, eps, resolve, "trivial")


def canonical_sequence(eps: Optional[OrdinalLike] = None, n: int = 1) -> HigherCSequence:
    """Canonical ladders; for n > 1 lifted by relativization, C_{a,b...} = a & C_{b...}."""

    def resolve(seq, index, parent):
        if len(index) == 1:
            return _canonical_club(index[0])
        # a & C_{b...} collapses to a & C at the last coordinate
        return RelativizedClub(_canonical_club(index[-1]), index[0])

    return HigherCSequence(n, eps, resolve, "canonical" if n == 1 else f"canonical:{n}")


def _base_club(base: HigherCSequence, b: Ordinal) -> Club:
    club = base.club((b,))
    if club is None:
        raise UndefinedClub((b,))
    return club


def compound(base: HigherCSequence, n: int) -> HigherCSequence:
    """C_{x..., g} = pi_g[C_{pi_g^-1(x)...}] with pi_g the enumeration of C_g."""

    def resolve(seq, index, parent):
        top = _base_club(base, index[-1])
        if len(index) == 1:
            return top
        ks = []
        for x in index[:-1]:
            k = top.index_of(x)
            if k is None:
                raise UndefinedClub(index)
            ks.append(k)
        inner = seq.club(tuple(ks))
        if inner is None:
            raise UndefinedClub(index)
        if isinstance(inner, EmptyClub):
            return EMPTY
        return ImageClub(inner, top)

    return HigherCSequence(n, base.domain, resolve, f"compound:{n}")


def square_like(base: HigherCSequence, n: int) -> HigherCSequence:
    """C_{a,b...} = C_a at accumulation points a of C_{b...}, else {max C_{b...} & a}."""

    def resolve(seq, index, parent):
        if len(index) == 1:
            return _base_club(base, index[0])
        a = index[0]
        if parent.is_accumulation(a):
            ca = _base_club(base, a)
            if not _same_below(parent, ca, a):
                raise CoherenceViolation(
                    f"C at {tuple(str(x) for x in index[1:])} below {a} differs from C_{a}")
            return ca
        m = parent.max_below(a)
        return EMPTY if m is None else FiniteClub((m,))

    return HigherCSequence(n, base.domain, resolve, f"square:{n}")


def full_at(base: HigherCSequence, lam: OrdinalLike) -> HigherCSequence:
    """Override C_lam = lam, C_{b,lam} = C_b, and deeper (x..., b, lam) -> base C_{x..., b}."""
    lam = _o(lam)
    if not lam.is_limit():
        raise ValueError(f"{lam} is not a limit ordinal")
    if base.domain is not None and lam >= base.domain:
        raise ValueError(f"{lam} lies outside the domain")

    def resolve(seq, index, parent):
        if index[-1] != lam:
            club = base.club(index)
            if club is None:
                raise UndefinedClub(index)
            return club
        if len(index) == 1:
            return FullClub(lam)
        club = base.club(index[:-1])
        if club is None:
            raise UndefinedClub(index)
        return club

    order = max(base.order, 2)
    return _FullAt(order, base, lam, resolve)


class _FullAt(HigherCSequence):
    def __init__(self, order, base, lam, resolve):
        super().__init__(order, base.domain, resolve, f"full:{lam},{base.kind}")
        self.base = base
        self.lam = lam

    def _resolve(self, index):
        # indices not ending in lam are exactly the base's indices
        if index[-1] != self.lam:
            if len(index) > self.order:
                return None
            return self.base.club(index)
        return super()._resolve(index)


def parse_cseq(selector: str, domain: Optional[OrdinalLike] = None,
               default_order: int = 2) -> HigherCSequence:
    """Build a sequence from a selector such as ``compound:2`` or ``full:w,square:2``."""
    selector = selector.strip()
    head, _, rest = selector.partition(":")
    try:
        if head == "trivial":
            n = int(rest) if rest else default_order
            return trivial_sequence(domain, n)
        if head == "canonical":
            return canonical_sequence(domain, int(rest) if rest else 1)
        if head == "compound":
            return compound(canonical_sequence(domain), int(rest) if rest else default_order)
        if head == "square":
            return square_like(canonical_sequence(domain), int(rest) if rest else default_order)
        if head == "full" and rest:
            lam_text, _, base_text = rest.partition(",")
            base = parse_cseq(base_text or f"compound:{default_order}", domain, default_order)
            return full_at(base, parse(lam_text))
    except (ValueError, IndexError) as exc:
        raise ValueError(f"bad C-sequence selector {selector!r}: {exc}") from None
    raise ValueError(f"bad C-sequence selector {selector!r}")
