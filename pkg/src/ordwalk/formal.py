"""Finitely supported integer combinations of tuple keys."""

from __future__ import annotations

from typing import Iterable, Mapping


class FormalSum:
    """Element of the free abelian group on hashable keys (tuples of ordinals here)."""

    __slots__ = ("_c",)

    def __init__(self, coefficients: Mapping | None = None):
        self._c = {k: v for k, v in (coefficients or {}).items() if v}

    @classmethod
    def generator(cls, key, coef: int = 1) -> "FormalSum":
        return cls({key: coef})

    @classmethod
    def total(cls, sums: Iterable["FormalSum"]) -> "FormalSum":
        acc: dict = {}
        for s in sums:
            for k, v in s._c.items():
                acc[k] = acc.get(k, 0) + v
        return cls(acc)

    def items(self):
        return self._c.items()

    def __getitem__(self, key) -> int:
        return self._c.get(key, 0)

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __add__(self, other: "FormalSum") -> "FormalSum":
        acc = dict(self._c)
        for k, v in other._c.items():
            acc[k] = acc.get(k, 0) + v
        return FormalSum(acc)

    def __neg__(self):
        return FormalSum({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scalar: int):
        return FormalSum({k: scalar * v for k, v in self._c.items()})

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._c
        return isinstance(other, FormalSum) and self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __repr__(self):
        if not self._c:
            return "FormalSum(0)"

        def show(k):
            if isinstance(k, tuple):
                return "[" + ",".join(str(x) for x in k) + "]"
            return str(k)

        parts = []
        for k, v in sorted(self._c.items(), key=lambda kv: repr(kv[0])):
            parts.append(f"{v:+d}{show(k)}")
        return "FormalSum(" + " ".join(parts) + ")"
