"""Kets, product states and state sets.

Basis labels are 1-based (``|1>`` .. ``|d>``). Kets keep integer
amplitudes and are never normalized: ``|2+3>`` is stored as
``[(2, 1), (3, 1)]`` and stands for ``(|2> + |3>)/sqrt(2)``. Orthogonality
and proportionality are unaffected by the missing factor.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .exact_linalg import DimensionError


@dataclass(frozen=True)
class Ket:
    dim: int
    amps: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"ket dimension must be positive, got {self.dim}")
        if not self.amps:
            raise ValueError("a ket needs at least one nonzero amplitude")
        prev = 0
        for idx, coeff in self.amps:
            if not prev < idx <= self.dim:
                raise ValueError(
                    f"basis labels must increase within [1, {self.dim}]: {self.amps}"
                )
            if coeff == 0:
                raise ValueError("zero coefficients are not stored")
            prev = idx

    @classmethod
    def of(cls, dim: int, *terms) -> Ket:
        """``Ket.of(4, 2, (3, -1))`` is ``|2-3>`` in C^4; bare ints mean coeff 1."""
        pairs = [(t, 1) if isinstance(t, int) else tuple(t) for t in terms]
        return cls(dim, tuple(sorted(pairs)))

    @classmethod
    def basis(cls, dim: int, i: int) -> Ket:
        return cls(dim, ((i, 1),))

    @classmethod
    def alternating(cls, dim: int, first: int = 1, last: int | None = None) -> Ket:
        """``|first - (first+1) + ...>`` with sign ``(-1)^(i-1)`` on label i."""
        last = dim if last is None else last
        return cls(dim, tuple((i, (-1) ** (i - 1)) for i in range(first, last + 1)))

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.amps)

    def dense(self) -> tuple[int, ...]:
        v = [0] * self.dim
        for i, c in self.amps:
            v[i - 1] = c
        return tuple(v)

    def norm2(self) -> int:
        return sum(c * c for _, c in self.amps)

    def __str__(self):
        out = []
        for k, (i, c) in enumerate(self.amps):
            sign = "-" if c < 0 else ("+" if k else "")
            mag = "" if abs(c) == 1 else str(abs(c))
            out.append(f"{sign}{mag}{i}")
        return "|" + "".join(out) + ">"


def ket_dot(x: Ket, y: Ket) -> int:
    if x.dim != y.dim:
        raise DimensionError(f"ket dimensions differ: {x.dim} vs {y.dim}")
    ya = dict(y.amps)
    return sum(c * ya.get(i, 0) for i, c in x.amps)


@dataclass(frozen=True)
class ProductState:
    label: str
    a: Ket
    b: Ket

    def __str__(self):
        return f"{self.label} = {self.a}_A {self.b}_B"


def inner_product(x: ProductState, y: ProductState) -> Fraction:
    """Unnormalized overlap ``<a_x|a_y> <b_x|b_y>``."""
    return Fraction(ket_dot(x.a, y.a) * ket_dot(x.b, y.b))


@dataclass(frozen=True)
class StateSet:
    n: int
    m: int
    states: tuple[ProductState, ...]
    family: str = "custom"

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        seen = set()
        for s in self.states:
            if s.a.dim != self.n or s.b.dim != self.m:
                raise DimensionError(
                    f"{s.label} lives in C^{s.a.dim} x C^{s.b.dim}, set is C^{self.n} x C^{self.m}"
                )
            if s.label in seen:
                raise ValueError(f"duplicate label {s.label}")
            seen.add(s.label)

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def labels(self) -> list[str]:
        return [s.label for s in self.states]

    def get(self, label: str) -> ProductState:
        for s in self.states:
            if s.label == label:
                return s
        raise KeyError(label)

    def without(self, *labels: str) -> StateSet:
        drop = set(labels)
        missing = drop - set(self.labels())
        if missing:
            raise KeyError(f"no such states: {sorted(missing)}")
        return StateSet(self.n, self.m, tuple(s for s in self.states if s.label not in drop),
                        self.family)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "family": self.family,
            "states": [
                {"label": s.label,
                 "a": [list(t) for t in s.a.amps],
                 "b": [list(t) for t in s.b.amps]}
                for s in self.states
            ],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> StateSet:
        n, m = int(d["n"]), int(d["m"])
        states = [
            ProductState(
                s["label"],
                Ket(n, tuple((int(i), int(c)) for i, c in s["a"])),
                Ket(m, tuple((int(i), int(c)) for i, c in s["b"])),
            )
            for s in d["states"]
        ]
        return cls(n, m, tuple(states), d.get("family", "custom"))

    @classmethod
    def from_json(cls, text: str) -> StateSet:
        return cls.from_dict(json.loads(text))


def verify_orthogonality(s: StateSet | Iterable[ProductState]) -> list[tuple[str, str]]:
    """All unordered pairs with nonzero overlap; an empty list means the set is orthogonal."""
    states: Sequence[ProductState] = list(s)
    return [(x.label, y.label) for x, y in combinations(states, 2) if inner_product(x, y) != 0]


@dataclass
class _Builder:
    """Accumulates states for a family constructor."""
    n: int
    m: int
    states: list[ProductState] = field(default_factory=list)

    def add(self, label: str, a: Ket, b: Ket) -> None:
        self.states.append(ProductState(label, a, b))

    def A(self, *terms) -> Ket:
        return Ket.of(self.n, *terms)

    def B(self, *terms) -> Ket:
        return Ket.of(self.m, *terms)

    def build(self, family: str) -> StateSet:
        return StateSet(self.n, self.m, tuple(self.states), family)
