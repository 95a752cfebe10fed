"""Joint states of system + ancilla and local projectors.

Alice holds a (dim 2) and A (dim n); Bob holds b (dim 2) and B (dim m).
A party's local index is ``(anc - 1) * d + (sys - 1)``, i.e. ancilla-major,
so ``|1>_a<1| (x) P`` occupies the top-left d x d block.

A joint state is kept as a sparse map ``(alice_index, bob_index) -> amp``,
which is the coefficient matrix of the state across the aA | bB cut.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from ..exact_linalg import RationalMatrix, rank
from ..states import Ket, ProductState

PARTIES = ("A", "B")


def other(party: str) -> str:
    return "B" if party == "A" else "A"


@dataclass(frozen=True)
class Resource:
    """Ancilla state ``sum coeff |a>|b>``, unnormalized."""
    amps: tuple[tuple[int, int, int], ...]

    @classmethod
    def mes(cls) -> Resource:
        return cls(((1, 1, 1), (2, 2, 1)))

    @classmethod
    def product(cls, a: int = 1, b: int = 1) -> Resource:
        return cls(((a, b, 1),))

    def schmidt_rank(self) -> int:
        m = [[0, 0], [0, 0]]
        for a, b, c in self.amps:
            m[a - 1][b - 1] += c
        return rank(RationalMatrix.from_rows(m))


@dataclass(frozen=True)
class Projector:
    """Local operator on one party's (ancilla x system) space."""
    matrix: RationalMatrix

    @property
    def size(self) -> int:
        return self.matrix.rows

    @cached_property
    def columns(self) -> dict[int, tuple[tuple[int, Fraction], ...]]:
        cols: dict[int, list] = {}
        m = self.matrix
        for i in range(m.rows):
            for j in range(m.cols):
                x = m[i, j]
                if x:
                    cols.setdefault(j, []).append((i, x))
        return {j: tuple(v) for j, v in cols.items()}

    @cached_property
    def rank(self) -> int:
        # trace of a projector
        return int(sum((self.matrix[i, i] for i in range(self.size)), Fraction(0)))

    def __add__(self, other: Projector) -> Projector:
        return Projector(self.matrix + other.matrix)

    def complement(self) -> Projector:
        return Projector(RationalMatrix.identity(self.size) - self.matrix)

    def mirrored(self) -> Projector:
        """Swap ancilla labels 1 <-> 2."""
        d = self.size // 2
        perm = [(i + d) % self.size for i in range(self.size)]
        m = self.matrix
        return Projector(RationalMatrix(
            self.size, self.size,
            tuple(m[perm[i], perm[j]] for i in range(self.size) for j in range(self.size)),
        ))

    def key(self) -> tuple:
        return self.matrix.entries


def zero_projector(d: int) -> Projector:
    return Projector(RationalMatrix.zeros(2 * d, 2 * d))


def identity_projector(d: int) -> Projector:
    return Projector(RationalMatrix.identity(2 * d))


def ray_projector(d: int, anc: int | None, vec: Sequence) -> Projector:
    """``|anc><anc| (x) |v><v| / <v|v>``; ``anc=None`` means identity on the ancilla."""
    v = [Fraction(x) for x in vec]
    nrm = sum(x * x for x in v)
    ancs = (1, 2) if anc is None else (anc,)
    e = [Fraction(0)] * (4 * d * d)
    for c in ancs:
        off = (c - 1) * d
        for i in range(d):
            if v[i]:
                for j in range(d):
                    if v[j]:
                        e[(off + i) * 2 * d + off + j] = v[i] * v[j] / nrm
    return Projector(RationalMatrix(2 * d, 2 * d, tuple(e)))


def full_ray_projector(vec: Sequence) -> Projector:
    """``|v><v| / <v|v>`` for a vector on the whole (ancilla x system) space."""
    v = [Fraction(x) for x in vec]
    nrm = sum(x * x for x in v)
    size = len(v)
    nz = [i for i, x in enumerate(v) if x]
    e = [Fraction(0)] * (size * size)
    for i in nz:
        for j in nz:
            e[i * size + j] = v[i] * v[j] / nrm
    return Projector(RationalMatrix(size, size, tuple(e)))


def ket_projector(anc: int | None, ket: Ket) -> Projector:
    return ray_projector(ket.dim, anc, ket.dense())


def basis_projector(d: int, anc: int | None, indices: Iterable[int]) -> Projector:
    """``|anc><anc| (x) sum_{i in indices} |i><i|`` with 1-based system labels."""
    ancs = (1, 2) if anc is None else (anc,)
    e = [Fraction(0)] * (4 * d * d)
    for c in ancs:
        for i in indices:
            if not 1 <= i <= d:
                raise ValueError(f"basis label {i} outside 1..{d}")
            k = (c - 1) * d + i - 1
            e[k * 2 * d + k] = Fraction(1)
    return Projector(RationalMatrix(2 * d, 2 * d, tuple(e)))


def span_projector(d: int, anc: int | None, vectors: Sequence[Sequence]) -> Projector:
    """Orthogonal projector onto the span of real system vectors (exact Gram-Schmidt)."""
    ortho: list[list[Fraction]] = []
    for v in vectors:
        w = [Fraction(x) for x in v]
        for u in ortho:
            c = sum(a * b for a, b in zip(w, u)) / sum(a * a for a in u)
            w = [a - c * b for a, b in zip(w, u)]
        if any(w):
            ortho.append(w)
    total = zero_projector(d)
    for u in ortho:
        total = total + ray_projector(d, anc, u)
    return total


def sum_projectors(ps: Iterable[Projector], d: int) -> Projector:
    total = zero_projector(d)
    for p in ps:
        total = total + p
    return total


@dataclass(frozen=True)
class JointState:
    """Unnormalized vector on A (x) B (x) a (x) b, descended from one input state."""
    n: int
    m: int
    origin: str
    coeffs: Mapping[tuple[int, int], Fraction] = field(hash=False, compare=False)

    @classmethod
    def prepare(cls, s: ProductState, resource: Resource | None = None) -> JointState:
        resource = Resource.mes() if resource is None else resource
        n, m = s.a.dim, s.b.dim
        coeffs: dict[tuple[int, int], Fraction] = {}
        for a, b, c in resource.amps:
            for i, x in s.a.amps:
                for j, y in s.b.amps:
                    key = ((a - 1) * n + i - 1, (b - 1) * m + j - 1)
                    coeffs[key] = coeffs.get(key, 0) + Fraction(c * x * y)
        return cls(n, m, s.label, {k: v for k, v in coeffs.items() if v})

    def is_zero(self) -> bool:
        return not self.coeffs

    def norm2(self) -> Fraction:
        return sum((x * x for x in self.coeffs.values()), Fraction(0))

    def inner(self, other: JointState) -> Fraction:
        small, big = sorted((self.coeffs, other.coeffs), key=len)
        return sum((x * big[k] for k, x in small.items() if k in big), Fraction(0))

    def apply(self, party: str, p: Projector) -> JointState:
        cols = p.columns
        out: dict[tuple[int, int], Fraction] = {}
        if party == "A":
            for (i, j), x in self.coeffs.items():
                for r, pv in cols.get(i, ()):
                    out[r, j] = out.get((r, j), 0) + pv * x
        else:
            for (i, j), x in self.coeffs.items():
                for r, pv in cols.get(j, ()):
                    out[i, r] = out.get((i, r), 0) + pv * x
        return JointState(self.n, self.m, self.origin, {k: v for k, v in out.items() if v})

    def local_dim(self, party: str) -> int:
        return self.n if party == "A" else self.m

    def schmidt_rank(self) -> int:
        return self._schmidt_rank

    @cached_property
    def _schmidt_rank(self) -> int:
        rows = sorted({i for i, _ in self.coeffs})
        cols = sorted({j for _, j in self.coeffs})
        if not rows:
            return 0
        ri = {r: k for k, r in enumerate(rows)}
        ci = {c: k for k, c in enumerate(cols)}
        mat = [[Fraction(0)] * len(cols) for _ in rows]
        for (i, j), x in self.coeffs.items():
            mat[ri[i]][ci[j]] = x
        return rank(RationalMatrix.from_rows(mat, len(cols)))

    def local_vectors(self, party: str) -> list[tuple[int, tuple[Fraction, ...]]]:
        """``(ancilla, system vector)`` for every nonzero column of the cut matrix, per ancilla block."""
        d = self.local_dim(party)
        groups: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), x in self.coeffs.items():
            mine, theirs = (i, j) if party == "A" else (j, i)
            anc, sys_ = divmod(mine, d)
            groups.setdefault((theirs, anc), {})[sys_] = x
        out = []
        for (_, anc), entries in sorted(groups.items()):
            v = [Fraction(0)] * d
            for sys_, x in entries.items():
                v[sys_] = x
            out.append((anc + 1, tuple(v)))
        return out

    def local_columns(self, party: str) -> list[tuple[Fraction, ...]]:
        """Full local vectors (ancilla and system together), one per nonzero column of the cut matrix."""
        size = 2 * self.local_dim(party)
        groups: dict[int, dict[int, Fraction]] = {}
        for (i, j), x in self.coeffs.items():
            mine, theirs = (i, j) if party == "A" else (j, i)
            groups.setdefault(theirs, {})[mine] = x
        out = []
        for _, entries in sorted(groups.items()):
            v = [Fraction(0)] * size
            for k, x in entries.items():
                v[k] = x
            out.append(tuple(v))
        return out

    @property
    def amps(self) -> tuple[Fraction, ...]:
        """Dense amplitudes in lexicographic (A, B, a, b) order."""
        n, m = self.n, self.m
        out = [Fraction(0)] * (n * m * 4)
        for (i, j), x in self.coeffs.items():
            a, A = divmod(i, n)
            b, B = divmod(j, m)
            out[((A * m + B) * 2 + a) * 2 + b] = x
        return tuple(out)
