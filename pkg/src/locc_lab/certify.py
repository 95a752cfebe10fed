"""Certificates that no party can make a nontrivial non-disturbing first move.

For party A and a state set {|a_i>|b_i>}, a measurement element M preserves
orthogonality iff H = M^dag M satisfies <a_i|H|a_j><b_i|b_j> = 0 for all
i != j. Pairs with <b_i|b_j> = 0 impose nothing; the rest ("active pairs")
give linear constraints on H. If the only Hermitian solutions are multiples
of the identity, every such measurement is trivial.

H is parameterized over the rationals as S + iK with S real symmetric and
K real antisymmetric. Because all kets are real, each active pair splits
into one equation on S and one on K.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .exact_linalg import RationalMatrix, format_rational, kernel_basis, solve_in_span
from .states import StateSet, ket_dot, verify_orthogonality


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class HermitianMatrix:
    """``real + 1j * imag`` with ``real`` symmetric and ``imag`` antisymmetric."""
    real: RationalMatrix
    imag: RationalMatrix

    @property
    def dim(self) -> int:
        return self.real.rows

    def is_scalar(self) -> bool:
        d = self.dim
        c = self.real[0, 0]
        return self.imag.is_zero() and all(
            self.real[i, j] == (c if i == j else 0) for i in range(d) for j in range(d)
        )

    def sandwich(self, u, v) -> tuple[Fraction, Fraction]:
        """``<u|H|v>`` for real u, v as (real part, imaginary part)."""
        re = sum(u[i] * self.real[i, j] * v[j] for i in range(self.dim) for j in range(self.dim))
        im = sum(u[i] * self.imag[i, j] * v[j] for i in range(self.dim) for j in range(self.dim))
        return Fraction(re), Fraction(im)

    def to_json(self) -> dict:
        return {
            "real": [[format_rational(x) for x in r] for r in self.real.to_rows()],
            "imag": [[format_rational(x) for x in r] for r in self.imag.to_rows()],
        }


def hermitian_parameters(d: int) -> list[tuple[str, int, int]]:
    """Coordinates of the real parameterization: ('d', i, i), ('s', i, j), ('k', i, j) with i < j."""
    params = [("d", i, i) for i in range(d)]
    params += [("s", i, j) for i in range(d) for j in range(i + 1, d)]
    params += [("k", i, j) for i in range(d) for j in range(i + 1, d)]
    return params


def _hermitian_from_params(d: int, x) -> HermitianMatrix:
    re = [[Fraction(0)] * d for _ in range(d)]
    im = [[Fraction(0)] * d for _ in range(d)]
    for (kind, i, j), val in zip(hermitian_parameters(d), x):
        if kind == "d":
            re[i][i] = val
        elif kind == "s":
            re[i][j] = re[j][i] = val
        else:
            im[i][j] = val
            im[j][i] = -val
    return HermitianMatrix(RationalMatrix.from_rows(re, d), RationalMatrix.from_rows(im, d))


def _params_from_hermitian(h: HermitianMatrix) -> tuple[Fraction, ...]:
    out = []
    for kind, i, j in hermitian_parameters(h.dim):
        out.append(h.imag[i, j] if kind == "k" else h.real[i, j])
    return tuple(out)


def _local_vectors(s: StateSet, party: str):
    if party == "A":
        return s.n, [st.a.dense() for st in s], [st.b for st in s]
    if party == "B":
        return s.m, [st.b.dense() for st in s], [st.a for st in s]
    raise ValueError(f"party must be 'A' or 'B', got {party!r}")


def active_pairs(s: StateSet, party: str) -> list[tuple[int, int]]:
    """Index pairs (i < j) whose factors on the *other* party overlap."""
    _, _, other = _local_vectors(s, party)
    return [(i, j) for i, j in combinations(range(len(other)), 2) if ket_dot(other[i], other[j]) != 0]


def constraint_rows(s: StateSet, party: str) -> tuple[int, list[list[Fraction]]]:
    d, local, _ = _local_vectors(s, party)
    params = hermitian_parameters(d)
    rows = []
    for i, j in active_pairs(s, party):
        u, v = local[i], local[j]
        sym, anti = [], []
        for kind, p, q in params:
            if kind == "d":
                sym.append(Fraction(u[p] * v[p]))
                anti.append(Fraction(0))
            elif kind == "s":
                sym.append(Fraction(u[p] * v[q] + u[q] * v[p]))
                anti.append(Fraction(0))
            else:
                sym.append(Fraction(0))
                anti.append(Fraction(u[p] * v[q] - u[q] * v[p]))
        if any(sym):
            rows.append(sym)
        if any(anti):
            rows.append(anti)
    return d, rows


@dataclass(frozen=True)
class IndistCertificate:
    party: str
    local_dim: int
    solution_basis: tuple[HermitianMatrix, ...]
    constraint_count: int

    @property
    def solution_dim(self) -> int:
        return len(self.solution_basis)

    @property
    def is_scalar_only(self) -> bool:
        return self.solution_dim == 1

    def to_dict(self) -> dict:
        w = witness_matrix(self)
        return {
            "party": self.party,
            "dim": self.local_dim,
            "solution_dim": self.solution_dim,
            "scalar_only": self.is_scalar_only,
            "active_pairs": self.constraint_count,
            "witness": None if w is None else w.to_json(),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def certify_party(s: StateSet, party: str) -> IndistCertificate:
    bad = verify_orthogonality(s)
    if bad:
        raise PreconditionError(f"state set is not orthogonal, e.g. {bad[0]}")
    d, rows = constraint_rows(s, party)
    params = hermitian_parameters(d)
    kernel = kernel_basis(RationalMatrix.from_rows(rows, len(params))) if rows else [
        tuple(Fraction(int(i == j)) for j in range(len(params))) for i in range(len(params))
    ]
    identity = tuple(Fraction(int(kind == "d")) for kind, _, _ in params)
    # an orthogonal input always admits H = I
    assert solve_in_span(kernel, identity) is not None, "identity outside solution space"
    basis = tuple(_hermitian_from_params(d, x) for x in kernel)
    return IndistCertificate(party, d, basis, len(active_pairs(s, party)))


def certify_both(s: StateSet) -> tuple[IndistCertificate, IndistCertificate]:
    return certify_party(s, "A"), certify_party(s, "B")


def witness_matrix(c: IndistCertificate) -> HermitianMatrix | None:
    """A solution that is not a multiple of the identity, or None.

    The first non-scalar basis element is made traceless, so shifting it by
    a multiple of the identity gives a nontrivial PSD measurement element.
    """
    if c.is_scalar_only:
        return None
    for h in c.solution_basis:
        if not h.is_scalar():
            d = h.dim
            tr = sum((h.real[i, i] for i in range(d)), Fraction(0)) / d
            return HermitianMatrix(h.real - RationalMatrix.identity(d).scale(tr), h.imag)
    raise AssertionError("solution space of dimension > 1 must contain a non-scalar element")


def satisfies_constraints(s: StateSet, party: str, h: HermitianMatrix) -> bool:
    """Re-substitute ``h`` into every active-pair constraint."""
    _, local, _ = _local_vectors(s, party)
    return all(h.sandwich(local[i], local[j]) == (0, 0) for i, j in active_pairs(s, party))
