"""The three parameterized families of orthogonal product states.

``thm1``    C^n x C^4,  n > 4, 2n-1 states (``thm1_n4``: the 8-state n = 4 variant)
``thm2``    C^n x C^2l, n >= 2l > 4, 2(n+2l)-8 states
``thm3``    C^n x C^2k+1, n >= 2k+1 >= 5, 2(n-m)+9 states if m = 5 else 2(n+m)-7

Each constructor transcribes its state list line by line; ranges that come
out empty at the parameter boundaries simply contribute no states.
"""

from __future__ import annotations

from dataclasses import dataclass

from .states import Ket, StateSet, _Builder

FAMILIES = ("thm1", "thm1_n4", "thm2", "thm3")


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class FamilyParams:
    n: int
    m: int

    @property
    def l(self) -> int:  # noqa: E743
        if self.m % 2:
            raise ParameterError(f"l is only defined for even m, got m={self.m}")
        return self.m // 2

    @property
    def k(self) -> int:
        if not self.m % 2:
            raise ParameterError(f"k is only defined for odd m, got m={self.m}")
        return (self.m - 1) // 2


def auto_family(n: int, m: int) -> str:
    if m == 4:
        return "thm1_n4" if n == 4 else "thm1"
    return "thm3" if m % 2 else "thm2"


def check_params(p: FamilyParams, family: str) -> None:
    n, m = p.n, p.m
    if family == "thm1":
        if m != 4 or n <= 4:
            raise ParameterError(f"thm1 needs n > m = 4, got n={n}, m={m}")
    elif family == "thm1_n4":
        if (n, m) != (4, 4):
            raise ParameterError(f"thm1_n4 needs n = m = 4, got n={n}, m={m}")
    elif family == "thm2":
        if m % 2 or not n >= m > 4:
            raise ParameterError(f"thm2 needs n >= m = 2l > 4 with m even, got n={n}, m={m}")
    elif family == "thm3":
        if m % 2 == 0 or not n >= m >= 5:
            raise ParameterError(f"thm3 needs n >= m = 2k+1 >= 5 with m odd, got n={n}, m={m}")
    else:
        raise ParameterError(f"unknown family {family!r}; expected one of {FAMILIES}")


def _plus(dim: int, i: int, j: int) -> Ket:
    return Ket.of(dim, i, j)


def _minus(dim: int, i: int, j: int) -> Ket:
    return Ket.of(dim, i, (j, -1))


def thm1_parity_ranges(n: int) -> tuple[list[int], list[int]]:
    """Index sets of the |phi_{i+5}> lines: odd i (B-factor |1>), even i (|2>)."""
    odd = list(range(1, 2 * ((n - 4) // 2) - 1 + 1, 2))
    even = list(range(2, 2 * (-(-(n - 4) // 2)) - 2 + 1, 2))
    return odd, even


def thm2_parity_ranges(n: int, l: int) -> tuple[list[int], list[int]]:  # noqa: E741
    odd = list(range(1, 2 * ((n - l) // 2) - 1 + 1, 2))
    even = list(range(2, 2 * (-(-(n - l) // 2)) - 2 + 1, 2))
    return odd, even


def thm3_parity_ranges(n: int, m: int) -> tuple[list[int], list[int]]:
    """Odd i up to 2*ceil((n-m)/2)-1, even i from 0 up to 2*floor((n-m)/2)-2."""
    odd = list(range(1, 2 * (-(-(n - m) // 2)) - 1 + 1, 2))
    even = list(range(0, 2 * ((n - m) // 2) - 2 + 1, 2))
    return odd, even


def build_thm1(p: FamilyParams) -> StateSet:
    n, m = p.n, p.m
    if (n, m) == (4, 4):
        return build_thm1_n4(p)
    check_params(p, "thm1")
    s = _Builder(n, m)
    s.add("phi", Ket.alternating(n), Ket.alternating(m))
    s.add("varphi_1", s.A(1), _plus(m, 2, 3))
    s.add("varphi_2", _plus(n, 2, 3), s.B(3))
    s.add("varphi_3", _plus(n, 1, 2), s.B(4))
    s.add("varphi_4", s.A(2), _plus(m, 1, 2))
    s.add("varphi_5", _plus(n, 3, 4), s.B(1))
    odd, even = thm1_parity_ranges(n)
    for i in sorted(odd + even):
        s.add(f"varphi_{i + 5}", _plus(n, 4 + i, 5 + i), s.B(1 if i % 2 else 2))
    s.add(f"varphi_{n + 1}", _minus(n, 3, 5), s.B(2))
    for i in range(0, n - 4 + 1):
        s.add(f"varphi_{i + n + 2}", s.A(4 + i), _plus(m, 3, 4))
    return s.build("thm1")


def build_thm1_n4(p: FamilyParams) -> StateSet:
    """Eight states in C^4 x C^4: the n = 4 reading with |3-5> replaced by |3+4>."""
    check_params(p, "thm1_n4")
    s = _Builder(4, 4)
    s.add("phi", Ket.alternating(4), Ket.alternating(4))
    s.add("varphi_1", s.A(1), _plus(4, 2, 3))
    s.add("varphi_2", _plus(4, 2, 3), s.B(3))
    s.add("varphi_3", _plus(4, 1, 2), s.B(4))
    s.add("varphi_4", s.A(2), _plus(4, 1, 2))
    s.add("varphi_5", _plus(4, 3, 4), s.B(1))
    s.add("varphi_7", _plus(4, 3, 4), s.B(2))
    s.add("varphi_6", s.A(4), _plus(4, 3, 4))
    return s.build("thm1_n4")


def build_thm2(p: FamilyParams) -> StateSet:
    check_params(p, "thm2")
    n, m, l = p.n, p.m, p.l  # noqa: E741
    s = _Builder(n, m)
    s.add("phi", Ket.alternating(n), Ket.alternating(m))
    for i in range(1, l):
        s.add(f"psi_{i}", _plus(n, i, i + 1), s.B(i))
    s.add(f"psi_{l}", _plus(n, l - 2, l - 1), s.B(l))
    for i in range(1, l - 2):
        s.add(f"psi_{i + l}", s.A(i), _plus(m, l, l + 1))
    for i in range(1, l - 2):
        s.add(f"psi_{i + 2 * l - 3}", s.A(l + 3 + i), _plus(m, l, l + 1))
    s.add(f"psi_{3 * l - 5}", s.A(l), _plus(m, l, l + 1))
    s.add(f"psi_{3 * l - 4}", s.A(l + 2), _plus(m, l - 1, l))
    s.add(f"psi_{3 * l - 3}", s.A(l + 1), _plus(m, l - 1, l))
    for i in range(1, n - 2 * l + 1):
        s.add(f"psi_{i + 3 * l - 3}", s.A(2 * l + i), _plus(m, l, l + 1))
    for i in range(1, l):
        s.add(f"varphi_{i}", s.A(i), _plus(m, 2 * l - i, 2 * l + 1 - i))
    for i in range(1, l - 1):
        s.add(f"varphi_{i + l - 1}", s.A(2 * l + 1 - i), _plus(m, i, i + 1))
    s.add(f"varphi_{2 * l - 2}", _plus(n, l + 1, l + 2), s.B(l + 1))
    # a |1+(l+1)> B-factor would overlap phi (even l) and varphi_{l-1} (l = 3);
    # pairing with psi_l needs the |l> component, so the factor is |l+(l+1)>.
    s.add(f"varphi_{2 * l - 1}", s.A(l + 3), _plus(m, l, l + 1))
    for i in range(1, l - 1):
        s.add(f"varphi_{i + 2 * l - 1}", _plus(n, l, l + 1), s.B(i))
    for i in range(1, l - 1):
        s.add(f"varphi_{i + 3 * l - 3}", _plus(n, l, l + 1), s.B(l + 2 + i))
    odd, even = thm2_parity_ranges(n, l)
    for i in sorted(odd + even):
        s.add(f"phi_{i}", _plus(n, l + i, l + 1 + i), s.B(l + 2 if i % 2 else l + 3))
    return s.build("thm2")


def build_thm3(p: FamilyParams) -> StateSet:
    check_params(p, "thm3")
    n, m, k = p.n, p.m, p.k
    s = _Builder(n, m)
    s.add("phi", Ket.alternating(n), Ket.alternating(m))
    # phi_1..phi_4 reference labels k-2 and k+4, which only exist for k >= 3;
    # the m = 5 count 2(n-m)+9 is exactly the list without them.
    if k >= 3:
        s.add("phi_1", _plus(n, k - 2, k - 1), s.B(k))
        s.add("phi_2", _plus(n, k + 3, k + 4), s.B(k + 2))
        s.add("phi_3", s.A(k), _plus(m, k + 3, k + 4))
        s.add("phi_4", s.A(k + 2), _plus(m, k - 2, k - 1))
    for i in range(1, k + 1):
        s.add(f"psi_{i}", _plus(n, i, i + 1), s.B(i))
    for i in range(k + 1, 2 * k + 1):
        s.add(f"psi_{i}", _plus(n, i, i + 1), s.B(i + 1))
    for i in range(1, k - 1):
        s.add(f"psi_{i + 2 * k}", s.A(i), _plus(m, k + 1, k + 2))
    for i in range(k + 4, n + 1):
        s.add(f"psi_{i + 2 * k - 5}", s.A(i), _plus(m, k, k + 1))
    for i in range(1, k + 1):
        s.add(f"varphi_{i}", s.A(i), _plus(m, 2 * k + 1 - i, 2 * k + 2 - i))
    for i in range(k + 1, 2 * k + 1):
        s.add(f"varphi_{i}", s.A(i + 1), _plus(m, 2 * k + 1 - i, 2 * k + 2 - i))
    for i in range(1, k - 1):
        s.add(f"varphi_{i + 2 * k}", _plus(n, k, k + 1), s.B(i))
    for i in range(k + 4, 2 * k + 2):
        s.add(f"varphi_{i + 2 * k - 5}", _plus(n, k + 1, k + 2), s.B(i))
    odd, even = thm3_parity_ranges(n, m)
    for i in sorted(odd + even):
        if i % 2:
            s.add(f"phi_{i + 5}", _plus(n, 2 * k + i, 2 * k + 1 + i), s.B(2 * k))
        else:
            s.add(f"phi_{i + 5}", _plus(n, 2 * k + 2 + i, 2 * k + 3 + i), s.B(2 * k + 1))
    return s.build("thm3")


_BUILDERS = {"thm1": build_thm1, "thm1_n4": build_thm1_n4, "thm2": build_thm2, "thm3": build_thm3}


def build(n: int, m: int, family: str = "auto") -> StateSet:
    if family == "auto":
        family = auto_family(n, m)
    p = FamilyParams(n, m)
    check_params(p, family)
    return _BUILDERS[family](p)


def expected_count(p: FamilyParams, family: str = "auto") -> int:
    """Closed-form family size."""
    n, m = p.n, p.m
    if family == "auto":
        family = auto_family(n, m)
    check_params(p, family)
    if family == "thm1":
        return 2 * n - 1
    if family == "thm1_n4":
        return 8
    if family == "thm2":
        return 2 * (n + m) - 8
    return 2 * (n - m) + 9 if m == 5 else 2 * (n + m) - 7


def valid_families(n: int, m: int) -> list[str]:
    out = []
    for fam in FAMILIES:
        try:
            check_params(FamilyParams(n, m), fam)
        except ParameterError:
            continue
        out.append(fam)
    return out
