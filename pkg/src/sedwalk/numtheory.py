"""Exact arithmetic helpers: 2-adic valuations, square-free parts, spectrum
recognition into quadratic-integer form, and integer relation parity.

Everything here is exact (ints and Fractions); floating point enters only at
the recognition boundary where eigenvalues computed numerically are matched
against exact candidates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "nu2",
    "nu2_fraction",
    "gcd_set",
    "fraction_gcd",
    "is_perfect_square",
    "square_free_part",
    "QuadraticIntegerForm",
    "ExactEigenvalue",
    "recognize_spectrum",
    "recognize_values",
    "integer_kernel_basis",
    "RelationParity",
    "RelationParityResult",
    "integer_relation_parity",
]

DEFAULT_RECOGNITION_TOL = 1e-7


def nu2(a: int) -> int:
    """2-adic valuation of a nonzero integer."""
    if a == 0:
        raise ValueError("nu2(0) is undefined (infinite)")
    a = abs(int(a))
    return (a & -a).bit_length() - 1


def nu2_fraction(x: Fraction | int) -> int:
    """2-adic valuation extended to nonzero rationals: nu2(p/q) = nu2(p) - nu2(q)."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("nu2 of 0 is undefined (infinite)")
    return nu2(x.numerator) - nu2(x.denominator)


def gcd_set(values: Iterable[int]) -> int:
    """Non-negative gcd of a set of integers; gcd of nothing (or all zeros) is 0."""
    g = 0
    for v in values:
        g = math.gcd(g, abs(int(v)))
    return g


def fraction_gcd(values: Iterable[Fraction]) -> Fraction:
    """gcd on rationals: the positive generator of the additive group they span."""
    vals = [Fraction(v) for v in values if v != 0]
    if not vals:
        return Fraction(0)
    den = math.lcm(*(v.denominator for v in vals))
    g = gcd_set(int(v * den) for v in vals)
    return Fraction(g, den)


def is_perfect_square(n: int) -> tuple[bool, int | None]:
    """Whether ``n`` is a perfect square, and its root when it is."""
    if n < 0:
        return False, None
    r = math.isqrt(n)
    return (True, r) if r * r == n else (False, None)


def square_free_part(n: int) -> tuple[int, int]:
    """Split ``n = s * f**2`` with ``s`` square-free; returns ``(s, f)``."""
    if n == 0:
        return 0, 1
    sign = -1 if n < 0 else 1
    n = abs(n)
    s, f = 1, 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            count = 0
            while n % d == 0:
                n //= d
                count += 1
            if count % 2:
                s *= d
            f *= d ** (count // 2)
        d += 1 if d == 2 else 2
    s *= n
    return sign * s, f


# -- recognized spectra ----------------------------------------------------


@dataclass(frozen=True)
class QuadraticIntegerForm:
    """Shared exact form for a list of eigenvalues: value_j = (a + b_j*sqrt(delta)) / 2.

    ``delta == 1`` means every value is an integer (then ``a = 0`` and
    ``b_j = 2*value_j`` by convention); otherwise ``delta`` is square-free and
    at least 2 and the rational part ``a/2`` is shared by all values.
    """

    a: int
    b: tuple[int, ...]
    delta: int

    def __post_init__(self) -> None:
        if self.delta < 1:
            raise ValueError("delta must be positive")
        if self.delta > 1 and square_free_part(self.delta)[0] != self.delta:
            raise ValueError("delta must be square-free")

    def __len__(self) -> int:
        return len(self.b)

    def value(self, j: int) -> float:
        return (self.a + self.b[j] * math.sqrt(self.delta)) / 2.0

    def values(self) -> list[float]:
        return [self.value(j) for j in range(len(self.b))]

    def exact_value(self, j: int) -> "ExactEigenvalue":
        if self.delta == 1:
            return ExactEigenvalue(Fraction(self.a + self.b[j], 2), Fraction(0), 1)
        return ExactEigenvalue(Fraction(self.a, 2), Fraction(self.b[j], 2), self.delta)

    def scaled_difference(self, i: int, j: int) -> Fraction:
        """(value_i - value_j) / sqrt(delta) as an exact rational."""
        return Fraction(self.b[i] - self.b[j], 2)

    @property
    def all_integer(self) -> bool:
        return self.delta == 1


@dataclass(frozen=True)
class ExactEigenvalue:
    """One exact eigenvalue ``rational + radical * sqrt(delta)``."""

    rational: Fraction
    radical: Fraction
    delta: int

    def __float__(self) -> float:
        return float(self.rational) + float(self.radical) * math.sqrt(self.delta)


def _as_exact(x) -> ExactEigenvalue:
    if isinstance(x, ExactEigenvalue):
        return x
    if isinstance(x, (int, Fraction)):
        return ExactEigenvalue(Fraction(x), Fraction(0), 1)
    raise TypeError(f"need an exact value, got {type(x).__name__}")


def _near_fraction(value: float, max_den: int, tol: float) -> Fraction | None:
    cand = Fraction(value).limit_denominator(max_den)
    return cand if abs(value - float(cand)) <= tol else None


def recognize_spectrum(
    values: Sequence[float], tol: float = DEFAULT_RECOGNITION_TOL
) -> QuadraticIntegerForm | None:
    """Match floating eigenvalues against a shared quadratic-integer form.

    Returns None when no consistent form is found; callers must treat that as
    "inconclusive", never as a negative certificate.  The tolerance is
    absolute after scaling by the spectral radius.
    """
    vals = [float(v) for v in values]
    if not vals:
        return None
    scale = max(1.0, max(abs(v) for v in vals))
    atol = tol * scale

    rounded = [round(v) for v in vals]
    if all(abs(v - r) <= atol for v, r in zip(vals, rounded)):
        return QuadraticIntegerForm(0, tuple(2 * r for r in rounded), 1)

    # shared-a quadratic attempt: candidate a from pair sums and doubled values
    candidates: list[int] = []
    for i in range(len(vals)):
        d = 2 * vals[i]
        if abs(d - round(d)) <= 2 * atol:
            candidates.append(round(d))
        for j in range(i + 1, len(vals)):
            s = vals[i] + vals[j]
            if abs(s - round(s)) <= 2 * atol:
                candidates.append(round(s))
    seen = set()
    for a in candidates:
        if a in seen:
            continue
        seen.add(a)
        form = _fit_quadratic(vals, a, atol)
        if form is not None:
            return form
    return None


def _fit_quadratic(vals: list[float], a: int, atol: float) -> QuadraticIntegerForm | None:
    residues = [2 * v - a for v in vals]
    nonzero = [r for r in residues if abs(r) > 2 * atol]
    if not nonzero:
        return None  # all values equal a/2: not a quadratic spectrum
    base = min(nonzero, key=abs)
    ratios = []
    for r in residues:
        if abs(r) <= 2 * atol:
            ratios.append(Fraction(0))
            continue
        q = _near_fraction(r / base, 64, 1e-6 * max(1.0, abs(r / base)))
        if q is None:
            return None
        ratios.append(q)
    den_lcm = math.lcm(*(q.denominator for q in ratios if q != 0))
    for mult in (1, 2, 3, 4):
        b_base = den_lcm * mult
        x = base / b_base
        d_raw = x * x
        d_round = round(d_raw)
        if d_round < 2 or abs(d_raw - d_round) > 8 * atol * (abs(x) + 1):
            continue
        delta, f = square_free_part(d_round)
        bs = []
        ok = True
        sqrt_delta = math.sqrt(delta)
        for v in vals:
            b_exact = (2 * v - a) / sqrt_delta
            b_int = round(b_exact)
            if abs(b_exact - b_int) > 8 * atol / sqrt_delta + 1e-9:
                ok = False
                break
            if abs((a + b_int * sqrt_delta) / 2 - v) > 4 * atol:
                ok = False
                break
            bs.append(b_int)
        if ok:
            return QuadraticIntegerForm(a, tuple(bs), delta)
    return None


def recognize_values(
    values: Sequence[float], tol: float = DEFAULT_RECOGNITION_TOL
) -> list[ExactEigenvalue] | None:
    """Per-value exact recognition with a common radical but individual rational parts.

    Rationals get ``radical = 0``; irrational values must split into conjugate
    pairs ``r +/- s*sqrt(delta)`` sharing one square-free delta.  This is the
    loose companion of :func:`recognize_spectrum` used by relation searches,
    where a shared rational part is not required.
    """
    vals = [float(v) for v in values]
    if not vals:
        return None
    scale = max(1.0, max(abs(v) for v in vals))
    atol = tol * scale

    out: dict[int, ExactEigenvalue] = {}
    leftovers: list[int] = []
    for i, v in enumerate(vals):
        fr = _near_fraction(v, 24, atol)
        if fr is not None:
            out[i] = ExactEigenvalue(fr, Fraction(0), 1)
        else:
            leftovers.append(i)
    delta_common: int | None = None
    unpaired = list(leftovers)
    while unpaired:
        i = unpaired.pop(0)
        match = None
        for j in unpaired:
            s = vals[i] + vals[j]
            s_fr = _near_fraction(s, 2, 4 * atol)
            if s_fr is None:
                continue
            d2 = (vals[i] - vals[j]) ** 2
            d2_round = round(d2)
            if d2_round < 1 or abs(d2 - d2_round) > 16 * atol * (abs(vals[i] - vals[j]) + 1):
                continue
            delta, f = square_free_part(d2_round)
            if delta_common is not None and delta != delta_common:
                continue
            r = s_fr / 2
            sgn = 1 if vals[i] >= vals[j] else -1
            s_coeff = Fraction(f, 2)
            cand_i = ExactEigenvalue(r, sgn * s_coeff, delta)
            cand_j = ExactEigenvalue(r, -sgn * s_coeff, delta)
            if abs(float(cand_i) - vals[i]) <= 8 * atol and abs(float(cand_j) - vals[j]) <= 8 * atol:
                match = (j, delta, cand_i, cand_j)
                break
        if match is None:
            return None
        j, delta, cand_i, cand_j = match
        delta_common = delta
        out[i], out[j] = cand_i, cand_j
        unpaired.remove(j)
    if delta_common is not None:
        # normalize rationals onto the common delta for downstream arithmetic
        for i, ev in out.items():
            if ev.delta == 1 and ev.radical == 0:
                out[i] = ExactEigenvalue(ev.rational, Fraction(0), delta_common)
    return [out[i] for i in range(len(vals))]


# -- integer relations ------------------------------------------------------


def integer_kernel_basis(rows: Sequence[Sequence[Fraction | int]]) -> list[list[int]]:
    """Lattice basis of ``{x in Z^k : M x = 0}`` for a rational matrix ``M``.

    Column reduction with a tracked unimodular transform; the returned vectors
    generate the full integer kernel, not just a finite-index sublattice.
    """
    if not rows or not rows[0]:
        raise ValueError("kernel of an empty matrix is undefined here")
    k = len(rows[0])
    mat: list[list[int]] = []
    for row in rows:
        if len(row) != k:
            raise ValueError("ragged constraint matrix")
        fr = [Fraction(x) for x in row]
        den = math.lcm(*(x.denominator for x in fr))
        mat.append([int(x * den) for x in fr])
    m = len(mat)
    unit = [[int(i == j) for j in range(k)] for i in range(k)]

    def col_addmul(dst: int, src: int, q: int) -> None:
        for r in range(m):
            mat[r][dst] += q * mat[r][src]
        for r in range(k):
            unit[r][dst] += q * unit[r][src]

    def col_swap(i: int, j: int) -> None:
        if i == j:
            return
        for r in range(m):
            mat[r][i], mat[r][j] = mat[r][j], mat[r][i]
        for r in range(k):
            unit[r][i], unit[r][j] = unit[r][j], unit[r][i]

    pc = 0
    for pr in range(m):
        if pc >= k:
            break
        while True:
            nz = [c for c in range(pc, k) if mat[pr][c] != 0]
            if not nz:
                break
            if len(nz) == 1:
                col_swap(pc, nz[0])
                pc += 1
                break
            c0 = min(nz, key=lambda c: abs(mat[pr][c]))
            for c in nz:
                if c != c0:
                    q = mat[pr][c] // mat[pr][c0]
                    if q:
                        col_addmul(c, c0, -q)
    return [[unit[r][c] for r in range(k)] for c in range(pc, k)]


class RelationParity(Enum):
    RELATION_WITH_ODD_SUM = "relation-with-odd-sum"
    ALL_RELATIONS_EVEN_SUM = "all-relations-even-sum"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class RelationParityResult:
    verdict: RelationParity
    witness: tuple[int, ...] | None = None
    detail: str = ""


def integer_relation_parity(
    plus: Sequence[ExactEigenvalue | int | Fraction],
    minus: Sequence[ExactEigenvalue | int | Fraction],
    bound: int = 6,
) -> RelationParityResult:
    """Parity of the first-block coefficient sum over all integer relations.

    A relation is an integer vector ``(m, l)`` with
    ``sum m_j plus_j + sum l_j minus_j = 0`` and ``sum m_j + sum l_j = 0``.
    The relation set is a lattice; its basis is computed exactly, so the
    even/odd answer is definitive whenever both sides are nonempty.  ``bound``
    only influences which odd witness is preferred for reporting.
    """
    if not plus or not minus:
        return RelationParityResult(
            RelationParity.INCONCLUSIVE, detail="degenerate split: one side is empty"
        )
    pe = [_as_exact(x) for x in plus]
    me = [_as_exact(x) for x in minus]
    deltas = {ev.delta for ev in pe + me if ev.radical != 0}
    if len(deltas) > 1:
        raise ValueError(f"mixed radical parts: delta in {sorted(deltas)}")
    all_vals = pe + me
    rows: list[list[Fraction]] = [[ev.rational for ev in all_vals]]
    if deltas:
        rows.append([ev.radical if ev.delta != 1 else Fraction(0) for ev in all_vals])
    rows.append([Fraction(1)] * len(all_vals))
    basis = integer_kernel_basis(rows)
    if not basis:
        return RelationParityResult(
            RelationParity.ALL_RELATIONS_EVEN_SUM,
            detail="no nontrivial relation exists",
        )
    p = len(pe)

    def parity(vec: Sequence[int]) -> int:
        return sum(vec[:p]) % 2

    odd = [v for v in basis if parity(v)]
    if not odd:
        return RelationParityResult(
            RelationParity.ALL_RELATIONS_EVEN_SUM,
            detail=f"relation lattice of rank {len(basis)} has even first-block sums",
        )
    # prefer a small witness: basis vectors and +/- pair combinations
    candidates = list(odd)
    for i, v in enumerate(basis):
        for w in basis[i + 1 :]:
            for s in (1, -1):
                comb = [a + s * b for a, b in zip(v, w)]
                if parity(comb):
                    candidates.append(comb)
    best = min(candidates, key=lambda v: (max(abs(c) for c in v), sum(abs(c) for c in v)))
    if max(abs(c) for c in best) > bound:
        detail = f"odd witness exceeds coefficient bound {bound}"
    else:
        detail = "odd witness within coefficient bound"
    if sum(best) != 0:  # defensive: the kernel rows enforce this already
        raise AssertionError("relation witness violates the zero-sum constraint")
    return RelationParityResult(RelationParity.RELATION_WITH_ODD_SUM, tuple(best), detail)
