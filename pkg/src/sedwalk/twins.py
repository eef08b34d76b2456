"""Twin vertices and the eigenspace geometry attached to a twin set.

Two vertices are twins when they carry equal loops and see every other
vertex with identical weights; whether the pair itself is joined (and by
what weight) is unconstrained.  Every difference ``e_u - e_v`` inside a
twin set is an eigenvector for one common eigenvalue, and splitting that
eigenvalue's projector into the difference part and its complement is
what the sedentariness bounds consume.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import MatrixKind, Weight, WeightedGraph
from .spectral import (
    SpectralDecomposition,
    StrongCospectrality,
    decompose,
)

__all__ = [
    "TwinSet",
    "ThetaEigenspaceSplit",
    "TwinBranch",
    "are_twins",
    "find_twin_sets",
    "twin_set_of",
    "theta_split",
    "twin_dichotomy",
]

F_PROJECTOR_TOL = 1e-8


def are_twins(g: WeightedGraph, u: int, v: int) -> bool:
    """Exact combinatorial twin test: equal loops, equal view of the rest."""
    if u == v:
        raise ValueError("a vertex is not its own twin")
    if g.weight(u, u) != g.weight(v, v):
        return False
    for w in range(g.n):
        if w == u or w == v:
            continue
        if g.weight(u, w) != g.weight(v, w):
            return False
    return True


@dataclass(frozen=True)
class TwinSet:
    """Maximal set of pairwise twins with the shared loop and pair weights.

    ``omega`` is the loop weight on each member and ``eta`` the weight
    joining any two members (zero when the set is independent).  The
    difference of any two members is an eigenvector; the carried
    eigenvalue depends on the matrix kind, see :meth:`theta`.
    """

    members: tuple[int, ...]
    omega: Weight
    eta: Weight

    def __post_init__(self) -> None:
        if len(self.members) < 2:
            raise ValueError("a twin set needs at least two members")
        if list(self.members) != sorted(set(self.members)):
            raise ValueError("members must be sorted and distinct")

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, u: object) -> bool:
        return u in self.members

    def theta(self, g: WeightedGraph, kind: MatrixKind) -> Weight:
        """Eigenvalue of every internal difference vector under ``kind``."""
        return g.twin_eigenvalue(kind, self.members[0], self.members[1])

    def partner_of(self, u: int) -> int:
        """Some other member, the natural partner when the set is a pair."""
        if u not in self.members:
            raise ValueError("vertex is not in this twin set")
        return self.members[1] if self.members[0] == u else self.members[0]


def find_twin_sets(g: WeightedGraph) -> list[TwinSet]:
    """All maximal twin sets of the graph.

    The twin relation restricted to vertices possessing a twin is an
    equivalence (two twins of a common vertex are twins of each other,
    with the same pair weight), so greedy collection yields the maximal
    sets; a pairwise re-check guards the implementation anyway.
    """
    assigned: set[int] = set()
    sets: list[TwinSet] = []
    for u in range(g.n):
        if u in assigned:
            continue
        members = [u] + [v for v in range(g.n) if v != u and are_twins(g, u, v)]
        if len(members) < 2:
            continue
        members.sort()
        for i, a in enumerate(members):
            for b in members[i + 1 :]:
                if not are_twins(g, a, b):
                    raise ValueError("twin relation failed to be transitive")
        assigned.update(members)
        sets.append(
            TwinSet(
                members=tuple(members),
                omega=g.weight(u, u),
                eta=g.weight(members[0], members[1]),
            )
        )
    return sets


def twin_set_of(g: WeightedGraph, u: int) -> TwinSet | None:
    """The maximal twin set containing ``u``, or None when ``u`` has no twin."""
    for ts in find_twin_sets(g):
        if u in ts:
            return ts
    return None


@dataclass(frozen=True)
class ThetaEigenspaceSplit:
    """Split of the twin eigenvalue's projector E = P1 + F.

    P1 projects onto the span of the difference vectors of the twin set
    (dimension ``b1_dim`` = |T| - 1) and F onto whatever else the
    eigenspace holds.  F vanishes exactly when the eigenvalue has the
    minimal multiplicity |T| - 1.
    """

    twin_set: TwinSet
    theta: float
    eigen_index: int
    theta_multiplicity: int
    b1_dim: int
    f_matrix: np.ndarray

    def f_diagonal(self, u: int) -> float:
        return float(self.f_matrix[u, u])

    @property
    def f_rank(self) -> int:
        return self.theta_multiplicity - self.b1_dim


def theta_split(
    g: WeightedGraph,
    kind: MatrixKind,
    twin_set: TwinSet,
    dec: SpectralDecomposition | None = None,
) -> ThetaEigenspaceSplit:
    """Locate the twin eigenvalue in the spectrum and split its projector.

    Raises if the formula eigenvalue is missing from the computed
    spectrum or if the residual F fails to be a projector; both signal
    numerical trouble upstream rather than a recoverable condition.
    """
    if dec is None:
        dec = decompose(g, kind)
    theta = float(twin_set.theta(g, kind))
    idx = dec.eigenvalue_index(theta)
    proj = dec.projectors[idx]
    size = len(twin_set)
    ix = np.asarray(twin_set.members)
    p1 = np.zeros((g.n, g.n))
    p1[np.ix_(ix, ix)] = np.eye(size) - 1.0 / size
    f = proj - p1
    if np.max(np.abs(f @ f - f)) > F_PROJECTOR_TOL * max(1.0, g.n):
        raise ValueError("twin eigenspace split is not a projector")
    mult = int(dec.multiplicities[idx])
    b1 = size - 1
    if abs(float(np.trace(f)) - (mult - b1)) > 1e-6:
        raise ValueError("twin eigenspace multiplicity mismatch")
    return ThetaEigenspaceSplit(
        twin_set=twin_set,
        theta=theta,
        eigen_index=idx,
        theta_multiplicity=mult,
        b1_dim=b1,
        f_matrix=f,
    )


@dataclass(frozen=True)
class TwinBranch:
    """Which side of the twin dichotomy a vertex falls on.

    ``branch`` is "sedentary" when the vertex cannot take part in pretty
    good state transfer (set size at least 3, or a pair whose extra
    eigenvector blocks strong cospectrality) and "pgst-pair" when the
    vertex sits in a strongly cospectral pair, where transfer and
    sedentariness compete and number theory decides.
    """

    branch: str
    vertex: int
    partner: int | None
    split: ThetaEigenspaceSplit
    strong_cospectrality: StrongCospectrality | None


def twin_dichotomy(
    g: WeightedGraph,
    kind: MatrixKind,
    twin_set: TwinSet,
    u: int,
    dec: SpectralDecomposition | None = None,
) -> TwinBranch:
    """Route a twin vertex to the sedentary or the transfer branch."""
    if u not in twin_set:
        raise ValueError("vertex is not in the twin set")
    if dec is None:
        dec = decompose(g, kind)
    split = theta_split(g, kind, twin_set, dec=dec)
    if len(twin_set) >= 3:
        return TwinBranch("sedentary", u, None, split, None)
    v = twin_set.partner_of(u)
    sc = dec.strongly_cospectral(u, v)
    if sc is None:
        if split.f_diagonal(u) <= F_PROJECTOR_TOL:
            raise ValueError(
                "pair is not strongly cospectral yet no extra eigenvector meets it"
            )
        return TwinBranch("sedentary", u, v, split, None)
    return TwinBranch("pgst-pair", u, v, split, sc)
