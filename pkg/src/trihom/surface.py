"""Surface data for relative trisection diagrams.

A diagram lives on a compact surface of genus g with b boundary components.
Curve classes are row-free column vectors over the ordered basis e_1..e_n of
H_1 (n = 2g+b-1); arc classes live in H_1 rel boundary over the dual basis
f_1..f_n. The two algebraic intersection pairings used everywhere:

    curve-curve   <x, y> = x^T (S^T - S) y
    arc-curve     <a, x> = a^T x          (curve-arc is the negative)

with S the block framing matrix of the standard handle picture. The sign of
the curve-curve pairing is pinned by two frozen anchors in the test suite:
the genus-1 q_matrix example and the two-handle linking matrix example.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exactalg import (
    IntMatrix,
    Lattice,
    is_unimodular,
    lattice_intersect,
    orthogonal_complement,
)


class DiagramError(ValueError):
    """The input fails diagram validation."""


class PreconditionError(Exception):
    """The input is a plausible diagram but the requested computation's
    preconditions do not hold (missing assertion, wrong mode, bad arcs)."""


# ---------------------------------------------------------------------------
# signature and conventions


@dataclass(frozen=True)
class SurfaceSignature:
    """(g, p, b): surface genus, page genus, boundary components."""

    g: int
    p: int
    b: int

    def __post_init__(self) -> None:
        if not (self.g >= self.p >= 0):
            raise ValueError(f"need g >= p >= 0, got g={self.g}, p={self.p}")
        if self.b < 1:
            raise ValueError(f"need b >= 1, got b={self.b}")

    @property
    def l(self) -> int:
        """Arc count of the page: 2p + b - 1."""
        return 2 * self.p + self.b - 1

    @property
    def n(self) -> int:
        """Rank of H_1 of the surface: 2g + b - 1."""
        return 2 * self.g + self.b - 1

    @property
    def curves_per_family(self) -> int:
        return self.g - self.p

    @property
    def page_rank(self) -> int:
        """g + p + b - 1, the rank of each boundary-compatible lattice."""
        return self.g + self.p + self.b - 1


def s_matrix(sig: SurfaceSignature) -> IntMatrix:
    """Framing matrix: g blocks [[0,0],[1,0]] then b-1 zero rows/columns."""
    n = sig.n
    rows = [[0] * n for _ in range(n)]
    for h in range(sig.g):
        rows[2 * h + 1][2 * h] = 1
    return IntMatrix.from_rows(rows, cols=n)


def j_matrix(sig: SurfaceSignature) -> IntMatrix:
    """S^T - S; the curve-curve pairing is x^T J y."""
    s = s_matrix(sig)
    st = s.transpose()
    ent = tuple(a - b for a, b in zip(st.entries, s.entries))
    return IntMatrix(sig.n, sig.n, ent)


def r_matrix(sig: SurfaceSignature) -> IntMatrix:
    """Page framing matrix of size g+p+b-1: identity on the g-p curve slots,
    p blocks [[0,0],[1,0]] on the page handle arcs, zeros on boundary arcs."""
    m = sig.page_rank
    rows = [[0] * m for _ in range(m)]
    for i in range(sig.curves_per_family):
        rows[i][i] = 1
    base = sig.curves_per_family
    for h in range(sig.p):
        rows[base + 2 * h + 1][base + 2 * h] = 1
    return IntMatrix.from_rows(rows, cols=m)


@dataclass(frozen=True)
class PairingConventions:
    """The fixed matrices a signature pins down."""

    n: int
    S: IntMatrix
    J: IntMatrix
    R: IntMatrix

    @classmethod
    def for_signature(cls, sig: SurfaceSignature) -> "PairingConventions":
        return cls(n=sig.n, S=s_matrix(sig), J=j_matrix(sig), R=r_matrix(sig))


def intersection_number(
    sig: SurfaceSignature,
    x: Sequence[int],
    y: Sequence[int],
    *,
    x_is_arc: bool = False,
    y_is_arc: bool = False,
) -> int:
    """Algebraic intersection number of two classes on the surface."""
    if len(x) != sig.n or len(y) != sig.n:
        raise ValueError(f"class length must be n={sig.n}")
    if x_is_arc and y_is_arc:
        raise ValueError("arc-arc intersection numbers are not defined here")
    if x_is_arc:
        return sum(a * c for a, c in zip(x, y))
    if y_is_arc:
        return -sum(a * c for a, c in zip(y, x))
    j = j_matrix(sig)
    return sum(xi * t for xi, t in zip(x, j.matvec(y)))


def to_relative(sig: SurfaceSignature, x: Sequence[int]) -> tuple[int, ...]:
    """Image of a curve class in H_1 rel boundary: (S - S^T) x, so that
    <to_relative(x), y> as arc-curve equals <x, y> as curve-curve."""
    return j_matrix(sig).neg().matvec(x)


def q_matrix(
    sig: SurfaceSignature,
    mu: Sequence[Sequence[int]],
    nu: Sequence[Sequence[int]],
    *,
    mu_arcs: bool = False,
    nu_arcs: bool = False,
) -> IntMatrix:
    """Pairing matrix Q[i][j] = <mu_i, nu_j>."""
    rows = [
        [
            intersection_number(sig, m, v, x_is_arc=mu_arcs, y_is_arc=nu_arcs)
            for v in nu
        ]
        for m in mu
    ]
    return IntMatrix.from_rows(rows, cols=len(nu))


# ---------------------------------------------------------------------------
# diagrams


_FAMILIES = ("alpha", "beta", "gamma")


@dataclass(frozen=True)
class Diagram:
    """Class-mode diagram: three families of curve classes on one surface.

    arcs, when given, is an n x n unimodular matrix whose columns are arc
    classes; the first l columns are the special page arcs. When omitted,
    the standard dual basis f_1..f_n is used. standard_position records the
    user's assertion that the alpha/beta pair together with those arcs is
    in the standard configuration; it cannot be verified from classes alone
    and gates the y-route computations.
    """

    sig: SurfaceSignature
    alpha: tuple[tuple[int, ...], ...]
    beta: tuple[tuple[int, ...], ...]
    gamma: tuple[tuple[int, ...], ...]
    k: tuple[int, int, int] | None = None
    arcs: IntMatrix | None = None
    standard_position: bool = False

    @classmethod
    def build(
        cls,
        g: int,
        p: int,
        b: int,
        alpha: Sequence[Sequence[int]],
        beta: Sequence[Sequence[int]],
        gamma: Sequence[Sequence[int]],
        k: Sequence[int] | None = None,
        arcs: IntMatrix | Sequence[Sequence[int]] | None = None,
        standard_position: bool = False,
    ) -> "Diagram":
        sig = SurfaceSignature(g, p, b)
        freeze = lambda fam: tuple(tuple(int(x) for x in c) for c in fam)
        if arcs is not None and not isinstance(arcs, IntMatrix):
            arcs = IntMatrix.from_columns(sig.n, [list(c) for c in arcs])
        kk = tuple(int(x) for x in k) if k is not None else None
        if kk is not None and len(kk) != 3:
            raise ValueError(f"k must have three entries, got {kk}")
        return cls(
            sig=sig,
            alpha=freeze(alpha),
            beta=freeze(beta),
            gamma=freeze(gamma),
            k=kk,
            arcs=arcs,
            standard_position=standard_position,
        )

    def family(self, name: str) -> tuple[tuple[int, ...], ...]:
        if name not in _FAMILIES:
            raise ValueError(f"unknown family {name!r}")
        return getattr(self, name)

    def family_matrix(self, name: str) -> IntMatrix:
        """n x (g-p) matrix whose columns are the family's curve classes."""
        return IntMatrix.from_columns(self.sig.n, [list(c) for c in self.family(name)])

    def arc_matrix(self) -> IntMatrix:
        """Arc system as columns; defaults to the standard dual basis."""
        return self.arcs if self.arcs is not None else IntMatrix.identity(self.sig.n)


@dataclass(frozen=True)
class DiagramMatrices:
    """Matrix-mode diagram: the pairing data of a standard-position diagram.

    Rows of q_gamma_beta / q_alpha_gamma index the gamma / alpha curves;
    q_a_gamma pairs the l page arcs against the gamma curves.
    """

    sig: SurfaceSignature
    k1: int
    q_gamma_beta: IntMatrix
    q_alpha_gamma: IntMatrix
    q_a_gamma: IntMatrix
    q_beta_alpha: IntMatrix | None = None


def l_lattice(d: Diagram, family: str) -> Lattice:
    """Lattice spanned by a family's curve classes in H_1."""
    return Lattice.from_matrix_columns(d.family_matrix(family))


def l_partial_lattice(d: Diagram, family: str) -> Lattice:
    """Classes in H_1 rel boundary pairing to zero with the whole family."""
    lat = l_lattice(d, family)
    return orthogonal_complement(lat, IntMatrix.identity(d.sig.n))


def infer_k(d: Diagram) -> tuple[int, int, int]:
    """k_i = l + rank(L_mu cap L_nu) over the pairs (a,b), (b,g), (g,a)."""
    l = d.sig.l
    pairs = (("alpha", "beta"), ("beta", "gamma"), ("gamma", "alpha"))
    return tuple(
        l + lattice_intersect(l_lattice(d, m), l_lattice(d, n)).rank for m, n in pairs
    )


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class ValidationCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[ValidationCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> tuple[ValidationCheck, ...]:
        return tuple(c for c in self.checks if not c.passed)


def validate(d: Diagram) -> ValidationReport:
    """Necessary-condition validation of a class-mode diagram.

    Passing does not certify that the classes come from an actual surface
    diagram; failing proves they do not.
    """
    sig = d.sig
    checks: list[ValidationCheck] = []

    want = sig.curves_per_family
    sizes_ok = all(len(d.family(f)) == want for f in _FAMILIES)
    checks.append(
        ValidationCheck(
            "family_sizes",
            sizes_ok,
            f"each family needs {want} curves; got "
            f"{[len(d.family(f)) for f in _FAMILIES]}",
        )
    )

    lengths_ok = all(len(c) == sig.n for f in _FAMILIES for c in d.family(f))
    checks.append(
        ValidationCheck(
            "curve_lengths",
            lengths_ok,
            f"every curve class needs length n={sig.n}",
        )
    )

    if not lengths_ok:
        for name in ("intra_family_disjoint", "family_saturated_basis", "k_bounds"):
            checks.append(ValidationCheck(name, False, "not evaluated: malformed curves"))
        return ValidationReport(tuple(checks))

    bad_pairs = []
    for f in _FAMILIES:
        fam = d.family(f)
        q = q_matrix(sig, fam, fam)
        if not q.is_zero:
            bad_pairs.append(f)
    checks.append(
        ValidationCheck(
            "intra_family_disjoint",
            not bad_pairs,
            "curves within one family must have zero pairwise intersection"
            + (f"; violated in {bad_pairs}" if bad_pairs else ""),
        )
    )

    bad_fams = []
    for f in _FAMILIES:
        lat = l_lattice(d, f)
        if lat.rank != want or not lat.is_saturated():
            bad_fams.append(f)
    checks.append(
        ValidationCheck(
            "family_saturated_basis",
            not bad_fams,
            f"each family must span a saturated rank-{want} lattice"
            + (f"; violated in {bad_fams}" if bad_fams else ""),
        )
    )

    if d.arcs is not None:
        shape_ok = d.arcs.rows == sig.n and d.arcs.cols == sig.n
        uni_ok = shape_ok and is_unimodular(d.arcs)
        checks.append(
            ValidationCheck(
                "arcs_unimodular",
                uni_ok,
                f"arc matrix must be {sig.n}x{sig.n} unimodular",
            )
        )

    inferred = infer_k(d)
    lo, hi = sig.l, sig.page_rank
    bounds_ok = all(lo <= ki <= hi for ki in inferred)
    checks.append(
        ValidationCheck(
            "k_bounds",
            bounds_ok,
            f"inferred k={inferred} must sit in [{lo}, {hi}]",
        )
    )

    if d.k is not None:
        checks.append(
            ValidationCheck(
                "k_matches_supplied",
                tuple(d.k) == inferred,
                f"supplied k={tuple(d.k)} vs inferred k={inferred}",
            )
        )

    return ValidationReport(tuple(checks))


def validate_matrices(m: DiagramMatrices) -> ValidationReport:
    """Shape and consistency checks for matrix-mode input."""
    sig = m.sig
    c = sig.curves_per_family
    checks: list[ValidationCheck] = []

    shapes = {
        "q_gamma_beta": (m.q_gamma_beta, c, c),
        "q_alpha_gamma": (m.q_alpha_gamma, c, c),
        "q_a_gamma": (m.q_a_gamma, sig.l, c),
    }
    if m.q_beta_alpha is not None:
        shapes["q_beta_alpha"] = (m.q_beta_alpha, c, c)
    bad = [
        f"{name} is {mat.rows}x{mat.cols}, expected {r}x{cc}"
        for name, (mat, r, cc) in shapes.items()
        if (mat.rows, mat.cols) != (r, cc)
    ]
    checks.append(
        ValidationCheck("matrix_shapes", not bad, "; ".join(bad) if bad else "all shapes match")
    )

    k_ok = sig.l <= m.k1 <= sig.page_rank
    checks.append(
        ValidationCheck(
            "k1_bounds",
            k_ok,
            f"k1={m.k1} must sit in [{sig.l}, {sig.page_rank}]",
        )
    )

    if m.q_beta_alpha is not None and not bad and k_ok:
        # every class in L_beta cap L_alpha pairs to zero against all of
        # alpha, so the pairing matrix loses one rank per intersection class
        from .exactalg import snf as _snf

        rank = sum(1 for x in _snf(m.q_beta_alpha).D.diagonal() if x != 0)
        limit = c - (m.k1 - sig.l)
        checks.append(
            ValidationCheck(
                "q_beta_alpha_rank",
                rank <= limit,
                f"rank {rank} exceeds {limit} allowed by k1={m.k1}"
                if rank > limit
                else f"rank {rank} within bound {limit}",
            )
        )

    return ValidationReport(tuple(checks))


def require_valid(d: Diagram) -> ValidationReport:
    """Validate and raise DiagramError on any failure."""
    report = validate(d)
    if not report.ok:
        msgs = "; ".join(f"{c.name}: {c.detail}" for c in report.failures())
        raise DiagramError(f"diagram rejected: {msgs}")
    return report
