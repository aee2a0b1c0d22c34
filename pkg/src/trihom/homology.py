"""Chain complexes, homology groups, and the intersection pairing.

Two finite complexes compute the homology of the filling 4-manifold from a
class-mode diagram. The small one (y) is built from the two compression
lattices and the page intersection; the large one (z) from all three curve
families at once. Closed-form lattice quotients give the same groups a
third way; the test corpus pins the three against each other.

Coordinates: C_2 of the small complex and both sides of the pairing use
gamma-family coordinates (length g-p); the large complex uses family
coordinates stacked alpha, beta, gamma.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactalg import (
    AbelianGroup,
    IntMatrix,
    Lattice,
    kernel_basis,
    lattice_intersect,
    lattice_sum,
    quotient_presentation,
    solve_integer,
)
from .surface import (
    Diagram,
    PreconditionError,
    intersection_number,
    l_lattice,
    l_partial_lattice,
    require_valid,
)


@dataclass(frozen=True)
class ChainComplex:
    """Four-term complex of free groups: C_3 -> C_2 -> C_1 -> C_0.

    boundaries[i] is the map out of C_{i+1}; shapes are checked and the
    double-composite is verified to vanish on construction.
    """

    ranks: tuple[int, int, int, int]
    boundaries: tuple[IntMatrix, IntMatrix, IntMatrix]
    basis_meta: tuple[str, str, str, str]
    source: str

    def __post_init__(self) -> None:
        d1, d2, d3 = self.boundaries
        expect = [
            (self.ranks[0], self.ranks[1]),
            (self.ranks[1], self.ranks[2]),
            (self.ranks[2], self.ranks[3]),
        ]
        for i, (mat, (r, c)) in enumerate(zip(self.boundaries, expect), start=1):
            if (mat.rows, mat.cols) != (r, c):
                raise ValueError(
                    f"boundary {i} has shape {mat.rows}x{mat.cols}, expected {r}x{c}"
                )
        if not d1.mul(d2).is_zero or not d2.mul(d3).is_zero:
            raise ValueError("boundary maps do not compose to zero")


@dataclass(frozen=True)
class HomologyResult:
    h0: AbelianGroup
    h1: AbelianGroup
    h2: AbelianGroup
    h3: AbelianGroup
    source: str

    def groups(self) -> tuple[AbelianGroup, AbelianGroup, AbelianGroup, AbelianGroup]:
        return (self.h0, self.h1, self.h2, self.h3)


def _family_coordinates(fam: IntMatrix, ambient: tuple[int, ...]) -> tuple[int, ...]:
    x = solve_integer(fam, ambient)
    if x is None:
        raise RuntimeError("class unexpectedly outside its curve family span")
    return x


def build_cy(d: Diagram) -> ChainComplex:
    """Small complex from the alpha/beta compression data and gamma.

    Requires L_alpha + L_beta saturated; every diagram of an actual
    manifold satisfies this, and without it the complex computes the
    wrong groups, so a violation raises PreconditionError.
    """
    require_valid(d)
    la, lb, lg = (l_lattice(d, f) for f in ("alpha", "beta", "gamma"))
    sum_ab = lattice_sum(la, lb)
    if not sum_ab.is_saturated():
        raise PreconditionError(
            "L_alpha + L_beta is not saturated; no surface diagram produces "
            "this, and the small complex would compute the wrong homology. "
            "Use the large complex or the closed forms."
        )
    w = lattice_intersect(
        l_partial_lattice(d, "alpha"), l_partial_lattice(d, "beta")
    )
    gam = d.family_matrix("gamma")
    ag = lattice_intersect(la, lg)
    bg = lattice_intersect(lb, lg)

    cpf = d.sig.curves_per_family
    cols3 = [
        list(_family_coordinates(gam, gen)) for gen in ag.generators()
    ] + [
        list(_family_coordinates(gam, gen)) for gen in bg.generators()
    ]
    d3 = IntMatrix.from_columns(cpf, cols3)
    d2 = w.basis.transpose().mul(gam)
    d1 = IntMatrix.zeros(1, w.rank)
    return ChainComplex(
        ranks=(1, w.rank, cpf, ag.rank + bg.rank),
        boundaries=(d1, d2, d3),
        basis_meta=(
            "single point class",
            "dual basis of the canonical basis of L_alpha_partial cap L_beta_partial",
            "gamma-family coordinates",
            "canonical bases of L_alpha cap L_gamma, then L_beta cap L_gamma",
        ),
        source="y",
    )


def build_cz(d: Diagram) -> ChainComplex:
    """Large complex from all three curve families."""
    require_valid(d)
    sig = d.sig
    cpf = sig.curves_per_family
    a = d.family_matrix("alpha")
    b = d.family_matrix("beta")
    g = d.family_matrix("gamma")
    la, lb, lg = (l_lattice(d, f) for f in ("alpha", "beta", "gamma"))

    ab = lattice_intersect(la, lb)
    bg = lattice_intersect(lb, lg)
    ga = lattice_intersect(lg, la)

    zero = [0] * cpf
    cols3: list[list[int]] = []
    for gen in ab.generators():
        ca = list(_family_coordinates(a, gen))
        cb = [-x for x in _family_coordinates(b, gen)]
        cols3.append(ca + cb + zero)
    for gen in bg.generators():
        cb = list(_family_coordinates(b, gen))
        cg = [-x for x in _family_coordinates(g, gen)]
        cols3.append(zero + cb + cg)
    for gen in ga.generators():
        cg = list(_family_coordinates(g, gen))
        ca = [-x for x in _family_coordinates(a, gen)]
        cols3.append(ca + zero + cg)
    d3 = IntMatrix.from_columns(3 * cpf, cols3)
    d2 = a.hstack(b).hstack(g)
    d1 = IntMatrix.zeros(1, sig.n)
    return ChainComplex(
        ranks=(1, sig.n, 3 * cpf, ab.rank + bg.rank + ga.rank),
        boundaries=(d1, d2, d3),
        basis_meta=(
            "single point class",
            "surface classes e_1..e_n",
            "family coordinates, alpha then beta then gamma",
            "canonical bases of the pairwise family intersections "
            "(alpha,beta), (beta,gamma), (gamma,alpha)",
        ),
        source="z",
    )


def homology_of(c: ChainComplex) -> HomologyResult:
    """H_i = ker(boundary out of C_i) / im(boundary into C_i)."""
    d1, d2, d3 = c.boundaries
    kernels = [
        Lattice.standard(c.ranks[0]),
        kernel_basis(d1),
        kernel_basis(d2),
        kernel_basis(d3),
    ]
    images = [
        Lattice.from_matrix_columns(d1),
        Lattice.from_matrix_columns(d2),
        Lattice.from_matrix_columns(d3),
        Lattice.zero(c.ranks[3]),
    ]
    groups = [quotient_presentation(k, im) for k, im in zip(kernels, images)]
    return HomologyResult(*groups, source=c.source)


def h_closed_forms(d: Diagram) -> HomologyResult:
    """The four groups straight from lattice arithmetic, no complexes."""
    require_valid(d)
    n = d.sig.n
    la, lb, lg = (l_lattice(d, f) for f in ("alpha", "beta", "gamma"))
    h0 = AbelianGroup(1)
    h1 = quotient_presentation(Lattice.standard(n), lattice_sum(lattice_sum(la, lb), lg))
    num = lattice_intersect(lg, lattice_sum(la, lb))
    den = lattice_sum(lattice_intersect(lg, la), lattice_intersect(lg, lb))
    h2 = quotient_presentation(num, den)
    h3 = AbelianGroup(lattice_intersect(lattice_intersect(la, lb), lg).rank)
    return HomologyResult(h0, h1, h2, h3, source="closed")


def euler_characteristic(c: ChainComplex) -> int:
    r = c.ranks
    return r[0] - r[1] + r[2] - r[3]


# ---------------------------------------------------------------------------
# intersection pairing


def _alpha_part(d: Diagram, ambient: tuple[int, ...]) -> tuple[int, ...]:
    """x' with x = x' + x'', x' in L_alpha, x'' in L_beta; errors outside."""
    a = d.family_matrix("alpha")
    b = d.family_matrix("beta")
    sol = solve_integer(a.hstack(b), ambient)
    if sol is None:
        raise PreconditionError(
            f"class {list(ambient)} is not in L_alpha + L_beta"
        )
    return a.matvec(sol[: a.cols])


def _phi_ambient(d: Diagram, x_amb: tuple[int, ...], y_amb: tuple[int, ...]) -> int:
    xprime = _alpha_part(d, x_amb)
    # y must also decompose, or the value would depend on the choice of x'
    _alpha_part(d, y_amb)
    return -intersection_number(d.sig, xprime, y_amb)


def phi(d: Diagram, x: tuple[int, ...] | list[int], y: tuple[int, ...] | list[int]) -> int:
    """Pairing of two surface-framed classes given in gamma coordinates.

    Both classes must lie in L_alpha + L_beta (as ambient classes); the
    value does not depend on the decomposition choice.
    """
    require_valid(d)
    gam = d.family_matrix("gamma")
    if len(x) != gam.cols or len(y) != gam.cols:
        raise ValueError(f"gamma coordinates must have length {gam.cols}")
    return _phi_ambient(d, gam.matvec(x), gam.matvec(y))


@dataclass(frozen=True)
class IntersectionForm:
    """Symmetric pairing on the free part of H_2.

    generators are gamma-family coordinate vectors of the chosen free
    generators; matrix[i][j] is their pairing; torsion lists the invariant
    factors of the torsion subgroup alongside.
    """

    generators: tuple[tuple[int, ...], ...]
    matrix: IntMatrix
    torsion: tuple[int, ...]


def intersection_form(d: Diagram) -> IntersectionForm:
    """Free generators of H_2 with their pairing matrix.

    H_2 is presented as (L_gamma cap (L_alpha + L_beta)) over
    ((L_gamma cap L_alpha) + (L_gamma cap L_beta)); a Smith basis of the
    numerator splits off the torsion and the pairing is evaluated on the
    surviving free generators.
    """
    require_valid(d)
    from .exactalg import _snf_with_inverses

    la, lb, lg = (l_lattice(d, f) for f in ("alpha", "beta", "gamma"))
    num = lattice_intersect(lg, lattice_sum(la, lb))
    den = lattice_sum(lattice_intersect(lg, la), lattice_intersect(lg, lb))
    if num.rank == 0:
        return IntersectionForm((), IntMatrix.zeros(0, 0), ())

    coord_cols = []
    for gen in den.generators():
        c = solve_integer(num.basis, gen)
        if c is None:
            raise RuntimeError("denominator lattice escaped the numerator")
        coord_cols.append(list(c))
    cmat = IntMatrix.from_columns(num.rank, coord_cols)
    _, dg, _, uinv, _ = _snf_with_inverses(cmat)
    diag = dg.diagonal()
    rank_rel = sum(1 for t in diag if t != 0)
    torsion = tuple(t for t in diag if t > 1)

    adapted = num.basis.mul(uinv)
    free_ambient = [adapted.column(j) for j in range(rank_rel, num.rank)]

    gam = d.family_matrix("gamma")
    gens = tuple(_family_coordinates(gam, v) for v in free_ambient)
    vals = [
        [_phi_ambient(d, v, w) for w in free_ambient] for v in free_ambient
    ]
    return IntersectionForm(
        generators=gens,
        matrix=IntMatrix.from_rows(vals, cols=len(free_ambient)),
        torsion=torsion,
    )
