"""The path-component subalgebra by three routes, and the pi0 scheme.

Route one (primary, characteristic 0): the kernel of the universal
derivation.  Route two (definitional): elements whose images under the two
evaluations of the universal polynomial family agree at every computed tower
level.  Route three: the idempotent / k-th-root solvers that feed component
counting.  The routes are independent implementations and cross-check each
other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .algebra import AlgebraMorphism, AlgebraPresentation, ElementRep
from .derham import derham_h0
from .errors import (HypothesisError, PropertyViolationError,
                     UnsupportedFieldError)
from .mapspace import MapSpacePresentation, mapspace_presentation
from .matrix_homotopy import NCPoly, nc_mat_is_zero, nc_mat_mul, nc_mat_sub
from .polyring import (BlockOrder, Monomial, Polynomial, elimination_ideal,
                       normal_form)
from .solve import SolveResult, solve_system


# ---------------------------------------------------------------------------
# equalizer route


def _line_algebra(field) -> AlgebraPresentation:
    return AlgebraPresentation(field, ["x"], [])


@dataclass
class EqualizerVerdict:
    passed: bool
    level: int                   # first failing level, or the last one checked
    residual: Polynomial | None  # nonzero residual in the level algebra


def equalizer_membership(a: AlgebraPresentation, elem: ElementRep,
                         towerdepth: int) -> EqualizerVerdict:
    """Test the two evaluations of the universal line family on one element.

    At each level d = 0..towerdepth the image of the element in
    F[x] ⊗ M_d(A, F[x]) is evaluated at x=0 and x=1; the difference must lie
    in the level ideal.  Returns the first failing level with its residual.
    """
    if elem.algebra != a:
        raise ValueError("element of a different algebra")
    line = _line_algebra(a.field)
    for d in range(towerdepth + 1):
        m = mapspace_presentation(a, line, d)
        diff = _evaluation_difference(m, elem.poly)
        if not diff.is_zero:
            return EqualizerVerdict(False, d, diff)
    return EqualizerVerdict(True, towerdepth, None)


def _evaluation_difference(m: MapSpacePresentation, poly: Polynomial
                           ) -> Polynomial:
    """(x->1) - (x->0) of the universal image, reduced modulo the level ideal."""
    up = m.upsilon_poly(poly)
    acc = Polynomial.zero(m.n_z, m.field)
    for v, coeff in up.items():
        if sum(v) > 0:          # x^k with k >= 1 contributes only at x=1
            acc = acc + coeff
    return m.algebra.nf(acc)


@dataclass
class EqualizerSubspace:
    algebra: AlgebraPresentation
    degree: int
    tower: int
    basis: list[ElementRep]
    degenerate_levels: tuple[int, ...] = (0,)

    @property
    def dimension(self) -> int:
        return len(self.basis)


def equalizer_subspace(a: AlgebraPresentation, degree: int, tower: int
                       ) -> EqualizerSubspace:
    """Slice elements passing the equalizer test at levels 1..tower.

    Level 0 is degenerate (the image of every element is x-free there) and is
    excluded from the cut; the verdict is monotone in the level, so the
    constraint at the top level subsumes the lower ones, but each level is
    still applied as a cross-check.
    """
    line = _line_algebra(a.field)
    slice_monos = a.standard_monomials(degree)
    field = a.field
    vectors = [[field.one() if i == j else field.zero()
                for j in range(len(slice_monos))]
               for i in range(len(slice_monos))]
    current = vectors
    for d in range(1, tower + 1):
        m = mapspace_presentation(a, line, d)
        # upsilon images of generators are linear in the coordinates, so the
        # difference of a degree-<=D slice element has coordinate degree <= D
        level_monos = m.algebra.standard_monomials(max(degree, 1))
        coords = {mm: k for k, mm in enumerate(level_monos)}
        rows = []
        for vec in current:
            poly = _combine(slice_monos, vec, a)
            diff = _evaluation_difference(m, poly)
            row = [field.zero()] * len(level_monos)
            for mm, c in diff.terms.items():
                row[coords[mm]] = c
            rows.append(row)
        # kernel of the linear map current -> level algebra slice
        null = linalg.nullspace(
            [[rows[j][i] for j in range(len(rows))]
             for i in range(len(level_monos))], len(rows), field)
        current = [_vec_combine(null_vec, current, field) for null_vec in null]
        if not current:
            break
    reduced, pivots = linalg.rref(current, field) if current else ([], [])
    basis = [a.element(_combine(slice_monos, row, a))
             for row in reduced[:len(pivots)]]
    return EqualizerSubspace(a, degree, tower, basis)


def _combine(monos: Sequence[Monomial], vec, a: AlgebraPresentation
             ) -> Polynomial:
    poly = Polynomial.zero(a.arity, a.field)
    for m, c in zip(monos, vec):
        if c != a.field.zero():
            poly = poly + Polynomial.monomial(m, a.field, c)
    return poly


def _vec_combine(weights, vectors, field):
    out = [field.zero()] * len(vectors[0])
    for w, vec in zip(weights, vectors):
        if w == field.zero():
            continue
        out = [field.add(o, field.mul(w, v)) for o, v in zip(out, vec)]
    return out


# ---------------------------------------------------------------------------
# idempotent and k-th root solvers


@dataclass
class IdempotentReport:
    idempotents: list[ElementRep]
    complete: bool

    @property
    def count(self) -> int:
        return len(self.idempotents)


def _root_solutions(a: AlgebraPresentation, k: int, degree: int
                    ) -> tuple[list[ElementRep], bool]:
    """Solve e^k = e with e supported on the degree-bounded slice."""
    slice_monos = a.standard_monomials(degree)
    n = len(slice_monos)
    field = a.field
    # generic element over coefficient unknowns, in the ring (A-vars | c-vars)
    big = a.arity + n
    order = BlockOrder(a.arity)
    lift = [g.extend_arity(big, list(range(a.arity))) for g in a.gb()]
    generic = Polynomial.zero(big, field)
    for i, m in enumerate(slice_monos):
        exps = list(m) + [0] * n
        exps[a.arity + i] = 1
        generic = generic + Polynomial(big, field, {tuple(exps): field.one()})
    constraint = generic ** k - generic
    reduced = normal_form(constraint, lift, order)
    groups: dict[Monomial, Polynomial] = {}
    for mono, c in reduced.terms.items():
        key = mono[:a.arity]
        bucket = groups.setdefault(key, Polynomial.zero(n, field))
        bucket.terms[mono[a.arity:]] = c
    system = [g for g in groups.values() if not g.is_zero]
    result: SolveResult = solve_system(system, n, field)
    elems = []
    for sol in result.solutions:
        elems.append(a.element(_combine(slice_monos, sol, a)))
    for e in elems:
        if (e ** k) != e:      # pragma: no cover - exact solver
            raise AssertionError("solver returned a non-solution")
    return elems, result.complete


def idempotent_search(a: AlgebraPresentation, degree: int) -> IdempotentReport:
    """All idempotents supported on the slice, with an exactness flag."""
    elems, complete = _root_solutions(a, 2, degree)
    return IdempotentReport(elems, complete)


def primitive_idempotents(report: IdempotentReport) -> list[ElementRep]:
    """Minimal nonzero idempotents under e <= f iff e·f = e."""
    nonzero = [e for e in report.idempotents if not e.is_zero]
    primitive = []
    for e in nonzero:
        strictly_below = [f for f in nonzero
                          if f != e and (f * e) == f]
        if not strictly_below:
            primitive.append(e)
    return primitive


@dataclass
class RootSubalgebra:
    k: int
    generators: list[ElementRep]
    complete: bool


def iskp_subalgebra(a: AlgebraPresentation, k: int, degree: int
                    ) -> RootSubalgebra:
    """Generators (the solutions of e^k = e on the slice) of the k-th-root
    subalgebra; requires char(F) not dividing k-1."""
    if k < 2:
        raise HypothesisError("k must be at least 2")
    char = a.field.char
    if char and (k - 1) % char == 0:
        raise HypothesisError(f"characteristic {char} divides k-1 = {k - 1}")
    elems, complete = _root_solutions(a, k, degree)
    return RootSubalgebra(k, elems, complete)


# ---------------------------------------------------------------------------
# pi0 presentation


@dataclass
class Pi0Result:
    route: str
    basis: list[ElementRep]
    presentation: AlgebraPresentation | None
    inclusion: AlgebraMorphism | None
    idempotents: IdempotentReport | None
    component_count: int | None
    degree: int
    tower: int | None

    @property
    def dimension(self) -> int:
        return len(self.basis)


def pi0_presentation(a: AlgebraPresentation, degree: int,
                     tower: int = 3) -> Pi0Result:
    """Present the path-component subalgebra and count components.

    Characteristic zero only: the de Rham kernel is the subalgebra (the
    equalizer route cross-checks it), presented on fresh variables through an
    elimination ideal.  The component count is emitted only when the
    idempotent lattice is certified complete and the algebra looks reduced on
    the computed slice.
    """
    if not a.field.is_rational:
        raise UnsupportedFieldError(
            "pi0 needs characteristic zero; over a prime field only the "
            "equalizer and idempotent routes run")
    kernel = derham_h0(a, degree)
    for elem in kernel.basis:
        verdict = equalizer_membership(a, elem, min(tower, 2))
        if not verdict.passed:
            raise PropertyViolationError(
                "derham kernel element fails the equalizer route",
                witness=(elem, verdict.level))
    basis = kernel.basis
    pres, incl = _subalgebra_presentation(a, basis)
    idem = idempotent_search(a, degree)
    count = None
    if idem.complete:
        prims = primitive_idempotents(idem)
        finite = a.dimension() is not None
        nilfree = _no_nilpotents_on_slice(a, degree)
        if finite or nilfree:
            count = len(prims) if prims else (0 if a.is_zero_algebra() else 1)
    return Pi0Result("derham", basis, pres, incl, idem, count, degree, tower)


def _subalgebra_presentation(a: AlgebraPresentation,
                             basis: Sequence[ElementRep]
                             ) -> tuple[AlgebraPresentation, AlgebraMorphism]:
    """Present the subalgebra spanned by `basis` via an elimination ideal."""
    field = a.field
    r = len(basis)
    y_names = [f"y{i}" for i in range(r)]
    big = a.arity + r
    gens = [rel.extend_arity(big, list(range(a.arity))) for rel in a.relations]
    for i, b in enumerate(basis):
        gens.append(Polynomial.variable(a.arity + i, big, field)
                    - b.poly.extend_arity(big, list(range(a.arity))))
    kernel_gens = elimination_ideal(gens, list(range(a.arity)))
    pres = AlgebraPresentation(field, y_names, kernel_gens)
    incl = AlgebraMorphism(pres, a, [b.poly for b in basis], check=True)
    return pres, incl


def _no_nilpotents_on_slice(a: AlgebraPresentation, degree: int) -> bool:
    """No certified nilpotents among slice monomials (a reducedness probe)."""
    for m in a.standard_monomials(degree):
        if sum(m) == 0:
            continue
        e = a.element(Polynomial.monomial(m, a.field))
        power = e
        for _ in range(max(2, degree)):
            power = power * e
            if power.is_zero and not e.is_zero:
                return False
    return True


# ---------------------------------------------------------------------------
# the noncommutative vanishing witness


def pnc_zero_witness() -> dict:
    """The matrix family killing the noncommutative path-component functor.

    Verifies, over noncommuting symbols a, b with a central x, that
    a -> [[a, a·x], [0, 0]] is linear and multiplicative, and that a nonzero
    entry yields a nonconstant polynomial (nonzero x-coefficient).
    """
    a = NCPoly.sym("a")
    b = NCPoly.sym("b")
    x = NCPoly.x_power(1)
    zero = NCPoly({})

    def image(sym: NCPoly):
        return [[sym, sym * x], [zero, zero]]

    prod = nc_mat_mul(image(a), image(b))
    expected = image(a * b)
    multiplicative = nc_mat_is_zero(nc_mat_sub(prod, expected))
    lin = nc_mat_is_zero(nc_mat_sub(
        image(a + b.scale(3)),
        [[a + b.scale(3), (a + b.scale(3)) * x], [zero, zero]]))
    x_coeff = image(a)[0][1].x_coefficient(1)
    nonconstant = (not x_coeff.is_zero) and x_coeff == a
    report = {"multiplicative": multiplicative, "linear": lin,
              "nonconstant_for_nonzero": nonconstant}
    report["ok"] = all(report.values())
    return report


# ---------------------------------------------------------------------------
# functor-level property checks


def functor_property_checks(which: str, a: AlgebraPresentation,
                            b: AlgebraPresentation | None = None,
                            degree: int = 3, tower: int = 2) -> dict:
    """Compare both sides of a preservation law via the de Rham route.

    "directsum" and "tensor" compare dimensions of the computed subalgebras
    (the tensor law is proven for algebraically closed fields; here it is
    reported on examples, never asserted in general).  "unital-equality"
    checks the computable consequence of the c/cu comparison: the equalizer
    route agrees with the de Rham kernel.
    """
    from .algebra import direct_sum, tensor_product

    if which == "directsum":
        assert b is not None
        ds, _, _ = direct_sum(a, b)
        left = derham_h0(ds, degree).dimension
        right = derham_h0(a, degree).dimension + derham_h0(b, degree).dimension
        ok = left == right
        detail = {"sum_dim": left, "component_dims": right}
    elif which == "tensor":
        assert b is not None
        t = tensor_product(a, b)
        left = derham_h0(t, degree).dimension
        right = derham_h0(a, degree).dimension * derham_h0(b, degree).dimension
        ok = left == right
        detail = {"tensor_dim": left, "product_dims": right,
                  "note": "verified on this example; the general law assumes "
                          "an algebraically closed field"}
    elif which == "unital-equality":
        kernel = derham_h0(a, degree)
        eq = equalizer_subspace(a, degree, tower)
        ok = kernel.dimension == eq.dimension and all(
            any(k == e for e in eq.basis) or _in_elem_span(k, eq.basis, a)
            for k in kernel.basis)
        detail = {"derham_dim": kernel.dimension, "equalizer_dim": eq.dimension}
    else:
        raise ValueError(f"unknown check {which!r}")
    if not ok:
        raise PropertyViolationError(f"functor property {which} failed",
                                     witness=detail)
    return {"ok": True, "which": which, **detail}


def _in_elem_span(elem: ElementRep, basis: Sequence[ElementRep],
                  a: AlgebraPresentation) -> bool:
    monos = sorted({m for e in basis for m in e.poly.terms}
                   | set(elem.poly.terms))
    rows = [[e.poly.terms.get(m, a.field.zero()) for m in monos]
            for e in basis]
    target = [elem.poly.terms.get(m, a.field.zero()) for m in monos]
    return linalg.in_span(rows, target, a.field)
