"""Kähler differentials at low degree and degree-0 de Rham cohomology.

For A = F[x1..xn]/(r1..rm) the degree-1 module is free on the symbols dx_i
modulo the Jacobian rows of the relations; degree 2 is spanned by dx_i∧dx_j
(i < j).  Membership in the Jacobian submodule is decided by exact linear
algebra with a degree slack, so every reported kernel element carries an
exact certificate; completeness beyond the cutoff is a stabilization
heuristic, reported as such, never asserted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .algebra import AlgebraPresentation, ElementRep, PolynomialExtension
from .errors import UnsupportedFieldError
from .polyring import Monomial, Polynomial


class DifferentialForm:
    """A form of degree 0, 1 or 2 with normal-form coefficients.

    Degree-1 coefficients are indexed by (i,), degree-2 by (i, j) with i < j
    (antisymmetry is normalized away at construction).
    """

    def __init__(self, algebra: AlgebraPresentation, degree: int,
                 coeffs: dict[tuple[int, ...], Polynomial]):
        self.algebra = algebra
        self.degree = degree
        clean = {}
        for idx, c in coeffs.items():
            if len(idx) != degree:
                raise ValueError("wedge index arity does not match the degree")
            c = algebra.nf(c)
            if not c.is_zero:
                clean[idx] = c
        self.coeffs = clean

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return (isinstance(other, DifferentialForm)
                and self.algebra == other.algebra
                and self.degree == other.degree and self.coeffs == other.coeffs)

    def __add__(self, other: "DifferentialForm") -> "DifferentialForm":
        assert self.degree == other.degree and self.algebra == other.algebra
        out = dict(self.coeffs)
        for idx, c in other.coeffs.items():
            out[idx] = out.get(idx, Polynomial.zero(
                self.algebra.arity, self.algebra.field)) + c
        return DifferentialForm(self.algebra, self.degree, out)

    def __sub__(self, other: "DifferentialForm") -> "DifferentialForm":
        return self + other.scale(-1)

    def scale(self, c) -> "DifferentialForm":
        return DifferentialForm(self.algebra, self.degree,
                                {i: p.scale(c) for i, p in self.coeffs.items()})

    def __repr__(self):
        names = self.algebra.vars
        if self.is_zero:
            return "<form 0>"
        bits = []
        for idx in sorted(self.coeffs):
            wedge = "∧".join(f"d{names[i]}" for i in idx) or "1"
            bits.append(f"({self.coeffs[idx].to_string(names)})·{wedge}")
        return "<form " + " + ".join(bits) + ">"


def jacobian_rows(a: AlgebraPresentation) -> list[DifferentialForm]:
    """The degree-1 relations: one row sum_i (dr_k/dx_i) dx_i per relation."""
    rows = []
    for r in a.relations:
        coeffs = {(i,): r.derivative(i) for i in range(a.arity)}
        rows.append(DifferentialForm(a, 1, coeffs))
    return rows


def universal_derivation(elem: ElementRep) -> DifferentialForm:
    """d(p) = sum_i (dp/dx_i) dx_i; Leibniz holds modulo the row relations."""
    a = elem.algebra
    coeffs = {(i,): elem.poly.derivative(i) for i in range(a.arity)}
    return DifferentialForm(a, 1, coeffs)


def exterior_derivative(omega: DifferentialForm) -> DifferentialForm:
    """Degree 1 -> 2: d(sum a_i dx_i) has dx_i∧dx_j coefficient da_j/dx_i - da_i/dx_j."""
    if omega.degree != 1:
        raise ValueError("exterior_derivative implemented for degree-1 forms")
    a = omega.algebra
    coeffs: dict[tuple[int, ...], Polynomial] = {}
    for (j,), c in omega.coeffs.items():
        for i in range(a.arity):
            if i == j:
                continue
            # d(c)∧dx_j contributes dc/dx_i · dx_i∧dx_j
            lo, hi = (i, j) if i < j else (j, i)
            sign = 1 if i < j else -1
            term = c.derivative(i).scale(sign)
            key = (lo, hi)
            coeffs[key] = coeffs.get(key, Polynomial.zero(a.arity, a.field)) + term
    return DifferentialForm(a, 2, coeffs)


# ---------------------------------------------------------------------------
# membership in the Jacobian submodule


def _coordinates(a: AlgebraPresentation, polys: Sequence[Polynomial],
                 monomials: list[Monomial]) -> list[list]:
    zero = a.field.zero()
    return [[p.terms.get(m, zero) for m in monomials] for p in polys]


def _span_rows(a: AlgebraPresentation, slack: int
               ) -> list[dict[tuple[int, ...], Polynomial]]:
    """Multiplier-monomial times Jacobian-row generators of the submodule."""
    rows = []
    for r in a.relations:
        base = {(i,): r.derivative(i) for i in range(a.arity)}
        for mult in a.standard_monomials(slack):
            row = {}
            for idx, c in base.items():
                v = a.nf(c.mul_monomial(mult))
                if not v.is_zero:
                    row[idx] = v
            if row:
                rows.append(row)
    return rows


def form_is_zero(omega: DifferentialForm, slack: int
                 ) -> tuple[bool, DifferentialForm | None]:
    """Exact membership of a degree-1 form in the Jacobian submodule.

    Multipliers range over standard monomials of degree <= slack.  On failure
    the residual (the form itself, which has no expansion in that span) is
    returned as evidence.
    """
    if omega.degree != 1:
        raise ValueError("form_is_zero decides degree-1 forms")
    a = omega.algebra
    if omega.is_zero:
        return True, None
    span = _span_rows(a, slack)
    monomials = sorted({m for row in span for c in row.values()
                        for m in c.terms}
                       | {m for c in omega.coeffs.values() for m in c.terms})
    index = [(i,) for i in range(a.arity)]
    flat_rows = []
    for row in span:
        flat = []
        for idx in index:
            c = row.get(idx, Polynomial.zero(a.arity, a.field))
            flat.extend(c.terms.get(m, a.field.zero()) for m in monomials)
        flat_rows.append(flat)
    target = []
    for idx in index:
        c = omega.coeffs.get(idx, Polynomial.zero(a.arity, a.field))
        target.extend(c.terms.get(m, a.field.zero()) for m in monomials)
    ok = linalg.in_span(flat_rows, target, a.field)
    return (True, None) if ok else (False, omega)


# ---------------------------------------------------------------------------
# degree-0 cohomology


@dataclass
class TruncatedKernel:
    """ker d restricted to the degree-bounded slice, with certificates."""

    algebra: AlgebraPresentation
    degree: int
    basis: list[ElementRep]
    stabilized: bool
    char_zero: bool          # False marks the "computed, but not pi0" case

    @property
    def dimension(self) -> int:
        return len(self.basis)


def derham_h0(a: AlgebraPresentation, degree: int,
              slack: int | None = None) -> TruncatedKernel:
    """Exact kernel of the universal derivation on the degree-<=D slice.

    Every basis element is certified by exact membership of its differential
    in the Jacobian submodule (with multiplier slack D+2 by default); the
    stabilization flag compares with the slice one degree lower.
    """
    if slack is None:
        slack = degree + 2
    basis = _kernel_basis(a, degree, slack)
    prev = _kernel_basis(a, degree - 1, slack) if degree > 0 else []
    stabilized = len(prev) == len(basis)
    for elem in basis:
        ok, _ = form_is_zero(universal_derivation(elem), slack)
        if not ok:      # pragma: no cover - the joint solve already certifies
            raise AssertionError("kernel element failed its certificate")
    return TruncatedKernel(a, degree, basis, stabilized, a.field.is_rational)


def _kernel_basis(a: AlgebraPresentation, degree: int, slack: int
                  ) -> list[ElementRep]:
    slice_monos = a.standard_monomials(degree)
    if not slice_monos:
        return []
    span = _span_rows(a, slack)
    diffs = [universal_derivation(a.element(Polynomial.monomial(m, a.field)))
             for m in slice_monos]
    monomials = sorted({m for row in span for c in row.values()
                        for m in c.terms}
                       | {m for d in diffs for c in d.coeffs.values()
                          for m in c.terms})
    index = [(i,) for i in range(a.arity)]
    width = len(index) * len(monomials)
    zero = a.field.zero()

    def flatten(form_coeffs: dict) -> list:
        flat = []
        for idx in index:
            c = form_coeffs.get(idx)
            if c is None:
                flat.extend([zero] * len(monomials))
            else:
                flat.extend(c.terms.get(m, zero) for m in monomials)
        return flat

    # unknowns: slice coefficients c_m, then span multipliers l_k;
    # rows of the homogeneous system are the coordinates of
    # sum c_m d(m) - sum l_k row_k = 0
    columns = [flatten(d.coeffs) for d in diffs]
    columns += [[a.field.neg(v) for v in flatten(row)] for row in span]
    matrix = [[columns[j][i] for j in range(len(columns))]
              for i in range(width)]
    null = linalg.nullspace(matrix, len(columns), a.field)
    slice_part = [vec[:len(slice_monos)] for vec in null]
    reduced, pivots = linalg.rref(slice_part, a.field)
    basis = []
    for row in reduced[:len(pivots)]:
        poly = Polynomial.zero(a.arity, a.field)
        for coeff, mono in zip(row, slice_monos):
            if coeff != zero:
                poly = poly + Polynomial.monomial(mono, a.field, coeff)
        basis.append(a.element(poly))
    return basis


def subalgebra_closure_check(kernel: TruncatedKernel) -> bool:
    """Products of basis elements that stay inside the slice re-expand in it."""
    a = kernel.algebra
    slice_monos = a.standard_monomials(kernel.degree)
    coords = {m: k for k, m in enumerate(slice_monos)}
    rows = []
    for elem in kernel.basis:
        vec = [a.field.zero()] * len(slice_monos)
        for m, c in elem.poly.terms.items():
            vec[coords[m]] = c
        rows.append(vec)
    for x in kernel.basis:
        for y in kernel.basis:
            prod = (x * y).poly
            if prod.total_degree() > kernel.degree:
                continue
            target = [a.field.zero()] * len(slice_monos)
            for m, c in prod.terms.items():
                if m not in coords:
                    return False
                target[coords[m]] = c
            if not linalg.in_span(rows, target, a.field):
                return False
    return True


# ---------------------------------------------------------------------------
# the formal-integral cochain homotopy


def _x_split(p: Polynomial, x_idx: int) -> dict[int, Polynomial]:
    """Group by the power of the homotopy variable, dropping that variable."""
    out: dict[int, Polynomial] = {}
    for m, c in p.terms.items():
        k = m[x_idx]
        rest = m[:x_idx] + (0,) + m[x_idx + 1:]
        bucket = out.setdefault(k, Polynomial.zero(p.arity, p.field))
        bucket.terms[rest] = bucket.terms.get(rest, p.field.zero())
        bucket.terms[rest] = p.field.add(bucket.terms[rest], c)
    for k in list(out):
        out[k].terms = {m: c for m, c in out[k].terms.items()
                        if c != p.field.zero()}
    return out


def _drop_x(p: Polynomial, ext: PolynomialExtension) -> Polynomial:
    return p.restrict_arity(list(range(ext.base.arity)))


def _invert_int(field, k: int):
    try:
        return field.inv(field.scalar(k))
    except ZeroDivisionError:
        raise UnsupportedFieldError(
            f"characteristic divides {k}: the formal integral needs 1/{k}")


def integral_phi1(omega: DifferentialForm, ext: PolynomialExtension
                  ) -> ElementRep:
    """phi^1 on Omega^1(A[x]): dx·(x^k w) -> w/(k+1), the dx-free part -> 0."""
    ax = ext.algebra
    if omega.algebra != ax or omega.degree != 1:
        raise ValueError("phi^1 consumes degree-1 forms over A[x]")
    base = ext.base
    x_idx = ext.x_index
    acc = Polynomial.zero(base.arity, base.field)
    for (i,), c in omega.coeffs.items():
        if i != x_idx:
            continue
        for k, part in _x_split(c, x_idx).items():
            inv = _invert_int(base.field, k + 1)
            acc = acc + _drop_x(part, ext).scale(inv)
    return base.element(acc)


def integral_phi2(omega: DifferentialForm, ext: PolynomialExtension
                  ) -> DifferentialForm:
    """phi^2 on Omega^2(A[x]): dx·(x^k w) -> w/(k+1) for degree-1 w over A."""
    ax = ext.algebra
    if omega.algebra != ax or omega.degree != 2:
        raise ValueError("phi^2 consumes degree-2 forms over A[x]")
    base = ext.base
    x_idx = ext.x_index
    coeffs: dict[tuple[int, ...], Polynomial] = {}
    for (i, j), c in omega.coeffs.items():
        if j != x_idx:
            continue  # no dx factor: the M_0 part maps to zero
        # stored dx_i∧dx = -dx·(dx_i): flip the sign for the dx·(x^k w) shape
        for k, part in _x_split(c, x_idx).items():
            inv = _invert_int(base.field, k + 1)
            add = _drop_x(part, ext).scale(base.field.neg(inv))
            key = (i,)
            prev = coeffs.get(key, Polynomial.zero(base.arity, base.field))
            coeffs[key] = prev + add
    return DifferentialForm(base, 1, coeffs)


def push_form(omega: DifferentialForm, morphism,
              target: AlgebraPresentation) -> DifferentialForm:
    """Apply an evaluation A[x] -> A to a degree-1 form (dx -> 0)."""
    src = omega.algebra
    coeffs: dict[tuple[int, ...], Polynomial] = {}
    for (i,), c in omega.coeffs.items():
        if i >= target.arity:
            continue  # d of a constant image
        img = morphism.apply_poly(c)
        key = (i,)
        prev = coeffs.get(key, Polynomial.zero(target.arity, target.field))
        coeffs[key] = prev + img
    return DifferentialForm(target, 1, coeffs)


def integration_homotopy_check(a: AlgebraPresentation,
                               degree0_samples: Sequence[ElementRep],
                               degree1_samples: Sequence[DifferentialForm],
                               ext: PolynomialExtension) -> dict:
    """Verify (p1-p0) = phi∘d + d∘phi on the supplied samples, exactly.

    Degree 0: (p1-p0)(a) = phi^1(da).  Degree 1: (p1-p0)(w) = phi^2(dw)
    + d(phi^1(w)).  Characteristic-p inputs fail with an explicit error as
    soon as a needed 1/(k+1) does not exist.
    """
    failures = []
    for elem in degree0_samples:
        lhs = ext.p1.apply(elem) - ext.p0.apply(elem)
        rhs = integral_phi1(universal_derivation(elem), ext)
        if lhs != rhs:
            failures.append(("degree0", elem, lhs, rhs))
    for omega in degree1_samples:
        lhs = push_form(omega, ext.p1, a) - push_form(omega, ext.p0, a)
        rhs = integral_phi2(exterior_derivative(omega), ext)
        dphi = universal_derivation(integral_phi1(omega, ext))
        rhs = rhs + dphi
        if lhs != rhs:
            failures.append(("degree1", omega, lhs, rhs))
    return {"ok": not failures,
            "degree0_samples": len(degree0_samples),
            "degree1_samples": len(degree1_samples),
            "failures": failures}
