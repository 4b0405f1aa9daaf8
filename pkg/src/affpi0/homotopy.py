"""Elementary and chain algebraic homotopy between algebra morphisms.

An elementary homotopy from f to g (both A -> B) is a morphism H: A -> B[x]
with H(x=0) = f and H(x=1) = g.  Verification is exact; the bounded search
solves for unknown coefficients of H over the standard monomials of B times
powers of x.  Over a prime field the search is complete within its bounds;
over the rationals it is sound and may return "undecided".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import (AlgebraMorphism, AlgebraPresentation, ElementRep,
                      PolynomialExtension, polynomial_extension)
from .errors import HypothesisError, MorphismError, PropertyViolationError
from .polyring import BlockOrder, Monomial, Polynomial, normal_form
from .solve import SOLVE_GUARD, solve_system


@dataclass(frozen=True)
class SearchBounds:
    """Degree caps for the homotopy search: in x and in the target algebra."""

    xdeg: int
    bdeg: int

    def __post_init__(self):
        if self.xdeg < 0 or self.bdeg < 0:
            raise ValueError("search bounds must be non-negative")


class ElementaryHomotopy:
    """A verified homotopy H: A -> B[x] with recorded endpoints."""

    def __init__(self, f: AlgebraMorphism, g: AlgebraMorphism,
                 h: AlgebraMorphism, ext: PolynomialExtension):
        if f.source != g.source or f.target != g.target:
            raise MorphismError("endpoints must share source and target")
        if ext.base != f.target:
            raise MorphismError("homotopy extension built over the wrong target")
        if h.source != f.source or h.target != ext.algebra:
            raise MorphismError("H must map the source into target[x]")
        left = ext.p0.compose(h)
        if left != f:
            raise MorphismError("endpoint mismatch at x=0")
        right = ext.p1.compose(h)
        if right != g:
            raise MorphismError("endpoint mismatch at x=1")
        self.f = f
        self.g = g
        self.h = h
        self.ext = ext

    def reversed(self) -> "ElementaryHomotopy":
        """The certificate for g ≈ f obtained by composing with x -> 1-x."""
        return ElementaryHomotopy(self.g, self.f,
                                  self.ext.flip.compose(self.h), self.ext)

    def __repr__(self):
        return f"<homotopy {self.f!r} ~ {self.g!r}>"


def homotopy_verify(f: AlgebraMorphism, g: AlgebraMorphism,
                    h: AlgebraMorphism, ext: PolynomialExtension | None = None
                    ) -> ElementaryHomotopy:
    """Accept H iff it is a morphism with the two endpoint identities."""
    if ext is None:
        ext = _extension_of(h.target)
    return ElementaryHomotopy(f, g, h, ext)


def _extension_of(bx: AlgebraPresentation) -> PolynomialExtension:
    """Rebuild the extension structure of a presentation shaped like B[x]."""
    base = AlgebraPresentation(bx.field, bx.vars[:-1],
                               [r.restrict_arity(list(range(bx.arity - 1)))
                                for r in bx.relations])
    ext = polynomial_extension(base, bx.vars[-1])
    if ext.algebra != bx:
        raise MorphismError("target is not a polynomial extension B[x] "
                            "with the homotopy variable appended last")
    return ext


def constant_homotopy(f: AlgebraMorphism) -> ElementaryHomotopy:
    ext = polynomial_extension(f.target)
    return ElementaryHomotopy(f, f, ext.embed.compose(f), ext)


@dataclass
class SearchResult:
    status: str                          # found | none-within-bounds | undecided
    certificate: ElementaryHomotopy | None = None
    detail: str = ""


def homotopy_search(f: AlgebraMorphism, g: AlgebraMorphism,
                    bounds: SearchBounds, guard: int = SOLVE_GUARD
                    ) -> SearchResult:
    """Decide f ≈ g by an elementary homotopy within the degree bounds.

    Unknown coefficients of H(generator) range over (standard monomials of B
    of degree <= bdeg) x (powers of x <= xdeg).  The endpoint equations are
    linear, the relation equations polynomial; the combined system is solved
    exactly.  Over F_p a "none-within-bounds" answer is exhaustive; over Q it
    is certified by 1 lying in the constraint ideal.
    """
    if f.source != g.source or f.target != g.target:
        raise MorphismError("endpoints must share source and target")
    if f == g:
        return SearchResult("found", constant_homotopy(f))
    a, b = f.source, f.target
    ext = polynomial_extension(b)
    basis = b.standard_monomials(bounds.bdeg)
    slots = [(w, k) for w in basis for k in range(bounds.xdeg + 1)]
    n_unknown = a.arity * len(slots)
    if n_unknown == 0:
        if f == g:
            return SearchResult("found", constant_homotopy(f))
        return SearchResult("none-within-bounds",
                            detail="no unknowns available")

    # combined ring: B[x] variables first (block), then unknown coefficients
    nbx = b.arity + 1
    big = nbx + n_unknown
    order = BlockOrder(nbx)
    fieldd = b.field
    b_lift = [p.extend_arity(big, list(range(b.arity))) for p in b.gb()]

    h_images_big = []
    for gi in range(a.arity):
        img = Polynomial.zero(big, fieldd)
        for si, (w, k) in enumerate(slots):
            exps = list(w) + [k] + [0] * n_unknown
            exps[nbx + gi * len(slots) + si] = 1
            img = img + Polynomial(big, fieldd, {tuple(exps): fieldd.one()})
        h_images_big.append(img)

    constraints: list[Polynomial] = []

    def collect(poly_big: Polynomial) -> None:
        reduced = normal_form(poly_big, b_lift, order)
        groups: dict[Monomial, Polynomial] = {}
        for mono, c in reduced.terms.items():
            key = mono[:nbx]
            bucket = groups.setdefault(key, Polynomial.zero(n_unknown, fieldd))
            bucket.terms[mono[nbx:]] = c
        constraints.extend(groups.values())

    # relations of the source must map to zero in B[x]
    for r in a.relations:
        collect(r.substitute(h_images_big))
    # endpoint equations: x -> 0 matches f, x -> 1 matches g
    for gi in range(a.arity):
        at0 = Polynomial.zero(big, fieldd)
        at1 = Polynomial.zero(big, fieldd)
        for si, (w, k) in enumerate(slots):
            exps = list(w) + [0] + [0] * n_unknown
            exps[nbx + gi * len(slots) + si] = 1
            term = Polynomial(big, fieldd, {tuple(exps): fieldd.one()})
            if k == 0:
                at0 = at0 + term
            at1 = at1 + term
        f_img = f.images[gi].extend_arity(big, list(range(b.arity)))
        g_img = g.images[gi].extend_arity(big, list(range(b.arity)))
        collect(at0 - f_img)
        collect(at1 - g_img)

    constraints = [c for c in constraints if not c.is_zero]
    result = solve_system(constraints, n_unknown, fieldd, guard)
    if result.solutions:
        sol = result.solutions[0]
        images = []
        for gi in range(a.arity):
            img = Polynomial.zero(ext.algebra.arity, fieldd)
            for si, (w, k) in enumerate(slots):
                c = sol[gi * len(slots) + si]
                if c != fieldd.zero():
                    img = img + Polynomial.monomial(tuple(w) + (k,), fieldd, c)
            images.append(img)
        h = AlgebraMorphism(a, ext.algebra, images, check=True)
        return SearchResult("found", ElementaryHomotopy(f, g, h, ext))
    if result.complete:
        return SearchResult("none-within-bounds",
                            detail=f"{len(constraints)} constraints, "
                                   f"{n_unknown} unknowns")
    return SearchResult("undecided",
                        detail="rational solver could not certify emptiness")


# ---------------------------------------------------------------------------
# chains


class HomotopyChain:
    """A chain f = h0 ≈ h1 ≈ ... ≈ hn = g of elementary homotopies."""

    def __init__(self, links: Sequence[ElementaryHomotopy]):
        if not links:
            raise ValueError("a chain needs at least one link")
        self.links = tuple(links)

    @property
    def start(self) -> AlgebraMorphism:
        return self.links[0].f

    @property
    def end(self) -> AlgebraMorphism:
        return self.links[-1].g


def chain_verify(links: Sequence[ElementaryHomotopy]) -> HomotopyChain:
    """Accept iff each link verifies and adjacent endpoints agree exactly."""
    chain = HomotopyChain(links)
    for idx, link in enumerate(chain.links):
        # construction re-verifies; re-run the endpoint identities explicitly
        ElementaryHomotopy(link.f, link.g, link.h, link.ext)
        if idx + 1 < len(chain.links) and link.g != chain.links[idx + 1].f:
            raise PropertyViolationError(
                f"chain broken between links {idx} and {idx + 1}",
                witness=idx)
    return chain


# ---------------------------------------------------------------------------
# constancy certificates


@dataclass
class ConstancyReport:
    constant: bool
    witness: ElementRep | None      # the constant part, or an x-coefficient


def constancy_check(p: ElementRep, ext: PolynomialExtension, mode: str,
                    k: int | None = None,
                    minpoly: Sequence | None = None) -> ConstancyReport:
    """Certify that an element of C[x] is constant in x.

    mode "power": requires p^k = p exactly with char(F) not dividing k-1.
    mode "integral": requires a vanishing F-polynomial for p (caller asserts
    C has no nonzero nilpotents).  Returns the constant witness, or the first
    nonzero x-coefficient as a counterexample certificate.
    """
    cx = ext.algebra
    if p.algebra != cx:
        raise HypothesisError("element does not live in the given C[x]")
    if mode == "power":
        if k is None or k < 2:
            raise HypothesisError("power mode needs an exponent k >= 2")
        char = cx.field.char
        if char and (k - 1) % char == 0:
            raise HypothesisError(f"characteristic {char} divides k-1 = {k - 1}")
        if (p ** k) != p:
            raise HypothesisError(f"p^{k} != p: power hypothesis fails")
    elif mode == "integral":
        if not minpoly or all(cx.field.scalar(c) == cx.field.zero()
                              for c in minpoly):
            raise HypothesisError("integral mode needs a nonzero vanishing "
                                  "polynomial")
        acc = cx.zero_element()
        power = cx.one_element()
        for c in minpoly:
            acc = acc + power.scale(c)
            power = power * p
        if not acc.is_zero:
            raise HypothesisError("the given polynomial does not vanish on p")
    else:
        raise ValueError(f"unknown constancy mode {mode!r}")
    x_idx = ext.x_index
    for mono in sorted(p.poly.terms):
        if mono[x_idx] > 0:
            coeff = Polynomial(cx.arity, cx.field,
                               {mono: p.poly.terms[mono]})
            return ConstancyReport(False, ElementRep(cx, coeff))
    return ConstancyReport(True, ext.p0.apply(p))


# ---------------------------------------------------------------------------
# homotopy-invariance harness


def p0p1_invariance_harness(a: AlgebraPresentation, hook: str,
                            degree: int = 2, tower_depth: int = 2) -> dict:
    """Check that the two evaluations of A[x] induce the same map on a
    computed invariant (named hook: pi0 | derham_h0 | sing_h0)."""
    from . import derham, pi0, simplicial   # local imports avoid cycles

    ext = polynomial_extension(a)
    ax = ext.algebra
    if hook == "derham_h0":
        spanning = derham.derham_h0(ax, degree).basis
    elif hook == "pi0":
        spanning = pi0.equalizer_subspace(ax, degree, tower_depth).basis
    elif hook == "sing_h0":
        spanning = simplicial.sing_h0(ax, tower_depth, degree).levels[-1].basis
    else:
        raise ValueError(f"unknown invariant hook {hook!r}")
    disagreements = []
    for elem in spanning:
        left = ext.p0.apply(elem)
        right = ext.p1.apply(elem)
        if left != right:
            disagreements.append(elem)
    if disagreements:
        raise PropertyViolationError(
            f"p0/p1 disagree on the {hook} spanning set",
            witness=disagreements[0])
    return {"ok": True, "hook": hook, "spanning_size": len(spanning)}
