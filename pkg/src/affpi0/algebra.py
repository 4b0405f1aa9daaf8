"""Finitely presented commutative unital algebras and their morphisms.

An algebra A = F[x1..xn]/I is carried by its presentation; elements are
normal forms against the lazily computed reduced Gröbner basis of I.
Morphisms are unital, determined by per-generator images, and validated by
ideal membership at construction.
"""

from __future__ import annotations

import itertools
import json
import os
from typing import Iterable, Sequence

from .errors import (MorphismError, ParseError, ResourceLimitError,
                     RingMismatchError, UnsupportedFieldError)
from .polyring import (DEGREVLEX, FieldDescriptor, GroebnerBasis, Monomial,
                       Polynomial, groebner, ideal_membership, normal_form,
                       poly_parse, standard_monomials)

POINT_GUARD = 200_000


class AlgebraPresentation:
    """A = F[vars]/(relations); the zero algebra (1 in I) is allowed, flagged."""

    def __init__(self, field: FieldDescriptor, variables: Sequence[str],
                 relations: Sequence[Polynomial] = ()):
        names = list(variables)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.field = field
        self.vars: tuple[str, ...] = tuple(names)
        rels = []
        for r in relations:
            if isinstance(r, str):
                r = poly_parse(r, names, field)
            if r.arity != len(names) or r.field != field:
                raise RingMismatchError("relation lives in another ring")
            if not r.is_zero:
                rels.append(r)
        self.relations: tuple[Polynomial, ...] = tuple(rels)
        self._gb: GroebnerBasis | None = None

    # -- presentation-level structure -----------------------------------------

    @property
    def arity(self) -> int:
        return len(self.vars)

    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = groebner(self.relations, DEGREVLEX)
        return self._gb

    def set_cached_gb(self, gb: GroebnerBasis) -> None:
        """Install an externally cached basis (atomic single assignment)."""
        self._gb = gb

    def is_zero_algebra(self) -> bool:
        return self.gb().contains_one()

    def parse(self, text: str) -> Polynomial:
        return poly_parse(text, self.vars, self.field)

    def nf(self, p: Polynomial | str) -> Polynomial:
        if isinstance(p, str):
            p = self.parse(p)
        return normal_form(p, self.gb())

    def element(self, p: Polynomial | str) -> "ElementRep":
        return ElementRep(self, self.nf(p))

    def zero_element(self) -> "ElementRep":
        return ElementRep(self, Polynomial.zero(self.arity, self.field))

    def one_element(self) -> "ElementRep":
        return self.element(Polynomial.one(self.arity, self.field))

    def var_element(self, i: int) -> "ElementRep":
        return self.element(Polynomial.variable(i, self.arity, self.field))

    def standard_monomials(self, maxdeg: int) -> list[Monomial]:
        return standard_monomials(self.gb(), self.arity, maxdeg)

    def dimension(self, probe: int = 32) -> int | None:
        """Vector-space dimension if it stabilizes within the probe degree."""
        lo = self.standard_monomials(probe)
        hi = self.standard_monomials(probe + 1)
        return len(lo) if len(lo) == len(hi) else None

    def contains_ideal(self, p: Polynomial) -> bool:
        return ideal_membership(p, self.gb())

    # -- identity & serialization ----------------------------------------------

    def signature(self) -> tuple:
        return (str(self.field), self.vars,
                tuple(r.to_string(self.vars) for r in self.relations))

    def __eq__(self, other):
        return (isinstance(other, AlgebraPresentation)
                and self.signature() == other.signature())

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        rels = ", ".join(r.to_string(self.vars) for r in self.relations)
        return f"<{self.field}[{', '.join(self.vars)}]/({rels})>"

    def to_json(self) -> dict:
        return {"field": "Q" if self.field.is_rational else {"p": self.field.p},
                "vars": list(self.vars),
                "relations": [r.to_string(self.vars) for r in self.relations]}

    @staticmethod
    def from_json(doc: dict) -> "AlgebraPresentation":
        try:
            fdoc = doc["field"]
            field = FieldDescriptor() if fdoc == "Q" else FieldDescriptor(int(fdoc["p"]))
            return AlgebraPresentation(field, doc["vars"], doc.get("relations", ()))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad algebra document: {exc}") from exc


def field_algebra(field: FieldDescriptor) -> AlgebraPresentation:
    """The ground field as the empty presentation."""
    return AlgebraPresentation(field, ())


class ElementRep:
    """An element of a presented algebra, stored as its own normal form."""

    __slots__ = ("algebra", "poly")

    def __init__(self, algebra: AlgebraPresentation, poly: Polynomial):
        self.algebra = algebra
        self.poly = poly

    def _same(self, other: "ElementRep"):
        if self.algebra != other.algebra:
            raise RingMismatchError("elements of different algebras")

    def __add__(self, other):
        self._same(other)
        return ElementRep(self.algebra, self.algebra.nf(self.poly + other.poly))

    def __sub__(self, other):
        self._same(other)
        return ElementRep(self.algebra, self.algebra.nf(self.poly - other.poly))

    def __mul__(self, other):
        self._same(other)
        return ElementRep(self.algebra, self.algebra.nf(self.poly * other.poly))

    def __pow__(self, n: int):
        return ElementRep(self.algebra, self.algebra.nf(self.poly ** n))

    def scale(self, c):
        return ElementRep(self.algebra, self.poly.scale(c))

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    def __eq__(self, other):
        return (isinstance(other, ElementRep) and self.algebra == other.algebra
                and self.poly == other.poly)

    def __hash__(self):
        return hash((self.algebra, self.poly))

    def __repr__(self):
        return f"<{self.poly.to_string(self.algebra.vars)}>"

    def to_string(self) -> str:
        return self.poly.to_string(self.algebra.vars)


class AlgebraMorphism:
    """A unital morphism source -> target given by generator images.

    Validated at construction: every source relation must map into the target
    ideal.  Images are stored as normal forms.
    """

    def __init__(self, source: AlgebraPresentation, target: AlgebraPresentation,
                 images: Sequence[Polynomial | str], check: bool = True):
        if source.field != target.field:
            raise RingMismatchError("source and target fields differ")
        if len(images) != source.arity:
            raise MorphismError(
                f"expected {source.arity} images, got {len(images)}")
        self.source = source
        self.target = target
        imgs = []
        for im in images:
            if isinstance(im, str):
                im = target.parse(im)
            if im.arity != target.arity or im.field != target.field:
                raise RingMismatchError("image lives outside the target ring")
            imgs.append(target.nf(im))
        self.images: tuple[Polynomial, ...] = tuple(imgs)
        if check:
            self._validate()

    def _validate(self) -> None:
        for r in self.source.relations:
            img = self.apply_poly(r)
            if not img.is_zero:
                raise MorphismError(
                    "relation violated: "
                    f"{r.to_string(self.source.vars)} maps to "
                    f"{img.to_string(self.target.vars)}")

    # -- action -----------------------------------------------------------------

    def apply_poly(self, p: Polynomial) -> Polynomial:
        if p.arity != self.source.arity or p.field != self.source.field:
            raise RingMismatchError("argument lives outside the source ring")
        if self.source.arity == 0:
            return self.target.nf(Polynomial.constant(
                p.constant_term(), self.target.arity, self.target.field))
        return self.target.nf(p.substitute(self.images))

    def apply(self, a: ElementRep) -> ElementRep:
        return ElementRep(self.target, self.apply_poly(a.poly))

    def __call__(self, a):
        return self.apply(a) if isinstance(a, ElementRep) else self.apply_poly(a)

    # -- structure ----------------------------------------------------------------

    @staticmethod
    def identity(a: AlgebraPresentation) -> "AlgebraMorphism":
        return AlgebraMorphism(a, a, [Polynomial.variable(i, a.arity, a.field)
                                      for i in range(a.arity)], check=False)

    def compose(self, first: "AlgebraMorphism") -> "AlgebraMorphism":
        """self ∘ first (apply `first`, then self)."""
        if first.target != self.source:
            raise RingMismatchError("composition mismatch")
        return AlgebraMorphism(first.source, self.target,
                               [self.apply_poly(im) for im in first.images],
                               check=False)

    def __eq__(self, other):
        return (isinstance(other, AlgebraMorphism) and self.source == other.source
                and self.target == other.target and self.images == other.images)

    def __hash__(self):
        return hash((self.source, self.target, self.images))

    def __repr__(self):
        imgs = ", ".join(f"{v}->{im.to_string(self.target.vars)}"
                         for v, im in zip(self.source.vars, self.images))
        return f"<morphism {imgs or '1->1'}>"

    def to_json(self) -> dict:
        return {"source": self.source.to_json(), "target": self.target.to_json(),
                "images": [im.to_string(self.target.vars) for im in self.images]}

    @staticmethod
    def from_json(doc: dict, base_dir: str = ".") -> "AlgebraMorphism":
        src = _resolve_algebra(doc["source"], base_dir)
        tgt = _resolve_algebra(doc["target"], base_dir)
        return AlgebraMorphism(src, tgt, doc.get("images", ()))


def morphism_check(source: AlgebraPresentation, target: AlgebraPresentation,
                   images: Sequence[Polynomial | str]) -> AlgebraMorphism:
    """Validate a candidate morphism; raises MorphismError naming the violation."""
    return AlgebraMorphism(source, target, images, check=True)


def _resolve_algebra(ref, base_dir: str) -> AlgebraPresentation:
    if isinstance(ref, str):
        return load_algebra(os.path.join(base_dir, ref)
                            if not os.path.isabs(ref) else ref)
    return AlgebraPresentation.from_json(ref)


def load_algebra(path: str) -> AlgebraPresentation:
    with open(path, "r", encoding="utf-8") as fh:
        return AlgebraPresentation.from_json(json.load(fh))


def load_morphism(path: str) -> AlgebraMorphism:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return AlgebraMorphism.from_json(doc, os.path.dirname(os.path.abspath(path)))


# ---------------------------------------------------------------------------
# constructions


def _fresh_name(base: str, used: Iterable[str]) -> str:
    used = set(used)
    if base not in used:
        return base
    k = 0
    while f"{base}_{k}" in used:
        k += 1
    return f"{base}_{k}"


class TensorPresentation(AlgebraPresentation):
    """A ⊗ B presented on the disjoint (suffix-renamed) variable union.

    Remembers the factor split so normal forms can be read as sums
    v ⊗ c_v over monomials of the first factor.
    """

    def __init__(self, a: AlgebraPresentation, b: AlgebraPresentation):
        if a.field != b.field:
            raise RingMismatchError("tensor factors over different fields")
        names = [v + "_1" for v in a.vars] + [v + "_2" for v in b.vars]
        n, m = a.arity, b.arity
        rels = [r.extend_arity(n + m, list(range(n))) for r in a.relations]
        rels += [r.extend_arity(n + m, list(range(n, n + m))) for r in b.relations]
        super().__init__(a.field, names, rels)
        self.factor_a = a
        self.factor_b = b

    def embed_a(self, p: Polynomial) -> Polynomial:
        return p.extend_arity(self.arity, list(range(self.factor_a.arity)))

    def embed_b(self, p: Polynomial) -> Polynomial:
        n = self.factor_a.arity
        return p.extend_arity(self.arity, list(range(n, n + self.factor_b.arity)))

    def include_a(self) -> AlgebraMorphism:
        return AlgebraMorphism(self.factor_a, self, [
            Polynomial.variable(i, self.arity, self.field)
            for i in range(self.factor_a.arity)], check=False)

    def include_b(self) -> AlgebraMorphism:
        n = self.factor_a.arity
        return AlgebraMorphism(self.factor_b, self, [
            Polynomial.variable(n + i, self.arity, self.field)
            for i in range(self.factor_b.arity)], check=False)

    def split_by_a(self, p: Polynomial) -> dict[Monomial, Polynomial]:
        """Group a (normal-form) polynomial as {a-monomial: polynomial in B-vars}."""
        n, m = self.factor_a.arity, self.factor_b.arity
        out: dict[Monomial, Polynomial] = {}
        for mono, c in p.terms.items():
            va, vb = mono[:n], mono[n:]
            bucket = out.setdefault(va, Polynomial.zero(m, self.field))
            bucket.terms[vb] = c
        return out


def tensor_product(a: AlgebraPresentation, b: AlgebraPresentation
                   ) -> TensorPresentation:
    """A ⊗_F B; for finite-dimensional inputs the dimension multiplies."""
    return TensorPresentation(a, b)


def direct_sum(a: AlgebraPresentation, b: AlgebraPresentation
               ) -> tuple[AlgebraPresentation, AlgebraMorphism, AlgebraMorphism]:
    """A ⊕ B as a unital presentation with a splitting idempotent.

    Adds a variable e with e^2 = e; A sits on the e side (u = u·e), B on the
    1-e side, and each relation has its constant term c·1 rewritten to c·e
    (resp. c·(1-e)).  Returns (presentation, p1, p2) with the projections as
    variable substitutions.
    """
    if a.field != b.field:
        raise RingMismatchError("direct sum over different fields")
    field = a.field
    names = [v + "_1" for v in a.vars] + [v + "_2" for v in b.vars]
    e_name = _fresh_name("e", names)
    names = names + [e_name]
    n, m = a.arity, b.arity
    total = n + m + 1
    e_idx = total - 1
    e = Polynomial.variable(e_idx, total, field)
    one = Polynomial.one(total, field)
    rels = [e * e - e]
    for i in range(n):
        u = Polynomial.variable(i, total, field)
        rels.append(u * e - u)
    for j in range(m):
        v = Polynomial.variable(n + j, total, field)
        rels.append(v * (one - e) - v)
    for r in a.relations:
        lifted = r.extend_arity(total, list(range(n)))
        c = lifted.constant_term()
        rels.append(lifted - Polynomial.constant(c, total, field)
                    + e.scale(c))
    for r in b.relations:
        lifted = r.extend_arity(total, list(range(n, n + m)))
        c = lifted.constant_term()
        rels.append(lifted - Polynomial.constant(c, total, field)
                    + (one - e).scale(c))
    ds = AlgebraPresentation(field, names, rels)
    zero_a = Polynomial.zero(a.arity, field)
    zero_b = Polynomial.zero(b.arity, field)
    p1 = AlgebraMorphism(ds, a, [Polynomial.variable(i, a.arity, field)
                                 for i in range(n)]
                         + [zero_a] * m + [Polynomial.one(a.arity, field)])
    p2 = AlgebraMorphism(ds, b, [zero_b] * n
                         + [Polynomial.variable(j, b.arity, field)
                            for j in range(m)]
                         + [Polynomial.zero(b.arity, field)])
    return ds, p1, p2


class PolynomialExtension:
    """A[x]: the source algebra with one fresh (last) homotopy variable."""

    def __init__(self, a: AlgebraPresentation, var_name: str = "x"):
        field = a.field
        x_name = _fresh_name(var_name, a.vars)
        names = list(a.vars) + [x_name]
        total = a.arity + 1
        rels = [r.extend_arity(total, list(range(a.arity))) for r in a.relations]
        self.base = a
        self.algebra = AlgebraPresentation(field, names, rels)
        self.x_index = total - 1
        self.x_name = x_name
        base_vars = [Polynomial.variable(i, total, field) for i in range(a.arity)]
        self.embed = AlgebraMorphism(a, self.algebra, base_vars, check=False)
        proj = [Polynomial.variable(i, a.arity, field) for i in range(a.arity)]
        self.p0 = AlgebraMorphism(self.algebra, a,
                                  proj + [Polynomial.zero(a.arity, field)],
                                  check=False)
        self.p1 = AlgebraMorphism(self.algebra, a,
                                  proj + [Polynomial.one(a.arity, field)],
                                  check=False)
        ext_vars = base_vars + [Polynomial.one(total, field)
                                - Polynomial.variable(total - 1, total, field)]
        self.flip = AlgebraMorphism(self.algebra, self.algebra, ext_vars,
                                    check=False)

    def x_poly(self) -> Polynomial:
        return Polynomial.variable(self.x_index, self.algebra.arity,
                                   self.algebra.field)


def polynomial_extension(a: AlgebraPresentation, var_name: str = "x"
                         ) -> PolynomialExtension:
    return PolynomialExtension(a, var_name)


# ---------------------------------------------------------------------------
# enumeration over prime fields


def enumerate_points(a: AlgebraPresentation, guard: int = POINT_GUARD
                     ) -> list[AlgebraMorphism]:
    """All unital morphisms A -> F_p by exhaustive assignment, in lex order."""
    if a.field.is_rational:
        raise UnsupportedFieldError("points over Q are not enumerable")
    p = a.field.p
    if p ** a.arity > guard:
        raise ResourceLimitError(
            f"point search space {p}^{a.arity} exceeds guard {guard}")
    fld = field_algebra(a.field)
    points = []
    for assignment in itertools.product(range(p), repeat=a.arity):
        if all(r.evaluate(assignment) == 0 for r in a.relations):
            images = [Polynomial.constant(v, 0, a.field) for v in assignment]
            points.append(AlgebraMorphism(a, fld, images, check=False))
    return points


def enumerate_hom(a: AlgebraPresentation, b: AlgebraPresentation,
                  imagedeg: int, guard: int = POINT_GUARD
                  ) -> list[AlgebraMorphism]:
    """All morphisms A -> B with images supported on standard monomials of
    degree <= imagedeg, by exhaustive coefficient search (prime fields)."""
    if a.field != b.field:
        raise RingMismatchError("enumerate_hom needs a common field")
    if a.field.is_rational:
        raise UnsupportedFieldError("hom enumeration needs a prime field")
    p = a.field.p
    basis = b.standard_monomials(imagedeg)
    n_coef = len(basis) * a.arity
    if p ** n_coef > guard:
        raise ResourceLimitError(
            f"hom search space {p}^{n_coef} exceeds guard {guard}")
    homs = []
    for coeffs in itertools.product(range(p), repeat=n_coef):
        images = []
        for i in range(a.arity):
            chunk = coeffs[i * len(basis):(i + 1) * len(basis)]
            terms = {m: c for m, c in zip(basis, chunk) if c != 0}
            images.append(Polynomial(b.arity, b.field, terms))
        if all(b.contains_ideal(r.substitute(images)) for r in a.relations):
            homs.append(AlgebraMorphism(a, b, images, check=False))
    return homs
