"""Truncated presentations of the morphism-space pro-algebra of two algebras.

For presented A and B and a truncation (a finite set of standard monomials of
B per generator of A), the level algebra is generated by coordinates z[a,v]
subject to the relations obtained by substituting each generator a of A by
sum_v v*z[a,v] into the relations of A, reducing modulo the ideal of B, and
collecting the coefficient of every standard monomial of B.  The universal
substitution, structural maps of the truncation tower, associated morphisms,
functorial action, the composition coproduct, and the exponential / tensor /
direct-sum law witnesses all live here.

The inverse limit is never materialized: every statement is per level, plus
tower-stability reporting.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import (AlgebraMorphism, AlgebraPresentation, ElementRep,
                      TensorPresentation, direct_sum, enumerate_hom,
                      enumerate_points, field_algebra, tensor_product)
from .errors import (PropertyViolationError, RingMismatchError,
                     TruncationError)
from .polyring import (BlockOrder, Monomial, Polynomial, monomial_divides,
                       normal_form)


@dataclass(frozen=True)
class Truncation:
    """Per-generator subsets of the standard monomials of the target algebra."""

    deltas: tuple[tuple[Monomial, ...], ...]   # aligned with source generators

    @staticmethod
    def uniform(a: AlgebraPresentation, b: AlgebraPresentation, degree: int
                ) -> "Truncation":
        basis = tuple(b.standard_monomials(degree))
        return Truncation(tuple(basis for _ in a.vars))

    @staticmethod
    def explicit(a: AlgebraPresentation, monomials: Sequence[Monomial]
                 ) -> "Truncation":
        basis = tuple(monomials)
        return Truncation(tuple(basis for _ in a.vars))

    def contains(self, other: "Truncation") -> bool:
        return all(set(mine) >= set(theirs)
                   for mine, theirs in zip(self.deltas, other.deltas))


def z_name(generator: str, monomial: Monomial) -> str:
    """Deterministic, parseable coordinate name z__<gen>__<exponents>."""
    tail = "_".join(str(e) for e in monomial) if monomial else "c"
    return f"z__{generator}__{tail}"


class MapSpacePresentation:
    """One truncation level of the morphism-space pro-algebra of (A, B)."""

    def __init__(self, a: AlgebraPresentation, b: AlgebraPresentation,
                 trunc: Truncation):
        if a.field != b.field:
            raise RingMismatchError("map space needs a common ground field")
        if len(trunc.deltas) != a.arity:
            raise TruncationError("truncation must list one subset per generator")
        self.a = a
        self.b = b
        self.trunc = trunc
        self.field = a.field
        b_gb = b.gb()
        lts = b_gb.leading_monomials
        for gen, delta in zip(a.vars, trunc.deltas):
            for v in delta:
                if any(monomial_divides(lt, v) for lt in lts):
                    raise TruncationError(
                        f"delta for {gen} contains the non-standard monomial {v}")
        # z coordinates: generator-major, monomials in given (standard) order
        self.zvars: list[tuple[int, Monomial]] = []
        for gi in range(a.arity):
            for v in trunc.deltas[gi]:
                self.zvars.append((gi, v))
        self.z_names = tuple(z_name(a.vars[gi], v) for gi, v in self.zvars)
        self.z_index = {pair: k for k, pair in enumerate(self.zvars)}
        # combined ring: B variables first (eliminated block), then z variables
        self.n_b = b.arity
        self.n_z = len(self.zvars)
        self.big_arity = self.n_b + self.n_z
        self.big_order = BlockOrder(self.n_b)
        self._b_lift = [g.extend_arity(self.big_arity, list(range(self.n_b)))
                        for g in b_gb]
        # the universal substitution: generator -> sum_v v * z[a,v]
        self.upsilon_images: list[Polynomial] = []
        for gi in range(a.arity):
            img = Polynomial.zero(self.big_arity, self.field)
            for v in trunc.deltas[gi]:
                zk = self.n_b + self.z_index[(gi, v)]
                exps = list(v) + [0] * self.n_z
                exps[zk] = 1
                img = img + Polynomial(self.big_arity, self.field,
                                       {tuple(exps): self.field.one()})
            self.upsilon_images.append(img)
        # relation ideal: coefficients of standard B-monomials
        j_gens: list[Polynomial] = []
        seen = set()
        for r in a.relations:
            image = (r.substitute(self.upsilon_images) if a.arity
                     else Polynomial.constant(r.constant_term(),
                                              self.big_arity, self.field))
            reduced = normal_form(image, self._b_lift, self.big_order)
            for coeff in self._group_by_b(reduced).values():
                key = coeff.key()
                if key and key not in seen:
                    seen.add(key)
                    j_gens.append(coeff)
        j_gens.sort(key=lambda p: p.key())
        self.algebra = AlgebraPresentation(self.field, self.z_names, j_gens)
        self._j_lift: list[Polynomial] | None = None

    # -- internals ------------------------------------------------------------

    def _group_by_b(self, p: Polynomial) -> dict[Monomial, Polynomial]:
        """Split a combined-ring polynomial as {B-monomial: z-polynomial}."""
        out: dict[Monomial, Polynomial] = {}
        for mono, c in p.terms.items():
            vb, vz = mono[:self.n_b], mono[self.n_b:]
            bucket = out.setdefault(vb, Polynomial.zero(self.n_z, self.field))
            bucket.terms[vz] = c
        return out

    def _combined_basis(self) -> list[Polynomial]:
        if self._j_lift is None:
            lifted = [g.extend_arity(self.big_arity,
                                     list(range(self.n_b, self.big_arity)))
                      for g in self.algebra.gb()]
            self._j_lift = self._b_lift + lifted
        return self._j_lift

    # -- the universal map -------------------------------------------------------

    def upsilon_poly(self, p: Polynomial) -> dict[Monomial, Polynomial]:
        """Image of an element of A in B ⊗ (this level), as {v: z-coefficient}.

        Coefficients come back J-reduced; the expansion is unique because the
        standard monomials of B and of the level algebra are bases.
        """
        if p.arity != self.a.arity or p.field != self.field:
            raise RingMismatchError("element lives outside the source algebra")
        image = (p.substitute(self.upsilon_images) if self.a.arity
                 else Polynomial.constant(p.constant_term(),
                                          self.big_arity, self.field))
        reduced = normal_form(image, self._combined_basis(), self.big_order)
        return self._group_by_b(reduced)

    def upsilon(self, a: ElementRep) -> dict[Monomial, Polynomial]:
        if a.algebra != self.a:
            raise RingMismatchError("element of a different algebra")
        return self.upsilon_poly(a.poly)

    def signature(self) -> tuple:
        return (self.a.signature(), self.b.signature(), self.trunc.deltas)

    def __repr__(self):
        return (f"<map space {len(self.z_names)} coordinates, "
                f"{len(self.algebra.relations)} relations>")


def mapspace_presentation(a: AlgebraPresentation, b: AlgebraPresentation,
                          trunc: Truncation | int) -> MapSpacePresentation:
    if isinstance(trunc, int):
        trunc = Truncation.uniform(a, b, trunc)
    return MapSpacePresentation(a, b, trunc)


def tower(a: AlgebraPresentation, b: AlgebraPresentation, dmax: int,
          dmin: int = 0) -> list[MapSpacePresentation]:
    return [mapspace_presentation(a, b, d) for d in range(dmin, dmax + 1)]


def structural_morphism(small: MapSpacePresentation, big: MapSpacePresentation
                        ) -> AlgebraMorphism:
    """Level map big -> small of the tower: z[a,v] -> z[a,v] or 0.

    Well-definedness (each relation of the big level lands in the small level's
    ideal) is checked; a failure is an implementation bug, not an input error.
    """
    if small.a != big.a or small.b != big.b:
        raise RingMismatchError("tower levels of different map spaces")
    if not big.trunc.contains(small.trunc):
        raise TruncationError("structural morphism needs nested truncations")
    field = small.field
    images = []
    for gi, v in big.zvars:
        if (gi, v) in small.z_index:
            images.append(Polynomial.variable(small.z_index[(gi, v)],
                                              small.n_z, field))
        else:
            images.append(Polynomial.zero(small.n_z, field))
    try:
        return AlgebraMorphism(big.algebra, small.algebra, images, check=True)
    except Exception as exc:  # pragma: no cover - theory guarantees this route
        raise PropertyViolationError(
            f"structural morphism not well defined: {exc}") from exc


def associated_morphism(m: MapSpacePresentation, phi: AlgebraMorphism
                        ) -> AlgebraMorphism:
    """The morphism from the level algebra associated with phi: A -> B ⊗ C.

    `phi` must land in a TensorPresentation whose first factor is B.  The
    coordinate z[a,v] is forced to the coefficient of v in phi(a); uniqueness
    holds by construction, and the factorization through the universal map is
    verified before returning.
    """
    target = phi.target
    if not isinstance(target, TensorPresentation):
        raise RingMismatchError("phi must land in a tensor presentation")
    if phi.source != m.a or target.factor_a != m.b:
        raise RingMismatchError("phi does not match this map space")
    c_alg = target.factor_b
    images: list[Polynomial | None] = [None] * m.n_z
    for gi in range(m.a.arity):
        split = target.split_by_a(phi.images[gi])
        delta = set(m.trunc.deltas[gi])
        for v, coeff in split.items():
            if v not in delta:
                raise TruncationError(
                    f"image of {m.a.vars[gi]} uses monomial {v} outside its delta")
            images[m.z_index[(gi, v)]] = coeff
    done = [im if im is not None else Polynomial.zero(c_alg.arity, m.field)
            for im in images]
    psi = AlgebraMorphism(m.algebra, c_alg, done, check=True)
    _verify_factorization(m, phi, psi, target)
    return psi


def _verify_factorization(m: MapSpacePresentation, phi: AlgebraMorphism,
                          psi: AlgebraMorphism, target: TensorPresentation
                          ) -> None:
    """Check phi = (id_B ⊗ psi) ∘ upsilon on every generator of A."""
    for gi in range(m.a.arity):
        expected = target.split_by_a(phi.images[gi])
        expected = {v: c_alg_nf for v, c_alg_nf in
                    ((v, target.factor_b.nf(c)) for v, c in expected.items())
                    if not c_alg_nf.is_zero}
        got: dict[Monomial, Polynomial] = {}
        for v, coeff in m.upsilon_poly(
                Polynomial.variable(gi, m.a.arity, m.field)).items():
            img = psi.apply_poly(coeff)
            if not img.is_zero:
                got[v] = img
        if expected != got:
            raise PropertyViolationError(
                f"universal factorization failed on generator {m.a.vars[gi]}",
                witness=(expected, got))


def point_from_morphism(m: MapSpacePresentation, phi: AlgebraMorphism
                        ) -> AlgebraMorphism:
    """The point of the level algebra associated with a morphism A -> B."""
    if phi.source != m.a or phi.target != m.b:
        raise RingMismatchError("morphism does not match this map space")
    for gi in range(m.a.arity):
        delta = set(m.trunc.deltas[gi])
        for mono in phi.images[gi].terms:
            if mono not in delta:
                raise TruncationError(
                    f"image of {m.a.vars[gi]} uses monomial {mono} outside "
                    "its delta")
    fld = field_algebra(m.field)
    images = []
    for gi, v in m.zvars:
        coeff = phi.images[gi].terms.get(v, m.field.zero())
        images.append(Polynomial.constant(coeff, 0, m.field))
    return AlgebraMorphism(m.algebra, fld, images, check=True)


def morphism_from_point(m: MapSpacePresentation, point: AlgebraMorphism
                        ) -> AlgebraMorphism:
    """The morphism A -> B recovered from a point of the level algebra."""
    if point.source != m.algebra:
        raise RingMismatchError("point of a different level algebra")
    images = []
    for gi in range(m.a.arity):
        img = Polynomial.zero(m.b.arity, m.field)
        for v in m.trunc.deltas[gi]:
            c = point.images[m.z_index[(gi, v)]].constant_term()
            if c != m.field.zero():
                img = img + Polynomial.monomial(v, m.field, c)
        images.append(img)
    return AlgebraMorphism(m.a, m.b, images, check=True)


def points_crosscheck(a: AlgebraPresentation, b: AlgebraPresentation,
                      degree: int) -> dict:
    """Bijection between Hom(A,B) bounded at `degree` and points of the level.

    Every enumerated morphism must map to a distinct point and back to itself;
    a count mismatch raises PropertyViolationError.
    """
    m = mapspace_presentation(a, b, degree)
    homs = enumerate_hom(a, b, degree)
    points = enumerate_points(m.algebra)
    matching = []
    seen = set()
    for phi in homs:
        pt = point_from_morphism(m, phi)
        back = morphism_from_point(m, pt)
        if back != phi:
            raise PropertyViolationError("point does not recover its morphism",
                                         witness=phi)
        key = tuple(im.constant_term() for im in pt.images)
        seen.add(key)
        matching.append({"morphism": [im.to_string(b.vars) for im in phi.images],
                         "point": [str(c) for c in key]})
    point_keys = {tuple(im.constant_term() for im in pt.images) for pt in points}
    if seen != point_keys or len(homs) != len(points):
        raise PropertyViolationError(
            f"hom/point mismatch: {len(homs)} morphisms vs {len(points)} points",
            witness=(sorted(seen), sorted(point_keys)))
    return {"hom_count": len(homs), "point_count": len(points),
            "degree": degree, "matching": matching}


def functor_action(f: AlgebraMorphism, g: AlgebraMorphism,
                   m_source: MapSpacePresentation,
                   m_target: MapSpacePresentation) -> AlgebraMorphism:
    """Level component of the bifunctor: M(A,B) -> M(A',B') for f: A -> A',
    g: B' -> B (covariant in the source, contravariant in the target)."""
    if f.source != m_source.a or f.target != m_target.a:
        raise RingMismatchError("f does not connect the source algebras")
    if g.source != m_target.b or g.target != m_source.b:
        raise RingMismatchError("g must map the new target algebra into the old")
    field = m_source.field
    images: list[Polynomial | None] = [None] * m_source.n_z
    for gi in range(m_source.a.arity):
        up = m_target.upsilon_poly(f.images[gi])
        acc: dict[Monomial, Polynomial] = {}
        for w, coeff in up.items():
            g_w = g.apply_poly(Polynomial.monomial(w, field))
            for v, c in g_w.terms.items():
                bucket = acc.get(v)
                add = coeff.scale(c)
                acc[v] = add if bucket is None else bucket + add
        delta = set(m_source.trunc.deltas[gi])
        for v, coeff in acc.items():
            coeff = m_target.algebra.nf(coeff)
            if coeff.is_zero:
                continue
            if v not in delta:
                raise TruncationError(
                    f"functor image of {m_source.a.vars[gi]} needs monomial {v} "
                    "outside the source truncation")
            images[m_source.z_index[(gi, v)]] = coeff
    done = [im if im is not None
            else Polynomial.zero(m_target.n_z, field) for im in images]
    return AlgebraMorphism(m_source.algebra, m_target.algebra, done, check=True)


def comultiplication(m_ac: MapSpacePresentation, m_bc: MapSpacePresentation,
                     m_ab: MapSpacePresentation
                     ) -> tuple[AlgebraMorphism, TensorPresentation]:
    """The composition comultiplication M(A,C) -> M(B,C) ⊗ M(A,B).

    Defined as the morphism associated with (upsilon_BC ⊗ id) ∘ upsilon_AB,
    which sends a through B's universal family and then through C's.
    """
    a, b, c = m_ac.a, m_ab.b, m_ac.b
    if m_ab.a != a or m_bc.a != b or m_bc.b != c:
        raise RingMismatchError("comultiplication inputs do not chain")
    field = m_ac.field
    t = tensor_product(m_bc.algebra, m_ab.algebra)
    images: list[Polynomial | None] = [None] * m_ac.n_z
    for gi in range(a.arity):
        up_ab = m_ab.upsilon_poly(Polynomial.variable(gi, a.arity, field))
        acc: dict[Monomial, Polynomial] = {}
        for v, c_ab in up_ab.items():
            up_bc = m_bc.upsilon_poly(Polynomial.monomial(v, field))
            rhs = t.embed_b(c_ab)
            for w, c_bc in up_bc.items():
                piece = t.embed_a(c_bc) * rhs
                bucket = acc.get(w)
                acc[w] = piece if bucket is None else bucket + piece
        delta = set(m_ac.trunc.deltas[gi])
        for w, coeff in acc.items():
            coeff = t.nf(coeff)
            if coeff.is_zero:
                continue
            if w not in delta:
                raise TruncationError(
                    f"comultiplication needs monomial {w} outside the truncation "
                    f"for generator {a.vars[gi]}")
            images[m_ac.z_index[(gi, w)]] = coeff
    done = [im if im is not None else Polynomial.zero(t.arity, field)
            for im in images]
    phi = AlgebraMorphism(m_ac.algebra, t, done, check=True)
    return phi, t


def coassociativity_check(a: AlgebraPresentation, b: AlgebraPresentation,
                          c: AlgebraPresentation, d: AlgebraPresentation,
                          degree: int) -> dict:
    """Verify (id ⊗ Phi_ABC) Phi_ACD = (Phi_BCD ⊗ id) Phi_ABD on generators.

    Both sides are computed as explicit polynomials in the flattened triple
    tensor product M(C,D) ⊗ M(B,C) ⊗ M(A,B) and compared as normal forms.
    """
    m_ab = mapspace_presentation(a, b, degree)
    m_bc = mapspace_presentation(b, c, degree)
    m_cd = mapspace_presentation(c, d, degree)
    m_ac = mapspace_presentation(a, c, degree)
    m_ad = mapspace_presentation(a, d, degree)
    m_bd = mapspace_presentation(b, d, degree)

    phi_acd, t_acd = comultiplication(m_ad, m_cd, m_ac)      # M(A,D)->M(C,D)⊗M(A,C)
    phi_abc, t_abc = comultiplication(m_ac, m_bc, m_ab)      # M(A,C)->M(B,C)⊗M(A,B)
    phi_abd, t_abd = comultiplication(m_ad, m_bd, m_ab)      # M(A,D)->M(B,D)⊗M(A,B)
    phi_bcd, t_bcd = comultiplication(m_bd, m_cd, m_bc)      # M(B,D)->M(C,D)⊗M(B,C)

    triple = tensor_product(tensor_product(m_cd.algebra, m_bc.algebra),
                            m_ab.algebra)
    inner = triple.factor_a  # M(C,D) ⊗ M(B,C)

    # left route: Phi_ACD then (id_MCD ⊗ Phi_ABC)
    lift_left = AlgebraMorphism(
        t_acd, triple,
        [triple.embed_a(inner.embed_a(
            Polynomial.variable(i, m_cd.algebra.arity, m_cd.field)))
         for i in range(m_cd.algebra.arity)]
        + [_expand_tensor(phi_abc.images[i], t_abc, triple)
           for i in range(m_ac.algebra.arity)], check=True)
    left = lift_left.compose(phi_acd)

    # right route: Phi_ABD then (Phi_BCD ⊗ id_MAB)
    lift_right = AlgebraMorphism(
        t_abd, triple,
        [_expand_bcd(phi_bcd.images[i], t_bcd, triple)
         for i in range(m_bd.algebra.arity)]
        + [triple.embed_b(Polynomial.variable(i, m_ab.algebra.arity, m_ab.field))
           for i in range(m_ab.algebra.arity)], check=True)
    right = lift_right.compose(phi_abd)

    agree = left.images == right.images
    if not agree:
        raise PropertyViolationError("coassociativity failed",
                                     witness=(left.images, right.images))
    return {"ok": True, "generators": len(left.images), "degree": degree}


def _expand_tensor(p: Polynomial, t_src: TensorPresentation,
                   triple: TensorPresentation) -> Polynomial:
    """Embed M(B,C) ⊗ M(A,B) into (M(C,D) ⊗ M(B,C)) ⊗ M(A,B)."""
    inner = triple.factor_a
    n_bc = t_src.factor_a.arity
    images = [triple.embed_a(inner.embed_b(
        Polynomial.variable(i, t_src.factor_a.arity, t_src.field)))
        for i in range(n_bc)]
    images += [triple.embed_b(Polynomial.variable(i, t_src.factor_b.arity,
                                                  t_src.field))
               for i in range(t_src.factor_b.arity)]
    return p.substitute(images)


def _expand_bcd(p: Polynomial, t_src: TensorPresentation,
                triple: TensorPresentation) -> Polynomial:
    """Embed M(C,D) ⊗ M(B,C) into the triple product (as the inner factor)."""
    inner = triple.factor_a
    images = [triple.embed_a(inner.embed_a(
        Polynomial.variable(i, t_src.factor_a.arity, t_src.field)))
        for i in range(t_src.factor_a.arity)]
    images += [triple.embed_a(inner.embed_b(
        Polynomial.variable(i, t_src.factor_b.arity, t_src.field)))
        for i in range(t_src.factor_b.arity)]
    return p.substitute(images)


# ---------------------------------------------------------------------------
# natural isomorphism laws


def _renaming_correspondence(left: AlgebraPresentation,
                             right: AlgebraPresentation,
                             left_to_right: list[int]) -> dict:
    """Check a variable bijection is an isomorphism of presentations.

    Verifies both induced substitutions map relations into the other ideal
    (ideal membership) and that the two maps are mutually inverse on
    generators (immediate for a bijection, asserted anyway).
    """
    field = left.field
    fwd_images = [Polynomial.variable(left_to_right[i], right.arity, field)
                  for i in range(left.arity)]
    right_to_left = [0] * right.arity
    for i, j in enumerate(left_to_right):
        right_to_left[j] = i
    bwd_images = [Polynomial.variable(right_to_left[j], left.arity, field)
                  for j in range(right.arity)]
    failures = []
    for r in left.relations:
        if not right.contains_ideal(r.substitute(fwd_images)):
            failures.append(("forward", r.to_string(left.vars)))
    for r in right.relations:
        if not left.contains_ideal(r.substitute(bwd_images)):
            failures.append(("backward", r.to_string(right.vars)))
    if failures:
        raise PropertyViolationError("natural isomorphism witness failed",
                                     witness=failures)
    for i in range(left.arity):
        roundtrip = fwd_images[i].substitute(bwd_images)
        assert roundtrip == Polynomial.variable(i, left.arity, field)
    return {"ok": True, "generators": left.arity,
            "relations_checked": len(left.relations) + len(right.relations)}


def verify_exponential_law(a: AlgebraPresentation, b: AlgebraPresentation,
                           b2: AlgebraPresentation, d: int, d2: int) -> dict:
    """Witness M(A, B ⊗ B') ≅ M(M(A,B), B') at matched truncation levels.

    Left side: truncation by product monomials v·v' of B ⊗ B'; right side:
    the uniform level d' built over the level-d algebra of (A, B).  The
    correspondence z[a, v⊗v'] <-> z[z[a,v], v'] is checked both ways.
    """
    t = tensor_product(b, b2)
    vs = b.standard_monomials(d)
    v2s = b2.standard_monomials(d2)
    prod_monos = [tuple(v) + tuple(w) for v in vs for w in v2s]
    left = mapspace_presentation(a, t, Truncation.explicit(a, prod_monos))
    m1 = mapspace_presentation(a, b, d)
    right = mapspace_presentation(m1.algebra, b2, d2)
    # left z (gi, v ++ w)  ->  right z (index of z[a_gi, v], w)
    mapping = []
    for gi, mono in left.zvars:
        v, w = mono[:b.arity], mono[b.arity:]
        inner = m1.z_index[(gi, v)]
        mapping.append(right.z_index[(inner, w)])
    report = _renaming_correspondence(left.algebra, right.algebra, mapping)
    report.update({"law": "exponential", "left_coords": left.n_z,
                   "right_coords": right.n_z})
    return report


def verify_tensor_law(a: AlgebraPresentation, a2: AlgebraPresentation,
                      b: AlgebraPresentation, d: int) -> dict:
    """Witness M(A ⊗ A', B) ≅ M(A,B) ⊗ M(A',B) at a uniform level."""
    ta = tensor_product(a, a2)
    left = mapspace_presentation(ta, b, d)
    m1 = mapspace_presentation(a, b, d)
    m2 = mapspace_presentation(a2, b, d)
    right = tensor_product(m1.algebra, m2.algebra)
    mapping = []
    for gi, v in left.zvars:
        if gi < a.arity:
            mapping.append(m1.z_index[(gi, v)])
        else:
            mapping.append(m1.n_z + m2.z_index[(gi - a.arity, v)])
    report = _renaming_correspondence(left.algebra, right, mapping)
    report.update({"law": "tensor", "left_coords": left.n_z,
                   "right_coords": right.arity})
    return report


def verify_directsum_law(a: AlgebraPresentation, b: AlgebraPresentation,
                         b2: AlgebraPresentation) -> dict:
    """Witness M(A, B ⊕ B') ≅ M(A,B) ⊗ M(A,B') for finite-dimensional B, B'.

    Both directions are built from the universal property (associated
    morphisms through the two projections, and through the split embedding
    v ↦ v·e, v' ↦ v'·(1-e)) and checked to be mutually inverse on generators.
    """
    dim_b, dim_b2 = b.dimension(), b2.dimension()
    if dim_b is None or dim_b2 is None:
        raise TruncationError("direct-sum law witness needs finite-dimensional "
                              "summands")
    deg_b = max((sum(m) for m in b.standard_monomials(64)), default=0)
    deg_b2 = max((sum(m) for m in b2.standard_monomials(64)), default=0)
    ds, p1, p2 = direct_sum(b, b2)
    deg_ds = max((sum(m) for m in ds.standard_monomials(64)), default=0)
    m_ds = mapspace_presentation(a, ds, deg_ds)
    m1 = mapspace_presentation(a, b, deg_b)
    m2 = mapspace_presentation(a, b2, deg_b2)
    right = tensor_product(m1.algebra, m2.algebra)
    field = a.field

    # forward: associated morphism of psi : A -> DS ⊗ (M1 ⊗ M2),
    # psi(a) = sum_v (v·e) ⊗ z1[a,v] + sum_v' (v'·(1-e)) ⊗ z2[a,v']
    t_fwd = tensor_product(ds, right)
    e_poly = Polynomial.variable(ds.arity - 1, ds.arity, field)
    one = Polynomial.one(ds.arity, field)
    psi_images = []
    for gi in range(a.arity):
        acc = Polynomial.zero(t_fwd.arity, field)
        for v in m1.trunc.deltas[gi]:
            v_in_ds = ds.nf(Polynomial.monomial(v, field).extend_arity(
                ds.arity, list(range(b.arity))) * e_poly)
            zk = right.embed_a(Polynomial.variable(m1.z_index[(gi, v)],
                                                   m1.n_z, field))
            acc = acc + t_fwd.embed_a(v_in_ds) * t_fwd.embed_b(zk)
        for w in m2.trunc.deltas[gi]:
            w_in_ds = ds.nf(Polynomial.monomial(w, field).extend_arity(
                ds.arity, list(range(b.arity, b.arity + b2.arity)))
                * (one - e_poly))
            zk = right.embed_b(Polynomial.variable(m2.z_index[(gi, w)],
                                                   m2.n_z, field))
            acc = acc + t_fwd.embed_a(w_in_ds) * t_fwd.embed_b(zk)
        psi_images.append(t_fwd.nf(acc))
    psi = AlgebraMorphism(a, t_fwd, psi_images, check=True)
    forward = associated_morphism(m_ds, psi)      # M(A, DS) -> M1 ⊗ M2

    # backward: pair the associated morphisms of (p_i ⊗ id) ∘ upsilon_DS
    back1 = _projection_component(m_ds, m1, p1)
    back2 = _projection_component(m_ds, m2, p2)
    bwd_images = ([back1.images[i] for i in range(m1.n_z)]
                  + [back2.images[i] for i in range(m2.n_z)])
    backward = AlgebraMorphism(right, m_ds.algebra, bwd_images, check=True)

    ok_fb = all(
        backward.apply_poly(forward.images[k])
        == m_ds.algebra.nf(Polynomial.variable(k, m_ds.n_z, field))
        for k in range(m_ds.n_z))
    ok_bf = all(
        forward.apply_poly(backward.images[k])
        == right.nf(Polynomial.variable(k, right.arity, field))
        for k in range(right.arity))
    if not (ok_fb and ok_bf):
        raise PropertyViolationError("direct-sum law maps are not mutually "
                                     "inverse", witness=(ok_fb, ok_bf))
    return {"ok": True, "law": "directsum",
            "left_coords": m_ds.n_z, "right_coords": right.arity,
            "dim_b": dim_b, "dim_b2": dim_b2}


def _projection_component(m_ds: MapSpacePresentation,
                          m_i: MapSpacePresentation,
                          proj: AlgebraMorphism) -> AlgebraMorphism:
    """Associated morphism M_i -> M(A, B ⊕ B') of (proj ⊗ id) ∘ upsilon."""
    field = m_ds.field
    images: list[Polynomial | None] = [None] * m_i.n_z
    for gi in range(m_ds.a.arity):
        up = m_ds.upsilon_poly(Polynomial.variable(gi, m_ds.a.arity, field))
        acc: dict[Monomial, Polynomial] = {}
        for w, coeff in up.items():
            pw = proj.apply_poly(Polynomial.monomial(w, field))
            for v, c in pw.terms.items():
                bucket = acc.get(v)
                add = coeff.scale(c)
                acc[v] = add if bucket is None else bucket + add
        delta = set(m_i.trunc.deltas[gi])
        for v, coeff in acc.items():
            coeff = m_ds.algebra.nf(coeff)
            if coeff.is_zero:
                continue
            if v not in delta:
                raise TruncationError("projection image outside truncation")
            images[m_i.z_index[(gi, v)]] = coeff
    done = [im if im is not None else Polynomial.zero(m_ds.n_z, field)
            for im in images]
    return AlgebraMorphism(m_i.algebra, m_ds.algebra, done, check=True)


def verify_natural_isomorphism(law: str, **kwargs) -> dict:
    """Dispatch for the exponential / tensor / direct-sum law witnesses."""
    if law == "exponential":
        return verify_exponential_law(**kwargs)
    if law == "tensor":
        return verify_tensor_law(**kwargs)
    if law == "directsum":
        return verify_directsum_law(**kwargs)
    raise ValueError(f"unknown law {law!r}")
