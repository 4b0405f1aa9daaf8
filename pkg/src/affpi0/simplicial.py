"""The standard simplicial algebra, cosimplicial map spaces, and Moore data.

Level n of the standard simplicial algebra is presented as a free polynomial
ring on x1..xn with the substitution x0 = 1 - sum recorded.  Monotone maps
act through the preimage-sum formula; applying the map-space functor levelwise
gives a cosimplicial system of truncated presentations whose slices carry the
Moore complex, degree-0 (and truncated degree-1) cohomology, the cup product,
and the prism maps.  Pro-limits are never taken: every report names its tower
level and degree slice.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .algebra import (AlgebraMorphism, AlgebraPresentation, ElementRep,
                      TensorPresentation, tensor_product)
from .errors import PropertyViolationError
from .mapspace import (MapSpacePresentation, functor_action,
                       mapspace_presentation)
from .polyring import FieldDescriptor, Monomial, Polynomial


# ---------------------------------------------------------------------------
# the standard simplicial algebra


@dataclass(frozen=True)
class DeltaLevel:
    """F[Delta_n] presented freely on x1..xn after eliminating x0."""

    n: int
    presentation: AlgebraPresentation

    def x0(self) -> Polynomial:
        """The recorded substitution 1 - sum of the presented variables."""
        p = Polynomial.one(self.n, self.presentation.field)
        for i in range(self.n):
            p = p - Polynomial.variable(i, self.n, self.presentation.field)
        return p

    def vertex_class(self, i: int) -> Polynomial:
        """The class [x_i] written through the substitution."""
        if i == 0:
            return self.x0()
        return Polynomial.variable(i - 1, self.n, self.presentation.field)


def delta_algebra(n: int, field: FieldDescriptor) -> DeltaLevel:
    if n < 0:
        raise ValueError("simplex level must be non-negative")
    names = [f"x{i}" for i in range(1, n + 1)]
    return DeltaLevel(n, AlgebraPresentation(field, names, ()))


def simplicial_map(alpha: Sequence[int], target_level: int,
                   field: FieldDescriptor) -> AlgebraMorphism:
    """The structure map F[Delta_b] -> F[Delta_a] of a monotone map.

    `alpha` lists the values of a monotone function {0..a} -> {0..b} with
    b = target_level; the class [x_i] maps to the sum of [x_j] over the
    preimage of i, rewritten through the x0 substitutions on both sides.
    """
    a = len(alpha) - 1
    b = target_level
    if a < 0 or any(v < 0 or v > b for v in alpha):
        raise ValueError("alpha must take values in the target range")
    if any(alpha[i] > alpha[i + 1] for i in range(a)):
        raise ValueError("alpha must be monotone")
    src = delta_algebra(b, field)
    dst = delta_algebra(a, field)
    images = []
    for i in range(1, b + 1):
        img = Polynomial.zero(dst.n, field)
        for j, v in enumerate(alpha):
            if v == i:
                img = img + dst.vertex_class(j)
        images.append(img)
    return AlgebraMorphism(src.presentation, dst.presentation, images,
                           check=False)


def face_map(i: int, n: int, field: FieldDescriptor) -> AlgebraMorphism:
    """d_i: F[Delta_n] -> F[Delta_{n-1}] induced by the injection skipping i."""
    if not 0 <= i <= n or n < 1:
        raise ValueError("face index out of range")
    alpha = [j for j in range(n + 1) if j != i]
    return simplicial_map(alpha, n, field)


def degeneracy_map(i: int, n: int, field: FieldDescriptor) -> AlgebraMorphism:
    """s_i: F[Delta_n] -> F[Delta_{n+1}] induced by the surjection doubling i."""
    if not 0 <= i <= n:
        raise ValueError("degeneracy index out of range")
    alpha = [min(j, i) if j <= i + 1 else j - 1 for j in range(n + 2)]
    return simplicial_map(alpha, n, field)


def check_simplicial_functoriality(field: FieldDescriptor, max_level: int = 3
                                   ) -> dict:
    """(beta after alpha)* = alpha* after beta* on a grid of monotone maps."""
    import itertools

    failures = []
    for b in range(max_level + 1):
        for mid in range(max_level + 1):
            for a in range(max_level + 1):
                alphas = [al for al in
                          itertools.combinations_with_replacement(
                              range(mid + 1), a + 1)]
                betas = [be for be in
                         itertools.combinations_with_replacement(
                             range(b + 1), mid + 1)]
                for al in alphas[:6]:
                    for be in betas[:6]:
                        comp = tuple(be[j] for j in al)
                        lhs = simplicial_map(comp, b, field)
                        rhs = simplicial_map(al, mid, field).compose(
                            simplicial_map(be, b, field))
                        if lhs != rhs:
                            failures.append((al, be))
    return {"ok": not failures, "failures": failures}


# ---------------------------------------------------------------------------
# cosimplicial truncated map spaces


@dataclass
class LevelSlice:
    mspace: MapSpacePresentation
    basis: list[Monomial]

    @property
    def dimension(self) -> int:
        return len(self.basis)


class CosimplicialSpace:
    """Levels 0..N of the map space into the simplicial algebra, sliced.

    Coface maps go up a level, codegeneracies down, both induced through the
    functorial action; their matrices act on the degree-bounded slices of
    standard monomials.
    """

    def __init__(self, a: AlgebraPresentation, tower: int, degree: int,
                 levels: int):
        self.a = a
        self.field = a.field
        self.tower = tower
        self.degree = degree
        self.n_levels = levels
        self.deltas = [delta_algebra(n, a.field) for n in range(levels + 1)]
        self.levels: list[LevelSlice] = []
        for n in range(levels + 1):
            m = mapspace_presentation(a, self.deltas[n].presentation, tower)
            self.levels.append(LevelSlice(m, m.algebra.standard_monomials(degree)))
        ident = AlgebraMorphism.identity(a)
        # cofaces[n][i]: level n-1 -> level n, i = 0..n
        self.cofaces: list[list[AlgebraMorphism]] = [[]]
        for n in range(1, levels + 1):
            row = []
            for i in range(n + 1):
                g = face_map(i, n, a.field)
                row.append(functor_action(ident, g,
                                          self.levels[n - 1].mspace,
                                          self.levels[n].mspace))
            self.cofaces.append(row)
        # codegens[n][i]: level n+1 -> level n, i = 0..n
        self.codegens: list[list[AlgebraMorphism]] = []
        for n in range(levels):
            row = []
            for i in range(n + 1):
                g = degeneracy_map(i, n, a.field)
                row.append(functor_action(ident, g,
                                          self.levels[n + 1].mspace,
                                          self.levels[n].mspace))
            self.codegens.append(row)

    # -- matrices on slices ----------------------------------------------------

    def matrix_of(self, morphism: AlgebraMorphism, src_level: int,
                  dst_level: int) -> list[list]:
        src = self.levels[src_level]
        dst = self.levels[dst_level]
        index = {m: k for k, m in enumerate(dst.basis)}
        zero = self.field.zero()
        cols = []
        for mono in src.basis:
            img = morphism.apply_poly(Polynomial.monomial(mono, self.field))
            col = [zero] * len(dst.basis)
            for mm, c in img.terms.items():
                if mm not in index:
                    raise PropertyViolationError(
                        "image leaves the degree slice; raise the degree bound",
                        witness=mm)
                col[index[mm]] = c
            cols.append(col)
        return [[cols[j][i] for j in range(len(cols))]
                for i in range(len(dst.basis))]

    def coface_matrix(self, n: int, i: int) -> list[list]:
        return self.matrix_of(self.cofaces[n][i], n - 1, n)

    def codegen_matrix(self, n: int, i: int) -> list[list]:
        return self.matrix_of(self.codegens[n][i], n + 1, n)

    def differential_matrix(self, n: int) -> list[list]:
        """Alternating coface sum X^n -> X^{n+1} on the slices."""
        rows = len(self.levels[n + 1].basis)
        cols = len(self.levels[n].basis)
        field = self.field
        total = [[field.zero()] * cols for _ in range(rows)]
        for i in range(n + 2):
            mat = self.coface_matrix(n + 1, i)
            sign = field.one() if i % 2 == 0 else field.neg(field.one())
            for r in range(rows):
                for c in range(cols):
                    total[r][c] = field.add(total[r][c],
                                            field.mul(sign, mat[r][c]))
        return total


def check_cosimplicial_identities(space: CosimplicialSpace) -> dict:
    """All five identity families, as exact morphism equalities."""
    failures = []
    n_max = space.n_levels
    cofaces, codegens = space.cofaces, space.codegens
    # d^j d^i = d^i d^{j-1} for i < j (composites level n-1 -> n+1)
    for n in range(1, n_max):
        for j in range(n + 2):
            for i in range(j):
                lhs = cofaces[n + 1][j].compose(cofaces[n][i])
                rhs = cofaces[n + 1][i].compose(cofaces[n][j - 1])
                if lhs != rhs:
                    failures.append(("dd", n, i, j))
    # codegeneracy vs coface families (composites level n -> n)
    for n in range(1, n_max + 1):
        for j in range(n):
            for i in range(n + 1):
                lhs = codegens[n - 1][j].compose(cofaces[n][i])
                if i < j:
                    rhs = cofaces[n - 1][i].compose(codegens[n - 2][j - 1]) \
                        if n >= 2 else None
                elif i in (j, j + 1):
                    rhs = AlgebraMorphism.identity(
                        space.levels[n - 1].mspace.algebra)
                else:
                    rhs = cofaces[n - 1][i - 1].compose(codegens[n - 2][j]) \
                        if n >= 2 else None
                if rhs is not None and lhs != rhs:
                    failures.append(("sd", n, i, j))
    # s^j s^i = s^i s^{j+1} for i <= j (composites level n+2 -> n)
    for n in range(n_max - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                lhs = codegens[n][j].compose(codegens[n + 1][i])
                rhs = codegens[n][i].compose(codegens[n + 1][j + 1])
                if lhs != rhs:
                    failures.append(("ss", n, i, j))
    return {"ok": not failures, "failures": failures}


# ---------------------------------------------------------------------------
# Moore complex


@dataclass
class MooreComplex:
    space: CosimplicialSpace
    normalized_bases: list[list[list]]   # per level: coordinate vectors
    differentials: list[list[list]]      # full-slice differential matrices
    dd_zero: bool
    h0_dimension: int
    h1_dimension: int | None

    def level_dimensions(self) -> list[int]:
        return [len(b) for b in self.normalized_bases]


def moore_complex(a: AlgebraPresentation, tower: int, degree: int,
                  levels: int) -> MooreComplex:
    """Build the normalized complex on slices and check d∘d = 0 exactly."""
    space = CosimplicialSpace(a, tower, degree, levels)
    field = a.field
    diffs = [space.differential_matrix(n) for n in range(levels)]
    dd_zero = True
    for n in range(levels - 1):
        prod = linalg.mat_mul(diffs[n + 1], diffs[n], field)
        if any(v != field.zero() for row in prod for v in row):
            dd_zero = False
    normalized = []
    for n in range(levels + 1):
        dim = space.levels[n].dimension
        if n == 0:
            normalized.append(linalg.identity_matrix(dim, field))
            continue
        stacked = []
        for i in range(n):
            stacked.extend(space.codegen_matrix(n - 1, i))
        normalized.append(linalg.nullspace(stacked, dim, field))
    h0 = len(linalg.nullspace(diffs[0], space.levels[0].dimension, field)) \
        if levels >= 1 else space.levels[0].dimension
    h1 = None
    if levels >= 2:
        # ker(delta^1) ∩ N^1 modulo the image of delta^0
        stacked = [row for i in range(1)
                   for row in space.codegen_matrix(0, i)]
        stacked.extend(diffs[1])
        kernel = linalg.nullspace(stacked, space.levels[1].dimension, field)
        image_rank = linalg.rank(
            [[diffs[0][i][j] for i in range(len(diffs[0]))]
             for j in range(space.levels[0].dimension)], field)
        h1 = len(kernel) - image_rank
    return MooreComplex(space, normalized, diffs, dd_zero, h0, h1)


# ---------------------------------------------------------------------------
# degree-0 and truncated degree-1 cohomology


@dataclass
class SingLevel:
    tower: int
    basis: list[ElementRep]

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass
class SingH0Result:
    algebra: AlgebraPresentation
    degree: int
    levels: list[SingLevel]
    note: str = "tower level 0 is degenerate and excluded"


def sing_h0(a: AlgebraPresentation, tower: int, degree: int) -> SingH0Result:
    """Equalizer of the two cofaces A -> level-1 slice, per tower level 1..T."""
    out = []
    for d in range(1, tower + 1):
        space = CosimplicialSpace(a, d, degree, 1)
        field = a.field
        d0 = space.coface_matrix(1, 0)
        d1 = space.coface_matrix(1, 1)
        diff = [[field.sub(x, y) for x, y in zip(r0, r1)]
                for r0, r1 in zip(d0, d1)]
        kernel = linalg.nullspace(diff, space.levels[0].dimension, field)
        reduced, pivots = linalg.rref(kernel, field) if kernel else ([], [])
        basis = []
        level0 = space.levels[0]
        for row in reduced[:len(pivots)]:
            poly = Polynomial.zero(a.arity, field)
            for c, mono in zip(row, level0.basis):
                if c != field.zero():
                    # level-0 coordinates mirror the generators of A
                    poly = poly + Polynomial.monomial(mono, field, c)
            basis.append(a.element(poly))
        out.append(SingLevel(d, basis))
    return SingH0Result(a, degree, out)


def sing_h1_truncated(a: AlgebraPresentation, tower: int, degree: int) -> dict:
    """Truncated Moore level-1 cohomology, tabulated per tower level.

    This is a truncation report: no pro-limit claim is made or implied, and
    the stabilization flag is descriptive only.
    """
    table = []
    for d in range(1, tower + 1):
        complex_ = moore_complex(a, d, degree, 2)
        table.append({"tower": d, "degree": degree,
                      "h1_dimension": complex_.h1_dimension,
                      "dd_zero": complex_.dd_zero})
    stabilized = (len(table) >= 2
                  and table[-1]["h1_dimension"] == table[-2]["h1_dimension"])
    return {"table": table, "degree": degree,
            "h1_dimension": table[-1]["h1_dimension"],
            "stabilized": stabilized,
            "label": "truncation report — no pro-limit claim"}


# ---------------------------------------------------------------------------
# cup product


def front_face(n: int, m: int, field: FieldDescriptor) -> AlgebraMorphism:
    """F[Delta_{n+m}] -> F[Delta_n]: keep the first n+1 vertex classes."""
    src = delta_algebra(n + m, field)
    dst = delta_algebra(n, field)
    images = []
    for k in range(1, n + m + 1):
        images.append(dst.vertex_class(k) if k <= n
                      else Polynomial.zero(dst.n, field))
    return AlgebraMorphism(src.presentation, dst.presentation, images,
                           check=False)


def back_face(n: int, m: int, field: FieldDescriptor) -> AlgebraMorphism:
    """F[Delta_{n+m}] -> F[Delta_m]: shift the last m+1 vertex classes down."""
    src = delta_algebra(n + m, field)
    dst = delta_algebra(m, field)
    images = []
    for k in range(1, n + m + 1):
        if k < n:
            images.append(Polynomial.zero(dst.n, field))
        else:
            images.append(dst.vertex_class(k - n))
    return AlgebraMorphism(src.presentation, dst.presentation, images,
                           check=False)


def cup_product(space: CosimplicialSpace, cn: tuple[int, Polynomial],
                cm: tuple[int, Polynomial]) -> tuple[int, Polynomial]:
    """Front/back pullbacks multiplied in the level-(n+m) algebra."""
    n, pn = cn
    m, pm = cm
    if n + m > space.n_levels:
        raise PropertyViolationError("cup product needs level n+m in the space")
    ident = AlgebraMorphism.identity(space.a)
    pull_n = functor_action(ident, front_face(n, m, space.field),
                            space.levels[n].mspace,
                            space.levels[n + m].mspace)
    pull_m = functor_action(ident, back_face(n, m, space.field),
                            space.levels[m].mspace,
                            space.levels[n + m].mspace)
    prod = space.levels[n + m].mspace.algebra.nf(
        pull_n.apply_poly(pn) * pull_m.apply_poly(pm))
    return (n + m, prod)


def alternating_sum(space: CosimplicialSpace, level: int,
                    poly: Polynomial) -> Polynomial:
    """The Moore differential applied to one cochain, at the polynomial level."""
    field = space.field
    target = space.levels[level + 1].mspace.algebra
    acc = Polynomial.zero(target.arity, field)
    for i in range(level + 2):
        img = space.cofaces[level + 1][i].apply_poly(poly)
        acc = acc + (img if i % 2 == 0 else -img)
    return target.nf(acc)


def cup_leibniz_check(space: CosimplicialSpace, cn: tuple[int, Polynomial],
                      cm: tuple[int, Polynomial]) -> bool:
    """d(c ⌣ c') = dc ⌣ c' + (-1)^n c ⌣ dc' on the given cochains."""
    n, pn = cn
    m, pm = cm
    level, prod = cup_product(space, cn, cm)
    lhs = alternating_sum(space, level, prod)
    left = cup_product(space, (n + 1, alternating_sum(space, n, pn)), cm)[1]
    right = cup_product(space, cn, (m + 1, alternating_sum(space, m, pm)))[1]
    rhs = left + (right if n % 2 == 0 else -right)
    target = space.levels[level + 1].mspace.algebra
    return target.nf(lhs - rhs).is_zero


# ---------------------------------------------------------------------------
# prism maps


def prism_map(n: int, i: int, field: FieldDescriptor
              ) -> tuple[AlgebraMorphism, TensorPresentation]:
    """The map F[Delta_n] ⊗ F[x] -> F[Delta_{n+1}] splitting the prism.

    Vertex classes: [x_j] -> [x_j] (j < i), [x_i] -> [x_i + x_{i+1}],
    [x_j] -> [x_{j+1}] (j > i), and x -> [x_{i+1} + ... + x_{n+1}].
    Well-definedness (the unit relation 1 - sum is preserved) is checked
    exactly at construction.
    """
    if not 0 <= i <= n:
        raise ValueError("prism index out of range")
    src_delta = delta_algebra(n, field)
    line = AlgebraPresentation(field, ["x"], ())
    src = tensor_product(src_delta.presentation, line)
    dst = delta_algebra(n + 1, field)

    def vertex_image(j: int) -> Polynomial:
        if j < i:
            return dst.vertex_class(j)
        if j == i:
            return dst.vertex_class(i) + dst.vertex_class(i + 1)
        return dst.vertex_class(j + 1)

    images = [vertex_image(j) for j in range(1, n + 1)]
    x_image = Polynomial.zero(dst.n, field)
    for k in range(i + 1, n + 2):
        x_image = x_image + dst.vertex_class(k)
    images.append(x_image)
    # exact unit check: the images of all vertex classes sum to 1
    total = vertex_image(0)
    for j in range(1, n + 1):
        total = total + vertex_image(j)
    if total != Polynomial.one(dst.n, field):
        raise PropertyViolationError("prism map does not preserve the unit",
                                     witness=total)
    return AlgebraMorphism(src, dst.presentation, images, check=True), src


def prism_identities_check(n: int, field: FieldDescriptor) -> dict:
    """The simplicial prism relations against faces, for one level n."""
    failures = []
    line = AlgebraPresentation(field, ["x"], ())

    def tensor_face(j: int, level: int) -> AlgebraMorphism:
        """d_j ⊗ id on the presented tensor rings."""
        src = tensor_product(delta_algebra(level, field).presentation, line)
        dst = tensor_product(delta_algebra(level - 1, field).presentation, line)
        base = face_map(j, level, field)
        images = [base.images[k].extend_arity(dst.arity, list(range(level - 1)))
                  for k in range(level)]
        images.append(Polynomial.variable(dst.arity - 1, dst.arity, field))
        return AlgebraMorphism(src, dst, images, check=False)

    def evaluation(value: int, level: int) -> AlgebraMorphism:
        """id ⊗ (x -> value): F[Delta_level] ⊗ F[x] -> F[Delta_level]."""
        src = tensor_product(delta_algebra(level, field).presentation, line)
        dst = delta_algebra(level, field).presentation
        images = [Polynomial.variable(k, dst.arity, field)
                  for k in range(level)]
        images.append(Polynomial.constant(value, dst.arity, field))
        return AlgebraMorphism(src, dst, images, check=False)

    prisms = [prism_map(n, i, field)[0] for i in range(n + 1)]
    # top and bottom of the prism
    top = face_map(0, n + 1, field).compose(prisms[0])
    if top != evaluation(1, n):
        failures.append(("top", 0))
    bottom = face_map(n + 1, n + 1, field).compose(prisms[n])
    if bottom != evaluation(0, n):
        failures.append(("bottom", n))
    # adjacent pieces glue
    for i in range(n):
        left = face_map(i + 1, n + 1, field).compose(prisms[i])
        right = face_map(i + 1, n + 1, field).compose(prisms[i + 1])
        if left != right:
            failures.append(("glue", i))
    # commuting relations with the remaining faces
    if n >= 1:
        lower = [prism_map(n - 1, i, field)[0] for i in range(n)]
        for i in range(n + 1):
            for j in range(n + 2):
                if j < i:
                    lhs = face_map(j, n + 1, field).compose(prisms[i])
                    rhs = lower[i - 1].compose(tensor_face(j, n))
                    if lhs != rhs:
                        failures.append(("below", i, j))
                elif j > i + 1:
                    lhs = face_map(j, n + 1, field).compose(prisms[i])
                    rhs = lower[i].compose(tensor_face(j - 1, n))
                    if lhs != rhs:
                        failures.append(("above", i, j))
    # collapse: restricting the prism to F[Delta_n] ⊗ 1 is the degeneracy
    for i in range(n + 1):
        degeneracy = degeneracy_map(i, n, field)
        for k in range(n):
            gen = Polynomial.variable(k, n, field)
            restricted = prisms[i].images[k]
            if restricted != degeneracy.images[k]:
                failures.append(("collapse", i, k))
    return {"ok": not failures, "level": n, "failures": failures}
