"""Symbolic verification of the 2x2 rotation-matrix homotopy lemmas.

Everything here is an exact identity: matrices carry polynomial entries over
commuting symbols (plus the homotopy variable x), and a small noncommuting
word layer with the cancellation c·c⁻¹ = c⁻¹·c = 1 covers the two checks that
need it.  Reports are pass/fail with the offending residual on fail.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import PropertyViolationError
from .polyring import QQ, Polynomial, poly_parse

# ---------------------------------------------------------------------------
# commutative symbolic matrices


class SymRing:
    """A commutative polynomial ring over named symbols (always over Q)."""

    def __init__(self, names: Sequence[str]):
        self.names = list(names)
        self.arity = len(self.names)

    def parse(self, text: str) -> Polynomial:
        return poly_parse(text, self.names, QQ)

    def var(self, name: str) -> Polynomial:
        return Polynomial.variable(self.names.index(name), self.arity, QQ)

    def const(self, c) -> Polynomial:
        return Polynomial.constant(c, self.arity, QQ)

    def zero(self) -> Polynomial:
        return Polynomial.zero(self.arity, QQ)

    def matrix(self, entries: Sequence[Sequence[str | Polynomial]]
               ) -> list[list[Polynomial]]:
        return [[e if isinstance(e, Polynomial) else self.parse(e)
                 for e in row] for row in entries]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum((a[i][t] * b[t][j] for t in range(k)),
                 start=a[0][0].scale(0)) for j in range(m)] for i in range(n)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_is_zero(a) -> bool:
    return all(e.is_zero for row in a for e in row)


def mat_eval_x(a, ring: SymRing, value: int):
    """Substitute the symbol named x by a constant, keeping the same ring."""
    images = [ring.const(value) if nm == "x" else ring.var(nm)
              for nm in ring.names]
    return [[e.substitute(images) for e in row] for row in a]


def rotation(ring: SymRing):
    """The determinant-1 polynomial matrix of rotation-by-x homotopies."""
    return ring.matrix([["1 - x^2", "x^3 - 2*x"], ["x", "1 - x^2"]])


def rotation_inverse(ring: SymRing):
    # adjugate; the determinant is 1
    return ring.matrix([["1 - x^2", "-(x^3 - 2*x)"], ["-x", "1 - x^2"]])


# ---------------------------------------------------------------------------
# noncommuting words with designated inverses


class NCPoly:
    """Linear combinations of (word, x-power) with word concatenation.

    Words are tuples of symbol names; pairs registered as inverses cancel on
    contact, which is a complete rewriting system for this fragment.  The
    homotopy variable x stays central and carries its own exponent.
    """

    def __init__(self, terms: dict[tuple[tuple[str, ...], int], Fraction]
                 | None = None,
                 inverses: frozenset[tuple[str, str]] = frozenset()):
        self.inverses = inverses
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @staticmethod
    def sym(name: str, inverses=frozenset()) -> "NCPoly":
        return NCPoly({((name,), 0): Fraction(1)}, inverses)

    @staticmethod
    def x_power(k: int, inverses=frozenset()) -> "NCPoly":
        return NCPoly({((), k): Fraction(1)}, inverses)

    @staticmethod
    def const(c, inverses=frozenset()) -> "NCPoly":
        return NCPoly({((), 0): Fraction(c)}, inverses)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _reduce_word(self, word: tuple[str, ...]) -> tuple[str, ...]:
        w = list(word)
        changed = True
        while changed:
            changed = False
            for i in range(len(w) - 1):
                if (w[i], w[i + 1]) in self.inverses \
                        or (w[i + 1], w[i]) in self.inverses:
                    del w[i:i + 2]
                    changed = True
                    break
        return tuple(w)

    def __add__(self, other: "NCPoly") -> "NCPoly":
        inv = self.inverses | other.inverses
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return NCPoly(out, inv)

    def __neg__(self) -> "NCPoly":
        return NCPoly({k: -v for k, v in self.terms.items()}, self.inverses)

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def __mul__(self, other: "NCPoly") -> "NCPoly":
        inv = self.inverses | other.inverses
        out: dict = {}
        for (w1, k1), c1 in self.terms.items():
            for (w2, k2), c2 in other.terms.items():
                word = self._reduce_word(w1 + w2) if inv else w1 + w2
                key = (word, k1 + k2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return NCPoly(out, inv)

    def scale(self, c) -> "NCPoly":
        return NCPoly({k: v * Fraction(c) for k, v in self.terms.items()},
                      self.inverses)

    def x_coefficient(self, k: int) -> "NCPoly":
        return NCPoly({(w, 0): c for (w, kk), c in self.terms.items()
                       if kk == k}, self.inverses)

    def __eq__(self, other):
        return isinstance(other, NCPoly) and self.terms == other.terms

    def __repr__(self):
        if self.is_zero:
            return "0"
        bits = []
        for (w, k), c in sorted(self.terms.items()):
            body = "*".join(w) or "1"
            if k:
                body += f"*x^{k}"
            bits.append(f"{c}*{body}")
        return " + ".join(bits)


def nc_zero_matrix(n: int, inverses=frozenset()):
    z = NCPoly({}, inverses)
    return [[z for _ in range(n)] for _ in range(n)]


def nc_mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = NCPoly({}, a[0][0].inverses | b[0][0].inverses)
            for t in range(k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def nc_mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def nc_mat_is_zero(a) -> bool:
    return all(e.is_zero for row in a for e in row)


# ---------------------------------------------------------------------------
# the lemma suite


def rotation_matrix_checks() -> dict:
    """det = 1 exactly, endpoints at x=0 and x=1, and a symbolic inverse."""
    ring = SymRing(["x"])
    r = rotation(ring)
    det = r[0][0] * r[1][1] - r[0][1] * r[1][0]
    det_ok = det == ring.const(1)
    r0 = mat_eval_x(r, ring, 0)
    ident = ring.matrix([["1", "0"], ["0", "1"]])
    r1 = mat_eval_x(r, ring, 1)
    antidiag = ring.matrix([["0", "-1"], ["1", "0"]])
    rinv = rotation_inverse(ring)
    inv_ok = mat_is_zero(mat_sub(mat_mul(r, rinv), ident)) \
        and mat_is_zero(mat_sub(mat_mul(rinv, r), ident))
    report = {
        "det_is_one": det_ok,
        "at_zero_is_identity": mat_is_zero(mat_sub(r0, ident)),
        "at_one_is_antidiagonal": mat_is_zero(mat_sub(r1, antidiag)),
        "inverse_ok": inv_ok,
    }
    report["ok"] = all(report.values())
    if not report["ok"]:
        report["residual"] = det.to_string(ring.names)
    return report


def conjugation_homotopy_check() -> dict:
    """Conjugation by the rotation matrix interpolates the 2x2 swap morphism."""
    ring = SymRing(["x", "a", "b", "c", "d", "e", "f", "g", "h"])
    r, rinv = rotation(ring), rotation_inverse(ring)
    m = ring.matrix([["a", "b"], ["c", "d"]])
    conj = mat_mul(rinv, mat_mul(m, r))
    at0 = mat_eval_x(conj, ring, 0)
    at1 = mat_eval_x(conj, ring, 1)
    swapped = ring.matrix([["d", "-c"], ["-b", "a"]])
    n = ring.matrix([["e", "f"], ["g", "h"]])
    conj_n = mat_mul(rinv, mat_mul(n, r))
    conj_mn = mat_mul(rinv, mat_mul(mat_mul(m, n), r))
    multiplicative = mat_is_zero(mat_sub(conj_mn, mat_mul(conj, conj_n)))
    trace = conj[0][0] + conj[1][1]
    report = {
        "endpoint_zero": mat_is_zero(mat_sub(at0, m)),
        "endpoint_one": mat_is_zero(mat_sub(at1, swapped)),
        "multiplicative": multiplicative,
        "trace_preserved": trace == ring.parse("a + d"),
    }
    report["ok"] = all(report.values())
    return report


def block_lemma_checks() -> dict:
    """Block swap by conjugation, and the corner-conjugation word identity."""
    ring = SymRing(["x", "al", "be"])
    r, rinv = rotation(ring), rotation_inverse(ring)
    m = ring.matrix([["al", "0"], ["0", "be"]])
    conj = mat_mul(rinv, mat_mul(m, r))
    at0 = mat_eval_x(conj, ring, 0)
    at1 = mat_eval_x(conj, ring, 1)
    swapped = ring.matrix([["be", "0"], ["0", "al"]])
    degenerate = mat_is_zero(mat_sub(
        mat_eval_x(mat_mul(rinv, mat_mul(
            ring.matrix([["al", "0"], ["0", "al"]]), r)), ring, 1),
        ring.matrix([["al", "0"], ["0", "al"]])))

    inv = frozenset({("c", "c_inv")})
    al = NCPoly.sym("al_nc", inv)
    c = NCPoly.sym("c", inv)
    c_inv = NCPoly.sym("c_inv", inv)
    one = NCPoly.const(1, inv)
    zero = NCPoly({}, inv)
    left = nc_mat_mul([[one, zero], [zero, c]],
                      nc_mat_mul([[zero, zero], [zero, al]],
                                 [[one, zero], [zero, c_inv]]))
    corner = nc_mat_is_zero(nc_mat_sub(
        left, [[zero, zero], [zero, c * al * c_inv]]))

    report = {
        "swap_endpoint_zero": mat_is_zero(mat_sub(at0, m)),
        "swap_endpoint_one": mat_is_zero(mat_sub(at1, swapped)),
        "degenerate_equal_blocks": degenerate,
        "corner_conjugation": corner,
    }
    report["ok"] = all(report.values())
    return report


# ---------------------------------------------------------------------------
# permutations of diagonal blocks


def _block_diag(ring: SymRing, blocks: list[list[list[Polynomial]]], size: int):
    out = [[ring.zero() for _ in range(size)] for _ in range(size)]
    pos = 0
    for blk in blocks:
        k = len(blk)
        for i in range(k):
            for j in range(k):
                out[pos + i][pos + j] = blk[i][j]
        pos += k
    return out


def _generic_block(ring: SymRing, prefix: str, k: int):
    return [[ring.var(f"{prefix}_{i}_{j}") for j in range(k)]
            for i in range(k)]


def _block_symbols(sizes: Sequence[int]) -> list[str]:
    names = []
    for b, k in enumerate(sizes):
        for i in range(k):
            for j in range(k):
                names.append(f"a{b}_{i}_{j}")
    return names


def _permutation_matrix(ring: SymRing, sigma: Sequence[int],
                        sizes: Sequence[int]):
    """Rows of the permuted layout against columns of the original layout."""
    k = sum(sizes)
    out = [[ring.zero() for _ in range(k)] for _ in range(k)]
    starts = [sum(sizes[:i]) for i in range(len(sizes))]
    new_pos = 0
    for target in sigma:
        base = starts[target]
        for off in range(sizes[target]):
            out[new_pos + off][base + off] = ring.const(1)
        new_pos += sizes[target]
    return out


def adjacent_transpositions(sigma: Sequence[int]) -> list[int]:
    """Bubble-sort decomposition; entry i means "swap positions i, i+1"."""
    perm = list(sigma)
    swaps = []
    for top in range(len(perm) - 1, 0, -1):
        for i in range(top):
            if perm[i] > perm[i + 1]:
                perm[i], perm[i + 1] = perm[i + 1], perm[i]
                swaps.append(i)
    return swaps


def permutation_homotopy(sigma: Sequence[int], sizes: Sequence[int]) -> dict:
    """Certificate chain for permuting diagonal blocks inside the doubled size.

    Identity: empty chain.  A single adjacent transposition of equal-size
    blocks: one rotation-conjugation link.  General permutations: two links
    through diag(0, P D P^{-1}) with P the numeric block permutation matrix,
    following the corner-conjugation route.
    """
    n = len(sigma)
    if sorted(sigma) != list(range(n)) or len(sizes) != n:
        raise ValueError("sigma must be a permutation with one size per block")
    if n > 5 or any(s > 3 for s in sizes) or any(s < 1 for s in sizes):
        raise PropertyViolationError("permutation guard: n <= 5, sizes <= 3")
    ring = SymRing(["x"] + _block_symbols(sizes))
    swaps = adjacent_transpositions(sigma)
    if not swaps:
        return {"ok": True, "links": 0, "transpositions": []}

    k = sum(sizes)
    blocks = [_generic_block(ring, f"a{i}", sizes[i]) for i in range(n)]
    start = _block_diag(ring, blocks, k)
    perm_blocks = [blocks[sigma[i]] for i in range(n)]
    end = _block_diag(ring, perm_blocks, k)

    links = []
    if len(swaps) == 1 and sizes[swaps[0]] == sizes[swaps[0] + 1]:
        # direct window swap, no padding
        i = swaps[0]
        s = sizes[i]
        r, rinv = _block_rotation(ring, s)
        window = _block_diag(ring, [blocks[i], blocks[i + 1]], 2 * s)
        conj = mat_mul(rinv, mat_mul(window, r))
        ambient = _embed_window(ring, start, conj, sum(sizes[:i]), 2 * s, k)
        ok = (mat_is_zero(mat_sub(mat_eval_x(ambient, ring, 0), start))
              and mat_is_zero(mat_sub(mat_eval_x(ambient, ring, 1), end)))
        links.append({"kind": "window-rotation", "position": i, "ok": ok})
        return {"ok": ok, "links": 1, "transpositions": swaps}

    # general route: pad to 2k and go through diag(0, P D P^{-1})
    big = 2 * k
    r, rinv = _block_rotation(ring, k)
    padded = _pad(ring, start, big)
    conj1 = mat_mul(rinv, mat_mul(padded, r))
    p = _permutation_matrix(ring, sigma, sizes)
    p_inv = [[p[j][i] for j in range(k)] for i in range(k)]
    big_p = _block_diag(ring, [_identity(ring, k), p], big)
    big_p_inv = _block_diag(ring, [_identity(ring, k), p_inv], big)
    link1 = mat_mul(big_p, mat_mul(conj1, big_p_inv))
    l1_start = mat_eval_x(link1, ring, 0)
    l1_end = mat_eval_x(link1, ring, 1)
    conjugated = mat_mul(p, mat_mul(start, p_inv))
    expect_mid = _block_diag(ring, [_zero_block(ring, k)], big)
    for i in range(k):
        for j in range(k):
            expect_mid[k + i][k + j] = conjugated[i][j]
    ok1 = (mat_is_zero(mat_sub(l1_start, padded))
           and mat_is_zero(mat_sub(l1_end, expect_mid)))
    links.append({"kind": "pad-conjugate", "ok": ok1})

    padded_end = _pad(ring, end, big)
    conj2 = mat_mul(rinv, mat_mul(padded_end, r))
    l2_start = mat_eval_x(conj2, ring, 0)
    l2_end = mat_eval_x(conj2, ring, 1)
    # the second link runs from diag(PDP^{-1}, 0) to diag(0, PDP^{-1});
    # reversed it glues onto link 1 (conjugated layout equals the permuted one)
    ok_layout = mat_is_zero(mat_sub(conjugated, end))
    ok2 = (mat_is_zero(mat_sub(l2_start, padded_end))
           and mat_is_zero(mat_sub(l2_end, expect_mid))
           and ok_layout)
    links.append({"kind": "unpad-rotation", "ok": ok2})
    return {"ok": ok1 and ok2, "links": 2, "transpositions": swaps}


def _identity(ring: SymRing, k: int):
    return [[ring.const(1) if i == j else ring.zero() for j in range(k)]
            for i in range(k)]


def _zero_block(ring: SymRing, k: int):
    return [[ring.zero() for _ in range(k)] for _ in range(k)]


def _pad(ring: SymRing, m, big: int):
    out = [[ring.zero() for _ in range(big)] for _ in range(big)]
    for i in range(len(m)):
        for j in range(len(m)):
            out[i][j] = m[i][j]
    return out


def _block_rotation(ring: SymRing, k: int):
    """The rotation matrix with k x k scalar blocks."""
    r2, rinv2 = rotation(ring), rotation_inverse(ring)
    big = 2 * k
    r = [[ring.zero() for _ in range(big)] for _ in range(big)]
    rinv = [[ring.zero() for _ in range(big)] for _ in range(big)]
    for bi in range(2):
        for bj in range(2):
            for t in range(k):
                r[bi * k + t][bj * k + t] = r2[bi][bj]
                rinv[bi * k + t][bj * k + t] = rinv2[bi][bj]
    return r, rinv


def _embed_window(ring: SymRing, full, window_conj, offset: int,
                  wsize: int, total: int):
    """Splice a window homotopy into the ambient diagonal matrix."""
    out = [[full[i][j] for j in range(total)] for i in range(total)]
    for i in range(wsize):
        for j in range(wsize):
            out[offset + i][offset + j] = window_conj[i][j]
    return out


# ---------------------------------------------------------------------------
# stability structure


def gamma_and_stability_checks() -> dict:
    """Block direct sum is multiplicative and commutative up to certificates."""
    ring = SymRing(["x", "m", "n", "m2", "n2"])
    gamma = ring.matrix([["m", "0"], ["0", "n"]])
    gamma2 = ring.matrix([["m2", "0"], ["0", "n2"]])
    prod = mat_mul(gamma, gamma2)
    expect = ring.matrix([["m*m2", "0"], ["0", "n*n2"]])
    gamma_mult = mat_is_zero(mat_sub(prod, expect))

    # structural map M -> diag(M, 0) respects products
    m = ring.matrix([["m"]])
    m2 = ring.matrix([["m2"]])
    up = _pad(ring, mat_mul(m, m2), 2)
    up2 = mat_mul(_pad(ring, m, 2), _pad(ring, m2, 2))
    structural_mult = mat_is_zero(mat_sub(up, up2))

    swap_cert = permutation_homotopy([1, 0], [1, 1])
    report = {
        "gamma_multiplicative": gamma_mult,
        "structural_multiplicative": structural_mult,
        "gamma_commutativity_certificate": swap_cert["ok"],
    }
    report["ok"] = all(report.values())
    return report


def verify_all(only: str | None = None) -> dict:
    """Run the lemma suite; keys match the CLI's --only choices."""
    suite = {
        "rotation": rotation_matrix_checks,
        "conjugation": conjugation_homotopy_check,
        "blocks": block_lemma_checks,
        "permutation": lambda: permutation_homotopy([1, 2, 0], [1, 1, 1]),
        "gamma": gamma_and_stability_checks,
    }
    if only is not None:
        if only not in suite:
            raise ValueError(f"unknown lemma group {only!r}")
        picked = {only: suite[only]}
    else:
        picked = suite
    results = {name: fn() for name, fn in picked.items()}
    results["ok"] = all(r["ok"] for r in results.values())
    return results
