"""Shared fixtures and independent test oracles.

Oracles here deliberately avoid the library's own code paths: the
eigenspace oracle is a self-contained row reduction over explicit
(rational, rational) pairs representing a + b*zeta, and the trace oracle
multiplies dense adjoint matrices directly.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from affinelie.rootsys import build_chevalley, build_diagram_auto
from affinelie.loop import LoopElt, TwistedContext
from affinelie.affine import AffineElt


@pytest.fixture(scope="session")
def a1():
    return build_chevalley("A", 1)


@pytest.fixture(scope="session")
def a2():
    return build_chevalley("A", 2)


@pytest.fixture(scope="session")
def a3():
    return build_chevalley("A", 3)


@pytest.fixture(scope="session")
def d4():
    return build_chevalley("D", 4)


@pytest.fixture(scope="session")
def a1_id(a1):
    return build_diagram_auto(a1, (0,))


@pytest.fixture(scope="session")
def a2_id(a2):
    return build_diagram_auto(a2, (0, 1))


@pytest.fixture(scope="session")
def a2_flip(a2):
    return build_diagram_auto(a2, (1, 0))


@pytest.fixture(scope="session")
def a3_flip(a3):
    return build_diagram_auto(a3, (2, 1, 0))


@pytest.fixture(scope="session")
def d4_triality(d4):
    return build_diagram_auto(d4, (2, 1, 3, 0))


@pytest.fixture(scope="session")
def a1_ctx(a1_id):
    return TwistedContext(a1_id)


@pytest.fixture(scope="session")
def a2_flip_ctx(a2_flip):
    return TwistedContext(a2_flip)


def make_loop_sampler(alg, m, rng, lo=-3, hi=3, terms=2, ctx=None):
    """Seeded random loop elements: basis monomials with coefficients in
    [-5, 5]; when a twisted context is given, sampling stays twisted."""
    def sample():
        out = LoopElt.zero(alg, m)
        for _ in range(terms):
            j = rng.randint(lo, hi)
            if ctx is not None:
                basis = ctx.slice_basis(j)
                e = basis[rng.randrange(len(basis))]
                out = out + LoopElt.from_g(e.scale(rng.randint(-5, 5)), j)
            else:
                idx = rng.randrange(alg.dim)
                out = out + LoopElt.monomial(alg, m, idx, j, rng.randint(-5, 5))
        return out
    return sample


def make_affine_sampler(alg, m, rng, lo=-3, hi=3, terms=2, ctx=None):
    loop_sampler = make_loop_sampler(alg, m, rng, lo, hi, terms, ctx)

    def sample():
        return AffineElt(loop_sampler(), c=rng.randint(-5, 5), d=rng.randint(-5, 5))
    return sample


def nilpotent_twisted_lines(ctx):
    """Eigenbasis lines supported purely on one sign of root vectors.

    Orbit sums of same-sign root vectors lie in a nilpotent subalgebra, so
    their ad-action is nilpotent and exponentiates exactly.
    """
    alg = ctx.alg
    out = []
    for residue in range(ctx.m):
        for e in ctx.eigenspaces[residue]:
            signs = set()
            cartan = False
            for i in e.coords:
                if i < alg.rank:
                    cartan = True
                else:
                    signs.add(1 if sum(alg.root_of_index[i]) > 0 else -1)
            if not cartan and len(signs) == 1:
                out.append((residue, e))
    return out


def make_twisted_word_sampler(ctx, rng, length=4):
    """Hat words that preserve the twisted subalgebra.

    Uses Galois-equivariant kinds only: exponentials of degree-zero
    twisted nilpotents, symmetric constant torus points, base-ring maps
    (inversion only when m <= 2), the diagram automorphism itself, and
    kernel shifts.  All have zero degree spread.
    """
    from affinelie.autos import (AutoWord, Diagram, NilExp, Ring, TorusK,
                                 VShift)
    from affinelie.scalars import CycScalar
    alg, m, auto = ctx.alg, ctx.m, ctx.auto
    degree_zero_nils = [e for residue, e in nilpotent_twisted_lines(ctx)
                        if residue == 0]

    def symmetric_torus():
        orbit_value = {}
        coords = []
        for i in range(alg.rank):
            j = min(_orbit(auto.perm, i))
            if j not in orbit_value:
                orbit_value[j] = CycScalar(m, rng.choice([2, 3, -1]))
            coords.append(orbit_value[j])
        return TorusK(alg, tuple(coords))

    def sample():
        gens = []
        while len(gens) < length:
            k = rng.randrange(5)
            if k == 0 and degree_zero_nils:
                e = degree_zero_nils[rng.randrange(len(degree_zero_nils))]
                gens.append(NilExp(LoopElt.from_g(e.scale(rng.randint(1, 2)), 0)))
            elif k == 1:
                gens.append(symmetric_torus())
            elif k == 2:
                e = rng.choice([1, -1]) if m <= 2 else 1
                gens.append(Ring(CycScalar(m, rng.choice([2, 3, -1])), e))
            elif k == 3 and not auto.is_identity():
                gens.append(Diagram(auto))
            else:
                gens.append(VShift(CycScalar(m, rng.randint(-3, 3))))
        return AutoWord("hat", tuple(gens))

    return sample


def _orbit(perm, i):
    out = [i]
    j = perm[i]
    while j != i:
        out.append(j)
        j = perm[j]
    return out


# -- independent oracles -----------------------------------------------------


def oracle_ad_matrix(alg, index):
    """Dense integer adjoint matrix of a basis element, built from scratch."""
    n = alg.dim
    mat = [[0] * n for _ in range(n)]
    for j in range(n):
        for k, c in alg.table.get((index, j), {}).items():
            mat[k][j] += c
    return mat


def oracle_killing(alg, i, j):
    """Trace of ad(b_i) . ad(b_j) by direct dense multiplication."""
    a = oracle_ad_matrix(alg, i)
    b = oracle_ad_matrix(alg, j)
    n = alg.dim
    total = 0
    for r in range(n):
        for k in range(n):
            total += a[r][k] * b[k][r]
    return total


class Z3:
    """Minimal standalone Q(zeta_3) elements as (a, b) pairs, a + b*zeta."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    def __add__(self, o):
        return Z3(self.a + o.a, self.b + o.b)

    def __sub__(self, o):
        return Z3(self.a - o.a, self.b - o.b)

    def __mul__(self, o):
        return Z3(self.a * o.a - self.b * o.b,
                  self.a * o.b + self.b * o.a - self.b * o.b)

    def inv(self):
        n = self.a * self.a - self.a * self.b + self.b * self.b
        return Z3((self.a - self.b) / n, -self.b / n)

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, o):
        return self.a == o.a and self.b == o.b


def oracle_kernel_dim_z3(rows):
    """Kernel dimension of a matrix of Z3 entries by plain row reduction."""
    rows = [list(r) for r in rows]
    ncols = len(rows[0]) if rows else 0
    rank = 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][c].inv()
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return ncols - rank


def oracle_eigenspace_dims(auto, m):
    """Dimensions of ker(sigma - zeta^i) over Q(zeta_3)-style pairs."""
    alg = auto.alg
    n = alg.dim
    zeta = {1: Z3(1), 2: Z3(-1), 3: Z3(0, 1)}[m]
    sigma = [[Z3(0)] * n for _ in range(n)]
    for i in range(n):
        j, s = auto.index_image(i)
        sigma[j][i] = Z3(s)
    dims = []
    power = Z3(1)
    for _ in range(m):
        shifted = [[sigma[r][c] - (power if r == c else Z3(0))
                    for c in range(n)] for r in range(n)]
        dims.append(oracle_kernel_dim_z3(shifted))
        power = power * zeta
    return dims


def closed_form_weight_counts(ctx, x_cartan, lo, hi):
    """Exact infinite-algebra weight counts for x = h + d with h in h_0.

    Every twisted eigenbasis line e is an exact eigenvector of ad(h) (h is
    regular in h_0), with eigenvalue alpha_e; the line at degree j carries
    weight alpha_e + j.  Returns {weight (Fraction): count} over degrees
    in [lo, hi], loop level only.
    """
    counts = {}
    for residue in range(ctx.m):
        for e in ctx.eigenspaces[residue]:
            img = x_cartan.bracket(e)
            if not img.coords:
                alpha = Fraction(0)
            else:
                i, c = next(iter(img.coords.items()))
                alpha = (c / e.coords[i]).rational()
                assert img == e.scale(alpha), "line is not an eigenvector"
            j = lo
            while j % ctx.m != residue % ctx.m:
                j += 1
            while j <= hi:
                w = alpha + j
                counts[w] = counts.get(w, 0) + 1
                j += ctx.m
    return counts
