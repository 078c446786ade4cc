"""The full affine algebra L = loop (+) kc (+) kd with its invariant form.

One bracket implementation covers the split and twisted cases: the twisted
algebra is the subspace of the split one cut out by `loop.is_in_twisted`,
and the bracket restricts (the cocycle term uses the same Killing form).
The central element c and the degree derivation d follow
[d, x (x) t^(p/m)] = p * x (x) t^(p/m) and
[x (x) t^(p/m), y (x) t^(q/m)] = [x,y] (x) t^((p+q)/m) + p <x,y> delta_{0,p+q} c.
"""

from __future__ import annotations

from .scalars import CycScalar, as_scalar
from .loop import LoopElt
from . import linalg


class AffineElt:
    """Element x' + a*c + b*d with x' a loop element."""

    __slots__ = ("loop", "c", "d")

    def __init__(self, loop, c=None, d=None):
        self.loop = loop
        self.c = as_scalar(loop.m, 0 if c is None else c)
        self.d = as_scalar(loop.m, 0 if d is None else d)

    @classmethod
    def from_loop(cls, loop):
        return cls(loop)

    @classmethod
    def zero(cls, alg, m):
        return cls(LoopElt.zero(alg, m))

    @classmethod
    def c_elt(cls, alg, m, coef=1):
        return cls(LoopElt.zero(alg, m), c=coef)

    @classmethod
    def d_elt(cls, alg, m, coef=1):
        return cls(LoopElt.zero(alg, m), d=coef)

    @property
    def alg(self):
        return self.loop.alg

    @property
    def m(self):
        return self.loop.m

    def _check(self, other):
        if self.alg is not other.alg or self.m != other.m:
            raise ValueError("elements of different algebras")

    def __add__(self, other):
        self._check(other)
        return AffineElt(self.loop + other.loop, self.c + other.c, self.d + other.d)

    def __neg__(self):
        return AffineElt(-self.loop, -self.c, -self.d)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, coef):
        coef = as_scalar(self.m, coef)
        return AffineElt(self.loop.scale(coef), self.c * coef, self.d * coef)

    def bracket(self, other):
        return bracket_affine(self, other)

    def is_zero(self):
        return self.loop.is_zero() and not self.c and not self.d

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, AffineElt):
            return NotImplemented
        return (self.loop == other.loop and self.c == other.c
                and self.d == other.d)

    def render(self):
        from .scalars import _coef_prefix, join_signed
        parts = []
        if self.loop.coords:
            txt = self.loop.render()
            # splice the loop rendering back into signed parts
            parts.append(("+", txt))
        if self.c:
            sign, mult = _coef_prefix(self.c)
            parts.append((sign, mult + "c"))
        if self.d:
            sign, mult = _coef_prefix(self.d)
            parts.append((sign, mult + "d"))
        if not parts:
            return "0"
        return join_signed(parts)

    def __repr__(self):
        return f"AffineElt({self.render()!r})"


def cocycle(x, y):
    """The Killing 2-cocycle sum_p p <x_p, y_-p> over monomial pairs."""
    m = x.m
    total = CycScalar.zero(m)
    table = x.alg.killing_table
    for i, pi in x.coords.items():
        for j, qj in y.coords.items():
            k = table.get((i, j), 0)
            if not k:
                continue
            for p, cp in pi.terms.items():
                if p == 0:
                    continue
                cq = qj.terms.get(-p)
                if cq:
                    total = total + cp * cq * (k * p)
    return total


def bracket_affine(x, y):
    """Affine bracket: loop bracket + cocycle c-term + d as degree operator."""
    x._check(y)
    loop_part = x.loop.bracket(y.loop)
    if x.d:
        loop_part = loop_part + y.loop.degree_action().scale(x.d)
    if y.d:
        loop_part = loop_part - x.loop.degree_action().scale(y.d)
    c_coef = cocycle(x.loop, y.loop)
    return AffineElt(loop_part, c=c_coef)


def loop_pairing(x, y):
    """(a t^(i/m), b t^(j/m)) = <a,b> delta_{i+j,0}, extended bilinearly."""
    m = x.m
    total = CycScalar.zero(m)
    table = x.alg.killing_table
    for i, pi in x.coords.items():
        for j, qj in y.coords.items():
            k = table.get((i, j), 0)
            if not k:
                continue
            for p, cp in pi.terms.items():
                cq = qj.terms.get(-p)
                if cq:
                    total = total + cp * cq * k
    return total


def invariant_form(x, y, beta=1):
    """The invariant bilinear form with (c,d) = beta, (c,c) = (d,d) = 0.

    beta is a global scale: the cocycle term of the bracket pairs the loop
    block against the c-d block, so invariance pins their ratio and the
    form is unique up to this one scalar.
    """
    beta = as_scalar(x.m, beta)
    if not beta:
        raise ValueError("beta must be nonzero")
    total = loop_pairing(x.loop, y.loop) + x.c * y.d + x.d * y.c
    return total * beta


def verify_form_invariance(sampler, samples, beta=1):
    """([x,y], z) + (y, [x,z]) = 0 on sampled triples; exact, no tolerance."""
    failures = []
    for _ in range(samples):
        x, y, z = sampler(), sampler(), sampler()
        lhs = invariant_form(bracket_affine(x, y), z, beta)
        rhs = invariant_form(y, bracket_affine(x, z), beta)
        if lhs + rhs:
            failures.append({
                "inputs": [x.render(), y.render(), z.render()],
                "lhs": lhs.render(),
                "rhs": rhs.render(),
            })
    return {"checked": samples, "failures": failures}


def window_gram_rank(basis, beta=1):
    """Rank of the Gram matrix of the invariant form on a window basis."""
    if not basis:
        return 0
    m = basis[0].m
    gram = [[invariant_form(u, v, beta) for v in basis] for u in basis]
    return linalg.rank(gram, m)


def core_and_derived(auto, lo, hi, context=None):
    """Span of window brackets: the core loop (+) kc, never reaching d.

    Brackets are taken over basis pairs whose degrees sum into [lo, hi], so
    every product stays inside the window.  Returns (basis, flag) where the
    flag asserts span == (windowed twisted loop) (+) kc and d not in span.
    """
    from .loop import twisted_basis, TwistedContext
    ctx = context or TwistedContext(auto)
    alg, m = auto.alg, auto.m
    vectors = twisted_basis(auto, lo, hi, ctx)
    # ambient coordinates: one slot per (window vector), plus c, plus d
    index = {}
    meta = []
    for j in range(lo, hi + 1):
        for pos in range(ctx.slice_dim(j)):
            index[(j, pos)] = len(meta)
            meta.append((j, pos))
    dim = len(meta) + 2
    c_slot, d_slot = len(meta), len(meta) + 1

    def to_vec(elt):
        vec = [CycScalar.zero(m)] * dim
        for j in sorted(elt.loop.degree_support()):
            coords = ctx.decompose_slice(elt.loop.slice(j), j)
            if coords is None:
                raise ValueError("element leaves the twisted algebra")
            for pos, coef in enumerate(coords):
                if coef:
                    vec[index[(j, pos)]] = coef
        vec[c_slot] = elt.c
        vec[d_slot] = elt.d
        return vec

    solver = linalg.SpanSolver(dim, m)
    produced = []
    for a in range(len(vectors)):
        da = min(vectors[a].degree_support())
        for b in range(len(vectors)):
            db = min(vectors[b].degree_support())
            if not (lo <= da + db <= hi):
                continue
            w = bracket_affine(AffineElt(vectors[a]), AffineElt(vectors[b]))
            if w.is_zero():
                continue
            vec = to_vec(w)
            if solver.add(vec):
                produced.append(w)
    # expected span: every windowed loop vector and c, never d
    expected = linalg.SpanSolver(dim, m)
    for v in vectors:
        expected.add(to_vec(AffineElt(v)))
    expected.add(to_vec(AffineElt.c_elt(alg, m)))
    span_matches = solver.rank == expected.rank and all(
        expected.contains(row) for row in solver.rows
    ) and all(solver.contains(row) for row in expected.rows)
    d_vec = to_vec(AffineElt.d_elt(alg, m))
    flag = span_matches and not solver.contains(d_vec)
    return produced, flag
