"""Exact dense linear algebra over Q(zeta_m).

Matrices are lists of rows of CycScalar.  Everything here is plain Gaussian
elimination over the field: no pivot-size heuristics, no floating point.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import CycScalar, as_scalar


def zeros(rows, cols, m):
    z = CycScalar.zero(m)
    return [[z] * cols for _ in range(rows)]


def identity(n, m):
    z, o = CycScalar.zero(m), CycScalar.one(m)
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def mat_mul(a, b, m):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = zeros(rows, cols, m)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            aik = ai[k]
            if not aik:
                continue
            bk = b[k]
            for j in range(cols):
                if bk[j]:
                    oi[j] = oi[j] + aik * bk[j]
    return out


def mat_vec(a, v, m):
    out = [CycScalar.zero(m)] * len(a)
    for i, row in enumerate(a):
        acc = CycScalar.zero(m)
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out[i] = acc
    return out


def rref(mat, m):
    """Reduced row echelon form; returns (rows, pivot-column list)."""
    rows = [list(r) for r in mat]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rank(mat, m):
    return len(rref(mat, m)[1])


def kernel_basis(mat, m):
    """Basis of the right kernel of `mat` (columns = unknowns)."""
    ncols = len(mat[0]) if mat else 0
    rows, pivots = rref(mat, m)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    zero, one = CycScalar.zero(m), CycScalar.one(m)
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, p in enumerate(pivots):
            v[p] = -rows[r][f]
        basis.append(v)
    return basis


def solve(mat, rhs, m):
    """One solution of mat*x = rhs, or None if inconsistent."""
    ncols = len(mat[0]) if mat else 0
    aug = [list(row) + [b] for row, b in zip(mat, rhs)]
    rows, pivots = rref(aug, m)
    if ncols in pivots:
        return None
    x = [CycScalar.zero(m)] * ncols
    for r, p in enumerate(pivots):
        x[p] = rows[r][ncols]
    return x


class SpanSolver:
    """Incremental row-reduced span of vectors, for membership and coords.

    Rows are kept in reduced echelon form together with the expression of
    each row in terms of the originally added vectors, so `coords` can
    report exact coefficients.
    """

    def __init__(self, dim, m):
        self.dim = dim
        self.m = m
        self.rows = []        # reduced vectors
        self.row_coords = []  # expression of each row over added vectors
        self.pivots = []
        self.count = 0

    def _reduce(self, vec, coords):
        v = list(vec)
        c = list(coords)
        for row, rc, p in zip(self.rows, self.row_coords, self.pivots):
            if v[p]:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
                c = [x - f * y for x, y in zip(c, rc)]
        return v, c

    def add(self, vec):
        """Add a vector; returns True if it enlarged the span."""
        coords = [CycScalar.zero(self.m)] * self.count + [CycScalar.one(self.m)]
        for rc in self.row_coords:
            rc.append(CycScalar.zero(self.m))
        self.count += 1
        v, c = self._reduce(vec, coords)
        p = next((i for i, x in enumerate(v) if x), None)
        if p is None:
            return False
        inv = v[p].inverse()
        v = [x * inv for x in v]
        c = [x * inv for x in c]
        for i, (row, rc) in enumerate(zip(self.rows, self.row_coords)):
            if row[p]:
                f = row[p]
                self.rows[i] = [x - f * y for x, y in zip(row, v)]
                self.row_coords[i] = [x - f * y for x, y in zip(rc, c)]
        at = next((i for i, q in enumerate(self.pivots) if q > p), len(self.pivots))
        self.rows.insert(at, v)
        self.row_coords.insert(at, c)
        self.pivots.insert(at, p)
        return True

    @property
    def rank(self):
        return len(self.rows)

    def contains(self, vec):
        v, _ = self._reduce(vec, [CycScalar.zero(self.m)] * self.count)
        return all(not x for x in v)

    def coords(self, vec):
        """Coefficients over the added vectors, or None if not in the span."""
        v, c = self._reduce(vec, [CycScalar.zero(self.m)] * self.count)
        if any(v):
            return None
        return [-x for x in c]


def span_basis(vectors, m):
    """Independent subset spanning the same space (original vectors)."""
    if not vectors:
        return []
    solver = SpanSolver(len(vectors[0]), m)
    out = []
    for v in vectors:
        if solver.add(v):
            out.append(v)
    return out


def same_span(vectors_a, vectors_b, m, dim):
    sa = SpanSolver(dim, m)
    for v in vectors_a:
        sa.add(v)
    sb = SpanSolver(dim, m)
    for v in vectors_b:
        sb.add(v)
    if sa.rank != sb.rank:
        return False
    return all(sa.contains(v) for v in vectors_b)


def charpoly(mat, m):
    """Characteristic polynomial det(xI - M), lowest degree first.

    Computed by exact similarity reduction to upper Hessenberg form and the
    leading-principal-minor recurrence for Hessenberg matrices.
    """
    n = len(mat)
    zero, one = CycScalar.zero(m), CycScalar.one(m)
    if n == 0:
        return [one]
    h = [list(row) for row in mat]
    for c in range(n - 2):
        pivot = next((r for r in range(c + 1, n) if h[r][c]), None)
        if pivot is None:
            continue
        if pivot != c + 1:
            h[c + 1], h[pivot] = h[pivot], h[c + 1]
            for row in h:
                row[c + 1], row[pivot] = row[pivot], row[c + 1]
        inv = h[c + 1][c].inverse()
        for r in range(c + 2, n):
            if h[r][c]:
                f = h[r][c] * inv
                h[r] = [x - f * y for x, y in zip(h[r], h[c + 1])]
                # column op: col[c+1] += f * col[r]
                for row in h:
                    row[c + 1] = row[c + 1] + f * row[r]
    # p_k(x) = (x - h[k][k]) p_{k-1}(x) - sum_i h[i][k] (prod subdiag) p_{i-1}(x)
    polys = [[one]]
    for k in range(n):
        prev = polys[k]
        term = [zero] + prev
        term = [t - h[k][k] * p for t, p in zip(term, prev + [zero])]
        sub = one
        for i in range(k - 1, -1, -1):
            sub = sub * h[i + 1][i]
            if h[i][k] and sub:
                coefp = h[i][k] * sub
                pi = polys[i]
                term = [t - coefp * (pi[j] if j < len(pi) else zero)
                        for j, t in enumerate(term)]
        polys.append(term)
    return polys[n]


def poly_eval(poly, x):
    acc = CycScalar.zero(x.m)
    for coef in reversed(poly):
        acc = acc * x + coef
    return acc


def poly_divmod_linear(poly, root):
    """Divide poly by (x - root) via synthetic division; (quotient, rem)."""
    m = root.m
    n = len(poly) - 1
    quot = [CycScalar.zero(m)] * n
    carry = poly[n]
    for j in range(n - 1, -1, -1):
        quot[j] = carry
        carry = poly[j] + carry * root
    return quot, carry


def _divisors(n):
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def rational_roots(poly, m):
    """All rational roots (as CycScalar) with multiplicities.

    Requires every coefficient to be rational; returns [] when the
    polynomial has zeta-part coefficients (out of reach of this search).
    """
    if any(c.b for c in poly):
        return []
    coeffs = [c.a for c in poly]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return []
    roots = []
    # factor out x^k
    k = 0
    while k < len(coeffs) and coeffs[k] == 0:
        k += 1
    if k:
        roots.append((CycScalar.zero(m), k))
        coeffs = coeffs[k:]
    if len(coeffs) <= 1:
        return roots
    den = 1
    for c in coeffs:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    a0, an = ints[0], ints[-1]
    candidates = set()
    for p in _divisors(a0):
        for q in _divisors(an):
            candidates.add(Fraction(p, q))
            candidates.add(Fraction(-p, q))
    poly_now = [CycScalar(m, c) for c in coeffs]
    for cand in sorted(candidates):
        root = CycScalar(m, cand)
        mult = 0
        while len(poly_now) > 1 and not poly_eval(poly_now, root):
            poly_now, _ = poly_divmod_linear(poly_now, root)
            mult += 1
        if mult:
            roots.append((root, mult))
    return roots


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def eigenspaces(mat, m, candidates=()):
    """Exact eigenspaces of a square matrix.

    Candidate eigenvalues are the diagonal entries, any caller-provided
    values, and the rational roots of the characteristic polynomial when
    the diagonal harvest does not already certify completeness.  Returns
    (spaces, complete) where spaces is a list of (eigenvalue, basis).
    """
    n = len(mat)
    if n == 0:
        return [], True
    seen = []
    spaces = []
    total = 0

    def try_candidate(w):
        nonlocal total
        if any(w == s for s in seen):
            return
        seen.append(w)
        shifted = [[mat[i][j] - w if i == j else mat[i][j] for j in range(n)]
                   for i in range(n)]
        basis = kernel_basis(shifted, m)
        if basis:
            spaces.append((w, basis))
            total += len(basis)

    for i in range(n):
        try_candidate(mat[i][i])
    for w in candidates:
        if total >= n:
            break
        try_candidate(as_scalar(m, w))
    if total < n:
        for root, _ in rational_roots(charpoly(mat, m), m):
            try_candidate(root)
    return spaces, total == n


def joint_eigenspaces(mats, m, candidates=()):
    """Simultaneous eigenspace refinement for a commuting family.

    Returns (spaces, defect) where spaces is a list of
    (weight-tuple, basis-of-ambient-vectors); defect is None on success or
    the index of the first operator whose restriction fails to
    diagonalize over the implemented field.
    """
    n = len(mats[0]) if mats else 0
    start = [([], identity(n, m))]
    current = start
    for op_index, mat in enumerate(mats):
        refined = []
        for weights, basis in current:
            k = len(basis)
            if k == 0:
                continue
            # restriction of `mat` to span(basis): solve in the basis
            solver = SpanSolver(n, m)
            for v in basis:
                solver.add(v)
            restricted_cols = []
            for v in basis:
                image = mat_vec(mat, v, m)
                coords = solver.coords(image)
                if coords is None:
                    return [], op_index
                restricted_cols.append(coords)
            restricted = [[restricted_cols[j][i] for j in range(k)] for i in range(k)]
            spaces, complete = eigenspaces(restricted, m, candidates)
            if not complete:
                return [], op_index
            for w, sub in spaces:
                ambient = []
                for coeffs in sub:
                    vec = [CycScalar.zero(m)] * n
                    for coef, bvec in zip(coeffs, basis):
                        if coef:
                            vec = [x + coef * y for x, y in zip(vec, bvec)]
                    ambient.append(vec)
                refined.append((weights + [w], ambient))
        current = refined
    return [(tuple(w), basis) for w, basis in current], None


def generalized_eigenspace(mat, w, mult, m):
    n = len(mat)
    shifted = [[mat[i][j] - w if i == j else mat[i][j] for j in range(n)]
               for i in range(n)]
    power = identity(n, m)
    for _ in range(mult):
        power = mat_mul(shifted, power, m)
    return kernel_basis(power, m)


def jordan_split(mat, m, candidates=()):
    """Exact Jordan-Chevalley split M = S + N over Q(zeta_m).

    Finds eigenvalues via the characteristic polynomial (plus extra
    candidates), builds generalized eigenspaces, and assembles the
    semisimple part blockwise.  Raises ValueError when the characteristic
    polynomial does not split over the implemented field.
    """
    n = len(mat)
    poly = charpoly(mat, m)
    roots = rational_roots(poly, m)
    found = {w: mult for w, mult in roots}
    for w in candidates:
        w = as_scalar(m, w)
        if w in found:
            continue
        mult = 0
        poly_now = poly
        while len(poly_now) > 1 and not poly_eval(poly_now, w):
            poly_now, _ = poly_divmod_linear(poly_now, w)
            mult += 1
        if mult:
            found[w] = mult
    if sum(found.values()) != n:
        raise ValueError("characteristic polynomial does not split over Q(zeta_m)")
    cols = []
    diag = []
    for w, mult in found.items():
        basis = generalized_eigenspace(mat, w, mult, m)
        if len(basis) != mult:
            raise ValueError("generalized eigenspace dimension mismatch")
        cols.extend(basis)
        diag.extend([w] * mult)
    # change of basis: columns of P are the generalized eigenvectors
    p = [[cols[j][i] for j in range(n)] for i in range(n)]
    p_inv = invert(p, m)
    d = [[diag[i] if i == j else CycScalar.zero(m) for j in range(n)] for i in range(n)]
    s = mat_mul(mat_mul(p, d, m), p_inv, m)
    nmat = [[mat[i][j] - s[i][j] for j in range(n)] for i in range(n)]
    return s, nmat


def invert(mat, m):
    n = len(mat)
    aug = [list(row) + list(irow) for row, irow in zip(mat, identity(n, m))]
    rows, pivots = rref(aug, m)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in rows[:n]]
