"""Moore-Penrose inverse, matrix index test, group inverse, EP test."""

from .core import DEFAULT_TOL, EXACT, Matrix, approx_eq, exact_rref, svd
from .errors import IndexTooLarge


def moore_penrose(a: Matrix, tol=DEFAULT_TOL) -> Matrix:
    """The Moore-Penrose inverse.

    Float mode inverts the retained singular values of the SVD; exact mode
    goes through a full-rank factorization a = F G with
    a+ = G* (F* a G*)^-1 F*.  The zero matrix maps to the zero transpose.
    """
    if a.mode == EXACT:
        return _exact_mp(a)
    u, sigma, v = svd(a)
    if not sigma or sigma[0] == 0.0:
        return Matrix.zeros(a.cols, a.rows, a.mode)
    cut = tol.rank_threshold_factor * sigma[0]
    r = sum(1 for s in sigma if s > cut)
    if r == 0:
        return Matrix.zeros(a.cols, a.rows, a.mode)
    ur = u.block(0, a.rows, 0, r)
    vr = v.block(0, a.cols, 0, r)
    sinv = Matrix.diag([1.0 / s for s in sigma[:r]], a.mode)
    return vr @ sinv @ ur.H


def _exact_mp(a: Matrix) -> Matrix:
    rref, pivots = exact_rref(a)
    r = len(pivots)
    if r == 0:
        return Matrix.zeros(a.cols, a.rows, EXACT)
    f = Matrix.from_blocks([[a.block(0, a.rows, j, j + 1) for j in pivots]])
    g = rref.block(0, r, 0, a.cols)
    mid = (f.H @ a @ g.H).inverse()
    return g.H @ mid @ f.H


_INDEX_CACHE = {}
_INDEX_CACHE_CAP = 4096


def index_le_one(a: Matrix, tol=DEFAULT_TOL) -> bool:
    """True iff rank(a^2) = rank(a), i.e. the group inverse exists."""
    a.require_square()
    if a.mode != EXACT:
        return (a @ a).rank(tol) == a.rank(tol)
    # exact ranks do not depend on the tolerance, so the answer is cacheable
    k = a.key()
    hit = _INDEX_CACHE.get(k)
    if hit is None:
        hit = (a @ a).rank() == a.rank()
        if len(_INDEX_CACHE) >= _INDEX_CACHE_CAP:
            _INDEX_CACHE.clear()
        _INDEX_CACHE[k] = hit
    return hit


def group_inverse(a: Matrix, tol=DEFAULT_TOL) -> Matrix:
    """The group inverse a# of an index <= 1 matrix.

    Exact mode uses a# = a (a^3)+ a; float mode goes through the
    Hartwig-Spindelbock decomposition.  Raises IndexTooLarge when
    rank(a^2) < rank(a).
    """
    a.require_square()
    if not index_le_one(a, tol):
        raise IndexTooLarge("matrix has index greater than 1")
    if a.is_zero(tol):
        return Matrix.zeros(a.rows, a.cols, a.mode)
    if a.mode == EXACT:
        a3 = a @ a @ a
        return a @ moore_penrose(a3) @ a
    from .hs import hs_decompose, predecessor_block_group_inverse

    d = hs_decompose(a, tol)
    return predecessor_block_group_inverse(d, Matrix.identity(d.r, a.mode))


def is_ep(b: Matrix, tol=DEFAULT_TOL) -> bool:
    """True iff b b+ = b+ b, i.e. range(b) = range(b*)."""
    b.require_square()
    bp = moore_penrose(b, tol)
    return approx_eq(b @ bp, bp @ b, tol)
