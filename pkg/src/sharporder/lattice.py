"""Meets, joins, and the structure of the down-set [O, B].

The down-set of B under the sharp order is isomorphic to the poset of
projectors commuting with the Jordan form J of the core block, which
factors across eigenvalues.  Each factor is a 2-chain (one Jordan block),
a bounded poset with an infinite mid-rank antichain (two blocks), or not
a lattice at all (three or more blocks).
"""

from dataclasses import dataclass, field

from .commutant import (
    CommutantProjector,
    CullenBlock,
    RUTM,
    admissible_ranks,
    delta_membership,
)
from .core import DEFAULT_TOL, EXACT, FLOAT, Matrix, approx_eq, exact_rref, is_projector
from .errors import (
    IndexTooLarge,
    NoEligibleEigenvalue,
    NonCommuting,
    NonSquare,
    NotInTau,
    NotSupported,
    PrecondViolated,
    ShapeMismatch,
)
from .ginv import index_le_one, moore_penrose
from .hs import HSDecomposition, hs_reconstruct
from .jordan import JordanSpec, block_diag
from .sharp import phi, phi_inv, proj_leq, psi, sharp_leq


def meet_commuting(t1: Matrix, t2: Matrix, tol=DEFAULT_TOL) -> Matrix:
    """Infimum T1 T2 of two commuting projectors."""
    if not approx_eq(t1 @ t2, t2 @ t1, tol):
        raise NonCommuting("projectors do not commute")
    return t1 @ t2


def join_commuting(t1: Matrix, t2: Matrix, tol=DEFAULT_TOL) -> Matrix:
    """Supremum T1 + T2 - T1 T2 of two commuting projectors."""
    if not approx_eq(t1 @ t2, t2 @ t1, tol):
        raise NonCommuting("projectors do not commute")
    return t1 + t2 - t1 @ t2


def matrix_meet(a1: Matrix, a2: Matrix, hs: HSDecomposition, tol=DEFAULT_TOL) -> Matrix:
    """The meet A1 B+ A2 of two predecessors of B whose projector images
    commute."""
    t1 = phi(a1, hs, tol)
    t2 = phi(a2, hs, tol)
    if not approx_eq(t1 @ t2, t2 @ t1, tol):
        raise NonCommuting("projector images do not commute")
    b = hs_reconstruct(hs)
    return a1 @ moore_penrose(b, tol) @ a2


def complement_in_downset(t: Matrix, r: int, tol=DEFAULT_TOL) -> Matrix:
    """The complement I_r - T of a projector in a down-set of height r."""
    if not t.is_square or t.rows != r:
        raise ShapeMismatch(f"expected a {r}x{r} matrix")
    if not is_projector(t, tol):
        raise NotInTau("T is not idempotent")
    return Matrix.identity(r, t.mode) - t


# ----------------------------------------------------------------------
# classification

TWO_CHAIN = "two_chain"
BOUNDED_INFINITE_ANTICHAIN = "bounded_infinite_antichain"
NON_LATTICE = "non_lattice"


@dataclass(frozen=True)
class DownsetDescriptor:
    """Symbolic shape of [O, B], factored per eigenvalue of the core block."""

    s: int
    factors: tuple = field(default=())
    is_lattice: bool = False
    is_distributive: bool = False
    is_boolean: bool = False
    boolean_center_size: int = 0
    max_chain_length: int = 0

    def to_obj(self):
        return {
            "s": self.s,
            "factors": [dict(f) for f in self.factors],
            "is_lattice": self.is_lattice,
            "is_distributive": self.is_distributive,
            "is_boolean": self.is_boolean,
            "boolean_center_size": self.boolean_center_size,
            "max_chain_length": self.max_chain_length,
        }


def classify_downset(spec: JordanSpec) -> DownsetDescriptor:
    """Classify [O, B] from the Jordan structure of the core block.

    Lattice iff every eigenvalue has at most two Jordan blocks; Boolean iff
    every eigenvalue has exactly one (then the whole down-set has 2^s
    elements); any eigenvalue with two blocks already breaks distributivity.
    """
    factors = []
    for e in spec.eigenvalues:
        if e.t == 1:
            kind = TWO_CHAIN
            ranks = sorted({0, e.sizes[0]})
        elif e.t == 2:
            kind = BOUNDED_INFINITE_ANTICHAIN
            ranks = sorted(admissible_ranks(e.sizes[0], e.sizes[1]))
        else:
            kind = NON_LATTICE
            ranks = None
        entry = {"t": e.t, "sizes": list(e.sizes), "kind": kind}
        if ranks is not None:
            entry["rank_classes"] = ranks
        factors.append(tuple(entry.items()))
    is_lattice = all(e.t <= 2 for e in spec.eigenvalues)
    is_boolean = all(e.t == 1 for e in spec.eigenvalues)
    is_distributive = is_boolean
    blocks = sum(e.t for e in spec.eigenvalues)
    return DownsetDescriptor(
        s=spec.s,
        factors=tuple(factors),
        is_lattice=is_lattice,
        is_distributive=is_distributive,
        is_boolean=is_boolean,
        boolean_center_size=2 ** spec.s,
        max_chain_length=blocks + 1,
    )


def boolean_center(spec: JordanSpec):
    """The 2^s central projectors: per eigenvalue, D_j is O or the full
    identity of that eigenvalue's slice."""
    out = []
    for mask in range(2 ** spec.s):
        grids = []
        for j, e in enumerate(spec.eigenvalues):
            on = (mask >> j) & 1
            grid = []
            for i in range(e.t):
                row = []
                for k in range(e.t):
                    m = min(e.sizes[i], e.sizes[k])
                    core = RUTM.identity(m, spec.mode) if (on and i == k) \
                        else RUTM.zero(m, spec.mode)
                    row.append(CullenBlock(e.sizes[i], e.sizes[k], core))
                grid.append(tuple(row))
            grids.append(tuple(grid))
        out.append(CommutantProjector(spec, tuple(grids)))
    return out


# ----------------------------------------------------------------------
# the non-lattice witness


def non_lattice_witness(spec: JordanSpec, tol=DEFAULT_TOL):
    """Four projectors (T1, T2, T3, T4) commuting with J such that T1 and T2
    have no join and T3 and T4 have no meet.

    Requires some eigenvalue with at least three Jordan blocks; the first
    such eigenvalue (in spec order) is used, and the construction lives in
    its three largest blocks.
    """
    target = None
    for e in spec.eigenvalues:
        if e.t >= 3:
            target = e
            break
    if target is None:
        raise NoEligibleEigenvalue("no eigenvalue has three or more Jordan blocks")
    mode = spec.mode
    a, b, c = target.sizes[0], target.sizes[1], target.sizes[2]

    def zero(m, n):
        return Matrix.zeros(m, n, mode)

    def ident(n):
        return Matrix.identity(n, mode)

    x = Matrix.from_blocks([[ident(b)], [zero(a - b, b)]]) if a > b else ident(b)
    y = Matrix.from_blocks([[zero(c, b - c), ident(c)]]) if b > c else ident(c)
    g1 = Matrix.from_blocks([
        [zero(a, a), x, zero(a, c)],
        [zero(b, a), ident(b), zero(b, c)],
        [zero(c, a), zero(c, b), zero(c, c)],
    ])
    g2 = Matrix.from_blocks([
        [zero(a, a), x, zero(a, c)],
        [zero(b, a), ident(b), zero(b, c)],
        [zero(c, a), y, zero(c, c)],
    ])
    g3 = Matrix.from_blocks([
        [zero(a, a), x, zero(a, c)],
        [zero(b, a), ident(b), zero(b, c)],
        [zero(c, a), zero(c, b), ident(c)],
    ])
    if a == b:
        z = Matrix.from_blocks([[zero(c, a - c), -ident(c)]]) if a > c else -ident(c)
        row3 = [z, y, ident(c)]
    else:
        neg_one = -1.0 if mode == FLOAT else -1
        entries = [[neg_one if (i, j) == (0, a - 1) else 0 for j in range(a)]
                   for i in range(c)]
        z = Matrix.floating(entries) if mode == FLOAT else Matrix.exact(entries)
        row3 = [z, zero(c, b), ident(c)]
    g4 = Matrix.from_blocks([
        [zero(a, a), x, zero(a, c)],
        [zero(b, a), ident(b), zero(b, c)],
        row3,
    ])

    quad = tuple(_embed_witness(spec, target, g, mode) for g in (g1, g2, g3, g4))
    t1, t2, t3, t4 = quad
    ok = (all(delta_membership(t, spec, tol) for t in quad)
          and proj_leq(t1, t3, tol) and proj_leq(t1, t4, tol)
          and proj_leq(t2, t3, tol) and proj_leq(t2, t4, tol)
          and not proj_leq(t1, t2, tol) and not proj_leq(t2, t1, tol)
          and not proj_leq(t3, t4, tol) and not proj_leq(t4, t3, tol))
    if not ok:
        raise PrecondViolated("witness construction failed validation")
    return quad


def _embed_witness(spec, target, g, mode):
    """Place g in the leading three blocks of the target eigenvalue, zero
    everywhere else."""
    diag = []
    for e in spec.eigenvalues:
        if e is target:
            rest = e.dim - g.rows
            if rest:
                diag.append(Matrix.from_blocks([
                    [g, Matrix.zeros(g.rows, rest, mode)],
                    [Matrix.zeros(rest, g.cols, mode), Matrix.zeros(rest, rest, mode)],
                ]))
            else:
                diag.append(g)
        else:
            diag.append(Matrix.zeros(e.dim, e.dim, mode))
    return block_diag(diag, mode)


# ----------------------------------------------------------------------
# intervals and chains


def interval_iso_forward(pproj: Matrix, t1: Matrix, t2: Matrix = None,
                         tol=DEFAULT_TOL) -> Matrix:
    """Map [O, T2 - T1] onto [T1, T2] by P -> P + T1.

    When t2 is supplied, membership of pproj in [O, T2 - T1] is enforced.
    """
    if not is_projector(pproj, tol):
        raise PrecondViolated("interval element is not idempotent")
    if t2 is not None and not proj_leq(pproj, t2 - t1, tol):
        raise PrecondViolated("element does not lie below T2 - T1")
    return pproj + t1


def interval_iso_backward(q: Matrix, t1: Matrix, tol=DEFAULT_TOL) -> Matrix:
    """Inverse map [T1, T2] -> [O, T2 - T1], Q -> Q - T1."""
    if not proj_leq(t1, q, tol):
        raise PrecondViolated("element does not lie above T1")
    return q - t1


def max_chain(hs: HSDecomposition, spec: JordanSpec, tol=DEFAULT_TOL):
    """A maximal chain O < A_1 < ... < A_l = B, one step per Jordan block.

    Uses the cumulative-block projectors E_i (identity on the first i blocks
    of J) conjugated into tau by the spec's similarity matrix.
    """
    p = spec.P if spec.P is not None else Matrix.identity(spec.r, FLOAT)
    sizes = spec.block_sizes
    chain = [Matrix.zeros(hs.n, hs.n, FLOAT)]
    off = 0
    for sz in sizes:
        off += sz
        e = block_diag([Matrix.identity(off, FLOAT),
                        Matrix.zeros(spec.r - off, spec.r - off, FLOAT)], FLOAT)
        chain.append(phi_inv(psi(e, p), hs, tol))
    return chain


# ----------------------------------------------------------------------
# the global meet in dimension 2


def _kernel_vec_2(m: Matrix):
    """A nonzero kernel vector of an exact 2x2 rank-1 matrix, as a 2x1 Matrix."""
    red, pivots = exact_rref(m)
    if pivots == [0]:
        c = red[0, 1]
        return Matrix.exact([[(-c.re, -c.im)], [1]])
    # pivot in column 1 (or no pivot): e1 is in the kernel
    return Matrix.exact([[1], [0]])


def meet_in_c2(b1: Matrix, b2: Matrix, tol=DEFAULT_TOL) -> Matrix:
    """The infimum of two 2x2 index <= 1 matrices under the sharp order.

    Exact mode only.  Any nonzero common lower bound A satisfies
    A(B1-B2) = (B1-B2)A = O, which in dimension 2 pins A down to a single
    rank-1 candidate built from a shared eigenpair; otherwise the meet is O.
    """
    if b1.mode != EXACT or b2.mode != EXACT:
        raise NotSupported("meet_in_c2 is exact-mode only")
    if b1.rows != 2 or b2.rows != 2 or not (b1.is_square and b2.is_square):
        raise NonSquare("arguments must be 2x2")
    if not index_le_one(b1, tol):
        raise IndexTooLarge("first argument has index > 1")
    if not index_le_one(b2, tol):
        raise IndexTooLarge("second argument has index > 1")
    if b1 == b2:
        return b1
    # both arguments are validated above, so the raw A^2 = AB = BA
    # predicate suffices for the comparability shortcuts
    sq1 = b1 @ b1
    if approx_eq(sq1, b1 @ b2, tol) and approx_eq(sq1, b2 @ b1, tol):
        return b1
    sq2 = b2 @ b2
    if approx_eq(sq2, b2 @ b1, tol) and approx_eq(sq2, b1 @ b2, tol):
        return b2
    d = b1 - b2
    if d.rank() == 2:
        return Matrix.zeros(2, 2, EXACT)
    x0 = _kernel_vec_2(d)
    y0 = _kernel_vec_2(d.T)
    w = b1 @ x0
    # proportionality w = mu * x0
    if not (w[0, 0] * x0[1, 0] - w[1, 0] * x0[0, 0]).is_zero():
        return Matrix.zeros(2, 2, EXACT)
    mu = w[0, 0] / x0[0, 0] if not x0[0, 0].is_zero() else w[1, 0] / x0[1, 0]
    if mu.is_zero():
        return Matrix.zeros(2, 2, EXACT)
    v = b1.T @ y0
    if not approx_eq(v, y0.scale(mu)):
        return Matrix.zeros(2, 2, EXACT)
    inner = (y0.T @ x0)[0, 0]
    if inner.is_zero():
        return Matrix.zeros(2, 2, EXACT)
    a = (x0 @ y0.T).scale(mu / inner)
    if sharp_leq(a, b1, tol) and sharp_leq(a, b2, tol):
        return a
    return Matrix.zeros(2, 2, EXACT)
