"""Jordan canonical form data: build, validate, and exact recovery.

No floating eigenvalue solver lives here on purpose.  Exact callers supply
candidate eigenvalues and the block sizes are recovered from rank sequences
(the Weyr characteristic); float callers supply (P, spec) directly and
``validate_similarity`` gates all downstream use.
"""

from dataclasses import dataclass

from .core import DEFAULT_TOL, EXACT, FLOAT, Matrix, approx_eq, matrix_from_obj, matrix_to_obj
from .errors import (
    IncompleteSpectrum,
    InvalidSpec,
    MalformedInput,
    ModeMismatch,
    NotSupported,
    SingularMatrix,
    ZeroEigenvalue,
)
from .scalars import QQi, frac_str


@dataclass(frozen=True)
class EigenBlocks:
    """One distinct eigenvalue with its descending Jordan block sizes."""

    lam: object  # QQi (exact) or complex (float)
    sizes: tuple

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        object.__setattr__(self, "sizes", sizes)
        if not sizes or any(s < 1 for s in sizes):
            raise InvalidSpec("block sizes must be positive")
        if list(sizes) != sorted(sizes, reverse=True):
            raise InvalidSpec("block sizes must be descending")
        if self.mode == EXACT:
            if self.lam.is_zero():
                raise InvalidSpec("eigenvalues must be nonzero")
        elif self.lam == 0:
            raise InvalidSpec("eigenvalues must be nonzero")

    @property
    def mode(self):
        return EXACT if isinstance(self.lam, QQi) else FLOAT

    @property
    def t(self):
        """Geometric multiplicity: the number of Jordan blocks."""
        return len(self.sizes)

    @property
    def dim(self):
        return sum(self.sizes)


@dataclass(frozen=True)
class JordanSpec:
    """Distinct nonzero eigenvalues with block sizes, plus an optional
    similarity matrix P mapping J to the target (target = P J P^-1)."""

    eigenvalues: tuple
    P: Matrix = None

    def __post_init__(self):
        eigs = tuple(self.eigenvalues)
        object.__setattr__(self, "eigenvalues", eigs)
        if not eigs:
            raise InvalidSpec("at least one eigenvalue required")
        modes = {e.mode for e in eigs}
        if len(modes) > 1:
            raise ModeMismatch("mixed eigenvalue modes")
        lams = [e.lam for e in eigs]
        if len({_lam_key(x) for x in lams}) != len(lams):
            raise InvalidSpec("eigenvalues must be distinct")
        if self.P is not None:
            if not self.P.is_square or self.P.rows != self.r:
                raise InvalidSpec("P has the wrong shape")

    @property
    def mode(self):
        return self.eigenvalues[0].mode

    @property
    def s(self):
        return len(self.eigenvalues)

    @property
    def r(self):
        return sum(e.dim for e in self.eigenvalues)

    @property
    def block_sizes(self):
        """All Jordan block sizes in global (eigenvalue-major) order."""
        return [k for e in self.eigenvalues for k in e.sizes]

    @property
    def multiplicities(self):
        return [e.t for e in self.eigenvalues]


def _lam_key(lam):
    if isinstance(lam, QQi):
        return (lam.re, lam.im)
    return complex(lam)


def make_spec(pairs, P=None, mode=EXACT) -> JordanSpec:
    """Convenience builder: pairs of (eigenvalue, sizes)."""
    eigs = []
    for lam, sizes in pairs:
        if mode == EXACT:
            lam = QQi.coerce(lam)
        else:
            lam = complex(lam)
        eigs.append(EigenBlocks(lam, tuple(sizes)))
    return JordanSpec(tuple(eigs), P)


def single_jordan_block(lam, size, mode) -> Matrix:
    if mode == FLOAT:
        rows = [[complex(lam) if i == j else (1.0 if j == i + 1 else 0.0)
                 for j in range(size)] for i in range(size)]
        return Matrix.floating(rows)
    lam = QQi.coerce(lam)
    rows = [[lam if i == j else (1 if j == i + 1 else 0) for j in range(size)]
            for i in range(size)]
    return Matrix.exact(rows)


def build_jordan_matrix(spec: JordanSpec) -> Matrix:
    """The block-diagonal Jordan matrix J described by the spec."""
    mode = spec.mode
    blocks = [single_jordan_block(e.lam, k, mode) for e in spec.eigenvalues for k in e.sizes]
    return block_diag(blocks, mode)


def block_diag(blocks, mode) -> Matrix:
    if not blocks:
        return Matrix.zeros(0, 0, mode)
    n = sum(b.rows for b in blocks)
    grid = []
    off = 0
    for b in blocks:
        row = []
        if off:
            row.append(Matrix.zeros(b.rows, off, mode))
        row.append(b)
        right = n - off - b.cols
        if right:
            row.append(Matrix.zeros(b.rows, right, mode))
        grid.append(row)
        off += b.rows
    return Matrix.from_blocks(grid)


def weyr_structure(m: Matrix, candidate_eigenvalues) -> JordanSpec:
    """Recover Jordan block sizes of an exact nonsingular matrix from the
    rank sequence of (m - lam I)^k per candidate eigenvalue.

    Raises IncompleteSpectrum when the multiplicities do not sum to the
    dimension (wrong or missing candidates) and ZeroEigenvalue for a zero
    candidate.
    """
    if m.mode != EXACT:
        raise NotSupported("weyr_structure is exact-mode only")
    m.require_square()
    n = m.rows
    eigs = []
    total = 0
    for lam in candidate_eigenvalues:
        lam = QQi.coerce(lam)
        if lam.is_zero():
            raise ZeroEigenvalue("candidate eigenvalue 0 is not allowed")
        shifted = m - Matrix.identity(n, EXACT).scale(lam)
        ranks = [n]
        power = Matrix.identity(n, EXACT)
        while True:
            power = power @ shifted
            rk = power.rank()
            ranks.append(rk)
            if rk == ranks[-2]:
                break
        mult = n - ranks[-1]
        if mult == 0:
            continue
        # number of blocks of size >= k is ranks[k-1] - ranks[k]
        geq = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
        sizes = []
        for k in range(len(geq), 0, -1):
            exactly = geq[k - 1] - (geq[k] if k < len(geq) else 0)
            sizes.extend([k] * exactly)
        eigs.append(EigenBlocks(lam, tuple(sizes)))
        total += mult
    if total != n:
        raise IncompleteSpectrum(
            f"multiplicities sum to {total}, dimension is {n}")
    return JordanSpec(tuple(eigs), None)


def validate_similarity(p: Matrix, spec: JordanSpec, m: Matrix, tol=DEFAULT_TOL) -> bool:
    """True iff p is nonsingular and p J p^-1 matches m."""
    if not p.is_square or p.rows != spec.r or m.rows != spec.r or not m.is_square:
        return False
    if p.rank(tol) < p.rows:
        return False
    j = build_jordan_matrix(spec)
    try:
        return approx_eq(p @ j @ p.inverse(), m, tol)
    except SingularMatrix:
        return False


# ----------------------------------------------------------------------
# JSON


def _lam_to_obj(lam):
    if isinstance(lam, QQi):
        return [frac_str(lam.re), frac_str(lam.im)]
    return [float(lam.real), float(lam.imag)]


def _lam_from_obj(obj):
    re, im = obj
    if isinstance(re, str) or isinstance(im, str):
        return QQi(re, im)
    return complex(float(re), float(im))


def spec_to_obj(spec: JordanSpec):
    return {
        "eigenvalues": [
            {"lambda": _lam_to_obj(e.lam), "sizes": list(e.sizes)}
            for e in spec.eigenvalues
        ],
        "P": matrix_to_obj(spec.P) if spec.P is not None else None,
    }


def spec_from_obj(obj) -> JordanSpec:
    try:
        eigs = tuple(
            EigenBlocks(_lam_from_obj(e["lambda"]), tuple(e["sizes"]))
            for e in obj["eigenvalues"]
        )
        p = matrix_from_obj(obj["P"]) if obj.get("P") is not None else None
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise MalformedInput(f"bad JordanSpec object: {exc}") from exc
    return JordanSpec(eigs, p)
