"""DOT (Graphviz) rendering of a finite skeleton of the down-set poset.

The full poset is infinite whenever some eigenvalue has two or more Jordan
blocks, so the rendering shows the Boolean center plus a configurable number
of sampled mid-rank antichain representatives per such eigenvalue, with an
ellipsis node standing in for the rest of each antichain.
"""

from .commutant import sample_delta_projector
from .core import DEFAULT_TOL, EXACT, approx_eq
from .errors import BudgetExceeded
from .jordan import JordanSpec
from .lattice import boolean_center
from .sharp import proj_leq

MAX_NODES = 64


def _dedupe(mats, tol):
    out = []
    seen = set()
    for m in mats:
        if m.mode == EXACT:
            k = m.key()
            if k in seen:
                continue
            seen.add(k)
            out.append(m)
        else:
            if any(approx_eq(m, x, tol) for x in out):
                continue
            out.append(m)
    return out


def hasse_skeleton(spec: JordanSpec, seed=0, antichain_samples=3, tol=DEFAULT_TOL):
    """Nodes (matrix, role, factor index) and the sampled-factor indices.

    Roles are "center" and "sample"; factor index is the eigenvalue the
    sample belongs to (None for center nodes).
    """
    nodes = [(cp.expand(), "center", None) for cp in boolean_center(spec)]
    sampled_factors = []
    for j, e in enumerate(spec.eigenvalues):
        if e.t < 2:
            continue
        sampled_factors.append(j)
        # one nonzero bit: the largest block of this eigenvalue only
        bits = []
        for jj, ee in enumerate(spec.eigenvalues):
            bits.extend([1 if (jj == j and i == 0) else 0 for i in range(ee.t)])
        samples = []
        for i in range(antichain_samples):
            cp = sample_delta_projector(spec, seed * 7919 + j * 131 + i,
                                        block_choices=bits, tol=tol)
            samples.append(cp.expand())
        center_mats = [n[0] for n in nodes]
        for m in _dedupe(samples, tol):
            if any(approx_eq(m, c, tol) for c in center_mats):
                continue
            nodes.append((m, "sample", j))
    return nodes, sampled_factors


def hasse_dot(spec: JordanSpec, seed=0, antichain_samples=3,
              max_nodes=MAX_NODES, tol=DEFAULT_TOL) -> str:
    """The DOT digraph of the skeleton; edges are covering relations among
    the emitted nodes, directed low to high."""
    nodes, sampled_factors = hasse_skeleton(spec, seed, antichain_samples, tol)
    if len(nodes) + len(sampled_factors) > max_nodes:
        raise BudgetExceeded(f"skeleton exceeds {max_nodes} nodes")
    n = len(nodes)
    mats = [x[0] for x in nodes]
    ranks = [m.rank(tol) for m in mats]
    leq = [[i != k and proj_leq(mats[i], mats[k], tol) for k in range(n)]
           for i in range(n)]
    covers = []
    for i in range(n):
        for k in range(n):
            if not leq[i][k]:
                continue
            if any(leq[i][w] and leq[w][k] for w in range(n)):
                continue
            covers.append((i, k))

    lines = ["digraph downset {", "  rankdir=BT;"]
    for i, (m, role, j) in enumerate(nodes):
        lines.append(f'  n{i} [label="rank {ranks[i]} ({role})"];')
    for j in sampled_factors:
        lines.append(
            f'  e{j} [label="infinite antichain (factor {j})", shape=plaintext];')
    for i, k in covers:
        lines.append(f"  n{i} -> n{k};")
    # tie each ellipsis to the same neighbors as that factor's first sample
    for j in sampled_factors:
        first = next((i for i, x in enumerate(nodes)
                      if x[1] == "sample" and x[2] == j), None)
        if first is None:
            continue
        for i, k in covers:
            if k == first:
                lines.append(f"  n{i} -> e{j} [style=dashed];")
            if i == first:
                lines.append(f"  e{j} -> n{k} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
