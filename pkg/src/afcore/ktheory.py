"""Invariants of the fixed-point (gauge-invariant) subalgebra tower.

Everything is driven by the vertex adjacency matrix ``Gamma`` in exact
integer arithmetic:

* ``walk_counts(g, k)``: the vector ``m_k`` whose entry at vertex ``v``
  counts length-``k`` walks with range ``v`` (column sums of ``Gamma^k``;
  negative ``k`` needs a unimodular ``Gamma``).
* ``bratteli``/``emit_dot``: the multiplicity diagram of the tower.
* ``k0``: the ordered ``K_0`` bookkeeping — free on the vertex
  projections when ``|det Gamma| = 1``, otherwise a colimit of integer
  lattices along ``Gamma^T``.
* ``line_class(g, k)``: the coordinate vector of the canonical "power
  ``k`` line element" class; ``atiyah_todd`` produces the exact recursions
  these classes satisfy; ``phi`` is the ring identification with
  ``Z[x]/(p)`` for ``p = det(t Gamma - 1)``.

Coordinate convention: all class vectors are *row* vectors in vertex
declaration order, and matrices act on the right.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import ClassVar

from . import graphs, linalg
from .errors import NotUnimodular, SinkError, SourceError
from .graphs import Graph
from .linalg import Matrix
from .report import CheckReport


def walk_counts(g: Graph, k: int) -> tuple:
    """Entry per vertex: number of length-``k`` walks ending there.

    For ``k < 0`` these are the alternating-sign entries coming from
    ``Gamma^k``; that requires ``Gamma`` unimodular.
    """
    gamma = graphs.adjacency(g)
    return linalg.col_sums(linalg.power(gamma, k))


# -- Bratteli diagram of the tower ------------------------------------------


@dataclass(frozen=True)
class BratteliDiagram:
    """Levels 1..depth of the tower; the root (level 0) is implicit.

    ``levels[k-1]`` lists ``(vertex, size)`` pairs at level ``k`` in vertex
    order, omitting zero sizes; the size at level ``k`` over vertex ``v``
    is the number of length-``k-1`` walks ending at ``v``.  Edges go from
    level ``k`` at ``v`` to level ``k+1`` at ``w`` with multiplicity
    ``Gamma[v][w]``.
    """

    graph: Graph
    depth: int
    levels: tuple


def bratteli(g: Graph, depth: int) -> BratteliDiagram:
    if depth < 1:
        raise ValueError(f"depth must be at least 1, got {depth}")
    if g.sinks():
        raise SinkError(
            f"graph {g.name!r} has sinks {list(g.sinks())}; "
            f"the tower sizes assume every vertex emits an edge"
        )
    gamma = graphs.adjacency(g)
    levels = []
    sizes = (1,) * g.n_vertices  # level 1 sizes: one length-0 walk per vertex
    for k in range(1, depth + 1):
        levels.append(
            tuple((v, sizes[i]) for i, v in enumerate(g.vertices) if sizes[i] > 0)
        )
        sizes = linalg.row_vec_mul(sizes, gamma)
    diagram = BratteliDiagram(g, depth, tuple(levels))
    # invariant: each level's sizes satisfy the multiplicity recursion
    for k in range(1, depth):
        prev = dict(diagram.levels[k - 1])
        for w, size in diagram.levels[k]:
            j = g.vertex_index(w)
            expected = sum(
                prev.get(v, 0) * gamma[(g.vertex_index(v), j)] for v in g.vertices
            )
            assert size == expected, f"size recursion failed at level {k + 1}, {w!r}"
    return diagram


def emit_dot(d: BratteliDiagram) -> str:
    """Graphviz rendering; deterministic node and edge order.

    Node labels are the matrix orders; edge multiplicities above 1 are
    labelled ``xM``.
    """
    g = d.graph
    gamma = graphs.adjacency(g)
    lines = ["digraph bratteli {", "  rankdir=LR;", '  root [label="1"];']
    for k, level in enumerate(d.levels, start=1):
        for v, size in level:
            lines.append(f'  v{v}_{k} [label="{size}"];')
    for v, _ in d.levels[0]:
        lines.append(f"  root -> v{v}_1;")
    for k in range(1, d.depth):
        present_next = {v for v, _ in d.levels[k]}
        for v, _ in d.levels[k - 1]:
            i = g.vertex_index(v)
            for w in g.vertices:
                if w not in present_next:
                    continue
                mult = gamma[(i, g.vertex_index(w))]
                if mult == 0:
                    continue
                suffix = f' [label="x{mult}"]' if mult > 1 else ""
                lines.append(f"  v{v}_{k} -> v{w}_{k + 1}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- K0 presentations ---------------------------------------------------------


@dataclass(frozen=True)
class K0Class:
    """A class given by a row vector of vertex coordinates at a tower level.

    For free presentations the level is always 0.  For colimit
    presentations the vector lists coordinates over *all* vertices, with
    zeros outside the supported set at that level.
    """

    vector: tuple
    level: int = 0

    def scale(self, c: int) -> "K0Class":
        return K0Class(tuple(c * x for x in self.vector), self.level)

    def add(self, other: "K0Class") -> "K0Class":
        if self.level != other.level:
            raise ValueError("can only add classes at equal levels")
        return K0Class(
            tuple(a + b for a, b in zip(self.vector, other.vector)), self.level
        )


@dataclass(frozen=True)
class FreeK0:
    """K0 free of rank n on the vertex projection classes."""

    kind: ClassVar[str] = "free"
    graph: Graph
    rank: int
    basis: tuple


@dataclass(frozen=True)
class ColimitK0:
    """K0 as a colimit of integer lattices along the transposed adjacency.

    ``supports[k]`` lists the vertex indices carrying level-``k`` summands
    (vertices reached by some length-``k`` walk); supports shrink with
    ``k`` and stabilize after at most ``n`` steps at ``stable_level``.
    ``rank`` is the rank of the stable connecting map iterated until its
    image saturates.
    """

    kind: ClassVar[str] = "colimit"
    graph: Graph
    supports: tuple
    stable_level: int
    rank: int

    def support(self, k: int) -> tuple:
        return self.supports[min(k, self.stable_level)]

    def lattice_dim(self, k: int) -> int:
        return len(self.support(k))


def colimit_presentation(g: Graph) -> ColimitK0:
    """The colimit bookkeeping, available for any sink-free graph."""
    if g.sinks():
        raise SinkError(
            f"graph {g.name!r} has sinks {list(g.sinks())}; K0 of the tower "
            f"is computed for emission-complete graphs only"
        )
    n = g.n_vertices
    supports = [tuple(range(n))]
    while True:
        cur = supports[-1]
        nxt = tuple(
            sorted(
                {
                    g.vertex_index(e.dst)
                    for i in cur
                    for e in g.out_edges(g.vertices[i])
                }
            )
        )
        if nxt == cur:
            break
        supports.append(nxt)
        assert len(supports) <= n + 1, "supports must stabilize within n steps"
    stable = supports[-1]
    gamma = graphs.adjacency(g)
    restricted = Matrix(
        [[gamma[(i, j)] for i in stable] for j in stable]
    )  # maps x -> Gamma^T x on the stable block
    rank = linalg.rank_Q(linalg.power(restricted, max(len(stable), 1)))
    return ColimitK0(
        graph=g,
        supports=tuple(supports),
        stable_level=len(supports) - 1,
        rank=rank,
    )


def k0(g: Graph):
    """The K0 presentation: free when ``|det Gamma| = 1``, else a colimit."""
    if g.sinks():
        raise SinkError(
            f"graph {g.name!r} has sinks {list(g.sinks())}; K0 of the tower "
            f"is computed for emission-complete graphs only"
        )
    gamma = graphs.adjacency(g)
    if linalg.det(gamma) in (1, -1):
        return FreeK0(graph=g, rank=g.n_vertices, basis=g.vertices)
    return colimit_presentation(g)


def _check_class(pres, cls: K0Class) -> None:
    n = pres.graph.n_vertices
    if len(cls.vector) != n:
        raise ValueError(f"class vector has length {len(cls.vector)}, expected {n}")
    if cls.level < 0:
        raise ValueError("class level must be nonnegative")
    if isinstance(pres, FreeK0):
        if cls.level != 0:
            raise ValueError("free presentations carry all classes at level 0")
    else:
        supp = set(pres.support(cls.level))
        bad = [i for i, c in enumerate(cls.vector) if c != 0 and i not in supp]
        if bad:
            raise ValueError(
                f"class has weight at unsupported vertex indices {bad} "
                f"for level {cls.level}"
            )


def push_class(pres: ColimitK0, cls: K0Class) -> K0Class:
    """One connecting step of the colimit: ``x -> x Gamma`` read as columns.

    Coordinates move along ``new[w] = sum_v Gamma[v][w] x[v]``; the result
    automatically vanishes outside the next support.
    """
    gamma = graphs.adjacency(pres.graph)
    return K0Class(linalg.row_vec_mul(cls.vector, gamma), cls.level + 1)


def k0_equal(pres, a: K0Class, b: K0Class) -> bool:
    """Exact equality of classes in the presentation.

    Free case: vector equality.  Colimit case: bring both to a common
    level and push the difference; classes agree iff the difference dies
    within ``2n + 1`` further steps (supports stabilize within ``n`` steps
    and the kernel chain of the stable map within ``n`` more).
    """
    _check_class(pres, a)
    _check_class(pres, b)
    if isinstance(pres, FreeK0):
        return a.vector == b.vector
    gamma = graphs.adjacency(pres.graph)
    while a.level < b.level:
        a = push_class(pres, a)
    while b.level < a.level:
        b = push_class(pres, b)
    diff = tuple(x - y for x, y in zip(a.vector, b.vector))
    n = pres.graph.n_vertices
    for _ in range(2 * n + 2):
        if all(x == 0 for x in diff):
            return True
        diff = linalg.row_vec_mul(diff, gamma)
    return all(x == 0 for x in diff)


def q_class(pres, v: str, k: int) -> K0Class:
    """The class of the distinguished projection built from a length-``k``
    walk into ``v`` (zero class when no such walk exists)."""
    g = pres.graph
    i = g.vertex_index(v)
    if k < 0:
        raise ValueError("walk length must be nonnegative")
    if isinstance(pres, FreeK0):
        gamma = graphs.adjacency(g)
        return K0Class(linalg.power(gamma, -k).row(i), 0)
    supported = i in pres.support(k) and walk_counts(g, k)[i] > 0
    vec = tuple(1 if (j == i and supported) else 0 for j in range(g.n_vertices))
    return K0Class(vec, k)


def class_of_unit(g: Graph) -> K0Class:
    return K0Class((1,) * g.n_vertices, 0)


def line_class(g: Graph, k: int) -> K0Class:
    """Coordinates of the canonical class of degree ``k``.

    * ``k = 0``: the unit, i.e. the all-ones vector at level 0.
    * ``k < 0``: column sums of ``Gamma^|k|`` at level 0 (any sink-free
      graph).
    * ``k > 0`` with unimodular ``Gamma``: column sums of ``Gamma^-k`` at
      level 0.
    * ``k > 0`` otherwise: requires a source-free graph; the class is the
      sum of the level-``k`` distinguished projections, i.e. the support
      indicator at level ``k`` in the colimit.
    """
    if g.sinks():
        raise SinkError(
            f"graph {g.name!r} has sinks {list(g.sinks())}; "
            f"line classes live over emission-complete graphs"
        )
    n = g.n_vertices
    if k == 0:
        return K0Class((1,) * n, 0)
    gamma = graphs.adjacency(g)
    if k < 0:
        return K0Class(linalg.col_sums(linalg.power(gamma, -k)), 0)
    if linalg.det(gamma) in (1, -1):
        return K0Class(linalg.col_sums(linalg.power(gamma, -k)), 0)
    if g.sources():
        raise SourceError(
            f"graph {g.name!r} has sources {list(g.sources())} and a singular "
            f"adjacency matrix; positive-degree classes are not available"
        )
    pres = colimit_presentation(g)
    supp = set(pres.support(k))
    return K0Class(tuple(1 if i in supp else 0 for i in range(n)), k)


def colimit_to_free(g: Graph, cls: K0Class) -> K0Class:
    """Transport a level-``k`` colimit-style class to level-0 coordinates.

    Only meaningful when ``Gamma`` is unimodular (the two presentations
    then describe the same group); used as a cross-oracle.
    """
    gamma = graphs.adjacency(g)
    vec = linalg.row_vec_mul(cls.vector, linalg.power(gamma, -cls.level))
    return K0Class(vec, 0)


# -- exact class recursions ----------------------------------------------------


@dataclass(frozen=True)
class ATIdentity:
    """``[L_k] = sum_j coeff_j [L_j]`` over the adjacent degree window
    (``k-n..k-1`` when lowering, ``k+1..k+n`` when raising).

    ``coeffs`` is a tuple of ``(j, coeff)`` pairs in ascending ``j``;
    ``verified`` reports the exact coordinate-vector substitution check.
    """

    k: int
    coeffs: tuple
    verified: bool


def atiyah_todd(g: Graph, k: int) -> ATIdentity:
    """Derive and verify the degree-``k`` class recursion.

    Both directions come from ``sum_i c_i Gamma^-i = 0`` where
    ``(c_0..c_n) = rev_charpoly(Gamma)``: shifting by ``s`` gives
    ``sum_i c_i [L_(i+s)] = 0``.  For ``k >= n`` solve for the top term
    (degree-lowering); for ``k <= -1`` solve for the bottom term
    (degree-raising).  Degrees ``0 <= k < n`` are the base window and are
    rejected.  Requires a unimodular adjacency matrix.
    """
    gamma = graphs.adjacency(g)
    d = linalg.det(gamma)
    if d not in (1, -1):
        raise NotUnimodular(d)
    n = g.n_vertices
    c = linalg.rev_charpoly(gamma)
    if 0 <= k < n:
        raise ValueError(
            f"degree {k} lies in the base window 0..{n - 1}; "
            f"no recursion is needed there"
        )
    if k >= n:
        s = -c[n]  # c_n = det = +-1
        coeffs = {i + (k - n): s * c[i] for i in range(n) if c[i]}
    else:
        s = -c[0]  # c_0 = (-1)^n
        coeffs = {i + k: s * c[i] for i in range(1, n + 1) if c[i]}
    lhs = line_class(g, k).vector
    rhs = (0,) * n
    for j, coeff in coeffs.items():
        vec = line_class(g, j).vector
        rhs = tuple(r + coeff * x for r, x in zip(rhs, vec))
    return ATIdentity(k=k, coeffs=tuple(sorted(coeffs.items())), verified=lhs == rhs)


def line_class_matrix(g: Graph) -> Matrix:
    """The n x n matrix whose row ``k`` (0-based) is the vector of ``[L_k]``.

    Row ``k`` holds the column sums of ``Gamma^-k`` for ``k = 0..n-1``;
    requires a unimodular adjacency matrix.
    """
    gamma = graphs.adjacency(g)
    d = linalg.det(gamma)
    if d not in (1, -1):
        raise NotUnimodular(d)
    n = g.n_vertices
    return Matrix([linalg.col_sums(linalg.power(gamma, -k)) for k in range(n)])


def phi(g: Graph, cls: K0Class) -> linalg.QuotElem:
    """The ring identification: class coordinates -> ``Z[x]/(p)``.

    ``p = det(t Gamma - 1)``; the class vector is solved against the rows
    of :func:`line_class_matrix` (which must be unimodular as well), so
    ``phi([L_k]) = x^k`` by construction on the base window.
    """
    if cls.level != 0:
        raise ValueError("phi takes level-0 coordinate vectors")
    gamma = graphs.adjacency(g)
    p = linalg.rev_charpoly(gamma)
    mm = line_class_matrix(g)
    d = linalg.det(mm)
    if d not in (1, -1):
        raise NotUnimodular(d, what="line-class matrix")
    y = linalg.row_vec_mul(cls.vector, linalg.inv_unimodular(mm))
    return linalg.quot_make(p, y)


def verify_phi(g: Graph, depth: int) -> CheckReport:
    """Check ``phi([L_k]) = x^k`` for ``|k| <= depth``."""
    rep = CheckReport(f"phi on powers of the line class of {g.name!r}")
    gamma = graphs.adjacency(g)
    p = linalg.rev_charpoly(gamma)
    for k in range(-depth, depth + 1):
        got = phi(g, line_class(g, k))
        rep.add(f"phi([L_{k}]) = x^{k}", got == linalg.lambda_pow(p, k))
    return rep


def semiring_check(g: Graph, depth: int) -> CheckReport:
    """Check multiplicativity ``phi(L_j) phi(L_k) = phi(L_(j+k))``, honestly
    evaluating each side from computed classes."""
    rep = CheckReport(f"multiplicativity of phi on {g.name!r}")
    values = {k: phi(g, line_class(g, k)) for k in range(-2 * depth, 2 * depth + 1)}
    for j in range(-depth, depth + 1):
        for k in range(-depth, depth + 1):
            rep.add(
                f"phi(L_{j}) phi(L_{k}) = phi(L_{j + k})",
                values[j] * values[k] == values[j + k],
            )
    return rep


# -- the shift matrix ----------------------------------------------------------


def kk_matrix(g: Graph) -> Matrix:
    """The matrix of the degree shift on class vectors: ``Gamma^-1``.

    Row convention: ``line_class(k) @ kk_matrix = line_class(k+1)``.
    Requires both ``Gamma`` and the line-class matrix to be unimodular
    (the latter guarantees the shift acts on an honest basis of classes).
    """
    gamma = graphs.adjacency(g)
    mm_det = linalg.det(line_class_matrix(g))
    if mm_det not in (1, -1):
        raise NotUnimodular(mm_det, what="line-class matrix")
    return linalg.inv_unimodular(gamma)


def kk_report(g: Graph, depth: int = 6) -> CheckReport:
    rep = CheckReport(f"shift matrix checks on {g.name!r}")
    gamma = graphs.adjacency(g)
    kkm = kk_matrix(g)
    rep.add("shift matrix inverts the adjacency", kkm * gamma == Matrix.identity(g.n_vertices))
    for k in range(-depth, depth):
        lhs = linalg.row_vec_mul(line_class(g, k).vector, kkm)
        rep.add(
            f"[L_{k}] shifted = [L_{k + 1}]", lhs == line_class(g, k + 1).vector
        )
    rep.add("adjacency is non-derogatory", linalg.is_non_derogatory(gamma))
    rep.add("shift matrix is non-derogatory", linalg.is_non_derogatory(kkm))
    return rep


# -- single-vertex colimit embedding -------------------------------------------


def uhf_embed(n: int, cls: K0Class) -> Fraction:
    """Value of a single-vertex colimit class in the scaled rationals.

    For the one-vertex graph with ``n`` loops the level-``k`` lattice
    embeds by ``x -> x / n^k``; the minimal level-``k`` projection maps to
    ``n^-k``.
    """
    if n < 2:
        raise ValueError(f"need at least two loops, got n = {n}")
    if len(cls.vector) != 1:
        raise ValueError(
            "this embedding applies to single-vertex presentations only"
        )
    return Fraction(cls.vector[0], n ** cls.level)


# -- recursion among distinguished projection classes --------------------------


def verify_q_recursion(g: Graph, depth: int) -> CheckReport:
    """Check ``[Q_(v,k)] = sum_w Gamma[v][w] [Q_(w,k+1)]`` for ``k <= depth``.

    Verified for every vertex ``v`` with at least one length-``k`` walk
    into it; the right side adds classes at level ``k+1``.
    """
    rep = CheckReport(f"projection class recursion on {g.name!r}")
    pres = k0(g)
    gamma = graphs.adjacency(g)
    for k in range(depth + 1):
        counts = walk_counts(g, k)
        for v in g.vertices:
            i = g.vertex_index(v)
            if counts[i] == 0:
                continue
            lhs = q_class(pres, v, k)
            level = 0 if isinstance(pres, FreeK0) else k + 1
            total = K0Class((0,) * g.n_vertices, level)
            for w in g.vertices:
                mult = gamma[(i, g.vertex_index(w))]
                if mult:
                    total = total.add(q_class(pres, w, k + 1).scale(mult))
            rep.add(f"recursion at ({v}, {k})", k0_equal(pres, lhs, total))
    return rep


# -- aggregate report for the CLI ----------------------------------------------


def invariants_report(g: Graph, k_min: int = -3, k_max: int = 3) -> dict:
    """All computable invariants in plain data (ints, tuples, Fractions).

    Entries that need stronger hypotheses than the graph satisfies are
    replaced by a ``{"available": False, "reason": ...}`` marker rather
    than raising, so the report is total for any graph.
    """
    if k_min > k_max:
        raise ValueError(f"empty degree range {k_min}..{k_max}")
    gamma = graphs.adjacency(g)
    d = linalg.det(gamma)
    unimodular = d in (1, -1)
    out: dict = {
        "graph": g.name,
        "vertices": list(g.vertices),
        "gamma": [list(r) for r in gamma.rows],
        "det": d,
        "charpoly_reversed": list(linalg.rev_charpoly(gamma)),
    }

    m_table = {}
    for k in range(k_min, k_max + 1):
        if k < 0 and not unimodular:
            continue
        m_table[k] = list(walk_counts(g, k))
    out["m_table"] = m_table

    sink_free = not g.sinks()
    if sink_free:
        pres = k0(g)
        if isinstance(pres, FreeK0):
            out["k0"] = {"kind": "free", "rank": pres.rank, "basis": list(pres.basis)}
        else:
            out["k0"] = {
                "kind": "colimit",
                "rank": pres.rank,
                "stable_level": pres.stable_level,
                "supports": [list(s) for s in pres.supports],
            }
    else:
        out["k0"] = {
            "available": False,
            "reason": f"graph has sinks {list(g.sinks())}",
        }

    line_classes = []
    for k in range(k_min, k_max + 1):
        if not sink_free:
            line_classes.append(
                {"k": k, "available": False, "reason": "graph has sinks"}
            )
            continue
        try:
            cls = line_class(g, k)
            line_classes.append(
                {"k": k, "vector": list(cls.vector), "level": cls.level}
            )
        except (SourceError, NotUnimodular) as err:
            line_classes.append({"k": k, "available": False, "reason": str(err)})
    out["line_classes"] = line_classes

    if unimodular and sink_free:
        n = g.n_vertices
        identities = []
        for k in range(k_min, k_max + 1):
            if 0 <= k < n:
                continue
            ident = atiyah_todd(g, k)
            identities.append(
                {
                    "k": ident.k,
                    "coeffs": [[j, c] for j, c in ident.coeffs],
                    "verified": ident.verified,
                }
            )
        out["class_recursions"] = identities
        mm = line_class_matrix(g)
        out["line_class_matrix"] = [list(r) for r in mm.rows]
        if linalg.det(mm) in (1, -1):
            p = linalg.rev_charpoly(gamma)
            out["phi_modulus"] = list(linalg.lambda_pow(p, 0).modulus)
            out["phi_checks"] = [
                {
                    "k": k,
                    "residue": list(phi(g, line_class(g, k)).residue),
                    "matches_power": phi(g, line_class(g, k))
                    == linalg.lambda_pow(p, k),
                }
                for k in range(k_min, k_max + 1)
            ]
            out["kk"] = {
                "matrix": [list(r) for r in kk_matrix(g).rows],
                "checks_pass": kk_report(g, min(6, max(abs(k_min), abs(k_max)))).ok,
            }
        else:
            out["phi_checks"] = {
                "available": False,
                "reason": "line-class matrix is not unimodular",
            }
            out["kk"] = {
                "available": False,
                "reason": "line-class matrix is not unimodular",
            }
    elif sink_free and g.n_vertices == 1 and gamma[(0, 0)] >= 2:
        n_loops = gamma[(0, 0)]
        out["scaled_dimension_values"] = [
            {
                "k": k,
                "value": uhf_embed(n_loops, line_class(g, k)),
            }
            for k in range(k_min, k_max + 1)
        ]
    return out
