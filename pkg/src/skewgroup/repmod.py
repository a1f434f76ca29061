"""Modules over structure-constant algebras.

Provides hom spaces, simplicity tests, twisting by automorphisms, restriction
along subalgebra embeddings, and isotypic/multiplicity decomposition via a
random commutant element.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numeric
from .algebra import (
    Algebra,
    SubalgebraEmbedding,
    canonical_span,
    is_semisimple,
    EXHAUSTIVE_DIM_LIMIT,
)
from .errors import (
    AlgebraMismatch,
    DegenerateSample,
    InvalidInput,
    NotARepresentation,
    NotSemisimple,
    NumericalInconsistency,
)

# Relative eigenvalue gap below which a commutant sample is considered
# degenerate and gets reseeded.
EIG_GAP = 1e-6
MAX_DECOMPOSE_RETRIES = 8
_PROBE_COUNT = 20


@dataclass(frozen=True, eq=False)
class Module:
    algebra: Algebra
    dim: int
    rho: tuple                # one (dim, dim) matrix per algebra basis element

    def act(self, x) -> np.ndarray:
        """Action matrix of the element with coordinates x."""
        return np.einsum("i,iab->ab", np.asarray(x), self._stack())

    def _stack(self) -> np.ndarray:
        return np.stack(self.rho)


@dataclass(frozen=True, eq=False)
class Piece:
    basis: np.ndarray         # (dim M, d) orthonormal columns inside M
    iso_class: int
    module: Module            # compressed action on the piece


@dataclass(frozen=True, eq=False)
class Decomposition:
    module: Module
    pieces: tuple             # of Piece
    isotypics: dict           # iso class -> orthonormal basis in M
    multiplicity_spaces: dict  # iso class -> orthonormal basis in M
    representatives: dict     # iso class -> Piece

    def class_ids(self) -> list:
        return sorted(self.isotypics)

    def multiplicity(self, cls: int) -> int:
        return sum(1 for p in self.pieces if p.iso_class == cls)


def make_module(algebra: Algebra, rho, tol=None, seed=numeric.DEFAULT_SEED,
                _validate=True) -> Module:
    """Validate a representation given by one matrix per basis element."""
    tol = tol if tol is not None else algebra.tol
    mats = tuple(numeric.as_complex(m) for m in rho)
    if len(mats) != algebra.dim:
        raise InvalidInput("need one action matrix per algebra basis element")
    if not mats or mats[0].ndim != 2 or mats[0].shape[0] != mats[0].shape[1]:
        raise InvalidInput("action matrices must be square")
    d = mats[0].shape[0]
    if d == 0:
        raise InvalidInput("zero-dimensional module")
    if any(m.shape != (d, d) for m in mats):
        raise InvalidInput("inconsistent action matrix shapes")
    m = Module(algebra=algebra, dim=d, rho=mats)
    if _validate:
        validate_module(m, tol, seed)
    return m


def validate_module(m: Module, tol=None, seed=numeric.DEFAULT_SEED) -> None:
    """Check rho(b_i) rho(b_j) = rho(b_i b_j) and rho(1) = I."""
    a = m.algebra
    tol = tol if tol is not None else a.tol
    stack = m._stack()
    unit_res = numeric.rel_residual(m.act(a.unit) - np.eye(m.dim), 1.0)
    if unit_res > tol:
        raise NotARepresentation(f"rho(1) != I: residual {unit_res:.3e}")
    scale = a.scale * max(float(np.abs(stack).max()), 1.0) ** 2 * m.dim
    if a.dim <= EXHAUSTIVE_DIM_LIMIT:
        lhs = np.einsum("iab,jbc->ijac", stack, stack)
        rhs = np.einsum("ijk,kac->ijac", a.mult, stack)
        err = np.abs(lhs - rhs)
        worst = float(err.max())
        if worst > tol * scale:
            i, j = np.unravel_index(int(err.reshape(a.dim, a.dim, -1).sum(-1).argmax()),
                                    (a.dim, a.dim))
            raise NotARepresentation(
                f"rho(b_{i}) rho(b_{j}) != rho(b_{i} b_{j}): residual {worst:.3e}")
        return
    rng = np.random.default_rng(seed)
    for t in range(_PROBE_COUNT):
        x = rng.standard_normal(a.dim) + 1j * rng.standard_normal(a.dim)
        y = rng.standard_normal(a.dim) + 1j * rng.standard_normal(a.dim)
        delta = m.act(x) @ m.act(y) - m.act(a.product(x, y))
        if numeric.rel_residual(delta, scale * a.dim) > tol:
            raise NotARepresentation(f"random probe {t} violates multiplicativity")


def hom_space(m: Module, n: Module, tol=None) -> list:
    """Basis of intertwiners f with f rho_M(a) = rho_N(a) f for all a.

    Constraints are imposed for a generating set of the algebra only, which is
    exact because the intertwiner condition is closed under products.
    """
    if m.algebra is not n.algebra and not _same_algebra(m.algebra, n.algebra):
        raise AlgebraMismatch("hom_space requires modules over the same algebra")
    tol = tol if tol is not None else m.algebra.tol
    pairs = [(m.act(g), n.act(g)) for g in m.algebra.basis_generators()]
    return numeric.solve_sandwich(pairs, tol)


def _same_algebra(a: Algebra, b: Algebra) -> bool:
    return (a.dim == b.dim and a.mult.shape == b.mult.shape
            and np.array_equal(a.mult, b.mult) and np.array_equal(a.unit, b.unit))


def is_simple(m: Module, seed=numeric.DEFAULT_SEED, tol=None) -> bool:
    """Dual-criterion simplicity test over a semisimple algebra.

    Criterion 1: the commutant is one-dimensional.  Criterion 2: three seeded
    random vectors all generate the whole space under the algebra action.
    A one-dimensional commutant forces every nonzero vector to be cyclic, so
    a generating failure then is a numerical contradiction and raises
    NumericalInconsistency.  (The converse direction carries no information:
    a non-simple module can still be cyclic, e.g. a regular module.)
    """
    a = m.algebra
    tol = tol if tol is not None else a.tol
    if not is_semisimple(a, tol):
        raise NotSemisimple("is_simple requires a semisimple algebra")
    commutant_dim = len(hom_space(m, m, tol))
    by_commutant = commutant_dim == 1
    stack = m._stack()
    rng = np.random.default_rng(seed)
    by_cyclic = True
    for _ in range(3):
        v = rng.standard_normal(m.dim) + 1j * rng.standard_normal(m.dim)
        orbit = np.einsum("iab,b->ai", stack, v)
        if numeric.rank(orbit, tol) != m.dim:
            by_cyclic = False
            break
    if by_commutant and not by_cyclic:
        raise NumericalInconsistency(
            f"simplicity criteria disagree: commutant dim {commutant_dim} "
            f"but a random vector fails to generate")
    return by_commutant


def twist(m: Module, g: int, action) -> Module:
    """Same carrier with a * m := g^{-1}(a) m."""
    ginv = action.group.inv(g)
    tmat = action.mats[ginv]
    rho = tuple(m.act(tmat[:, i]) for i in range(m.algebra.dim))
    return Module(algebra=m.algebra, dim=m.dim, rho=rho)


def restrict(m: Module, embedding: SubalgebraEmbedding) -> Module:
    """View m as a module over the embedded subalgebra."""
    if not _same_algebra(embedding.parent, m.algebra):
        raise AlgebraMismatch("embedding does not target the module's algebra")
    rho = tuple(m.act(embedding.inclusion[:, j])
                for j in range(embedding.sub.dim))
    return Module(algebra=embedding.sub, dim=m.dim, rho=rho)


def compress(m: Module, basis: np.ndarray, tol=None) -> Module:
    """Restrict the action to an invariant subspace with orthonormal basis."""
    a = m.algebra
    tol = tol if tol is not None else a.tol
    rho = []
    scale = max(float(np.abs(m._stack()).max()), 1.0)
    for r in m.rho:
        rb = r @ basis
        small = basis.conj().T @ rb
        res = numeric.rel_residual(rb - basis @ small, scale)
        if res > tol:
            raise NotARepresentation(f"subspace is not invariant: residual {res:.3e}")
        rho.append(small)
    return Module(algebra=a, dim=basis.shape[1], rho=tuple(rho))


def _random_commutant_sample(comm, rng) -> np.ndarray:
    coeffs = rng.standard_normal(len(comm)) + 1j * rng.standard_normal(len(comm))
    return sum(c * b for c, b in zip(coeffs, comm))


def _eig_clusters(x: np.ndarray):
    """Split a diagonalizable matrix into eigenvalue-cluster subspaces."""
    vals, vecs = np.linalg.eig(x)
    radius = max(float(np.abs(vals).max()), 1.0)
    gap = EIG_GAP * radius
    order = np.lexsort((vals.imag, vals.real))
    groups = []
    current = [order[0]]
    for idx in order[1:]:
        # connect along the sorted chain; clusters of a generic sample are tiny
        if min(abs(vals[idx] - vals[j]) for j in current) <= gap:
            current.append(idx)
        else:
            groups.append(current)
            current = [idx]
    groups.append(current)
    return [vecs[:, g] for g in groups]


def decompose(m: Module, seed=numeric.DEFAULT_SEED, tol=None,
              commutant=None) -> Decomposition:
    """Split m into simple pieces grouped by isomorphism class.

    A random element of the commutant is sampled (seeded); its eigenvalue
    clusters give invariant subspaces, which are validated as simple
    submodules.  A degenerate sample is retried with the next derived seed,
    up to MAX_DECOMPOSE_RETRIES times.

    `commutant` optionally supplies a known basis of End(m) (e.g. right
    multiplications for a regular module), bypassing the generic solver.
    """
    a = m.algebra
    tol = tol if tol is not None else a.tol
    if not is_semisimple(a, tol):
        raise NotSemisimple("decompose requires a semisimple algebra")
    comm = commutant if commutant is not None else hom_space(m, m, tol)
    last = None
    for attempt in range(MAX_DECOMPOSE_RETRIES):
        rng = np.random.default_rng([seed, attempt, m.dim])
        try:
            pieces = _try_split(m, comm, rng, tol, seed)
            return _classify(m, pieces, tol, seed)
        except DegenerateSample as exc:
            last = exc
    raise DegenerateSample(f"no usable commutant sample after "
                           f"{MAX_DECOMPOSE_RETRIES} attempts: {last}")


def _try_split(m: Module, comm, rng, tol, seed) -> list:
    if len(comm) == 1:
        basis = np.eye(m.dim, dtype=np.complex128)
        return [(basis, compress(m, basis, tol))]
    x = _random_commutant_sample(comm, rng)
    blocks = _eig_clusters(x)
    out = []
    total = 0
    for cols in blocks:
        basis = numeric.orthonormal_column_basis(cols, tol)
        if basis.shape[1] != cols.shape[1]:
            raise DegenerateSample("eigenvector block is rank-deficient")
        basis = canonical_span(basis, tol)
        try:
            sub = compress(m, basis, tol)
        except NotARepresentation as exc:
            raise DegenerateSample(f"cluster subspace not invariant: {exc}")
        try:
            if not is_simple(sub, seed=seed, tol=tol):
                raise DegenerateSample("eigenvalue cluster is not a simple piece")
        except NumericalInconsistency as exc:
            raise DegenerateSample(str(exc))
        out.append((basis, sub))
        total += basis.shape[1]
    if total != m.dim:
        raise DegenerateSample("cluster subspaces do not fill the module")
    stacked = np.hstack([b for b, _ in out])
    if numeric.rank(stacked, tol) != m.dim:
        raise DegenerateSample("cluster subspaces are not independent")
    return out


def _classify(m: Module, raw_pieces, tol, seed) -> Decomposition:
    reps = []   # (first index, dim, module)
    labels = []
    for basis, sub in raw_pieces:
        assigned = None
        for ci, (_, d, rep) in enumerate(reps):
            if d == sub.dim and len(hom_space(sub, rep, tol)) > 0:
                assigned = ci
                break
        if assigned is None:
            reps.append((len(labels), sub.dim, sub))
            assigned = len(reps) - 1
        labels.append(assigned)
    # Final ids ascend by simple dimension then by first appearance.
    order = sorted(range(len(reps)), key=lambda ci: (reps[ci][1], reps[ci][0]))
    remap = {old: new for new, old in enumerate(order)}
    pieces = tuple(Piece(basis=basis, iso_class=remap[lbl], module=sub)
                   for (basis, sub), lbl in zip(raw_pieces, labels))
    isotypics = {}
    representatives = {}
    for cls in sorted(remap.values()):
        members = [p for p in pieces if p.iso_class == cls]
        isotypics[cls] = canonical_span(np.hstack([p.basis for p in members]), tol)
        representatives[cls] = members[0]
    mult_spaces = _multiplicity_spaces(m, pieces, representatives, tol)
    return Decomposition(module=m, pieces=pieces, isotypics=isotypics,
                         multiplicity_spaces=mult_spaces,
                         representatives=representatives)


def _multiplicity_spaces(m: Module, pieces, representatives, tol) -> dict:
    """Realize each multiplicity space inside m as {f(w)}, w the first basis
    vector of the class representative."""
    out = {}
    for cls, rep in representatives.items():
        homs = hom_space(rep.module, m, tol)
        mult = sum(1 for p in pieces if p.iso_class == cls)
        if len(homs) != mult:
            raise NumericalInconsistency(
                f"hom dimension {len(homs)} != multiplicity {mult} for class {cls}")
        vectors = [f[:, 0] for f in homs]
        span = canonical_span(vectors, tol)
        if span.shape[1] != mult:
            raise NumericalInconsistency(
                f"evaluation at the fixed vector dropped rank for class {cls}")
        out[cls] = span
    return out


def invariant_subspace(m: Module, tol=None) -> np.ndarray:
    """Fixed space of a module over a plain group algebra.

    Computed twice: as the image of the symmetrizer (mean of all basis
    actions) and as the joint fixed space of rho(g) - I; a dimension mismatch
    raises NumericalInconsistency.  Returns the joint-fixed-space basis.
    """
    a = m.algebra
    tol = tol if tol is not None else a.tol
    stack = m._stack()
    symmetrizer = stack.mean(axis=0)
    # the symmetrizer is idempotent (nonzero singular values >= 1) and the
    # stacked blocks rho(g) - I are O(1); floor the rank scales so an
    # all-noise matrix reads as zero
    image = numeric.orthonormal_column_basis(symmetrizer, tol, scale_floor=1.0)
    eye = np.eye(m.dim)
    fixed = numeric.nullspace(np.vstack([r - eye for r in stack]), tol,
                              scale_floor=1.0)
    if image.shape[1] != fixed.shape[1]:
        raise NumericalInconsistency(
            f"symmetrizer image dim {image.shape[1]} != joint fixed space dim "
            f"{fixed.shape[1]}")
    if fixed.shape[1]:
        joint = np.hstack([image, fixed])
        if numeric.rank(joint, tol) != fixed.shape[1]:
            raise NumericalInconsistency("symmetrizer image and fixed space differ")
    return canonical_span(fixed, tol) if fixed.shape[1] else fixed


def regular_module(a: Algebra) -> Module:
    """Left regular representation of an algebra on itself."""
    rho = tuple(np.einsum("jk->kj", a.mult[i]) for i in range(a.dim))
    return Module(algebra=a, dim=a.dim, rho=rho)


def regular_commutant(a: Algebra) -> list:
    """Right multiplications: an exact basis of End(regular module)."""
    return [a.right_mult(np.eye(a.dim, dtype=np.complex128)[:, j])
            for j in range(a.dim)]
