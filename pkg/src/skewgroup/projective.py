"""Inertia subgroups, intertwiners, 2-cocycles, and twisted group algebras.

For a simple module M and a group acting on its algebra, the elements fixing
M's isomorphism class act projectively on M; the failure to act honestly is
the 2-cocycle extracted here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import numeric
from .algebra import Algebra, make_algebra
from .errors import (
    InvalidInput,
    NotProjective,
    NotARepresentation,
    NotSimple,
    NumericalInconsistency,
)
from .group_action import AlgebraAction, FiniteGroup, make_group, subgroup_closure_check
from .repmod import (
    Decomposition,
    Module,
    decompose,
    hom_space,
    is_simple,
    make_module,
    twist,
)


@dataclass(frozen=True, eq=False)
class Cocycle:
    group: FiniteGroup        # the inertia subgroup, reindexed 0..|G_M|-1
    table: np.ndarray         # (|G_M|, |G_M|) values alpha(h, k)

    def validate(self, tol=numeric.DEFAULT_TOL) -> float:
        """Check normalization and the cocycle identity; return worst residual."""
        g = self.group
        t = self.table
        e = g.identity
        if np.any(t[e, :] != 1.0) or np.any(t[:, e] != 1.0):
            raise NotProjective("cocycle is not normalized at the identity")
        worst = 0.0
        for h in g.elements():
            for k in g.elements():
                for l in g.elements():
                    lhs = t[h, k] * t[g.mul(h, k), l]
                    rhs = t[h, g.mul(k, l)] * t[k, l]
                    worst = max(worst, abs(lhs - rhs))
        if worst > tol * max(float(np.abs(t).max()) ** 2, 1.0):
            raise NotProjective(f"cocycle identity fails: residual {worst:.3e}")
        return worst


@dataclass(frozen=True, eq=False)
class ProjectiveSystem:
    module: Module            # simple module over the base algebra
    action: AlgebraAction     # the full group action on the algebra
    inertia_members: tuple    # original group indices belonging to G_M
    inertia_group: FiniteGroup  # G_M with its own 0-based indexing
    phi: tuple                # intertwiner matrix per inertia_group index
    cocycle: Cocycle

    def member_of(self, local: int) -> int:
        """Original group index of a local inertia index."""
        return self.inertia_members[local]


def subgroup_as_group(group: FiniteGroup, members) -> tuple:
    """Reindex a subgroup as its own FiniteGroup; returns (group, members)."""
    members = subgroup_closure_check(group, members)
    pos = {m: i for i, m in enumerate(members)}
    n = len(members)
    table = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(members):
        for j, b in enumerate(members):
            table[i, j] = pos[group.mul(a, b)]
    return make_group(table), members


def _normalize_intertwiner(f: np.ndarray, dim: int) -> np.ndarray:
    """Gauge-fix a Schur intertwiner: leading entry real positive, Frobenius
    norm sqrt(dim)."""
    flat = np.abs(f).ravel()
    lead = int(flat.argmax())
    val = f.ravel()[lead]
    f = f / (val / abs(val))
    return f * (np.sqrt(dim) / np.linalg.norm(f))


def inertia(m: Module, action: AlgebraAction, tol=None,
            seed=numeric.DEFAULT_SEED) -> ProjectiveSystem:
    """Inertia subgroup of a simple module with normalized intertwiners."""
    a = m.algebra
    tol = tol if tol is not None else a.tol
    if not is_simple(m, seed=seed, tol=tol):
        raise NotSimple("inertia is defined for simple modules only")
    group = action.group
    members = []
    raw_phi = {}
    for h in group.elements():
        homs = hom_space(twist(m, h, action), m, tol)
        if len(homs) > 1:
            raise NumericalInconsistency(
                f"hom space from the twist by {h} has dimension {len(homs)} > 1")
        if homs:
            members.append(h)
            raw_phi[h] = _normalize_intertwiner(homs[0], m.dim)
    inertia_group, members = subgroup_as_group(group, members)
    phi = []
    for local, h in enumerate(members):
        if local == inertia_group.identity:
            phi.append(np.eye(m.dim, dtype=np.complex128))
        else:
            phi.append(raw_phi[h])
    phi = tuple(phi)
    _check_intertwiners(m, action, members, phi, tol)
    cocycle = extract_cocycle(phi, inertia_group, tol)
    return ProjectiveSystem(module=m, action=action, inertia_members=members,
                            inertia_group=inertia_group, phi=phi, cocycle=cocycle)


def _check_intertwiners(m: Module, action: AlgebraAction, members, phi, tol):
    """phi(h) rho(h^{-1}(a)) = rho(a) phi(h) for every basis element a."""
    a = m.algebra
    group = action.group
    scale = max(float(np.abs(m._stack()).max()), 1.0) * np.sqrt(m.dim)
    for local, h in enumerate(members):
        tmat = action.mats[group.inv(h)]
        for i in range(a.dim):
            lhs = phi[local] @ m.act(tmat[:, i])
            rhs = m.act(np.eye(a.dim)[:, i]) @ phi[local]
            if numeric.rel_residual(lhs - rhs, scale) > tol:
                raise NotProjective(
                    f"intertwiner for element {h} fails at basis index {i}")


def extract_cocycle(phi, group: FiniteGroup, tol=numeric.DEFAULT_TOL) -> Cocycle:
    """Scalar table alpha with phi(h) phi(k) = alpha(h, k) phi(hk).

    The scalar is read off at the largest-magnitude entry of phi(hk) (best
    conditioning); the full matrix identity is then enforced at tolerance.
    """
    e = group.identity
    if numeric.rel_residual(phi[e] - np.eye(phi[e].shape[0]), 1.0) > 0:
        if not np.array_equal(phi[e], np.eye(phi[e].shape[0], dtype=np.complex128)):
            raise InvalidInput("phi at the identity must be exactly the identity")
    n = group.order
    table = np.ones((n, n), dtype=np.complex128)
    for h in range(n):
        for k in range(n):
            hk = group.mul(h, k)
            prod = phi[h] @ phi[k]
            ref = phi[hk]
            idx = np.unravel_index(int(np.abs(ref).argmax()), ref.shape)
            alpha = prod[idx] / ref[idx]
            res = numeric.rel_residual(prod - alpha * ref,
                                       float(np.linalg.norm(ref)) * max(abs(alpha), 1.0))
            if res > tol:
                raise NotProjective(
                    f"phi({h}) phi({k}) is not proportional to phi({h}*{k}): "
                    f"residual {res:.3e}")
            table[h, k] = alpha
    # The identity row/column is exact by construction (phi(1) = I).
    table[e, :] = 1.0
    table[:, e] = 1.0
    cocycle = Cocycle(group=group, table=table)
    cocycle.validate(tol)
    return cocycle


def trivial_cocycle(group: FiniteGroup) -> Cocycle:
    return Cocycle(group=group, table=np.ones((group.order, group.order),
                                              dtype=np.complex128))


def twisted_group_algebra(group: FiniteGroup, cocycle: Cocycle,
                          exponent: int = 1, tol=numeric.DEFAULT_TOL) -> Algebra:
    """Algebra with basis c_h and product c_h c_k = alpha(h,k)^exponent c_{hk}."""
    if exponent not in (1, -1):
        raise InvalidInput("exponent must be +1 or -1")
    cocycle.validate(tol)
    n = group.order
    c = np.zeros((n, n, n), dtype=np.complex128)
    for h in range(n):
        for k in range(n):
            c[h, k, group.mul(h, k)] = cocycle.table[h, k] ** exponent
    unit = np.zeros(n, dtype=np.complex128)
    unit[group.identity] = 1.0
    labels = tuple(f"c{h}" for h in range(n))
    return make_algebra(n, c, unit, tol=tol, labels=labels)


def module_over_twisted(system: ProjectiveSystem, tol=None) -> Module:
    """M as a module over the exponent +1 twisted group algebra, c_h -> phi(h)."""
    tol = tol if tol is not None else system.module.algebra.tol
    alg = twisted_group_algebra(system.inertia_group, system.cocycle, 1, tol)
    try:
        return make_module(alg, system.phi, tol)
    except NotARepresentation as exc:
        raise NotProjective(f"phi does not represent the twisted algebra: {exc}")


def contragredient(w: Module, group: FiniteGroup, cocycle: Cocycle,
                   exponent: int = 1, tol=None) -> Module:
    """Dual module over the inverse-cocycle algebra.

    The basis element indexed by g acts on the dual by the transpose of the
    inverse of its action on w.
    """
    tol = tol if tol is not None else w.algebra.tol
    if w.algebra.dim != group.order:
        raise InvalidInput("module algebra does not match the group order")
    alg = twisted_group_algebra(group, cocycle, -exponent, tol)
    rho = tuple(np.linalg.inv(r).T for r in w.rho)
    return make_module(alg, rho, tol)


def projective_isotypics(system: ProjectiveSystem, seed=numeric.DEFAULT_SEED,
                         tol=None) -> Decomposition:
    """Isotypic decomposition of M over the twisted group algebra.

    Verifies the identification of each isotypic component with
    (multiplicity space) tensor (representative): evaluating the hom basis on
    all representative basis vectors must span the component bijectively.
    """
    m = module_over_twisted(system, tol)
    tol = tol if tol is not None else m.algebra.tol
    dec = decompose(m, seed=seed, tol=tol)
    for cls in dec.class_ids():
        rep = dec.representatives[cls]
        homs = hom_space(rep.module, m, tol)
        cols = np.hstack([f for f in homs])  # columns f_j(e_t), j major
        iso = dec.isotypics[cls]
        expected = iso.shape[1]
        if numeric.rank(cols, tol) != expected:
            raise NumericalInconsistency(
                f"multiplicity-tensor-representative map is not bijective for "
                f"class {cls}")
        proj_res = numeric.rel_residual(cols - iso @ (iso.conj().T @ cols), 1.0)
        if proj_res > tol:
            raise NumericalInconsistency(
                f"hom image leaves the isotypic component for class {cls}: "
                f"residual {proj_res:.3e}")
    return dec
