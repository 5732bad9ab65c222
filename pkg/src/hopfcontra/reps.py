"""Modules, comodules and contramodules as explicit matrix data.

A module is a list of action matrices, one per basis element of the acting
algebra.  A comodule is a single coaction matrix.  A contramodule structure
on M over a coalgebra C is a matrix alpha: Hom(C, M) -> M, where Hom(C, M)
carries the flat index c*dim(M) + m.

Left contramodules are checked as right contramodules over the co-opposite
coalgebra, which is the same axiom after rewiring the currying step.
"""

from __future__ import annotations

from .errors import InvalidComodule, ShapeMismatch
from .exactla import Matrix, hstack, kron
from .hopf import CoalgebraData, HopfData
from .report import Report

_SIDES = ("left", "right")


def _check_side(side):
    if side not in _SIDES:
        raise ShapeMismatch(f"side must be 'left' or 'right', got {side!r}")


class ModuleRep:
    """Module over the algebra part of a Hopf algebra.

    matrices[a] is the operator of the basis element a; for a right module it
    is the operator of acting by a on the right, so composition reverses.
    """

    __slots__ = ("hopf", "side", "matrices", "dim")

    def __init__(self, hopf: HopfData, side: str, matrices):
        _check_side(side)
        if len(matrices) != hopf.dim:
            raise ShapeMismatch("need one action matrix per basis element")
        dim = matrices[0].rows if matrices else 0
        for m in matrices:
            if m.shape != (dim, dim):
                raise ShapeMismatch("action matrices must be square of equal size")
            if m.field != hopf.field:
                raise ShapeMismatch("action matrices live over the wrong field")
        self.hopf = hopf
        self.side = side
        self.matrices = list(matrices)
        self.dim = dim

    @property
    def field(self):
        return self.hopf.field

    def action_matrix(self):
        """Flattened action H (x) M -> M; column block a is matrices[a]."""
        return hstack(self.matrices)

    def act_by(self, coords):
        """Action operator of the element with the given coordinates."""
        out = Matrix.zeros(self.field, self.dim, self.dim)
        zero = self.field.zero
        for a, c in enumerate(coords):
            if c != zero:
                out = out + self.matrices[a].scale(c)
        return out


class ComoduleRep:
    """Comodule over the coalgebra part; rho is C (x) N valued on the left
    side and N (x) C valued on the right side."""

    __slots__ = ("hopf", "side", "coaction", "dim")

    def __init__(self, hopf: HopfData, side: str, coaction: Matrix):
        _check_side(side)
        d = hopf.dim
        if coaction.cols == 0:
            dim = 0
            if coaction.rows != 0:
                raise ShapeMismatch("coaction on the zero space must be empty")
        else:
            dim, rem = divmod(coaction.rows, d)
            if rem or coaction.cols != dim:
                raise ShapeMismatch(f"coaction shape {coaction.shape} is not {d}*n x n")
        if coaction.field != hopf.field:
            raise ShapeMismatch("coaction lives over the wrong field")
        self.hopf = hopf
        self.side = side
        self.coaction = coaction
        self.dim = dim

    @property
    def field(self):
        return self.hopf.field


class ContraRep:
    """Contramodule over a coalgebra: alpha sends Hom(C, M) to M."""

    __slots__ = ("coalgebra", "side", "alpha", "dim")

    def __init__(self, coalgebra: CoalgebraData, side: str, alpha: Matrix):
        _check_side(side)
        d = coalgebra.dim
        dim = alpha.rows
        if alpha.cols != d * dim:
            raise ShapeMismatch(f"alpha must be {dim}x{d * dim}, got {alpha.shape}")
        if alpha.field != coalgebra.field:
            raise ShapeMismatch("alpha lives over the wrong field")
        self.coalgebra = coalgebra
        self.side = side
        self.alpha = alpha
        self.dim = dim

    @property
    def field(self):
        return self.coalgebra.field


def curry_uncurry(direction: str, f: Matrix, dims) -> Matrix:
    """Reindex between Hom(C, Hom(C', M)) and Hom(C (x) C', M).

    dims is (dim C, dim C', dim M).  The nested space has flat index
    c*(dimC'*dimM) + c'*dimM + m; the uncurried space has (c*dimC' + c')*dimM + m.

    Directions: 'uncurry' sends f to the map (c (x) c') -> f(c)(c');
    'uncurry_swapped' sends f to (c (x) c') -> f(c')(c); 'curry' and
    'curry_swapped' invert them.  As vectors both spaces carry the same
    coordinates, so 'uncurry' is the identity relabeling and the swapped
    forms permute the two outer slots.
    """
    dc, dcp, dm = dims
    total = dc * dcp * dm
    # f may be a single coordinate vector or a matrix of stacked vectors
    if f.rows != total:
        raise ShapeMismatch(f"expected {total} coordinates, got {f.rows}")
    if direction in ("uncurry", "curry"):
        return f
    if direction in ("uncurry_swapped", "curry_swapped"):
        field = f.field
        out = Matrix.zeros(field, total, f.cols)
        for c in range(dc):
            for cp in range(dcp):
                if direction == "uncurry_swapped":
                    # output index over C (x) C' reads (c', c) from the input
                    src_base = (c * dcp + cp) * dm
                    dst_base = (cp * dc + c) * dm
                else:
                    src_base = (cp * dc + c) * dm
                    dst_base = (c * dcp + cp) * dm
                for m in range(dm):
                    row = f.data[src_base + m]
                    out.data[dst_base + m] = list(row)
        return out
    raise ShapeMismatch(f"unknown direction {direction!r}")


def hom_curry_permutation(field, dc, dcp, dm, swapped=False) -> Matrix:
    """Permutation matrix of curry_uncurry('uncurry', ...) on coordinates."""
    total = dc * dcp * dm
    if not swapped:
        return Matrix.identity(field, total)
    entries = []
    for c in range(dc):
        for cp in range(dcp):
            for m in range(dm):
                entries.append(((cp * dc + c) * dm + m, (c * dcp + cp) * dm + m, field.one))
    return Matrix.from_entries(field, total, total, entries)


def check_module(r: ModuleRep) -> Report:
    """Associativity and unitality of a module structure."""
    rep = Report(f"{r.side} module")
    F = r.field
    h = r.hopf
    d = h.dim
    mats = r.matrices
    unit = h.unit
    ident = Matrix.identity(F, r.dim)
    terms_of = h.algebra.mul
    for a in range(d):
        for b in range(d):
            combo = Matrix.zeros(F, r.dim, r.dim)
            for k in range(d):
                c = terms_of.data[k][a * d + b]
                if c != F.zero:
                    combo = combo + mats[k].scale(c)
            if r.side == "left":
                lhs = mats[a] @ mats[b]
            else:
                lhs = mats[b] @ mats[a]
            rep.compare(f"associativity at basis pair ({a},{b})", lhs, combo)
    acted = Matrix.zeros(F, r.dim, r.dim)
    for a in range(d):
        c = unit.data[a][0]
        if c != F.zero:
            acted = acted + mats[a].scale(c)
    rep.compare("unit acts as identity", acted, ident)
    return rep


def check_comodule(r: ComoduleRep) -> Report:
    """Coassociativity and counitality of a comodule structure."""
    rep = Report(f"{r.side} comodule")
    F = r.field
    h = r.hopf
    d, n = h.dim, r.dim
    rho = r.coaction
    I_n = Matrix.identity(F, n)
    if r.side == "left":
        lhs = kron(h.comul, I_n) @ rho
        rhs = kron(Matrix.identity(F, d), rho) @ rho
        rep.compare("coassociativity", lhs, rhs, row_dims=(d, d, n), col_dims=(n,))
        rep.compare("counit law", kron(h.counit, I_n) @ rho, I_n, col_dims=(n,))
    else:
        lhs = kron(I_n, h.comul) @ rho
        rhs = kron(rho, Matrix.identity(F, d)) @ rho
        rep.compare("coassociativity", lhs, rhs, row_dims=(n, d, d), col_dims=(n,))
        rep.compare("counit law", kron(I_n, h.counit) @ rho, I_n, col_dims=(n,))
    return rep


def check_module_comodule(r) -> Report:
    if isinstance(r, ModuleRep):
        return check_module(r)
    if isinstance(r, ComoduleRep):
        return check_comodule(r)
    raise ShapeMismatch(f"expected a module or comodule, got {type(r).__name__}")


def check_contramodule(m: ContraRep) -> Report:
    """Contraassociativity and counit law.

    Right side: alpha . Hom(C, alpha) = alpha . Hom(comul, M) after currying.
    Left side: the same diagrams over the co-opposite coalgebra.
    """
    rep = Report(f"{m.side} contramodule")
    rep.note("theta-convention")
    F = m.field
    C = m.coalgebra if m.side == "right" else m.coalgebra.co_opposite()
    d, dm = C.dim, m.dim
    A = m.alpha
    I_m = Matrix.identity(F, dm)
    I_c = Matrix.identity(F, d)
    # Hom(C, alpha): postcompose alpha inside Hom(C, Hom(C, M))
    inner = kron(I_c, A)
    # uncurry Hom(C, Hom(C, M)) -> Hom(C (x) C, M), then precompose comul
    theta = hom_curry_permutation(F, d, d, dm, swapped=False)
    outer = kron(C.comul.transpose(), I_m) @ theta
    rep.compare(
        "contraassociativity", A @ inner, A @ outer,
        row_dims=(dm,), col_dims=(d, d, dm),
    )
    rep.compare(
        "counit law", A @ kron(C.counit.transpose(), I_m), I_m,
        col_dims=(dm,),
    )
    return rep


def dualize_comodule(n: ComoduleRep) -> ContraRep:
    """Linear dual of a comodule, carried as a contramodule on the dual space.

    A left comodule dualizes to a right contramodule and vice versa.  The
    coaction must satisfy its axioms; otherwise InvalidComodule is raised.
    """
    check = check_comodule(n)
    if not check.ok:
        bad = check.failures()[0]
        raise InvalidComodule(f"coaction fails {bad.name}: {bad.witness}")
    h = n.hopf
    F, d, dn = n.field, h.dim, n.dim
    coalgebra = h.coalgebra
    R = n.coaction
    alpha = Matrix.zeros(F, dn, d * dn)
    if n.side == "left":
        # alpha(f)(x) = sum over rho(x) = c (x) y of f(c)(y)
        for (row, x, coeff) in R.nonzero_entries():
            c, y = divmod(row, dn)
            alpha.data[x][c * dn + y] = coeff
        return ContraRep(coalgebra, "right", alpha)
    for (row, x, coeff) in R.nonzero_entries():
        y, c = divmod(row, d)
        alpha.data[x][c * dn + y] = coeff
    return ContraRep(coalgebra, "left", alpha)
