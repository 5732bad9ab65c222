"""Equivariant hom complexes with contramodule coefficients.

Two shapes are built over a Hopf algebra H with coefficient space M:

* cyclic: C_n = Hom_H(C^(x)(n+1), M) for a module coalgebra C, with faces
  lowering n, degeneracies raising n, and a cyclic operator of order n+1;
* cocyclic: C^n = Hom_H(A^(x)(n+1), M) for a module algebra A, with the
  arrows reversed.

Tensor powers carry the diagonal action.  Every operator is assembled on the
full hom space out of slot permutations, structure-map precompositions, and
a single application route for the contramodule map, then re-expressed in
the computed equivariant bases.  A restriction that fails to close raises
NotEquivariant rather than silently projecting.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .ayd import AydCoefficient, ensure_coefficient_checked
from .errors import (CharacteristicUnsupported, CompositionNotZero,
                     DimensionCapExceeded, NotEquivariant, PrerequisiteFailed,
                     ShapeMismatch)
from .exactla import (Matrix, Subspace, hstack, kron, permute_cols,
                      permute_rows, quotient_projection, rank_kernel_image,
                      rank_of, solve_columns, tensor_permutation_map)
from .exactla import homology_dims as _middle_homology
from .hopf import AlgebraData, CoalgebraData, HopfData
from .report import Report
from .reps import ModuleRep, check_module

DEFAULT_DIM_CAP = 20000


def _dim_cap():
    raw = os.environ.get("HOPFCONTRA_DIM_CAP")
    return int(raw) if raw else DEFAULT_DIM_CAP


class ModuleCoalgebraData:
    """Coalgebra C with a left H-action by coalgebra maps."""

    __slots__ = ("coalgebra", "action")

    def __init__(self, coalgebra: CoalgebraData, action: ModuleRep):
        if action.side != "left":
            raise ShapeMismatch("module coalgebras act on the left here")
        if action.dim != coalgebra.dim:
            raise ShapeMismatch("action matrices do not fit the coalgebra")
        self.coalgebra = coalgebra
        self.action = action

    @property
    def hopf(self):
        return self.action.hopf

    @property
    def dim(self):
        return self.coalgebra.dim


class ModuleAlgebraData:
    """Algebra A with a left H-action by two-factor compatible maps."""

    __slots__ = ("algebra", "action")

    def __init__(self, algebra: AlgebraData, action: ModuleRep):
        if action.side != "left":
            raise ShapeMismatch("module algebras act on the left here")
        if action.dim != algebra.dim:
            raise ShapeMismatch("action matrices do not fit the algebra")
        self.algebra = algebra
        self.action = action

    @property
    def hopf(self):
        return self.action.hopf

    @property
    def dim(self):
        return self.algebra.dim


def build_named_module_coalgebra(name: str, h: HopfData) -> ModuleCoalgebraData:
    """'regular' is H itself under left multiplication; 'trivial' is the
    one dimensional coalgebra with the counit action."""
    if name == "regular":
        action = ModuleRep(h, "left", h.left_mult())
        return ModuleCoalgebraData(h.coalgebra, action)
    if name == "trivial":
        F = h.field
        one = F.one
        coalgebra = CoalgebraData.from_triples(F, 1, [(0, 0, 0, one)], [one])
        mats = [Matrix.from_rows(F, [[h.counit.data[0][a]]]) for a in range(h.dim)]
        return ModuleCoalgebraData(coalgebra, ModuleRep(h, "left", mats))
    from .errors import UnknownName
    raise UnknownName(f"no bundled module coalgebra named {name!r}")


def build_named_module_algebra(name: str, h: HopfData) -> ModuleAlgebraData:
    """'trivial' is the ground field with the counit action; 'adjoint' is H
    itself with h.a = h_(1) a S(h_(2))."""
    F = h.field
    one = F.one
    if name == "trivial":
        algebra = AlgebraData.from_triples(F, 1, [(0, 0, 0, one)], [one])
        mats = [Matrix.from_rows(F, [[h.counit.data[0][a]]]) for a in range(h.dim)]
        return ModuleAlgebraData(algebra, ModuleRep(h, "left", mats))
    if name == "adjoint":
        L = h.left_mult()
        mats = []
        for t in range(h.dim):
            m = Matrix.zeros(F, h.dim, h.dim)
            for (b, c, coeff) in h.coalgebra.comul_terms()[t]:
                m = m + (L[b] @ h.mult_by(h.antipode_of(c), "right")).scale(coeff)
            mats.append(m)
        return ModuleAlgebraData(h.algebra, ModuleRep(h, "left", mats))
    from .errors import UnknownName
    raise UnknownName(f"no bundled module algebra named {name!r}")


def check_module_coalgebra(c: ModuleCoalgebraData) -> Report:
    """Module axioms plus: the action commutes with comul and counit."""
    rep = Report("module coalgebra")
    rep.extend(check_module(c.action))
    F = c.action.field
    h = c.hopf
    dx = c.dim
    com, eps = c.coalgebra.comul, c.coalgebra.counit
    act = c.action.matrices
    # coalgebra axioms of C itself
    I_x = Matrix.identity(F, dx)
    rep.compare("coalgebra coassociativity",
                kron(com, I_x) @ com, kron(I_x, com) @ com,
                row_dims=(dx, dx, dx), col_dims=(dx,))
    rep.compare("coalgebra left counit", kron(eps, I_x) @ com, I_x, col_dims=(dx,))
    rep.compare("coalgebra right counit", kron(I_x, eps) @ com, I_x, col_dims=(dx,))
    for a in range(h.dim):
        diag = Matrix.zeros(F, dx * dx, dx * dx)
        for (b, cc, coeff) in h.coalgebra.comul_terms()[a]:
            diag = diag + kron(act[b], act[cc]).scale(coeff)
        rep.compare(f"action commutes with comultiplication at basis {a}",
                    com @ act[a], diag @ com, row_dims=(dx, dx), col_dims=(dx,))
        rep.compare(f"action commutes with counit at basis {a}",
                    eps @ act[a], eps.scale(h.counit.data[0][a]), col_dims=(dx,))
    return rep


def check_module_algebra(a: ModuleAlgebraData) -> Report:
    """Module axioms plus: h.(b b') = (h_(1).b)(h_(2).b') and h.1 = eps(h) 1."""
    rep = Report("module algebra")
    rep.note("module-algebra-two-factors")
    rep.extend(check_module(a.action))
    F = a.action.field
    h = a.hopf
    da = a.dim
    mul, unit = a.algebra.mul, a.algebra.unit
    act = a.action.matrices
    I_a = Matrix.identity(F, da)
    rep.compare("algebra associativity",
                mul @ kron(mul, I_a), mul @ kron(I_a, mul),
                row_dims=(da,), col_dims=(da, da, da))
    rep.compare("algebra left unit", mul @ kron(unit, I_a), I_a, col_dims=(da,))
    rep.compare("algebra right unit", mul @ kron(I_a, unit), I_a, col_dims=(da,))
    for t in range(h.dim):
        diag = Matrix.zeros(F, da * da, da * da)
        for (b, cc, coeff) in h.coalgebra.comul_terms()[t]:
            diag = diag + kron(act[b], act[cc]).scale(coeff)
        rep.compare(f"action respects products at basis {t}",
                    act[t] @ mul, mul @ diag, row_dims=(da,), col_dims=(da, da))
        rep.compare(f"action respects unit at basis {t}",
                    act[t] @ unit, unit.scale(h.counit.data[0][t]), row_dims=(da,))
    return rep


def diagonal_power(action: ModuleRep, k: int) -> ModuleRep:
    """Diagonal action on the k-th tensor power; k = 0 is the counit action."""
    h = action.hopf
    F = action.field
    if k == 0:
        mats = [Matrix.from_rows(F, [[h.counit.data[0][a]]]) for a in range(h.dim)]
        return ModuleRep(h, "left", mats)
    cur = action.matrices
    terms = h.coalgebra.comul_terms()
    for _ in range(k - 1):
        nxt = []
        size = cur[0].rows
        for a in range(h.dim):
            m = Matrix.zeros(F, action.dim * size, action.dim * size)
            for (b, c, coeff) in terms[a]:
                m = m + kron(action.matrices[b], cur[c]).scale(coeff)
            nxt.append(m)
        cur = nxt
    return ModuleRep(h, "left", cur)


@dataclass(frozen=True)
class EquivariantBasis:
    """Basis of the H-linear maps inside Hom(X, M) at one degree."""

    degree: int
    source_dim: int
    coeff_dim: int
    space: Subspace

    @property
    def dim(self):
        return self.space.dim

    @property
    def ambient(self):
        return self.space.ambient_dim


def equivariant_hom_basis(x: ModuleRep, m: AydCoefficient, n: int,
                          require_checked: bool = True) -> EquivariantBasis:
    """Basis of Hom_H(X^(x)(n+1), M), cut out degree by degree.

    The intertwiner constraints are imposed one Hopf basis element at a
    time, shrinking the candidate basis at each step; this keeps every
    elimination at most ambient-size wide.
    """
    if x.side != "left" or m.flavour.module_side != "left":
        raise ShapeMismatch("equivariance here means left-linear maps")
    if require_checked:
        if m.compat_checked == "unchecked":
            from .ayd import check_ayd_compatibility
            check_ayd_compatibility(m)
        if m.compat_checked != "pass":
            raise PrerequisiteFailed("coefficient fails its compatibility check")
    F = x.field
    dM = m.dim
    diag = diagonal_power(x, n + 1)
    dX = diag.dim
    ambient = dX * dM
    cap = _dim_cap()
    if ambient > cap:
        raise DimensionCapExceeded(
            f"hom space dimension {ambient} exceeds the cap {cap}")
    I_x = Matrix.identity(F, dX)
    I_m = Matrix.identity(F, dM)
    basis = Matrix.identity(F, ambient)
    for a in range(m.hopf.dim):
        con = kron(diag.matrices[a].transpose(), I_m) - kron(I_x, m.action.matrices[a])
        if con.is_zero():
            continue
        reduced = con @ basis
        if reduced.is_zero():
            continue
        _, ker, _ = rank_kernel_image(reduced)
        basis = basis @ ker.basis
        if basis.cols == 0:
            break
    return EquivariantBasis(n, dX, dM, Subspace(ambient, basis))


def _hom_precompose(g: Matrix, dm: int) -> Matrix:
    """Hom(X, M) -> Hom(X', M), f -> f . g for g: X' -> X."""
    return kron(g.transpose(), Matrix.identity(g.field, dm))


def _alpha_route(alpha: Matrix, w: Matrix, dh: int, dxp: int, dm: int) -> Matrix:
    """Operator Hom(X, M) -> Hom(X', M) sending f to xi -> alpha(h -> f(w(h (x) xi)))."""
    pre = _hom_precompose(w, dm)
    new_to_old = tensor_permutation_map((dh, dxp, dm), (1, 0, 2))
    curried = permute_rows(pre, new_to_old)
    return kron(Matrix.identity(alpha.field, dxp), alpha) @ curried


def _restrict(name: str, op: Matrix, src: EquivariantBasis, dst: EquivariantBasis) -> Matrix:
    sol = solve_columns(dst.space.basis, op @ src.space.basis)
    if sol is None:
        raise NotEquivariant(f"{name} does not preserve the equivariant subspaces")
    return sol


@dataclass
class CyclicComplexData:
    """Bases and restricted operators of a (co)cyclic complex up to max_degree.

    For kind 'cyclic', faces[n][i] and cyclers[n] lower or fix the degree and
    degens[n][j] raises it; for kind 'cocyclic', faces[n][i] maps degree n-1
    to n and degens[n][j] maps n+1 to n.
    """

    kind: str
    coefficient: AydCoefficient
    max_degree: int
    bases: list
    faces: dict
    degens: dict
    cyclers: dict

    @property
    def field(self):
        return self.coefficient.field

    @property
    def dims(self):
        return [b.dim for b in self.bases]


def build_cyclic_complex(c: ModuleCoalgebraData, m: AydCoefficient,
                         max_degree: int = 3, allow_unstable: bool = False,
                         require_checked: bool = True) -> CyclicComplexData:
    """Cyclic complex of a module coalgebra with a left-right coefficient."""
    if m.flavour.code != "lr":
        raise PrerequisiteFailed(
            f"cyclic complexes take left-right coefficients, got {m.flavour.code}")
    struct = check_module_coalgebra(c)
    if not struct.ok:
        raise PrerequisiteFailed(f"module coalgebra fails {struct.failures()[0].name}")
    if require_checked:
        ensure_coefficient_checked(m, need_stable=not allow_unstable)
    F = c.action.field
    h = c.hopf
    dh, dx, dm = h.dim, c.dim, m.dim
    alpha = m.alpha.alpha
    com, eps = c.coalgebra.comul, c.coalgebra.counit
    act_flat = c.action.action_matrix()
    N = max_degree

    bases = [equivariant_hom_basis(c.action, m, n, require_checked=require_checked)
             for n in range(N + 1)]

    def eye(k):
        return Matrix.identity(F, dx ** k)

    faces, degens, cyclers = {}, {}, {}
    for n in range(1, N + 1):
        ops = []
        for i in range(n):
            g = kron(eye(i), kron(com, eye(n - 1 - i)))
            ops.append(_restrict(f"face {i} at degree {n}",
                                 _hom_precompose(g, dm), bases[n], bases[n - 1]))
        # last face: split the first tensor leg, rotate it behind, then act
        perm = [s + 2 for s in range(n)] + [0, 1]
        rowmap = tensor_permutation_map((dh, dx, dx) + (dx,) * (n - 1), tuple(perm))
        split = kron(Matrix.identity(F, dh), kron(com, eye(n - 1)))
        w = permute_cols(kron(eye(n), act_flat), rowmap) @ split
        ops.append(_restrict(f"face {n} at degree {n}",
                             _alpha_route(alpha, w, dh, dx ** n, dm),
                             bases[n], bases[n - 1]))
        faces[n] = ops
    for n in range(N):
        ops = []
        for j in range(n + 1):
            v = kron(eye(j + 1), kron(eps, eye(n - j)))
            ops.append(_restrict(f"degeneracy {j} at degree {n}",
                                 _hom_precompose(v, dm), bases[n], bases[n + 1]))
        degens[n] = ops
    for n in range(N + 1):
        if n == 0:
            w = act_flat
        else:
            perm = [s + 2 for s in range(n)] + [0, 1]
            rowmap = tensor_permutation_map((dh,) + (dx,) * (n + 1), tuple(perm))
            w = permute_cols(kron(eye(n), act_flat), rowmap)
        cyclers[n] = _restrict(f"cyclic operator at degree {n}",
                               _alpha_route(alpha, w, dh, dx ** (n + 1), dm),
                               bases[n], bases[n])
    return CyclicComplexData("cyclic", m, N, bases, faces, degens, cyclers)


def build_cocyclic_complex(a: ModuleAlgebraData, m: AydCoefficient,
                           max_degree: int = 3, allow_unstable: bool = False,
                           require_checked: bool = True) -> CyclicComplexData:
    """Cocyclic complex of a module algebra with a left-left coefficient."""
    if m.flavour.code != "ll":
        raise PrerequisiteFailed(
            f"cocyclic complexes take left-left coefficients, got {m.flavour.code}")
    struct = check_module_algebra(a)
    if not struct.ok:
        raise PrerequisiteFailed(f"module algebra fails {struct.failures()[0].name}")
    if require_checked:
        ensure_coefficient_checked(m, need_stable=not allow_unstable)
    F = a.action.field
    h = a.hopf
    dh, da, dm = h.dim, a.dim, m.dim
    alpha = m.alpha.alpha
    mul, unit = a.algebra.mul, a.algebra.unit
    act_flat = a.action.action_matrix()
    N = max_degree

    bases = [equivariant_hom_basis(a.action, m, n, require_checked=require_checked)
             for n in range(N + 1)]

    def eye(k):
        return Matrix.identity(F, da ** k)

    faces, degens, cyclers = {}, {}, {}
    for n in range(1, N + 1):
        ops = []
        for i in range(n):
            g = kron(eye(i), kron(mul, eye(n - 1 - i)))
            ops.append(_restrict(f"coface {i} at degree {n}",
                                 _hom_precompose(g, dm), bases[n - 1], bases[n]))
        perm = [0, n + 1] + [s + 1 for s in range(n)]
        rowmap = tensor_permutation_map((dh,) + (da,) * (n + 1), tuple(perm))
        w = kron(mul, eye(n - 1)) @ permute_cols(kron(act_flat, eye(n)), rowmap)
        ops.append(_restrict(f"coface {n} at degree {n}",
                             _alpha_route(alpha, w, dh, da ** (n + 1), dm),
                             bases[n - 1], bases[n]))
        faces[n] = ops
    for n in range(N):
        ops = []
        for j in range(n + 1):
            v = kron(eye(j + 1), kron(unit, eye(n - j)))
            ops.append(_restrict(f"codegeneracy {j} at degree {n}",
                                 _hom_precompose(v, dm), bases[n + 1], bases[n]))
        degens[n] = ops
    for n in range(N + 1):
        perm = [0, n + 1] + [s + 1 for s in range(n)]
        rowmap = tensor_permutation_map((dh,) + (da,) * (n + 1), tuple(perm))
        w = permute_cols(kron(act_flat, eye(n)), rowmap)
        cyclers[n] = _restrict(f"cocyclic operator at degree {n}",
                               _alpha_route(alpha, w, dh, da ** (n + 1), dm),
                               bases[n], bases[n])
    return CyclicComplexData("cocyclic", m, N, bases, faces, degens, cyclers)


def verify_cyclic_relations(cx: CyclicComplexData) -> Report:
    """All simplicial, degeneracy, and cyclic-operator identities that fit
    inside the built range of degrees."""
    if cx.kind == "cyclic":
        return _verify_cyclic(cx)
    return _verify_cocyclic(cx)


def _verify_cyclic(cx: CyclicComplexData) -> Report:
    rep = Report("cyclic relations")
    F = cx.field
    N = cx.max_degree
    d, s, t = cx.faces, cx.degens, cx.cyclers
    for n in range(2, N + 1):
        for j in range(n + 1):
            for i in range(j):
                rep.compare(f"d{i} d{j} = d{j - 1} d{i} at degree {n}",
                            d[n - 1][i] @ d[n][j], d[n - 1][j - 1] @ d[n][i])
    for n in range(N - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                rep.compare(f"s{i} s{j} = s{j + 1} s{i} at degree {n}",
                            s[n + 1][i] @ s[n][j], s[n + 1][j + 1] @ s[n][i])
    for n in range(N):
        ident = Matrix.identity(F, cx.bases[n].dim)
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = d[n + 1][i] @ s[n][j]
                if i < j:
                    if n == 0:
                        continue
                    rep.compare(f"d{i} s{j} = s{j - 1} d{i} at degree {n}",
                                lhs, s[n - 1][j - 1] @ d[n][i])
                elif i in (j, j + 1):
                    rep.compare(f"d{i} s{j} = id at degree {n}", lhs, ident)
                else:
                    if n == 0:
                        continue
                    rep.compare(f"d{i} s{j} = s{j} d{i - 1} at degree {n}",
                                lhs, s[n - 1][j] @ d[n][i - 1])
    for n in range(1, N + 1):
        rep.compare(f"d0 t = d{n} at degree {n}", d[n][0] @ t[n], d[n][n])
        for i in range(1, n + 1):
            rep.compare(f"d{i} t = t d{i - 1} at degree {n}",
                        d[n][i] @ t[n], t[n - 1] @ d[n][i - 1])
    for n in range(N):
        rep.compare(f"s0 t = t t s{n} at degree {n}",
                    s[n][0] @ t[n], t[n + 1] @ t[n + 1] @ s[n][n])
        for i in range(1, n + 1):
            rep.compare(f"s{i} t = t s{i - 1} at degree {n}",
                        s[n][i] @ t[n], t[n + 1] @ s[n][i - 1])
    for n in range(N + 1):
        power = Matrix.identity(F, cx.bases[n].dim)
        for _ in range(n + 1):
            power = t[n] @ power
        rep.compare(f"t^{n + 1} = id at degree {n}",
                    power, Matrix.identity(F, cx.bases[n].dim))
    return rep


def _verify_cocyclic(cx: CyclicComplexData) -> Report:
    rep = Report("cocyclic relations")
    F = cx.field
    N = cx.max_degree
    d, s, t = cx.faces, cx.degens, cx.cyclers
    for n in range(1, N):
        for j in range(n + 2):
            for i in range(j):
                rep.compare(f"delta{j} delta{i} = delta{i} delta{j - 1} from degree {n - 1}",
                            d[n + 1][j] @ d[n][i], d[n + 1][i] @ d[n][j - 1])
    for n in range(N - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                rep.compare(f"sigma{j} sigma{i} = sigma{i} sigma{j + 1} into degree {n}",
                            s[n][j] @ s[n + 1][i], s[n][i] @ s[n + 1][j + 1])
    for n in range(N):
        ident = Matrix.identity(F, cx.bases[n].dim)
        for j in range(n + 1):
            for i in range(n + 2):
                lhs = s[n][j] @ d[n + 1][i]
                if i < j:
                    if n == 0:
                        continue
                    rep.compare(f"sigma{j} delta{i} = delta{i} sigma{j - 1} at degree {n}",
                                lhs, d[n][i] @ s[n - 1][j - 1])
                elif i in (j, j + 1):
                    rep.compare(f"sigma{j} delta{i} = id at degree {n}", lhs, ident)
                else:
                    if n == 0:
                        continue
                    rep.compare(f"sigma{j} delta{i} = delta{i - 1} sigma{j} at degree {n}",
                                lhs, d[n][i - 1] @ s[n - 1][j])
    for n in range(1, N + 1):
        rep.compare(f"tau delta0 = delta{n} at degree {n}", t[n] @ d[n][0], d[n][n])
        for i in range(1, n + 1):
            rep.compare(f"tau delta{i} = delta{i - 1} tau at degree {n}",
                        t[n] @ d[n][i], d[n][i - 1] @ t[n - 1])
    for n in range(N):
        rep.compare(f"tau sigma0 = sigma{n} tau tau at degree {n}",
                    t[n] @ s[n][0], s[n][n] @ t[n + 1] @ t[n + 1])
        for i in range(1, n + 1):
            rep.compare(f"tau sigma{i} = sigma{i - 1} tau at degree {n}",
                        t[n] @ s[n][i], s[n][i - 1] @ t[n + 1])
    for n in range(N + 1):
        power = Matrix.identity(F, cx.bases[n].dim)
        for _ in range(n + 1):
            power = t[n] @ power
        rep.compare(f"tau^{n + 1} = id at degree {n}",
                    power, Matrix.identity(F, cx.bases[n].dim))
    return rep


def _alternating_sum(ops):
    out = ops[0]
    sign = -1
    for op in ops[1:]:
        out = out + op.scale(sign)
        sign = -sign
    return out


def homology_dims(cx: CyclicComplexData, mode: str = "hochschild"):
    """Homology dimensions in degrees 0 .. max_degree - 1.

    mode 'hochschild' uses the alternating face sum; mode 'connes' first
    passes to the quotient by the image of 1 - (sign) * cyclic operator,
    which needs characteristic zero.
    """
    if mode not in ("hochschild", "connes"):
        raise ShapeMismatch(f"unknown homology mode {mode!r}")
    F = cx.field
    N = cx.max_degree
    b = {n: _alternating_sum(cx.faces[n]) for n in range(1, N + 1)}
    if mode == "hochschild":
        dims0 = [cx.bases[n].dim for n in range(N + 1)]
        return _graded_dims(cx.kind, b, dims0, N)
    if F.characteristic != 0:
        raise CharacteristicUnsupported(
            "the cyclic quotient needs characteristic zero")
    def one_minus_lambda(n):
        lam = cx.cyclers[n] if n % 2 == 0 else -cx.cyclers[n]
        return Matrix.identity(F, cx.bases[n].dim) - lam
    bq = {}
    if cx.kind == "cyclic":
        # chains: the boundary descends to the quotient by im(1 - lambda)
        proj, lift, qdims = {}, {}, {}
        for n in range(N + 1):
            qdims[n], proj[n], lift[n] = quotient_projection(one_minus_lambda(n))
        for n in range(1, N + 1):
            if not (proj[n - 1] @ b[n] @ one_minus_lambda(n)).is_zero():
                raise CompositionNotZero(
                    f"boundary does not descend to the cyclic quotient at degree {n}")
            bq[n] = proj[n - 1] @ b[n] @ lift[n]
        space_dims = [qdims[n] for n in range(N + 1)]
    else:
        # cochains: the coboundary preserves the lambda-invariant subcomplex
        ker = {}
        for n in range(N + 1):
            _, sub, _ = rank_kernel_image(one_minus_lambda(n))
            ker[n] = sub.basis
        for n in range(1, N + 1):
            restricted = solve_columns(ker[n], b[n] @ ker[n - 1])
            if restricted is None:
                raise CompositionNotZero(
                    f"coboundary leaves the invariant subcomplex at degree {n}")
            bq[n] = restricted
        space_dims = [ker[n].cols for n in range(N + 1)]
    return _graded_dims(cx.kind, bq, space_dims, N)


def _graded_dims(kind, b, space_dims, N):
    # degree 0 is weakly covered: kernel of the first arrow out of (into) it
    out = []
    for n in range(N):
        if n == 0:
            out.append(space_dims[0] - rank_of(b[1]))
        elif kind == "cyclic":
            out.append(_middle_homology(b[n + 1], b[n]))
        else:
            out.append(_middle_homology(b[n], b[n + 1]))
    return out


def hom_bimodule_actions(a: ModuleAlgebraData, m: AydCoefficient):
    """The two commuting actions of A on Hom(A, M) and their verified laws.

    Returns (left_ops, right_ops, report).  The left action precomposes with
    right multiplication; the right action routes through the contramodule
    map.  The coefficient must be left-left and pass its compatibility check.
    """
    if m.flavour.code != "ll":
        raise PrerequisiteFailed(
            f"the hom bimodule needs a left-left coefficient, got {m.flavour.code}")
    struct = check_module_algebra(a)
    if not struct.ok:
        raise PrerequisiteFailed(f"module algebra fails {struct.failures()[0].name}")
    ensure_coefficient_checked(m, need_stable=False)
    F = a.action.field
    h = a.hopf
    dh, da, dm = h.dim, a.dim, m.dim
    alpha = m.alpha.alpha
    mul, unit = a.algebra.mul, a.algebra.unit
    right_mult = a.algebra.right_mult()
    I_m = Matrix.identity(F, dm)
    left_ops = [kron(right_mult[i].transpose(), I_m) for i in range(da)]
    right_ops = []
    for i in range(da):
        act_col = Matrix.zeros(F, da, dh)
        for hh in range(dh):
            col = a.action.matrices[hh].col(i)
            for r in range(da):
                act_col.data[r][hh] = col[r]
        w = mul @ kron(act_col, Matrix.identity(F, da))
        right_ops.append(_alpha_route(alpha, w, dh, da, dm))
    rep = Report("hom bimodule")
    rep.note("hom-right-action-associativity")
    rep.note("module-algebra-two-factors")
    hom_dim = da * dm
    ident = Matrix.identity(F, hom_dim)
    for i in range(da):
        for j in range(da):
            combo_r = Matrix.zeros(F, hom_dim, hom_dim)
            combo_l = Matrix.zeros(F, hom_dim, hom_dim)
            for k in range(da):
                c = mul.data[k][i * da + j]
                if c != F.zero:
                    combo_r = combo_r + right_ops[k].scale(c)
                    combo_l = combo_l + left_ops[k].scale(c)
            rep.compare(f"right action multiplicative at pair ({i},{j})",
                        right_ops[j] @ right_ops[i], combo_r)
            rep.compare(f"left action multiplicative at pair ({i},{j})",
                        left_ops[i] @ left_ops[j], combo_l)
            rep.compare(f"actions commute at pair ({i},{j})",
                        left_ops[i] @ right_ops[j], right_ops[j] @ left_ops[i])
    unit_r = Matrix.zeros(F, hom_dim, hom_dim)
    unit_l = Matrix.zeros(F, hom_dim, hom_dim)
    for k in range(da):
        c = unit.data[k][0]
        if c != F.zero:
            unit_r = unit_r + right_ops[k].scale(c)
            unit_l = unit_l + left_ops[k].scale(c)
    rep.compare("right action unital", unit_r, ident)
    rep.compare("left action unital", unit_l, ident)
    return left_ops, right_ops, rep


@dataclass(frozen=True)
class QuotientData:
    """A quotient of a tensor product, with projection and section."""

    ambient: int
    dim: int
    proj: Matrix
    lift: Matrix


def tensor_over_H(n, x: ModuleRep) -> QuotientData:
    """N (x)_H X for a right module N and left module X: the quotient of
    N (x) X by the span of n.h (x) xi - n (x) h.xi."""
    from .ayd import AydModuleData
    if isinstance(n, AydModuleData):
        right = n.action
    elif isinstance(n, ModuleRep):
        right = n
    else:
        raise ShapeMismatch(f"cannot tensor {type(n).__name__}")
    if right.side != "right" or x.side != "left":
        raise ShapeMismatch("tensor over H pairs a right module with a left module")
    F = x.field
    h = x.hopf
    dn, dx = right.dim, x.dim
    ambient = dn * dx
    if ambient > _dim_cap():
        raise DimensionCapExceeded(
            f"tensor product dimension {ambient} exceeds the cap {_dim_cap()}")
    I_n = Matrix.identity(F, dn)
    I_x = Matrix.identity(F, dx)
    blocks = []
    for a in range(h.dim):
        block = kron(right.matrices[a], I_x) - kron(I_n, x.matrices[a])
        if not block.is_zero():
            blocks.append(block)
    if not blocks:
        qdim, proj, lift = quotient_projection(Matrix.zeros(F, ambient, 0))
        return QuotientData(ambient, qdim, proj, lift)
    rel = hstack(blocks)
    _, _, img = rank_kernel_image(rel)
    qdim, proj, lift = quotient_projection(img.basis)
    return QuotientData(ambient, qdim, proj, lift)
