"""The twisted coring on H (x) H, its differential calculus, and
hom-connections induced by contramodule coefficients.

The coring carries the left action h.(u (x) x) = h_(1) u Sinv(h_(3)) (x) h_(2) x
and right action (u (x) x).h = u (x) xh.  Its coproduct and counit are written
in identified coordinates: the tensor product over H of two copies collapses
onto H (x) H (x) H via (u (x) 1) (x)_H (x (x) y) <-> u (x) x (x) y.

The calculus has forms Omega^n = Hplus^(x)n (x) H for the counit kernel
Hplus, with the degree raising map built from the same twisting.  A
right-right coefficient induces nabla: Hom(Omega^1, M) -> M; the induced
pair (nabla1, nabla0) composes to zero exactly when the coefficient is
compatible, which curvature_and_flatness verifies.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ayd import AydCoefficient, check_ayd_compatibility, ensure_coefficient_checked
from .ayd import _transport_operator
from .errors import CounitDegenerate, PrerequisiteFailed
from .exactla import Matrix, inverse, kron, vstack
from .hopf import HopfData, check_hopf_axioms
from .report import Report
from .reps import check_contramodule


def _twisted_left_action(h: HopfData):
    """Operators on H (x) H of h.(u (x) x) = h_(1) u Sinv(h_(3)) (x) h_(2) x."""
    F = h.field
    d = h.dim
    L = h.left_mult()
    out = []
    for a in range(d):
        op = Matrix.zeros(F, d * d, d * d)
        for (idx, coeff) in h.comul_terms(2)[a]:
            b, c, dd = idx
            first = L[b] @ h.mult_by(h.antipode_inv_of(dd), "right")
            op = op + kron(first, L[c]).scale(coeff)
        out.append(op)
    return out


def _threefold_left_action(h: HopfData):
    """The same twisting transported to H (x) H (x) H, using five coproduct legs."""
    F = h.field
    d = h.dim
    L = h.left_mult()
    out = []
    for a in range(d):
        op = Matrix.zeros(F, d ** 3, d ** 3)
        for (idx, coeff) in h.comul_terms(4)[a]:
            b, c, dd, e, f = idx
            first = L[b] @ h.mult_by(h.antipode_inv_of(f), "right")
            second = L[c] @ h.mult_by(h.antipode_inv_of(e), "right")
            op = op + kron(first, kron(second, L[dd])).scale(coeff)
        out.append(op)
    return out


@dataclass
class CoringData:
    """The coring H (x) H with its bimodule actions, coproduct, counit, and
    the grouplike element 1 (x) 1."""

    hopf: HopfData
    left_action: list
    right_action: list
    coproduct: Matrix
    counit: Matrix
    grouplike: Matrix

    @property
    def dim(self):
        return self.hopf.dim ** 2

    @property
    def field(self):
        return self.hopf.field


def build_ayd_coring(h: HopfData) -> CoringData:
    """Assemble the coring; the underlying Hopf data must pass its axioms."""
    axioms = check_hopf_axioms(h)
    if not axioms.ok:
        raise PrerequisiteFailed(f"hopf axioms fail: {axioms.failures()[0].name}")
    F = h.field
    d =  h.dim
    R = h.right_mult()
    I_d = Matrix.identity(F, d)
    left = _twisted_left_action(h)
    right = [kron(I_d, R[a]) for a in range(d)]
    coproduct = kron(h.comul, I_d)
    counit = kron(h.counit, I_d)
    grouplike = kron(h.unit, h.unit)
    return CoringData(h, left, right, coproduct, counit, grouplike)


def check_coring(c: CoringData) -> Report:
    """Bimodule laws, coassociativity and counit laws over H, H-linearity of
    the structure maps, and grouplikeness of 1 (x) 1."""
    rep = Report("coring structure")
    h = c.hopf
    F = h.field
    d = h.dim
    dc = c.dim
    L = h.left_mult()
    R = h.right_mult()
    I_d = Matrix.identity(F, d)
    I_c = Matrix.identity(F, dc)
    mulc = h.mul

    def combo(ops, i, j):
        out = Matrix.zeros(F, ops[0].rows, ops[0].cols)
        for k in range(d):
            s = mulc.data[k][i * d + j]
            if s != F.zero:
                out = out + ops[k].scale(s)
        return out

    for i in range(d):
        for j in range(d):
            rep.compare(f"left action multiplicative at ({i},{j})",
                        c.left_action[i] @ c.left_action[j], combo(c.left_action, i, j))
            rep.compare(f"right action multiplicative at ({i},{j})",
                        c.right_action[j] @ c.right_action[i], combo(c.right_action, i, j))
            rep.compare(f"actions commute at ({i},{j})",
                        c.left_action[i] @ c.right_action[j],
                        c.right_action[j] @ c.left_action[i])
    unit_l = Matrix.zeros(F, dc, dc)
    unit_r = Matrix.zeros(F, dc, dc)
    for k in range(d):
        s = h.unit.data[k][0]
        if s != F.zero:
            unit_l = unit_l + c.left_action[k].scale(s)
            unit_r = unit_r + c.right_action[k].scale(s)
    rep.compare("left action unital", unit_l, I_c)
    rep.compare("right action unital", unit_r, I_c)

    three = _threefold_left_action(h)
    for a in range(d):
        rep.compare(f"counit left linear at basis {a}",
                    c.counit @ c.left_action[a], L[a] @ c.counit)
        rep.compare(f"counit right linear at basis {a}",
                    c.counit @ c.right_action[a], R[a] @ c.counit)
        rep.compare(f"coproduct left linear at basis {a}",
                    c.coproduct @ c.left_action[a], three[a] @ c.coproduct)
        rep.compare(f"coproduct right linear at basis {a}",
                    c.coproduct @ c.right_action[a],
                    kron(Matrix.identity(F, d * d), R[a]) @ c.coproduct)
    rep.compare("coassociativity",
                kron(h.comul, Matrix.identity(F, d * d)) @ c.coproduct,
                kron(I_d, c.coproduct) @ c.coproduct,
                row_dims=(d, d, d, d), col_dims=(d, d))
    rep.compare("left counit law",
                kron(h.counit, Matrix.identity(F, d * d)) @ c.coproduct, I_c,
                col_dims=(d, d))
    rep.compare("right counit law",
                kron(I_d, c.counit) @ c.coproduct, I_c, col_dims=(d, d))
    rep.compare("grouplike coproduct",
                c.coproduct @ c.grouplike, kron(h.unit, kron(h.unit, h.unit)),
                row_dims=(d, d, d))
    rep.compare("grouplike counit", c.counit @ c.grouplike, h.unit, row_dims=(d,))
    return rep


def _identified_right_action(coring: CoringData, m: AydCoefficient):
    """Per basis a, the operator on Hom(H, M) of the coring-induced right
    action (f.h)(h') = f(h.(h' (x) 1)), read through f(u (x) x) = f(u).x."""
    h = coring.hopf
    F = h.field
    d, dm = h.dim, m.dim
    emb = kron(Matrix.identity(F, d), h.unit)
    rho = m.action.matrices
    out = []
    for a in range(d):
        restricted = coring.left_action[a] @ emb
        op = Matrix.zeros(F, d * dm, d * dm)
        for (row, hp, coeff) in restricted.nonzero_entries():
            u, v = divmod(row, d)
            block = rho[v]
            for mp in range(dm):
                orow = op.data[hp * dm + mp]
                brow = block.data[mp]
                for mm in range(dm):
                    if brow[mm] != F.zero:
                        acc = orow[u * dm + mm] + coeff * brow[mm]
                        orow[u * dm + mm] = acc if F.p is None else acc % F.p
        out.append(op)
    return out


def coring_contramodule_equivalence(coring: CoringData, m: AydCoefficient) -> Report:
    """The coring-contramodule structure in identified coordinates is the
    right-right flavour: the induced Hom(H, M) action must agree with the
    direct coproduct expansion operator for operator, and the resulting
    linearity verdict must match the flavour compatibility verdict."""
    if m.flavour.code != "rr":
        raise PrerequisiteFailed(
            f"the coring identification needs a right-right coefficient, got {m.flavour.code}")
    rep = Report("coring contramodule equivalence")
    h = coring.hopf
    A = m.alpha.alpha
    rho = m.action.matrices
    induced = _identified_right_action(coring, m)
    linear_ok = True
    for a in range(h.dim):
        rep.compare(f"induced action matches direct expansion at basis {a}",
                    induced[a], _transport_operator(m, a))
        ok = rep.compare(f"structure map right linear at basis {a}",
                        A @ induced[a], rho[a] @ A,
                        row_dims=(m.dim,), col_dims=(h.dim, m.dim))
        linear_ok = linear_ok and ok
    direct = check_ayd_compatibility(m)
    rep.add("identified verdict agrees with flavour verdict",
            linear_ok == direct.ok,
            None if linear_ok == direct.ok else
            {"identified": linear_ok, "flavour": direct.ok})
    contra = check_contramodule(m.alpha)
    rep.add("identified counit and coassociation laws hold", contra.ok,
            None if contra.ok else contra.failures()[0].witness)
    return rep


@dataclass
class DgaData:
    """Counit-adapted calculus: forms are Hplus powers with a trailing H leg."""

    hopf: HopfData
    plus_dim: int
    incl: Matrix
    proj_w: Matrix
    proj_plus: Matrix
    d0: Matrix
    d1: Matrix
    omega1_act: list

    @property
    def field(self):
        return self.hopf.field

    def omega_dim(self, n):
        if n == 0:
            return self.hopf.dim
        return self.plus_dim ** n * self.hopf.dim


def build_dga(h: HopfData) -> DgaData:
    """First two levels of the calculus, with exactness checks built in.

    Raises CounitDegenerate when no basis vector has nonzero counit, and
    PrerequisiteFailed when the underlying structure is not a Hopf algebra
    or the degree raising maps escape the counit kernel.
    """
    F = h.field
    d = h.dim
    eps = h.counit
    pivot = None
    for j in range(d):
        if eps.data[0][j] != F.zero:
            pivot = j
            break
    if pivot is None:
        raise CounitDegenerate("the counit vanishes on every basis vector")
    axioms = check_hopf_axioms(h)
    if not axioms.ok:
        raise PrerequisiteFailed(f"hopf axioms fail: {axioms.failures()[0].name}")
    dplus = d - 1
    piv_val = eps.data[0][pivot]
    cols = []
    for i in range(d):
        if i == pivot:
            continue
        w = [F.zero] * d
        w[i] = F.one
        ratio = eps.data[0][i] * F.invert(piv_val)
        if F.p is not None:
            ratio = ratio % F.p
        w[pivot] = -ratio if F.p is None else (-ratio) % F.p
        cols.append(w)
    incl = Matrix(F, d, dplus, [[cols[k][i] for k in range(dplus)] for i in range(d)])
    full_cols = [list(c) for c in cols]
    full_cols.append([F.one if i == pivot else F.zero for i in range(d)])
    w_full = Matrix(F, d, d, [[full_cols[k][i] for k in range(d)] for i in range(d)])
    w_inv = inverse(w_full)
    proj_w = Matrix(F, dplus, d, [list(w_inv.data[k]) for k in range(dplus)])
    I_d = Matrix.identity(F, d)
    proj_plus = proj_w @ (I_d - h.unit @ eps)

    # T(h) = h_(1) Sinv(h_(3)) (x) h_(2), the twisted part of the differential
    T = Matrix.zeros(F, d * d, d)
    L = h.left_mult()
    for a in range(d):
        for (idx, coeff) in h.comul_terms(2)[a]:
            b, c, dd = idx
            prod = h.mult_by(h.antipode_inv_of(dd), "right") @ L[b] @ h.unit
            for u in range(d):
                v = prod.data[u][0]
                if v != F.zero:
                    cur = T.data[u * d + c][a]
                    T.data[u * d + c][a] = cur + coeff * v if F.p is None \
                        else (cur + coeff * v) % F.p
    raw0 = kron(h.unit, I_d) - T
    if not (kron(eps, I_d) @ raw0).is_zero():
        raise PrerequisiteFailed("degree one image escapes the counit kernel")
    d0 = kron(proj_plus, I_d) @ raw0

    if dplus == 0:
        d1 = Matrix.zeros(F, 0, 0)
        omega1_act = [Matrix.zeros(F, 0, 0) for _ in range(d)]
        return DgaData(h, dplus, incl, proj_w, proj_plus, d0, d1, omega1_act)

    raw1 = (kron(h.unit, Matrix.identity(F, d * d))
            - kron(h.comul, I_d)
            + kron(I_d, T)) @ kron(incl, I_d)
    if not (kron(eps, Matrix.identity(F, d * d)) @ raw1).is_zero():
        raise PrerequisiteFailed("degree two image escapes the counit kernel in slot one")
    if not (kron(I_d, kron(eps, I_d)) @ raw1).is_zero():
        raise PrerequisiteFailed("degree two image escapes the counit kernel in slot two")
    d1 = kron(proj_plus, kron(proj_plus, I_d)) @ raw1
    if not (d1 @ d0).is_zero():
        raise PrerequisiteFailed("the degree raising maps do not compose to zero")

    twisted = _twisted_left_action(h)
    omega1_act = []
    for a in range(d):
        restricted = twisted[a] @ kron(incl, I_d)
        if not (kron(eps, I_d) @ restricted).is_zero():
            raise PrerequisiteFailed("the action leaks out of the counit kernel")
        omega1_act.append(kron(proj_plus, I_d) @ restricted)
    return DgaData(h, dplus, incl, proj_w, proj_plus, d0, d1, omega1_act)


@dataclass
class HomConnectionData:
    """nabla0: Hom(Omega^1, M) -> M and nabla1: Hom(Omega^2, M) -> Hom(Omega^1, M),
    in identified coordinates where Hom(Omega^n, M) = Hom(Hplus^(x)n, M)."""

    coefficient: AydCoefficient
    dga: DgaData
    nabla0: Matrix
    nabla1: Matrix


def _evaluate_form(field, coords, blocks, d, right_mats, dm):
    """Operator f -> sum over the form's legs of rho(last leg) f(plus legs).

    coords is a vector over (plus-power, H) with the H leg minor; blocks is
    the number of plus-power basis elements.
    """
    out = Matrix.zeros(field, dm, blocks * dm)
    for idx in range(len(coords)):
        v = coords[idx]
        if v == field.zero:
            continue
        w, c = divmod(idx, d)
        block = right_mats[c]
        for mp in range(dm):
            orow = out.data[mp]
            brow = block.data[mp]
            for mm in range(dm):
                if brow[mm] != field.zero:
                    acc = orow[w * dm + mm] + v * brow[mm]
                    orow[w * dm + mm] = acc if field.p is None else acc % field.p
    return out


def hom_connection_from_contramodule(m: AydCoefficient, dga: DgaData,
                                     require_checked=True) -> HomConnectionData:
    """nabla0(f) applies the structure map to f composed with the projection
    onto the counit kernel; nabla1 extends it to one-form arguments.

    The coefficient must be right-right and pass compatibility; stability is
    not required.  require_checked=False skips the compatibility gate so that
    deliberately broken coefficients can be pushed through to a nonzero
    curvature."""
    if m.flavour.code != "rr":
        raise PrerequisiteFailed(
            f"hom connections need a right-right coefficient, got {m.flavour.code}")
    if require_checked:
        ensure_coefficient_checked(m, need_stable=False)
    F = m.field
    h = dga.hopf
    d, dm, dplus = h.dim, m.dim, dga.plus_dim
    A = m.alpha.alpha
    nabla0 = A @ kron(dga.proj_plus.transpose(), Matrix.identity(F, dm))
    if dplus == 0:
        return HomConnectionData(m, dga, nabla0, Matrix.zeros(F, 0, 0))
    emb1 = kron(Matrix.identity(F, dplus), h.unit)
    d1_on_units = dga.d1 @ emb1
    rho = m.action.matrices
    rows = []
    for i in range(dplus):
        slicer = kron(Matrix.row(F, [F.one if k == i else F.zero for k in range(dplus)]),
                      Matrix.identity(F, dplus * dm))
        evaluated = _evaluate_form(F, d1_on_units.col(i), dplus * dplus, d, rho, dm)
        rows.append(nabla0 @ slicer + evaluated)
    nabla1 = vstack(rows)
    return HomConnectionData(m, dga, nabla0, nabla1)


def check_leibniz(hc: HomConnectionData) -> Report:
    """nabla0(f.a) = nabla0(f).a + f(d a) for every basis element a of H."""
    rep = Report("hom connection leibniz rule")
    F = hc.coefficient.field
    dga = hc.dga
    h = dga.hopf
    d, dm, dplus = h.dim, hc.coefficient.dim, dga.plus_dim
    rho = hc.coefficient.action.matrices
    if dplus == 0:
        rep.add("leibniz rule (no forms)", True)
        return rep
    emb1 = kron(Matrix.identity(F, dplus), h.unit)
    for a in range(d):
        restricted = dga.omega1_act[a] @ emb1
        act_op = Matrix.zeros(F, dplus * dm, dplus * dm)
        for (row, w, coeff) in restricted.nonzero_entries():
            wp, v = divmod(row, d)
            block = rho[v]
            for mp in range(dm):
                orow = act_op.data[w * dm + mp]
                brow = block.data[mp]
                for mm in range(dm):
                    if brow[mm] != F.zero:
                        acc = orow[wp * dm + mm] + coeff * brow[mm]
                        orow[wp * dm + mm] = acc if F.p is None else acc % F.p
        evaluated = _evaluate_form(F, dga.d0.col(a), dplus, d, rho, dm)
        rep.compare(f"leibniz rule at basis {a}",
                    hc.nabla0 @ act_op, rho[a] @ hc.nabla0 + evaluated,
                    row_dims=(dm,), col_dims=(dplus, dm))
    return rep


def curvature_and_flatness(hc: HomConnectionData):
    """The composite nabla0 . nabla1 and a report asserting it vanishes."""
    curvature = hc.nabla0 @ hc.nabla1
    rep = Report("curvature")
    rep.compare("curvature vanishes", curvature,
                Matrix.zeros(hc.coefficient.field, curvature.rows, curvature.cols))
    return curvature, rep
