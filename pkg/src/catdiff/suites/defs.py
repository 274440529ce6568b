"""The shipped suites. Each builder takes a kit and returns its items in
declared order. Sub-equations of one axiom are conjoined with a pairing so
each axiom is one item."""
from __future__ import annotations

from fractions import Fraction

from .. import expr as E
from ..expr import (Bang, BangHom as S, Comp, Id, Pair, Plus, Prim, Prod, Proj0, Proj1,
                    Tensor, TensorHom, TensorUnit, Terminal, ToTerminal, Zero, comp, prod_hom)
from ..constructions import formulas as D
from ..constructions import storage as ST
from ..constructions.cokleisli import CoKleisli, concrete_m_x
from ..finrel import TableRel
from ..constructions.slice import SliceModel
from ..model import Budget, Equal, Unequal, Unsupported, check_equation
from .core import Check, Conditional, Skip, Suite, Thunk

STORAGE = frozenset({"storage"})
DIFF = frozenset({"differential"})


def is_storage(kit):
    return kit.level.endswith("storage")


def _skip_all(ids, reason):
    return [Skip(i, d, reason) for i, d in ids]


def conj(*eqs):
    """Conjoin equations sharing a domain into one, via pairing."""
    lhs, rhs = eqs[0]
    for l2, r2 in eqs[1:]:
        lhs, rhs = Pair(lhs, l2), Pair(rhs, r2)
    return lhs, rhs


# ------------------------------------------------------------- linear-system

LS_IDS = [
    ("LS.1.id", "LS.1: identities are linear"),
    ("LS.1.proj", "LS.1: both projections are linear"),
    ("LS.1.pair", "LS.1: pairing of linear maps is linear"),
    ("LS.2.comp", "LS.2: linear maps are closed under composition"),
    ("LS.2.retract", "LS.2: g linear retraction and g;h linear imply h linear"),
    ("LS.2.retract-nonlinear", "LS.2: same implication with a nonlinear h (vacuous premise expected)"),
    ("LS.3.subst", "LS.3: substitution (h x 1);f preserves linearity in the second argument"),
    ("LS.2.slice", "LS.2 in the simple slice over A: composite of slice-linear maps is slice-linear"),
]


def build_linear_system(kit):
    A, B = kit.A, kit.B
    f = kit.gen("ls_f", A, B, "linear")
    g = kit.gen("ls_g", A, A, "linear")
    h = kit.gen("ls_h", B, A, "linear")
    k2 = kit.gen("ls_k", Prod(B, A), B, "linear2")
    s = kit.gen("ls_s", A, B, "any")
    items = [
        Check("LS.1.id", LS_IDS[0][1], *kit.linear_eq(Id(A))),
        Check("LS.1.proj", LS_IDS[1][1], *conj(kit.linear_eq(Proj0(A, B)), kit.linear_eq(Proj1(A, B)))),
        Check("LS.1.pair", LS_IDS[2][1], *kit.linear_eq(Pair(f, g))),
        Check("LS.2.comp", LS_IDS[3][1], *kit.linear_eq(Comp(f, h))),
    ]
    # pi0 : A x B -> A is a retraction with section <1, 0>
    r = Proj0(A, B)
    sec = Pair(Id(A), Zero(A, B))
    for i, hh in ((4, Comp(f, h)), (5, nonlinear(kit, A))):
        items.append(Conditional(LS_IDS[i][0], LS_IDS[i][1],
                                 premises=[kit.linear_eq(r), (Comp(sec, r), Id(A)),
                                           kit.linear_eq(Comp(r, hh))],
                                 conclusion=kit.linear_eq(hh)))
    items.append(Check("LS.3.subst", LS_IDS[6][1], *kit.linear2_eq(Comp(prod_hom(s, Id(A)), k2))))
    items.append(_slice_closure(kit))
    return items


def nonlinear(kit, a):
    if kit.level.endswith("poly"):
        return kit.gen("ls_nl", a, a, "any")
    return D.phi(a)


def _slice_closure(kit):
    i, d = LS_IDS[7]
    model = kit.model
    if isinstance(model, SliceModel):
        return Skip(i, d, "already a slice")
    sm = SliceModel(model, kit.A)
    sk = sm.kit()
    sk.seed = kit.seed
    sk.inner.seed = kit.seed
    try:
        f = sk.gen("sl_f", kit.B, kit.A, "linear")
        g = sk.gen("sl_g", kit.A, kit.B, "linear")
    except Exception as err:
        return Skip(i, d, str(err))
    lhs, rhs = sk.linear_eq(Comp(f, g))
    return Check(i, d, lhs, rhs, model=sk.model)


# ---------------------------------------------------------- abstract-cokleisli

AC_IDS = [
    ("phi;eps=1", "coKleisli axiom: phi ; eps = 1"),
    ("S(phi);eps=1", "coKleisli axiom: S(phi) ; eps = 1"),
    ("eps;eps=S(eps);eps", "coKleisli axiom: eps ; eps = S(eps) ; eps"),
]


def build_abstract_cokleisli(kit):
    A = kit.A
    return [
        Check(AC_IDS[0][0], AC_IDS[0][1], Comp(D.phi(A), D.eps(A)), Id(A)),
        Check(AC_IDS[1][0], AC_IDS[1][1], Comp(S(D.phi(A)), D.eps(Bang(A))), Id(Bang(A))),
        Check(AC_IDS[2][0], AC_IDS[2][1], Comp(D.eps(Bang(A)), D.eps(A)),
              Comp(S(D.eps(A)), D.eps(A))),
    ]


# ------------------------------------------------------------------- force

FORCE_IDS = [
    ("Force.1", "Force.1 associativity of force (checked at 2/3 of the cap)"),
    ("Force.2", "Force.2 projection and force"),
    ("Force.3", "Force.3 forceful naturality"),
    ("Force.4", "Force.4 forcefulness of the counit"),
    ("Force.5", "Force.5 forcefulness of comultiplication"),
    ("Force.6", "Force.6 commutativity of force"),
    ("Force.remark", "S(1 x delta) ; psi ; psi = psi"),
]


def sigma(a, b):
    return Pair(S(Proj0(a, b)), S(Proj1(a, b)))


def build_force(kit, objs=None):
    A, B = kit.A, kit.B
    C = B
    eps, delta, psi = kit.eps, kit.delta, kit.psi

    def psi_dual(a, b):
        # S(c) psi S(c) : S(S(A) x B) -> S(A x B)
        return comp(S(kit.c_x(Bang(a), b)), psi(b, a), S(kit.c_x(b, a)))

    X1 = Prod(A, Prod(B, Bang(C)))
    f1_lhs = comp(delta(X1), S(sigma(A, Prod(B, Bang(C)))),
                  S(prod_hom(eps(A), psi(B, C))), psi(A, Prod(B, C)), S(kit.a_x(A, B, C)))
    f1_rhs = comp(S(kit.a_x(A, B, Bang(C))), psi(Prod(A, B), C))

    f2_lhs = Comp(psi(A, B), S(Proj1(A, B)))
    f2_rhs = Comp(S(Proj1(A, Bang(B))), eps(Bang(B)))

    f3_lhs = comp(psi(A, B), delta(Prod(A, B)), S(sigma(A, B)))
    f3_rhs = comp(delta(Prod(A, Bang(B))), S(sigma(A, Bang(B))),
                  S(prod_hom(Id(Bang(A)), Comp(eps(Bang(B)), delta(B)))), psi(Bang(A), Bang(B)))

    f4_lhs = Comp(S(prod_hom(Id(A), eps(Bang(B)))), psi(A, B))
    f4_rhs = Comp(psi(A, Bang(B)), psi(A, B))

    f5_lhs = comp(delta(Prod(A, B)), S(sigma(A, B)), psi(Bang(A), B),
                  S(prod_hom(eps(A), Id(B))))
    f5_rhs = Id(Bang(Prod(A, B)))

    f6_lhs = Comp(psi(Bang(A), B), psi_dual(A, B))
    f6_rhs = Comp(psi_dual(A, Bang(B)), psi(A, B))

    r_lhs = comp(S(prod_hom(Id(A), delta(B))), psi(A, Bang(B)), psi(A, B))
    r_rhs = psi(A, B)
    eqs = [(f1_lhs, f1_rhs), (f2_lhs, f2_rhs), (f3_lhs, f3_rhs), (f4_lhs, f4_rhs),
           (f5_lhs, f5_rhs), (f6_lhs, f6_rhs), (r_lhs, r_rhs)]
    out = []
    for (i, d), (l, r) in zip(FORCE_IDS, eqs):
        out.append(Check(i, d, l, r, cap_scale=Fraction(2, 3) if i == "Force.1" else Fraction(1)))
    return out


# --------------------------------------------------------- commutative-monad

CM_IDS = [
    ("monad.unit-left", "monad (S, phi, mu): phi_S ; mu = 1"),
    ("monad.unit-right", "monad (S, phi, mu): S(phi) ; mu = 1"),
    ("monad.assoc", "monad (S, phi, mu): mu_S ; mu = S(mu) ; mu"),
    ("monad.commutative", "commutative monad: theta ; S(theta') ; mu = theta' ; S(theta) ; mu"),
    ("m_x.lifts-phi", "m_x is the lifting of phi: (phi x phi) ; m_x = phi"),
    ("theta.unit", "strength against the unit: (1 x phi) ; theta = phi"),
]


def build_commutative_monad(kit):
    A, B = kit.A, kit.B
    mu = D.mu
    return [
        Check(*CM_IDS[0], Comp(D.phi(Bang(A)), mu(A)), Id(Bang(A))),
        Check(*CM_IDS[1], Comp(S(D.phi(A)), mu(A)), Id(Bang(A))),
        Check(*CM_IDS[2], Comp(mu(Bang(A)), mu(A)), Comp(S(mu(A)), mu(A))),
        Check(*CM_IDS[3], comp(D.theta(Bang(A), B), S(D.theta_prime(A, B)), mu(Prod(A, B))),
              comp(D.theta_prime(A, Bang(B)), S(D.theta(A, B)), mu(Prod(A, B)))),
        Check(*CM_IDS[4], Comp(prod_hom(D.phi(A), D.phi(B)), D.m_x(A, B)), D.phi(Prod(A, B))),
        Check(*CM_IDS[5], Comp(prod_hom(Id(A), D.phi(B)), D.theta(A, B)), D.phi(Prod(A, B))),
    ]


# ---------------------------------------------------------- split-coequalizer

SC_IDS = [
    ("phi;eps=1", "split coequalizer: phi ; eps = 1"),
    ("S(phi);eps=1", "split coequalizer: S(phi) ; eps = 1"),
    ("eps;phi=phi;S(eps)", "split coequalizer: eps ; phi = phi ; S(eps)"),
    ("fork", "the fork: eps_S ; eps = S(eps) ; eps"),
]


def build_split_coequalizer(kit):
    A = kit.A
    return [
        Check(*SC_IDS[0], Comp(D.phi(A), D.eps(A)), Id(A)),
        Check(*SC_IDS[1], Comp(S(D.phi(A)), D.eps(Bang(A))), Id(Bang(A))),
        Check(*SC_IDS[2], Comp(D.eps(A), D.phi(A)), Comp(D.phi(Bang(A)), S(D.eps(A)))),
        Check(*SC_IDS[3], Comp(D.eps(Bang(A)), D.eps(A)), Comp(S(D.eps(A)), D.eps(A))),
    ]


# ------------------------------------------------------ storage-transformation

STX_IDS = [
    ("s2=formula", "s2 = Delta ; (S(p0) (x) S(p1))"),
    ("s0=e", "s0 = e at the terminal object"),
    ("s2;s2inv=1", "s2 ; s2inv = 1"),
    ("s2inv;s2=1", "s2inv ; s2 = 1"),
    ("s2-assoc", "comonoidal associativity of s2"),
    ("s2-unit-left", "comonoidal left unit: s2 ; (s0 (x) 1) ; uL = S(p1)"),
    ("s2-unit-right", "comonoidal right unit: s2 ; (1 (x) s0) ; uR = S(p0)"),
    ("s2-symmetry", "symmetry: S(c) ; s2 = s2 ; c"),
    ("delta-comonoidal", "delta comonoidal: delta ; S(sigma) ; s2 = s2 ; (delta (x) delta)"),
    ("delta-comonoidal-unit", "delta comonoidal at the unit: delta ; S(!) ; s0 = s0"),
    ("s2-natural", "naturality of s2 on generated relations"),
]


def build_storage_transformation(kit):
    A, B = kit.A, kit.B
    X, Y, Z = A, B, A
    one = Terminal()
    s2, s2i = D.b_s2, D.b_s2inv
    f = kit.gen("st_f", A, A)
    g = kit.gen("st_g", B, A)
    ax_inv = Prim("a_x_inv", Prod(Prod(X, Y), Z), Prod(X, Prod(Y, Z)))
    at_inv = D.a_t_inv(Bang(X), Bang(Y), Bang(Z))
    return [
        Check(*STX_IDS[0], s2(A, B), D.s2_derived(A, B)),
        Check(*STX_IDS[1], D.b_s0(), D.s0_derived()),
        Check(*STX_IDS[2], Comp(s2(A, B), s2i(A, B)), Id(Bang(Prod(A, B)))),
        Check(*STX_IDS[3], Comp(s2i(A, B), s2(A, B)), Id(Tensor(Bang(A), Bang(B)))),
        Check(*STX_IDS[4],
              comp(S(ax_inv), s2(X, Prod(Y, Z)), TensorHom(Id(Bang(X)), s2(Y, Z))),
              comp(s2(Prod(X, Y), Z), TensorHom(s2(X, Y), Id(Bang(Z))), at_inv)),
        Check(*STX_IDS[5], comp(s2(one, A), TensorHom(D.b_s0(), Id(Bang(A))),
                                Prim("uL", Tensor(TensorUnit(), Bang(A)), Bang(A))),
              S(Proj1(one, A))),
        Check(*STX_IDS[6], comp(s2(A, one), TensorHom(Id(Bang(A)), D.b_s0()),
                                Prim("uR", Tensor(Bang(A), TensorUnit()), Bang(A))),
              S(Proj0(A, one))),
        Check(*STX_IDS[7], Comp(S(Prim("c_x", Prod(A, B), Prod(B, A))), s2(B, A)),
              Comp(s2(A, B), D.c_t(Bang(A), Bang(B)))),
        Check(*STX_IDS[8], comp(D.b_delta(Prod(A, B)), S(sigma(A, B)), s2(Bang(A), Bang(B))),
              Comp(s2(A, B), TensorHom(D.b_delta(A), D.b_delta(B)))),
        Check(*STX_IDS[9], comp(D.b_delta(one), S(ToTerminal(Bang(one))), D.b_s0()), D.b_s0()),
        Check(*STX_IDS[10], Comp(S(prod_hom(f, g)), s2(A, A)),
              Comp(s2(A, B), TensorHom(S(f), S(g)))),
    ]


# ----------------------------------------------------------- linear-category

LC_IDS = [
    ("e-monoidal-unit", "e monoidal: m_top ; e = 1"),
    ("e-monoidal", "e monoidal: m_tensor ; e = (e (x) e) ; u"),
    ("Delta-monoidal-unit", "Delta monoidal: m_top ; Delta = u^-1 ; (m_top (x) m_top)"),
    ("Delta-monoidal", "Delta monoidal: m_tensor ; Delta = (Delta (x) Delta) ; ex ; (m_tensor (x) m_tensor)"),
    ("e-coalgebra-morphism", "e coalgebra morphism: delta ; S(e) = e ; m_top"),
    ("Delta-coalgebra-morphism", "Delta coalgebra morphism: delta ; S(Delta) = Delta ; (delta (x) delta) ; m_tensor"),
    ("coalgebra-modality", "delta is a comonoid map: delta ; Delta = Delta ; (delta (x) delta) and delta ; e = e"),
    ("comonoid-coassoc", "(S(A), Delta, e) coassociative"),
    ("comonoid-counit", "(S(A), Delta, e) counit"),
    ("comonoid-cocomm", "(S(A), Delta, e) cocommutative"),
]


def build_linear_category(kit):
    A, B = kit.A, kit.B
    T = TensorUnit()
    SA, SB = Bang(A), Bang(B)
    Dl, e, dl = D.b_Delta, D.b_e, D.b_delta
    mt, mtop = D.m_tensor, D.m_top
    uL = Prim("uL", Tensor(T, T), T)
    uL_inv = Prim("uL_inv", T, Tensor(T, T))
    ab = Tensor(A, B)
    ex = D.ex_tensor(SA, SA, SB, SB)
    uLA = Prim("uL", Tensor(T, SA), SA)
    return [
        Check(*LC_IDS[0], Comp(mtop(), e(T)), Id(T)),
        Check(*LC_IDS[1], Comp(mt(A, B), e(ab)), Comp(TensorHom(e(A), e(B)), uL)),
        Check(*LC_IDS[2], Comp(mtop(), Dl(T)), Comp(uL_inv, TensorHom(mtop(), mtop()))),
        Check(*LC_IDS[3], Comp(mt(A, B), Dl(ab)),
              comp(TensorHom(Dl(A), Dl(B)), ex, TensorHom(mt(A, B), mt(A, B)))),
        Check(*LC_IDS[4], Comp(dl(A), S(e(A))), Comp(e(A), mtop())),
        Check(*LC_IDS[5], Comp(dl(A), S(Dl(A))),
              comp(Dl(A), TensorHom(dl(A), dl(A)), mt(SA, SA))),
        Check(*LC_IDS[6], Pair(Comp(dl(A), Dl(SA)), Comp(dl(A), e(SA))),
              Pair(Comp(Dl(A), TensorHom(dl(A), dl(A))), e(A))),
        Check(*LC_IDS[7], comp(Dl(A), TensorHom(Id(SA), Dl(A)), D.a_t(SA, SA, SA)),
              comp(Dl(A), TensorHom(Dl(A), Id(SA)))),
        Check(*LC_IDS[8], comp(Dl(A), TensorHom(e(A), Id(SA)), uLA), Id(SA)),
        Check(*LC_IDS[9], Comp(Dl(A), D.c_t(SA, SA)), Dl(A)),
    ]


# ---------------------------------------------------- cartesian-differential

CD_IDS = [
    ("CD.1", "CD.1 D[f+g] = D[f]+D[g] and D[0] = 0"),
    ("CD.2", "CD.2 <a+b,c>D[f] = <a,c>D[f] + <b,c>D[f] and <0,a>D[f] = 0"),
    ("CD.3", "CD.3 D[p0] = p0 p0 and D[p1] = p0 p1"),
    ("CD.4", "CD.4 D[<f,g>] = <D[f], D[g]>"),
    ("CD.5", "CD.5 chain rule D[f h] = <D[f], p1 f> D[h]"),
    ("CD.6", "CD.6 <<a,0>,<c,d>> D[D[f]] = <a,d> D[f]"),
    ("CD.7", "CD.7 interchange <<a,b>,<c,d>> D[D[f]] = <<a,c>,<b,d>> D[D[f]]"),
]


def build_cartesian_differential(kit):
    A, B = kit.A, kit.B
    Z = B
    AA = Prod(A, A)
    f = kit.gen("cd_f", A, B)
    g = kit.gen("cd_g", A, B)
    g2 = kit.gen("cd_g2", A, A)
    h = kit.gen("cd_h", B, A)
    a = kit.gen("cd_a", Z, A)
    b = kit.gen("cd_b", Z, A)
    c = kit.gen("cd_c", Z, A)
    d = kit.gen("cd_d", Z, A)
    Df = E.DiffD(f)
    DDf = E.DiffD(E.DiffD(f))
    zA = Zero(Z, A)
    return [
        Check(*CD_IDS[0], Pair(E.DiffD(Plus(f, g)), E.DiffD(Zero(A, B))),
              Pair(Plus(Df, E.DiffD(g)), Zero(AA, B))),
        Check(*CD_IDS[1], Pair(Comp(Pair(Plus(a, b), c), Df), Comp(Pair(zA, a), Df)),
              Pair(Plus(Comp(Pair(a, c), Df), Comp(Pair(b, c), Df)), Zero(Z, B))),
        Check(*CD_IDS[2], Pair(E.DiffD(Proj0(A, B)), E.DiffD(Proj1(A, B))),
              Pair(Comp(Proj0(Prod(A, B), Prod(A, B)), Proj0(A, B)),
                   Comp(Proj0(Prod(A, B), Prod(A, B)), Proj1(A, B)))),
        Check(*CD_IDS[3], E.DiffD(Pair(f, g2)), Pair(Df, E.DiffD(g2))),
        Check(*CD_IDS[4], E.DiffD(Comp(f, h)),
              Comp(Pair(Df, Comp(Proj1(A, A), f)), E.DiffD(h))),
        Check(*CD_IDS[5], Comp(Pair(Pair(a, zA), Pair(c, d)), DDf), Comp(Pair(a, d), Df)),
        Check(*CD_IDS[6], Comp(Pair(Pair(a, b), Pair(c, d)), DDf),
              Comp(Pair(Pair(a, c), Pair(b, d)), DDf)),
    ]


# ------------------------------------------------------- cartesian-deriving

CDV_IDS = [
    ("cd.1", "cd.1 d S(0) eps = 0 and d S(f+g) eps = d (S(f)+S(g)) eps"),
    ("cd.2", "cd.2 <h+k,v> d = <h,v> d + <k,v> d and <0,v> d = 0"),
    ("cd.3", "cd.3 d eps = p0"),
    ("cd.4", "cd.4 d S(<f,g>) eps = d <S(f) eps, S(g) eps>"),
    ("cd.5", "cd.5 d S(f g) eps = <d S(f) eps, p1 f> d S(g) eps"),
    ("cd.6", "cd.6 <<g,0>,<h,k>> d S(d) eps = <g,k> d"),
    ("cd.7", "cd.7 <<0,h>,<g,k>> d S(d) eps = <<0,g>,<h,k>> d S(d) eps"),
    ("cd.8", "cd.8 eta = <1,0> d is linear"),
]


def build_cartesian_deriving(kit):
    A, B = kit.A, kit.B
    Z = B
    AA = Prod(A, A)
    dx = D.d_x
    eps = D.eps
    f = kit.gen("cdv_f", A, B)
    g = kit.gen("cdv_g", A, B)
    g2 = kit.gen("cdv_g2", A, A)
    h2 = kit.gen("cdv_h2", B, A)
    gg = kit.gen("cdv_gz", Z, A)
    hh = kit.gen("cdv_hz", Z, A)
    kk = kit.gen("cdv_kz", Z, A)
    vv = kit.gen("cdv_vz", Z, A)

    def dS(m, a):
        x, y = E.typecheck(m)
        return comp(dx(a), S(m), eps(y))

    dSd = comp(dx(AA), S(dx(A)), eps(Bang(A)))
    zA = Zero(Z, A)
    eta = Comp(Pair(Id(A), Zero(A, A)), dx(A))
    return [
        Check(*CDV_IDS[0], Pair(dS(Zero(A, B), A), dS(Plus(f, g), A)),
              Pair(Zero(AA, B), comp(dx(A), Plus(S(f), S(g)), eps(B)))),
        Check(*CDV_IDS[1], Pair(Comp(Pair(Plus(hh, kk), vv), dx(A)), Comp(Pair(zA, vv), dx(A))),
              Pair(Plus(Comp(Pair(hh, vv), dx(A)), Comp(Pair(kk, vv), dx(A))), Zero(Z, Bang(A)))),
        Check(*CDV_IDS[2], Comp(dx(A), eps(A)), Proj0(A, A)),
        Check(*CDV_IDS[3], dS(Pair(f, g2), A),
              Comp(dx(A), Pair(Comp(S(f), eps(B)), Comp(S(g2), eps(A))))),
        Check(*CDV_IDS[4], dS(Comp(f, h2), A),
              Comp(Pair(dS(f, A), Comp(Proj1(A, A), f)), dS(h2, B))),
        Check(*CDV_IDS[5], Comp(Pair(Pair(gg, zA), Pair(hh, kk)), dSd), Comp(Pair(gg, kk), dx(A))),
        Check(*CDV_IDS[6], Comp(Pair(Pair(zA, hh), Pair(gg, kk)), dSd),
              Comp(Pair(Pair(zA, gg), Pair(hh, kk)), dSd)),
        Check(*CDV_IDS[7], *kit.linear_eq(eta)),
    ]


# ------------------------------------------------------- tensor-differential

TD_IDS = [
    ("d.1", "d.1 constants: d ; e = 0"),
    ("d.2", "d.2 linear maps: d ; eps = (1 (x) e) ; uR"),
    ("d.3", "d.3 product rule"),
    ("d.4", "d.4 chain rule"),
    ("d.5", "d.5 interchange rule"),
]


def build_tensor_differential(kit):
    A = kit.A
    SA = Bang(A)
    T = TensorUnit()
    dt = Prim("d_tensor", Tensor(A, SA), SA)
    e, Dl, eps, dl = D.b_e, D.b_Delta, D.b_eps, D.b_delta
    dtS = Prim("d_tensor", Tensor(SA, Bang(SA)), Bang(SA))
    at, ati, ct = D.a_t, D.a_t_inv, D.c_t
    one = Id
    split = TensorHom(one(A), Dl(A))
    term1 = comp(split, at(A, SA, SA), TensorHom(dt, one(SA)))
    term2 = comp(split, at(A, SA, SA), TensorHom(ct(A, SA), one(SA)), ati(SA, A, SA),
                 TensorHom(one(SA), dt))
    d4_rhs = comp(split, at(A, SA, SA), TensorHom(dt, dl(A)), dtS)
    dt_in = Prim("d_tensor", Tensor(A, SA), SA)
    d5_lhs = Comp(TensorHom(one(A), dt_in), dt)
    d5_rhs = comp(at(A, A, SA), TensorHom(ct(A, A), one(SA)), ati(A, A, SA),
                  TensorHom(one(A), dt_in), dt)
    return [
        Check(*TD_IDS[0], Comp(dt, e(A)), Zero(Tensor(A, SA), T)),
        Check(*TD_IDS[1], Comp(dt, eps(A)),
              Comp(TensorHom(one(A), e(A)), Prim("uR", Tensor(A, T), A))),
        Check(*TD_IDS[2], Comp(dt, Dl(A)), Plus(term1, term2)),
        Check(*TD_IDS[3], Comp(dt, dl(A)), d4_rhs),
        Check(*TD_IDS[4], d5_lhs, d5_rhs),
    ]


# -------------------------------------------------------------- roundtrip

RT_IDS = [
    ("eta=singleton", "codereliction eta = <1,0> D[phi] is the singleton relation"),
    ("eta;eps=1", "codereliction: eta ; eps = 1"),
    ("eta-linear", "codereliction is linear"),
    ("eta-natural", "codereliction natural for linear f: f ; eta = eta ; S(f)"),
    ("reconstruct-d_tensor", "(eta x 1) m_x S(D[phi]) eps lifts to the bag-insert d_tensor"),
    ("inter-definable", "D[f] = (1 x phi) phi_tensor d_tensor S(f) eps"),
    ("D-via-d_x", "D[f] = d_x S(f) eps"),
    ("d_x-via-D", "d_x = D[phi] = d_x S(phi) eps"),
    ("lift-phi_tensor", "tensor lift of phi_tensor is the identity"),
]


def build_roundtrip(kit):
    A, B = kit.A, kit.B
    items = []
    eta = D.eta(A)
    f = kit.gen("rt_f", A, B)
    fl = kit.gen("rt_lin", A, B, "linear")
    items.append(Check(*RT_IDS[0], eta, Prim("sing", A, Bang(A))))
    items.append(Check(*RT_IDS[1], Comp(eta, D.eps(A)), Id(A)))
    items.append(Check(*RT_IDS[2], *kit.linear_eq(eta)))
    items.append(Check(*RT_IDS[3], Comp(fl, D.eta(B)), Comp(eta, S(fl))))

    def rebuild(budget):
        model = kit.model
        m2, p = ST.reconstruct_d_tensor(model, A, budget)
        rb = Prim("d_tensor_rebuilt_base", Tensor(A, Bang(A)), Bang(A))
        dt = Prim("d_tensor", Tensor(A, Bang(A)), Bang(A))
        v = check_equation(m2.base, rb, dt, budget)
        return v, "lift((eta x 1) ; m_x ; S(D[phi]) ; eps)", "d_tensor"

    items.append(Thunk(*RT_IDS[4], rebuild))
    phit = D.phi_tensor(A, Bang(A))
    dts = D.d_tensor(A)
    items.append(Check(*RT_IDS[5], E.DiffD(f),
                       comp(prod_hom(Id(A), D.phi(A)), phit, dts, S(f), D.eps(B))))
    items.append(Check(*RT_IDS[6], E.DiffD(f), comp(D.d_x(A), S(f), D.eps(B))))
    items.append(Check(*RT_IDS[7], D.d_x(A), comp(D.d_x(A), S(D.phi(A)), D.eps(Bang(A)))))

    def lift_id(budget):
        model = kit.model
        m2, p = ST.tensor_lift(model, D.phi_tensor(A, B), budget, name="phi_tensor_lift")
        v = check_equation(m2, p, Id(Tensor(A, B)), budget)
        return v, "lift(phi_tensor)", "id"

    items.append(Thunk(*RT_IDS[8], lift_id))
    return items


# ------------------------------------------------------ bilinear-identities

BI_IDS = [
    ("m_x=formula", "m_x = theta S(theta') mu agrees with the concrete bilinear lifting of phi"),
    ("m_x-lifts-phi", "(phi x phi) ; m_x = phi"),
    ("m_x-linear-left", "m_x is linear in its first argument"),
    ("m_x-linear-right", "m_x is linear in its second argument"),
    ("eps-x-eps", "(eps x eps) ; m_x = m_x ; S(m_x) ; eps"),
    ("D-bilinear", "bilinear h: <<a,b>,<c,e>> D[h] = <a,e> h + <c,b> h"),
    ("D-m_x", "<<a,b>,<c,e>> D[m_x] = <a,e> m_x + <c,b> m_x"),
    ("D-phi-product", "D[phi_(AxB)] splits through D[phi_A], D[phi_B] and m_x"),
    ("D-phi-partial", "(<1,0> x 1) D[phi_(AxB)] = a_x (D[phi_A] x phi_B) m_x"),
    ("sharp2-lift", "two-stage sharp: (1 x (phi x phi)) ; f#2 = f"),
    ("sharp2-linear", "two-stage sharp is linear in its last argument"),
]


def build_bilinear_identities(kit):
    A, B = kit.A, kit.B
    AB = Prod(A, B)
    Z = Prod(AB, AB)
    p00 = Comp(Proj0(AB, AB), Proj0(A, B))
    p01 = Comp(Proj0(AB, AB), Proj1(A, B))
    p10 = Comp(Proj1(AB, AB), Proj0(A, B))
    p11 = Comp(Proj1(AB, AB), Proj1(A, B))
    h = kit.gen("bi_h", AB, A, "bilinear")
    mx = D.m_x(A, B)
    items = []
    if isinstance(kit.model, CoKleisli):
        kit.model, conc = concrete_m_x(kit.model, A, B)
        items.append(Check(*BI_IDS[0], mx, conc))
    else:
        items.append(Skip(*BI_IDS[0], "the concrete m_x relation exists only in coKleisli(FinRel)"))
    items.append(Check(*BI_IDS[1], Comp(prod_hom(D.phi(A), D.phi(B)), mx), D.phi(AB)))
    items.append(Check(*BI_IDS[2], *kit.linear1_eq(mx)))
    items.append(Check(*BI_IDS[3], *kit.linear2_eq(mx)))
    items.append(Check(*BI_IDS[4], Comp(prod_hom(D.eps(Bang(A)), D.eps(Bang(B))), mx),
                       comp(D.m_x(Bang(A), Bang(B)), S(mx), D.eps(Bang(AB)))))

    def dbil(m):
        x, y = E.typecheck(m)[0].left, E.typecheck(m)[0].right
        xy = Prod(x, y)
        q = {(i, j): Comp(P(xy, xy), Pj(x, y)) for i, P in enumerate((Proj0, Proj1))
             for j, Pj in enumerate((Proj0, Proj1))}
        return (E.DiffD(m), Plus(Comp(Pair(q[0, 0], q[1, 1]), m), Comp(Pair(q[1, 0], q[0, 1]), m)))
    items.append(Check(*BI_IDS[5], *dbil(h)))
    items.append(Check(*BI_IDS[6], *dbil(mx)))
    lhs = E.DiffD(D.phi(AB))
    rhs = Plus(Comp(Pair(Comp(Pair(p00, p10), E.DiffD(D.phi(A))), Comp(p11, D.phi(B))), mx),
               Comp(Pair(Comp(p10, D.phi(A)), Comp(Pair(p01, p11), E.DiffD(D.phi(B)))), mx))
    items.append(Check(*BI_IDS[7], lhs, rhs))
    one0 = Pair(Id(A), Zero(A, B))
    items.append(Check(*BI_IDS[8], Comp(prod_hom(one0, Id(AB)), E.DiffD(D.phi(AB))),
                       comp(D.a_x(A, A, B), prod_hom(E.DiffD(D.phi(A)), D.phi(B)), mx)))
    # f : A x (B x A) -> B, generated; f#2 = (1 x m_x) theta S(f) eps
    X, Y = B, A
    f = kit.gen("bi_f3", Prod(A, Prod(X, Y)), B)
    sharp = comp(prod_hom(Id(A), D.m_x(X, Y)), D.theta(A, Prod(X, Y)), S(f), D.eps(B))
    items.append(Check(*BI_IDS[9], Comp(prod_hom(Id(A), prod_hom(D.phi(X), D.phi(Y))), sharp), f))
    # reassociate to (A x S(X)) x S(Y) and test linearity in S(Y)
    re = Comp(D.a_x_inv(A, Bang(X), Bang(Y)), sharp)
    items.append(Check(*BI_IDS[10], *_lin_last(re)))
    return items


def _lin_last(f):
    """f : W x S(Y) -> Z is linear in S(Y) in the storage sense."""
    d, z = E.typecheck(f)
    w, sy = d.left, d.right
    return (Comp(prod_hom(Id(w), D.eps(sy)), f),
            comp(D.theta(w, sy), S(f), D.eps(z)))


# ------------------------------------------------------------ classification

CL_IDS = [
    ("classify-extends", "phi ; f# = f"),
    ("classify-linear", "f# is linear"),
    ("classify-phi", "classify(phi) = id"),
    ("classify-linear-map", "classify(f) = eps ; f for linear f"),
    ("classify-in-slice", "in the slice over A: (1 x phi) ; theta S(f) eps = f"),
    ("classify-unique", "every linear candidate h with phi ; h = f agrees with f# on the fragment"),
]


def build_classification(kit):
    A, B = kit.A, kit.B
    f = kit.gen("cl_f", A, B)
    fl = kit.gen("cl_lin", A, B, "linear")
    g = kit.gen("cl_g", Prod(A, B), B)
    fs = ST.classify(f)

    unique = _uniqueness_item(kit)

    return [
        Check(*CL_IDS[0], Comp(D.phi(A), fs), f),
        Check(*CL_IDS[1], *kit.linear_eq(fs)),
        Check(*CL_IDS[2], ST.classify(D.phi(A)), Id(Bang(A))),
        Check(*CL_IDS[3], ST.classify(fl), Comp(D.eps(A), fl)),
        Check(*CL_IDS[4], Comp(prod_hom(Id(A), D.phi(B)), ST.classify(g, A)), g),
        unique,
    ]


def _uniqueness_item(kit):
    """Constant map A -> B (every bag to the first element of B): every linear
    candidate on the fragment extending it along phi must equal its sharp."""
    i, d = CL_IDS[5]
    if not isinstance(kit.model, CoKleisli):
        return Skip(i, d, "candidate enumeration needs coKleisli(FinRel)")
    A, B = kit.A, kit.B
    t0 = kit.model.base.enumerate(B, 1)[0]
    rel = TableRel(predicate=lambda x, y: y == t0, fwd=lambda x: (t0,))
    kit.model = kit.model.extend(generated={"cl_const": (A, B, rel)})
    t = Prim("cl_const", A, B)

    def run(budget):
        cap = min(budget.domain_grade_cap, 3)
        b = Budget.uniform(cap)
        res = ST.linear_candidates_agree(kit.model, ST.classify(t), D.phi(A), t, b, cap, cap)
        if res.agree and res.satisfying == 1:
            v = Equal(_stats(b))
        else:
            v = Unequal({"family": res.family_size, "satisfying": res.satisfying,
                         "agree": res.agree})
        return (v, f"linear h with phi ; h = cl_const ({res.family_size} candidates, "
                   f"{res.satisfying} satisfying)", "cl_const#")

    return Thunk(i, d, run)


def _stats(budget):
    from ..model import FragmentStats
    return FragmentStats(0, 0, 0, budget)


# ----------------------------------------------------------- comonad (base)

CO_IDS = [
    ("delta;eps_S=1", "comonad: delta ; eps_S = 1"),
    ("delta;S(eps)=1", "comonad: delta ; S(eps) = 1"),
    ("delta-coassoc", "comonad: delta ; delta = delta ; S(delta)"),
    ("eps-natural", "eps natural: S(f) ; eps = eps ; f"),
    ("delta-natural", "delta natural: S(f) ; delta = delta ; S(S(f))"),
    ("S-functor", "S(f ; g) = S(f) ; S(g) and S(1) = 1"),
]


def build_comonad(kit):
    A, B = kit.A, kit.B
    eps, dl = D.b_eps, D.b_delta
    f = kit.gen("co_f", A, B)
    g = kit.gen("co_g", B, A)
    return [
        Check(*CO_IDS[0], Comp(dl(A), eps(Bang(A))), Id(Bang(A))),
        Check(*CO_IDS[1], Comp(dl(A), S(eps(A))), Id(Bang(A))),
        Check(*CO_IDS[2], Comp(dl(A), dl(Bang(A))), Comp(dl(A), S(dl(A)))),
        Check(*CO_IDS[3], Comp(S(f), eps(B)), Comp(eps(A), f)),
        Check(*CO_IDS[4], Comp(S(f), dl(B)), Comp(dl(A), S(S(f)))),
        Check(*CO_IDS[5], Pair(S(Comp(f, g)), S(Id(A))), Pair(Comp(S(f), S(g)), Id(Bang(A)))),
    ]


# -------------------------------------------------------- negative controls

NC_IDS = [
    ("phi-not-linear", "is_linear(phi) must fail"),
    ("left-additive-converse", "(g + h) ; f = g ; f + h ; f fails for a nonlinear f"),
    ("eps-not-zero", "eps differs from the empty relation"),
]


def build_negative_controls(kit):
    A, B = kit.A, kit.B
    items = []
    # slice elements carry the context, so witnesses sit at twice the grade
    sc = Fraction(2) if kit.level.startswith("slice") else Fraction(1)
    if is_storage(kit):
        items.append(Check(*NC_IDS[0], *kit.linear_eq(D.phi(A)), expect="Unequal", cap_scale=sc))
    else:
        items.append(Skip(*NC_IDS[0], "needs a storage model"))
    if kit.level == "poly":
        from ..polydiff import Poly, PolyMap
        sq = PolyMap(1, 1, (Poly(1, {(2,): 1}),))
        kit.model = kit.model.extend({"sq": sq})
        f = Prim("sq", B, B)
        items.append(Check(*NC_IDS[1], Comp(Plus(Id(B), Id(B)), f), Plus(f, f), expect="Unequal", cap_scale=sc))
    elif is_storage(kit):
        # phi is not additive: (1 + swap) ; phi mixes choices inside a bag
        f = D.phi(A)
        g, h = Id(A), _swap(kit, A)
        items.append(Check(*NC_IDS[1], Comp(Plus(g, h), f), Plus(Comp(g, f), Comp(h, f)),
                           expect="Unequal", cap_scale=sc))
    else:
        items.append(Skip(*NC_IDS[1], "needs an additive model with nonlinear maps"))
    if kit.level == "base":
        items.append(Check(*NC_IDS[2], D.b_eps(A), Zero(Bang(A), A), expect="Unequal", cap_scale=sc))
    elif is_storage(kit):
        items.append(Check(*NC_IDS[2], D.eps(A), Zero(Bang(A), A), expect="Unequal", cap_scale=sc))
    else:
        items.append(Skip(*NC_IDS[2], "needs a modality"))
    return items


def _swap(kit, a):
    """Linear map exchanging the first two elements of a, registered in the
    innermost coKleisli(FinRel) model (slices and splits inherit it)."""
    def add(m):
        if isinstance(m, CoKleisli):
            xs = m.base.enumerate(a, 1)
            t = TableRel(pairs=[(x, y) for x in xs for y in xs if x != y])
            return m.extend_base({"nc_swap_base": (a, a, t)}).lift(
                "nc_swap", Prim("nc_swap_base", a, a))
        if hasattr(m, "under"):
            inner, p = add(m.under)
            return m.with_under(inner), p
        return None, None
    m, p = add(kit.model)
    if m is None:
        return kit.gen("nc_swap", a, a, "linear")
    kit.model = m
    return p


# ------------------------------------------------------------- registry

SUITES = [
    Suite("linear-system", LS_IDS, build_linear_system, (STORAGE, DIFF),
          ("LS.1", "LS.2", "LS.3")),
    Suite("abstract-cokleisli", AC_IDS, build_abstract_cokleisli, (STORAGE,),
          ("abstract coKleisli axioms",)),
    Suite("force", FORCE_IDS, build_force, (frozenset({"force"}),),
          ("Force.1", "Force.2", "Force.3", "Force.4", "Force.5", "Force.6", "force remark")),
    Suite("commutative-monad", CM_IDS, build_commutative_monad, (STORAGE,),
          ("commutative monad", "m_x lifting")),
    Suite("split-coequalizer", SC_IDS, build_split_coequalizer, (STORAGE,),
          ("absolute coequalizer",)),
    Suite("storage-transformation", STX_IDS, build_storage_transformation,
          (frozenset({"coalgebra", "tensor"}),), ("storage transformation", "delta comonoidal")),
    Suite("linear-category", LC_IDS, build_linear_category, (frozenset({"coalgebra", "tensor"}),),
          ("linear category", "m_tensor", "coalgebra modality", "comonoid laws")),
    Suite("cartesian-differential", CD_IDS, build_cartesian_differential, (DIFF,),
          ("CD.1", "CD.2", "CD.3", "CD.4", "CD.5", "CD.6", "CD.7")),
    Suite("cartesian-deriving", CDV_IDS, build_cartesian_deriving, (STORAGE | DIFF,),
          ("cd.1", "cd.2", "cd.3", "cd.4", "cd.5", "cd.6", "cd.7", "cd.8")),
    Suite("tensor-differential", TD_IDS, build_tensor_differential,
          (frozenset({"tensor-differential"}),), ("d.1", "d.2", "d.3", "d.4", "d.5")),
    Suite("roundtrip", RT_IDS, build_roundtrip,
          (frozenset({"storage", "differential", "tensor-representation"}),),
          ("codereliction", "reconstruction of d_tensor", "inter-definability", "D <-> d_x")),
    Suite("bilinear-identities", BI_IDS, build_bilinear_identities, (STORAGE | DIFF,),
          ("m_x formula", "(eps x eps) m_x", "bilinear derivative identities", "two-stage sharp")),
    Suite("classification", CL_IDS, build_classification, (STORAGE,),
          ("classification", "persistence")),
    Suite("comonad", CO_IDS, build_comonad, (frozenset({"coalgebra"}),),
          ("comonad laws", "naturality of eps and delta", "S functorial")),
    Suite("negative-controls", NC_IDS, build_negative_controls, (),
          ("negative controls",)),
]
