"""Named composite maps, built exactly as written (no simplification).

Storage-level names are meant for a storage model (e.g. the coKleisli
model); base-level names for FinRel.
"""
from __future__ import annotations

from ..expr import (Bang, BangHom, Comp, DiffD, Id, ObjExpr, Pair, Prim, Prod, Proj0,
                    Proj1, Tensor, TensorHom, TensorUnit, Terminal, Zero, comp)


class UnknownDerived(KeyError):
    pass


# ------------------------------------------------------------ storage level

def phi(a):
    return Prim("phi", a, Bang(a))


def eps(a):
    return Prim("eps", Bang(a), a)


def mu(a):
    return eps(Bang(a))


def delta(a):
    return BangHom(phi(a))


def theta(a, x):
    return Prim("theta", Prod(a, Bang(x)), Bang(Prod(a, x)))


def c_x(a, b):
    return Prim("c_x", Prod(a, b), Prod(b, a))


def a_x(a, b, c):
    return Prim("a_x", Prod(a, Prod(b, c)), Prod(Prod(a, b), c))


def a_x_inv(a, b, c):
    return Prim("a_x_inv", Prod(Prod(a, b), c), Prod(a, Prod(b, c)))


def theta_prime(a, x):
    """S(A) x X -> S(A x X) as c ; theta ; S(c)."""
    return comp(c_x(Bang(a), x), theta(x, a), BangHom(c_x(x, a)))


def m_x(a, b):
    return comp(theta(Bang(a), b), BangHom(theta_prime(a, b)), mu(Prod(a, b)))


def d_x(a):
    return DiffD(phi(a))


def eta(a):
    return Comp(Pair(Id(a), Zero(a, a)), DiffD(phi(a)))


def psi_storage(a, x):
    return Comp(BangHom(theta(a, x)), mu(Prod(a, x)))


def phi_tensor(a, b):
    return Prim("phi_tensor", Prod(a, b), Tensor(a, b))


def d_tensor(a):
    return Prim("d_tensor", Tensor(a, Bang(a)), Bang(a))


def sigma(a, b):
    """<S(p0), S(p1)> : S(A x B) -> S(A) x S(B)."""
    return Pair(BangHom(Proj0(a, b)), BangHom(Proj1(a, b)))


# --------------------------------------------------------------- base level

def b_eps(a):
    return Prim("eps", Bang(a), a)


def b_delta(a):
    return Prim("delta", Bang(a), Bang(Bang(a)))


def b_Delta(a):
    return Prim("Delta", Bang(a), Tensor(Bang(a), Bang(a)))


def b_e(a):
    return Prim("e", Bang(a), TensorUnit())


def b_s2(a, b):
    return Prim("s2", Bang(Prod(a, b)), Tensor(Bang(a), Bang(b)))


def b_s2inv(a, b):
    return Prim("s2inv", Tensor(Bang(a), Bang(b)), Bang(Prod(a, b)))


def b_s0():
    return Prim("s0", Bang(Terminal()), TensorUnit())


def b_s0inv():
    return Prim("s0inv", TensorUnit(), Bang(Terminal()))


def s2_derived(a, b):
    return Comp(b_Delta(Prod(a, b)), TensorHom(BangHom(Proj0(a, b)), BangHom(Proj1(a, b))))


def s0_derived():
    return b_e(Terminal())


def psi_monoidal(a, x):
    return comp(b_s2(a, Bang(x)), TensorHom(Id(Bang(a)), b_eps(Bang(x))), b_s2inv(a, x))


def m_tensor(a, b):
    """S(A) (x) S(B) -> S(A (x) B): s2inv ; delta ; S(s2) ; S(eps (x) eps)."""
    return comp(b_s2inv(a, b), b_delta(Prod(a, b)), BangHom(b_s2(a, b)),
                BangHom(TensorHom(b_eps(a), b_eps(b))))


def m_top():
    return comp(b_s0inv(), b_delta(Terminal()), BangHom(b_s0()))


def a_t(a, b, c):
    return Prim("a_tensor", Tensor(a, Tensor(b, c)), Tensor(Tensor(a, b), c))


def a_t_inv(a, b, c):
    return Prim("a_tensor_inv", Tensor(Tensor(a, b), c), Tensor(a, Tensor(b, c)))


def c_t(a, b):
    return Prim("c_tensor", Tensor(a, b), Tensor(b, a))


def ex_tensor(w, x, y, z):
    """(W (x) X) (x) (Y (x) Z) -> (W (x) Y) (x) (X (x) Z) from associators and c."""
    return comp(
        a_t_inv(w, x, Tensor(y, z)),
        TensorHom(Id(w), a_t(x, y, z)),
        TensorHom(Id(w), TensorHom(c_t(x, y), Id(z))),
        TensorHom(Id(w), a_t_inv(y, x, z)),
        a_t(w, y, Tensor(x, z)),
    )


_TABLE = {
    "m_x": m_x, "eta": eta, "d_x": d_x, "mu": mu, "delta": delta, "theta_prime": theta_prime,
    "psi": psi_storage, "phi_tensor": phi_tensor, "sigma": sigma,
    "s2": s2_derived, "s0": s0_derived, "m_tensor": m_tensor, "m_top": m_top,
    "psi_monoidal": psi_monoidal, "ex_tensor": ex_tensor,
}


def derived(name: str, *objects: ObjExpr):
    try:
        fn = _TABLE[name]
    except KeyError:
        raise UnknownDerived(name) from None
    return fn(*objects)


def derived_names():
    return sorted(_TABLE)
