import math

import numpy as np
import pytest

from moyalcalc import (
    SymplecticStructure,
    apply_derivation,
    bracket_generators,
    commutator,
    coordinate,
    d2_special_basis,
    eta,
    g2_basis,
    inner_generator,
    monomial,
    partial,
    partial_generator,
    plane_wave,
    pointwise,
    poisson_bracket,
    sym_generator,
    unit,
    verify_d2_special_brackets,
    xi,
)
from moyalcalc.verify import random_element, random_polynomial

S2 = SymplecticStructure(2, 1.0)


def test_apply_partial():
    a = monomial(S2, (1, 1))
    assert (apply_derivation(partial_generator(S2, 1), a) - coordinate(S2, 2)).norm() == 0.0


def test_apply_sym_is_hamiltonian_flow():
    """X_(mu nu) = [i xi_mu xi_nu, .] = xi_mu d_nu + xi_nu d_mu."""
    rng = np.random.default_rng(5)
    for _ in range(10):
        a = random_polynomial(rng, S2)
        for (m, n) in ((1, 1), (1, 2), (2, 2)):
            X = sym_generator(S2, m, n)
            lhs = apply_derivation(X, a)
            rhs = pointwise(xi(S2, m), partial(n, a)) + pointwise(xi(S2, n), partial(m, a))
            assert (lhs - rhs).norm() < 1e-12


def test_inner_quadratic_is_hamiltonian_flow():
    """[(x_mu x_nu), a] = i (x_mu Theta_{nu b} + x_nu Theta_{mu b}) d_b a."""
    rng = np.random.default_rng(6)
    for _ in range(10):
        a = random_polynomial(rng, S2)
        for (m, n) in ((1, 2), (2, 2)):
            P = pointwise(coordinate(S2, m), coordinate(S2, n))
            lhs = apply_derivation(inner_generator(P), a)
            rhs = None
            for b in (1, 2):
                t = 1j * (
                    S2.Theta[n - 1, b - 1] * pointwise(coordinate(S2, m), partial(b, a))
                    + S2.Theta[m - 1, b - 1] * pointwise(coordinate(S2, n), partial(b, a))
                )
                rhs = t if rhs is None else rhs + t
            assert (lhs - rhs).norm() < 1e-12


def test_inner_cubic_matches_third_derivative_formula():
    rng = np.random.default_rng(8)
    a = random_polynomial(rng, S2)
    m = n = 1
    r = 2
    P = pointwise(pointwise(coordinate(S2, m), coordinate(S2, n)), coordinate(S2, r))
    lhs = commutator(P, a)
    rhs = None
    for b in (1, 2):
        t = 1j * (
            S2.Theta[n - 1, b - 1]
            * pointwise(pointwise(coordinate(S2, r), coordinate(S2, m)), partial(b, a))
            + S2.Theta[m - 1, b - 1]
            * pointwise(pointwise(coordinate(S2, n), coordinate(S2, r)), partial(b, a))
            + S2.Theta[r - 1, b - 1]
            * pointwise(pointwise(coordinate(S2, m), coordinate(S2, n)), partial(b, a))
        )
        rhs = t if rhs is None else rhs + t
    for al in (1, 2):
        for sg in (1, 2):
            for lam in (1, 2):
                t = (
                    S2.Theta[m - 1, al - 1]
                    * S2.Theta[n - 1, sg - 1]
                    * S2.Theta[r - 1, lam - 1]
                )
                if t:
                    rhs = rhs - 0.25j * t * partial(al, partial(sg, partial(lam, a)))
    assert (lhs - rhs).norm() < 1e-12


def test_eta_examples():
    # eta(Inner(x1 x2 + 5)) = x1 x2
    P = monomial(S2, (1, 1)) + unit(S2, 5.0)
    got = eta(inner_generator(P))
    assert (got - monomial(S2, (1, 1))).norm() == 0.0
    # eta(Partial(mu)) = i xi_mu
    assert (eta(partial_generator(S2, 1)) - 1j * xi(S2, 1)).norm() == 0.0
    # eta(Sym(1,1)) = i x2^2 / theta^2
    assert (eta(sym_generator(S2, 1, 1)) - 1j * monomial(S2, (0, 2))).norm() < 1e-15
    with pytest.raises(ValueError):
        eta(inner_generator(monomial(S2, (3, 0))))
    with pytest.raises(ValueError):
        eta(inner_generator(plane_wave(S2, (1.0, 0.0))))


def test_eta_has_no_constant_part():
    for X in g2_basis(S2):
        assert abs(eta(X).constant_part()) == 0.0


def test_poisson_bracket_examples():
    x1, x2 = coordinate(S2, 1), coordinate(S2, 2)
    got = poisson_bracket(x1, x2)
    assert (got - unit(S2, S2.Theta[0, 1])).norm() == 0.0
    rng = np.random.default_rng(9)
    for _ in range(20):
        P1 = random_polynomial(rng, S2, max_degree=2)
        P2 = random_polynomial(rng, S2, max_degree=2)
        assert (commutator(P1, P2) - 1j * poisson_bracket(P1, P2)).norm() < 1e-12
    # degree-3 counterexample
    P1, P2 = x1**3, x2**3
    assert (commutator(P1, P2) - 1j * poisson_bracket(P1, P2)).norm() > 1e-3
    with pytest.raises(ValueError):
        poisson_bracket(plane_wave(S2, (1.0, 0.0)), x1)


def test_bracket_generator_examples():
    # [eta_1, eta_2] = i ThetaInv_12 * unit (pure central charge)
    dec = bracket_generators(partial_generator(S2, 1), partial_generator(S2, 2))
    assert abs(dec.central - 1j * S2.ThetaInv[0, 1]) < 1e-14
    assert dec.terms == ()
    # [eta_(11), eta_(12)] = 2 theta^-1 eta_(11)
    dec = bracket_generators(sym_generator(S2, 1, 1), sym_generator(S2, 1, 2))
    assert abs(dec.central) < 1e-14
    assert len(dec.terms) == 1
    c, g = dec.terms[0]
    assert g.name == "X11" and abs(c - 2.0) < 1e-13
    # [eta_1, eta_(12)] = theta^-1 eta_1
    dec = bracket_generators(partial_generator(S2, 1), sym_generator(S2, 1, 2))
    assert abs(dec.central) < 1e-14
    assert len(dec.terms) == 1
    c, g = dec.terms[0]
    assert g.name == "d1" and abs(c - 1.0) < 1e-13


@pytest.mark.parametrize("D", [2, 4])
def test_full_bracket_tables(D):
    s = SymplecticStructure(D, 1.3)
    Ti = s.ThetaInv
    emu = {m: eta(partial_generator(s, m)) for m in range(1, D + 1)}
    esym = {
        (m, n): eta(sym_generator(s, m, n))
        for m in range(1, D + 1)
        for n in range(1, D + 1)
    }
    for m in range(1, D + 1):
        for n in range(1, D + 1):
            lhs = commutator(emu[m], emu[n])
            assert (lhs - 1j * Ti[m - 1, n - 1] * unit(s)).norm() < 1e-12
            for r in range(1, D + 1):
                lhs = commutator(emu[m], esym[(n, r)])
                rhs = Ti[m - 1, n - 1] * emu[r] + Ti[m - 1, r - 1] * emu[n]
                assert (lhs - rhs).norm() < 1e-12
                for t in range(1, D + 1):
                    lhs = commutator(esym[(m, n)], esym[(r, t)])
                    rhs = -(
                        Ti[r - 1, n - 1] * esym[(m, t)]
                        + Ti[t - 1, n - 1] * esym[(m, r)]
                        + Ti[r - 1, m - 1] * esym[(n, t)]
                        + Ti[t - 1, m - 1] * esym[(n, r)]
                    )
                    assert (lhs - rhs).norm() < 1e-12


def test_eta_is_not_a_lie_morphism():
    defect = -commutator(eta(partial_generator(S2, 1)), eta(partial_generator(S2, 2)))
    # equals [xi_1, xi_2] = -i ThetaInv_12, central and nonzero
    assert (defect - defect.constant_part() * unit(S2)).norm() < 1e-14
    assert abs(defect.constant_part() + 1j * S2.ThetaInv[0, 1]) < 1e-14
    assert abs(defect.constant_part()) > 0.1


def test_d2_special_basis_values_and_table():
    eX1, eX2, eX3 = d2_special_basis(S2)
    c = 1j / (4 * math.sqrt(2))
    assert (eX1 - c * (monomial(S2, (2, 0)) + monomial(S2, (0, 2)))).norm() < 1e-15
    assert (eX3 - 2 * c * monomial(S2, (1, 1))).norm() < 1e-15
    res = verify_d2_special_brackets(S2)
    assert max(res.values()) < 1e-12
    with pytest.raises(ValueError):
        d2_special_basis(SymplecticStructure(4, 1.0))


def test_quoted_triple_signs_fail_jacobi():
    """The often-quoted X-X bracket signs violate Jacobi; ours do not.

    With the displayed mixed relations, Jacobi forces
    [eta_X1, [eta_X2, eta_1]] chains to fix the X-X signs uniquely; the
    brute-force table satisfies Jacobi term by term.
    """
    e1 = eta(partial_generator(S2, 1))
    eX1, eX2, eX3 = d2_special_basis(S2)
    # direct Jacobi on the star commutator: always holds for associative star
    lhs = commutator(e1, commutator(eX1, eX2))
    rhs = commutator(commutator(e1, eX1), eX2) + commutator(eX1, commutator(e1, eX2))
    assert (lhs - rhs).norm() < 1e-13
    # quoted sign: [eX1, eX2] = +eX3/sqrt(2) would give [e1, [eX1,eX2]] =
    # -(1/4) e1; the consistent sign gives +(1/4) e1
    got = commutator(e1, commutator(eX1, eX2))
    assert (got - 0.25 * e1).norm() < 1e-13
    quoted = (1 / math.sqrt(2)) * commutator(e1, eX3)
    assert (quoted + 0.25 * e1).norm() < 1e-13  # the quoted value is the negative


def test_reality_of_generators():
    rng = np.random.default_rng(10)
    for _ in range(10):
        a = random_element(rng, S2)
        for X in (partial_generator(S2, 2), sym_generator(S2, 1, 2)):
            lhs = apply_derivation(X, a.dag())
            rhs = apply_derivation(X, a).dag()
            assert (lhs - rhs).norm() < 1e-12


def test_ad_homomorphism():
    rng = np.random.default_rng(12)
    for _ in range(20):
        P = random_polynomial(rng, S2, max_degree=2)
        Q = random_polynomial(rng, S2, max_degree=2)
        a = random_element(rng, S2)
        lhs = commutator(P, commutator(Q, a)) - commutator(Q, commutator(P, a))
        rhs = commutator(commutator(P, Q), a)
        scale = max(1.0, lhs.norm(), rhs.norm())
        assert (lhs - rhs).norm() / scale < 1e-11
