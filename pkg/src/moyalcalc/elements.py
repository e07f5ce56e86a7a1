"""Exact star-product arithmetic on polynomial x plane-wave combinations.

An element is a finite sum

    a(x) = sum_j  c_j  x^{alpha_j}  e^{i k_j . x}

stored as a mapping (alpha, k) -> c with alpha a multi-index of monomial
exponents and k a real wave vector.  On this carrier the asymptotic expansion
of the star product terminates, so every operation below is exact up to
floating point roundoff.

The product of two terms factorises into four commuting pieces:

  (i)   the scalar BCH phase  exp(-i/2 k1.Theta.k2),
  (ii)  an argument shift  exp(v . d)  acting on x^{alpha1} with
        v = -Theta k2 / 2,
  (iii) an argument shift  exp(w . d)  acting on x^{alpha2} with
        w = +Theta k1 / 2,
  (iv)  the monomial-monomial coupling
        exp(i/2 Theta^{mu nu} d_mu^(1) d_nu^(2)),

and the result carries the wave vector k1 + k2.  Pieces (ii)-(iv) are finite
sums because the monomial degrees bound the expansion order.

Coefficients below ``PRUNE_REL`` times the largest modulus in an element are
dropped after every operation; term iteration is in lexicographic
(alpha, k) order so all reductions are deterministic.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .structure import SymplecticStructure

__all__ = [
    "MoyalElement",
    "Term",
    "star",
    "star_term",
    "commutator",
    "anticommutator",
    "involution",
    "partial",
    "pointwise",
    "xi",
    "coordinate",
    "unit",
    "monomial",
    "plane_wave",
    "is_unitary",
    "norm",
    "distance",
    "rel_distance",
    "dump_element",
    "load_element",
]

PRUNE_REL = 1e-12

# wave vectors are snapped to this dyadic grid so that equal waves reached
# along different arithmetic paths (ulp differences) merge on the same key
_K_GRID = float(2**40)


def _quantize(x: float) -> float:
    x = float(x)
    if abs(x) < 8192.0:
        x = round(x * _K_GRID) / _K_GRID
    return x + 0.0  # normalise -0.0


def _clean_k(k) -> tuple:
    return tuple(_quantize(x) for x in k)


@dataclass(frozen=True)
class Term:
    """A single monomial x^alpha times plane wave e^{ik.x} with a coefficient."""

    alpha: tuple
    k: tuple
    coeff: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(int(a) for a in self.alpha))
        object.__setattr__(self, "k", _clean_k(self.k))
        object.__setattr__(self, "coeff", complex(self.coeff))
        if any(a < 0 for a in self.alpha):
            raise ValueError("monomial exponents must be nonnegative")
        if len(self.alpha) != len(self.k):
            raise ValueError("alpha and k must have the same length")
        if not all(np.isfinite(x) for x in self.k):
            raise ValueError("wave vector components must be finite")


class MoyalElement:
    """Finite complex combination of monomial x plane-wave terms."""

    __slots__ = ("structure", "terms")

    def __init__(self, structure: SymplecticStructure, terms=None):
        merged = {}
        for key, c in (terms or {}).items():
            alpha, k = key
            alpha = tuple(int(a) for a in alpha)
            k = _clean_k(k)
            if len(alpha) != structure.D or len(k) != structure.D:
                raise ValueError(
                    f"term key of length {len(alpha)}/{len(k)} does not match D={structure.D}"
                )
            c = complex(c)
            if c != 0:
                key = (alpha, k)
                merged[key] = merged.get(key, 0j) + c
        self._finish(structure, merged)

    def _finish(self, structure, merged):
        if merged:
            top = max(abs(c) for c in merged.values())
            cutoff = PRUNE_REL * top
            merged = {key: c for key, c in merged.items() if abs(c) > cutoff}
        object.__setattr__(self, "structure", structure)
        object.__setattr__(self, "terms", dict(sorted(merged.items())))

    @classmethod
    def _trusted(cls, structure, merged: dict) -> "MoyalElement":
        """Prune and sort only; the keys must already be canonical."""
        obj = object.__new__(cls)
        obj._finish(structure, merged)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("MoyalElement is immutable")

    # -- iteration and basic queries ------------------------------------
    def items(self):
        return self.terms.items()

    def term_list(self):
        return [Term(alpha, k, c) for (alpha, k), c in self.terms.items()]

    def norm(self) -> float:
        """Max-coefficient norm."""
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def is_zero(self, tol: float = 0.0) -> bool:
        return self.norm() <= tol

    def degree(self) -> int:
        return max((sum(alpha) for (alpha, _k) in self.terms), default=0)

    def is_polynomial(self) -> bool:
        return all(all(x == 0.0 for x in k) for (_alpha, k) in self.terms)

    def constant_part(self) -> complex:
        zero = ((0,) * self.structure.D, (0.0,) * self.structure.D)
        return self.terms.get(zero, 0j)

    # -- ring operations -------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MoyalElement):
            self.structure.check_compatible(other.structure)
            return other
        if isinstance(other, (int, float, complex)):
            return unit(self.structure, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms.get(key, 0j) + c
        return MoyalElement._trusted(self.structure, terms)

    __radd__ = __add__

    def __neg__(self):
        return MoyalElement._trusted(
            self.structure, {key: -c for key, c in self.terms.items()}
        )

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return MoyalElement._trusted(
                self.structure, {key: other * c for key, c in self.terms.items()}
            )
        if isinstance(other, MoyalElement):
            return star(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return self * other
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("star powers require a nonnegative integer exponent")
        out = unit(self.structure)
        for _ in range(n):
            out = star(out, self)
        return out

    # -- algebra maps ----------------------------------------------------
    def dag(self) -> "MoyalElement":
        """Involution: term-wise (alpha, k, c) -> (alpha, -k, conj c)."""
        return MoyalElement._trusted(
            self.structure,
            {
                (alpha, tuple(-x + 0.0 for x in k)): c.conjugate()
                for (alpha, k), c in self.terms.items()
            },
        )

    def partial(self, mu: int) -> "MoyalElement":
        """d/dx_mu, term by term (alpha lowering plus i k_mu)."""
        self.structure.check_index(mu)
        ax = mu - 1
        terms = {}
        for (alpha, k), c in self.terms.items():
            if alpha[ax] > 0:
                lowered = list(alpha)
                lowered[ax] -= 1
                key = (tuple(lowered), k)
                terms[key] = terms.get(key, 0j) + alpha[ax] * c
            if k[ax] != 0.0:
                key = (alpha, k)
                terms[key] = terms.get(key, 0j) + 1j * k[ax] * c
        return MoyalElement._trusted(self.structure, terms)

    def evaluate(self, x) -> complex:
        """Pointwise value sum_j c_j x^alpha_j e^{i k_j . x}."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.structure.D,):
            raise ValueError(f"expected a point of length {self.structure.D}")
        total = 0j
        for (alpha, k), c in self.terms.items():
            mono = 1.0
            for xi_, a in zip(x, alpha):
                if a:
                    mono *= xi_**a
            total += c * mono * cmath.exp(1j * float(np.dot(k, x)))
        return total

    def __repr__(self):
        if not self.terms:
            return "MoyalElement(0)"
        bits = []
        for (alpha, k), c in self.terms.items():
            factors = [f"({c:.6g})"]
            factors += [
                f"x{i + 1}" + (f"^{a}" if a > 1 else "")
                for i, a in enumerate(alpha)
                if a
            ]
            if any(x != 0.0 for x in k):
                factors.append("W[" + ",".join(f"{x:g}" for x in k) + "]")
            bits.append("*".join(factors))
        return "MoyalElement(" + " + ".join(bits) + ")"


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def unit(s: SymplecticStructure, coeff=1.0) -> MoyalElement:
    """The algebra unit (times an optional scalar)."""
    return MoyalElement(s, {((0,) * s.D, (0.0,) * s.D): coeff})


def monomial(s: SymplecticStructure, alpha, coeff=1.0) -> MoyalElement:
    return MoyalElement(s, {(tuple(alpha), (0.0,) * s.D): coeff})


def plane_wave(s: SymplecticStructure, k, coeff=1.0) -> MoyalElement:
    return MoyalElement(s, {((0,) * s.D, _clean_k(k)): coeff})


def coordinate(s: SymplecticStructure, mu: int) -> MoyalElement:
    """The coordinate function x_mu."""
    s.check_index(mu)
    alpha = [0] * s.D
    alpha[mu - 1] = 1
    return monomial(s, alpha)


def xi(s: SymplecticStructure, mu: int) -> MoyalElement:
    """xi_mu = -Theta^{-1}_{mu nu} x_nu, the generator of d_mu = [i xi_mu, .]."""
    s.check_index(mu)
    terms = {}
    for nu in range(s.D):
        c = -s.ThetaInv[mu - 1, nu]
        if c != 0.0:
            alpha = [0] * s.D
            alpha[nu] = 1
            terms[(tuple(alpha), (0.0,) * s.D)] = c
    return MoyalElement(s, terms)


# ---------------------------------------------------------------------------
# polynomial helpers on plain dicts alpha -> coeff
# ---------------------------------------------------------------------------

def _poly_partial(poly: dict, ax: int) -> dict:
    out = {}
    for alpha, c in poly.items():
        e = alpha[ax]
        if e > 0:
            key = alpha[:ax] + (e - 1,) + alpha[ax + 1 :]
            out[key] = out.get(key, 0j) + e * c
    return out


def _poly_shift(poly: dict, v) -> dict:
    """Apply exp(v . d) to a polynomial; terminates at the total degree."""
    out = dict(poly)
    current = poly
    order = 1
    while current:
        nxt = {}
        for ax, vx in enumerate(v):
            if vx == 0.0:
                continue
            for alpha, c in _poly_partial(current, ax).items():
                nxt[alpha] = nxt.get(alpha, 0j) + vx * c
        current = {a: c / order for a, c in nxt.items() if c != 0}
        for alpha, c in current.items():
            out[alpha] = out.get(alpha, 0j) + c
        order += 1
    return out


def _poly_mul(p: dict, q: dict) -> dict:
    out = {}
    for a1, c1 in p.items():
        for a2, c2 in q.items():
            key = tuple(x + y for x, y in zip(a1, a2))
            out[key] = out.get(key, 0j) + c1 * c2
    return out


def _star_couple(p: dict, q: dict, theta_nz) -> dict:
    """exp(i/2 Theta^{mu nu} d_mu (x) d_nu) acting on p (x) q, then multiplied."""
    out = _poly_mul(p, q)
    frontier = [(1 + 0j, p, q)]
    order = 1
    while frontier:
        nxt = []
        for c, pa, pb in frontier:
            for mu, nu, t in theta_nz:
                da = _poly_partial(pa, mu)
                if not da:
                    continue
                db = _poly_partial(pb, nu)
                if not db:
                    continue
                nxt.append((c * 0.5j * t / order, da, db))
        frontier = nxt
        for c, pa, pb in frontier:
            for alpha, cc in _poly_mul(pa, pb).items():
                out[alpha] = out.get(alpha, 0j) + c * cc
        order += 1
    return out


# ---------------------------------------------------------------------------
# the star product
# ---------------------------------------------------------------------------

def _emit_star_term(alpha1, k1, c1, alpha2, k2, c2, s, out):
    """Accumulate the star product of two canonical terms into ``out``."""
    nz = s._theta_nz
    k1_any = any(x != 0.0 for x in k1)
    k2_any = any(x != 0.0 for x in k2)
    coeff = c1 * c2
    if k1_any and k2_any:
        w = 0.0
        for i, j, t in nz:
            w += k1[i] * t * k2[j]
        if w != 0.0:
            coeff *= cmath.exp(-0.5j * w)
    p1 = {alpha1: 1 + 0j}
    if k2_any and any(alpha1):
        v = [0.0] * s.D
        for i, j, t in nz:
            v[i] -= 0.5 * t * k2[j]
        p1 = _poly_shift(p1, v)
    p2 = {alpha2: 1 + 0j}
    if k1_any and any(alpha2):
        # exponent -(1/2) k1_mu Theta_{mu nu} d_nu
        w2 = [0.0] * s.D
        for i, j, t in nz:
            w2[j] -= 0.5 * k1[i] * t
        p2 = _poly_shift(p2, w2)
    combined = _star_couple(p1, p2, nz)
    if k1_any or k2_any:
        kout = _clean_k(x + y for x, y in zip(k1, k2))
    else:
        kout = k1
    for alpha, c in combined.items():
        key = (alpha, kout)
        out[key] = out.get(key, 0j) + coeff * c


def star_term(t1: Term, t2: Term, s: SymplecticStructure) -> MoyalElement:
    """Exact star product of two terms over the structure ``s``."""
    out = {}
    _emit_star_term(t1.alpha, t1.k, t1.coeff, t2.alpha, t2.k, t2.coeff, s, out)
    return MoyalElement._trusted(s, out)


def star(a: MoyalElement, b: MoyalElement) -> MoyalElement:
    """Bilinear extension of ``star_term`` with merge and prune."""
    a.structure.check_compatible(b.structure)
    s = a.structure
    out = {}
    for (alpha1, k1), c1 in a.terms.items():
        for (alpha2, k2), c2 in b.terms.items():
            _emit_star_term(alpha1, k1, c1, alpha2, k2, c2, s, out)
    return MoyalElement._trusted(s, out)


def pointwise(a: MoyalElement, b: MoyalElement) -> MoyalElement:
    """Ordinary commutative product a(x) b(x); closes on the carrier."""
    a.structure.check_compatible(b.structure)
    terms = {}
    for (al1, k1), c1 in a.terms.items():
        for (al2, k2), c2 in b.terms.items():
            key = (
                tuple(x + y for x, y in zip(al1, al2)),
                _clean_k(x + y for x, y in zip(k1, k2)),
            )
            terms[key] = terms.get(key, 0j) + c1 * c2
    return MoyalElement._trusted(a.structure, terms)


def commutator(a: MoyalElement, b: MoyalElement) -> MoyalElement:
    return star(a, b) - star(b, a)


def anticommutator(a: MoyalElement, b: MoyalElement) -> MoyalElement:
    return star(a, b) + star(b, a)


def involution(a: MoyalElement) -> MoyalElement:
    return a.dag()


def partial(mu: int, a: MoyalElement) -> MoyalElement:
    return a.partial(mu)


def is_unitary(g: MoyalElement, tol: float) -> bool:
    """True iff ||g^dag * g - 1|| <= tol in the max-coefficient norm."""
    return (star(g.dag(), g) - unit(g.structure)).norm() <= tol


def norm(a: MoyalElement) -> float:
    return a.norm()


def distance(a: MoyalElement, b: MoyalElement) -> float:
    return (a - b).norm()


def rel_distance(a: MoyalElement, b: MoyalElement) -> float:
    """||a - b|| relative to the larger operand norm (absolute when both tiny)."""
    scale = max(a.norm(), b.norm(), 1.0)
    return distance(a, b) / scale


# ---------------------------------------------------------------------------
# line-oriented serialization
# ---------------------------------------------------------------------------

def dump_element(a: MoyalElement) -> str:
    """One term per line: 'coeff_re coeff_im | alpha_1 .. alpha_D | k_1 .. k_D'."""
    lines = [f"# D={a.structure.D} theta={a.structure.theta!r}"]
    for (alpha, k), c in a.terms.items():
        lines.append(
            f"{c.real!r} {c.imag!r} | "
            + " ".join(str(x) for x in alpha)
            + " | "
            + " ".join(repr(x) for x in k)
        )
    return "\n".join(lines) + "\n"


def load_element(text: str, s: SymplecticStructure) -> MoyalElement:
    terms = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 3:
            raise ValueError(f"line {ln}: expected 'coeff | alpha | k'")
        try:
            re_, im_ = (float(x) for x in parts[0].split())
            alpha = tuple(int(x) for x in parts[1].split())
            k = tuple(float(x) for x in parts[2].split())
        except ValueError as exc:
            raise ValueError(f"line {ln}: {exc}") from exc
        if len(alpha) != s.D or len(k) != s.D:
            raise ValueError(f"line {ln}: index lists must have length D={s.D}")
        key = (alpha, _clean_k(k))
        terms[key] = terms.get(key, 0j) + complex(re_, im_)
    return MoyalElement(s, terms)
