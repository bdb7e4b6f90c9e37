"""Exact arithmetic in rings of cyclotomic integers.

Elements of Z[zeta_N] are integer coefficient vectors in the power
basis 1, zeta, ..., zeta^(phi(N)-1), reduced modulo the N-th cyclotomic
polynomial, so every computation here is exact.  The driving question
is for which moduli n the ideal membership (zeta_N - 1)^k in
n*Z[zeta_N] can hold with zeta_N != 1.  The answer is controlled by the
set of prime powers l^m with m(l-1) <= k; outside that set membership
forces the root of unity to be trivial, and the least common multiple
of the admissible orders is the extension degree needed to kill the
finite-order part of a quasi-unipotent action.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, Optional, Tuple

from .matrices import IntMatrix, char_poly
from .polynomials import IntPoly, cyclotomic_poly


class NonCyclotomicFactor(ValueError):
    """A monic polynomial had an irreducible factor that is not cyclotomic."""

    def __init__(self, remainder: IntPoly) -> None:
        self.remainder = remainder
        super().__init__(f"non-cyclotomic remainder: {remainder}")


@lru_cache(maxsize=None)
def factorize(n: int) -> Tuple[Tuple[int, int], ...]:
    """Prime factorization of n >= 1 as ((p, multiplicity), ...), p ascending."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            m = 0
            while n % p == 0:
                n //= p
                m += 1
            out.append((p, m))
        p += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def euler_phi(n: int) -> int:
    phi = 1
    for p, m in factorize(n):
        phi *= (p - 1) * p ** (m - 1)
    return phi


def prime_power_components(n: int) -> Tuple[int, ...]:
    """The maximal prime-power divisors of n, e.g. 12 -> (4, 3)."""
    return tuple(p**m for p, m in factorize(n))


def _primes_upto(bound: int) -> Tuple[int, ...]:
    return tuple(p for p in range(2, bound + 1) if factorize(p) == ((p, 1),))


@dataclass(frozen=True)
class PrimePowerSet:
    """The prime powers l^m with m(l-1) <= k, together with 1."""

    k: int
    members: Tuple[int, ...]

    def __contains__(self, n: int) -> bool:
        return n in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)


def exceptional_prime_powers(k: int) -> PrimePowerSet:
    """Moduli for which k-fold root-of-unity congruences can be nontrivial.

    Args:
      k: congruence exponent, >= 1.

    Returns:
      PrimePowerSet of every l^m with m(l-1) <= k, plus 1, sorted.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    members = {1}
    for l in _primes_upto(k + 1):
        m = 1
        while m * (l - 1) <= k:
            members.add(l**m)
            m += 1
    return PrimePowerSet(k, tuple(sorted(members)))


@dataclass(frozen=True, init=False)
class CyclotomicInteger:
    """Element of Z[zeta_N] in the power basis modulo Phi_N."""

    order: int
    coeffs: Tuple[int, ...]

    def __init__(self, order: int, coeffs) -> None:
        if order < 1:
            raise ValueError("order must be >= 1")
        reduced = IntPoly(coeffs) % cyclotomic_poly(order)
        phi = euler_phi(order)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(reduced.coeff(i) for i in range(phi)))

    @staticmethod
    def zero(order: int) -> "CyclotomicInteger":
        return CyclotomicInteger(order, ())

    @staticmethod
    def one(order: int) -> "CyclotomicInteger":
        return CyclotomicInteger(order, (1,))

    @staticmethod
    def root(order: int) -> "CyclotomicInteger":
        """zeta_N itself."""
        return CyclotomicInteger(order, (0, 1))

    def _poly(self) -> IntPoly:
        return IntPoly(self.coeffs)

    def _same_order(self, other: "CyclotomicInteger") -> None:
        if self.order != other.order:
            raise ValueError("mixed root-of-unity orders")

    def __add__(self, other: "CyclotomicInteger") -> "CyclotomicInteger":
        self._same_order(other)
        return CyclotomicInteger(self.order, (self._poly() + other._poly()).coeffs)

    def __sub__(self, other: "CyclotomicInteger") -> "CyclotomicInteger":
        self._same_order(other)
        return CyclotomicInteger(self.order, (self._poly() - other._poly()).coeffs)

    def __neg__(self) -> "CyclotomicInteger":
        return CyclotomicInteger(self.order, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInteger(self.order, tuple(c * other for c in self.coeffs))
        if isinstance(other, CyclotomicInteger):
            self._same_order(other)
            return CyclotomicInteger(self.order, (self._poly() * other._poly()).coeffs)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CyclotomicInteger":
        if e < 0:
            raise ValueError("negative powers are not integral in general")
        result = CyclotomicInteger.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_divisible_by(self, n: int) -> bool:
        """Membership in the ideal n*Z[zeta_N]."""
        return all(c % n == 0 for c in self.coeffs)

    def multiplication_matrix(self) -> IntMatrix:
        """Matrix of multiplication by self on the power basis.

        Column j holds the coordinates of self * zeta^j, so the
        characteristic polynomial of the matrix is the field
        characteristic polynomial of the element.
        """
        phi = euler_phi(self.order)
        cols = []
        acc = self
        zeta = CyclotomicInteger.root(self.order)
        for _ in range(phi):
            cols.append(acc.coeffs)
            acc = acc * zeta
        return IntMatrix([[cols[j][i] for j in range(phi)] for i in range(phi)])


def power_membership(order: int, k: int, n: int) -> bool:
    """Decide (zeta - 1)^k in n*Z[zeta] for zeta a primitive root of the given order.

    Args:
      order: root-of-unity order, >= 1.
      k: exponent, >= 1.
      n: modulus, >= 1.

    Returns:
      True iff every power-basis coefficient of (zeta - 1)^k is
      divisible by n.
    """
    if order < 1 or k < 1 or n < 1:
        raise ValueError("order, k, n must all be >= 1")
    if n == 1:
        return True
    if k < euler_phi(order):
        # (x-1)^k is already reduced mod Phi and its leading
        # coefficient is 1, which n >= 2 never divides.
        return False
    rem = IntPoly((-1, 1)) ** k % cyclotomic_poly(order)
    return all(c % n == 0 for c in rem.coeffs)


@dataclass(frozen=True)
class SweepReport:
    """Outcome of an exhaustive membership sweep.

    checked counts the (order, k, n) triples where membership was
    asserted false; violations would list any that held anyway.
    Memberships at moduli inside the exceptional set are legitimate and
    collected in boundary_memberships.
    """

    k_max: int
    n_max: int
    order_max: int
    checked: int
    violations: Tuple[Tuple[int, int, int], ...]
    boundary_memberships: Tuple[Tuple[int, int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def quasi_unipotence_sweep(k_max: int, n_max: int, order_max: int) -> SweepReport:
    """Verify that membership fails whenever the modulus is not exceptional.

    For every k <= k_max, n in [2, n_max] outside
    exceptional_prime_powers(k), and order in [2, order_max], asserts
    power_membership(order, k, n) is false and reports violations
    (there should be none).

    Args:
      k_max, n_max, order_max: inclusive sweep bounds, all >= 1.
    """
    if k_max < 1 or n_max < 1 or order_max < 1:
        raise ValueError("sweep bounds must be >= 1")
    violations = []
    boundary = []
    checked = 0
    for k in range(1, k_max + 1):
        allowed = set(exceptional_prime_powers(k).members)
        for n in range(2, n_max + 1):
            for order in range(2, order_max + 1):
                if n in allowed:
                    if power_membership(order, k, n):
                        boundary.append((order, k, n))
                    continue
                checked += 1
                if power_membership(order, k, n):
                    violations.append((order, k, n))
    return SweepReport(
        k_max, n_max, order_max, checked, tuple(violations), tuple(boundary)
    )


@dataclass(frozen=True)
class DegreeCertificate:
    """Admissible root-of-unity orders for a congruence level, and their lcm.

    degree is None exactly when the certificate is unbounded, which
    happens only for n = 1 where every order is admissible.
    """

    k: int
    n: int
    bound: int
    admissible: Tuple[int, ...]
    degree: Optional[int]
    unbounded: bool


def semistability_degree(k: int, n: int, bound: int = 1000) -> DegreeCertificate:
    """lcm of the orders N <= bound with (zeta_N - 1)^k in n*Z[zeta_N].

    An order is screened through its prime-power components first: if
    zeta_q with q a component of N fails membership on its own, N
    cannot pass, because zeta_q is a power of zeta_N and
    n*Z[zeta_N] meets Z[zeta_q] in n*Z[zeta_q].  Survivors get a
    direct check, so the screen is only a shortcut.

    Args:
      k: congruence exponent, >= 1.
      n: modulus, >= 1; n = 1 yields the unbounded sentinel.
      bound: largest order searched.

    Returns:
      DegreeCertificate listing every admissible order and the lcm.
    """
    if k < 1 or n < 1:
        raise ValueError("k and n must be >= 1")
    if n == 1:
        return DegreeCertificate(k, n, bound, (), None, True)
    admissible = [1]
    for order in range(2, bound + 1):
        comps = prime_power_components(order)
        if all(power_membership(q, k, n) for q in comps) and power_membership(
            order, k, n
        ):
            admissible.append(order)
    return DegreeCertificate(
        k, n, bound, tuple(admissible), math.lcm(*admissible), False
    )


def compute_R(k: int, n: int, bound: int = 1000) -> Optional[int]:
    """The uniform base-change degree for exponent k at level n: just
    the lcm from the certificate, None when n = 1 leaves it unbounded."""
    return semistability_degree(k, n, bound).degree


@lru_cache(maxsize=None)
def _orders_with_phi_at_most(d: int) -> Tuple[int, ...]:
    # phi(N) >= sqrt(N/2), so N <= 2 d^2 exhausts phi(N) <= d.
    return tuple(n for n in range(1, 2 * d * d + 1) if euler_phi(n) <= d)


def cyclotomic_factor(p: IntPoly) -> Dict[int, int]:
    """Factor a monic integer polynomial into cyclotomic polynomials.

    Args:
      p: monic polynomial of degree >= 0.

    Returns:
      {order: multiplicity} with the product of the corresponding
      cyclotomic powers equal to p.

    Raises:
      NonCyclotomicFactor: carrying the monic remainder once no
        cyclotomic polynomial of eligible degree divides it.
    """
    if p.is_zero() or not p.is_monic():
        raise ValueError("only monic polynomials factor into cyclotomics")
    out: Dict[int, int] = {}
    rem = p
    while rem.degree > 0:
        hit = None
        for order in _orders_with_phi_at_most(rem.degree):
            q = cyclotomic_poly(order)
            quo, r = divmod(rem, q)
            if r.is_zero():
                hit = order
                rem = quo
                break
        if hit is None:
            raise NonCyclotomicFactor(rem)
        out[hit] = out.get(hit, 0) + 1
    return out


def eigenvalue_integrality(p: IntPoly, n: int) -> bool:
    """Whether (zeta_N - 1)^2 / n is an algebraic integer for every
    cyclotomic factor of p.

    Decided through the characteristic polynomial of multiplication by
    (zeta_N - 1)^2 on the power basis: the quotient by n satisfies the
    variable-scaled polynomial, which is monic integral iff
    n^(phi - i) divides the coefficient of x^i for every i.

    Args:
      p: monic polynomial with all irreducible factors cyclotomic.
      n: scaling modulus, >= 1.

    Raises:
      NonCyclotomicFactor: propagated from the factorization.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    for order in sorted(cyclotomic_factor(p)):
        beta = (CyclotomicInteger.root(order) - CyclotomicInteger.one(order)) ** 2
        cp = char_poly(beta.multiplication_matrix())
        phi = euler_phi(order)
        if any(cp.coeff(i) % n ** (phi - i) != 0 for i in range(phi + 1)):
            return False
    return True
