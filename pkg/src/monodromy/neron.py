"""Reduction invariants for finite-order actions.

For a finite-order symplectic tau the special fiber after base change
is abelian, so the toric rank is zero and the dimension splits as
abelian rank a plus unipotent rank u.  Everything here is read off one
Smith normal form of tau - I over Z: 2a zero divisors, the component
group as the divisors above 1, its prime-to-p part by stripping
p-powers.  Per-level torsion then comes from fixed subgroups and gcds
with the divisors, and the verification routines check the announced
shapes of those invariants on concrete generators, clause by clause.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from .cyclotomic import cyclotomic_factor
from .inertia import (
    HypothesisNotMet,
    InertiaError,
    InertiaGenerator,
    Verdict,
    WildRamification,
    is_good,
    is_purely_additive,
)
from .matrices import IntMatrix, char_poly, smith_normal_form
from .torsion import (
    Polarization,
    Subgroup,
    extend_to_maximal_isotropic,
    fixed_subgroup,
    induced_pairing,
    orthogonal_complement,
    standard_module,
)


class NotPotentiallyGood(InertiaError):
    pass


@dataclass(frozen=True)
class NeronInvariants:
    """Rank split and component group of the reduction.

    a + u + t = d with t = 0 throughout; phi lists the elementary
    divisors above 1 of tau - I, phi_prime the same with p-power parts
    removed (all of phi when p = 0).
    """

    dimension: int
    residue_char: int
    abelian_rank: int
    unipotent_rank: int
    toric_rank: int
    phi: Tuple[int, ...]
    phi_prime: Tuple[int, ...]

    @property
    def component_group_order(self) -> int:
        return math.prod(self.phi)

    def phi_torsion_order(self, n: int) -> int:
        """#Phi[n], the n-torsion of the component group."""
        return math.prod(math.gcd(q, n) for q in self.phi)


def _strip_p_part(q: int, p: int) -> int:
    while p > 1 and q % p == 0:
        q //= p
    return q


def neron_invariants(gen: InertiaGenerator, p: Optional[int] = None) -> NeronInvariants:
    """Invariants of the reduction for a finite-order generator.

    Raises:
      NotPotentiallyGood: tau has infinite order.
    """
    if not gen.potentially_good:
        raise NotPotentiallyGood("tau must have finite order")
    if p is None:
        p = gen.residue_char
    displacement = gen.matrix - IntMatrix.identity(gen.rank)
    divisors = smith_normal_form(displacement).divisors
    zero_count = sum(1 for q in divisors if q == 0)
    # the fixed sublattice of a finite-order symplectic action is
    # symplectic, so the rational nullity of tau - I is even
    assert zero_count % 2 == 0
    a = zero_count // 2
    phi = tuple(q for q in divisors if q > 1)
    phi_prime = tuple(
        sorted(s for s in (_strip_p_part(q, p) for q in phi) if s > 1)
    )
    return NeronInvariants(
        dimension=gen.dimension,
        residue_char=p,
        abelian_rank=a,
        unipotent_rank=gen.dimension - a,
        toric_rank=0,
        phi=phi,
        phi_prime=phi_prime,
    )


def _require_tame(inv: NeronInvariants, n: int) -> None:
    if inv.residue_char > 0 and math.gcd(inv.residue_char, n) != 1:
        raise WildRamification(
            f"level {n} shares a factor with the residue characteristic "
            f"{inv.residue_char}"
        )


@dataclass(frozen=True)
class TorsionReport:
    """Per-level snapshot: the fixed subgroup of the n-torsion and the
    n-torsion of the component group, with the kernel-count identity
    #ker((tau - I) mod n) = n^(2a) * #Phi[n] already checked."""

    level: int
    fixed_order: int
    fixed_structure: Tuple[int, ...]
    phi_torsion: Tuple[int, ...]
    b_exponent: Optional[int]


def neron_torsion(gen: InertiaGenerator, n: int,
                  p: Optional[int] = None) -> TorsionReport:
    """Fixed n-torsion and component-group n-torsion, cross-checked.

    The fixed subgroup of the n-torsion is the kernel of (tau - I)
    mod n, whose order factors through the integer Smith form: one
    factor n per zero divisor, gcd(q, n) per nonzero divisor q.

    Raises:
      NotPotentiallyGood: tau has infinite order.
      WildRamification: p divides n.
    """
    if n < 1:
        raise InertiaError("level must be >= 1")
    inv = neron_invariants(gen, p)
    _require_tame(inv, n)
    fix = gen.fixed_at_level(n)
    phi_n = tuple(sorted(g for g in (math.gcd(q, n) for q in inv.phi) if g > 1))
    count = n ** (2 * inv.abelian_rank) * inv.phi_torsion_order(n)
    assert fix.order == count, (fix.order, count)
    b: Optional[int] = None
    if n > 1:
        guess = round(math.log(fix.order, n))
        if n**guess == fix.order:
            b = guess
    return TorsionReport(n, fix.order, fix.structure, phi_n, b)


def _is_elementary_abelian(structure: Tuple[int, ...], q: int) -> bool:
    return all(s == q for s in structure)


def _fixed_maximal_isotropic(gen: InertiaGenerator, n: int,
                             pol: Optional[Polarization] = None) -> Optional[Subgroup]:
    """The canonical fixed maximal isotropic at level n, or None."""
    if pol is None:
        pol = Polarization.principal(gen.dimension)
    module = induced_pairing(standard_module(n, gen.dimension), pol)
    if not module.is_nondegenerate():
        raise HypothesisNotMet(
            f"polarization degree {pol.degree} shares a factor with {n}"
        )
    fix = fixed_subgroup(gen.matrix, module)
    if not orthogonal_complement(fix).is_subgroup_of(fix):
        return None
    return extend_to_maximal_isotropic(fix)


def verify_neron2(gen: InertiaGenerator,
                  pol: Optional[Polarization] = None,
                  p: Optional[int] = None) -> Tuple[Verdict, ...]:
    """Two-torsion shape of the component group.

    With a fixed maximal isotropic subgroup of the two-torsion and
    2^b = #X_2(F): the prime-to-p component group is elementary
    abelian of rank b - 2a, the index identity
    [X_2 : X_2(F)] * #Phi' = 2^(2u) holds, and good reduction is
    equivalent to a vanishing component group with all of X_2 fixed.

    Raises:
      NotPotentiallyGood, HypothesisNotMet, WildRamification.
    """
    inv = neron_invariants(gen, p)
    if inv.residue_char == 2:
        raise HypothesisNotMet("residue characteristic 2 is excluded")
    if _fixed_maximal_isotropic(gen, 2, pol) is None:
        raise HypothesisNotMet(
            "no fixed maximal isotropic subgroup of the two-torsion"
        )
    report = neron_torsion(gen, 2, p)
    assert report.b_exponent is not None
    b = report.b_exponent
    a, u = inv.abelian_rank, inv.unipotent_rank
    out = []

    shape_ok = (
        _is_elementary_abelian(inv.phi_prime, 2)
        and len(inv.phi_prime) == b - 2 * a
    )
    out.append(Verdict(
        "neron2-shape", True, shape_ok, shape_ok,
        "with a fixed maximal isotropic subgroup of the two-torsion and "
        "2^b fixed two-torsion points, the prime-to-p component group is "
        "elementary abelian of order 2^(b - 2a)",
    ))

    index = 2**gen.rank // report.fixed_order
    identity_ok = index * math.prod(inv.phi_prime) == 2 ** (2 * u)
    out.append(Verdict(
        "neron2-index", True, identity_ok, identity_ok,
        "the index of the fixed two-torsion times the component group "
        "order equals 2^(2u)",
    ))

    good = is_good(gen)
    criterion = not inv.phi_prime and report.fixed_order == 2**gen.rank
    out.append(Verdict(
        "neron2-good", criterion, good, criterion == good,
        "good reduction holds iff the component group vanishes and every "
        "two-torsion point is fixed",
    ))
    return tuple(out)


def verify_neron3(gen: InertiaGenerator,
                  pol: Optional[Polarization] = None,
                  p: Optional[int] = None) -> Tuple[Verdict, ...]:
    """Three-torsion shape: fixed order 3^(2d - u), component group
    elementary abelian of rank u, good iff all fixed, purely additive
    iff the fixed part has order 3^d.

    Raises:
      NotPotentiallyGood, HypothesisNotMet, WildRamification.
    """
    inv = neron_invariants(gen, p)
    if inv.residue_char == 3:
        raise HypothesisNotMet("residue characteristic 3 is excluded")
    if _fixed_maximal_isotropic(gen, 3, pol) is None:
        raise HypothesisNotMet(
            "no fixed maximal isotropic subgroup of the three-torsion"
        )
    report = neron_torsion(gen, 3, p)
    d, u = gen.dimension, inv.unipotent_rank
    out = []

    order_ok = report.fixed_order == 3 ** (2 * d - u)
    out.append(Verdict(
        "neron3-fixed-order", True, order_ok, order_ok,
        "with a fixed maximal isotropic subgroup of the three-torsion, "
        "the fixed three-torsion has order 3^(2d - u)",
    ))

    shape_ok = (
        _is_elementary_abelian(inv.phi_prime, 3) and len(inv.phi_prime) == u
    )
    out.append(Verdict(
        "neron3-phi", True, shape_ok, shape_ok,
        "the prime-to-p component group is elementary abelian of order 3^u",
    ))

    good = is_good(gen)
    all_fixed = report.fixed_order == 3 ** (2 * d)
    out.append(Verdict(
        "neron3-good", all_fixed, good, all_fixed == good,
        "good reduction holds iff every three-torsion point is fixed",
    ))

    additive = is_purely_additive(gen)
    additive_shape = report.fixed_order == 3**d
    out.append(Verdict(
        "neron3-additive", additive_shape, additive, additive_shape == additive,
        "purely additive reduction holds iff the fixed three-torsion has "
        "order 3^d",
    ))
    return tuple(out)


def _two_torsion_inside(module) -> Subgroup:
    # the subgroup {x : 2x = 0} of the level-4 module, spanned by 2*e_i
    rank = module.rank
    gens = [[2 if j == i else 0 for j in range(rank)] for i in range(rank)]
    return module.subgroup(gens)


def verify_neron4(gen: InertiaGenerator, mode: str,
                  pol: Optional[Polarization] = None,
                  p: Optional[int] = None) -> Tuple[Verdict, ...]:
    """Four-torsion shape under either entry hypothesis.

    mode "a": tau acts trivially on the two-torsion.
    mode "b": a fixed maximal isotropic subgroup of the four-torsion
    exists for the induced pairing.

    Clauses: X_4(F) isomorphic to (Z/4)^(2a) x (Z/2)^(2u); the index
    [X_4 : X_4(F)] = 2^(2u); X_2 sits inside X_4(F) with index 2^(2a);
    Phi' elementary abelian of rank 2u; good iff X_4(F) = X_4; purely
    additive iff X_4(F) = X_2.

    Raises:
      NotPotentiallyGood, HypothesisNotMet, WildRamification.
    """
    inv = neron_invariants(gen, p)
    if inv.residue_char == 2:
        raise HypothesisNotMet("residue characteristic 2 is excluded")
    if mode == "a":
        displaced = (gen.matrix - IntMatrix.identity(gen.rank)).reduce_mod(2)
        if not displaced.is_zero():
            raise HypothesisNotMet("tau is not trivial on the two-torsion")
    elif mode == "b":
        if _fixed_maximal_isotropic(gen, 4, pol) is None:
            raise HypothesisNotMet(
                "no fixed maximal isotropic subgroup of the four-torsion"
            )
    else:
        raise InertiaError(f"unknown mode {mode!r}")
    report = neron_torsion(gen, 4, p)
    a, u, d = inv.abelian_rank, inv.unipotent_rank, gen.dimension
    module = gen.module(4)
    fix4 = gen.fixed_at_level(4)
    two = _two_torsion_inside(module)
    out = []

    expected = tuple(sorted([2] * (2 * u) + [4] * (2 * a)))
    structure_ok = report.fixed_structure == expected
    out.append(Verdict(
        "neron4-structure", True, structure_ok, structure_ok,
        "the fixed four-torsion is isomorphic to (Z/4)^(2a) x (Z/2)^(2u)",
    ))

    index_ok = 4 ** (2 * d) // report.fixed_order == 2 ** (2 * u)
    out.append(Verdict(
        "neron4-index", True, index_ok, index_ok,
        "the fixed four-torsion has index 2^(2u) in the four-torsion",
    ))

    two_ok = two.is_subgroup_of(fix4) and fix4.order // two.order == 2 ** (2 * a)
    out.append(Verdict(
        "neron4-two-torsion", True, two_ok, two_ok,
        "the full two-torsion lies inside the fixed four-torsion with "
        "index 2^(2a)",
    ))

    shape_ok = (
        _is_elementary_abelian(inv.phi_prime, 2)
        and len(inv.phi_prime) == 2 * u
    )
    out.append(Verdict(
        "neron4-phi", True, shape_ok, shape_ok,
        "the prime-to-p component group is elementary abelian of order "
        "2^(2u)",
    ))

    good = is_good(gen)
    all_fixed = fix4 == module.full_subgroup()
    out.append(Verdict(
        "neron4-good", all_fixed, good, all_fixed == good,
        "good reduction holds iff every four-torsion point is fixed",
    ))

    additive = is_purely_additive(gen)
    collapsed = fix4 == two
    out.append(Verdict(
        "neron4-additive", collapsed, additive, collapsed == additive,
        "purely additive reduction holds iff the fixed four-torsion is "
        "exactly the two-torsion",
    ))
    return tuple(out)


def cokernel_torsion_check(a: IntMatrix, ell: int, m: int, r: int) -> Verdict:
    """Nilpotency of (A - I) mod ell^m with exponent m(ell-1)ell^(r-1)
    bounds the ell-part of the cokernel torsion by ell^(r-1).

    Raises:
      HypothesisNotMet: A not finite order, congruence fails, or r < 2.
    """
    if ell < 2 or m < 1:
        raise InertiaError("need ell >= 2 and m >= 1")
    if r < 2:
        raise HypothesisNotMet("the bound needs r > 1")
    try:
        factors = cyclotomic_factor(char_poly(a))
    except ValueError:
        raise HypothesisNotMet("A must have finite order") from None
    order = math.lcm(*factors.keys())
    if a**order != IntMatrix.identity(a.rows):
        raise HypothesisNotMet("A must have finite order")
    exponent = m * (ell - 1) * ell ** (r - 1)
    modulus = ell**m
    power = (a - IntMatrix.identity(a.rows)) ** exponent
    if not power.reduce_mod(modulus).is_zero():
        raise HypothesisNotMet(
            f"(A - I)^{exponent} does not vanish mod {modulus}"
        )
    divisors = smith_normal_form(a - IntMatrix.identity(a.rows)).divisors
    bound = ell ** (r - 1)
    ok = True
    for q in divisors:
        if q == 0:
            continue
        ell_part = 1
        while q % ell == 0:
            ell_part *= ell
            q //= ell
        if bound % ell_part != 0:
            ok = False
    return Verdict(
        "cokernel-torsion", True, ok, ok,
        f"finite order with (A - I)^{exponent} vanishing mod {modulus} "
        f"bounds the {ell}-part of every cokernel divisor by {bound}",
    )
