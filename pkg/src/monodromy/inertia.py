"""The inertia generator and the reduction-type criteria built on it.

A single integer symplectic matrix tau models the action of a
topological generator of tame inertia on all torsion of an abelian
variety at once.  "Semistable" is defined in-model as (tau - I)^2 = 0,
"good" as tau = I, and a totally ramified base change of degree e
replaces tau by tau^e.  Every criterion below is a decision procedure
returning either a bool or a Verdict that records both sides of the
implication it checks, so agreement can be asserted wholesale by the
property suites.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Optional, Tuple

from .cyclotomic import (
    NonCyclotomicFactor,
    cyclotomic_factor,
    semistability_degree,
)
from .matrices import IntMatrix, ModMatrix, char_poly, is_unipotent
from .polynomials import IntPoly
from .torsion import (
    DegeneratePairingError,
    Polarization,
    Subgroup,
    TorsionModule,
    extend_to_maximal_isotropic,
    fixed_subgroup,
    fixes_pointwise,
    induced_pairing,
    enumerate_subgroups,
    orthogonal_complement,
    standard_module,
)


class InertiaError(ValueError):
    pass


class NotSymplectic(InertiaError):
    pass


class NotQuasiUnipotent(InertiaError):
    pass


class WildRamification(InertiaError):
    pass


class NotPotentiallySemistable(InertiaError):
    """The unipotent part is too deep: no power e has (tau^e - I)^2 = 0."""


class HypothesisNotMet(InertiaError):
    pass


class DegreeObstruction(InertiaError):
    """The polarization degree shares a factor with the level."""


def standard_symplectic_form(d: int) -> IntMatrix:
    """The integer Gram matrix [[0, I], [-I, 0]] of size 2d."""
    g = [[0] * (2 * d) for _ in range(2 * d)]
    for i in range(d):
        g[i][d + i] = 1
        g[d + i][i] = -1
    return IntMatrix(g)


@dataclass(frozen=True)
class InertiaGenerator:
    """Validated symplectic quasi-unipotent integer matrix with context.

    semisimple_order is the least e >= 1 with (tau^e - I)^2 = 0, which
    for these matrices equals the lcm of the orders of the cyclotomic
    factors of the characteristic polynomial.  unipotent_index is the
    nilpotency index of tau - I when tau is unipotent, with the
    identity assigned index 0, and None otherwise.
    """

    matrix: IntMatrix
    residue_char: int
    dimension: int
    factor_orders: Tuple[Tuple[int, int], ...]
    semisimple_order: int
    unipotent_index: Optional[int]
    potentially_good: bool

    @property
    def rank(self) -> int:
        return 2 * self.dimension

    @property
    def order(self) -> Optional[int]:
        """Multiplicative order, when finite."""
        return self.semisimple_order if self.potentially_good else None

    def power(self, e: int) -> IntMatrix:
        return self.matrix**e

    def module(self, n: int) -> TorsionModule:
        return standard_module(n, self.dimension)

    def fixed_at_level(self, n: int) -> Subgroup:
        return fixed_subgroup(self.matrix, self.module(n))


def classify(matrix: IntMatrix, residue_char: int = 0) -> InertiaGenerator:
    """Validate a candidate inertia matrix and derive its invariants.

    Raises:
      NotSymplectic: wrong shape or tau^T J tau != J.
      NotQuasiUnipotent: characteristic polynomial has a
        non-cyclotomic factor.
      NotPotentiallySemistable: quasi-unipotent, but the unipotent
        part at the semisimple order has nilpotency index above 2, so
        no base change makes the action semistable.
      WildRamification: the residue characteristic divides the
        semisimple order.
    """
    if residue_char < 0:
        raise InertiaError("residue characteristic must be >= 0")
    if not matrix.is_square or matrix.rows % 2 or matrix.rows < 2:
        raise NotSymplectic("matrix must be square of even positive size")
    d = matrix.rows // 2
    j = standard_symplectic_form(d)
    if matrix.transpose() @ j @ matrix != j:
        raise NotSymplectic("matrix does not preserve the standard symplectic form")
    try:
        factors = cyclotomic_factor(char_poly(matrix))
    except NonCyclotomicFactor as exc:
        raise NotQuasiUnipotent(
            f"characteristic polynomial has non-cyclotomic factor {exc.remainder}"
        ) from exc
    orders = tuple(sorted(factors.items()))
    m = math.lcm(*factors.keys())
    ident = IntMatrix.identity(matrix.rows)
    power_m = matrix**m
    if ((power_m - ident) ** 2) != IntMatrix.zeros(matrix.rows, matrix.rows):
        raise NotPotentiallySemistable(
            f"(tau^{m} - I)^2 != 0: unipotent part has nilpotency index above 2"
        )
    if residue_char > 0 and math.gcd(residue_char, m) != 1:
        raise WildRamification(
            f"residue characteristic {residue_char} divides the semisimple order {m}"
        )
    unipotent, index = is_unipotent(matrix)
    return InertiaGenerator(
        matrix=matrix,
        residue_char=residue_char,
        dimension=d,
        factor_orders=orders,
        semisimple_order=m,
        unipotent_index=index if unipotent else None,
        potentially_good=(power_m == ident),
    )


@dataclass(frozen=True)
class Verdict:
    """One criterion's outcome: the two sides it relates and whether
    they are consistent.

    hypothesis/conclusion are None when the criterion makes no claim
    (side condition not met); agree is True in that case.  citation is
    a self-contained statement of the rule being checked.
    """

    criterion: str
    hypothesis: Optional[bool]
    conclusion: Optional[bool]
    agree: bool
    citation: str
    witness: Optional[Subgroup] = None


def _require_tame_level(gen: InertiaGenerator, n: int, what: str = "level") -> None:
    if n < 1:
        raise InertiaError(f"{what} must be >= 1")
    if gen.residue_char > 0 and math.gcd(gen.residue_char, n) != 1:
        raise WildRamification(
            f"{what} {n} shares a factor with the residue characteristic {gen.residue_char}"
        )


def _square_of_displacement(a: IntMatrix) -> IntMatrix:
    return (a - IntMatrix.identity(a.rows)) ** 2


def galois_criterion(gen: InertiaGenerator) -> bool:
    """Semistability itself: (tau - I)^2 = 0 over the integers."""
    return _square_of_displacement(gen.matrix).is_zero()


def square_zero_mod_n(gen: InertiaGenerator, n: int) -> bool:
    """(tau - I)^2 = 0 mod n.  For n >= 5 this is equivalent to
    semistability; for n <= 4 it can hold spuriously."""
    _require_tame_level(gen, n)
    return _square_of_displacement(gen.matrix).reduce_mod(n).is_zero()


def semistable_after_extension(gen: InertiaGenerator, e: int) -> bool:
    """(tau^e - I)^2 = 0: some degree-e base change is semistable.

    No coprimality constraint on e: the minimal degree is the semisimple
    order and is prime to the residue characteristic, so whenever it
    divides e a degree-e extension with the right tame part exists.
    """
    if e < 1:
        raise InertiaError("extension degree must be >= 1")
    return _square_of_displacement(gen.matrix**e).is_zero()


def minimal_semistable_degree(gen: InertiaGenerator) -> int:
    return gen.semisimple_order


def is_good(gen: InertiaGenerator) -> bool:
    return gen.matrix == IntMatrix.identity(gen.rank)


def is_purely_additive(gen: InertiaGenerator) -> bool:
    """1 is not an eigenvalue of tau: the fixed part has rank zero."""
    return (gen.matrix - IntMatrix.identity(gen.rank)).det() != 0


def eigenvalue_order_check(gen: InertiaGenerator, m: int) -> bool:
    """Whether every eigenvalue is an m-th root of unity."""
    if m < 1:
        raise InertiaError("m must be >= 1")
    return all(m % order == 0 for order, _ in gen.factor_orders)


def witness_exists(gen: InertiaGenerator, n: int,
                   module: Optional[TorsionModule] = None) -> bool:
    """Whether some subgroup S at level n has tau trivial on S and on
    its orthogonal complement.

    S works iff S and S-perp both sit inside the fixed subgroup FIX;
    complements shrink as subgroups grow, so S = FIX minimizes the
    complement and the test collapses to FIX-perp <= FIX.
    """
    _require_tame_level(gen, n)
    if module is None:
        module = gen.module(n)
    fix = fixed_subgroup(gen.matrix, module)
    return orthogonal_complement(fix).is_subgroup_of(fix)


def find_witness_subgroup(gen: InertiaGenerator, n: int,
                          module: Optional[TorsionModule] = None,
                          cap: int = 10**6) -> Optional[Subgroup]:
    """First subgroup in canonical order with tau trivial on it and on
    its orthogonal complement, or None.

    The existence test is the cheap containment above; the exhaustive
    scan runs only when a witness is known to exist.

    Raises:
      EnumerationCapError: subgroup enumeration refused (propagated).
    """
    _require_tame_level(gen, n)
    if module is None:
        module = gen.module(n)
    if not witness_exists(gen, n, module):
        return None
    tau_mod = gen.matrix.reduce_mod(n)
    for sub in enumerate_subgroups(module, cap):
        if fixes_pointwise(tau_mod, sub) and fixes_pointwise(
            tau_mod, orthogonal_complement(sub)
        ):
            return sub
    raise AssertionError("existence test promised a witness")


def raynaud_criterion(gen: InertiaGenerator, m: int) -> Verdict:
    """Unramified m-torsion with m >= 3 forces semistability."""
    _require_tame_level(gen, m)
    hypothesis = (gen.matrix - IntMatrix.identity(gen.rank)).reduce_mod(m).is_zero()
    citation = (
        "if tau fixes all points of the m-torsion for some m >= 3, "
        "then (tau - I)^2 = 0; at m = 2 the rule fails (tau = -I)"
    )
    name = f"raynaud-{m}"
    if hypothesis and m >= 3:
        semistable = galois_criterion(gen)
        return Verdict(name, True, True, semistable, citation)
    return Verdict(name, hypothesis, None, True, citation)


def level_structure_criterion(gen: InertiaGenerator, n: int,
                              pol: Optional[Polarization] = None) -> Verdict:
    """Fixed maximal isotropic level structure versus semistability.

    Forward: a fixed maximal isotropic subgroup at level n >= 5 forces
    semistability.  Converse: semistability yields one, built by
    isotropic extension of the full fixed subgroup.  Both need the
    polarization degree prime to n, which is exactly nondegeneracy of
    the induced pairing.

    Raises:
      DegreeObstruction: induced pairing degenerate (degree shares a
        factor with n); neither direction is then modeled.
    """
    _require_tame_level(gen, n)
    if pol is None:
        pol = Polarization.principal(gen.dimension)
    module = induced_pairing(standard_module(n, gen.dimension), pol)
    if not module.is_nondegenerate():
        raise DegreeObstruction(
            f"polarization degree {pol.degree} shares a factor with level {n}"
        )
    fix = fixed_subgroup(gen.matrix, module)
    exists = orthogonal_complement(fix).is_subgroup_of(fix)
    witness = extend_to_maximal_isotropic(fix) if exists else None
    semistable = galois_criterion(gen)
    agree = True
    if exists and n >= 5 and not semistable:
        agree = False
    if semistable and not exists:
        agree = False
    conclusion: Optional[bool]
    if exists and n >= 5:
        conclusion = semistable
    elif semistable:
        conclusion = exists
    else:
        conclusion = None
    citation = (
        "with polarization degree prime to n: a fixed maximal isotropic "
        "subgroup at level n >= 5 exists iff (tau - I)^2 = 0, and under "
        "semistability one is built by isotropic extension of the fixed "
        "subgroup at any level"
    )
    return Verdict("level-structure", exists, conclusion, agree, citation, witness)


def exceptional_criterion(gen: InertiaGenerator, n: int,
                          module: Optional[TorsionModule] = None,
                          cap: int = 10**6) -> Verdict:
    """A witness subgroup at level n forces semistability in degree
    R, the lcm of root-of-unity orders admissible for (2, n).

    At the exceptional levels R(2) = 4, R(3) = 3, R(4) = 2; from n = 5
    on R = 1 and this is the plain witness criterion.
    """
    if n < 2:
        raise InertiaError("level must be >= 2")
    _require_tame_level(gen, n)
    degree = semistability_degree(2, n).degree
    assert degree is not None
    witness = find_witness_subgroup(gen, n, module, cap)
    citation = (
        f"a subgroup S at level {n} with tau trivial on S and on its "
        f"orthogonal complement forces (tau^{degree} - I)^2 = 0, the "
        f"exponent being the lcm of the admissible root orders for "
        f"squared displacements at level {n}"
    )
    if witness is None:
        return Verdict("exceptional-degree", False, None, True, citation)
    conclusion = semistable_after_extension(gen, degree)
    return Verdict("exceptional-degree", True, True, conclusion, citation, witness)


def quartic_semistability_check(gen: InertiaGenerator,
                                pol: Optional[Polarization] = None) -> Verdict:
    """Fixed maximal isotropic two-torsion forces (tau - I)^2 = 0 mod 2
    and semistability in degree 4.

    Raises:
      WildRamification: residue characteristic 2.
      HypothesisNotMet: no fixed maximal isotropic subgroup mod 2.
    """
    if gen.residue_char == 2:
        raise WildRamification("the criterion needs residue characteristic != 2")
    if pol is None:
        pol = Polarization.principal(gen.dimension)
    module = induced_pairing(standard_module(2, gen.dimension), pol)
    if not module.is_nondegenerate():
        raise DegreeObstruction(
            f"polarization degree {pol.degree} is even: the mod-2 pairing degenerates"
        )
    fix = fixed_subgroup(gen.matrix, module)
    if not orthogonal_complement(fix).is_subgroup_of(fix):
        raise HypothesisNotMet("no fixed maximal isotropic subgroup of the two-torsion")
    witness = extend_to_maximal_isotropic(fix)
    conclusion = square_zero_mod_n(gen, 2) and semistable_after_extension(gen, 4)
    citation = (
        "a fixed maximal isotropic subgroup of the two-torsion forces "
        "(tau - I)^2 = 0 mod 2 and (tau^4 - I)^2 = 0"
    )
    return Verdict("quartic-semistability", True, True, conclusion, citation, witness)


def _fixed_has_element_of_order(gen: InertiaGenerator, r: int) -> bool:
    fix = gen.fixed_at_level(r)
    structure = fix.structure
    return bool(structure) and structure[-1] % r == 0


def _fixes_all_two_torsion(gen: InertiaGenerator) -> bool:
    return gen.fixed_at_level(2).order == 2**gen.rank


def elliptic_criteria(gen: InertiaGenerator) -> Tuple[Verdict, ...]:
    """The six fixed-point criteria for dimension one.

    Each clause is an equivalence; hypothesis holds the fixed-point
    side, conclusion the base-change side, agree their equality.
    Clauses whose residue-characteristic constraint fails are reported
    with both sides None.
    """
    if gen.dimension != 1:
        raise HypothesisNotMet("these criteria apply to dimension 1 only")
    p = gen.residue_char
    out = []

    def clause(name, allowed, left, right, citation):
        if not allowed:
            out.append(Verdict(name, None, None, True, citation))
        else:
            lv, rv = left(), right()
            out.append(Verdict(name, lv, rv, lv == rv, citation))

    clause(
        "elliptic-a", p != 2,
        lambda: _fixed_has_element_of_order(gen, 2),
        lambda: semistable_after_extension(gen, 4),
        "for p != 2: a fixed point of order 2 exists iff (tau^4 - I)^2 = 0",
    )
    clause(
        "elliptic-b", p != 3,
        lambda: _fixed_has_element_of_order(gen, 3),
        lambda: semistable_after_extension(gen, 3),
        "for p != 3: a fixed point of order 3 exists iff (tau^3 - I)^2 = 0",
    )
    clause(
        "elliptic-c", p != 2,
        lambda: _fixed_has_element_of_order(gen, 4) or _fixes_all_two_torsion(gen),
        lambda: semistable_after_extension(gen, 2),
        "for p != 2: a fixed point of order 4 exists, or all points of "
        "order 2 are fixed, iff (tau^2 - I)^2 = 0",
    )
    clause(
        "elliptic-d",
        p != 2 and gen.potentially_good and not is_good(gen),
        lambda: (not _fixed_has_element_of_order(gen, 4))
        and _fixes_all_two_torsion(gen),
        lambda: gen.matrix**2 == IntMatrix.identity(gen.rank),
        "for p != 2 and bad potentially good reduction: tau^2 = I iff "
        "no fixed point of order 4 exists and all points of order 2 are fixed",
    )
    clause(
        "elliptic-e", p not in (2, 3),
        lambda: not (
            _fixed_has_element_of_order(gen, 2) or _fixed_has_element_of_order(gen, 3)
        ),
        lambda: not any(semistable_after_extension(gen, e) for e in range(1, 6)),
        "for p not in {2, 3}: no fixed points of order 2 or 3 iff no "
        "base change of degree below 6 is semistable",
    )
    clause(
        "elliptic-f", p not in (2, 3),
        lambda: not _fixed_has_element_of_order(gen, 4)
        and not _fixed_has_element_of_order(gen, 3)
        and not _fixes_all_two_torsion(gen),
        lambda: not any(semistable_after_extension(gen, e) for e in range(1, 4)),
        "for p not in {2, 3}: no fixed point of order 4 or 3 and not all "
        "order-2 points fixed iff no base change of degree below 4 is semistable",
    )
    return tuple(out)


def purely_additive_criteria(gen: InertiaGenerator) -> Tuple[Verdict, ...]:
    """Witness levels 4 and 3 against quadratic / cubic good reduction,
    for purely additive potentially good actions.

    Raises:
      HypothesisNotMet: tau has infinite order or a nonzero fixed part.
    """
    if not gen.potentially_good:
        raise HypothesisNotMet("tau must have finite order")
    if not is_purely_additive(gen):
        raise HypothesisNotMet("tau must have no eigenvalue 1")
    out = []
    p = gen.residue_char
    if p != 2:
        left = witness_exists(gen, 4)
        right = gen.matrix**2 == IntMatrix.identity(gen.rank)
        out.append(Verdict(
            "purely-additive-quadratic", left, right, left == right,
            "purely additive finite order, p != 2: a witness subgroup at "
            "level 4 exists iff tau^2 = I",
        ))
    else:
        out.append(Verdict(
            "purely-additive-quadratic", None, None, True,
            "purely additive finite order, p != 2: a witness subgroup at "
            "level 4 exists iff tau^2 = I",
        ))
    if p != 3:
        left = witness_exists(gen, 3)
        right = gen.matrix**3 == IntMatrix.identity(gen.rank)
        out.append(Verdict(
            "purely-additive-cubic", left, right, left == right,
            "purely additive finite order, p != 3: a witness subgroup at "
            "level 3 exists iff tau^3 = I",
        ))
    else:
        out.append(Verdict(
            "purely-additive-cubic", None, None, True,
            "purely additive finite order, p != 3: a witness subgroup at "
            "level 3 exists iff tau^3 = I",
        ))
    return tuple(out)
