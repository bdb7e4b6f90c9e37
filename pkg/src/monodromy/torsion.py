"""Torsion points at a fixed level as a pairing-equipped module.

The n-torsion of a d-dimensional abelian variety is modeled as
(Z/nZ)^(2d) carrying an alternating Gram matrix, with the Weil pairing
values written additively in Z/nZ.  Subgroups are stored by canonical
Howell-form generator matrices, so equality of subgroups is equality
of data, and every operation downstream (orthogonal complements,
isotropic extensions, fixed subgroups, exhaustive subgroup search) is
deterministic and exact.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, List, Optional, Tuple, Union

from .matrices import (
    IntMatrix,
    ModMatrix,
    howell_form,
    howell_pivots,
    kernel_mod_n,
    smith_normal_form,
)
from .polynomials import divisors


class TorsionError(ValueError):
    pass


class DegeneratePairingError(TorsionError):
    pass


class EnumerationCapError(TorsionError):
    pass


def standard_symplectic_gram(n: int, d: int) -> ModMatrix:
    """The block form [[0, I], [-I, 0]] of size 2d over Z/nZ."""
    g = [[0] * (2 * d) for _ in range(2 * d)]
    for i in range(d):
        g[i][d + i] = 1
        g[d + i][i] = -1
    return ModMatrix(n, g)


@lru_cache(maxsize=None)
def standard_module(n: int, d: int) -> "TorsionModule":
    """The principally polarized module at level n, cached."""
    return TorsionModule(n, d)


class TorsionModule:
    """(Z/nZ)^(2d) with an alternating pairing <x, y> = x^T G y."""

    __slots__ = ("level", "dimension", "gram")

    def __init__(
        self,
        level: int,
        dimension: int,
        gram: Optional[Union[ModMatrix, IntMatrix]] = None,
    ) -> None:
        if level < 1:
            raise TorsionError("level must be >= 1")
        if dimension < 1:
            raise TorsionError("dimension must be >= 1")
        if gram is None:
            gram = standard_symplectic_gram(level, dimension)
        elif isinstance(gram, IntMatrix):
            gram = gram.reduce_mod(level)
        if gram.modulus != level:
            raise TorsionError("Gram modulus does not match the level")
        if gram.rows != 2 * dimension or gram.cols != 2 * dimension:
            raise TorsionError("Gram matrix must be 2d x 2d")
        if gram.transpose() != -gram or any(
            gram.data[i][i] % level for i in range(2 * dimension)
        ):
            raise TorsionError("pairing must be alternating")
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "dimension", dimension)
        object.__setattr__(self, "gram", gram)

    def __setattr__(self, name, value):
        raise AttributeError("TorsionModule is immutable")

    @property
    def rank(self) -> int:
        return 2 * self.dimension

    @property
    def order(self) -> int:
        return self.level ** self.rank

    def is_nondegenerate(self) -> bool:
        return math.gcd(self.gram.det(), self.level) == 1

    def pair(self, x: Tuple[int, ...], y: Tuple[int, ...]) -> int:
        n = self.level
        gy = [sum(self.gram.data[i][j] * y[j] for j in range(self.rank)) % n
              for i in range(self.rank)]
        return sum(x[i] * gy[i] for i in range(self.rank)) % n

    def subgroup(self, generators) -> "Subgroup":
        """Subgroup spanned by the given row vectors."""
        gens = ModMatrix(self.level, generators, self.rank)
        return Subgroup(self, howell_form(gens))

    def trivial_subgroup(self) -> "Subgroup":
        return self.subgroup([])

    def full_subgroup(self) -> "Subgroup":
        return self.subgroup(ModMatrix.identity(self.rank, self.level).data)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TorsionModule)
            and self.level == other.level
            and self.dimension == other.dimension
            and self.gram == other.gram
        )

    def __hash__(self) -> int:
        return hash(("TorsionModule", self.level, self.dimension, self.gram))

    def __repr__(self) -> str:
        return f"TorsionModule(level={self.level}, dimension={self.dimension})"


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of a torsion module, held in Howell canonical form."""

    module: TorsionModule
    gens: ModMatrix

    @property
    def order(self) -> int:
        n = self.module.level
        out = 1
        for _, p in howell_pivots(self.gens):
            out *= n // p
        return out

    def contains(self, x) -> bool:
        vec = tuple(int(v) % self.module.level for v in x)
        if len(vec) != self.module.rank:
            raise TorsionError("vector length does not match the module rank")
        if all(v == 0 for v in vec):
            return True
        joined = howell_form(
            ModMatrix(self.module.level, list(self.gens.data) + [list(vec)],
                      self.module.rank)
        )
        return joined == self.gens

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        if self.module != other.module:
            raise TorsionError("subgroups of different modules")
        return all(other.contains(row) for row in self.gens.data)

    def elements(self) -> Iterator[Tuple[int, ...]]:
        """All elements, each exactly once.

        Coefficient c_i of Howell row i runs over [0, n/pivot_i); the
        saturation property of the form makes this a bijection onto
        the subgroup.
        """
        n = self.module.level
        rows = self.gens.data
        ranges = [range(n // p) for _, p in howell_pivots(self.gens)]
        for coeffs in itertools.product(*ranges):
            yield tuple(
                sum(c * row[j] for c, row in zip(coeffs, rows)) % n
                for j in range(self.module.rank)
            )

    @property
    def structure(self) -> Tuple[int, ...]:
        """Invariant factors (s_1 | s_2 | ...), omitting trivial ones."""
        return _structure(self.module.level, self.module.rank, self.gens)

    def apply(self, a: ModMatrix) -> "Subgroup":
        """Image under x -> a x (generators transform by right
        multiplication with a^T)."""
        if a.modulus != self.module.level or a.rows != self.module.rank:
            raise TorsionError("matrix does not act on this module")
        if self.gens.rows == 0:
            return self
        return Subgroup(self.module, howell_form(self.gens @ a.transpose()))

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, gens={self.gens.to_lists()!r} mod {self.module.level})"


@lru_cache(maxsize=None)
def _structure(level: int, rank: int, gens: ModMatrix) -> Tuple[int, ...]:
    # Full-rank integer basis of the preimage lattice L with nZ^c <= L,
    # then L / nZ^c has invariant factors given by the Smith form of
    # n * H^{-1}, which is integral exactly because nZ^c <= L.
    from .matrices import _hnf_rows

    stacked = [list(r) for r in gens.data] + [
        [level if i == j else 0 for j in range(rank)] for i in range(rank)
    ]
    h = IntMatrix(_hnf_rows(stacked, rank))
    det = h.det()
    adj = h.adjugate()
    c_rows = []
    for i in range(rank):
        row = []
        for j in range(rank):
            num = level * adj.data[i][j]
            assert num % det == 0, "preimage lattice must contain n Z^c"
            row.append(num // det)
        c_rows.append(row)
    snf = smith_normal_form(IntMatrix(c_rows))
    return tuple(s for s in snf.divisors if s > 1)


@dataclass(frozen=True)
class Polarization:
    """Integer 2d x 2d matrix standing in for an isogeny to the dual."""

    matrix: IntMatrix

    def __post_init__(self) -> None:
        if not self.matrix.is_square or self.matrix.rows % 2:
            raise TorsionError("polarization matrix must be square of even size")

    @property
    def degree(self) -> int:
        return abs(self.matrix.det())

    @staticmethod
    def principal(d: int) -> "Polarization":
        return Polarization(IntMatrix.identity(2 * d))

    @staticmethod
    def scalar(d: int, m: int) -> "Polarization":
        return Polarization(m * IntMatrix.identity(2 * d))


def induced_pairing(module: TorsionModule, pol: Polarization) -> TorsionModule:
    """Module at the same level with Gram matrix G * pol mod n.

    Degenerate results are accepted (degree sharing a factor with the
    level); a non-alternating result is rejected.
    """
    if pol.matrix.rows != module.rank:
        raise TorsionError("polarization size does not match the module")
    gram = (module.gram.lift() @ pol.matrix).reduce_mod(module.level)
    try:
        return TorsionModule(module.level, module.dimension, gram)
    except TorsionError:
        raise TorsionError("induced form is not alternating at this level")


def polarization_compatible(tau: IntMatrix, pol: Polarization, level: int) -> bool:
    """Whether tau^T (G pol) tau == G pol mod level, G the standard form."""
    d = pol.matrix.rows // 2
    g = standard_symplectic_gram(level, d).lift()
    induced = g @ pol.matrix
    return ((tau.transpose() @ induced @ tau) - induced).reduce_mod(level).is_zero()


@lru_cache(maxsize=None)
def _complement_gens(gram: ModMatrix, gens: ModMatrix) -> ModMatrix:
    if gens.rows == 0:
        return howell_form(ModMatrix.identity(gram.cols, gram.modulus))
    return kernel_mod_n(gens @ gram)


def orthogonal_complement(s: Subgroup) -> Subgroup:
    """{y : <x, y> = 0 for all x in s}, in canonical form."""
    return Subgroup(s.module, _complement_gens(s.module.gram, s.gens))


def is_isotropic(s: Subgroup) -> bool:
    """Whether the pairing vanishes on s x s."""
    comp = orthogonal_complement(s)
    return s.is_subgroup_of(comp)


def is_maximal_isotropic(s: Subgroup) -> bool:
    """Whether s equals its own orthogonal complement.

    Needs a nondegenerate pairing; for degenerate forms maximality is
    not characterized by self-orthogonality.
    """
    if not s.module.is_nondegenerate():
        raise DegeneratePairingError("maximality test needs a nondegenerate pairing")
    return s == orthogonal_complement(s)


def fixed_subgroup(action: Union[IntMatrix, ModMatrix], module: TorsionModule) -> Subgroup:
    """Kernel of (action - I) on the module, i.e. the points the
    action leaves in place."""
    n = module.level
    if isinstance(action, IntMatrix):
        a = action.reduce_mod(n)
    else:
        if action.modulus != n:
            raise TorsionError("action modulus does not match the level")
        a = action
    if a.rows != module.rank or a.cols != module.rank:
        raise TorsionError("action size does not match the module rank")
    return Subgroup(module, kernel_mod_n(a - ModMatrix.identity(module.rank, n)))


def fixes_pointwise(action: Union[IntMatrix, ModMatrix], s: Subgroup) -> bool:
    """Whether the action is the identity on every element of s."""
    n = s.module.level
    a = action.reduce_mod(n) if isinstance(action, IntMatrix) else action
    if a.modulus != n:
        raise TorsionError("action modulus does not match the level")
    if s.gens.rows == 0:
        return True
    moved = s.gens @ (a - ModMatrix.identity(s.module.rank, n)).transpose()
    return moved.is_zero()


def dual_action(a: ModMatrix) -> ModMatrix:
    """Action on the dual module under the trivial-on-roots-of-unity
    convention: the inverse transpose."""
    return a.transpose().inverse()


def subgroup_count_estimate(level: int, rank: int) -> int:
    """Upper bound on candidate triangular matrices enumerated for the
    subgroups of (Z/level)^rank."""
    est = 1
    for j in range(rank):
        est *= sum(h**j for h in divisors(level))
    return est


def enumerate_subgroups(module: TorsionModule, cap: int = 10**6) -> Tuple[Subgroup, ...]:
    """Every subgroup, in ascending canonical order.

    Subgroups correspond to integer lattices between nZ^c and Z^c,
    each with a unique upper-triangular Hermite basis whose diagonal
    divides n.  Candidates are enumerated by diagonal and reduced
    above-diagonal entries, then filtered by the containment nZ^c <=
    lattice; the candidate count is estimated first and the call
    refuses to start past the cap.

    Raises:
      EnumerationCapError: naming the estimate when it exceeds cap.
    """
    n, c = module.level, module.rank
    est = subgroup_count_estimate(n, c)
    if est > cap:
        raise EnumerationCapError(
            f"estimated {est} candidate matrices exceeds the cap of {cap}"
        )
    divs = divisors(n)
    found: List[Subgroup] = []
    for diag in itertools.product(divs, repeat=c):
        entry_ranges = []
        for i in range(c):
            for j in range(i + 1, c):
                entry_ranges.append(range(diag[j]))
        for entries in itertools.product(*entry_ranges):
            h = [[0] * c for _ in range(c)]
            pos = 0
            for i in range(c):
                h[i][i] = diag[i]
                for j in range(i + 1, c):
                    h[i][j] = entries[pos]
                    pos += 1
            if _contains_scaled_basis(h, n, c):
                found.append(Subgroup(module, howell_form(ModMatrix(n, h, c))))
    assert len(set(f.gens for f in found)) == len(found)
    found.sort(key=lambda s: (s.gens.rows, s.gens.data))
    return tuple(found)


def _contains_scaled_basis(h: List[List[int]], n: int, c: int) -> bool:
    # n*e_j must be an integer row combination of the triangular basis.
    for j in range(c):
        v = [n if t == j else 0 for t in range(c)]
        coeffs = [0] * c
        ok = True
        for col in range(c):
            acc = v[col] - sum(coeffs[i] * h[i][col] for i in range(col))
            if acc % h[col][col]:
                ok = False
                break
            coeffs[col] = acc // h[col][col]
        if not ok:
            return False
    return True


def extend_to_maximal_isotropic(s: Subgroup) -> Subgroup:
    """Deterministic maximal isotropic H with s-perp <= H <= s.

    Requires a nondegenerate pairing and s-perp <= s.  Greedy: starting
    from s-perp, repeatedly adjoin the lexicographically first element
    of s orthogonal to everything collected so far.  Such an element
    exists whenever H < H-perp, because H-perp is then contained in s
    (the complement of H-intersect-s is H + s-perp = H), so the loop
    ends exactly at H = H-perp.
    """
    if not s.module.is_nondegenerate():
        raise DegeneratePairingError("isotropic extension needs a nondegenerate pairing")
    perp = orthogonal_complement(s)
    if not perp.is_subgroup_of(s):
        raise TorsionError("orthogonal complement is not contained in the subgroup")
    module = s.module
    target = module.level ** module.dimension
    current = set(perp.elements())
    gens = [list(r) for r in perp.gens.data]
    pool = sorted(set(s.elements()) - current)
    while len(current) < target:
        for x in pool:
            if x in current:
                continue
            if all(module.pair(x, h) == 0 for h in current):
                gens.append(list(x))
                sub = Subgroup(module, howell_form(ModMatrix(module.level, gens, module.rank)))
                current = set(sub.elements())
                break
        else:
            raise AssertionError("greedy isotropic extension ran out of candidates")
    out = Subgroup(module, howell_form(ModMatrix(module.level, gens, module.rank)))
    assert out == orthogonal_complement(out)
    return out
