"""Scenario files and hypothesis-preserving instance generation.

A scenario is one generator with its context, serialized as JSON.
Loading validates everything through classify, so a scenario object in
hand is always a legal input to every criterion.

Instance generation works per instance family: block sums drawn from
the primitives recorded as satisfying that family's entry hypothesis at
its level, then conjugated by a random symplectic matrix.  Hypotheses
survive conjugation by transport, and the witness subgroup is emitted
alongside, already transported.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .catalog import (
    IDENTITY_2,
    MINUS_IDENTITY_2,
    ORDER_3,
    ORDER_3_INVERSE,
    ORDER_4,
    ORDER_4_INVERSE,
    block_sum,
    derive_seed,
    random_symplectic,
)
from .inertia import InertiaGenerator, classify
from .matrices import IntMatrix
from .torsion import (
    Polarization,
    Subgroup,
    extend_to_maximal_isotropic,
    fixed_subgroup,
    fixes_pointwise,
    orthogonal_complement,
    standard_module,
)


class ScenarioError(ValueError):
    pass


@dataclass(frozen=True)
class Scenario:
    dimension: int
    residue_char: int
    tau: IntMatrix
    polarization: Optional[Polarization] = None
    level: Optional[int] = None
    strictly_henselian: bool = False
    seed: int = 0

    def generator(self) -> InertiaGenerator:
        return classify(self.tau, self.residue_char)

    def to_json_dict(self) -> Dict:
        out: Dict = {
            "d": self.dimension,
            "p": self.residue_char,
            "tau": self.tau.to_lists(),
            "seed": self.seed,
        }
        if self.polarization is not None:
            out["polarization"] = self.polarization.matrix.to_lists()
        if self.level is not None:
            out["n"] = self.level
        if self.strictly_henselian:
            out["flags"] = {"strictly_henselian": True}
        return out


def _require_int(obj: Dict, key: str, minimum: Optional[int] = None) -> int:
    if key not in obj:
        raise ScenarioError(f"missing required field {key!r}")
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioError(f"field {key!r} must be an integer")
    if minimum is not None and value < minimum:
        raise ScenarioError(f"field {key!r} must be >= {minimum}")
    return value


def _parse_matrix(value, key: str) -> IntMatrix:
    if (
        not isinstance(value, list)
        or not value
        or not all(isinstance(row, list) for row in value)
    ):
        raise ScenarioError(f"field {key!r} must be a nonempty list of rows")
    for row in value:
        for entry in row:
            if isinstance(entry, bool) or not isinstance(entry, int):
                raise ScenarioError(f"field {key!r} must contain integers only")
    widths = {len(row) for row in value}
    if len(widths) != 1:
        raise ScenarioError(f"field {key!r} has rows of unequal length")
    return IntMatrix(value)


def scenario_from_dict(obj: Dict) -> Scenario:
    """Parse and validate; classify runs so an invalid tau never
    becomes a Scenario.

    Raises:
      ScenarioError: structural problems, with the offending field named.
      NotSymplectic, NotQuasiUnipotent, WildRamification,
      NotPotentiallySemistable: tau fails validation for the given p.
    """
    if not isinstance(obj, dict):
        raise ScenarioError("scenario must be a JSON object")
    d = _require_int(obj, "d", 1)
    p = _require_int(obj, "p", 0)
    if p == 1:
        raise ScenarioError("field 'p' must be 0 or a prime, not 1")
    tau = _parse_matrix(obj.get("tau"), "tau") if "tau" in obj else None
    if tau is None:
        raise ScenarioError("missing required field 'tau'")
    if tau.rows != 2 * d or tau.cols != 2 * d:
        raise ScenarioError(
            f"field 'tau' must be {2 * d} x {2 * d} for d = {d}, "
            f"got {tau.rows} x {tau.cols}"
        )
    seed = _require_int(obj, "seed")
    pol = None
    if "polarization" in obj:
        mat = _parse_matrix(obj["polarization"], "polarization")
        if mat.rows != 2 * d or mat.cols != 2 * d:
            raise ScenarioError(
                f"field 'polarization' must be {2 * d} x {2 * d} for d = {d}"
            )
        pol = Polarization(mat)
    level = None
    if "n" in obj:
        level = _require_int(obj, "n", 1)
    henselian = False
    if "flags" in obj:
        flags = obj["flags"]
        if not isinstance(flags, dict):
            raise ScenarioError("field 'flags' must be an object")
        unknown = set(flags) - {"strictly_henselian"}
        if unknown:
            raise ScenarioError(f"unknown flags: {sorted(unknown)}")
        henselian = flags.get("strictly_henselian", False)
        if not isinstance(henselian, bool):
            raise ScenarioError("flag 'strictly_henselian' must be a boolean")
    scenario = Scenario(d, p, tau, pol, level, henselian, seed)
    scenario.generator()
    return scenario


def load_scenario(path: str) -> Scenario:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"invalid JSON in {path}: {exc}") from None
    return scenario_from_dict(obj)


@dataclass(frozen=True)
class HypothesisInstance:
    """A generated generator that satisfies one family's entry
    hypothesis by construction, with the transported witness."""

    family: str
    level: int
    base: IntMatrix
    matrix: IntMatrix
    conjugator: IntMatrix
    conjugator_inverse: IntMatrix
    residue_char: int
    witness: Optional[Subgroup]

    def generator(self) -> InertiaGenerator:
        return classify(self.matrix, self.residue_char)

    def scenario(self, seed: int = 0) -> Scenario:
        return Scenario(
            self.matrix.rows // 2, self.residue_char, self.matrix,
            level=self.level, seed=seed,
        )


# blocks whose action at the family's level fixes a maximal isotropic
# subgroup (checked in _verified_blocks); neron4a additionally needs
# triviality on the two-torsion, which among finite-order primitives
# holds for +-I only
_FAMILIES: Dict[str, Tuple[int, Tuple[IntMatrix, ...], Tuple[int, ...]]] = {
    "neron2": (
        2,
        (IDENTITY_2, MINUS_IDENTITY_2, ORDER_4, ORDER_4_INVERSE),
        (0, 3, 5, 7),
    ),
    "neron3": (3, (IDENTITY_2, ORDER_3, ORDER_3_INVERSE), (0, 2, 5, 7)),
    "neron4a": (4, (IDENTITY_2, MINUS_IDENTITY_2), (0, 3, 5, 7)),
    "neron4b": (4, (IDENTITY_2, MINUS_IDENTITY_2), (0, 3, 5, 7)),
    "quartic": (
        2,
        (IDENTITY_2, MINUS_IDENTITY_2, ORDER_4, ORDER_4_INVERSE),
        (0, 3, 5, 7),
    ),
}


def _block_fixes_maximal_isotropic(block: IntMatrix, n: int) -> bool:
    module = standard_module(n, block.rows // 2)
    fix = fixed_subgroup(block, module)
    return orthogonal_complement(fix).is_subgroup_of(fix)


def _verified_blocks(family: str) -> Tuple[int, Tuple[IntMatrix, ...], Tuple[int, ...]]:
    if family not in _FAMILIES:
        raise ScenarioError(
            f"unknown instance family {family!r}; known: {sorted(_FAMILIES)}"
        )
    level, blocks, chars = _FAMILIES[family]
    for b in blocks:
        assert _block_fixes_maximal_isotropic(b, level), (family, b)
        if family == "neron4a":
            assert (b - IntMatrix.identity(2)).reduce_mod(2).is_zero()
    return level, blocks, chars


def generate_hypothesis_instances(
    family: str, count: int, d_max: int, seed: int
) -> List[HypothesisInstance]:
    """Instances of one family's hypothesis class, deterministically
    from (family, count, d_max, seed).

    Every instance is verified before it is returned: the block sum
    fixes a maximal isotropic subgroup at the level (resp. is trivial
    on the two-torsion for mode a), and the transported witness is
    still fixed pointwise by the conjugated generator.

    Raises:
      ScenarioError: unknown instance family.
    """
    level, blocks, chars = _verified_blocks(family)
    out: List[HypothesisInstance] = []
    for index in range(count):
        rng = random.Random(derive_seed(seed, index))
        d = rng.randint(1, max(1, d_max))
        chosen = [blocks[rng.randrange(len(blocks))] for _ in range(d)]
        base = block_sum(chosen)
        p = chars[rng.randrange(len(chars))]
        module = standard_module(level, d)
        fix = fixed_subgroup(base, module)
        assert orthogonal_complement(fix).is_subgroup_of(fix), (family, base)
        witness_base = extend_to_maximal_isotropic(fix)
        u, u_inv = random_symplectic(rng, d)
        matrix = u @ base @ u_inv
        witness = witness_base.apply(u.reduce_mod(level))
        assert fixes_pointwise(matrix.reduce_mod(level), witness)
        out.append(HypothesisInstance(
            family, level, base, matrix, u, u_inv, p, witness,
        ))
    return out
