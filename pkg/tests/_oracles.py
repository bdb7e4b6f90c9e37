"""Brute-force reference implementations the tests check against.

Everything here is deliberately naive: permutation sums, exhaustive
vector scans, closure by repeated addition.  Slow is fine; these only
run on small inputs, and they share no code paths with the package.
"""

from itertools import permutations
from typing import Dict, FrozenSet, List, Sequence, Tuple

from monodromy import IntMatrix, IntPoly, ModMatrix


def leibniz_det(rows: Sequence[Sequence[int]]) -> int:
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            while seen[i] != i:
                j = seen[i]
                seen[i], seen[j] = seen[j], seen[i]
                sign = -sign
        term = sign
        for i in range(n):
            term *= rows[i][perm[i]]
        total += term
    return total


def leibniz_char_poly(a: IntMatrix) -> IntPoly:
    """det(xI - a) expanded with polynomial entries."""
    n = a.rows
    x = IntPoly.x()
    entries = [
        [
            (x if i == j else IntPoly()) - IntPoly([a.data[i][j]])
            for j in range(n)
        ]
        for i in range(n)
    ]
    total = IntPoly()
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            while seen[i] != i:
                j = seen[i]
                seen[i], seen[j] = seen[j], seen[i]
                sign = -sign
        term = IntPoly([sign])
        for i in range(n):
            term = term * entries[i][perm[i]]
        total = total + term
    return total


def determinant_divisor_snf(a: IntMatrix) -> Tuple[int, ...]:
    """Smith divisors via gcds of k x k minors."""
    import math
    from itertools import combinations

    limit = min(a.rows, a.cols)
    previous = 1
    out = []
    for k in range(1, limit + 1):
        g = 0
        for rows in combinations(range(a.rows), k):
            for cols in combinations(range(a.cols), k):
                minor = leibniz_det(
                    [[a.data[i][j] for j in cols] for i in rows]
                )
                g = math.gcd(g, minor)
        if g == 0:
            out.extend([0] * (limit - len(out)))
            break
        out.append(g // previous)
        previous = g
    return tuple(out)


def all_vectors(n: int, size: int):
    vec = [0] * size
    for code in range(n**size):
        x = code
        for j in range(size):
            vec[j] = x % n
            x //= n
        yield tuple(vec)


def brute_kernel_vectors(m: ModMatrix) -> FrozenSet[Tuple[int, ...]]:
    n = m.modulus
    return frozenset(
        v
        for v in all_vectors(n, m.cols)
        if all(
            sum(m.data[i][j] * v[j] for j in range(m.cols)) % n == 0
            for i in range(m.rows)
        )
    )


def brute_fixed_vectors(m: ModMatrix) -> FrozenSet[Tuple[int, ...]]:
    n = m.modulus
    return frozenset(
        v
        for v in all_vectors(n, m.cols)
        if all(
            sum(m.data[i][j] * v[j] for j in range(m.cols)) % n == v[i]
            for i in range(m.rows)
        )
    )


def span_closure(
    gens: Sequence[Sequence[int]], size: int, n: int
) -> FrozenSet[Tuple[int, ...]]:
    zero = tuple([0] * size)
    seen = {zero}
    frontier = [zero]
    while frontier:
        base = frontier.pop()
        for g in gens:
            nxt = tuple((base[j] + g[j]) % n for j in range(size))
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return frozenset(seen)


def brute_subgroups(size: int, n: int) -> List[FrozenSet[Tuple[int, ...]]]:
    """Every subgroup of (Z/n)^size, as element sets.

    Spans of pairs suffice when size <= 2; for larger sizes spans of
    all element triples are taken, enough for the ranks tested here.
    """
    elements = list(all_vectors(n, size))
    seen = set()
    out = []
    if size <= 2:
        tuples = [(a, b) for a in elements for b in elements]
    else:
        tuples = [
            (a, b, c) for a in elements for b in elements for c in elements
        ]
    for gens in tuples:
        group = span_closure(gens, size, n)
        if group not in seen:
            seen.add(group)
            out.append(group)
    return out


def brute_orthogonal(
    members: FrozenSet[Tuple[int, ...]], gram: ModMatrix
) -> FrozenSet[Tuple[int, ...]]:
    n = gram.modulus
    size = gram.rows
    return frozenset(
        v
        for v in all_vectors(n, size)
        if all(
            sum(
                v[i] * gram.data[i][j] * w[j]
                for i in range(size)
                for j in range(size)
            )
            % n
            == 0
            for w in members
        )
    )


def structure_from_counts(
    members: FrozenSet[Tuple[int, ...]], n: int
) -> Tuple[int, ...]:
    """Invariant factors from the kill-count profile.

    For each divisor m of the exponent, count elements x with m*x = 0;
    in a product of cyclics C_{d_1} x ... x C_{d_r} that count is
    prod gcd(m, d_i).  The profile determines the multiset {d_i}, and
    a greedy search over divisor multisets recovers it.
    """
    import math
    from itertools import combinations_with_replacement

    order = len(members)
    if order == 1:
        return ()
    zero = None
    for v in members:
        zero = tuple([0] * len(v))
        break
    counts: Dict[int, int] = {}
    for m in range(1, n + 1):
        counts[m] = sum(
            1
            for v in members
            if tuple(a * m % n for a in v) == zero
        )
    divisors_of_n = [d for d in range(2, n + 1) if n % d == 0]
    # r is at most log2(order)
    for r in range(1, order.bit_length() + 1):
        for combo in combinations_with_replacement(divisors_of_n, r):
            product = 1
            for d in combo:
                product *= d
            if product != order:
                continue
            ok = all(
                counts[m]
                == math.prod(math.gcd(m, d) for d in combo)
                for m in counts
            )
            if ok:
                return tuple(sorted(combo))
    raise AssertionError("no cyclic decomposition matched the counts")
