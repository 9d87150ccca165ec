"""Brute-force census of regular embeddings of K_{n,n} from rotation systems.

Nothing here touches groups: every rotation assignment is generated, regular
ones are kept by counting orientation-preserving automorphisms (``n^2``
colour-preserving ones plus a colour swap, so ``2 n^2`` in all), and
survivors are classified by a canonical dart relabelling.
Edge ``b*n + w`` joins black vertex ``b`` to white vertex ``w``; its darts are
``2*edge`` (black end) and ``2*edge + 1`` (white end).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from itertools import permutations, product
from typing import Iterator, Optional, Sequence

from .errors import ContractError, RegularityViolation, ScaleError
from .mapreal import OrientedMap

DEFAULT_CAP = 4


def _cyclic_orders(n: int) -> list[tuple[int, ...]]:
    """Cyclic orderings of ``0..n-1``, each written starting at 0."""
    return [(0,) + p for p in permutations(range(1, n))]


def _assemble(n: int, black: Sequence[tuple[int, ...]], white: Sequence[tuple[int, ...]]) -> list[int]:
    rot = [0] * (2 * n * n)
    for b, order in enumerate(black):
        for i, w in enumerate(order):
            rot[2 * (b * n + w)] = 2 * (b * n + order[(i + 1) % n])
    for w, order in enumerate(white):
        for i, b in enumerate(order):
            rot[2 * (b * n + w) + 1] = 2 * (order[(i + 1) % n] * n + w) + 1
    return rot


def _check_n(n: int, cap: int) -> None:
    if n < 1:
        raise ContractError(f"n must be positive, got {n}")
    if n > cap:
        raise ScaleError(f"n={n} exceeds the oracle cap {cap}")


def _assignments(n: int, second: Optional[tuple[int, ...]] = None):
    orders = _cyclic_orders(n)
    pinned = tuple(range(n))
    rest_black = [orders] * (n - 1)
    if second is not None and n > 1:
        rest_black = [[second]] + [orders] * (n - 2)
    for tail in product(*rest_black):
        black = (pinned,) + tail
        for white in product(orders, repeat=n):
            yield black, white


def enumerate_embeddings(n: int, cap: int = DEFAULT_CAP) -> Iterator[OrientedMap]:
    """Every rotation assignment with black vertex 0 in the identity order.

    Raises:
        ScaleError: ``n`` exceeds ``cap``.
    """
    _check_n(n, cap)
    for black, white in _assignments(n):
        yield OrientedMap(n, _assemble(n, black, white))


def _extends(rot: Sequence[int], swap: Sequence[int], base: int, image: int) -> bool:
    """Whether ``base -> image`` extends to an automorphism of the rotation system."""
    D = len(rot)
    phi = [-1] * D
    phi[base] = image
    stack = [base]
    while stack:
        a = stack.pop()
        fa = phi[a]
        for nxt, fnxt in ((rot[a], rot[fa]), (swap[a], swap[fa])):
            cur = phi[nxt]
            if cur == -1:
                phi[nxt] = fnxt
                stack.append(nxt)
            elif cur != fnxt:
                return False
    # Connected map, so every dart is reached; injectivity follows from
    # equivariance but is cheap to confirm.
    return len(set(phi)) == D


def count_color_orientation_automorphisms(M: OrientedMap, allow_color_swap: bool = False) -> int:
    """Number of orientation-preserving automorphisms fixing (or swapping) colours."""
    rot, swap = M.rotation, M.edge_swap
    candidates = range(len(M)) if allow_color_swap else range(0, len(M), 2)
    return sum(_extends(rot, swap, 0, d) for d in candidates)


def _is_regular(rot: Sequence[int], swap: Sequence[int]) -> bool:
    # Try the rotation about the base vertex first; most maps fail there.
    seen = set()
    d = rot[0]
    while d != 0:
        if not _extends(rot, swap, 0, d):
            return False
        seen.add(d)
        d = rot[d]
    for d in range(2, len(rot), 2):
        if d not in seen and not _extends(rot, swap, 0, d):
            return False
    # Edge-transitive is not enough: some automorphism must swap the colours.
    return any(_extends(rot, swap, 0, d) for d in range(1, len(rot), 2))


def canonical_code(M: OrientedMap) -> tuple[int, ...]:
    """Lexicographically least breadth-first relabelling over all start darts.

    Two maps share a code iff an orientation-preserving isomorphism (colour
    swap allowed) maps one to the other.
    """
    rot, swap = M.rotation, M.edge_swap
    best = None
    for start in range(len(M)):
        label = {start: 0}
        order = [start]
        code = []
        for a in order:
            for nxt in (rot[a], swap[a]):
                if nxt not in label:
                    label[nxt] = len(order)
                    order.append(nxt)
                code.append(label[nxt])
        code = tuple(code)
        if best is None or code < best:
            best = code
    return best


def _regular_codes(n: int, second: Optional[tuple[int, ...]]) -> dict[tuple[int, ...], list[int]]:
    swap = tuple(d ^ 1 for d in range(2 * n * n))
    found = {}
    for black, white in _assignments(n, second):
        rot = _assemble(n, black, white)
        if _is_regular(rot, swap):
            M = OrientedMap(n, rot)
            lengths = {len(f) for f in M.faces()}
            if len(lengths) != 1:
                raise RegularityViolation(f"regular map with face lengths {sorted(lengths)}")
            found.setdefault(canonical_code(M), rot)
    return found


def brute_force_census(
    n: int, cap: int = DEFAULT_CAP, jobs: int = 1
) -> tuple[int, list[OrientedMap]]:
    """Count regular embeddings of ``K_{n,n}`` up to isomorphism.

    Returns:
        The class count and one representative per class, sorted by code.

    Raises:
        ScaleError: ``n`` exceeds ``cap``.
    """
    _check_n(n, cap)
    if n == 1:
        return 1, [OrientedMap(1, [0, 1])]
    parts = _cyclic_orders(n)
    merged: dict[tuple[int, ...], list[int]] = {}
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_regular_codes, [n] * len(parts), parts))
    else:
        chunks = [_regular_codes(n, part) for part in parts]
    for chunk in chunks:
        for code, rot in chunk.items():
            merged.setdefault(code, rot)
    reps = [OrientedMap(n, merged[code]) for code in sorted(merged)]
    return len(reps), reps


def match_representatives(
    oracle_maps: Sequence[OrientedMap], pipeline_maps: Sequence[OrientedMap]
) -> Optional[list[int]]:
    """Index into ``pipeline_maps`` for each oracle map, or None if not a bijection."""
    codes = [canonical_code(M) for M in pipeline_maps]
    if len(set(codes)) != len(codes) or len(oracle_maps) != len(pipeline_maps):
        return None
    where = {c: i for i, c in enumerate(codes)}
    out = []
    for M in oracle_maps:
        i = where.get(canonical_code(M))
        if i is None:
            return None
        out.append(i)
    return out
