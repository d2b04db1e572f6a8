"""Pure-Python kernels. Reference behaviour for the compiled ``_ckernels`` module."""

from __future__ import annotations

from typing import Sequence

METRIC_LEVENSHTEIN = 0
METRIC_JARO = 1
METRIC_WINKLER = 2

# tolerance for threshold comparisons, so 1 - 1/10 >= 0.9 holds despite rounding
EPS = 1e-12


def levenshtein(a: str, b: str) -> int:
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def normalized_levenshtein(a: str, b: str) -> float:
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / longest


def jaro(a: str, b: str) -> float:
    la, lb = len(a), len(b)
    if la == 0 and lb == 0:
        return 1.0
    if la == 0 or lb == 0:
        return 0.0
    window = max(max(la, lb) // 2 - 1, 0)
    a_hit = [False] * la
    b_hit = [False] * lb
    m = 0
    for i, ch in enumerate(a):
        for j in range(max(0, i - window), min(i + window + 1, lb)):
            if not b_hit[j] and b[j] == ch:
                a_hit[i] = b_hit[j] = True
                m += 1
                break
    if m == 0:
        return 0.0
    k = 0
    half_t = 0
    for i in range(la):
        if a_hit[i]:
            while not b_hit[k]:
                k += 1
            if a[i] != b[k]:
                half_t += 1
            k += 1
    t = half_t / 2.0
    return (m / la + m / lb + (m - t) / m) / 3.0


def jaro_winkler(a: str, b: str, prefix_scale: float = 0.1, max_prefix: int = 4) -> float:
    j = jaro(a, b)
    ell = 0
    for ca, cb in zip(a[:max_prefix], b[:max_prefix]):
        if ca != cb:
            break
        ell += 1
    return j + ell * prefix_scale * (1.0 - j)


_METRICS = {
    METRIC_LEVENSHTEIN: normalized_levenshtein,
    METRIC_JARO: jaro,
    METRIC_WINKLER: jaro_winkler,
}


def match_pairs(metric: int, left: Sequence[str], right: Sequence[str], threshold: float) -> list[list[int]]:
    """For each left string, the indices of right strings scoring >= threshold."""
    fn = _METRICS[metric]
    cut = threshold - EPS
    return [[j for j, b in enumerate(right) if fn(a, b) >= cut] for a in left]


def component_labels(n: int, tails: Sequence[int], heads: Sequence[int]) -> list[int]:
    """Weak-component label per node: the smallest node index in its component."""
    parent = list(range(n))

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for t, h in zip(tails, heads):
        rt, rh = find(t), find(h)
        if rt != rh:
            # keep the smaller index as root so labels come out canonical
            if rt < rh:
                parent[rh] = rt
            else:
                parent[rt] = rh
    return [find(i) for i in range(n)]
