# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same API and results as ``_pykernels``."""

from libc.stdlib cimport malloc, calloc, free

cdef enum:
    METRIC_LEVENSHTEIN = 0
    METRIC_JARO = 1
    METRIC_WINKLER = 2

cdef double EPS = 1e-12


cdef Py_ssize_t _lev(str a, str b) except -1:
    cdef Py_ssize_t la = len(a), lb = len(b), i, j, best, sub
    cdef Py_ssize_t *row
    cdef Py_ssize_t diag, tmp
    cdef Py_UCS4 ca
    if la < lb:
        a, b = b, a
        la, lb = lb, la
    if lb == 0:
        return la
    row = <Py_ssize_t *> malloc((lb + 1) * sizeof(Py_ssize_t))
    if row == NULL:
        raise MemoryError()
    for j in range(lb + 1):
        row[j] = j
    for i in range(1, la + 1):
        ca = a[i - 1]
        diag = row[0]
        row[0] = i
        for j in range(1, lb + 1):
            tmp = row[j]
            sub = diag + (0 if ca == b[j - 1] else 1)
            best = row[j] + 1
            if row[j - 1] + 1 < best:
                best = row[j - 1] + 1
            if sub < best:
                best = sub
            row[j] = best
            diag = tmp
    best = row[lb]
    free(row)
    return best


cdef double _nlev(str a, str b) except -1.0:
    cdef Py_ssize_t longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - <double> _lev(a, b) / <double> longest


cdef double _jaro(str a, str b) except -1.0:
    cdef Py_ssize_t la = len(a), lb = len(b), window, i, j, k, lo, hi, m = 0, half_t = 0
    cdef char *a_hit
    cdef char *b_hit
    cdef Py_UCS4 ch
    cdef double t
    if la == 0 and lb == 0:
        return 1.0
    if la == 0 or lb == 0:
        return 0.0
    window = max(la, lb) // 2 - 1
    if window < 0:
        window = 0
    a_hit = <char *> calloc(la, 1)
    b_hit = <char *> calloc(lb, 1)
    if a_hit == NULL or b_hit == NULL:
        free(a_hit)
        free(b_hit)
        raise MemoryError()
    for i in range(la):
        ch = a[i]
        lo = i - window if i > window else 0
        hi = i + window + 1 if i + window + 1 < lb else lb
        for j in range(lo, hi):
            if not b_hit[j] and b[j] == ch:
                a_hit[i] = 1
                b_hit[j] = 1
                m += 1
                break
    if m == 0:
        free(a_hit)
        free(b_hit)
        return 0.0
    k = 0
    for i in range(la):
        if a_hit[i]:
            while not b_hit[k]:
                k += 1
            if a[i] != b[k]:
                half_t += 1
            k += 1
    free(a_hit)
    free(b_hit)
    t = half_t / 2.0
    return (<double> m / la + <double> m / lb + (m - t) / m) / 3.0


cdef double _jw(str a, str b, double prefix_scale, Py_ssize_t max_prefix) except -1.0:
    cdef double j = _jaro(a, b)
    cdef Py_ssize_t ell = 0, n = min(len(a), len(b), max_prefix)
    while ell < n and a[ell] == b[ell]:
        ell += 1
    return j + ell * prefix_scale * (1.0 - j)


def levenshtein(str a, str b):
    return _lev(a, b)


def normalized_levenshtein(str a, str b):
    return _nlev(a, b)


def jaro(str a, str b):
    return _jaro(a, b)


def jaro_winkler(str a, str b, double prefix_scale=0.1, Py_ssize_t max_prefix=4):
    return _jw(a, b, prefix_scale, max_prefix)


def match_pairs(int metric, left, right, double threshold):
    """For each left string, the indices of right strings scoring >= threshold."""
    cdef list lefts = list(left), rights = list(right), out = [], row
    cdef Py_ssize_t i, j, nr = len(rights)
    cdef double score, cut = threshold - EPS
    cdef str a, b
    if metric not in (METRIC_LEVENSHTEIN, METRIC_JARO, METRIC_WINKLER):
        raise KeyError(metric)
    for i in range(len(lefts)):
        a = lefts[i]
        row = []
        for j in range(nr):
            b = rights[j]
            if metric == METRIC_LEVENSHTEIN:
                score = _nlev(a, b)
            elif metric == METRIC_JARO:
                score = _jaro(a, b)
            else:
                score = _jw(a, b, 0.1, 4)
            if score >= cut:
                row.append(j)
        out.append(row)
    return out


cdef Py_ssize_t _find(Py_ssize_t *parent, Py_ssize_t x):
    cdef Py_ssize_t root = x, nxt
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


def component_labels(Py_ssize_t n, tails, heads):
    """Weak-component label per node: the smallest node index in its component."""
    cdef Py_ssize_t *parent
    cdef Py_ssize_t i, t, h, rt, rh
    cdef list out
    if len(tails) != len(heads):
        raise ValueError("tails and heads differ in length")
    parent = <Py_ssize_t *> malloc((n if n > 0 else 1) * sizeof(Py_ssize_t))
    if parent == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            parent[i] = i
        for i in range(len(tails)):
            t = tails[i]
            h = heads[i]
            if t < 0 or t >= n or h < 0 or h >= n:
                raise IndexError("edge endpoint out of range")
            rt = _find(parent, t)
            rh = _find(parent, h)
            if rt < rh:
                parent[rh] = rt
            elif rh < rt:
                parent[rt] = rh
        out = [_find(parent, i) for i in range(n)]
    finally:
        free(parent)
    return out
