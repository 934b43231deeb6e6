"""Hot inner loops, written so that numba can compile them unchanged.

Graphs arrive as ``nbr`` (int64 bitmask of distinct neighbours per vertex) and
``mult`` (int64 multiplicity matrix). Vertex counts stay below 64 so one sign
bit is never used. Nothing here allocates Python objects; the same source runs
as the pure-numpy fallback when JIT is disabled.
"""

import numpy as np

_I64_MAX = 9223372036854775807


def popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


def bit_index(low):
    # index of a single set bit
    i = 0
    while low > 1:
        low >>= 1
        i += 1
    return i


def _rest_connected(nbr, start, unv):
    # every vertex of ``unv`` reachable from ``start`` through ``unv``
    seen = nbr[start] & unv
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= nbr[bit_index(low)]
            f ^= low
        nxt &= unv & ~seen
        seen |= nxt
        frontier = nxt
    return seen == unv


def count_cycles_bt(nbr, mult, n, s, limit):
    """Hamiltonian cycles by backtracking from ``s``; stops once ``limit`` > 0 is reached.

    Returns -1 if the total would overflow int64.

    Each cycle is counted once: the first step goes to a smaller label than
    the closing vertex. Parallel edges multiply the weight of a cycle.
    """
    full = ~(np.int64(-1) << n)
    path = np.zeros(n, np.int64)
    cand = np.zeros(n, np.int64)
    wt = np.zeros(n, np.int64)
    path[0] = s
    cand[0] = nbr[s]
    wt[0] = 1
    visited = np.int64(1) << s
    depth = 0
    total = 0
    while depth >= 0:
        c = cand[depth]
        if c == 0:
            if depth > 0:
                visited ^= np.int64(1) << path[depth]
            depth -= 1
            continue
        low = c & -c
        cand[depth] = c ^ low
        w = bit_index(low)
        v = path[depth]
        if depth == 0:
            # some closing neighbour of s must exceed the first step
            if (nbr[s] & ~((low << 1) - 1)) == 0:
                continue
            first = w
        else:
            first = path[1]
        weight = wt[depth] * mult[v, w]
        newvis = visited | low
        if depth + 2 == n:
            if (nbr[w] >> s) & 1 and w > first:
                add = weight * mult[w, s]
                if total > _I64_MAX - add:
                    return -1
                total += add
                if limit > 0 and total >= limit:
                    return total
            continue
        unv = full & ~newvis
        # s needs an unvisited closing neighbour above first
        if (nbr[s] & unv & ~((np.int64(1) << (first + 1)) - 1)) == 0:
            continue
        ok = True
        if depth > 0:
            ends = unv | low | (np.int64(1) << s)
            m = nbr[v] & unv
            while m:
                lb = m & -m
                u = bit_index(lb)
                a = nbr[u] & ends
                if a == 0 or (a & (a - 1)) == 0:
                    ok = False
                    break
                m ^= lb
        if not ok:
            continue
        if not _rest_connected(nbr, w, unv):
            continue
        depth += 1
        path[depth] = w
        wt[depth] = weight
        cand[depth] = nbr[w] & unv
        visited = newvis
    return total


def count_paths_bt(nbr, mult, n, s, t):
    """Hamiltonian paths with end vertices exactly ``s`` and ``t`` (-1 on int64 overflow)."""
    full = ~(np.int64(-1) << n)
    tbit = np.int64(1) << t
    path = np.zeros(n, np.int64)
    cand = np.zeros(n, np.int64)
    wt = np.zeros(n, np.int64)
    path[0] = s
    cand[0] = nbr[s] & ~tbit
    wt[0] = 1
    visited = np.int64(1) << s
    depth = 0
    total = 0
    while depth >= 0:
        c = cand[depth]
        if c == 0:
            if depth > 0:
                visited ^= np.int64(1) << path[depth]
            depth -= 1
            continue
        low = c & -c
        cand[depth] = c ^ low
        w = bit_index(low)
        v = path[depth]
        weight = wt[depth] * mult[v, w]
        newvis = visited | low
        if depth + 3 == n:
            # only t is left
            if (nbr[w] >> t) & 1:
                add = weight * mult[w, t]
                if total > _I64_MAX - add:
                    return -1
                total += add
            continue
        unv = full & ~newvis
        # unvisited vertices other than t need two usable neighbours, t needs one
        ends = unv | low
        ok = True
        m = nbr[v] & unv
        while m:
            lb = m & -m
            u = bit_index(lb)
            a = nbr[u] & ends
            if u == t:
                if a == 0:
                    ok = False
                    break
            elif a == 0 or (a & (a - 1)) == 0:
                ok = False
                break
            m ^= lb
        if not ok:
            continue
        if not _rest_connected(nbr, w, unv):
            continue
        depth += 1
        path[depth] = w
        wt[depth] = weight
        cand[depth] = nbr[w] & unv & ~tbit
        visited = newvis
    return total


def enum_cycles_bt(nbr, n, skip, out):
    """Write vertex sequences of the hamiltonian cycles of the simple graph ``nbr`` into ``out``.

    Sequences start at 0 and the second vertex is smaller than the last.
    Cycles number ``skip .. skip + out.shape[0] - 1`` (in search order) are
    written; the return value is the total number of cycles.
    """
    cap = out.shape[0]
    full = ~(np.int64(-1) << n)
    path = np.zeros(n, np.int64)
    cand = np.zeros(n, np.int64)
    s = 0
    path[0] = s
    cand[0] = nbr[s]
    visited = np.int64(1)
    depth = 0
    found = 0
    while depth >= 0:
        c = cand[depth]
        if c == 0:
            if depth > 0:
                visited ^= np.int64(1) << path[depth]
            depth -= 1
            continue
        low = c & -c
        cand[depth] = c ^ low
        w = bit_index(low)
        v = path[depth]
        if depth == 0:
            if (nbr[s] & ~((low << 1) - 1)) == 0:
                continue
            first = w
        else:
            first = path[1]
        newvis = visited | low
        if depth + 2 == n:
            if (nbr[w] >> s) & 1 and w > first:
                r = found - skip
                if 0 <= r < cap:
                    for i in range(depth + 1):
                        out[r, i] = path[i]
                    out[r, depth + 1] = w
                found += 1
            continue
        unv = full & ~newvis
        if (nbr[s] & unv & ~((np.int64(1) << (first + 1)) - 1)) == 0:
            continue
        ok = True
        if depth > 0:
            ends = unv | low | np.int64(1)
            m = nbr[v] & unv
            while m:
                lb = m & -m
                u = bit_index(lb)
                a = nbr[u] & ends
                if a == 0 or (a & (a - 1)) == 0:
                    ok = False
                    break
                m ^= lb
        if not ok:
            continue
        if not _rest_connected(nbr, w, unv):
            continue
        depth += 1
        path[depth] = w
        cand[depth] = nbr[w] & unv
        visited = newvis
    return found


def held_karp(mult, n, s, t, modulus):
    """Subset DP over walks from ``s``.

    ``t >= 0``: number of hamiltonian s-t paths. ``t < 0``: number of directed
    hamiltonian cycles through ``s`` (each undirected cycle twice). Arithmetic
    is reduced modulo ``modulus`` when it is positive.
    """
    # vertices other than s get compressed bit positions 0..n-2
    k = n - 1
    verts = np.zeros(k, np.int64)
    j = 0
    for v in range(n):
        if v != s:
            verts[j] = v
            j += 1
    size = np.int64(1) << k
    dp = np.zeros((size, k), np.int64)
    for i in range(k):
        dp[np.int64(1) << i, i] = mult[s, verts[i]]
    for mask in range(1, size):
        for i in range(k):
            cur = dp[mask, i]
            if cur == 0:
                continue
            vi = verts[i]
            rest = (size - 1) & ~mask
            while rest:
                low = rest & -rest
                jj = bit_index(low)
                m = mult[vi, verts[jj]]
                if m:
                    val = dp[mask | low, jj] + cur * m
                    if modulus > 0:
                        val %= modulus
                    dp[mask | low, jj] = val
                rest ^= low
    fullk = size - 1
    if t >= 0:
        ti = 0
        for i in range(k):
            if verts[i] == t:
                ti = i
        return dp[fullk, ti]
    total = 0
    for i in range(k):
        total += dp[fullk, i] * mult[verts[i], s]
        if modulus > 0:
            total %= modulus
    return total


def is_max_column_string(adj, m):
    """True iff no vertex permutation gives a lexicographically larger column string.

    The string lists bits (0,1),(0,2),(1,2),(0,3),... of the graph on vertices
    0..m-1 given by bitmasks ``adj``. Used for orderly generation.
    """
    if m <= 2:
        return True
    ocol = np.zeros(m, np.int64)
    for c in range(1, m):
        x = 0
        for i in range(c):
            x = (x << 1) | ((adj[i] >> c) & 1)
        ocol[c] = x
    p = np.zeros(m, np.int64)
    # nxt[d]: next candidate vertex to try at position d
    nxt = np.zeros(m + 1, np.int64)
    used = np.int64(0)
    d = 0
    nxt[0] = 0
    while d >= 0:
        if d == m:
            # leaf with equal string: an automorphism
            d -= 1
            used ^= np.int64(1) << p[d]
            continue
        cand = nxt[d]
        while cand < m and (used >> cand) & 1:
            cand += 1
        if cand >= m:
            d -= 1
            if d >= 0:
                used ^= np.int64(1) << p[d]
            continue
        nxt[d] = cand + 1
        p[d] = cand
        x = 0
        for i in range(d):
            x = (x << 1) | ((adj[p[i]] >> cand) & 1)
        if d > 0:
            if x > ocol[d]:
                return False
            if x < ocol[d]:
                continue
        used |= np.int64(1) << cand
        d += 1
        nxt[d] = 0
    return True


def negative_cycles(cycles, ncyc, n, domsets, ndom):
    """Flag cycles for which no listed vertex set is independent along the cycle."""
    out = np.zeros(ncyc, np.bool_)
    nb = np.zeros(n, np.int64)
    for c in range(ncyc):
        for i in range(n):
            a = cycles[c, i]
            b = cycles[c, (i + 1) % n]
            nb[a] |= np.int64(1) << b
            nb[b] |= np.int64(1) << a
        neg = True
        for d in range(ndom):
            dm = domsets[d]
            indep = True
            x = dm
            while x:
                low = x & -x
                if nb[bit_index(low)] & dm:
                    indep = False
                    break
                x ^= low
            if indep:
                neg = False
                break
        out[c] = neg
        for i in range(n):
            nb[i] = 0
    return out
