"""Pure-Python kernels. Same contract as the compiled ``_ckernels`` module.

All permutations are 0-based image sequences of length ``n``; composition is
the right action, ``(p * q)[i] == q[p[i]]``.
"""

from __future__ import annotations

from collections import deque

BACKEND = "python"


def orbit(gens, n, point):
    seen = [False] * n
    seen[point] = True
    out = [point]
    i = 0
    while i < len(out):
        x = out[i]
        i += 1
        for g in gens:
            y = g[x]
            if not seen[y]:
                seen[y] = True
                out.append(y)
    return out


def minimal_block(gens, n, alpha, beta):
    """Labels of the finest invariant partition joining alpha and beta; each
    point is labelled with the minimum of its cell."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        # smaller root wins, so roots stay cell minima
        if x < y:
            parent[y] = x
        else:
            parent[x] = y

    queue = deque()
    ra, rb = find(alpha), find(beta)
    if ra != rb:
        union(ra, rb)
        queue.append((alpha, beta))
    while queue:
        x, y = queue.popleft()
        for g in gens:
            u, v = find(g[x]), find(g[y])
            if u != v:
                union(u, v)
                queue.append((u, v))
    return [find(x) for x in range(n)]


def tuple_orbit_size(gens, n, t, budget):
    """Size of the orbit of the tuple (0, 1, ..., t-1); -1 once it passes budget."""
    start = tuple(range(t))
    seen = {start}
    queue = [start]
    i = 0
    while i < len(queue):
        tup = queue[i]
        i += 1
        for g in gens:
            img = tuple(g[x] for x in tup)
            if img not in seen:
                seen.add(img)
                if len(seen) > budget:
                    return -1
                queue.append(img)
    return len(seen)


def closure_size(gens, n, cap):
    """Number of elements of the generated group by breadth-first
    multiplication; -1 once it passes cap."""
    ident = tuple(range(n))
    gens = [tuple(g) for g in gens]
    seen = {ident}
    queue = [ident]
    i = 0
    while i < len(queue):
        p = queue[i]
        i += 1
        for g in gens:
            q = tuple(g[x] for x in p)
            if q not in seen:
                seen.add(q)
                if len(seen) > cap:
                    return -1
                queue.append(q)
    return len(seen)


def _mul(p, q):
    return [q[x] for x in p]


def _inv(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return out


def schreier_sims(gens, n, bound):
    """Deterministic incremental Schreier-Sims.

    Returns ``(base, strong, level_gens, orbits, reps)``: ``strong`` is the
    strong generating set, ``level_gens[l]`` indexes the generators of the
    l-th stabilizer, ``orbits[l]`` lists the basic orbit in discovery order and
    ``reps[l][r]`` maps ``base[l]`` to ``orbits[l][r]``.

    ``bound`` is an upper bound on the group order (0 for none). The product
    of basic orbit lengths never exceeds the group order, so reaching the
    bound proves the structure complete and the remaining checks are skipped.
    """
    ident = list(range(n))
    strong = []
    for g in gens:
        g = list(g)
        if g != ident and g not in strong:
            strong.append(g)

    base = []
    for g in strong:
        if all(g[b] == b for b in base):
            base.append(next(i for i in range(n) if g[i] != i))

    level_gens = []
    orbits = []
    index = []  # point -> position in orbit, or -1
    reps = []
    inv_reps = []
    checked = []

    def new_level(point):
        level_gens.append([])
        orbits.append([point])
        idx = [-1] * n
        idx[point] = 0
        index.append(idx)
        reps.append([ident[:]])
        inv_reps.append([ident[:]])
        checked.append(set())

    def extend(l, gi):
        # add generator gi to level l and close the orbit incrementally
        level_gens[l].append(gi)
        orb, idx, rl, il = orbits[l], index[l], reps[l], inv_reps[l]
        g = strong[gi]
        old = len(orb)
        for r in range(old):
            y = g[orb[r]]
            if idx[y] < 0:
                u = _mul(rl[r], g)
                idx[y] = len(orb)
                orb.append(y)
                rl.append(u)
                il.append(_inv(u))
        r = old
        while r < len(orb):
            x = orb[r]
            for gj in level_gens[l]:
                y = strong[gj][x]
                if idx[y] < 0:
                    u = _mul(rl[r], strong[gj])
                    idx[y] = len(orb)
                    orb.append(y)
                    rl.append(u)
                    il.append(_inv(u))
            r += 1

    for b in base:
        new_level(b)
    for gi, g in enumerate(strong):
        for l, b in enumerate(base):
            extend(l, gi)
            if g[b] != b:
                break

    def product():
        out = 1
        for orb in orbits:
            out *= len(orb)
        return out

    def strip(h, start):
        for l in range(start, len(base)):
            x = h[base[l]]
            r = index[l][x]
            if r < 0:
                return h, l
            h = _mul(h, inv_reps[l][r])
        return h, len(base)

    i = len(base) - 1
    while i >= 0:
        if bound and product() == bound:
            break
        restart = False
        orb, idx, rl, il = orbits[i], index[i], reps[i], inv_reps[i]
        done = checked[i]
        for r in range(len(orb)):
            for pos in range(len(level_gens[i])):
                if (r, pos) in done:
                    continue
                done.add((r, pos))
                s = strong[level_gens[i][pos]]
                y = s[orb[r]]
                ry = idx[y]
                u = rl[r]
                sg = [il[ry][s[u[x]]] for x in range(n)]
                if sg == ident:
                    continue
                h, j = strip(sg, i + 1)
                if j == len(base) and h == ident:
                    continue
                if j == len(base):
                    new_level(next(x for x in range(n) if h[x] != x))
                    base.append(orbits[-1][0])
                strong.append(h)
                hi = len(strong) - 1
                for l in range(i + 1, j + 1):
                    extend(l, hi)
                i = j
                restart = True
                break
            if restart:
                break
        if not restart:
            i -= 1

    return (
        list(base),
        [list(g) for g in strong],
        [list(lg) for lg in level_gens],
        [list(o) for o in orbits],
        [[list(u) for u in rl] for rl in reps],
    )
