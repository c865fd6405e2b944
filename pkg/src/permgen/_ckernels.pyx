# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels. Same contract as ``_pykernels``.

Permutations are 0-based image sequences; ``(p * q)[i] == q[p[i]]``.
"""

from libc.math cimport log
from libc.stdint cimport uint64_t
from libcpp.string cimport string
from libcpp.unordered_set cimport unordered_set
from libcpp cimport bool
from libcpp.vector cimport vector

cdef extern from *:
    int popcount "__builtin_popcountll"(unsigned long long) nogil

import math

from . import _pykernels

BACKEND = "cython"


cdef vector[int] _flat(gens, int n) except *:
    cdef vector[int] out
    cdef int x
    for g in gens:
        if len(g) != n:
            raise ValueError("generator of wrong degree")
        for x in g:
            out.push_back(x)
    return out


def orbit(gens, int n, int point):
    cdef vector[int] G = _flat(gens, n)
    cdef int ng = G.size() // n
    cdef vector[char] seen = vector[char](n, 0)
    cdef vector[int] out
    cdef size_t i = 0
    cdef int k, x, y
    seen[point] = 1
    out.push_back(point)
    while i < out.size():
        x = out[i]
        i += 1
        for k in range(ng):
            y = G[k * n + x]
            if not seen[y]:
                seen[y] = 1
                out.push_back(y)
    return list(out)


cdef inline int _find(vector[int]& parent, int x) noexcept nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def minimal_block(gens, int n, int alpha, int beta):
    cdef vector[int] G = _flat(gens, n)
    cdef int ng = G.size() // n
    cdef vector[int] parent = vector[int](n)
    cdef vector[int] qx, qy
    cdef int i, k, x, y, u, v
    cdef size_t head = 0
    for i in range(n):
        parent[i] = i
    u = _find(parent, alpha)
    v = _find(parent, beta)
    if u != v:
        if u < v:
            parent[v] = u
        else:
            parent[u] = v
        qx.push_back(alpha)
        qy.push_back(beta)
    while head < qx.size():
        x = qx[head]
        y = qy[head]
        head += 1
        for k in range(ng):
            u = _find(parent, G[k * n + x])
            v = _find(parent, G[k * n + y])
            if u != v:
                if u < v:
                    parent[v] = u
                else:
                    parent[u] = v
                qx.push_back(u)
                qy.push_back(v)
    return [_find(parent, i) for i in range(n)]


cdef inline int _rank_digit(uint64_t used, int x) noexcept nogil:
    return popcount(~used & ((<uint64_t>1 << x) - 1))


cdef long long _ranked_tuple_orbit(vector[int]& G, int n, int t, long long budget) except -2:
    # tuples of distinct points ranked in [0, n!/(n-t)!) for a dense bit set; n <= 63
    cdef int ng = G.size() // n
    cdef uint64_t space = 1
    cdef vector[bool] seen
    cdef vector[unsigned char] queue
    cdef uint64_t code, used
    cdef size_t head = 0, tail
    cdef long long count = 1
    cdef int i, k, x
    for i in range(t):
        space *= n - i
    seen.resize(space, False)
    for i in range(t):
        queue.push_back(i)
    seen[0] = True
    while head < queue.size():
        for k in range(ng):
            code = 0
            used = 0
            for i in range(t):
                x = G[k * n + queue[head + i]]
                code = code * (n - i) + _rank_digit(used, x)
                used |= <uint64_t>1 << x
            if seen[code]:
                continue
            seen[code] = True
            count += 1
            if count > budget:
                return -1
            tail = queue.size()
            queue.resize(tail + t)
            for i in range(t):
                queue[tail + i] = G[k * n + queue[head + i]]
        head += t
    return count


def tuple_orbit_size(gens, int n, int t, long long budget):
    if n <= 63 and math.perm(n, t) <= (1 << 31):
        return _ranked_tuple_orbit(_flat(gens, n), n, t, budget)
    if (<object>n) ** t >= 2 ** 62:
        return _pykernels.tuple_orbit_size(gens, n, t, budget)
    cdef vector[int] G = _flat(gens, n)
    cdef int ng = G.size() // n
    cdef uint64_t space = 1
    cdef bint dense
    cdef vector[char] bitmap
    cdef unordered_set[uint64_t] hashed
    cdef vector[uint64_t] queue
    cdef vector[int] tup = vector[int](t)
    cdef uint64_t code, img, rem
    cdef size_t head = 0
    cdef long long count = 1
    cdef int i, k
    for i in range(t):
        space *= n
    dense = space <= (1 << 27)
    if dense:
        bitmap.resize(space, 0)
    code = 0
    for i in range(t):
        code = code * n + i
    queue.push_back(code)
    if dense:
        bitmap[code] = 1
    else:
        hashed.insert(code)
    while head < queue.size():
        rem = queue[head]
        head += 1
        for i in range(t - 1, -1, -1):
            tup[i] = rem % n
            rem //= n
        for k in range(ng):
            img = 0
            for i in range(t):
                img = img * n + G[k * n + tup[i]]
            if dense:
                if bitmap[img]:
                    continue
                bitmap[img] = 1
            else:
                if hashed.count(img):
                    continue
                hashed.insert(img)
            count += 1
            if count > budget:
                return -1
            queue.push_back(img)
    return count


def closure_size(gens, int n, long long cap):
    if n > 255:
        return _pykernels.closure_size(gens, n, cap)
    cdef vector[int] G = _flat(gens, n)
    cdef int ng = G.size() // n
    cdef unordered_set[string] seen
    cdef vector[string] queue
    cdef string cur, nxt
    cdef size_t head = 0
    cdef int i, k
    cur.resize(n)
    for i in range(n):
        cur[i] = <char>i
    seen.insert(cur)
    queue.push_back(cur)
    nxt.resize(n)
    while head < queue.size():
        cur = queue[head]
        head += 1
        for k in range(ng):
            for i in range(n):
                nxt[i] = <char>G[k * n + <unsigned char>cur[i]]
            if seen.count(nxt):
                continue
            seen.insert(nxt)
            if <long long>seen.size() > cap:
                return -1
            queue.push_back(nxt)
    return seen.size()


cdef class _Chain:
    cdef int n
    cdef vector[vector[int]] strong
    cdef vector[int] base
    cdef vector[vector[int]] lgens
    cdef vector[vector[int]] orbs
    cdef vector[vector[int]] idx
    cdef vector[vector[int]] reps
    cdef vector[vector[int]] ireps
    cdef vector[vector[int]] done

    def __cinit__(self, int n):
        self.n = n

    cdef void new_level(self, int point):
        cdef int n = self.n
        cdef int x
        self.base.push_back(point)
        self.lgens.push_back(vector[int]())
        self.orbs.push_back(vector[int](1, point))
        self.idx.push_back(vector[int](n, -1))
        self.idx.back()[point] = 0
        self.reps.push_back(vector[int](n))
        self.ireps.push_back(vector[int](n))
        for x in range(n):
            self.reps.back()[x] = x
            self.ireps.back()[x] = x
        self.done.push_back(vector[int](1, 0))

    cdef void _add_point(self, int l, int r, int gi, int y):
        # rep(y) = rep(orbit[r]) * strong[gi]
        cdef int n = self.n
        cdef int x
        cdef vector[int]* rl = &self.reps[l]
        cdef vector[int]* il = &self.ireps[l]
        cdef vector[int]* g = &self.strong[gi]
        cdef size_t off = <size_t>r * n
        cdef size_t pos = rl.size()
        self.idx[l][y] = self.orbs[l].size()
        self.orbs[l].push_back(y)
        rl.resize(pos + n)
        il.resize(pos + n)
        for x in range(n):
            rl[0][pos + x] = g[0][rl[0][off + x]]
        for x in range(n):
            il[0][pos + rl[0][pos + x]] = x
        self.done[l].push_back(0)

    cdef void extend(self, int l, int gi):
        cdef int r, old, y, k, gj
        self.lgens[l].push_back(gi)
        old = self.orbs[l].size()
        for r in range(old):
            y = self.strong[gi][self.orbs[l][r]]
            if self.idx[l][y] < 0:
                self._add_point(l, r, gi, y)
        r = old
        while r < <int>self.orbs[l].size():
            for k in range(<int>self.lgens[l].size()):
                gj = self.lgens[l][k]
                y = self.strong[gj][self.orbs[l][r]]
                if self.idx[l][y] < 0:
                    self._add_point(l, r, gj, y)
            r += 1

    cdef int strip(self, vector[int]& h, int start):
        cdef int n = self.n
        cdef int l, r, i
        cdef size_t off
        cdef vector[int]* il
        for l in range(start, <int>self.base.size()):
            r = self.idx[l][h[self.base[l]]]
            if r < 0:
                return l
            off = <size_t>r * n
            il = &self.ireps[l]
            for i in range(n):
                h[i] = il[0][off + h[i]]
        return self.base.size()

    cdef double log_order(self):
        cdef double s = 0
        cdef size_t l
        for l in range(self.orbs.size()):
            s += log(<double>self.orbs[l].size())
        return s

    def order(self):
        out = 1
        for l in range(self.orbs.size()):
            out *= self.orbs[l].size()
        return out

    def run(self, bound):
        cdef int n = self.n
        cdef int i, j, r, pos, y, ry, x, gi
        cdef size_t offu, offv
        cdef bint restart, trivial
        cdef double log_bound = math.log(bound) if bound else 0.0
        cdef vector[int] h = vector[int](n)
        i = self.base.size() - 1
        while i >= 0:
            if bound and self.log_order() > log_bound - 1e-6 and self.order() == bound:
                break
            restart = False
            r = 0
            while r < <int>self.orbs[i].size() and not restart:
                pos = self.done[i][r]
                while pos < <int>self.lgens[i].size():
                    self.done[i][r] = pos + 1
                    gi = self.lgens[i][pos]
                    y = self.strong[gi][self.orbs[i][r]]
                    ry = self.idx[i][y]
                    offu = <size_t>r * n
                    offv = <size_t>ry * n
                    trivial = True
                    for x in range(n):
                        h[x] = self.ireps[i][offv + self.strong[gi][self.reps[i][offu + x]]]
                        if h[x] != x:
                            trivial = False
                    pos += 1
                    if trivial:
                        continue
                    j = self.strip(h, i + 1)
                    if j == <int>self.base.size():
                        trivial = True
                        for x in range(n):
                            if h[x] != x:
                                trivial = False
                                break
                        if trivial:
                            continue
                        for x in range(n):
                            if h[x] != x:
                                break
                        self.new_level(x)
                    self.strong.push_back(h)
                    for x in range(i + 1, j + 1):
                        self.extend(x, self.strong.size() - 1)
                    i = j
                    restart = True
                    break
                if not restart:
                    r += 1
            if not restart:
                i -= 1


def schreier_sims(gens, int n, bound):
    """Deterministic incremental Schreier-Sims, identical output to the
    pure-Python kernel. ``bound`` is an upper bound on the group order, or 0."""
    cdef _Chain ch = _Chain(n)
    cdef vector[int] g
    cdef int x, l, gi
    cdef bint ident, fixes
    for gen in gens:
        g = list(gen)
        if <int>g.size() != n:
            raise ValueError("generator of wrong degree")
        ident = True
        for x in range(n):
            if g[x] != x:
                ident = False
                break
        if ident:
            continue
        dup = False
        for gi in range(<int>ch.strong.size()):
            if ch.strong[gi] == g:
                dup = True
                break
        if not dup:
            ch.strong.push_back(g)
    for gi in range(<int>ch.strong.size()):
        fixes = True
        for l in range(<int>ch.base.size()):
            if ch.strong[gi][ch.base[l]] != ch.base[l]:
                fixes = False
                break
        if fixes:
            for x in range(n):
                if ch.strong[gi][x] != x:
                    break
            ch.new_level(x)
    for gi in range(<int>ch.strong.size()):
        for l in range(<int>ch.base.size()):
            ch.extend(l, gi)
            if ch.strong[gi][ch.base[l]] != ch.base[l]:
                break
    ch.run(bound)
    reps = []
    for l in range(<int>ch.base.size()):
        flat = ch.reps[l]
        reps.append([flat[r * n:(r + 1) * n] for r in range(ch.orbs[l].size())])
    return (
        list(ch.base),
        [list(s) for s in ch.strong],
        [list(lg) for lg in ch.lgens],
        [list(o) for o in ch.orbs],
        reps,
    )
