# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled graph kernels. Mirrors ``_pykernels`` function by function."""

from libc.stdlib cimport malloc, calloc, free

cdef enum:
    INSEP = -1
    OVER = -2


cdef inline void _raise_nomem() except *:
    raise MemoryError()


def reach(const int[:] ptr, const int[:] adj, int n, sources,
          const unsigned char[:] blocked):
    cdef bytearray out = bytearray(n)
    cdef unsigned char[:] seen = out
    cdef int *stack = <int *> malloc((n + 1) * sizeof(int))
    cdef int top = 0, u, w, e, s
    if stack == NULL:
        _raise_nomem()
    try:
        for s in sources:
            if not blocked[s] and not seen[s]:
                seen[s] = 1
                stack[top] = s
                top += 1
        while top > 0:
            top -= 1
            u = stack[top]
            for e in range(ptr[u], ptr[u + 1]):
                w = adj[e]
                if not seen[w] and not blocked[w]:
                    seen[w] = 1
                    stack[top] = w
                    top += 1
    finally:
        free(stack)
    return out


def scc(const int[:] ptr, const int[:] adj, int n,
        const unsigned char[:] blocked):
    cdef int *index = <int *> malloc((n + 1) * sizeof(int))
    cdef int *low = <int *> malloc((n + 1) * sizeof(int))
    cdef int *comp = <int *> malloc((n + 1) * sizeof(int))
    cdef int *stack = <int *> malloc((n + 1) * sizeof(int))
    cdef int *wv = <int *> malloc((n + 1) * sizeof(int))
    cdef int *wpos = <int *> malloc((n + 1) * sizeof(int))
    cdef unsigned char *onstack = <unsigned char *> calloc(n + 1, 1)
    cdef int counter = 0, found = 0, top = 0, wtop = 0
    cdef int root, v, pos, end, w, parent, i
    cdef bint descended
    if (index == NULL or low == NULL or comp == NULL or stack == NULL
            or wv == NULL or wpos == NULL or onstack == NULL):
        free(index); free(low); free(comp); free(stack)
        free(wv); free(wpos); free(onstack)
        _raise_nomem()
    try:
        for i in range(n):
            index[i] = -1
            comp[i] = -1
        for root in range(n):
            if blocked[root] or index[root] >= 0:
                continue
            index[root] = counter
            low[root] = counter
            counter += 1
            stack[top] = root
            top += 1
            onstack[root] = 1
            wv[0] = root
            wpos[0] = ptr[root]
            wtop = 1
            while wtop > 0:
                v = wv[wtop - 1]
                pos = wpos[wtop - 1]
                end = ptr[v + 1]
                descended = False
                while pos < end:
                    w = adj[pos]
                    pos += 1
                    if blocked[w]:
                        continue
                    if index[w] < 0:
                        wpos[wtop - 1] = pos
                        index[w] = counter
                        low[w] = counter
                        counter += 1
                        stack[top] = w
                        top += 1
                        onstack[w] = 1
                        wv[wtop] = w
                        wpos[wtop] = ptr[w]
                        wtop += 1
                        descended = True
                        break
                    if onstack[w] and index[w] < low[v]:
                        low[v] = index[w]
                if descended:
                    continue
                wtop -= 1
                if wtop > 0:
                    parent = wv[wtop - 1]
                    if low[v] < low[parent]:
                        low[parent] = low[v]
                if low[v] == index[v]:
                    while True:
                        top -= 1
                        w = stack[top]
                        onstack[w] = 0
                        comp[w] = found
                        if w == v:
                            break
                    found += 1
        result = [-1] * n
        for i in range(n):
            if comp[i] >= 0:
                result[i] = found - 1 - comp[i]
        return result, found
    finally:
        free(index); free(low); free(comp); free(stack)
        free(wv); free(wpos); free(onstack)


def furthest_cut(const int[:] out_ptr, const int[:] out_head,
                 const int[:] in_ptr, const int[:] in_tail, const int[:] in_arc,
                 int n, sources, const unsigned char[:] sink,
                 const unsigned char[:] cuttable,
                 const unsigned char[:] blocked, int budget):
    cdef int m = out_ptr[n]
    cdef int nodes = 2 * n
    cdef int *queue = <int *> malloc((nodes + 2) * sizeof(int))
    cdef int *fint = <int *> calloc(n + 1, sizeof(int))
    cdef int *farc = <int *> calloc(m + 1, sizeof(int))
    cdef int *parent = <int *> malloc((nodes + 2) * sizeof(int))
    cdef unsigned char *kind = <unsigned char *> malloc(nodes + 2)
    cdef int *via = <int *> malloc((nodes + 2) * sizeof(int))
    cdef unsigned char *mark = <unsigned char *> calloc(nodes + 2, 1)
    cdef int qh, qt, u, v, w, e, p, a, b, x, found, flow, k, i
    cdef list src = [int(s) for s in sources]
    if (queue == NULL or fint == NULL or farc == NULL or parent == NULL
            or kind == NULL or via == NULL or mark == NULL):
        free(queue); free(fint); free(farc); free(parent)
        free(kind); free(via); free(mark)
        _raise_nomem()
    try:
        # uncuttable-only path check
        qt = 0
        for x in src:
            if not blocked[x] and not mark[x]:
                mark[x] = 1
                queue[qt] = x
                qt += 1
        while qt > 0:
            qt -= 1
            u = queue[qt]
            for e in range(out_ptr[u], out_ptr[u + 1]):
                w = out_head[e]
                if blocked[w] or mark[w]:
                    continue
                if sink[w]:
                    return INSEP, []
                mark[w] = 1
                if not cuttable[w]:
                    queue[qt] = w
                    qt += 1

        flow = 0
        while True:
            for i in range(nodes):
                parent[i] = -2
            qh = 0
            qt = 0
            for x in src:
                if not blocked[x] and parent[2 * x] == -2:
                    parent[2 * x] = -1
                    parent[2 * x + 1] = -1
                    queue[qt] = 2 * x
                    queue[qt + 1] = 2 * x + 1
                    qt += 2
            found = -1
            while qh < qt and found < 0:
                a = queue[qh]
                qh += 1
                v = a >> 1
                if a & 1 == 0:
                    b = a | 1
                    if parent[b] == -2 and (not cuttable[v] or fint[v] < 1):
                        parent[b] = a
                        kind[b] = 0
                        queue[qt] = b
                        qt += 1
                    for p in range(in_ptr[v], in_ptr[v + 1]):
                        e = in_arc[p]
                        if farc[e] > 0:
                            b = 2 * in_tail[p] + 1
                            if parent[b] == -2:
                                parent[b] = a
                                kind[b] = 2
                                via[b] = e
                                queue[qt] = b
                                qt += 1
                else:
                    for e in range(out_ptr[v], out_ptr[v + 1]):
                        w = out_head[e]
                        if blocked[w]:
                            continue
                        b = 2 * w
                        if parent[b] == -2:
                            parent[b] = a
                            kind[b] = 1
                            via[b] = e
                            if sink[w]:
                                found = b
                                break
                            queue[qt] = b
                            qt += 1
                    if found < 0 and fint[v] > 0:
                        b = a & ~1
                        if parent[b] == -2:
                            parent[b] = a
                            kind[b] = 3
                            queue[qt] = b
                            qt += 1
            if found < 0:
                break
            flow += 1
            if flow > budget:
                return OVER, []
            b = found
            while parent[b] != -1:
                k = kind[b]
                if k == 0:
                    fint[b >> 1] += 1
                elif k == 1:
                    farc[via[b]] += 1
                elif k == 2:
                    farc[via[b]] -= 1
                else:
                    fint[b >> 1] -= 1
                b = parent[b]

        for i in range(nodes):
            mark[i] = 0
        qt = 0
        for i in range(n):
            if sink[i] and not blocked[i]:
                mark[2 * i] = 1
                queue[qt] = 2 * i
                qt += 1
        while qt > 0:
            qt -= 1
            b = queue[qt]
            v = b >> 1
            if b & 1:
                a = b & ~1
                if not mark[a] and (not cuttable[v] or fint[v] < 1):
                    mark[a] = 1
                    queue[qt] = a
                    qt += 1
                for e in range(out_ptr[v], out_ptr[v + 1]):
                    if farc[e] > 0:
                        a = 2 * out_head[e]
                        if not mark[a]:
                            mark[a] = 1
                            queue[qt] = a
                            qt += 1
            else:
                for p in range(in_ptr[v], in_ptr[v + 1]):
                    u = in_tail[p]
                    if blocked[u]:
                        continue
                    a = 2 * u + 1
                    if not mark[a]:
                        mark[a] = 1
                        queue[qt] = a
                        qt += 1
                if fint[v] > 0:
                    a = b | 1
                    if not mark[a]:
                        mark[a] = 1
                        queue[qt] = a
                        qt += 1
        cut = [i for i in range(n)
               if cuttable[i] and not blocked[i] and not mark[2 * i] and mark[2 * i + 1]]
        return flow, cut
    finally:
        free(queue); free(fint); free(farc); free(parent)
        free(kind); free(via); free(mark)
