"""Pure-Python graph kernels.

Every function here has a drop-in twin in ``_ckernels.pyx``. Arguments use
buffer-protocol types only: CSR arrays are ``array('i')`` and vertex masks are
``bytearray`` (one byte per vertex position), so both implementations accept
identical objects.

The flow kernel works on the split graph where vertex ``v`` becomes the node
pair ``in(v) = 2v`` and ``out(v) = 2v + 1``.
"""

INSEPARABLE = -1
OVER_BUDGET = -2


def reach(ptr, adj, n, sources, blocked):
    """Mask of vertices reachable from ``sources`` avoiding ``blocked``."""
    seen = bytearray(n)
    stack = []
    for s in sources:
        if not blocked[s] and not seen[s]:
            seen[s] = 1
            stack.append(s)
    while stack:
        u = stack.pop()
        for e in range(ptr[u], ptr[u + 1]):
            w = adj[e]
            if not seen[w] and not blocked[w]:
                seen[w] = 1
                stack.append(w)
    return seen


def scc(ptr, adj, n, blocked):
    """Strongly connected components in topological order.

    Returns ``(comp, count)`` where ``comp[v]`` is the component index of
    position ``v`` (``-1`` for blocked positions) and every arc goes from a
    lower to an equal-or-higher index.
    """
    index = [-1] * n
    low = [0] * n
    onstack = bytearray(n)
    comp = [-1] * n
    stack = []
    counter = 0
    found = 0
    for root in range(n):
        if blocked[root] or index[root] >= 0:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        onstack[root] = 1
        work = [(root, ptr[root])]
        while work:
            v, pos = work[-1]
            end = ptr[v + 1]
            descended = False
            while pos < end:
                w = adj[pos]
                pos += 1
                if blocked[w]:
                    continue
                if index[w] < 0:
                    work[-1] = (v, pos)
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    onstack[w] = 1
                    work.append((w, ptr[w]))
                    descended = True
                    break
                if onstack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if descended:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    onstack[w] = 0
                    comp[w] = found
                    if w == v:
                        break
                found += 1
    # Tarjan emits sink components first.
    for v in range(n):
        if comp[v] >= 0:
            comp[v] = found - 1 - comp[v]
    return comp, found


def furthest_cut(out_ptr, out_head, in_ptr, in_tail, in_arc, n,
                 sources, sink, cuttable, blocked, budget):
    """Minimum vertex cut closest to the sinks.

    Returns ``(size, cut)`` with ``cut`` a sorted list of positions, or
    ``(INSEPARABLE, [])`` when some source-sink path uses no cuttable vertex,
    or ``(OVER_BUDGET, [])`` when the minimum cut exceeds ``budget``.
    """
    # A path whose internal vertices are all uncuttable defeats every cut.
    seen = bytearray(n)
    queue = []
    for x in sources:
        if not blocked[x] and not seen[x]:
            seen[x] = 1
            queue.append(x)
    while queue:
        u = queue.pop()
        for e in range(out_ptr[u], out_ptr[u + 1]):
            w = out_head[e]
            if blocked[w] or seen[w]:
                continue
            if sink[w]:
                return INSEPARABLE, []
            seen[w] = 1
            if not cuttable[w]:
                queue.append(w)

    m = out_ptr[n]
    fint = [0] * n
    farc = [0] * m
    nodes = 2 * n
    flow = 0
    while True:
        parent = [-2] * nodes
        kind = [0] * nodes
        via = [0] * nodes
        queue = []
        for x in sources:
            if not blocked[x]:
                for a in (2 * x, 2 * x + 1):
                    if parent[a] == -2:
                        parent[a] = -1
                        queue.append(a)
        found = -1
        head = 0
        while head < len(queue) and found < 0:
            a = queue[head]
            head += 1
            v = a >> 1
            if a & 1 == 0:
                b = a | 1
                if parent[b] == -2 and (not cuttable[v] or fint[v] < 1):
                    parent[b] = a
                    kind[b] = 0
                    queue.append(b)
                for p in range(in_ptr[v], in_ptr[v + 1]):
                    e = in_arc[p]
                    if farc[e] > 0:
                        b = 2 * in_tail[p] + 1
                        if parent[b] == -2:
                            parent[b] = a
                            kind[b] = 2
                            via[b] = e
                            queue.append(b)
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
                        queue.append(b)
                if found < 0 and fint[v] > 0:
                    b = a & ~1
                    if parent[b] == -2:
                        parent[b] = a
                        kind[b] = 3
                        queue.append(b)
        if found < 0:
            break
        flow += 1
        if flow > budget:
            return OVER_BUDGET, []
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

    # Nodes that still reach a sink in the residual graph.
    in_b = bytearray(nodes)
    queue = []
    for y in range(n):
        if sink[y] and not blocked[y]:
            in_b[2 * y] = 1
            queue.append(2 * y)
    while queue:
        b = queue.pop()
        v = b >> 1
        if b & 1:
            a = b & ~1
            if not in_b[a] and (not cuttable[v] or fint[v] < 1):
                in_b[a] = 1
                queue.append(a)
            for e in range(out_ptr[v], out_ptr[v + 1]):
                if farc[e] > 0:
                    a = 2 * out_head[e]
                    if not in_b[a]:
                        in_b[a] = 1
                        queue.append(a)
        else:
            for p in range(in_ptr[v], in_ptr[v + 1]):
                u = in_tail[p]
                if blocked[u]:
                    continue
                a = 2 * u + 1
                if not in_b[a]:
                    in_b[a] = 1
                    queue.append(a)
            if fint[v] > 0:
                a = b | 1
                if not in_b[a]:
                    in_b[a] = 1
                    queue.append(a)
    cut = [v for v in range(n)
           if cuttable[v] and not blocked[v] and not in_b[2 * v] and in_b[2 * v + 1]]
    return flow, cut
