"""Bipartite matching machinery: Hopcroft-Karp, Hall violators, and the
alternating-path merge of two one-side-saturating matchings.

Vertices are integers: lefts 0..n_left-1, rights 0..n_right-1.  Adjacency is
``adj[l] = sorted list of rights``; all traversals follow input order so
results are deterministic.
"""

from __future__ import annotations

from collections import deque

_INF = -1


def hopcroft_karp(adj: list[list[int]], n_right: int):
    """Maximum matching of the bipartite graph.

    Returns ``(match_l, match_r, size)`` where ``match_l[l]`` is the right
    partner of left ``l`` (or -1) and vice versa.
    """
    n_left = len(adj)
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    dist = [0] * n_left

    def bfs() -> bool:
        queue = deque()
        for l in range(n_left):
            if match_l[l] == -1:
                dist[l] = 0
                queue.append(l)
            else:
                dist[l] = _INF
        found = False
        while queue:
            l = queue.popleft()
            for r in adj[l]:
                nl = match_r[r]
                if nl == -1:
                    found = True
                elif dist[nl] == _INF:
                    dist[nl] = dist[l] + 1
                    queue.append(nl)
        return found

    def dfs(l: int) -> bool:
        for r in adj[l]:
            nl = match_r[r]
            if nl == -1 or (dist[nl] == dist[l] + 1 and dfs(nl)):
                match_l[l] = r
                match_r[r] = l
                return True
        dist[l] = _INF
        return False

    size = 0
    while bfs():
        for l in range(n_left):
            if match_l[l] == -1 and dfs(l):
                size += 1
    return match_l, match_r, size


def hall_violator(adj: list[list[int]], match_l: list[int], match_r: list[int]):
    """Canonical Hall violator after a maximum matching that leaves some left
    vertex unmatched.

    Returns ``(lefts, rights)``: the lefts reachable from unmatched lefts by
    alternating paths and their whole neighborhood.  By maximality
    ``len(rights) < len(lefts)``.
    """
    reach_l = set()
    reach_r = set()
    queue = deque(l for l in range(len(adj)) if match_l[l] == -1)
    reach_l.update(queue)
    while queue:
        l = queue.popleft()
        for r in adj[l]:
            if r in reach_r:
                continue
            reach_r.add(r)
            nl = match_r[r]
            if nl != -1 and nl not in reach_l:
                reach_l.add(nl)
                queue.append(nl)
    return sorted(reach_l), sorted(reach_r)


def combine_saturating(
    match1_l: dict, match2_l: dict, required_rights
) -> dict:
    """Merge two matchings of one graph into one covering both designated sides.

    ``match1_l`` (left -> right) saturates the designated lefts; ``match2_l``
    saturates ``required_rights``.  Walks the alternating component of each
    required right that match1 misses, taking the match2 edges; only a
    non-required terminal can lose coverage.
    """
    match2_r = {r: l for l, r in match2_l.items()}
    result = dict(match1_l)
    covered_r = set(result.values())
    for r0 in sorted(required_rights):
        if r0 in covered_r:
            continue
        r = r0
        seen = set()
        while True:
            if r in seen:
                raise RuntimeError("alternating walk revisited a vertex")
            seen.add(r)
            l = match2_r[r]
            nxt = match1_l.get(l)
            result[l] = r
            covered_r.add(r)
            if nxt is None:
                break
            if nxt not in match2_r:
                covered_r.discard(nxt)
                break
            r = nxt
    return result
