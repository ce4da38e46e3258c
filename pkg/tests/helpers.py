"""Hypothesis strategies and slow independent oracles shared by the tests."""
from itertools import combinations, product

import networkx as nx
from hypothesis import strategies as st

from wadgeposet.poset import ColoredPoset


@st.composite
def posets(draw, min_n=1, max_n=6, with_bottom=False):
    """Random 2-colored posets; index order is a linear extension."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i, j in combinations(range(n), 2) if draw(st.booleans())]
    if with_bottom:
        pairs += [(0, j) for j in range(1, n)]
    colors = draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
    return ColoredPoset.from_relation(n, pairs, colors)


def shuffled(P, perm):
    return P.relabel(perm)


# -- networkx oracles ------------------------------------------------------

def digraph(P):
    G = nx.DiGraph()
    G.add_nodes_from(range(P.n))
    G.add_edges_from((i, j) for i in range(P.n) for j in range(P.n) if i != j and P.le(i, j))
    return G


def nx_predecessors(P, p):
    return nx.ancestors(digraph(P), p) | {p}


def nx_covers(P):
    return set(nx.transitive_reduction(digraph(P)).edges())


def brute_supremum(P, S):
    ub = [u for u in range(P.n) if all(P.le(s, u) for s in S)]
    least = [u for u in ub if all(P.le(u, v) for v in ub)]
    return least[0] if len(least) == 1 else None


def nx_pattern_embeds(pat, P):
    """Covering edges onto covering edges, colors matched, injective."""
    from networkx.algorithms.isomorphism import DiGraphMatcher

    def hasse(X):
        G = nx.DiGraph()
        for p in range(X.n):
            G.add_node(p, color=X.color[p])
        G.add_edges_from(X.hasse_edges())
        return G

    gm = DiGraphMatcher(hasse(P), hasse(pat), node_match=lambda a, b: a["color"] == b["color"])
    for m in gm.subgraph_monomorphisms_iter():
        return {v: k for k, v in m.items()}
    return None


# -- brute force ----------------------------------------------------------

def alternating_chains(P, p, up=True):
    """Longest strictly monotone chain from ``p`` with alternating colors, by
    plain recursion over every chain (no memo)."""
    best = 1
    for q in range(P.n):
        if q != p and (P.le(p, q) if up else P.le(q, p)) and P.color[q] != P.color[p]:
            best = max(best, 1 + alternating_chains(P, q, up))
    return best


def all_homs(P, Q):
    doms = [[q for q in range(Q.n) if Q.color[q] == P.color[p]] for p in range(P.n)]
    for phi in product(*doms):
        if all(Q.le(phi[a], phi[b]) for a in range(P.n) for b in range(P.n) if P.le(a, b)):
            yield phi
