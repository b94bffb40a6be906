"""Brute-force reference checkers, written with plain loops over Python lists.

They share no code with the library validators and stop at the first
failing tuple.  They are slow and only meant for small structures.
"""

from itertools import combinations, permutations, product


def raw(G):
    """Plain-list view of a structure: (n, zero, add, neg, bins, opp, uns)."""
    sig = G.signature
    return (
        G.order,
        G.zero,
        G.add_table.tolist(),
        G.neg_table.tolist(),
        {s: G.binary_tables[s].tolist() for s in sig.extra_binary},
        {s: sig.opposite(s) for s in sig.extra_binary},
        {w: G.unary_tables[w].tolist() for w in sig.extra_unary},
    )


def gwo_ok(n, zero, add, neg, bins, opp, uns):
    E = range(n)
    for a in E:
        if add[zero][a] != a or add[a][zero] != a:
            return False
        if add[a][neg[a]] != zero or add[neg[a]][a] != zero:
            return False
    for a, b, c in product(E, repeat=3):
        if add[add[a][b]][c] != add[a][add[b][c]]:
            return False
    for s, M in bins.items():
        O = bins[opp[s]]
        for a, b in product(E, repeat=2):
            if O[a][b] != M[b][a]:
                return False
        for a, b, c in product(E, repeat=3):
            if M[a][add[b][c]] != add[M[a][b]][M[a][c]]:
                return False
    for W in uns.values():
        for a, b in product(E, repeat=2):
            if W[add[a][b]] != add[W[a]][W[b]]:
                return False
            for M in bins.values():
                if M[W[a]][b] != W[M[a][b]]:
                    return False
    return True


def gwo_valid(G):
    return gwo_ok(*raw(G))


def hom_ok(f, G, H):
    """``f`` (a list) preserves every operation from ``G`` to ``H``."""
    _, _, addG, negG, binG, _, unG = raw(G)
    _, _, addH, negH, binH, _, unH = raw(H)
    E = range(G.order)
    if f[G.zero] != H.zero:
        return False
    for a in E:
        if f[negG[a]] != negH[f[a]]:
            return False
        for w, W in unG.items():
            if f[W[a]] != unH[w][f[a]]:
                return False
    for a, b in product(E, repeat=2):
        if f[addG[a][b]] != addH[f[a]][f[b]]:
            return False
        for s, M in binG.items():
            if f[M[a][b]] != binH[s][f[a]][f[b]]:
                return False
    return True


def semidirect_raw(A, B, dot, star):
    """Tables of A ⋊ B from the pair formulas, pairs encoded a*|B|+b."""
    na, zA, addA, negA, binA, opp, unA = raw(A)
    nb, zB, addB, negB, binB, _, unB = raw(B)
    enc = lambda a, b: a * nb + b  # noqa: E731
    pairs = [(a, b) for a in range(na) for b in range(nb)]
    n = na * nb
    add = [[0] * n for _ in range(n)]
    bins = {s: [[0] * n for _ in range(n)] for s in binA}
    for i, (a1, b1) in enumerate(pairs):
        for j, (a2, b2) in enumerate(pairs):
            add[i][j] = enc(addA[a1][dot[b1][a2]], addB[b1][b2])
            for s in binA:
                mixed = star[opp[s]][b2][a1]
                first = addA[addA[binA[s][a1][a2]][mixed]][star[s][b1][a2]]
                bins[s][i][j] = enc(first, binB[s][b1][b2])
    seen = set()
    for s in A.signature.extra_binary:
        if opp[s] in seen and opp[s] != s:
            bins[s] = [list(r) for r in zip(*bins[opp[s]])]
        seen.add(s)
    zero = enc(zA, zB)
    neg = [next(j for j in range(n) if add[i][j] == zero) if any(add[i][j] == zero for j in range(n)) else 0
           for i in range(n)]
    uns = {w: [enc(unA[w][a], unB[w][b]) for a, b in pairs] for w in unA}
    return n, zero, add, neg, bins, opp, uns


def xmod_valid(X):
    A, B = X.A, X.B
    if not (gwo_valid(A) and gwo_valid(B)):
        return False
    dot = X.acts.dot.tolist()
    star = {s: t.tolist() for s, t in X.acts.star.items()}
    if not gwo_ok(*semidirect_raw(A, B, dot, star)):
        return False
    al = X.boundary.map.tolist()
    if not hom_ok(al, A, B):
        return False
    for b, a in product(B.elements, A.elements):
        if al[dot[b][a]] != B.sum(b, al[a], B.neg(b)):
            return False
        for s in star:
            if al[star[s][b][a]] != B.op(s, b, al[a]):
                return False
    for a, a2 in product(A.elements, repeat=2):
        if dot[al[a]][a2] != A.sum(a, a2, A.neg(a)):
            return False
        for s in star:
            if star[s][al[a]][a2] != A.op(s, a, a2):
                return False
    return True


def gpd_valid(G):
    G0, G1 = G.objects, G.arrows
    if not (gwo_valid(G0) and gwo_valid(G1)):
        return False
    d0, d1, eps = G.d0.map.tolist(), G.d1.map.tolist(), G.eps.map.tolist()
    if not (hom_ok(d0, G1, G0) and hom_ok(d1, G1, G0) and hom_ok(eps, G0, G1)):
        return False
    if any(d0[eps[x]] != x or d1[eps[x]] != x for x in G0.elements):
        return False

    def comp(b, a):
        return G1.sum(b, G1.neg(eps[d1[a]]), a)

    arrows = list(G1.elements)
    pairs = [(b, a) for b in arrows for a in arrows if d0[b] == d1[a]]
    for b, a in pairs:
        c = comp(b, a)
        if d0[c] != d0[a] or d1[c] != d1[b]:
            return False
    for a in arrows:
        if comp(eps[d1[a]], a) != a or comp(a, eps[d0[a]]) != a:
            return False
        inv = G1.sum(eps[d1[a]], G1.neg(a), eps[d0[a]])
        if d0[inv] != d1[a] or d1[inv] != d0[a]:
            return False
        if comp(inv, a) != eps[d0[a]] or comp(a, inv) != eps[d1[a]]:
            return False
    for b, a in pairs:
        for c in arrows:
            if d0[c] == d1[b] and comp(c, comp(b, a)) != comp(comp(c, b), a):
                return False
    ops = ["+", *G1.signature.extra_binary]
    for (b, a), (d, c) in product(pairs, repeat=2):
        for s in ops:
            if comp(G1.op(s, b, d), G1.op(s, a, c)) != G1.op(s, comp(b, a), comp(d, c)):
                return False
    for w in G1.signature.unary_symbols:
        for b, a in pairs:
            if G1.unary(w, comp(b, a)) != comp(G1.unary(w, b), G1.unary(w, a)):
                return False
    return True


def cat1_valid(C):
    G = C.G
    if not gwo_valid(G):
        return False
    s, t = C.s.map.tolist(), C.t.map.tolist()
    if not (hom_ok(s, G, G) and hom_ok(t, G, G)):
        return False
    if any(s[t[x]] != t[x] or t[s[x]] != s[x] for x in G.elements):
        return False
    ks = [x for x in G.elements if s[x] == G.zero]
    kt = [x for x in G.elements if t[x] == G.zero]
    for x, y in product(ks, kt):
        if G.sum(x, y, G.neg(x), G.neg(y)) != G.zero:
            return False
        for sym in G.signature.extra_binary:
            if G.op(sym, x, y) != G.zero or G.op(sym, y, x) != G.zero:
                return False
    return True


# --------------------------------------------------------------------------
# exhaustive searches
# --------------------------------------------------------------------------


def closed_subsets(G, ideal):
    """Every subset of the carrier passing the plain subobject (or ideal) test."""
    n = G.order
    out = []
    others = [x for x in G.elements if x != G.zero]
    for k in range(n):
        for rest in combinations(others, k):
            X = {G.zero, *rest}
            ok = all(G.add(a, b) in X for a in X for b in X) and all(G.neg(a) in X for a in X)
            ok = ok and all(G.op(s, a, b) in X for s in G.signature.extra_binary for a in X for b in X)
            ok = ok and all(G.unary(w, a) in X for w in G.signature.extra_unary for a in X)
            if ok and ideal:
                ok = all(G.sum(g, x, G.neg(g)) in X for g in G.elements for x in X)
                ok = ok and all(
                    G.op(s, g, x) in X and G.op(s, x, g) in X
                    for s in G.signature.extra_binary for g in G.elements for x in X
                )
            if ok:
                out.append(tuple(sorted(X)))
    return sorted(out, key=lambda X: (len(X), X))


def isomorphic(G, H):
    """Brute force over all bijections."""
    if G.order != H.order or G.signature != H.signature:
        return False
    return any(hom_ok(list(p), G, H) for p in permutations(range(H.order)))
