"""Brute-force coend enumeration used as an oracle for the fast engines.

Raws carry the full gluing permutation and every coend move is applied
explicitly; classes come from ``orbit_quotient``.
"""
import itertools

from symseqkit.gset import orbit_quotient
from symseqkit.perm import (act_word, block_sum, compose, grid_embed, identity, lex_word_product,
                            morphisms, segment_permutation, Permutation)


def _swap_perm(n, k, offset=0):
    return Permutation.transposition(n, offset + k)


def compose_raws(N, M, z, x):
    Z = N.inputs
    raws = []
    mkeys = [k for k in M.support if k[1] == x]
    for mkey in mkeys:
        ybar = mkey[0]
        options = [[k for k in N.support if k[1] == y] for y in ybar]
        for nkeys in itertools.product(*options):
            concat = tuple(c for k in nkeys for c in k[0])
            if Z.sort_word(concat) != tuple(z):
                continue
            for sigma in morphisms(z, concat):
                for f in M.support[mkey].elements:
                    for gs in itertools.product(*[N.support[k].elements for k in nkeys]):
                        raws.append((mkey, f, tuple(zip(nkeys, gs)), tuple(sigma)))
    return raws


def compose_moves(N, M):
    def inner(i, k):
        def move(raw):
            mkey, f, blocks, sigma = raw
            if i >= len(blocks):
                return None
            nkey, g = blocks[i]
            w = nkey[0]
            if k >= len(w) - 1 or w[k] != w[k + 1]:
                return None
            off = sum(len(b[0][0]) for b in blocks[:i])
            t = _swap_perm(len(sigma), k, off)
            h = N.support[nkey]
            nb = list(blocks)
            nb[i] = (nkey, h.act(Permutation.transposition(len(w), k), g))
            return (mkey, f, tuple(nb), compose(sigma, t))
        return move

    def outer(k):
        def move(raw):
            mkey, f, blocks, sigma = raw
            y = mkey[0]
            if k >= len(y) - 1 or y[k] != y[k + 1]:
                return None
            order = list(range(len(blocks)))
            order[k], order[k + 1] = order[k + 1], order[k]
            B = segment_permutation([len(b[0][0]) for b in blocks], order)
            nb = tuple(blocks[j] for j in order)
            f2 = M.support[mkey].act(Permutation.transposition(len(y), k), f)
            return (mkey, f2, nb, compose(sigma, B))
        return move

    maxm = max((len(k[0]) for k in M.support), default=0)
    maxn = max((len(k[0]) for k in N.support), default=0)
    moves = [inner(i, k) for i in range(maxm) for k in range(maxn)]
    moves += [outer(k) for k in range(maxm)]
    return moves


def brute_compose(N, M, z, x):
    raws = compose_raws(N, M, z, x)
    return orbit_quotient(raws, compose_moves(N, M))


def box_raws(M1, M2, z, x):
    Z = M1.inputs.product(M2.inputs)
    raws = []
    for k1 in [k for k in M1.support if k[1] == x[0]]:
        for k2 in [k for k in M2.support if k[1] == x[1]]:
            lw = lex_word_product(k1[0], k2[0])
            if Z.sort_word(lw) != tuple(z):
                continue
            for sigma in morphisms(z, lw):
                for f1 in M1.support[k1].elements:
                    for f2 in M2.support[k2].elements:
                        raws.append((k1, f1, k2, f2, tuple(sigma)))
    return raws


def box_moves(M1, M2):
    def row(k):
        def move(raw):
            k1, f1, k2, f2, sigma = raw
            y1 = k1[0]
            if k >= len(y1) - 1 or y1[k] != y1[k + 1]:
                return None
            a = Permutation.transposition(len(y1), k)
            return (k1, M1.support[k1].act(a, f1), k2, f2,
                    compose(sigma, grid_embed(a, identity(len(k2[0])))))
        return move

    def col(k):
        def move(raw):
            k1, f1, k2, f2, sigma = raw
            y2 = k2[0]
            if k >= len(y2) - 1 or y2[k] != y2[k + 1]:
                return None
            b = Permutation.transposition(len(y2), k)
            return (k1, f1, k2, M2.support[k2].act(b, f2),
                    compose(sigma, grid_embed(identity(len(k1[0])), b)))
        return move

    m1 = max((len(k[0]) for k in M1.support), default=0)
    m2 = max((len(k[0]) for k in M2.support), default=0)
    return [row(k) for k in range(m1)] + [col(k) for k in range(m2)]


def brute_box(M1, M2, z, x):
    return orbit_quotient(box_raws(M1, M2, z, x), box_moves(M1, M2))
