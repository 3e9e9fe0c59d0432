"""Deterministic corpus of algebras shared across the test suite.

The n <= 3 part is the full labeled enumeration.  The n = 4 part mixes
construction strategies so the completion and representation machinery sees
chains, direct products, a group, relation closures, and zero-adjoined
semigroups; the list is deterministic and deduplicated up to isomorphism.
"""

from __future__ import annotations

from resq import algebra
from resq.algebra import (
    FiniteResiduatedSemigroup,
    _associative_tables,
    _monotone,
    _partial_orders,
    canonical_key,
    infer_residuals,
)
from resq.errors import NoResidualError

C2_TEXT = "elements: a b\nleq: a<=b\ncomp: a;a=a a;b=a b;a=a b;b=a\n"

N4_CORPUS_SIZE = 24


def make_c2() -> FiniteResiduatedSemigroup:
    return algebra.parse_algebra(C2_TEXT)


def direct_product(A: FiniteResiduatedSemigroup, B: FiniteResiduatedSemigroup):
    """Componentwise product; residuated semigroups are closed under it."""
    nA, nB = A.n, B.n
    size = nA * nB

    def idx(i: int, j: int) -> int:
        return i * nB + j

    names = tuple(f"{a}.{b}" for a in A.names for b in B.names)
    leq = []
    for i in range(nA):
        for j in range(nB):
            row = 0
            for k in range(nA):
                for l in range(nB):
                    if A.le(i, k) and B.le(j, l):
                        row |= 1 << idx(k, l)
            leq.append(row)

    def table(TA, TB):
        return tuple(
            tuple(idx(TA[x // nB][y // nB], TB[x % nB][y % nB]) for y in range(size))
            for x in range(size)
        )

    return FiniteResiduatedSemigroup(
        names=names,
        leq=tuple(leq),
        comp=table(A.comp, B.comp),
        lres=table(A.lres, B.lres),
        rres=table(A.rres, B.rres),
    )


def adjoin_zero(leq, comp) -> FiniteResiduatedSemigroup:
    """Add an absorbing bottom to a monotone associative table on a poset.

    Adjoining a zero makes every left/right division candidate set nonempty,
    so residuals exist whenever the enlarged candidate sets have maxima;
    callers must be ready for NoResidualError.
    """
    n = len(leq)
    nn = n + 1
    new_leq = tuple([(1 << nn) - 1] + [leq[i] << 1 for i in range(n)])
    new_comp = [[0] * nn for _ in range(nn)]
    for i in range(n):
        for j in range(n):
            new_comp[i + 1][j + 1] = comp[i][j] + 1
    comp_t = tuple(tuple(row) for row in new_comp)
    lres, rres = infer_residuals(new_leq, comp_t)
    return FiniteResiduatedSemigroup(
        names=tuple(f"e{i}" for i in range(nn)),
        leq=new_leq,
        comp=comp_t,
        lres=lres,
        rres=rres,
    )


def _chain_algebra(comp_rows) -> FiniteResiduatedSemigroup:
    n = len(comp_rows)
    leq = tuple(sum(1 << j for j in range(i, n)) for i in range(n))
    comp = tuple(tuple(row) for row in comp_rows)
    lres, rres = infer_residuals(leq, comp)
    return FiniteResiduatedSemigroup(algebra.default_names(n), leq, comp, lres, rres)


def _discrete_algebra(comp_rows) -> FiniteResiduatedSemigroup:
    n = len(comp_rows)
    leq = tuple(1 << i for i in range(n))
    comp = tuple(tuple(row) for row in comp_rows)
    lres, rres = infer_residuals(leq, comp)
    return FiniteResiduatedSemigroup(algebra.default_names(n), leq, comp, lres, rres)


# single-generator families over a 3-point base whose closures have 4 members
_CLOSURE_GENERATORS = (((6, 5, 0),), ((6, 5, 3),), ((3, 6, 5),))


def build_n4_corpus(limit: int = N4_CORPUS_SIZE):
    """Distinct (up to isomorphism) 4-element residuated semigroups."""
    out = []
    seen = set()

    def record(A: FiniteResiduatedSemigroup):
        if len(out) >= limit:
            return
        key = canonical_key(A)
        if key in seen:
            return
        seen.add(key)
        assert algebra.validate(A).valid
        out.append(A)

    algs2 = list(algebra.enumerate_algebras(2))
    for A in algs2:
        for B in algs2:
            record(direct_product(A, B))

    record(_chain_algebra([[min(i, j) for j in range(4)] for i in range(4)]))
    record(_chain_algebra([[0] * 4 for _ in range(4)]))
    record(_chain_algebra([[max(0, i + j - 3) for j in range(4)] for i in range(4)]))
    record(_discrete_algebra([[(i + j) % 4 for j in range(4)] for i in range(4)]))

    for gens in _CLOSURE_GENERATORS:
        family = algebra.close_relation_family(gens, 3, max_relations=64)
        assert len(family) == 4
        record(algebra.algebra_of_relations(family))

    for leq in _partial_orders(3):
        if len(out) >= limit:
            break
        if not any(all(leq[i] >> j & 1 for i in range(3)) for j in range(3)):
            continue
        for comp in _associative_tables(3):
            if len(out) >= limit:
                break
            if not _monotone(leq, comp):
                continue
            try:
                record(adjoin_zero(leq, comp))
            except NoResidualError:
                continue

    assert len(out) == limit
    return out


def build_small_corpus():
    """All labeled residuated semigroups with n <= 3, plus the C2 fixture."""
    out = [a for n in (1, 2, 3) for a in algebra.enumerate_algebras(n)]
    out.append(make_c2())
    return out
