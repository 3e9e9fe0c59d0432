"""Relational representation of a finite quantale and the induced interpretation.

Every quantale element a becomes the relation of pairs (g, q) with g a
generator and g <= a;q, over the quantale carrier as a base.  Composing the
lower-cone embedding with this hat map interprets the original algebra by
relations over a finite base.  Without a unit the hat map can conflate
distinct elements, so an optional unitalization step freely adjoins one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import relations as rel
from .algebra import FiniteResiduatedSemigroup
from .completion import Quantale, build_quantale, check_quantale_laws, embed
from .errors import ParseError
from .relations import Interpretation, Relation, RelationalStructure

GENERATOR_MODES = ("all", "join-irreducible")


@dataclass(frozen=True)
class GeneratorSet:
    """Chosen generators of a quantale, with the join-generation property checked."""

    indices: tuple[int, ...]
    mode: str


def generators(Q: Quantale, mode: str = "all") -> GeneratorSet:
    if mode not in GENERATOR_MODES:
        raise ValueError(f"unknown generator mode {mode!r}")
    if mode == "all":
        chosen = tuple(range(Q.size))
    else:
        chosen = tuple(
            q
            for q in range(Q.size)
            if Q.sup_of(p for p in range(Q.size) if p != q and Q.le(p, q)) != q
        )
    for q in range(Q.size):
        if Q.sup_of(g for g in chosen if Q.le(g, q)) != q:
            raise AssertionError(f"generator set does not join-generate element {q}")
    return GeneratorSet(indices=chosen, mode=mode)


def hat(Q: Quantale, G: GeneratorSet, a: int) -> Relation:
    """The relation {(g, q) : g in G, g <= a;q} over the carrier of Q."""
    rows = [0] * Q.size
    comp_row = Q.comp[a]
    for g in G.indices:
        acc = 0
        for q in range(Q.size):
            if Q.le(g, comp_row[q]):
                acc |= 1 << q
        rows[g] = acc
    return tuple(rows)


def unitalize(Q: Quantale, check: bool = True) -> Quantale:
    """Freely adjoin a two-sided unit; the identity on quantales already unital.

    The carrier doubles to pairs (q, i) with i marking "join with the unit":
    order and joins are componentwise, the product is
    (p, i);(q, j) = (p;q v [j]p v [i]q, i&j) and the unit is (bottom, 1).
    """
    if Q.unital:
        return Q
    size = Q.size
    unit_bit = Q.masks[Q.top].bit_length()
    masks = tuple(Q.masks[q] | (i << unit_bit) for i in (0, 1) for q in range(size))
    labels = tuple(
        Q.labels[q] + ("+e" if i else "") for i in (0, 1) for q in range(size)
    )
    total = 2 * size

    def comp_pair(p: int, i: int, q: int, j: int) -> int:
        base = Q.comp[p][q]
        if j:
            base = Q.sup[base][p]
        if i:
            base = Q.sup[base][q]
        return (i & j) * size + base

    comp = tuple(
        tuple(comp_pair(x % size, x // size, y % size, y // size) for y in range(total))
        for x in range(total)
    )
    sup = tuple(
        tuple(
            ((x // size) | (y // size)) * size + Q.sup[x % size][y % size]
            for y in range(total)
        )
        for x in range(total)
    )
    leq = tuple(
        sum(1 << j for j in range(total) if masks[i] & ~masks[j] == 0)
        for i in range(total)
    )
    out = Quantale(
        labels=labels,
        masks=masks,
        leq=leq,
        comp=comp,
        sup=sup,
        bottom=Q.bottom,
        top=size + Q.top,
        unital=True,
        unit=size + Q.bottom,
    )
    if check:
        check_quantale_laws(out)
    return out


@dataclass(frozen=True)
class ClauseResult:
    name: str
    passed: bool
    witness: tuple[int, int] | None


@dataclass(frozen=True)
class HatCheckReport:
    clauses: tuple[ClauseResult, ...]

    def clause(self, name: str) -> ClauseResult:
        for c in self.clauses:
            if c.name == name:
                return c
        raise KeyError(name)


def hat_isomorphism_check(Q: Quantale, G: GeneratorSet) -> HatCheckReport:
    """Check the hat map clause by clause, with a witness pair on failure.

    Clauses: order preservation, order reflection, composition preservation
    (relational composition over the carrier), and whether the hat of a join
    is the union of the hats.  Each clause is reported separately; none is
    fatal here.
    """
    hats = [hat(Q, G, a) for a in range(Q.size)]

    def first_failure(predicate):
        for a in range(Q.size):
            for b in range(Q.size):
                if not predicate(a, b):
                    return (a, b)
        return None

    monotone = first_failure(
        lambda a, b: not Q.le(a, b) or rel.rel_subset(hats[a], hats[b])
    )
    reflect = first_failure(
        lambda a, b: not rel.rel_subset(hats[a], hats[b]) or Q.le(a, b)
    )
    composition = first_failure(
        lambda a, b: rel.rel_compose(hats[a], hats[b]) == hats[Q.comp[a][b]]
    )
    join_union = first_failure(
        lambda a, b: rel.rel_union(hats[a], hats[b]) == hats[Q.sup[a][b]]
    )
    clauses = tuple(
        ClauseResult(name, witness is None, witness)
        for name, witness in (
            ("order-monotone", monotone),
            ("order-reflect", reflect),
            ("composition", composition),
            ("join-union", join_union),
        )
    )
    return HatCheckReport(clauses=clauses)


@dataclass(frozen=True)
class RepresentResult:
    interpretation: Interpretation
    quantale: Quantale
    base_quantale: Quantale
    generator_set: GeneratorSet
    unitalized: bool
    embedding: tuple[int, ...]


def represent_pipeline(
    A: FiniteResiduatedSemigroup,
    generators_mode: str = "all",
    unitalize_mode: str = "auto",
) -> RepresentResult:
    """Full pipeline: completion, optional unitalization, generators, hat map.

    unitalize_mode "auto" adjoins a unit exactly when the hat map fails order
    reflection on the plain completion; "on" always adjoins one (a no-op for
    quantales that already have a unit) and "off" never does.
    """
    if unitalize_mode not in ("on", "off", "auto"):
        raise ValueError(f"unknown unitalize mode {unitalize_mode!r}")
    Q0 = build_quantale(A)
    f = embed(A, Q0)
    if unitalize_mode == "on":
        use_unit = not Q0.unital
    elif unitalize_mode == "auto":
        report = hat_isomorphism_check(Q0, generators(Q0, generators_mode))
        use_unit = not report.clause("order-reflect").passed
    else:
        use_unit = False
    Q = unitalize(Q0) if use_unit else Q0
    # unitalize lays out the (q, 0) copies first, so the embedding indices carry over
    G = generators(Q, generators_mode)
    interp = Interpretation(
        algebra=A,
        base_labels=Q.labels,
        relations=tuple(hat(Q, G, f[a]) for a in range(A.n)),
    )
    return RepresentResult(
        interpretation=interp,
        quantale=Q,
        base_quantale=Q0,
        generator_set=G,
        unitalized=use_unit,
        embedding=f,
    )


def represent(
    A: FiniteResiduatedSemigroup,
    generators_mode: str = "all",
    unitalize_mode: str = "auto",
) -> Interpretation:
    return represent_pipeline(A, generators_mode, unitalize_mode).interpretation


# ---------------------------------------------------------------------------
# representation dump (the input contract of the verifier CLI)


def interpretation_payload(I: Interpretation) -> dict:
    names = list(getattr(I.algebra, "names"))
    return {
        "base": list(I.base_labels),
        "elements": names,
        "relations": {
            name: [list(p) for p in rel.relation_pairs(I.relations[i])]
            for i, name in enumerate(names)
        },
    }


def format_interpretation_lines(payload: dict) -> list[str]:
    lines = ["base: " + " ".join(payload["base"])]
    for name in payload["elements"]:
        pairs = payload["relations"][name]
        lines.append(f"rel {name}:" + "".join(f" ({x},{y})" for x, y in pairs))
    return lines


def format_interpretation(I: Interpretation) -> str:
    return "\n".join(format_interpretation_lines(interpretation_payload(I))) + "\n"


def parse_relational_structure(text: str) -> RelationalStructure:
    """Read a representation dump (text or its JSON mirror)."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        payload = json.loads(text)
        base = tuple(str(x) for x in payload["base"])
        named = [(name, pairs) for name, pairs in payload["relations"].items()]
    else:
        base = ()
        named = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line.startswith("base:"):
                base = tuple(line[len("base:"):].split())
            elif line.startswith("rel "):
                head, _, rest = line.partition(":")
                name = head[len("rel "):].strip()
                pairs = []
                for token in rest.split():
                    if not (token.startswith("(") and token.endswith(")")):
                        raise ParseError(f"expected (x,y), got {token!r}", lineno)
                    x, _, y = token[1:-1].partition(",")
                    pairs.append([int(x), int(y)])
                named.append((name, pairs))
            else:
                raise ParseError(f"unexpected line {line!r}", lineno)
        if not base:
            raise ParseError("missing base line")
    return RelationalStructure(
        base_labels=base,
        relations=tuple(
            (name, rel.relation_from_pairs(len(base), pairs)) for name, pairs in named
        ),
    )


def parse_interpretation(text: str, A) -> Interpretation:
    """Read a representation dump and bind its relations to A's elements."""
    structure = parse_relational_structure(text)
    named = dict(structure.relations)
    relations = []
    for name in A.names:
        if name not in named:
            raise ParseError(f"dump has no relation for element {name!r}")
        relations.append(named[name])
    return Interpretation(
        algebra=A, base_labels=structure.base_labels, relations=tuple(relations)
    )
