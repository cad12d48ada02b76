"""Bott–Borel–Weil on G(2,5) and a solver for exact-sequence dimension ledgers.

A homogeneous bundle ``S_λ(S) ⊗ S_μ(Q) ⊗ O(t)`` is turned into a GL5 weight by
rewriting both factors through the duals, ``S_λ(S) = S_{-rev λ}(S^∨)`` and
``S_μ(Q) = S_{-rev μ}(Q^∨)``, and concatenating ``(-rev λ + (t,t) | -rev μ)``.
Adding ``ρ = (4,3,2,1,0)`` and sorting gives the cohomology: a repeated entry
means acyclic, otherwise the degree is the number of inversions. The
convention is pinned by ``H^0(O(1)) = 10``, ``H^6(O(-5)) = 1`` and
``H^6(Ω¹(-5)) = 24``.
"""

from __future__ import annotations

import shlex
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Iterable, Mapping, Sequence

RHO = (4, 3, 2, 1, 0)
DIM_G = 6


# ---------------------------------------------------------------------------
# weights and bundles


def weyl_dim(weight: Sequence[int]) -> int:
    """Dimension of the GL_n irreducible with the given dominant weight."""
    w = tuple(weight)
    if any(w[i] < w[i + 1] for i in range(len(w) - 1)):
        raise ValueError(f"weight {w} is not weakly decreasing")
    num, den = 1, 1
    n = len(w)
    for i in range(n):
        for j in range(i + 1, n):
            num *= w[i] - w[j] + j - i
            den *= j - i
    return num // den


def _dominant(w: Sequence[int]) -> bool:
    return all(w[i] >= w[i + 1] for i in range(len(w) - 1))


@dataclass(frozen=True)
class HomogBundle:
    lam: tuple[int, int]
    mu: tuple[int, int, int]
    twist: int = 0

    def __post_init__(self):
        if len(self.lam) != 2 or len(self.mu) != 3:
            raise ValueError("λ has length 2 and μ has length 3")
        if not (_dominant(self.lam) and _dominant(self.mu)):
            raise ValueError("weights must be weakly decreasing")

    @property
    def rank(self) -> int:
        return weyl_dim(self.lam) * weyl_dim(self.mu)

    def gl5_weight(self) -> tuple[int, ...]:
        t = self.twist
        s = (-self.lam[1] + t, -self.lam[0] + t)
        q = (-self.mu[2], -self.mu[1], -self.mu[0])
        return s + q

    def serre_dual(self) -> "HomogBundle":
        """E^∨ ⊗ ω_G with ω_G = O(-5)."""
        return HomogBundle((-self.lam[1], -self.lam[0]), (-self.mu[2], -self.mu[1], -self.mu[0]), -self.twist - 5)

    def __str__(self):
        return f"S{self.lam}⊗Q{self.mu}({self.twist})"


@dataclass(frozen=True)
class CohomTable:
    """Cohomology of an irreducible homogeneous bundle: at most one nonzero degree."""

    degree: int | None
    weight: tuple[int, ...] | None
    dim: int

    def dims(self) -> list[int]:
        out = [0] * (DIM_G + 1)
        if self.degree is not None:
            out[self.degree] = self.dim
        return out

    @property
    def acyclic(self) -> bool:
        return self.degree is None


def bbw_cohomology(bundle: HomogBundle) -> CohomTable:
    shifted = [a + r for a, r in zip(bundle.gl5_weight(), RHO)]
    if len(set(shifted)) < len(shifted):
        return CohomTable(None, None, 0)
    inversions = sum(1 for i in range(5) for j in range(i + 1, 5) if shifted[i] < shifted[j])
    ordered = sorted(shifted, reverse=True)
    weight = tuple(a - r for a, r in zip(ordered, RHO))
    table = CohomTable(inversions, weight, weyl_dim(weight))
    assert 0 <= table.degree <= DIM_G
    return table


def _partitions_in_box(p: int, rows: int, cols: int) -> list[tuple[int, ...]]:
    out = []

    def rec(prefix, remaining, cap):
        if len(prefix) == rows:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        for part in range(min(cap, remaining), -1, -1):
            rec(prefix + [part], remaining - part, part)

    rec([], p, cols)
    return out


def conjugate(part: Sequence[int], length: int) -> tuple[int, ...]:
    return tuple(sum(1 for x in part if x > i) for i in range(length))


def decompose_cotangent_power(p: int, t: int = 0) -> list[HomogBundle]:
    """Cauchy summands of Ω^p_G(t) = ∧^p(S ⊗ Q^∨)(t)."""
    if not 0 <= p <= DIM_G:
        raise ValueError(f"cotangent power {p} outside 0..6")
    out = []
    for nu in _partitions_in_box(p, 2, 3):
        nu_c = conjugate(nu, 3)
        mu = (-nu_c[2], -nu_c[1], -nu_c[0])
        out.append(HomogBundle((nu[0], nu[1]), mu, t))
    assert sum(b.rank for b in out) == comb(6, p)
    return out


def cohomology_dims(bundles: Iterable[HomogBundle]) -> list[int]:
    out = [0] * (DIM_G + 1)
    for b in bundles:
        for q, d in enumerate(bbw_cohomology(b).dims()):
            out[q] += d
    return out


def omega_cohomology(p: int, t: int) -> list[int]:
    return cohomology_dims(decompose_cotangent_power(p, t))


def euler_characteristic(dims: Sequence[int]) -> int:
    return sum((-1) ** q * d for q, d in enumerate(dims))


@dataclass(frozen=True)
class SuiteEntry:
    label: str
    p: int
    t: int
    dims: tuple[int, ...]
    expected: tuple[int, ...]
    weights: tuple

    @property
    def ok(self) -> bool:
        return self.dims == self.expected


def _delta(q: int, d: int) -> tuple[int, ...]:
    out = [0] * (DIM_G + 1)
    out[q] = d
    return tuple(out)


ACYCLIC = (0,) * (DIM_G + 1)


def acyclicity_suite() -> list[SuiteEntry]:
    """Vanishing and single-degree statements for twisted cotangent powers."""
    cases = [(f"Ω¹(-{r})", 1, -r, ACYCLIC) for r in range(1, 5)]
    cases += [(f"Ω²(-{r})", 2, -r, ACYCLIC) for r in (1, 2)]
    cases += [("Ω²(-3)", 2, -3, _delta(5, 5)), ("Ω¹(-5)", 1, -5, _delta(6, 24))]
    cases += [("O(1)", 0, 1, _delta(0, 10)), ("O(-5)", 0, -5, _delta(6, 1))]
    out = []
    for label, p, t, expected in cases:
        summands = decompose_cotangent_power(p, t)
        tables = [bbw_cohomology(b) for b in summands]
        weights = tuple((str(b), tb.degree, tb.weight) for b, tb in zip(summands, tables) if not tb.acyclic)
        out.append(SuiteEntry(label, p, t, tuple(cohomology_dims(summands)), expected, weights))
    return out


# ---------------------------------------------------------------------------
# exact-sequence ledger


class LedgerError(ValueError):
    """Malformed ledger text or reference to an undeclared sheaf."""


class LedgerContradiction(ValueError):
    def __init__(self, segment: str, detail: str):
        super().__init__(f"contradiction in {segment}: {detail}")
        self.segment = segment
        self.detail = detail


@dataclass(frozen=True)
class Term:
    coef: int
    sheaf: str


@dataclass(frozen=True)
class ShortExact:
    name: str
    space: str
    terms: tuple[Term, Term, Term]


@dataclass(frozen=True)
class RankFact:
    name: str
    category: str  # "rank" or "natural"
    ses: str
    q: int
    arrow: str  # "AB", "BC" or "CA"
    value: int | str  # literal or "@key" resolved at solve time
    provenance: str = ""


@dataclass(frozen=True)
class Duality:
    name: str
    space: str
    left: str
    right: str


@dataclass
class CohomLedger:
    spaces: dict = field(default_factory=dict)  # name -> dim
    known: dict = field(default_factory=dict)  # sheaf -> (space, dims list)
    unknown: dict = field(default_factory=dict)  # sheaf -> space
    sequences: list = field(default_factory=list)
    facts: list = field(default_factory=list)
    dualities: list = field(default_factory=list)
    targets: list = field(default_factory=list)

    def space_of(self, sheaf: str) -> str:
        if sheaf in self.known:
            return self.known[sheaf][0]
        if sheaf in self.unknown:
            return self.unknown[sheaf]
        raise LedgerError(f"undeclared sheaf {sheaf!r}")

    def dim_of(self, sheaf: str) -> int:
        return self.spaces[self.space_of(sheaf)]

    def validate(self):
        names = set()
        for s in self.sequences:
            if s.name in names:
                raise LedgerError(f"duplicate sequence {s.name!r}")
            names.add(s.name)
            if s.space not in self.spaces:
                raise LedgerError(f"sequence {s.name!r} on undeclared space {s.space!r}")
            for t in s.terms:
                self.space_of(t.sheaf)
        for f in self.facts:
            if f.ses not in names:
                raise LedgerError(f"fact {f.name!r} refers to unknown sequence {f.ses!r}")
            if f.arrow not in ("AB", "BC", "CA"):
                raise LedgerError(f"fact {f.name!r}: arrow must be AB, BC or CA")
        for d in self.dualities:
            self.space_of(d.left)
            self.space_of(d.right)
        for t in self.targets:
            self.space_of(t)


def _parse_term(tok: str) -> Term:
    if "*" in tok:
        k, _, name = tok.partition("*")
        return Term(int(k), name)
    return Term(1, tok)


def parse_ledger(text: str) -> CohomLedger:
    """Parse the line-oriented ledger format (see ``data/cogr.ledger``)."""
    led = CohomLedger()
    for lineno, raw in enumerate(text.splitlines(), 1):
        lexer = shlex.shlex(raw, posix=True)
        lexer.whitespace_split = True
        lexer.commenters = "#"
        try:
            tok = list(lexer)
        except ValueError as exc:
            raise LedgerError(f"line {lineno}: {exc}") from None
        if not tok:
            continue
        kw = tok[0]
        try:
            if kw == "space":
                led.spaces[tok[1]] = int(tok[2])
            elif kw == "sheaf":
                # sheaf NAME on SPACE = omega P T
                name, space = tok[1], tok[3]
                if tok[2] != "on" or tok[4] != "=" or tok[5] != "omega":
                    raise LedgerError("expected 'sheaf NAME on SPACE = omega P T'")
                led.known[name] = (space, omega_cohomology(int(tok[6]), int(tok[7])))
            elif kw == "unknown":
                if tok[2] != "on":
                    raise LedgerError("expected 'unknown NAME on SPACE'")
                led.unknown[tok[1]] = tok[3]
            elif kw == "ses":
                # ses NAME on SPACE : A -> B -> C
                if tok[2] != "on" or tok[4] != ":" or tok[6] != "->" or tok[8] != "->" or len(tok) != 10:
                    raise LedgerError("expected 'ses NAME on SPACE : A -> B -> C'")
                terms = (_parse_term(tok[5]), _parse_term(tok[7]), _parse_term(tok[9]))
                led.sequences.append(ShortExact(tok[1], tok[3], terms))
            elif kw in ("rank", "natural"):
                # rank NAME : SES Q ARROW = VALUE ["provenance"]
                if tok[2] != ":" or tok[6] != "=":
                    raise LedgerError(f"expected '{kw} NAME : SES Q ARROW = VALUE'")
                val = tok[7]
                value: int | str = val if val.startswith("@") else int(val)
                prov = tok[8] if len(tok) > 8 else ""
                led.facts.append(RankFact(tok[1], kw, tok[3], int(tok[4]), tok[5], value, prov))
            elif kw == "dual":
                # dual NAME on SPACE : X ~ Y
                if tok[2] != "on" or tok[4] != ":" or tok[6] != "~":
                    raise LedgerError("expected 'dual NAME on SPACE : X ~ Y'")
                led.dualities.append(Duality(tok[1], tok[3], tok[5], tok[7]))
            elif kw == "target":
                led.targets.extend(tok[1:])
            else:
                raise LedgerError(f"unknown keyword {kw!r}")
        except (IndexError, ValueError) as exc:
            if isinstance(exc, LedgerError):
                raise LedgerError(f"line {lineno}: {exc}") from None
            raise LedgerError(f"line {lineno}: malformed statement {raw.strip()!r}") from None
    led.validate()
    return led


DATA_DIR = Path(__file__).resolve().parent / "data"


def load_ledger(name_or_path: str = "cogr") -> CohomLedger:
    path = Path(name_or_path)
    if not path.exists():
        path = DATA_DIR / f"{name_or_path}.ledger"
    return parse_ledger(path.read_text(encoding="utf-8"))


@dataclass(frozen=True)
class Solved:
    value: int
    facts: frozenset  # registered rank/natural facts consumed
    via: frozenset  # sequences and dualities used


@dataclass
class LedgerSolution:
    values: dict  # (sheaf, q) -> Solved
    unresolved: list
    fact_values: dict
    fact_categories: dict

    def dims(self, sheaf: str, top: int) -> list[int]:
        return [self.values[(sheaf, q)].value if (sheaf, q) in self.values else None for q in range(top + 1)]

    def consumed(self, sheaves: Iterable[str]) -> frozenset:
        out: set = set()
        for (name, _), s in self.values.items():
            if name in sheaves:
                out |= s.facts
        return frozenset(out)


_EMPTY = frozenset()


def solve_ledger(ledger: CohomLedger, facts: Mapping[str, int] | None = None,
                 strict: bool = True) -> LedgerSolution:
    """Propagate exactness, rank facts and dualities to a fixed point."""
    facts = dict(facts or {})
    ledger.validate()
    fact_values: dict = {}
    categories: dict = {}
    for f in ledger.facts:
        if isinstance(f.value, str):
            key = f.value[1:]
            if key not in facts:
                raise LedgerError(f"fact {f.name!r} needs the value of {key!r}")
            fact_values[f.name] = int(facts[key])
        else:
            fact_values[f.name] = f.value
        categories[f.name] = f.category

    values: dict = {}
    for sheaf, (space, dims) in ledger.known.items():
        for q, d in enumerate(dims):
            if q <= ledger.spaces[space]:
                values[(sheaf, q)] = Solved(d, _EMPTY, _EMPTY)

    def lookup(sheaf: str, q: int):
        if q < 0 or q > ledger.dim_of(sheaf):
            return Solved(0, _EMPTY, _EMPTY)
        return values.get((sheaf, q))

    seqs = sorted(ledger.sequences, key=lambda s: s.name)
    duals = sorted(ledger.dualities, key=lambda d: d.name)
    bysplit: dict = {}
    for f in sorted(ledger.facts, key=lambda f: f.name):
        bysplit[(f.ses, f.q, f.arrow)] = f

    def les_positions(s: ShortExact):
        top = ledger.spaces[s.space]
        pos = []
        for q in range(top + 1):
            for slot, arrow in zip(range(3), ("AB", "BC", "CA")):
                pos.append((s.terms[slot], q, arrow))
        return pos

    while True:
        candidates: dict = {}

        def offer(key, value, fset, via, where):
            if value < 0:
                raise LedgerContradiction(where, f"negative dimension {value} for H^{key[1]}({key[0]})")
            best = candidates.get(key)
            cand = (len(fset), tuple(sorted(fset)), tuple(sorted(via)), value, fset, via, where)
            if best is None or cand[:3] < best[:3]:
                if best is not None and best[3] != value:
                    raise LedgerContradiction(where, f"H^{key[1]}({key[0]}) = {value} vs {best[3]} from {best[6]}")
                candidates[key] = cand
            elif best[3] != value:
                raise LedgerContradiction(where, f"H^{key[1]}({key[0]}) = {value} vs {best[3]} from {best[6]}")

        for s in seqs:
            pos = les_positions(s)
            # build segments; an item is (coef, key, Solved|None) or a bare known int
            segments = []
            current: list = []
            seg_facts: set = set()
            for i, (term, q, arrow) in enumerate(pos):
                got = lookup(term.sheaf, q)
                item = (term.coef, (term.sheaf, q), got)
                if got is not None and got.value == 0:
                    current.append(item)
                    segments.append((current, frozenset(seg_facts), q))
                    current, seg_facts = [item], set()
                    continue
                current.append(item)
                fact = bysplit.get((s.name, q, arrow))
                if fact is not None and i + 1 < len(pos):
                    r = fact_values[fact.name]
                    img = (1, None, Solved(r, frozenset([fact.name]), _EMPTY))
                    current.append(img)
                    segments.append((current, frozenset(seg_facts | {fact.name}), q))
                    current, seg_facts = [img], {fact.name}
            segments.append((current, frozenset(seg_facts), ledger.spaces[s.space]))
            for seg, bound_facts, q in segments:
                total = 0
                unknown = []
                used = set(bound_facts)
                via = {s.name}
                for k, (coef, key, got) in enumerate(seg):
                    sign = 1 if k % 2 == 0 else -1
                    if got is None:
                        unknown.append((sign, coef, key))
                    else:
                        total += sign * coef * got.value
                        used |= got.facts
                        via |= got.via
                where = f"{s.name} near H^{q}"
                if not unknown:
                    if total != 0:
                        raise LedgerContradiction(where, f"alternating sum {total} != 0")
                    continue
                keys = {u[2] for u in unknown}
                if len(keys) != 1:
                    continue
                coef = sum(sign * c for sign, c, _ in unknown)
                if coef == 0 or (-total) % coef != 0:
                    raise LedgerContradiction(where, "non-integral solution")
                offer(unknown[0][2], -total // coef, frozenset(used), frozenset(via), where)

        for d in duals:
            top = ledger.spaces[d.space]
            for q in range(top + 1):
                a, b = lookup(d.left, q), lookup(d.right, top - q)
                if a is not None and b is None:
                    offer((d.right, top - q), a.value, a.facts, a.via | {d.name}, d.name)
                elif b is not None and a is None:
                    offer((d.left, q), b.value, b.facts, b.via | {d.name}, d.name)
                elif a is not None and b is not None and a.value != b.value:
                    raise LedgerContradiction(d.name, f"H^{q}({d.left}) = {a.value} but dual side is {b.value}")

        new = {k: c for k, c in candidates.items() if k not in values}
        if not new:
            break
        for key, c in sorted(new.items()):
            values[key] = Solved(c[3], c[4], c[5])

    for f in ledger.facts:
        s = next(x for x in ledger.sequences if x.name == f.ses)
        slot = {"AB": (0, 1, 0), "BC": (1, 2, 0), "CA": (2, 0, 1)}[f.arrow]
        src, dst = s.terms[slot[0]], s.terms[slot[1]]
        a = lookup(src.sheaf, f.q)
        b = lookup(dst.sheaf, f.q + slot[2])
        r = fact_values[f.name]
        for side, term in ((a, src), (b, dst)):
            if side is not None and r > side.value * term.coef:
                raise LedgerContradiction(f.ses, f"rank {r} of fact {f.name!r} exceeds a term of dimension "
                                          f"{side.value * term.coef}")

    unresolved = []
    for sheaf, space in sorted(ledger.unknown.items()):
        for q in range(ledger.spaces[space] + 1):
            if (sheaf, q) not in values:
                unresolved.append((sheaf, q))
    if strict:
        missing = [u for u in unresolved if u[0] in ledger.targets]
        if missing:
            raise LedgerError(f"targets left unresolved: {missing}")
    return LedgerSolution(values, unresolved, fact_values, categories)
