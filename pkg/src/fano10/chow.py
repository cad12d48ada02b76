"""Intersection-theory ledgers: Riemann–Roch, blow-up divisor classes, dimension counts."""

from __future__ import annotations

import shlex
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping

DATA_DIR = Path(__file__).resolve().parent / "data"


class ModelInconsistency(ValueError):
    """Riemann–Roch produced a non-integer, or model data contradict each other."""


class NonConfluent(ValueError):
    """Rewrite rules are cyclic or assign two rules to one class."""


class CountMismatch(ValueError):
    def __init__(self, producer: str, expected, got):
        super().__init__(f"{producer}: expected {expected}, got {got}")
        self.producer = producer


def _tokens(line: str) -> list[str]:
    lexer = shlex.shlex(line, posix=True)
    lexer.whitespace_split = True
    lexer.commenters = "#"
    return list(lexer)


# ---------------------------------------------------------------------------
# varieties and Riemann–Roch


@dataclass(frozen=True)
class VarietyModel:
    """Picard-rank-one model: classes are multiples of H and of the line/point class.

    ``c1`` is c₁(T) as a multiple of H (so K = -c1·H); ``c2`` is the derived
    second Chern number: c₂·H on a threefold, ∫c₂ on a surface.
    """

    name: str
    dim: int
    degree: int
    c1: int
    chi_O: int
    c2: int | None = None

    @property
    def canonical(self) -> int:
        return -self.c1


def derive_c2(dim: int, degree: int, c1: int, chi_O: int) -> int | None:
    if dim == 3:
        # χ(O) = c₁c₂/24 and c₁c₂ = c1 * (c₂·H)
        if c1 == 0:
            raise ModelInconsistency("threefold with c1 = 0 fixes no c2")
        val = Fraction(24 * chi_O, c1)
    elif dim == 2:
        # Noether: χ(O) = (c₁² + c₂)/12
        val = Fraction(12 * chi_O - c1 * c1 * degree)
    elif dim == 1:
        if c1 * degree != 2 * chi_O:
            raise ModelInconsistency("curve with c1 inconsistent with χ(O)")
        return None
    else:
        return None
    if val.denominator != 1:
        raise ModelInconsistency(f"derived c2 = {val} is not an integer")
    return int(val)


def make_model(name: str, dim: int, degree: int, c1: int, chi_O: int) -> VarietyModel:
    return VarietyModel(name, dim, degree, c1, chi_O, derive_c2(dim, degree, c1, chi_O))


def load_models(path: str | Path | None = None) -> dict[str, VarietyModel]:
    text = Path(path or DATA_DIR / "varieties.model").read_text(encoding="utf-8")
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        tok = _tokens(line)
        if not tok:
            continue
        if tok[0] != "model" or len(tok) != 10:
            raise ValueError(f"line {lineno}: expected 'model NAME dim D degree N c1 M chiO X'")
        kv = dict(zip(tok[2::2], tok[3::2]))
        out[tok[1]] = make_model(tok[1], int(kv["dim"]), int(kv["degree"]), int(kv["c1"]), int(kv["chiO"]))
    return out


MODELS = load_models()
X10 = MODELS["X10"]
K3 = MODELS["K3_10"]
P1 = MODELS["P1"]
W_MODEL = MODELS["W"]


@dataclass(frozen=True)
class SheafChernData:
    """c1 in units of H, c2 in units of the line class (or a number on a surface), c3 a number."""

    rank: int
    c1: int = 0
    c2: int = 0
    c3: int = 0
    support_dim: int | None = None


def hrr_euler_exact(variety: VarietyModel, sheaf: SheafChernData) -> Fraction:
    """∫ ch(E)·td(X) without the integrality check."""
    r, a, b, c = sheaf.rank, Fraction(sheaf.c1), Fraction(sheaf.c2), Fraction(sheaf.c3)
    d, m = variety.degree, variety.c1
    if variety.dim == 1:
        # deg ch₁ + r·deg td₁ with td₁ = c₁(T)/2
        return a * d + r * Fraction(m * d, 2)
    if variety.dim == 2:
        c2x = variety.c2
        return (a * a * d - 2 * b) / 2 + a * m * d / 2 + r * Fraction(m * m * d + c2x, 12)
    if variety.dim == 3:
        c2h = variety.c2  # c₂(T)·H, the line class has H·ℓ = 1
        ch1_td2 = a * (m * m * d + c2h) / 12
        ch2_td1 = m * (a * a * d - 2 * b) / 4
        ch3 = (a ** 3 * d - 3 * a * b + 3 * c) / 6
        td3 = Fraction(m * c2h, 24)
        return r * td3 + ch1_td2 + ch2_td1 + ch3
    raise ValueError(f"Riemann–Roch is implemented for dimensions 1..3, not {variety.dim} ({variety.name})")


def hrr_euler(variety: VarietyModel, sheaf: SheafChernData) -> int:
    val = hrr_euler_exact(variety, sheaf)
    if val.denominator != 1:
        raise ModelInconsistency(f"χ = {val} on {variety.name} for {sheaf}")
    return int(val)


def end_bundle(rank: int, c1: int, c2: int, variety: VarietyModel = X10) -> SheafChernData:
    """Chern data of End(E) = E ⊗ E^∨ for a bundle E of the given rank."""
    # c₁(End) = 0, c₂(End) = 2r·c₂ − (r−1)·c₁², odd classes vanish
    c1sq = c1 * c1 * variety.degree
    return SheafChernData(rank * rank, 0, 2 * rank * c2 - (rank - 1) * c1sq, 0)


def torsion_euler(k: int) -> int:
    """χ(O_ℓ(−1) ⊗ O_X(k)) for a line ℓ (H·ℓ = 1), i.e. χ(O_{P¹}(k−1))."""
    return hrr_euler(P1, SheafChernData(1, k - 1))


def x10_integrality_lattice(c1: int, c2: int, c3: int) -> bool:
    """Chern data on X10 for which Riemann–Roch is integral: c3 ≡ c2(c1 + 1) mod 2."""
    return (c3 - c2 * (c1 + 1)) % 2 == 0


# ---------------------------------------------------------------------------
# divisor ledgers


def _parse_expr(tokens: list[str]) -> dict[str, int]:
    out: dict[str, int] = {}
    pending_sign = 1
    for tok in tokens:
        if tok in ("+", "-"):
            pending_sign = 1 if tok == "+" else -1
            continue
        coef_txt, star, name = tok.partition("*")
        if not star:
            name, coef = tok.lstrip("+-"), (-1 if tok.startswith("-") else 1)
        else:
            coef = int(coef_txt) if coef_txt not in ("", "+", "-") else int(coef_txt + "1")
        coef *= pending_sign
        pending_sign = 1
        out[name] = out.get(name, 0) + coef
    return {k: v for k, v in out.items() if v}


def format_class(cls: Mapping[str, int]) -> str:
    parts = []
    for name, c in cls.items():
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        parts.append(f"{sign}{'' if mag == 1 else mag}{name}")
    s = "".join(parts) or "0"
    return s[1:] if s.startswith("+") else s


@dataclass
class DivisorLedger:
    name: str
    generators: list = field(default_factory=list)
    rules: dict = field(default_factory=dict)  # generator -> {generator: coef}
    classes: dict = field(default_factory=dict)
    curves: dict = field(default_factory=dict)  # curve -> {generator: intersection}

    def check_confluence(self):
        state: dict = {}

        def visit(g, path):
            if state.get(g) == 2:
                return
            if state.get(g) == 1:
                raise NonConfluent(f"{self.name}: cyclic rules through {' -> '.join(path + [g])}")
            state[g] = 1
            for h in self.rules.get(g, {}):
                visit(h, path + [g])
            state[g] = 2

        for g in self.generators:
            visit(g, [])

    def basis(self) -> list[str]:
        return [g for g in self.generators if g not in self.rules]

    def normal_form(self, cls: Mapping[str, int]) -> dict[str, int]:
        self.check_confluence()
        acc: dict[str, int] = {}
        stack = [(g, c) for g, c in cls.items()]
        while stack:
            g, c = stack.pop()
            if g not in self.generators:
                raise KeyError(f"{self.name}: unknown class {g!r}")
            if g in self.rules:
                stack.extend((h, c * k) for h, k in self.rules[g].items())
            else:
                acc[g] = acc.get(g, 0) + c
        return {g: acc[g] for g in self.basis() if acc.get(g)}

    def pairing(self, cls: Mapping[str, int], curve: str) -> int:
        """Intersection of a class with a registered test curve."""
        values = self._curve_on_basis(curve)
        nf = self.normal_form(cls)
        total = sum(Fraction(c) * values[g] for g, c in nf.items())
        if total.denominator != 1:
            raise ModelInconsistency(f"non-integral intersection on {curve}")
        return int(total)

    def _curve_on_basis(self, curve: str) -> dict[str, Fraction]:
        # registered numbers may be given on any generators; solve for the basis values
        data = self.curves[curve]
        basis = self.basis()
        rows, rhs = [], []
        for g, v in data.items():
            nf = self.normal_form({g: 1})
            rows.append([Fraction(nf.get(b, 0)) for b in basis])
            rhs.append(Fraction(v))
        from .scalars import QQ, Matrix

        m = Matrix(QQ, rows, len(basis))
        sol = m.solve(rhs)
        if sol is None:
            raise ModelInconsistency(f"{self.name}: intersection data on {curve} contradict the rules")
        if m.rank() < len(basis):
            used = {b for b in basis if any(r[basis.index(b)] != 0 for r in rows)}
            sol = tuple(s if b in used else Fraction(0) for s, b in zip(sol, basis))
        return dict(zip(basis, sol))


def parse_divisor_ledgers(text: str) -> dict[str, DivisorLedger]:
    out: dict[str, DivisorLedger] = {}
    cur: DivisorLedger | None = None
    for lineno, line in enumerate(text.splitlines(), 1):
        tok = _tokens(line)
        if not tok:
            continue
        kw = tok[0]
        if kw == "ledger":
            cur = DivisorLedger(tok[1])
            out[cur.name] = cur
            continue
        if cur is None:
            raise ValueError(f"line {lineno}: statement before any 'ledger'")
        if kw == "generators":
            cur.generators.extend(tok[1:])
        elif kw == "rule":
            if tok[2] != "=":
                raise ValueError(f"line {lineno}: expected 'rule G = EXPR'")
            if tok[1] in cur.rules:
                raise NonConfluent(f"{cur.name}: two rules for {tok[1]}")
            cur.rules[tok[1]] = _parse_expr(tok[3:])
        elif kw == "class":
            if tok[2] != "=":
                raise ValueError(f"line {lineno}: expected 'class NAME = EXPR'")
            cur.classes[tok[1]] = _parse_expr(tok[3:])
        elif kw == "curve":
            if tok[2] != ":":
                raise ValueError(f"line {lineno}: expected 'curve NAME : G=v ...'")
            cur.curves[tok[1]] = {k: int(v) for k, _, v in (t.partition("=") for t in tok[3:])}
        else:
            raise ValueError(f"line {lineno}: unknown keyword {kw!r}")
    for led in out.values():
        unknown = {g for r in led.rules.values() for g in r} | set(led.rules)
        unknown |= {g for c in led.classes.values() for g in c}
        unknown |= {g for c in led.curves.values() for g in c}
        missing = unknown - set(led.generators)
        if missing:
            raise ValueError(f"{led.name}: undeclared classes {sorted(missing)}")
        led.check_confluence()
    return out


def load_divisor_ledgers(path: str | Path | None = None) -> dict[str, DivisorLedger]:
    return parse_divisor_ledgers(Path(path or DATA_DIR / "transforms.ledger").read_text(encoding="utf-8"))


@dataclass(frozen=True)
class TransformResult:
    kind: str
    image: dict
    coefficients: tuple[int, int]  # (a, b) in a·ε*K_X + b·E
    degrees: dict
    display: str


def transform_ledger(kind: str, ledgers: Mapping[str, DivisorLedger] | None = None) -> TransformResult:
    """Normalize χ*ε'*H' for the conic or line transformation and pair it with test curves."""
    if kind not in ("conic", "line"):
        raise ValueError("kind must be 'conic' or 'line'")
    led = (ledgers or load_divisor_ledgers())[kind]
    image = led.normal_form(led.classes["image"])
    coeffs = (image.get("epsK", 0), image.get("E", 0))
    degrees = {curve: led.pairing(led.classes["image"], curve) for curve in led.curves}
    display = format_class({"ε*K_X": coeffs[0], "E": coeffs[1]})
    return TransformResult(kind, image, coeffs, degrees, display)


def sigma_system_degree(ledgers: Mapping[str, DivisorLedger] | None = None) -> int:
    led = (ledgers or load_divisor_ledgers())["sigma_system"]
    return led.pairing(led.classes["system"], "sigma_conic")


# ---------------------------------------------------------------------------
# del Pezzo surface of degree 5


@dataclass(frozen=True)
class PicLattice:
    """Z h ⊕ Z E1 ⊕ ... ⊕ Z E4 with form diag(1, -1, -1, -1, -1)."""

    form: tuple = (1, -1, -1, -1, -1)

    def dot(self, a, b) -> int:
        return sum(f * x * y for f, x, y in zip(self.form, a, b))

    @property
    def anticanonical(self) -> tuple:
        return (3, -1, -1, -1, -1)

    def degree(self, c) -> int:
        return self.dot(c, self.anticanonical)

    def genus(self, c) -> Fraction:
        # adjunction: 2g − 2 = C² + K·C
        return Fraction(self.dot(c, c) - self.degree(c) + 2, 2)


def _lin(*terms):
    out = [0] * 5
    for k, v in terms:
        out = [a + k * b for a, b in zip(out, v)]
    return tuple(out)


def delpezzo_residuals() -> dict:
    lat = PicLattice()
    mK = lat.anticanonical
    h_minus_e1 = (1, -1, 0, 0, 0)
    conic_class = (2, -1, -1, -1, -1)
    first = _lin((2, mK), (-2, h_minus_e1))
    second = _lin((2, mK), (-2, conic_class))
    return {
        "residual_lines": first,
        "residual_conics": second,
        "degree_lines": lat.degree(first),
        "degree_conics": lat.degree(second),
        "genus_lines": lat.genus(first),
        "genus_conics": lat.genus(second),
        "pencil_self_intersections": (lat.dot(h_minus_e1, h_minus_e1), lat.dot(conic_class, conic_class)),
    }


def format_lattice_class(c) -> str:
    names = ["h", "E1", "E2", "E3", "E4"]
    return format_class(dict(zip(names, c)))


def sextic_image_degree(degree: int = 6, meeting: int = 4) -> int:
    """Degree of the image of a curve of the given degree meeting c in `meeting` points under |3H − 4c|."""
    return 3 * degree - 4 * meeting


# ---------------------------------------------------------------------------
# dimension counts


def dimension_counts(h0_IW2: int, aut_dim: int, fixed_rank: int = 18, sym2_dim: int = 36,
                     period_kernel: int = 2) -> dict:
    """Parameter bookkeeping for quadric sections of W."""
    checks = [("wx_geometry.aut_suite(d) h0(I_W(2))", 5, h0_IW2),
              ("wx_geometry.aut_suite(a) dim Aut(W)", 8, aut_dim),
              ("wx_geometry.aut_suite(c) rank(Id-Phi)", 18, fixed_rank)]
    for producer, exp, got in checks:
        if exp != got:
            raise CountMismatch(producer, exp, got)
    quadrics = sym2_dim - h0_IW2 - 1
    moduli = quadrics - aut_dim
    image = moduli - period_kernel
    bound = image + h0_IW2
    return {
        "linear_system": quadrics,
        "moduli": moduli,
        "period_image": image,
        "quadric_bound": bound,
        "quadric_bound_ok": bound < sym2_dim - 7,
        "fixed_excess": fixed_rank - h0_IW2,
        "fixed_excess_ok": fixed_rank - h0_IW2 > 7,
    }
