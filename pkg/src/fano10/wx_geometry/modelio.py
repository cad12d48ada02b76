"""Plain-text dump and load of X models (for golden fixtures).

Format, one record per line::

    fano10-xmodel 1
    field fp:97
    seed 0
    u2_change 1 0 0 1
    omega
    <8 rows of 8 entries>
    conics <n>
    plane <10 entries> ; <10 entries> ; <10 entries>
    form <9 entries>
    v4 <5 entries>
    end

Entries are integers or fractions p/q (reduced residues over prime fields).
"""

from __future__ import annotations

from fractions import Fraction
from typing import TextIO

from ..scalars import FieldDescriptor, Matrix
from .conics import conic_from_plane
from .core import build_w_model
from .threefold import XModel

FORMAT = "fano10-xmodel"
VERSION = 1


class ModelFormatError(ValueError):
    pass


def _entry(F: FieldDescriptor, x) -> str:
    if F.is_prime:
        return str(int(x))
    if F.kind == "rational":
        return str(Fraction(x))
    raise ModelFormatError("only prime fields and the rationals are serializable")


def _parse(F: FieldDescriptor, tok: str):
    try:
        return F(Fraction(tok))
    except (ValueError, ZeroDivisionError) as exc:
        raise ModelFormatError(f"bad entry {tok!r}") from exc


def _row(F, v) -> str:
    return " ".join(_entry(F, x) for x in v)


def dumps(X: XModel) -> str:
    F = X.field
    g = X.w.std.basis_change
    u2 = [g[i, j] for i in range(2) for j in range(2)]
    lines = [f"{FORMAT} {VERSION}", f"field {F}", f"seed {X.seed}", "u2_change " + _row(F, u2), "omega"]
    lines += [_row(F, r) for r in X.omega.rows]
    lines.append(f"conics {len(X.prescribed)}")
    for c in X.prescribed:
        lines.append("plane " + " ; ".join(_row(F, v) for v in c.plane))
        lines.append("form " + _row(F, [x for r in c.form.rows for x in r]))
        lines.append("v4 " + ("none" if c.v4 is None else _row(F, c.v4)))
    lines.append("end")
    return "\n".join(lines) + "\n"


def dump(X: XModel, fh: TextIO) -> None:
    fh.write(dumps(X))


def loads(text: str) -> XModel:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    it = iter(lines)

    def take(key: str) -> str:
        try:
            ln = next(it)
        except StopIteration:
            raise ModelFormatError(f"missing {key!r} record") from None
        head, _, rest = ln.partition(" ")
        if head != key:
            raise ModelFormatError(f"expected {key!r}, got {head!r}")
        return rest

    version = take(FORMAT)
    if version.strip() != str(VERSION):
        raise ModelFormatError(f"unsupported model version {version!r}")
    F = FieldDescriptor.parse(take("field"))
    seed_txt = take("seed").strip()
    seed: object = int(seed_txt) if seed_txt.lstrip("-").isdigit() else seed_txt
    u2 = [_parse(F, t) for t in take("u2_change").split()]
    if len(u2) != 4:
        raise ModelFormatError("u2_change needs four entries")
    take("omega")
    rows = []
    for _ in range(8):
        r = [_parse(F, t) for t in next(it).split()]
        if len(r) != 8:
            raise ModelFormatError("omega rows need eight entries")
        rows.append(r)
    omega = Matrix(F, rows)
    if omega != omega.T:
        raise ModelFormatError("omega is not symmetric")
    n = int(take("conics"))
    conics = []
    for _ in range(n):
        plane = [tuple(_parse(F, t) for t in part.split()) for part in take("plane").split(";")]
        form_e = [_parse(F, t) for t in take("form").split()]
        v4_txt = take("v4").strip()
        v4 = None if v4_txt == "none" else tuple(_parse(F, t) for t in v4_txt.split())
        form = Matrix(F, [form_e[0:3], form_e[3:6], form_e[6:9]])
        conics.append(conic_from_plane(plane, form, tag="tau", v4=v4))
    take("end")
    g = Matrix(F, [u2[:2], u2[2:]])
    W = build_w_model(F, None if g == Matrix.identity(F, 2) else g)
    X = XModel(W, omega, W.lift.T @ omega @ W.lift, seed, tuple(conics))
    bad = [k for k, c in enumerate(conics) if not X.contains_conic(c)]
    if bad:
        raise ModelFormatError(f"prescribed conics {bad} are not on the loaded X")
    return X


def load(fh: TextIO) -> XModel:
    return loads(fh.read())
