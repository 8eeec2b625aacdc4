"""
Modul pro twisted polynomiální okruh Λ = F[t; tα = α^p t] a diagonalizaci matic nad Λ.

Obsahuje:
    - Třídu `OrePoly` (koeficienty vlevo od mocnin t: f = Σ c_i t^i).
    - Funkce `ore_mul` a `ore_divide` (levé i pravé dělení se zbytkem).
    - Třídy `ElementaryOp` a `OreMatrix` a funkce `diagonalize`, `apply_op`, `replay`.

Řádkové operace násobí zleva, sloupcové zprava. Tuto konvenci přebírá
modul presentation při překladu operací na transformace generátorů.
"""
import json
import logging
import re
from dataclasses import dataclass

from errors import DivisionByZero, FieldMismatch, ParseError
from field.field import FieldElement, parse_field

algebra_logger = logging.getLogger("algebra_logger")

_TERM_RE = re.compile(r"^(\[[^\]]*\]|-?\d+)?\s*\*?\s*(t(?:\s*\^\s*(\d+))?)?$")


@dataclass(frozen=True)
class OrePoly:
    """
    Prvek Λ v normalizovaném tvaru (nejvyšší koeficient nenulový, nula = prázdná n-tice).

    Atributy:
        field (FiniteField): těleso koeficientů.
        coeffs (tuple[int]): kódy koeficientů, index i = koeficient u t^i.
    """

    field: object
    coeffs: tuple

    def __post_init__(self):
        coeffs = list(self.coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def constant(cls, field, code):
        return cls(field, (code,))

    @classmethod
    def monomial(cls, field, code, degree):
        return cls(field, (0,) * degree + (code,))

    @classmethod
    def from_elements(cls, field, elements):
        return cls(field, tuple(field.element(e).code for e in elements))

    @property
    def degree(self):
        """Stupeň; nulový polynom má stupeň None (tj. −∞)."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self):
        return not self.coeffs

    def elements(self):
        return [FieldElement(self.field, c) for c in self.coeffs]

    def _check(self, other):
        if self.field != other.field:
            raise FieldMismatch(
                f"Polynomy nad {self.field.literal} a {other.field.literal} nelze kombinovat."
            )

    def __add__(self, other):
        self._check(other)
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return OrePoly(F, tuple(F.add(x, y) for x, y in zip(a, b)))

    def __neg__(self):
        return OrePoly(self.field, tuple(self.field.neg(c) for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return ore_mul(self, other)

    def scale_left(self, code):
        """c·f (konstanta zleva nemění koeficienty jinak než násobením)."""
        F = self.field
        return OrePoly(F, tuple(F.mul(code, c) for c in self.coeffs))

    def scale_right(self, code):
        """f·c = Σ c_i c^(p^i) t^i."""
        F = self.field
        return OrePoly(F, tuple(F.mul(c, F.frob(code, i)) for i, c in enumerate(self.coeffs)))

    def __str__(self):
        return format_orepoly(self)


def ore_mul(f, g):
    """
    Součin v Λ: (a t^i)(b t^j) = a b^(p^i) t^(i+j).

    Výjimky:
        FieldMismatch: polynomy nad různými tělesy.
    """
    f._check(g)
    F = f.field
    if f.is_zero() or g.is_zero():
        return OrePoly.zero(F)
    out = [0] * (len(f.coeffs) + len(g.coeffs) - 1)
    for i, a in enumerate(f.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(g.coeffs):
            if b == 0:
                continue
            out[i + j] = F.add(out[i + j], F.mul(a, F.frob(b, i)))
    return OrePoly(F, tuple(out))


def ore_divide(f, g, side):
    """
    Dělení se zbytkem v Λ.

    Parametry:
        f, g (OrePoly): dělenec a nenulový dělitel.
        side (str): 'right' vrací f = q·g + r, 'left' vrací f = g·q + r.

    Vrací:
        tuple: (q, r) s deg r < deg g.

    Výjimky:
        DivisionByZero: g je nulový polynom.

    Levé dělení potřebuje inverzní Frobenius vedoucího koeficientu,
    tj. perfektnost tělesa.
    """
    f._check(g)
    if g.is_zero():
        raise DivisionByZero("Dělení nulovým polynomem v Λ.")
    if side not in ("left", "right"):
        raise ValueError(f"Neznámá strana dělení '{side}'. Použijte 'left' nebo 'right'.")
    F = f.field
    m = g.degree
    inv_lead = F.inv(g.lead)
    quotient = {}
    r = f
    while not r.is_zero() and r.degree >= m:
        s = r.degree - m
        if side == "right":
            # c t^s · g_m t^m = c g_m^(p^s) t^(s+m)
            c = F.div(r.lead, F.frob(g.lead, s))
            term = OrePoly.monomial(F, c, s)
            r = r - ore_mul(term, g)
        else:
            # g_m t^m · c t^s = g_m c^(p^m) t^(m+s)
            c = F.frob(F.mul(r.lead, inv_lead), -m)
            term = OrePoly.monomial(F, c, s)
            r = r - ore_mul(g, term)
        quotient[s] = F.add(quotient.get(s, 0), c)
    top = max(quotient) if quotient else -1
    q = OrePoly(F, tuple(quotient.get(i, 0) for i in range(top + 1)))
    return q, r


def format_orepoly(f):
    """Textový tvar `c0 + c1*t + c2*t^2` s literály prvků tělesa."""
    if f.is_zero():
        return "0"
    terms = []
    for i, c in enumerate(f.coeffs):
        if c == 0:
            continue
        lit = f.field.format_code(c)
        if i == 0:
            terms.append(lit)
        elif i == 1:
            terms.append(f"{lit}*t")
        else:
            terms.append(f"{lit}*t^{i}")
    return " + ".join(terms)


def parse_orepoly(text, field):
    """
    Převede textový polynom na OrePoly.

    Přijímá termy `[c0,c1]`, `[1]*t`, `t^3`, `2*t` spojené znaménkem `+`.

    Výjimky:
        ParseError: term neodpovídá formátu.
    """
    result = OrePoly.zero(field)
    text = text.strip()
    if text in ("", "0"):
        return result
    offset = 0
    for raw in text.split("+"):
        term = raw.strip()
        match = _TERM_RE.match(term)
        if not term or not match or not (match.group(1) or match.group(2)):
            raise ParseError(f"Neplatný term polynomu '{term}'.", offset)
        coeff = field.parse_element(match.group(1)) if match.group(1) else 1
        if match.group(2):
            degree = int(match.group(3)) if match.group(3) else 1
        else:
            degree = 0
        result = result + OrePoly.monomial(field, coeff, degree)
        offset += len(raw) + 1
    return result


@dataclass(frozen=True)
class ElementaryOp:
    """
    Záznam elementární operace nad maticí v Λ.

    Atributy:
        side (str): 'row' nebo 'col'.
        kind (str): 'add_multiple', 'swap' nebo 'scale'.
        target (int): měněný řádek/sloupec.
        source (int | None): zdrojový řádek/sloupec pro add_multiple a swap.
        multiplier (OrePoly | int | None): násobitel (OrePoly) nebo nenulová konstanta (kód) pro scale.
        mult_side (str): 'left' pro řádky, 'right' pro sloupce.
    """

    side: str
    kind: str
    target: int
    source: int = None
    multiplier: object = None
    mult_side: str = "left"

    def inverse(self, field):
        if self.kind == "swap":
            return self
        if self.kind == "add_multiple":
            return ElementaryOp(self.side, self.kind, self.target, self.source,
                                -self.multiplier, self.mult_side)
        return ElementaryOp(self.side, self.kind, self.target, None,
                            field.inv(self.multiplier), self.mult_side)

    def to_json(self, field):
        if isinstance(self.multiplier, OrePoly):
            multiplier = format_orepoly(self.multiplier)
        elif self.multiplier is None:
            multiplier = None
        else:
            multiplier = field.format_code(self.multiplier)
        return {
            "side": self.side,
            "kind": self.kind,
            "target": self.target,
            "source": self.source,
            "multiplier": multiplier,
            "mult_side": self.mult_side,
        }


class OreMatrix:
    """
    Matice m×n nad Λ se záznamem provedených elementárních operací.

    Parametry:
        field (FiniteField): těleso koeficientů.
        entries (list[list[OrePoly]]): neprázdná obdélníková mřížka.
    """

    def __init__(self, field, entries, cols=None):
        self.field = field
        self.entries = [list(row) for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else (cols or 0)
        self.log = []
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("Matice obsahuje řádky různé délky.")
            for entry in row:
                if entry.field != field:
                    raise FieldMismatch("Všechny prvky matice musí být nad stejným tělesem.")

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, [[OrePoly.zero(field) for _ in range(cols)] for _ in range(rows)], cols)

    def copy(self):
        clone = OreMatrix(self.field, [list(row) for row in self.entries], self.cols)
        clone.log = list(self.log)
        return clone

    def __getitem__(self, index):
        i, j = index
        return self.entries[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, OreMatrix)
            and self.field == other.field
            and self.entries == other.entries
        )

    def is_diagonal(self):
        return all(
            self.entries[i][j].is_zero()
            for i in range(self.rows)
            for j in range(self.cols)
            if i != j
        )

    def diagonal_rank(self):
        """Počet nenulových diagonálních prvků (předpokládá diagonální tvar)."""
        return sum(
            1 for i in range(min(self.rows, self.cols)) if not self.entries[i][i].is_zero()
        )

    def to_json(self):
        return {
            "field": self.field.literal,
            "rows": [[format_orepoly(e) for e in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, data):
        """Načte matici z JSON slovníku `{"field": ..., "rows": [[...]]}`."""
        field = parse_field(data["field"])
        rows = [[parse_orepoly(str(e), field) for e in row] for row in data["rows"]]
        if not rows or not rows[0]:
            raise ValueError("Matice musí být neprázdná.")
        return cls(field, rows)

    @classmethod
    def load(cls, path):
        with open(path, "r", encoding="utf-8") as file:
            return cls.from_json(json.load(file))


def apply_op(matrix, op):
    """Aplikuje elementární operaci na matici (na místě) a zapíše ji do logu."""
    if op.kind == "scale" and op.multiplier == 0:
        raise ValueError("Škálování nulou není elementární operace.")
    E = matrix.entries
    if op.side == "row":
        if op.kind == "swap":
            E[op.target], E[op.source] = E[op.source], E[op.target]
        elif op.kind == "scale":
            E[op.target] = [e.scale_left(op.multiplier) for e in E[op.target]]
        else:
            E[op.target] = [
                a + ore_mul(op.multiplier, b) for a, b in zip(E[op.target], E[op.source])
            ]
    else:
        for row in E:
            if op.kind == "swap":
                row[op.target], row[op.source] = row[op.source], row[op.target]
            elif op.kind == "scale":
                row[op.target] = row[op.target].scale_right(op.multiplier)
            else:
                row[op.target] = row[op.target] + ore_mul(row[op.source], op.multiplier)
    matrix.log.append(op)
    return matrix


def replay(matrix, ops):
    """Přehraje posloupnost operací na kopii matice."""
    out = matrix.copy()
    out.log = []
    for op in ops:
        apply_op(out, op)
    return out


def _row_op(M, kind, target, source=None, multiplier=None):
    apply_op(M, ElementaryOp("row", kind, target, source, multiplier, "left"))


def _col_op(M, kind, target, source=None, multiplier=None):
    apply_op(M, ElementaryOp("col", kind, target, source, multiplier, "right"))


def _select_pivot(M, start, candidates):
    best = None
    for i, j in candidates:
        entry = M.entries[i][j]
        if entry.is_zero():
            continue
        key = (entry.degree, i, j)
        if best is None or key < best:
            best = key
    return None if best is None else (best[1], best[2])


def diagonalize(M):
    """
    Převede matici nad Λ elementárními operacemi na diagonální obdélníkový tvar.

    Parametry:
        M (OreMatrix): neprázdná matice; vstup se nemění.

    Postup:
        1. Ve zbývající podmatici vybere nenulový prvek minimálního stupně
           (shoda stupňů: nejmenší (řádek, sloupec)) a přesune ho na pivot.
        2. Vynuluje pivotní sloupec řádkovými operacemi (f = q·pivot + r)
           a pivotní řádek sloupcovými operacemi (f = pivot·q + r).
        3. Objeví-li se nenulový zbytek, stane se novým pivotem (má menší stupeň).
        4. Pokračuje na podmatici vpravo dole; nakonec normalizuje diagonálu na monickou.

    Vrací:
        tuple: (D, row_ops, col_ops), přehrání operací na M dává přesně D.
    """
    D = M.copy()
    D.log = []
    m, n = D.rows, D.cols
    s = 0
    while s < min(m, n):
        cells = [(i, j) for i in range(s, m) for j in range(s, n)]
        pivot = _select_pivot(D, s, cells)
        if pivot is None:
            break
        while True:
            i, j = pivot
            if i != s:
                _row_op(D, "swap", s, i)
            if j != s:
                _col_op(D, "swap", s, j)
            piv = D.entries[s][s]
            for i in range(s + 1, m):
                entry = D.entries[i][s]
                if entry.is_zero():
                    continue
                q, _ = ore_divide(entry, piv, "right")
                if not q.is_zero():
                    _row_op(D, "add_multiple", i, s, -q)
            for j in range(s + 1, n):
                entry = D.entries[s][j]
                if entry.is_zero():
                    continue
                q, _ = ore_divide(entry, piv, "left")
                if not q.is_zero():
                    _col_op(D, "add_multiple", j, s, -q)
            rest = [(i, s) for i in range(s + 1, m)] + [(s, j) for j in range(s + 1, n)]
            pivot = _select_pivot(D, s, rest)
            if pivot is None:
                break
        s += 1

    for i in range(min(m, n)):
        lead = D.entries[i][i].lead
        if lead not in (0, 1):
            _row_op(D, "scale", i, None, D.field.inv(lead))

    row_ops = [op for op in D.log if op.side == "row"]
    col_ops = [op for op in D.log if op.side == "col"]
    algebra_logger.info(
        "diagonalize %dx%d finished: rank=%d row_ops=%d col_ops=%d",
        m, n, D.diagonal_rank(), len(row_ops), len(col_ops),
    )
    return D, row_ops, col_ops
