"""
Modul pro přesnou aritmetiku v konečných (perfektních) tělesech F_{p^k}.

Obsahuje:
    - Třídu `FiniteField` s tabulkami exp/log nad primitivním prvkem.
    - Třídu `FieldElement` pro prvky tělesa s vlastníkem.
    - Funkce `field_arith`, `frobenius` a parsování literálů `gf(...)`.

Prvky jsou interně kódovány celým číslem code = Σ c_i p^i, kde c_i jsou
souřadnice v mocninné bázi kořene modulu. Výpočetní moduly pracují přímo
s kódy (skalární i vektorové operace nad numpy poli), `FieldElement` je
obal pro veřejné rozhraní.
"""
import itertools
import logging
import re
from dataclasses import dataclass

import numpy as np
from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_mul, gf_pow_mod, gf_rem, gf_strip

from config import FIELD_SIZE_LIMIT
from errors import DivisionByZero, FieldError, FieldMismatch, ParseError

algebra_logger = logging.getLogger("algebra_logger")

_FIELD_RE = re.compile(
    r"^\s*gf\(\s*(\d+)(?:\s*\^\s*(\d+))?\s*(?:;\s*([-\d,\s]+?))?\s*\)\s*$"
)


class FiniteField:
    """
    Konečné těleso F_{p^k} = F_p[a]/(modulus).

    Parametry:
        p (int): prvočíselná charakteristika.
        modulus (sekvence int): koeficienty monického ireducibilního polynomu
            stupně k, absolutní člen první. Pro k = 1 lze vynechat.

    Výjimky:
        FieldError: p není prvočíslo, modulus není monický, ireducibilní
            nebo je těleso větší než FIELD_SIZE_LIMIT.
    """

    def __init__(self, p, modulus=None):
        p = int(p)
        if not isprime(p):
            raise FieldError(f"Charakteristika {p} není prvočíslo.")
        if modulus is None:
            modulus = (0, 1)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) < 2 or modulus[-1] != 1:
            raise FieldError(f"Modulus {modulus} musí být monický stupně alespoň 1.")

        self.p = p
        self.k = len(modulus) - 1
        self.modulus = modulus
        self.order = p ** self.k
        if self.order > FIELD_SIZE_LIMIT:
            raise FieldError(
                f"Těleso řádu {self.order} přesahuje limit {FIELD_SIZE_LIMIT}."
            )
        self._modulus_gf = gf_strip([ZZ(c) for c in reversed(modulus)])
        if not self._is_irreducible():
            raise FieldError(f"Modulus {modulus} není ireducibilní nad F_{p}.")
        self._build_tables()
        algebra_logger.debug("Field %s constructed (order %d).", self.literal, self.order)

    # ------------------------------------------------------------------
    # konstrukce

    def _is_irreducible(self):
        """Zkušební dělení všemi monickými polynomy stupně 1..k//2."""
        p = self.p
        for degree in range(1, self.k // 2 + 1):
            for tail in itertools.product(range(p), repeat=degree):
                divisor = [ZZ(1)] + [ZZ(c) for c in reversed(tail)]
                if not gf_rem(self._modulus_gf, divisor, p, ZZ):
                    return False
        return True

    def _to_gf(self, code):
        return gf_strip([ZZ(c) for c in reversed(self.digits(code))])

    def _from_gf(self, poly):
        code = 0
        for c in poly:
            code = code * self.p + int(c)
        return code

    def _poly_mul(self, a, b):
        product = gf_mul(self._to_gf(a), self._to_gf(b), self.p, ZZ)
        return self._from_gf(gf_rem(product, self._modulus_gf, self.p, ZZ))

    def _build_tables(self):
        """Najde primitivní prvek a sestaví tabulky exp/log."""
        q1 = self.order - 1
        primes = list(factorint(q1)) if q1 > 1 else []
        generator = None
        for candidate in range(1, self.order):
            poly = self._to_gf(candidate)
            if all(
                self._from_gf(gf_pow_mod(poly, q1 // ell, self._modulus_gf, self.p, ZZ)) != 1
                for ell in primes
            ):
                generator = candidate
                break
        if generator is None:
            raise FieldError(f"Primitivní prvek pro {self.literal} nenalezen.")

        exp = [1] * q1
        for i in range(1, q1):
            exp[i] = self._poly_mul(exp[i - 1], generator)
        log = [0] * self.order
        for i, value in enumerate(exp):
            log[value] = i
        self._exp = exp
        self._log = log
        self._exp_arr = np.array(exp, dtype=np.int64)
        self._log_arr = np.array(log, dtype=np.int64)
        self.generator = generator

    # ------------------------------------------------------------------
    # identita

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        return f"FiniteField({self.literal})"

    @property
    def literal(self):
        """Textový literál tělesa: `gf(p)` nebo `gf(q; c0,...,ck)`."""
        if self.k == 1 and self.modulus == (0, 1):
            return f"gf({self.p})"
        coeffs = ",".join(str(c) for c in self.modulus)
        return f"gf({self.order}; {coeffs})"

    # ------------------------------------------------------------------
    # skalární operace nad kódy

    def digits(self, code):
        """Souřadnice prvku v mocninné bázi (délka přesně k)."""
        out = []
        for _ in range(self.k):
            code, c = divmod(code, self.p)
            out.append(c)
        return out

    def from_digits(self, digits):
        if len(digits) > self.k:
            raise FieldError(f"Prvek má více než {self.k} souřadnic: {list(digits)}.")
        code = 0
        for c in reversed(list(digits)):
            code = code * self.p + int(c) % self.p
        return code

    def from_int(self, n):
        return int(n) % self.p

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        res, pw, p = 0, 1, self.p
        for _ in range(self.k):
            res += (((a // pw) + (b // pw)) % p) * pw
            pw *= p
        return res

    def neg(self, a):
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        res, pw, p = 0, 1, self.p
        for _ in range(self.k):
            res += ((-(a // pw)) % p) * pw
            pw *= p
        return res

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return (a * b) % self.p
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("Dělení nulou v konečném tělese.")
        if self.k == 1:
            return pow(int(a), self.p - 2, self.p)
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, e):
        if e == 0:
            return 1
        if a == 0:
            return 0
        if e < 0:
            a, e = self.inv(a), -e
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def frob(self, a, n):
        """a^(p^n); záporné n přes exponent p^(n mod k), protože a^(p^k) = a."""
        s = n % self.k
        if s == 0 or a == 0:
            return a
        return self._exp[(self._log[a] * self.p ** s) % (self.order - 1)]

    # ------------------------------------------------------------------
    # vektorové operace nad numpy poli kódů

    def zeros(self, n):
        return np.zeros(n, dtype=np.int64)

    def vadd(self, u, v):
        if self.k == 1:
            return (u + v) % self.p
        if self.p == 2:
            return np.bitwise_xor(u, v)
        res = np.zeros_like(u)
        pw, p = 1, self.p
        for _ in range(self.k):
            res += (((u // pw) + (v // pw)) % p) * pw
            pw *= p
        return res

    def vneg(self, u):
        if self.k == 1:
            return (-u) % self.p
        if self.p == 2:
            return u.copy()
        res = np.zeros_like(u)
        pw, p = 1, self.p
        for _ in range(self.k):
            res += ((-(u // pw)) % p) * pw
            pw *= p
        return res

    def vscale(self, c, u):
        if c == 0:
            return np.zeros_like(u)
        if c == 1:
            return u.copy()
        if self.k == 1:
            return (u * c) % self.p
        shifted = self._exp_arr[(self._log_arr[u] + self._log[c]) % (self.order - 1)]
        return np.where(u == 0, 0, shifted)

    def vaxpy(self, u, c, v):
        """u + c·v."""
        if c == 0:
            return u
        return self.vadd(u, self.vscale(c, v))

    # ------------------------------------------------------------------
    # prvky

    def element(self, value):
        """Vytvoří prvek z kódu, seznamu souřadnic nebo z FieldElement."""
        if isinstance(value, FieldElement):
            if value.owner != self:
                raise FieldMismatch(f"Prvek z {value.owner.literal} nepatří do {self.literal}.")
            return value
        if isinstance(value, (list, tuple)):
            return FieldElement(self, self.from_digits(value))
        return FieldElement(self, self.from_int(value))

    def from_code(self, code):
        return FieldElement(self, int(code))

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    def elements(self):
        return [FieldElement(self, code) for code in range(self.order)]

    def random_code(self, rng, nonzero=False):
        return rng.randrange(1 if nonzero else 0, self.order)

    def random_element(self, rng, nonzero=False):
        return FieldElement(self, self.random_code(rng, nonzero))

    def format_code(self, code):
        return "[" + ",".join(str(c) for c in self.digits(code)) + "]"

    def parse_element(self, text):
        """
        Převede literál prvku `[c0,c1,...]` (čárky nebo mezery) nebo celé číslo
        na kód prvku.
        """
        text = text.strip()
        if text.startswith("[") and text.endswith("]"):
            body = text[1:-1].replace(",", " ").split()
            try:
                return self.from_digits([int(c) for c in body])
            except ValueError as e:
                raise ParseError(f"Neplatný literál prvku '{text}': {e}") from e
        try:
            return self.from_int(int(text))
        except ValueError as e:
            raise ParseError(f"Neplatný literál prvku '{text}'.") from e


@dataclass(frozen=True, eq=False)
class FieldElement:
    """Prvek tělesa F_{p^k} s referencí na vlastníka."""

    owner: FiniteField
    code: int

    @property
    def coeffs(self):
        return tuple(self.owner.digits(self.code))

    def _check(self, other):
        if not isinstance(other, FieldElement):
            return self.owner.element(other)
        if other.owner != self.owner:
            raise FieldMismatch(
                f"Operace mezi {self.owner.literal} a {other.owner.literal} není dovolena."
            )
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.owner, self.owner.add(self.code, other.code))

    def __sub__(self, other):
        other = self._check(other)
        return FieldElement(self.owner, self.owner.sub(self.code, other.code))

    def __mul__(self, other):
        other = self._check(other)
        return FieldElement(self.owner, self.owner.mul(self.code, other.code))

    def __truediv__(self, other):
        other = self._check(other)
        return FieldElement(self.owner, self.owner.div(self.code, other.code))

    def __neg__(self):
        return FieldElement(self.owner, self.owner.neg(self.code))

    def __pow__(self, e):
        return FieldElement(self.owner, self.owner.power(self.code, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.owner == other.owner and self.code == other.code
        if isinstance(other, int):
            return self.code == self.owner.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.owner, self.code))

    def __bool__(self):
        return self.code != 0

    def inverse(self):
        return FieldElement(self.owner, self.owner.inv(self.code))

    def __repr__(self):
        return self.owner.format_code(self.code)


def field_arith(a, b, op):
    """
    Přesná aritmetika dvou prvků téhož tělesa.

    Parametry:
        a, b (FieldElement): operandy.
        op (str): 'add', 'sub', 'mul' nebo 'div'.

    Výjimky:
        FieldMismatch: prvky z různých těles.
        DivisionByZero: dělení nulou.
    """
    if a.owner != b.owner:
        raise FieldMismatch(f"Operace mezi {a.owner.literal} a {b.owner.literal} není dovolena.")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"Neznámá operace '{op}'. Použijte 'add', 'sub', 'mul' nebo 'div'.")


def frobenius(e, n):
    """Vrací e^(p^n); pro záporné n inverzní Frobeniův automorfismus."""
    return FieldElement(e.owner, e.owner.frob(e.code, n))


def parse_field(text):
    """
    Převede literál `gf(p)`, `gf(p^k; c0,...,ck)` nebo `gf(q; c0,...,ck)` na těleso.

    Výjimky:
        ParseError: literál neodpovídá gramatice.
        FieldError: nekonzistentní řád nebo neplatný modulus.
    """
    match = _FIELD_RE.match(text)
    if not match:
        raise ParseError(f"Neplatný literál tělesa '{text}'.")
    base, exponent, coeffs = match.groups()
    size = int(base) ** int(exponent) if exponent else int(base)
    if coeffs is None:
        if not isprime(size):
            raise FieldError(f"Těleso řádu {size} vyžaduje explicitní modulus.")
        return FiniteField(size)
    modulus = [int(c) for c in coeffs.replace(",", " ").split()]
    factors = factorint(size)
    if len(factors) != 1:
        raise FieldError(f"{size} není mocnina prvočísla.")
    p, k = next(iter(factors.items()))
    if len(modulus) != k + 1:
        raise FieldError(f"Modulus pro řád {size} musí mít {k + 1} koeficientů.")
    return FiniteField(p, modulus)
