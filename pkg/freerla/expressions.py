"""
Modul se stromy výrazů pro prvky restriktivních Lieových algeber.

Gramatika (S-výrazy oddělené mezerami):
    elem := GENNAME | (br elem elem) | (pp elem INT) | (sc FIELDLIT elem) | (sum elem+)

kde (pp e n) značí e^[p^n] pro n ≥ 1 a FIELDLIT je literál prvku tělesa `[c0,c1,...]`.

Obsahuje:
    - Uzly stromu `Gen`, `Br`, `Pp`, `Sc`, `Sum`.
    - Funkce `parse_tree` a `format_tree` (bitově přesný výměnný formát).
    - Funkci `evaluate`, která strom vyhodnotí v zadané algebře.
    - Pomocné funkce `generators_of`, `substitute_expr`, `weight_bound`, `contains_bracket`.
"""
import re
from dataclasses import dataclass

from errors import ParseError, UnknownGenerator

KEYWORDS = ("br", "pp", "sc", "sum")
NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_.]*$")
_TOKEN_RE = re.compile(r"\s*(?:(\()|(\))|(\[[^\]]*\])|([^\s()\[\]]+))")


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Br:
    left: object
    right: object


@dataclass(frozen=True)
class Pp:
    arg: object
    n: int


@dataclass(frozen=True)
class Sc:
    coeff: int
    arg: object


@dataclass(frozen=True)
class Sum:
    terms: tuple


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN_RE.match(text, pos)
        if not match:
            raise ParseError(f"Neočekávaný znak '{text[pos]}'.", pos)
        start = match.start(match.lastindex)
        tokens.append((match.group(match.lastindex), start))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text, field, generators):
        self.tokens = _tokenize(text)
        self.length = len(text)
        self.i = 0
        self.field = field
        self.generators = None if generators is None else set(generators)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, self.length)

    def take(self):
        token = self.peek()
        if token[0] is None:
            raise ParseError("Neočekávaný konec výrazu.", self.length)
        self.i += 1
        return token

    def expect_close(self):
        token, pos = self.take()
        if token != ")":
            raise ParseError(f"Očekávána ')' místo '{token}'.", pos)

    def elem(self):
        token, pos = self.take()
        if token == "(":
            head, hpos = self.take()
            if head == "br":
                left = self.elem()
                right = self.elem()
                self.expect_close()
                return Br(left, right)
            if head == "pp":
                arg = self.elem()
                n_tok, npos = self.take()
                if not n_tok.isdigit() or int(n_tok) < 1:
                    raise ParseError(f"Exponent '{n_tok}' musí být celé číslo ≥ 1.", npos)
                self.expect_close()
                return Pp(arg, int(n_tok))
            if head == "sc":
                lit, lpos = self.take()
                if lit in ("(", ")"):
                    raise ParseError("Očekáván literál prvku tělesa.", lpos)
                try:
                    coeff = self.field.parse_element(lit)
                except ParseError as e:
                    raise ParseError(str(e), lpos) from e
                arg = self.elem()
                self.expect_close()
                return Sc(coeff, arg)
            if head == "sum":
                terms = [self.elem()]
                while self.peek()[0] not in (")", None):
                    terms.append(self.elem())
                self.expect_close()
                return Sum(tuple(terms))
            raise ParseError(f"Neznámý operátor '{head}'.", hpos)
        if token == ")" or token.startswith("["):
            raise ParseError(f"Neočekávaný token '{token}'.", pos)
        if token in KEYWORDS or not NAME_RE.match(token):
            raise ParseError(f"Neplatné jméno generátoru '{token}'.", pos)
        if self.generators is not None and token not in self.generators:
            raise UnknownGenerator(f"Neznámý generátor '{token}'.", pos)
        return Gen(token)


def parse_tree(text, field, generators=None):
    """
    Převede text S-výrazu na strom.

    Parametry:
        text (str): výraz v gramatice modulu.
        field (FiniteField): těleso pro literály koeficientů.
        generators (iterable[str] | None): povolená jména generátorů (None = libovolná).

    Výjimky:
        ParseError: syntaktická chyba (s pozicí).
        UnknownGenerator: jméno mimo `generators`.
    """
    parser = _Parser(text, field, generators)
    tree = parser.elem()
    token, pos = parser.peek()
    if token is not None:
        raise ParseError(f"Přebytečný token '{token}' za koncem výrazu.", pos)
    return tree


def format_tree(expr, field):
    """Textová podoba stromu, inverzní k `parse_tree`."""
    if isinstance(expr, Gen):
        return expr.name
    if isinstance(expr, Br):
        return f"(br {format_tree(expr.left, field)} {format_tree(expr.right, field)})"
    if isinstance(expr, Pp):
        return f"(pp {format_tree(expr.arg, field)} {expr.n})"
    if isinstance(expr, Sc):
        return f"(sc {field.format_code(expr.coeff)} {format_tree(expr.arg, field)})"
    return "(sum " + " ".join(format_tree(t, field) for t in expr.terms) + ")"


def evaluate(expr, algebra, env=None):
    """
    Vyhodnotí strom v algebře.

    Parametry:
        expr: kořen stromu.
        algebra (TruncatedFreeRLA): cílová algebra.
        env (dict | None): mapování jméno -> LieElement, které má přednost před generátory.

    Vrací:
        LieElement: hodnota výrazu (zkrácená na stupeň algebry).
    """
    if isinstance(expr, Gen):
        if env is not None and expr.name in env:
            return env[expr.name]
        return algebra.generator(expr.name)
    if isinstance(expr, Br):
        return evaluate(expr.left, algebra, env).bracket(evaluate(expr.right, algebra, env))
    if isinstance(expr, Pp):
        return evaluate(expr.arg, algebra, env).pmap(expr.n)
    if isinstance(expr, Sc):
        return evaluate(expr.arg, algebra, env).scale(expr.coeff)
    total = algebra.zero()
    for term in expr.terms:
        total = total + evaluate(term, algebra, env)
    return total


def generators_of(expr):
    """Množina jmen generátorů, která se ve výrazu vyskytují."""
    if isinstance(expr, Gen):
        return {expr.name}
    if isinstance(expr, Br):
        return generators_of(expr.left) | generators_of(expr.right)
    if isinstance(expr, (Pp, Sc)):
        return generators_of(expr.arg)
    names = set()
    for term in expr.terms:
        names |= generators_of(term)
    return names


def substitute_expr(expr, mapping):
    """Nahradí generátory podle `mapping` (jméno -> strom); ostatní ponechá."""
    if isinstance(expr, Gen):
        return mapping.get(expr.name, expr)
    if isinstance(expr, Br):
        return Br(substitute_expr(expr.left, mapping), substitute_expr(expr.right, mapping))
    if isinstance(expr, Pp):
        return Pp(substitute_expr(expr.arg, mapping), expr.n)
    if isinstance(expr, Sc):
        return Sc(expr.coeff, substitute_expr(expr.arg, mapping))
    return Sum(tuple(substitute_expr(t, mapping) for t in expr.terms))


def weight_bound(expr, p):
    """Horní mez váhy všech členů výrazu (generátory mají váhu 1)."""
    if isinstance(expr, Gen):
        return 1
    if isinstance(expr, Br):
        return weight_bound(expr.left, p) + weight_bound(expr.right, p)
    if isinstance(expr, Pp):
        return weight_bound(expr.arg, p) * p ** expr.n
    if isinstance(expr, Sc):
        return weight_bound(expr.arg, p)
    return max(weight_bound(t, p) for t in expr.terms)


def contains_bracket(expr):
    if isinstance(expr, Gen):
        return False
    if isinstance(expr, Br):
        return True
    if isinstance(expr, (Pp, Sc)):
        return contains_bracket(expr.arg)
    return any(contains_bracket(t) for t in expr.terms)
