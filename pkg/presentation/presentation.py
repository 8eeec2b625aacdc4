"""
Modul s prezentacemi restriktivních Lieových algeber ⟨x_1,…,x_n | w_1,…,w_m⟩.

Obsahuje:
    - Třídu `Presentation` (neměnná hodnota) a `GenTransform` (elementární transformace
      x_i ↦ λ·x_i + f(ostatní generátory)).
    - Funkce `apply_transform`, `abelianize` (převod relátorů na matici nad Λ)
      a `normalize` (diagonalizace a omezení mocninných složek).
    - Kontroly `relator_power_components` a `check_presentation_equivalence`.

Relátory jsou stromy výrazů nad aktuálními jmény generátorů. Každá pozice si nese
definici svého generátoru ve výchozích generátorech (`origin`), takže lze kdykoli
ověřit, že nová prezentace zadává stejný restriktivní ideál.
"""
import json
import logging
from dataclasses import dataclass, replace

from config import DEFAULT_CAP
from errors import (
    AlgebraError,
    MalformedTransform,
    ResourceBound,
    TooManyRelators,
    UnknownGenerator,
)
from field.field import parse_field
from freerla.expressions import (
    Br,
    Gen,
    Pp,
    Sc,
    Sum,
    contains_bracket,
    evaluate,
    format_tree,
    generators_of,
    parse_tree,
    substitute_expr,
    weight_bound,
)
from freerla.freerla import build_algebra, format_expr
from orepoly.orepoly import OreMatrix, OrePoly, diagonalize, format_orepoly, ore_mul
from quotient.quotient import ideal_closure

algebra_logger = logging.getLogger("algebra_logger")


@dataclass(frozen=True)
class Presentation:
    """
    Prezentace ⟨generators | relators⟩ nad tělesem `field`.

    Atributy:
        field (FiniteField): těleso koeficientů.
        generators (tuple[str]): uspořádaná jména generátorů.
        relators (tuple): stromy výrazů nad `generators`.
        definitions (tuple): výraz každého generátoru ve výchozích generátorech.
        origin (tuple[str]): výchozí generátory (před transformacemi).
        history (tuple[dict]): záznamy provedených elementárních transformací.
    """

    field: object
    generators: tuple
    relators: tuple
    definitions: tuple = None
    origin: tuple = None
    history: tuple = ()

    def __post_init__(self):
        generators = tuple(self.generators)
        if len(set(generators)) != len(generators):
            raise ValueError(f"Jména generátorů se opakují: {generators}.")
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "relators", tuple(self.relators))
        if self.origin is None:
            object.__setattr__(self, "origin", generators)
        if self.definitions is None:
            object.__setattr__(self, "definitions", tuple(Gen(g) for g in generators))
        declared = set(generators)
        for i, w in enumerate(self.relators):
            unknown = generators_of(w) - declared
            if unknown:
                raise UnknownGenerator(f"Relátor {i} obsahuje neznámé generátory {sorted(unknown)}.")

    @property
    def n(self):
        return len(self.generators)

    @property
    def m(self):
        return len(self.relators)

    @classmethod
    def from_json(cls, data):
        """
        Načte prezentaci z JSON slovníku
        `{"field": "gf(2)", "generators": [...], "relators": [...]}`.

        Volitelné klíče `definitions` a `origin` obnoví uložený výstup `normalize`.
        """
        field = parse_field(data["field"])
        generators = tuple(data["generators"])
        relators = tuple(parse_tree(text, field, generators) for text in data.get("relators", []))
        origin = tuple(data.get("origin", generators))
        definitions = None
        if "definitions" in data:
            definitions = tuple(parse_tree(text, field, origin) for text in data["definitions"])
        return cls(field, generators, relators, definitions, origin)

    @classmethod
    def load(cls, path):
        with open(path, "r", encoding="utf-8") as file:
            return cls.from_json(json.load(file))

    def to_json(self):
        return {
            "field": self.field.literal,
            "generators": list(self.generators),
            "relators": [format_tree(w, self.field) for w in self.relators],
            "definitions": [format_tree(d, self.field) for d in self.definitions],
            "origin": list(self.origin),
            "history": list(self.history),
        }


@dataclass(frozen=True)
class GenTransform:
    """
    Elementární transformace: nový generátor na pozici `target` je λ·x_target + f.

    Atributy:
        target (int): index měněného generátoru.
        lam (int): kód nenulového prvku λ.
        f: p-polynom (strom bez závorek) v ostatních generátorech, nebo None.
    """

    target: int
    lam: int = 1
    f: object = None

    def validate(self, P):
        if not 0 <= self.target < P.n:
            raise MalformedTransform(f"Index generátoru {self.target} je mimo rozsah 0..{P.n - 1}.")
        if not 0 < self.lam < P.field.order:
            raise MalformedTransform(f"Koeficient λ={self.lam} musí být nenulový prvek tělesa.")
        if self.f is None:
            return
        name = P.generators[self.target]
        names = generators_of(self.f)
        if name in names:
            raise MalformedTransform(f"Část f nesmí obsahovat měněný generátor '{name}'.")
        if not names <= set(P.generators):
            raise MalformedTransform(f"Část f obsahuje neznámé generátory {sorted(names - set(P.generators))}.")
        if contains_bracket(self.f):
            raise MalformedTransform("Část f musí být p-polynom (bez závorek).")

    def to_json(self, P):
        return {
            "op": "transform",
            "target": P.generators[self.target],
            "lambda": P.field.format_code(self.lam),
            "f": None if self.f is None else format_tree(self.f, P.field),
        }


def canonical_expr(expr, field, generators, cap=DEFAULT_CAP):
    """
    Normální tvar výrazu: vyhodnocení v algebře zkrácené na jeho horní mez váhy.

    Zkrácení je přesné, protože žádný člen výrazu nemá větší váhu. Překročí-li
    báze `cap`, vrací se výraz beze změny.
    """
    bound = weight_bound(expr, field.p)
    try:
        algebra = build_algebra(field, generators, bound, cap)
    except ResourceBound:
        algebra_logger.debug("Relator of weight bound %d kept symbolic.", bound)
        return expr
    return parse_tree(format_expr(evaluate(expr, algebra)), field, generators)


def _p_polynomial_terms(h, expr, field, negate=False):
    """Členy h∗expr = Σ c_e · expr^[p^e] pro polynom h z Λ."""
    terms = []
    for e, c in enumerate(h.coeffs):
        if c == 0:
            continue
        if negate:
            c = field.neg(c)
        base = expr if e == 0 else Pp(expr, e)
        terms.append(base if c == 1 else Sc(c, base))
    return terms


def _as_sum(terms):
    return terms[0] if len(terms) == 1 else Sum(tuple(terms))


def apply_transform(P, T, cap=DEFAULT_CAP):
    """
    Aplikuje elementární transformaci na prezentaci.

    Parametry:
        P (Presentation): výchozí prezentace.
        T (GenTransform): transformace nad generátory P.

    Postup:
        1. Do relátorů dosadí inverzní substituci x_i = λ⁻¹ (y_i − f).
        2. Relátory převede na normální tvar.
        3. Definici generátoru nahradí výrazem λ·def_i + f(definice).

    Vrací:
        Presentation: nová prezentace s rozšířenou historií.

    Výjimky:
        MalformedTransform: transformace neodpovídá generátorům P.
    """
    T.validate(P)
    entry = T.to_json(P)
    if T.lam == 1 and T.f is None:
        return replace(P, history=P.history + (entry,))

    F = P.field
    name = P.generators[T.target]
    old = Gen(name)
    if T.f is not None:
        old = Sum((old, Sc(F.neg(1), T.f)))
    inv = F.inv(T.lam)
    if inv != 1:
        old = Sc(inv, old)
    relators = tuple(
        canonical_expr(substitute_expr(w, {name: old}), F, P.generators, cap) for w in P.relators
    )

    definition = P.definitions[T.target]
    if T.lam != 1:
        definition = Sc(T.lam, definition)
    if T.f is not None:
        images = dict(zip(P.generators, P.definitions))
        definition = Sum((definition, substitute_expr(T.f, images)))
    definitions = list(P.definitions)
    definitions[T.target] = canonical_expr(definition, F, P.origin, cap)
    algebra_logger.debug("Applied transform on generator %s.", name)
    return replace(P, relators=relators, definitions=tuple(definitions), history=P.history + (entry,))


def swap_generators(P, i, j):
    """Prohodí pozice dvou generátorů (relátory se nemění, mění se pořadí sloupců)."""
    generators = list(P.generators)
    definitions = list(P.definitions)
    generators[i], generators[j] = generators[j], generators[i]
    definitions[i], definitions[j] = definitions[j], definitions[i]
    entry = {"op": "swap_generators", "positions": [i, j]}
    return replace(
        P, generators=tuple(generators), definitions=tuple(definitions), history=P.history + (entry,)
    )


def _abelian_image(expr, field):
    """Obraz výrazu ve volné abelovské restriktivní algebře jako {jméno: prvek Λ}."""
    if isinstance(expr, Gen):
        return {expr.name: OrePoly.constant(field, 1)}
    if isinstance(expr, Br):
        return {}
    if isinstance(expr, Pp):
        shift = OrePoly.monomial(field, 1, expr.n)
        return {name: ore_mul(shift, f) for name, f in _abelian_image(expr.arg, field).items()}
    if isinstance(expr, Sc):
        return {name: f.scale_left(expr.coeff) for name, f in _abelian_image(expr.arg, field).items()}
    out = {}
    for term in expr.terms:
        for name, f in _abelian_image(term, field).items():
            out[name] = out[name] + f if name in out else f
    return out


def abelianize(P):
    """
    Matice m×n nad Λ: prvek (i, j) je Σ c·t^e pro členy c·x_j^[p^e] obrazu relátoru w_i
    ve volné abelovské restriktivní algebře (závorky vypadnou, p-mapa je semilineární).
    """
    zero = OrePoly.zero(P.field)
    rows = []
    for w in P.relators:
        image = _abelian_image(w, P.field)
        rows.append([image.get(name, zero) for name in P.generators])
    return OreMatrix(P.field, rows, cols=P.n)


def relator_power_components(P):
    """Nenulové mocninné složky každého relátoru: seznam {jméno generátoru: polynom z Λ}."""
    out = []
    for row in abelianize(P).entries:
        out.append({
            name: format_orepoly(f) for name, f in zip(P.generators, row) if not f.is_zero()
        })
    return out


def _apply_row_op(relators, op, field):
    t, s = op.target, op.source
    if op.kind == "swap":
        relators[t], relators[s] = relators[s], relators[t]
    elif op.kind == "scale":
        relators[t] = Sc(op.multiplier, relators[t])
    else:
        relators[t] = Sum((relators[t], *_p_polynomial_terms(op.multiplier, relators[s], field)))


def normalize(P, cap=DEFAULT_CAP):
    """
    Upraví prezentaci tak, aby mocninná složka relátoru i obsahovala jen generátor z_i.

    Parametry:
        P (Presentation): prezentace s m ≤ n − 1.

    Postup:
        1. Sestaví abelianizační matici a diagonalizuje ji.
        2. Řádkové operace provede na relátorech (u_i ↦ u_i + h∗u_j, výměna, škálování).
        3. Sloupcové operace převede na elementární transformace generátorů.
        4. Ověří, že abelianizace výsledku je přesně diagonální matice.

    Vrací:
        tuple: (P′, vynechané generátory), vynechané jsou pozice za hodností diagonály.

    Výjimky:
        TooManyRelators: m > n − 1.
    """
    if P.m > P.n - 1:
        raise TooManyRelators(f"Prezentace má {P.m} relátorů na {P.n} generátorů, povoleno je n − 1.")
    F = P.field
    D, row_ops, col_ops = diagonalize(abelianize(P))

    relators = list(P.relators)
    for op in row_ops:
        _apply_row_op(relators, op, F)
    history = tuple({"op": "relator", **op.to_json(F)} for op in row_ops)
    Q = replace(
        P,
        relators=tuple(canonical_expr(w, F, P.generators, cap) for w in relators),
        history=P.history + history,
    )

    for op in col_ops:
        if op.kind == "swap":
            Q = swap_generators(Q, op.target, op.source)
        elif op.kind == "scale":
            Q = apply_transform(Q, GenTransform(op.target, F.inv(op.multiplier)), cap)
        else:
            # col_target += col_source·h  <=>  y_source = x_source − h∗x_target
            terms = _p_polynomial_terms(op.multiplier, Gen(Q.generators[op.target]), F, negate=True)
            Q = apply_transform(Q, GenTransform(op.source, 1, _as_sum(terms)), cap)

    if abelianize(Q) != D:
        raise AlgebraError("Abelianizace normalizované prezentace nesouhlasí s diagonálním tvarem.")
    rank = D.diagonal_rank()
    omitted = Q.generators[rank:]
    algebra_logger.info(
        "Normalized presentation n=%d m=%d: rank=%d omitted=%s", P.n, P.m, rank, list(omitted)
    )
    return Q, omitted


def _origin_relators(P, algebra):
    images = dict(zip(P.generators, P.definitions))
    return [evaluate(substitute_expr(w, images), algebra) for w in P.relators]


def check_presentation_equivalence(P, Q, N, cap=DEFAULT_CAP):
    """
    Porovná restriktivní ideály relátorů obou prezentací ve výchozích generátorech,
    zkrácené na váhu N.

    Výjimky:
        ValueError: prezentace nemají stejné výchozí generátory.
        ResourceBound: zkrácená algebra by přesáhla `cap`.
    """
    if set(P.origin) != set(Q.origin) or P.field != Q.field:
        raise ValueError("Prezentace nevycházejí ze stejných generátorů nad stejným tělesem.")
    algebra = build_algebra(P.field, P.origin, N, cap)
    lhs = ideal_closure(algebra, _origin_relators(P, algebra))
    rhs = ideal_closure(algebra, _origin_relators(Q, algebra))
    result = lhs == rhs
    algebra_logger.info(
        "Presentation equivalence at N=%d: dim %d vs %d, result=%s", N, lhs.dim, rhs.dim, result
    )
    return result
