"""
Modul s počítacími certifikáty velikosti (largeness) restriktivních Lieových algeber.

Obsahuje:
    - `ideal_free_generators`: volné generátory ideálu M_k s vahami (Kukinův počet).
    - `largeness_certificate` a `bp_certificate`: výběr minimálního exponentu k
      s kladným rozdílem počtu generátorů a relací.
    - `rewrite_in_ideal_generators` a `evaluate_rewrite`: přepis prvku ideálu přes
      symboly a_{l,i} = (ad t)^l (a_i).
    - `check_free_rank_formula`: numerické ověření Kukinova vzorce ve zkrácené algebře.
"""
import logging
from dataclasses import dataclass

from config import DEFAULT_CAP
from errors import AlgebraError, HypothesisFailed, NotInIdeal
from field.field import FiniteField
from freerla.expressions import Br, Gen, Sc, Sum, evaluate, generators_of, substitute_expr, weight_bound
from freerla.freerla import ad_power, build_algebra, pmap, weighted_graded_dims
from presentation.presentation import normalize
from quotient.quotient import ideal_closure, tracked_subalgebra_closure

algebra_logger = logging.getLogger("algebra_logger")


@dataclass(frozen=True)
class WeightedGenerator:
    name: str
    weight: int


def ideal_free_generators(r, p, k, distinguished=0):
    """
    Volné generátory ideálu M_k generovaného a_1..a_(r-1) a t^[p^k].

    Parametry:
        r (int): počet generátorů volné algebry, r ≥ 2.
        p (int): charakteristika.
        k (int): exponent, k ≥ 1.
        distinguished (int): index generátoru t mezi 0..r-1.

    Vrací:
        list[WeightedGenerator]: a_{l,i} s vahou l + 1 pro 0 ≤ l < p^k a t^[p^k] s vahou p^k;
        celkem (r - 1)·p^k + 1 prvků.
    """
    if r < 2:
        raise ValueError(f"Volná algebra potřebuje alespoň 2 generátory, zadáno r={r}.")
    if k < 1:
        raise ValueError(f"Exponent k musí být alespoň 1, zadáno k={k}.")
    if not 0 <= distinguished < r:
        raise ValueError(f"Index rozlišeného generátoru {distinguished} je mimo 0..{r - 1}.")
    top = p**k
    out = []
    for i in range(1, r):
        for l in range(top):
            out.append(WeightedGenerator(f"a_{l},{i}", l + 1))
    out.append(WeightedGenerator(f"t^[{top}]", top))
    return out


@dataclass(frozen=True)
class LargenessCertificate:
    n: int
    m: int
    p: int
    q: int
    k: int
    generator_count: int
    relation_count: int
    difference: int
    q_mode: str
    recursion_ready: bool

    def to_json(self):
        return {
            "n": self.n,
            "m": self.m,
            "p": self.p,
            "q": self.q,
            "k": self.k,
            "generatorCount": self.generator_count,
            "relationCount": self.relation_count,
            "difference": self.difference,
            "qMode": self.q_mode,
            "recursionReady": self.recursion_ready,
        }


def largeness_certificate(n, m, p, q, q_mode="supplied"):
    """
    Nejmenší k > q s (n - m - 1)·p^k - (n - 1)·p^q > 0 a příslušné počty.

    Výjimky:
        HypothesisFailed: m > n - 2.
        ValueError: q < 0.
    """
    if m > n - 2:
        raise HypothesisFailed(f"Certifikát vyžaduje m ≤ n - 2, zadáno n={n}, m={m}.")
    if q < 0:
        raise ValueError(f"Mez mocnin q musí být nezáporná, zadáno q={q}.")
    k = q + 1
    while (n - m - 1) * p**k - (n - 1) * p**q <= 0:
        k += 1
    generator_count = (n - 1) * (p**k - p**q)
    relation_count = m * p**k
    difference = generator_count - relation_count
    certificate = LargenessCertificate(
        n, m, p, q, k, generator_count, relation_count, difference, q_mode, difference >= 2
    )
    algebra_logger.info(
        "Largeness certificate n=%d m=%d p=%d q=%d: k=%d difference=%d", n, m, p, q, k, difference
    )
    return certificate


def bp_certificate(P, q=None, truncation=None, cap=DEFAULT_CAP):
    """
    Certifikát pro prezentaci P.

    Parametry:
        P (Presentation): prezentace s m ≤ n - 2.
        q (int | None): zadaná mez mocnin; None = spočítat přepisem relátorů.
        truncation (int | None): stupeň zkrácení pro výpočet q; výchozí je největší
            horní mez váhy relátorů.

    Postup (bez zadaného q):
        1. Normalizuje P a za rozlišený generátor t vezme první vynechaný.
        2. Každý nenulový relátor přepíše přes a_{l,i}; q je maximum získaných mezí.

    Výjimky:
        HypothesisFailed: m > n - 2.
    """
    if P.m > P.n - 2:
        raise HypothesisFailed(f"Certifikát vyžaduje m ≤ n - 2, prezentace má n={P.n}, m={P.m}.")
    if q is not None:
        return largeness_certificate(P.n, P.m, P.field.p, q, "supplied")

    Q, omitted = normalize(P, cap)
    t = omitted[0]
    if truncation is None:
        truncation = max((weight_bound(w, P.field.p) for w in Q.relators), default=1)
    A = build_algebra(P.field, Q.generators, truncation, cap)
    computed = 0
    for w in Q.relators:
        value = evaluate(w, A)
        if value.is_zero():
            continue
        computed = max(computed, rewrite_in_ideal_generators(A, t, value).q)
    return largeness_certificate(P.n, P.m, P.field.p, computed, "computed")


@dataclass(frozen=True)
class RewriteResult:
    """
    Atributy:
        expression: strom nad symboly `ad{l}.{a}` (a `s` pro t^[p^k]).
        q (int): nejmenší q, pro které jsou všechny použité úrovně l < p^q.
        levels (tuple[int]): použité úrovně l.
        ad_expressions (dict[int, object]): přepsané (ad t)^l(w) pro vyžádaná l.
    """

    expression: object
    q: int
    levels: tuple
    ad_expressions: dict


def _symbol(level, name):
    return Gen(f"ad{level}.{name}")


def _parse_symbol(name):
    head, _, generator = name.partition(".")
    return int(head[2:]), generator


def _combo_expr(combo, labels, fallback):
    terms = []
    for index in sorted(combo):
        c = combo[index]
        terms.append(labels[index] if c == 1 else Sc(c, labels[index]))
    if not terms:
        return Sc(0, fallback)
    return terms[0] if len(terms) == 1 else Sum(tuple(terms))


def _levels_of(expr):
    return sorted({_parse_symbol(name)[0] for name in generators_of(expr) if name != "s"})


def _substitute_high_levels(expr, p, k):
    """Nahradí ad{l}.a pro l ≥ p^k výrazem [s, ad{l - p^k}.a] (rekurzivně)."""
    top = p**k
    mapping = {}
    for name in generators_of(expr):
        if name == "s":
            continue
        level, generator = _parse_symbol(name)
        if level < top:
            continue
        image = _symbol(level % top, generator)
        for _ in range(level // top):
            image = Br(Gen("s"), image)
        mapping[name] = image
    return substitute_expr(expr, mapping)


def _power_bound(levels, p):
    q = 0
    top = max(levels, default=0)
    while top >= p**q:
        q += 1
    return q


def rewrite_in_ideal_generators(A, distinguished, w, k=None, ad_levels=()):
    """
    Vyjádří prvek ideálu generovaného ostatními generátory přes a_{l,i} = (ad t)^l (a_i).

    Parametry:
        A (TruncatedFreeRLA): zkrácená volná algebra.
        distinguished (str): jméno rozlišeného generátoru t.
        w (LieElement): prvek ideálu M generovaného generátory různými od t.
        k (int | None): při zadání se úrovně l ≥ p^k nahradí závorkou se s = t^[p^k].
        ad_levels (iterable[int]): úrovně l, pro které se přepíše i (ad t)^l (w).

    Postup:
        Pro q = 0, 1, ... sestaví sledovaný uzávěr podalgebry generované a_{l,i}
        s l < min(p^q, N) a zkusí vyjádřit w a (ad t)^l (w). První úspěšné q končí.

    Výjimky:
        NotInIdeal: w neleží v ideálu M.
        ResourceBound: algebra přesahuje limit báze.
    """
    t = A.generator(distinguished)
    others = [g for g in A.generators if g != distinguished]
    M = ideal_closure(A, [A.generator(g) for g in others])
    if not M.contains(w.vector):
        raise NotInIdeal(f"Prvek neleží v ideálu generovaném {others}.")

    ad_levels = tuple(ad_levels)
    targets = [w] + [ad_power(t, w, l) for l in ad_levels]
    p, N = A.p, A.N
    fallback = _symbol(0, others[0])
    q = 0
    while True:
        depth = min(p**q, max(N, 1))
        labelled = [
            (ad_power(t, A.generator(g), l), _symbol(l, g)) for g in others for l in range(depth)
        ]
        S = tracked_subalgebra_closure(A, labelled)
        combos = [S.express(target.vector) for target in targets]
        if all(combo is not None for combo in combos):
            break
        if depth >= N:
            raise AlgebraError("Prvek ideálu nelze vyjádřit ani přes všechny úrovně a_{l,i}.")
        q += 1

    expressions = [_combo_expr(combo, S.labels, fallback) for combo in combos]
    levels = _levels_of(expressions[0])
    if k is not None:
        expressions = [_substitute_high_levels(e, p, k) for e in expressions]
    result = RewriteResult(
        expressions[0],
        _power_bound(levels, p),
        tuple(levels),
        dict(zip(ad_levels, expressions[1:])),
    )
    algebra_logger.info(
        "Rewrote element in ideal generators: levels=%s q=%d", list(result.levels), result.q
    )
    return result


def evaluate_rewrite(A, distinguished, expr, k=None):
    """Vyhodnotí přepsaný výraz zpět v algebře A (ad{l}.a ↦ (ad t)^l (a), s ↦ t^[p^k])."""
    t = A.generator(distinguished)
    env = {}
    for name in generators_of(expr):
        if name == "s":
            if k is None:
                raise ValueError("Výraz obsahuje s, ale exponent k nebyl zadán.")
            env[name] = pmap(t, k)
        else:
            level, generator = _parse_symbol(name)
            env[name] = ad_power(t, A.generator(generator), level)
    return evaluate(expr, A, env)


def check_free_rank_formula(r, p, k, N, field=None, cap=DEFAULT_CAP):
    """
    Porovná ideál M_k = ⟨a_1..a_(r-1), t^[p^k]⟩ v trunc(F_p, {t, a_1..}, N)
    s volnou algebrou na generátorech vah z `ideal_free_generators`.

    Vrací:
        dict: počty, graduované profily, kodimenze a výsledek `passed`.
    """
    field = field or FiniteField(p)
    generators = ("t",) + tuple(f"a{i}" for i in range(1, r))
    A = build_algebra(field, generators, N, cap)
    seeds = [A.generator(g) for g in generators[1:]] + [pmap(A.generator("t"), k)]
    M = ideal_closure(A, seeds)

    free_generators = ideal_free_generators(r, p, k)
    profile = M.graded_profile(N)
    expected = weighted_graded_dims([g.weight for g in free_generators], p, N)
    expected_codim = sum(1 for j in range(k) if p**j <= N)
    kukin = p**k * (r - 1) + 1
    passed = (
        profile == expected and M.codim == expected_codim and len(free_generators) == kukin
    )
    algebra_logger.info(
        "Free rank check r=%d p=%d k=%d N=%d: profile=%s expected=%s passed=%s",
        r, p, k, N, profile, expected, passed,
    )
    return {
        "r": r,
        "p": p,
        "k": k,
        "N": N,
        "count": len(free_generators),
        "kukin": kukin,
        "profile": profile,
        "expected_profile": expected,
        "codimension": M.codim,
        "expected_codimension": expected_codim,
        "passed": passed,
    }
