"""
Modul pro zkrácenou volnou restriktivní Lieovu algebru L(X) nad F_{p^k}.

Obsahuje:
    - Funkce pro graduované dimenze: `witt_number`, `graded_dims`,
      `series_oracle_dims` a `weighted_graded_dims`.
    - Výčet Lyndonových slov (`lyndon_words`) a kanonické báze (`enumerate_basis`).
    - Třídy `BasisElement`, `TruncatedFreeRLA` a `LieElement`.
    - Operace `build_algebra`, `bracket`, `pmap`, `ad_power`, `substitute`,
      `parse_expr` a `format_expr`.

Prvky jsou uloženy v souřadnicích kanonické báze [w]^[p^e] (w Lyndonovo slovo),
ale počítá se přes vnoření do volné asociativní algebry: vedoucí (lexikograficky
nejmenší) slovo rozvoje [w]^[p^e] je w^(p^e) s koeficientem 1, takže převod
zpět na souřadnice je trojúhelníková substituce.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sympy import divisors, mobius
from sympy.polys.domains import QQ
from sympy.polys.rings import ring
from sympy.polys.ring_series import rs_mul, rs_pow, rs_series_inversion

from config import DEFAULT_CAP
from errors import (
    AlgebraError,
    NotALieElement,
    OwnerMismatch,
    ResourceBound,
    UnknownGenerator,
)
from freerla.expressions import (
    KEYWORDS,
    NAME_RE,
    Br,
    Gen,
    Pp,
    Sc,
    Sum,
    evaluate,
    format_tree,
    parse_tree,
)

algebra_logger = logging.getLogger("algebra_logger")


# ----------------------------------------------------------------------
# graduované dimenze


def witt_number(r, m):
    """Počet Lyndonových slov délky m nad abecedou o r písmenech."""
    return sum(int(mobius(d)) * r ** (m // d) for d in divisors(m)) // m


def graded_dims(r, p, N):
    """
    Dimenze homogenních složek a_1..a_N zkrácené volné restriktivní algebry.

    a_d = Σ_{p^e | d} W_r(d / p^e).
    """
    dims = []
    for d in range(1, N + 1):
        total, q = 0, 1
        while d % q == 0:
            total += witt_number(r, d // q)
            q *= p
        dims.append(total)
    return dims


def _restricted_pbw_dims(weights, p, N):
    """
    Řeší Π_d ((1 - x^(pd)) / (1 - x^d))^(a_d) = 1 / (1 - Σ_g x^(w_g)) mod x^(N+1)
    postupně pro a_1, ..., a_N.
    """
    R, x = ring("x", QQ)
    prec = N + 1
    denominator = R(1)
    for w in weights:
        if w <= N:
            denominator -= x**w
    target = rs_series_inversion(denominator, x, prec)

    product = R(1)
    dims = []
    for d in range(1, N + 1):
        a_d = int(target.coeff(x**d)) - int(product.coeff(x**d))
        if a_d < 0:
            raise AlgebraError(f"Řada PBW dává zápornou dimenzi ve váze {d}.")
        dims.append(a_d)
        if a_d:
            truncated_geometric = sum((x ** (j * d) for j in range(p)), R(0))
            product = rs_mul(product, rs_pow(truncated_geometric, a_d, x, prec), x, prec)
    return dims


def series_oracle_dims(r, p, N):
    """Nezávislý výpočet dimenzí z restriktivní PBW identity proti 1/(1 - r x)."""
    return _restricted_pbw_dims([1] * r, p, N)


def weighted_graded_dims(weights, p, N):
    """
    Graduované dimenze volné restriktivní algebry na generátorech zadaných vah.

    Parametry:
        weights (iterable[int]): kladné váhy generátorů.
        p (int): charakteristika.
        N (int): nejvyšší sledovaný stupeň.
    """
    return _restricted_pbw_dims(list(weights), p, N)


# ----------------------------------------------------------------------
# Lyndonova slova a báze


def lyndon_words(r, n):
    """Duvalův výčet Lyndonových slov délky ≤ n v lexikografickém pořadí."""
    if r < 1 or n < 1:
        return
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        m = len(w)
        while len(w) < n:
            w.append(w[-m])
        while w and w[-1] == r - 1:
            w.pop()


def lyndon_counts(r, n):
    """Počty Lyndonových slov délek 1..n; slova se jen procházejí, neukládají."""
    counts = [0] * max(n, 0)
    for word in lyndon_words(r, n):
        counts[len(word) - 1] += 1
    return counts


def basis_counts(lyndon, p, N):
    """
    Počty bázových prvků vah 1..N odvozené z počtů Lyndonových slov.

    Parametry:
        lyndon (list[int]): výstup `lyndon_counts` pro délky alespoň do N.

    Vrací:
        list[int]: na pozici d-1 součet lyndon[m-1] přes m·p^e = d.
    """
    counts = [0] * N
    for m in range(1, N + 1):
        weight = m
        while weight <= N:
            counts[weight - 1] += lyndon[m - 1]
            weight *= p
    return counts


@dataclass(frozen=True)
class BasisElement:
    """Kanonický bázový prvek [word]^[p^pexp] s vahou |word|·p^pexp."""

    word: tuple
    pexp: int
    weight: int

    @property
    def is_power_component(self):
        return len(self.word) == 1

    def sort_key(self):
        return (self.weight, len(self.word), self.word)


def enumerate_basis(r, p, N):
    """Všechny bázové prvky váhy ≤ N seřazené podle (váha, délka slova, slovo)."""
    basis = []
    for word in lyndon_words(r, N):
        weight, e = len(word), 0
        while weight <= N:
            basis.append(BasisElement(word, e, weight))
            weight *= p
            e += 1
    basis.sort(key=BasisElement.sort_key)
    return basis


def _standard_factorization(word, lyndon_set):
    for i in range(1, len(word)):
        if word[i:] in lyndon_set:
            return word[:i], word[i:]
    raise AlgebraError(f"Slovo {word} nemá standardní faktorizaci.")


# ----------------------------------------------------------------------
# volná asociativní algebra (slovník slovo -> kód koeficientu)


def _assoc_axpy(acc, poly, c, field):
    if c == 0:
        return acc
    for w, v in poly.items():
        value = field.add(acc.get(w, 0), field.mul(c, v))
        if value:
            acc[w] = value
        else:
            acc.pop(w, None)
    return acc


def _assoc_mul(f, g, field, bound):
    by_length = {}
    for v, b in g.items():
        by_length.setdefault(len(v), []).append((v, b))
    out = {}
    for u, a in f.items():
        room = bound - len(u)
        for length, terms in by_length.items():
            if length > room:
                continue
            for v, b in terms:
                w = u + v
                out[w] = field.add(out.get(w, 0), field.mul(a, b))
    return {w: c for w, c in out.items() if c}


def _assoc_power(f, n, field, bound):
    result = f
    for _ in range(n - 1):
        result = _assoc_mul(result, f, field, bound)
    return result


# ----------------------------------------------------------------------
# algebra


class TruncatedFreeRLA:
    """
    Volná restriktivní Lieova algebra na `generators` modulo prvky váhy > N.

    Parametry:
        field (FiniteField): těleso koeficientů.
        generators (sekvence str): uspořádaná jména generátorů.
        N (int): stupeň zkrácení; N = 0 dává nulovou algebru.
        cap (int): maximální velikost báze.

    Výjimky:
        ResourceBound: báze by přesáhla `cap` (kontrolováno před alokací).
        ValueError: neplatná nebo opakovaná jména generátorů.
    """

    def __init__(self, field, generators, N, cap=DEFAULT_CAP):
        generators = tuple(generators)
        if not generators:
            raise ValueError("Algebra potřebuje alespoň jeden generátor.")
        if len(set(generators)) != len(generators):
            raise ValueError(f"Jména generátorů se opakují: {generators}.")
        for name in generators:
            if name in KEYWORDS or not NAME_RE.match(name):
                raise ValueError(f"Neplatné jméno generátoru '{name}'.")
        N = max(int(N), 0)

        self.field = field
        self.p = field.p
        self.generators = generators
        self.r = len(generators)
        self.N = N
        self.key = (field, generators, N)

        expected = graded_dims(self.r, self.p, N)
        total = sum(expected)
        if total > cap:
            raise ResourceBound(
                f"Báze zkrácené algebry má {total} prvků, limit je {cap}."
            )

        self.basis = enumerate_basis(self.r, self.p, N)
        counts = [0] * N
        for b in self.basis:
            counts[b.weight - 1] += 1
        if counts != expected:
            raise AlgebraError(f"Výčet báze {counts} nesouhlasí s dimenzemi {expected}.")

        self.dim = len(self.basis)
        self.weights = np.array([b.weight for b in self.basis], dtype=np.int64)
        self.index = {(b.word, b.pexp): i for i, b in enumerate(self.basis)}
        self._lyndon_set = {b.word for b in self.basis if b.pexp == 0}
        self._lead = {b.word * self.p**b.pexp: i for i, b in enumerate(self.basis)}
        self._power_index = [
            self.index.get((b.word, b.pexp + 1), -1) for b in self.basis
        ]
        self.ad_generators = [self.index[((j,), 0)] for j in range(self.r)] if N >= 1 else []
        self._lyndon_polys = {}
        self._expansions = {}
        self._bracket_cache = {}
        algebra_logger.info(
            "Built truncated algebra over %s on %s up to weight %d: dim=%d",
            field.literal, ",".join(generators), N, self.dim,
        )

    def __repr__(self):
        return f"TruncatedFreeRLA({self.field.literal}, {list(self.generators)}, N={self.N})"

    # --------------------------------------------------------------
    # prvky

    def zeros(self):
        return np.zeros(self.dim, dtype=np.int64)

    def zero(self):
        return LieElement(self, self.zeros())

    def element(self, vector):
        return LieElement(self, np.asarray(vector, dtype=np.int64))

    def basis_vector(self, i):
        v = self.zeros()
        v[i] = 1
        return v

    def basis_element(self, i):
        return LieElement(self, self.basis_vector(i))

    def generator(self, name):
        if name not in self.generators:
            raise UnknownGenerator(f"Neznámý generátor '{name}'.")
        if self.N < 1:
            return self.zero()
        return self.basis_element(self.index[((self.generators.index(name),), 0)])

    def random_element(self, rng, max_weight=None, density=0.5):
        """Náhodný prvek s koeficienty na bázových prvcích váhy ≤ max_weight."""
        bound = self.N if max_weight is None else max_weight
        v = self.zeros()
        for i, b in enumerate(self.basis):
            if b.weight <= bound and rng.random() < density:
                v[i] = self.field.random_code(rng)
        return LieElement(self, v)

    # --------------------------------------------------------------
    # asociativní rozvoje

    def _lyndon_poly(self, word):
        poly = self._lyndon_polys.get(word)
        if poly is not None:
            return poly
        if len(word) == 1:
            poly = {word: 1}
        else:
            u, v = _standard_factorization(word, self._lyndon_set)
            pu, pv = self._lyndon_poly(u), self._lyndon_poly(v)
            poly = _assoc_mul(pu, pv, self.field, self.N)
            _assoc_axpy(poly, _assoc_mul(pv, pu, self.field, self.N), self.field.neg(1), self.field)
        self._lyndon_polys[word] = poly
        return poly

    def expansion(self, i):
        """Rozvoj bázového prvku i ve volné asociativní algebře."""
        poly = self._expansions.get(i)
        if poly is None:
            b = self.basis[i]
            poly = self._lyndon_poly(b.word)
            for _ in range(b.pexp):
                poly = _assoc_power(poly, self.p, self.field, self.N)
            self._expansions[i] = poly
        return poly

    def to_assoc(self, vector, max_length=None):
        acc = {}
        for i in np.flatnonzero(vector):
            if max_length is not None and self.weights[i] > max_length:
                continue
            _assoc_axpy(acc, self.expansion(i), vector[i], self.field)
        return acc

    def from_assoc(self, poly):
        """
        Převede asociativní polynom na souřadnice kanonické báze.

        Výjimky:
            NotALieElement: polynom neleží v obrazu restriktivní algebry.
        """
        F = self.field
        v = self.zeros()
        remaining = {w: c for w, c in poly.items() if c and len(w) <= self.N}
        while remaining:
            lead = min(remaining, key=lambda w: (len(w), w))
            i = self._lead.get(lead)
            if i is None:
                raise NotALieElement(f"Slovo {lead} není vedoucím slovem žádného bázového prvku.")
            c = remaining[lead]
            v[i] = c
            _assoc_axpy(remaining, self.expansion(i), F.neg(c), F)
        return v

    # --------------------------------------------------------------
    # závorka a p-zobrazení nad vektory

    def bracket_basis(self, i, j):
        """[b_i, b_j] jako hustý vektor (s cache)."""
        if i == j or self.weights[i] + self.weights[j] > self.N:
            return self.zeros()
        if i > j:
            return self.field.vneg(self.bracket_basis(j, i))
        cached = self._bracket_cache.get((i, j))
        if cached is None:
            ei, ej = self.expansion(i), self.expansion(j)
            poly = _assoc_mul(ei, ej, self.field, self.N)
            _assoc_axpy(poly, _assoc_mul(ej, ei, self.field, self.N), self.field.neg(1), self.field)
            cached = self.from_assoc(poly)
            self._bracket_cache[(i, j)] = cached
        return cached

    def bracket_vectors(self, u, v):
        F = self.field
        out = self.zeros()
        by_weight = lambda i: self.weights[i]
        v_support = sorted(np.flatnonzero(v), key=by_weight)
        for i in np.flatnonzero(u):
            for j in v_support:
                if self.weights[i] + self.weights[j] > self.N:
                    break
                if i != j:
                    out = F.vaxpy(out, F.mul(u[i], v[j]), self.bracket_basis(i, j))
        return out

    def assoc_pmap_vector(self, u):
        """u^[p] jako asociativní p-tá mocnina rozvoje (zkrácená na stupeň N)."""
        support = np.flatnonzero(u)
        if support.size == 0:
            return self.zeros()
        min_weight = int(self.weights[support].min())
        room = self.N - (self.p - 1) * min_weight
        if room < min_weight:
            return self.zeros()
        poly = self.to_assoc(u, max_length=room)
        return self.from_assoc(_assoc_power(poly, self.p, self.field, self.N))

    def pmap_vector(self, u):
        """
        u^[p]; v charakteristice 2 přes (Σ c_i b_i)^[2] = Σ c_i^2 b_i^[2] + Σ_{i<j} c_i c_j [b_i, b_j].
        """
        if self.p != 2:
            return self.assoc_pmap_vector(u)
        F = self.field
        out = self.zeros()
        support = sorted(np.flatnonzero(u), key=lambda i: self.weights[i])
        for a, i in enumerate(support):
            j = self._power_index[i]
            if j >= 0:
                out[j] = F.add(out[j], F.mul(u[i], u[i]))
            for i2 in support[a + 1:]:
                if self.weights[i] + self.weights[i2] > self.N:
                    break
                out = F.vaxpy(out, F.mul(u[i], u[i2]), self.bracket_basis(i, i2))
        return out

    # --------------------------------------------------------------
    # výrazy

    def lyndon_expr(self, word):
        if len(word) == 1:
            return Gen(self.generators[word[0]])
        u, v = _standard_factorization(word, self._lyndon_set)
        return Br(self.lyndon_expr(u), self.lyndon_expr(v))

    def basis_expr(self, i):
        b = self.basis[i]
        expr = self.lyndon_expr(b.word)
        return Pp(expr, b.pexp) if b.pexp else expr

    def basis_label(self, i):
        return format_tree(self.basis_expr(i), self.field)


@lru_cache(maxsize=64)
def _cached_algebra(field, generators, N, cap):
    return TruncatedFreeRLA(field, generators, N, cap)


def build_algebra(field, generators, N, cap=DEFAULT_CAP):
    """
    Sestaví (nebo vrátí z cache) zkrácenou volnou restriktivní algebru.

    Výjimky:
        ResourceBound: báze by přesáhla `cap`.
    """
    return _cached_algebra(field, tuple(generators), int(N), int(cap))


# ----------------------------------------------------------------------
# prvky algebry


@dataclass(frozen=True, eq=False)
class LieElement:
    """Prvek zkrácené algebry v souřadnicích kanonické báze."""

    owner: object
    vector: np.ndarray

    def _check(self, other):
        if not isinstance(other, LieElement) or other.owner.key != self.owner.key:
            raise OwnerMismatch("Prvky patří do různých algeber.")

    @property
    def coords(self):
        """Řídká mapa BasisElement -> FieldElement (bez nulových souřadnic)."""
        F = self.owner.field
        return {
            self.owner.basis[i]: F.from_code(self.vector[i]) for i in np.flatnonzero(self.vector)
        }

    def __add__(self, other):
        self._check(other)
        return LieElement(self.owner, self.owner.field.vadd(self.vector, other.vector))

    def __sub__(self, other):
        self._check(other)
        F = self.owner.field
        return LieElement(self.owner, F.vadd(self.vector, F.vneg(other.vector)))

    def __neg__(self):
        return LieElement(self.owner, self.owner.field.vneg(self.vector))

    def scale(self, c):
        code = getattr(c, "code", c)
        return LieElement(self.owner, self.owner.field.vscale(int(code), self.vector))

    def bracket(self, other):
        return bracket(self, other)

    def pmap(self, n=1):
        return pmap(self, n)

    def is_zero(self):
        return not self.vector.any()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.owner.key == other.owner.key and np.array_equal(self.vector, other.vector)

    def __hash__(self):
        return hash((self.owner.key, tuple(int(c) for c in self.vector)))

    @property
    def min_weight(self):
        support = np.flatnonzero(self.vector)
        return int(self.owner.weights[support].min()) if support.size else None

    def is_ordinary(self):
        """True, pokud má nulové souřadnice na všech p-mocninách (pexp ≥ 1)."""
        return all(self.owner.basis[i].pexp == 0 for i in np.flatnonzero(self.vector))

    def power_component(self):
        """Souřadnice na p-mocninách jednotlivých generátorů: {(jméno, e): kód}."""
        out = {}
        for i in np.flatnonzero(self.vector):
            b = self.owner.basis[i]
            if b.is_power_component:
                out[(self.owner.generators[b.word[0]], b.pexp)] = int(self.vector[i])
        return out

    def __repr__(self):
        return format_expr(self)


def bracket(u, v):
    """
    [u, v] v kanonických souřadnicích.

    Výjimky:
        OwnerMismatch: prvky z různých algeber.
    """
    u._check(v)
    return LieElement(u.owner, u.owner.bracket_vectors(u.vector, v.vector))


def pmap(u, n=1):
    """n-tá iterace p-zobrazení u^[p^n] (asociativní mocnina, přetečení váhy dává 0)."""
    if n < 1:
        raise ValueError(f"Iterace p-zobrazení vyžaduje n ≥ 1, zadáno {n}.")
    vector = u.vector
    for _ in range(n):
        vector = u.owner.assoc_pmap_vector(vector)
    return LieElement(u.owner, vector)


def ad_power(g, h, n):
    """(ad g)^n(h)."""
    out = h
    for _ in range(n):
        out = bracket(g, out)
    return out


def substitute(u, images):
    """
    Aplikuje endomorfismus zadaný obrazy generátorů.

    Parametry:
        u (LieElement): prvek zdrojové algebry.
        images (dict[str, LieElement]): obraz každého generátoru, všechny v téže cílové algebře.

    Výjimky:
        UnknownGenerator: chybí obraz některého generátoru.
        OwnerMismatch: obrazy nejsou ve stejné algebře.
    """
    source = u.owner
    missing = [g for g in source.generators if g not in images]
    if missing:
        raise UnknownGenerator(f"Chybí obrazy generátorů {missing}.")
    target = images[source.generators[0]].owner
    for image in images.values():
        if image.owner.key != target.key:
            raise OwnerMismatch("Obrazy generátorů patří do různých algeber.")

    cache = {}

    def word_image(word):
        if word not in cache:
            if len(word) == 1:
                cache[word] = images[source.generators[word[0]]]
            else:
                a, b = _standard_factorization(word, source._lyndon_set)
                cache[word] = bracket(word_image(a), word_image(b))
        return cache[word]

    out = target.zero()
    for i in np.flatnonzero(u.vector):
        b = source.basis[i]
        image = word_image(b.word)
        if b.pexp:
            image = pmap(image, b.pexp)
        out = out + image.scale(u.vector[i])
    return out


def format_expr(u):
    """Kanonický text prvku: součet (sc c bázový_výraz) v pořadí báze."""
    A = u.owner
    terms = []
    for i in np.flatnonzero(u.vector):
        expr = A.basis_expr(i)
        c = int(u.vector[i])
        terms.append(expr if c == 1 else Sc(c, expr))
    if not terms:
        return format_tree(Sc(0, Gen(A.generators[0])), A.field)
    if len(terms) == 1:
        return format_tree(terms[0], A.field)
    return format_tree(Sum(tuple(terms)), A.field)


def parse_expr(text, owner):
    """
    Převede S-výraz na prvek algebry `owner`.

    Výjimky:
        ParseError: syntaktická chyba (s pozicí).
        UnknownGenerator: neznámé jméno generátoru.
    """
    tree = parse_tree(text, owner.field, owner.generators)
    return evaluate(tree, owner)
