"""
Modul s výpočetním jádrem nad konečněrozměrnými (zkrácenými a podílovými) algebrami.

Obsahuje:
    - Uzávěry `subalgebra_closure`, `ideal_closure`, `ideal_of_subalgebra_closure`
      a `tracked_subalgebra_closure` (se stromy výrazů).
    - Množinu generátorů Z_p (`zp_generators`, `check_zp`) a doplněk `complement_basis`.
    - Filtrační ideály (`filtration_ideal`) a inkluzi ideálů mocnin
      (`check_power_ideal_inclusion`).
    - Odvozenou p-řadu (`derived_p_series`, `find_d_for_subspace`).
    - Podílové algebry (`FdAlgebra`, `quotient_algebra`), `nil_index`,
      `lower_central_series` a `is_nilpotent`.

Algebra je libovolný objekt s atributy `dim`, `field`, `p`, `weights`, `ad_generators`
a metodami `zeros`, `basis_vector`, `bracket_vectors`, `pmap_vector`, `element`.
"""
import itertools
import logging
from collections import deque

import numpy as np

from errors import (
    AlgebraError,
    IterationBoundExceeded,
    NotAnIdeal,
    NotInIdeal,
    PreconditionFailed,
    SpanningFailure,
)
from freerla.expressions import Br, Pp
from quotient.subspace import FdSubspace

algebra_logger = logging.getLogger("algebra_logger")


def as_vector(g):
    """Souřadnicový vektor prvku (LieElement nebo numpy pole)."""
    vector = getattr(g, "vector", g)
    return np.asarray(vector, dtype=np.int64)


def pmap_power(algebra, vector, n):
    """vector^[p^n] pomocí p-zobrazení algebry; n = 0 vrací vektor beze změny."""
    v = as_vector(vector)
    for _ in range(n):
        if not v.any():
            break
        v = algebra.pmap_vector(v)
    return v


def ad_power_vector(algebra, t, v, n):
    for _ in range(n):
        if not v.any():
            break
        v = algebra.bracket_vectors(t, v)
    return v


# ----------------------------------------------------------------------
# uzávěry


def _closure(algebra, seeds, partners, with_members, track=False):
    """
    Worklistový uzávěr: nezávislé vygenerované vektory se závorkují s `partners`
    (a případně s dříve přidanými členy) a posílají přes p-zobrazení.
    """
    space = FdSubspace(algebra, track=track)
    members = []
    queue = deque(seeds)
    steps = 0
    while queue:
        v, label = queue.popleft()
        steps += 1
        if not v.any() or not space.add(v, label):
            continue
        if with_members:
            for m, m_label in members:
                queue.append(
                    (algebra.bracket_vectors(m, v), Br(m_label, label) if track else None)
                )
        for partner in partners:
            queue.append((algebra.bracket_vectors(partner, v), None))
        members.append((v, label))
        queue.append((algebra.pmap_vector(v), Pp(label, 1) if track else None))
    algebra_logger.debug("Closure finished after %d candidates: dim=%d", steps, space.dim)
    return space


def subalgebra_closure(algebra, gens):
    """Nejmenší restriktivní podalgebra obsahující `gens`."""
    seeds = [(as_vector(g), None) for g in gens]
    space = _closure(algebra, seeds, [], with_members=True)
    algebra_logger.info("Subalgebra closure: dim=%d codim=%d", space.dim, space.codim)
    return space


def tracked_subalgebra_closure(algebra, labelled_gens):
    """
    Podalgebra generovaná značenými prvky, kde každý přidaný vektor nese strom výrazu.

    Parametry:
        labelled_gens (list[tuple]): dvojice (prvek, výraz).

    Vrací:
        FdSubspace: podprostor se sledováním; `labels[i]` je výraz i-tého přidaného vektoru.
    """
    seeds = [(as_vector(g), label) for g, label in labelled_gens]
    return _closure(algebra, seeds, [], with_members=True, track=True)


def ideal_closure(algebra, gens):
    """Restriktivní ideál algebry generovaný `gens` (závorky s generátory algebry a p-mapa)."""
    partners = [algebra.basis_vector(i) for i in algebra.ad_generators]
    seeds = [(as_vector(g), None) for g in gens]
    space = _closure(algebra, seeds, partners, with_members=False)
    algebra_logger.info("Ideal closure: dim=%d codim=%d", space.dim, space.codim)
    return space


def ideal_of_subalgebra_closure(H, gens):
    """Restriktivní ideál podalgebry H generovaný `gens` (závorky s řádky H a p-mapa)."""
    algebra = H.owner
    seeds = [(as_vector(g), None) for g in gens]
    space = _closure(algebra, seeds, list(H.rows), with_members=False)
    algebra_logger.info("Ideal-of-subalgebra closure: dim=%d inside dim=%d", space.dim, H.dim)
    return space


def is_restricted_ideal(algebra, I, exhaustive=False):
    """
    Ověří, že I je uzavřený na závorky s algebrou a na p-zobrazení.

    Parametry:
        exhaustive (bool): závorkovat se všemi bázovými prvky, ne jen s generátory.
    """
    indices = range(algebra.dim) if exhaustive else algebra.ad_generators
    partners = [algebra.basis_vector(i) for i in indices]
    for row in I.rows:
        if not I.contains(algebra.pmap_vector(row)):
            return False
        for partner in partners:
            if not I.contains(algebra.bracket_vectors(partner, row)):
                return False
    return True


def is_subalgebra(algebra, S):
    for a, b in itertools.combinations(S.rows, 2):
        if not S.contains(algebra.bracket_vectors(a, b)):
            return False
    return all(S.contains(algebra.pmap_vector(row)) for row in S.rows)


# ----------------------------------------------------------------------
# generátory Z_p


def complement_basis(algebra, V):
    """Jednotkové vektory nepivotních sloupců: kanonický doplněk V na celou algebru."""
    return [algebra.element(algebra.basis_vector(i)) for i in V.complement_indices()]


def zp_generators(G, N_ideal, g, T):
    """
    Množina Z_p = {(ad t_1)^l_1 ... (ad t_s)^l_s (g) : 0 ≤ l_i < p} v lexikografickém pořadí exponentů.

    Parametry:
        G: algebra.
        N_ideal (FdSubspace): ideál obsahující g.
        g: prvek N_ideal.
        T (sekvence prvků): uspořádaná množina, jejíž lineární obal spolu s g a N_ideal dává G.

    Výjimky:
        NotInIdeal: g neleží v N_ideal.
        SpanningFailure: T ∪ span{g} ∪ N_ideal negeneruje G jako vektorový prostor.
    """
    gv = as_vector(g)
    if not N_ideal.contains(gv):
        raise NotInIdeal("Prvek g neleží v ideálu N.")
    tvs = [as_vector(t) for t in T]
    span = N_ideal.sum_with(FdSubspace.span(G, tvs + [gv]))
    if span.dim != G.dim:
        raise SpanningFailure(
            f"T spolu s g a N generuje jen {span.dim} z {G.dim} dimenzí."
        )
    out = []
    for exps in itertools.product(range(G.p), repeat=len(tvs)):
        v = gv
        for t, l in reversed(list(zip(tvs, exps))):
            v = ad_power_vector(G, t, v, l)
        out.append(G.element(v))
    return out


def check_zp(G, N_ideal, g, T, drop_last=False):
    """
    Porovná ideál G generovaný g s ideálem N generovaným Z_p.

    Parametry:
        drop_last (bool): vynechá poslední nenulový prvek Z_p (svědek ostrosti).

    Vrací:
        bool: True při rovnosti obou uzávěrů.
    """
    Z = zp_generators(G, N_ideal, g, T)
    if drop_last:
        nonzero = [i for i, z in enumerate(Z) if as_vector(z).any()]
        if nonzero:
            Z = Z[: nonzero[-1]] + Z[nonzero[-1] + 1:]
    lhs = ideal_closure(G, [g])
    rhs = ideal_of_subalgebra_closure(N_ideal, Z)
    result = lhs == rhs
    algebra_logger.info(
        "Generator-set check: |Z_p|=%d lhs=%d rhs=%d result=%s", len(Z), lhs.dim, rhs.dim, result
    )
    return result


# ----------------------------------------------------------------------
# filtrace a inkluze ideálů mocnin


def filtration_ideal(A, f):
    """I_f: lineární obal bázových prvků váhy ≥ f."""
    if f < 1:
        raise ValueError(f"Filtrace musí být alespoň 1, zadáno {f}.")
    return FdSubspace.span(A, (A.basis_vector(i) for i in range(A.dim) if A.weights[i] >= f))


def check_power_ideal_inclusion(G, H, g, n):
    """
    Ověří I ⊆ J pro I = ideál G generovaný g^[p^n] a J = ideál H generovaný g^[p^(n-d)].

    Parametry:
        G: algebra.
        H (FdSubspace): restriktivní ideál G kodimenze d.
        g: prvek H.
        n (int): exponent, n ≥ d.

    Výjimky:
        PreconditionFailed: n < d.
        NotInIdeal: g neleží v H.
    """
    d = H.codim
    if n < d:
        raise PreconditionFailed(f"Exponent n={n} je menší než kodimenze d={d}.")
    gv = as_vector(g)
    if not H.contains(gv):
        raise NotInIdeal("Prvek g neleží v ideálu H.")
    I = ideal_closure(G, [pmap_power(G, gv, n)])
    J = ideal_of_subalgebra_closure(H, [pmap_power(G, gv, n - d)])
    result = I.issubset(J)
    algebra_logger.info(
        "Power-ideal inclusion: d=%d n=%d dim I=%d dim J=%d result=%s", d, n, I.dim, J.dim, result
    )
    return result


# ----------------------------------------------------------------------
# odvozená p-řada


def derived_p_series(A, depth=None):
    """
    D^0 = A, D^i = [D^(i-1), D^(i-1)] + (D^(i-1))^[p], uzavřené na podalgebru.

    Výpočet končí po `depth` krocích, při ustálení nebo po dosažení nuly.

    Výjimky:
        NotAnIdeal: některý člen řady není ideálem (vnitřní nekonzistence).
    """
    series = [FdSubspace.full(A)]
    while depth is None or len(series) <= depth:
        prev = series[-1]
        gens = [A.bracket_vectors(a, b) for a, b in itertools.combinations(prev.rows, 2)]
        gens += [A.pmap_vector(row) for row in prev.rows]
        D = subalgebra_closure(A, gens)
        if not is_restricted_ideal(A, D):
            raise NotAnIdeal(f"Člen D^{len(series)} odvozené p-řady není ideál.")
        if D == prev:
            break
        series.append(D)
        if D.dim == 0:
            break
    algebra_logger.info("Derived p-series dims: %s", [D.dim for D in series])
    return series


def find_d_for_subspace(A, V):
    """
    Nejmenší d s D^d(A) ∩ V = 0.

    Výjimky:
        IterationBoundExceeded: řada se ustálí dříve, než je průnik nulový.
    """
    if V.dim == 0:
        return 0
    series = derived_p_series(A)
    for d, D in enumerate(series):
        if D.intersection_dimension(V) == 0:
            return d
    raise IterationBoundExceeded(
        "Odvozená p-řada se ustálila s nenulovým průnikem.", len(series)
    )


# ----------------------------------------------------------------------
# podílové algebry


class FdAlgebra:
    """
    Podílová algebra parent / ideal na doplňkové bázi (nepivotní sloupce ideálu).

    Atributy:
        bracket_table (ndarray dim×dim×dim): strukturní konstanty.
        pmap_table (ndarray dim×dim): obrazy bázových vektorů p-zobrazením.

    P-zobrazení obecného vektoru se počítá zvednutím do rodičovské algebry,
    kde platí Jacobsonova formule, a redukcí zpět.
    """

    def __init__(self, parent, ideal):
        self.parent = parent
        self.ideal = ideal
        self.field = parent.field
        self.p = parent.p
        self.complement = ideal.complement_indices()
        self.dim = len(self.complement)
        self.weights = np.asarray(parent.weights, dtype=np.int64)[self.complement]
        self.ad_generators = list(range(self.dim))
        self.key = ("quotient", id(self))

        n = self.dim
        F = self.field
        self.bracket_table = np.zeros((n, n, n), dtype=np.int64)
        self.pmap_table = np.zeros((n, n), dtype=np.int64)
        lifts = [parent.basis_vector(c) for c in self.complement]
        for i in range(n):
            self.pmap_table[i] = self.project(parent.pmap_vector(lifts[i]))
            for j in range(i + 1, n):
                b = self.project(parent.bracket_vectors(lifts[i], lifts[j]))
                self.bracket_table[i, j] = b
                self.bracket_table[j, i] = F.vneg(b)

    def project(self, parent_vector):
        return self.ideal.reduce(parent_vector)[self.complement]

    def lift(self, vector):
        out = self.parent.zeros()
        out[self.complement] = vector
        return out

    def zeros(self):
        return np.zeros(self.dim, dtype=np.int64)

    def basis_vector(self, i):
        v = self.zeros()
        v[i] = 1
        return v

    def element(self, vector):
        return np.asarray(vector, dtype=np.int64)

    def bracket_vectors(self, u, v):
        F = self.field
        out = self.zeros()
        for i in np.flatnonzero(u):
            for j in np.flatnonzero(v):
                if i != j:
                    out = F.vaxpy(out, F.mul(u[i], v[j]), self.bracket_table[i, j])
        return out

    def pmap_vector(self, u):
        if not np.any(u):
            return self.zeros()
        return self.project(self.parent.pmap_vector(self.lift(u)))

    def check_main_identity(self):
        """[e_i^[p], e_j] = (ad e_i)^p (e_j) pro všechny dvojice bázových vektorů."""
        for i in range(self.dim):
            ei = self.basis_vector(i)
            for j in range(self.dim):
                ej = self.basis_vector(j)
                lhs = self.bracket_vectors(self.pmap_table[i], ej)
                rhs = ad_power_vector(self, ei, ej, self.p)
                if not np.array_equal(lhs, rhs):
                    return False
        return True

    def __repr__(self):
        return f"FdAlgebra(dim={self.dim})"


def quotient_algebra(A, I):
    """
    Sestaví podílovou algebru A / I.

    Výjimky:
        NotAnIdeal: I není restriktivní ideál A.
        AlgebraError: podíl nesplňuje hlavní identitu (vnitřní nekonzistence).
    """
    if not is_restricted_ideal(A, I):
        raise NotAnIdeal("Podprostor není restriktivní ideál, podíl nelze vytvořit.")
    Q = FdAlgebra(A, I)
    if not Q.check_main_identity():
        raise AlgebraError("Podílová algebra porušuje hlavní identitu [g^[p], h] = (ad g)^p(h).")
    algebra_logger.info("Quotient algebra built: dim=%d (ideal dim=%d)", Q.dim, I.dim)
    return Q


def nil_index(Q, g):
    """
    Nejmenší p^n s g^[p^n] = 0; nulový prvek má nil-index 1.

    Výjimky:
        IterationBoundExceeded: po dim(Q) + 1 iteracích není mocnina nulová.
    """
    v = as_vector(g)
    if not v.any():
        return 1
    bound = Q.dim + 1
    for n in range(1, bound + 1):
        v = Q.pmap_vector(v)
        if not v.any():
            return Q.p**n
    raise IterationBoundExceeded(
        f"Prvek není nilpotentní během {bound} iterací p-zobrazení.", bound
    )


def lower_central_series(Q):
    """C^1 = Q, C^(i+1) = [Q, C^i] (obyčejná Lieova struktura, bez p-zobrazení)."""
    series = [FdSubspace.full(Q)]
    basis = [Q.basis_vector(i) for i in range(Q.dim)]
    while series[-1].dim and len(series) <= Q.dim + 1:
        prev = series[-1]
        nxt = FdSubspace(Q)
        for row in prev.rows:
            for e in basis:
                nxt.add(Q.bracket_vectors(e, row))
        if nxt == prev:
            break
        series.append(nxt)
    return series


def is_nilpotent(Q):
    return lower_central_series(Q)[-1].dim == 0
