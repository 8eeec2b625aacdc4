"""
Modul s třídou `FdSubspace`: přesný podprostor konečněrozměrné algebry v redukovaném
řádkově odstupňovaném tvaru (RREF) nad F_{p^k}.

Pivot řádku je jeho první nenulová souřadnice. Protože je báze algebry seřazena
podle váhy, počet pivotů dané váhy odpovídá dimenzi příslušné složky asociovaného
graduovaného prostoru.

Řádky jsou uloženy v pořadí přidání v matici, jejíž kapacita se při zaplnění
zdvojnásobí. V RREF má každý řádek nuly ve všech cizích pivotních sloupcích,
takže redukce vektoru je jediné odečtení v[pivoty] · řádky; nad prvotělesem
se provádí maticově v numpy.
"""
import numpy as np

_INITIAL_ROWS = 16


def _combo_axpy(acc, combo, c, field):
    if c == 0:
        return acc
    for label, v in combo.items():
        value = field.add(acc.get(label, 0), field.mul(c, v))
        if value:
            acc[label] = value
        else:
            acc.pop(label, None)
    return acc


class FdSubspace:
    """
    Podprostor nad bázovými souřadnicemi algebry `owner`.

    Parametry:
        owner: algebra s atributy `dim`, `field` a `weights`.
        track (bool): zda si řádky pamatují kombinaci přidaných vektorů
            (potřebné pro zpětné vyjádření prvku přes generátory).
    """

    def __init__(self, owner, track=False):
        self.owner = owner
        self.field = owner.field
        self.track = track
        self._mat = np.zeros((min(max(owner.dim, 1), _INITIAL_ROWS), owner.dim), dtype=np.int64)
        self._piv = []
        self._combos = []
        self.labels = []
        self._sorted = None

    # --------------------------------------------------------------
    # konstrukce

    @classmethod
    def span(cls, owner, vectors):
        space = cls(owner)
        for v in vectors:
            space.add(v)
        return space

    @classmethod
    def full(cls, owner):
        return cls.span(owner, (owner.basis_vector(i) for i in range(owner.dim)))

    def copy(self):
        clone = FdSubspace(self.owner, self.track)
        clone._mat = self._mat.copy()
        clone._piv = list(self._piv)
        clone._combos = [dict(c) for c in self._combos]
        clone.labels = list(self.labels)
        return clone

    # --------------------------------------------------------------
    # základní vlastnosti

    @property
    def dim(self):
        return len(self._piv)

    @property
    def codim(self):
        return self.owner.dim - len(self._piv)

    def _order(self):
        if self._sorted is None:
            self._sorted = sorted(range(len(self._piv)), key=self._piv.__getitem__)
        return self._sorted

    @property
    def pivots(self):
        return [self._piv[k] for k in self._order()]

    @property
    def rows(self):
        """Řádky RREF seřazené podle pivotního sloupce."""
        return [self._mat[k].copy() for k in self._order()]

    @property
    def combos(self):
        return [self._combos[k] for k in self._order()]

    def matrix(self):
        return self._mat[self._order()] if self._piv else np.zeros((0, self.owner.dim), dtype=np.int64)

    def _reduce(self, vector, combo=None, sign=-1):
        """
        Odečte od vektoru jeho složky v podprostoru. Pokud je zadán `combo`,
        přičte do něj sign · (koeficient řádku) · (kombinace řádku).
        """
        F = self.field
        v = np.array(vector, dtype=np.int64)
        n = len(self._piv)
        if n == 0:
            return v
        coeffs = v[self._piv]
        if not coeffs.any():
            return v
        if F.k == 1 and combo is None:
            return (v - coeffs @ self._mat[:n]) % F.p
        for k in np.flatnonzero(coeffs):
            c = coeffs[k]
            v = F.vaxpy(v, F.neg(c), self._mat[k])
            if combo is not None:
                _combo_axpy(combo, self._combos[k], F.neg(c) if sign < 0 else c, F)
        return v

    def reduce(self, vector):
        """Zbytek vektoru po redukci (nulový na všech pivotních sloupcích)."""
        return self._reduce(vector)

    def contains(self, vector):
        return not self._reduce(vector).any()

    def add(self, vector, label=None):
        """
        Přidá vektor do podprostoru.

        Vrací:
            bool: True, pokud vektor zvětšil dimenzi.
        """
        F = self.field
        combo = {len(self.labels): 1} if self.track else None
        v = self._reduce(vector, combo)
        nonzero = np.flatnonzero(v)
        if nonzero.size == 0:
            return False
        col = int(nonzero[0])
        inv = F.inv(v[col])
        v = F.vscale(inv, v)
        n = len(self._piv)
        column = self._mat[:n, col].copy()
        if column.any():
            if F.k == 1 and not self.track:
                self._mat[:n] = (self._mat[:n] - np.outer(column, v)) % F.p
            else:
                for k in np.flatnonzero(column):
                    neg = F.neg(column[k])
                    self._mat[k] = F.vaxpy(self._mat[k], neg, v)
                    if self.track:
                        _combo_axpy(self._combos[k], _combo_axpy({}, combo, inv, F), neg, F)
        if n == len(self._mat):
            self._grow()
        self._mat[n] = v
        self._piv.append(col)
        if self.track:
            self._combos.append(_combo_axpy({}, combo, inv, F))
            self.labels.append(label)
        self._sorted = None
        return True

    def _grow(self):
        """Zdvojnásobí kapacitu matice řádků (nejvýše na dimenzi algebry)."""
        rows = min(max(2 * len(self._mat), 1), max(self.owner.dim, 1))
        grown = np.zeros((rows, self.owner.dim), dtype=np.int64)
        grown[: len(self._mat)] = self._mat
        self._mat = grown

    def express(self, vector):
        """
        Vyjádří vektor jako kombinaci přidaných (značených) vektorů.

        Vrací:
            dict | None: {index_značky: kód} nebo None, pokud vektor v podprostoru neleží.
        """
        if not self.track:
            raise ValueError("Podprostor nesleduje kombinace přidaných vektorů.")
        combo = {}
        v = self._reduce(vector, combo, sign=1)
        if v.any():
            return None
        return combo

    # --------------------------------------------------------------
    # porovnání

    def issubset(self, other):
        return all(other.contains(self._mat[k]) for k in range(len(self._piv)))

    def __eq__(self, other):
        if not isinstance(other, FdSubspace):
            return NotImplemented
        if self.owner.dim != other.owner.dim or self.pivots != other.pivots:
            return False
        return np.array_equal(self.matrix(), other.matrix())

    def __hash__(self):
        return hash((self.owner.dim, tuple(self.pivots)))

    def sum_with(self, other):
        out = FdSubspace.span(self.owner, self.rows)
        for row in other.rows:
            out.add(row)
        return out

    def intersection_dimension(self, other):
        """dim(U ∩ V) = dim U + dim V - dim(U + V)."""
        return self.dim + other.dim - self.sum_with(other).dim

    # --------------------------------------------------------------
    # popis

    def complement_indices(self):
        """Nepivotní sloupce; jejich jednotkové vektory doplňují podprostor na celý prostor."""
        pivots = set(self._piv)
        return [i for i in range(self.owner.dim) if i not in pivots]

    def graded_profile(self, max_weight=None):
        """Počty pivotů po vahách 1..max_weight."""
        weights = self.owner.weights
        top = max_weight
        if top is None:
            top = int(weights.max()) if len(weights) else 0
        profile = [0] * top
        for col in self._piv:
            w = int(weights[col])
            if 1 <= w <= top:
                profile[w - 1] += 1
        return profile

    def report(self):
        return {
            "dimension": self.dim,
            "codimension": self.codim,
            "graded_profile": self.graded_profile(),
        }

    def __repr__(self):
        return f"FdSubspace(dim={self.dim}, codim={self.codim})"
