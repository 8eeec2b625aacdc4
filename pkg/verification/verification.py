"""
Modul s ověřovacími sadami (akceptační běh `rlak verify`).

Každá sada vrací slovník {"suite", "anchor", "seed", "passed", "failed", "ok"} a případné
podrobnosti. Náhodné sady používají `random.Random(seed)`, takže jsou opakovatelné.
Sady lze spouštět paralelně (joblib); výsledky se vždy řadí podle jména sady.
"""
import logging
import random
import sys

from joblib import Parallel, delayed
from tqdm import tqdm

from config import CHECK_ANCHORS, DEFAULT_CAP, SUITE_SIZES, SUITES
from errors import HypothesisFailed
from field.field import FiniteField, parse_field
from freerla.expressions import Br, Gen, Pp, Sc, Sum
from freerla.freerla import (
    ad_power,
    basis_counts,
    build_algebra,
    enumerate_basis,
    graded_dims,
    lyndon_counts,
    series_oracle_dims,
)
from orepoly.orepoly import OreMatrix, OrePoly, diagonalize, ore_divide, ore_mul, replay
from presentation.certificates import (
    bp_certificate,
    check_free_rank_formula,
    ideal_free_generators,
    largeness_certificate,
)
from presentation.presentation import (
    Presentation,
    check_presentation_equivalence,
    normalize,
    relator_power_components,
)
from quotient.quotient import (
    check_power_ideal_inclusion,
    check_zp,
    complement_basis,
    derived_p_series,
    filtration_ideal,
    find_d_for_subspace,
    ideal_closure,
    is_nilpotent,
    quotient_algebra,
)
from quotient.subspace import FdSubspace

algebra_logger = logging.getLogger("algebra_logger")

GF4_LITERAL = "gf(4; 1,1,1)"


def _result(name, seed, checks, **details):
    passed = sum(1 for c in checks if c)
    failed = len(checks) - passed
    out = {
        "suite": name,
        "anchor": CHECK_ANCHORS[name],
        "seed": seed,
        "passed": passed,
        "failed": failed,
        "ok": failed == 0,
    }
    out.update(details)
    return out


def _size(sizes, key):
    if sizes and key in sizes:
        return sizes[key]
    return SUITE_SIZES[key]


# ----------------------------------------------------------------------
# dimenze a identity


def suite_dims(seed, sizes=None):
    checks = []
    max_n = 12
    for r in (1, 2, 3, 4):
        lyndon = lyndon_counts(r, max_n)
        for p in (2, 3, 5):
            for N in range(1, max_n + 1):
                witt = graded_dims(r, p, N)
                checks.append(witt == series_oracle_dims(r, p, N))
                checks.append(basis_counts(lyndon, p, N) == witt)
                if sum(witt) <= DEFAULT_CAP:
                    counts = [0] * N
                    for b in enumerate_basis(r, p, N):
                        counts[b.weight - 1] += 1
                    checks.append(counts == witt)
    checks.append(graded_dims(2, 2, 6) == [2, 3, 2, 6, 6, 11])
    return _result("dims", seed, checks)


def _identity_algebras():
    return [
        build_algebra(FiniteField(2), ("x", "y"), 8),
        build_algebra(FiniteField(3), ("x", "y"), 9),
    ]


def suite_main_identity(seed, sizes=None):
    rng = random.Random(seed)
    algebras = _identity_algebras()
    trials = _size(sizes, "main_identity")
    checks = []
    for i in range(trials):
        A = algebras[i % 2]
        g = A.random_element(rng, max_weight=2)
        h = A.random_element(rng, max_weight=3)
        checks.append(g.pmap().bracket(h) == ad_power(g, h, A.p))
    return _result("main_identity", seed, checks, trials=trials)


def suite_jacobson(seed, sizes=None):
    rng = random.Random(seed)
    algebras = _identity_algebras()
    trials = _size(sizes, "jacobson")
    checks = []
    for i in range(trials):
        A = algebras[i % 2]
        u = A.random_element(rng, max_weight=3)
        v = A.random_element(rng, max_weight=3)
        defect = (u + v).pmap() - u.pmap() - v.pmap()
        checks.append(defect.is_ordinary())
    return _result("jacobson", seed, checks, trials=trials)


# ----------------------------------------------------------------------
# Ore polynomy


def random_orepoly(field, rng, max_degree, nonzero=False):
    while True:
        degree = rng.randint(0, max_degree)
        f = OrePoly(field, tuple(field.random_code(rng) for _ in range(degree + 1)))
        if not nonzero or not f.is_zero():
            return f


def random_ore_matrix(field, rng, max_size=4, max_degree=4, density=0.7):
    m = rng.randint(1, max_size)
    n = rng.randint(1, max_size)
    zero = OrePoly.zero(field)
    rows = [
        [random_orepoly(field, rng, max_degree) if rng.random() < density else zero for _ in range(n)]
        for _ in range(m)
    ]
    return OreMatrix(field, rows)


def _division_ok(f, g, side):
    q, r = ore_divide(f, g, side)
    product = ore_mul(q, g) if side == "right" else ore_mul(g, q)
    small = r.is_zero() or r.degree < g.degree
    return product + r == f and small


def _diagonalization_ok(M):
    D, row_ops, col_ops = diagonalize(M)
    rank = D.diagonal_rank()
    monic = all(
        D[i, i].lead == 1 for i in range(min(D.rows, D.cols)) if not D[i, i].is_zero()
    )
    return (
        D.is_diagonal()
        and replay(M, row_ops + col_ops) == D
        and rank <= min(M.rows, M.cols)
        and monic
    )


def suite_ore(seed, sizes=None):
    rng = random.Random(seed)
    fields = [FiniteField(2), parse_field(GF4_LITERAL)]
    divisions = _size(sizes, "ore_division")
    matrices = _size(sizes, "ore_matrices")
    checks = []
    for i in range(divisions):
        F = fields[i % 2]
        f = random_orepoly(F, rng, 8)
        g = random_orepoly(F, rng, 4, nonzero=True)
        checks.append(_division_ok(f, g, "right") and _division_ok(f, g, "left"))
    for i in range(matrices):
        checks.append(_diagonalization_ok(random_ore_matrix(fields[i % 2], rng)))
    return _result("ore", seed, checks, divisions=divisions, matrices=matrices)


# ----------------------------------------------------------------------
# prezentace


def worked_example():
    """⟨x,y | x^[2] + y^[2] + [x,y]⟩ nad F_2."""
    relator = Sum((Pp(Gen("x"), 1), Pp(Gen("y"), 1), Br(Gen("x"), Gen("y"))))
    return Presentation(FiniteField(2), ("x", "y"), (relator,))


def random_relator(field, names, rng, terms=3):
    out = []
    for _ in range(rng.randint(1, terms)):
        kind = rng.choice(("gen", "power", "bracket"))
        a = Gen(rng.choice(names))
        if kind == "power":
            term = Pp(a, 1)
        elif kind == "bracket":
            b = rng.choice([g for g in names if g != a.name])
            term = Br(a, Gen(b))
        else:
            term = a
        c = field.random_code(rng, nonzero=True)
        out.append(term if c == 1 else Sc(c, term))
    return out[0] if len(out) == 1 else Sum(tuple(out))


def random_presentation(field, rng, max_generators=4):
    n = rng.randint(2, max_generators)
    m = rng.randint(1, n - 1)
    names = tuple(f"x{i}" for i in range(1, n + 1))
    return Presentation(field, names, tuple(random_relator(field, names, rng) for _ in range(m)))


def _normalization_ok(P, N):
    Q, omitted = normalize(P)
    components = relator_power_components(Q)
    avoided = all(name not in c for name in omitted for c in components)
    diagonal = all(set(c) <= {Q.generators[i]} for i, c in enumerate(components))
    return bool(omitted) and avoided and diagonal and check_presentation_equivalence(P, Q, N)


def _normalize_fields():
    return [
        (FiniteField(2), 6),
        (FiniteField(3), 4),
        (parse_field("gf(4; 1,1,1)"), 4),
        (FiniteField(5), 4),
    ]


def suite_normalize(seed, sizes=None):
    rng = random.Random(seed)
    fields = _normalize_fields()
    trials = _size(sizes, "normalize")
    Q, omitted = normalize(worked_example())
    checks = [relator_power_components(Q) == [{"x": "[1]*t"}] and list(omitted) == ["y"]]
    for i in range(trials):
        F, N = fields[i % len(fields)]
        checks.append(_normalization_ok(random_presentation(F, rng), N))
    return _result("normalize", seed, checks, trials=trials, fields=[F.literal for F, _ in fields])


def suite_kukin(seed, sizes=None):
    checks = []
    reports = []
    for r, p, k in ((2, 2, 1), (2, 2, 2), (3, 2, 1), (2, 3, 1)):
        checks.append(len(ideal_free_generators(r, p, k)) == p**k * (r - 1) + 1)
        report = check_free_rank_formula(r, p, k, 8)
        checks.append(report["passed"])
        reports.append({"r": r, "p": p, "k": k, "count": report["count"]})
    return _result("kukin", seed, checks, instances=reports)


# ----------------------------------------------------------------------
# ideály


def _zp_ideals(G):
    x, y = G.generator("x"), G.generator("y")
    yield ideal_closure(G, [y])
    yield ideal_closure(G, [x.bracket(y)])
    yield filtration_ideal(G, 2)


def _zp_instances():
    for p in (2, 3):
        for N in range(2, 7):
            G = build_algebra(FiniteField(p), ("x", "y"), N)
            x, y = G.generator("x"), G.generator("y")
            candidates = (
                y,
                y.bracket(x),
                y.pmap() + x.bracket(y),
                x.bracket(y),
                x.bracket(x.bracket(y)),
                x.pmap() + x.bracket(y),
            )
            for N_ideal in _zp_ideals(G):
                T = complement_basis(G, N_ideal)
                for g in candidates:
                    if not g.is_zero() and N_ideal.contains(g.vector):
                        yield G, N_ideal, g, T


def suite_generator_set(seed, sizes=None):
    checks = []
    witnesses = 0
    for G, N_ideal, g, T in _zp_instances():
        checks.append(check_zp(G, N_ideal, g, T))
        if not check_zp(G, N_ideal, g, T, drop_last=True):
            witnesses += 1
    checks.append(witnesses > 0)
    return _result("generator_set", seed, checks, strictness_witnesses=witnesses)


def _power_inclusion_instances():
    for p, N in ((2, 4), (2, 6), (2, 8), (3, 6)):
        G = build_algebra(FiniteField(p), ("x", "y"), N)
        x, y = G.generator("x"), G.generator("y")
        for d in (1, 2):
            H = ideal_closure(G, [y, x.pmap(d)])
            if H.codim != d:
                continue
            for g in (y, y + x.bracket(y)):
                for n in (d, d + 1, d + 2):
                    yield G, H, g, n


def suite_power_inclusion(seed, sizes=None):
    checks = [check_power_ideal_inclusion(G, H, g, n) for G, H, g, n in _power_inclusion_instances()]
    return _result("power_inclusion", seed, checks)


def _random_subspace(A, rng, max_dim=3):
    V = FdSubspace(A)
    for _ in range(rng.randint(1, max_dim)):
        V.add(A.random_element(rng, density=0.3).vector)
    return V


def suite_derived(seed, sizes=None):
    rng = random.Random(seed)
    A = build_algebra(FiniteField(2), ("x", "y"), 4)
    series = derived_p_series(A)
    checks = [series[1].codim == 2]
    for D in series:
        checks.append(is_nilpotent(quotient_algebra(A, D)))
    for f in range(1, A.N + 1):
        checks.append(is_nilpotent(quotient_algebra(A, filtration_ideal(A, f))))

    B = build_algebra(FiniteField(2), ("x", "y"), 5)
    full = derived_p_series(B)
    trials = _size(sizes, "find_d")
    for _ in range(trials):
        V = _random_subspace(B, rng)
        d = find_d_for_subspace(B, V)
        minimal = d == 0 or full[d - 1].intersection_dimension(V) > 0
        checks.append(full[d].intersection_dimension(V) == 0 and minimal)
    return _result("derived", seed, checks, series_dims=[D.dim for D in series], trials=trials)


def suite_certificate(seed, sizes=None):
    cert = largeness_certificate(3, 1, 2, 0)
    checks = [cert.k == 2 and cert.difference == 2 and cert.recursion_ready]
    for n in range(2, 6):
        for m in range(0, n + 1):
            try:
                largeness_certificate(n, m, 2, 0)
                raised = False
            except HypothesisFailed:
                raised = True
            checks.append(raised == (m > n - 2))
    P = Presentation(FiniteField(2), ("x", "y", "z"), (Pp(Gen("x"), 1),))
    computed = bp_certificate(P)
    checks.append(computed.q_mode == "computed" and computed.difference > 0)
    return _result("certificate", seed, checks)


SUITE_RUNNERS = {
    "certificate": suite_certificate,
    "derived": suite_derived,
    "dims": suite_dims,
    "generator_set": suite_generator_set,
    "jacobson": suite_jacobson,
    "kukin": suite_kukin,
    "main_identity": suite_main_identity,
    "normalize": suite_normalize,
    "ore": suite_ore,
    "power_inclusion": suite_power_inclusion,
}


def run_suite(name, seed, sizes=None):
    """
    Spustí jednu sadu.

    Výjimky:
        KeyError: neznámé jméno sady.
    """
    runner = SUITE_RUNNERS[name]
    try:
        result = runner(seed, sizes)
    except Exception:
        algebra_logger.exception("Suite %s crashed.", name)
        raise
    algebra_logger.info(
        "Suite %s: passed=%d failed=%d", name, result["passed"], result["failed"]
    )
    return result


def run_suites(names, seed, jobs=1, sizes=None, progress=True):
    """
    Spustí vybrané sady (případně paralelně) a vrátí výsledky seřazené podle jména.

    Parametry:
        names (iterable[str]): jména sad nebo ["all"].
        seed (int): seed náhodných sad.
        jobs (int): počet paralelních procesů joblib.
        sizes (dict | None): přepsání počtů pokusů z `SUITE_SIZES`.
        progress (bool): ukazatel průběhu na stderr.
    """
    names = list(names)
    if "all" in names:
        names = list(SUITES)
    unknown = [n for n in names if n not in SUITE_RUNNERS]
    if unknown:
        raise ValueError(f"Neznámé sady {unknown}. Dostupné: {SUITES}.")
    tasks = tqdm(sorted(set(names)), desc="verify", file=sys.stderr, disable=not progress)
    results = Parallel(n_jobs=jobs)(delayed(run_suite)(name, seed, sizes) for name in tasks)
    return sorted(results, key=lambda r: r["suite"])
