DEFAULT_CAP = 20000  # Maximální počet bázových prvků zkrácené algebry
DEFAULT_SEED = 7  # Výchozí seed pro náhodné testy vlastností
FIELD_SIZE_LIMIT = 2**16  # Maximální řád tělesa F_{p^k}
DEFAULT_OUTPUT_FORMAT = "json"  # Výstupní formát CLI (json / csv)
DEFAULT_FIELD = "gf(2)"  # Výchozí těleso
DEFAULT_GENERATORS = "x,y"  # Výchozí generátory oddělené čárkou
DEFAULT_MAX_DEGREE = 6  # Výchozí stupeň zkrácení N
DEFAULT_LOG_FILE = "rlak.log"  # Soubor pro logy
DEFAULT_LOG_LEVEL = "INFO"  # Úroveň logování

SUITES = [  # Názvy ověřovacích sad, v tomto pořadí se i vypisují
    "certificate",
    "derived",
    "dims",
    "generator_set",
    "jacobson",
    "kukin",
    "main_identity",
    "normalize",
    "ore",
    "power_inclusion",
]

CHECK_ANCHORS = {  # Textové kotvy ověřovaných tvrzení
    "dims": "restricted PBW dimension count",
    "main_identity": "main identity [g^[p],h] = (ad g)^p(h)",
    "jacobson": "Jacobson sum formula (x+y)^[p] = x^[p] + y^[p] + w(x,y)",
    "ore": "division algorithm and diagonalization over the twisted ring",
    "normalize": "normalization: one generator avoids all power components",
    "kukin": "free rank p^d(r-1)+1 of a codimension-d subalgebra",
    "generator_set": "ideal generated by g equals ideal of N generated by Z_p",
    "power_inclusion": "ideal of g^[p^n] inside ideal of H generated by g^[p^(n-d)]",
    "derived": "derived p-series quotients are nilpotent",
    "certificate": "largeness count (n-m-1)p^k - (n-1)p^q",
    "zp-check": "ideal generated by g equals ideal of N generated by Z_p",
    "power-check": "ideal of g^[p^n] inside ideal of H generated by g^[p^(n-d)]",
    "kukin-check": "free rank p^d(r-1)+1 of a codimension-d subalgebra",
}

SUITE_SIZES = {  # Počty náhodných pokusů v jednotlivých sadách
    "main_identity": 200,
    "jacobson": 200,
    "ore_division": 1000,
    "ore_matrices": 100,
    "normalize": 50,
    "find_d": 20,
}
