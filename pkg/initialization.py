"""
Modul pro inicializaci běhu: načtení konfigurace z prostředí a sestavení pracovní algebry.

Obsahuje:
    - Slovník `ENV_CONFIG` s hodnotami z proměnných prostředí (soubor .env).
    - Třídu `RunConfig` s parametry jednoho běhu příkazu.
    - Funkci `build_run_config`, která spojí argumenty CLI s prostředím.
    - Funkci `initialize_algebra` pro vytvoření tělesa a zkrácené volné algebry.
"""
import logging
import os
from dataclasses import dataclass

from dotenv import load_dotenv

from config import (
    DEFAULT_CAP,
    DEFAULT_FIELD,
    DEFAULT_GENERATORS,
    DEFAULT_LOG_FILE,
    DEFAULT_LOG_LEVEL,
    DEFAULT_MAX_DEGREE,
    DEFAULT_OUTPUT_FORMAT,
    DEFAULT_SEED,
)
from errors import ResourceBound
from field.field import parse_field
from freerla.freerla import build_algebra, graded_dims

# Načtení proměnných prostředí
load_dotenv()
ENV_CONFIG = {
    "cap": int(os.getenv("RLAK_CAP", DEFAULT_CAP)),
    "log_file": os.getenv("RLAK_LOG_FILE", DEFAULT_LOG_FILE),
    "log_level": os.getenv("RLAK_LOG_LEVEL", DEFAULT_LOG_LEVEL),
    "jobs": int(os.getenv("RLAK_JOBS", "1")),
}

algebra_logger = logging.getLogger("algebra_logger")


@dataclass(frozen=True)
class RunConfig:
    """
    Parametry jednoho běhu.

    Atributy:
        field (str): literál tělesa, např. `gf(2)` nebo `gf(4; 1,1,1)`.
        generators (tuple[str]): jména generátorů.
        max_degree (int): stupeň zkrácení N.
        cap (int): maximální velikost báze.
        output_format (str): `json` nebo `csv`.
        seed (int): seed náhodných sad.
    """

    field: str = DEFAULT_FIELD
    generators: tuple = tuple(DEFAULT_GENERATORS.split(","))
    max_degree: int = DEFAULT_MAX_DEGREE
    cap: int = DEFAULT_CAP
    output_format: str = DEFAULT_OUTPUT_FORMAT
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.max_degree < 1:
            raise ValueError(f"Stupeň zkrácení musí být alespoň 1, zadáno {self.max_degree}.")
        if self.cap < 1:
            raise ValueError(f"Limit báze musí být kladný, zadáno {self.cap}.")


def _split_generators(text):
    return tuple(name.strip() for name in text.split(",") if name.strip())


def build_run_config(args, env=None):
    """
    Sestaví RunConfig z argumentů CLI; chybějící hodnoty doplní z prostředí a výchozích konstant.

    Parametry:
        args (argparse.Namespace): argumenty příkazu.
        env (dict | None): náhrada `ENV_CONFIG` (pro testy).

    Vrací:
        RunConfig: konfigurace běhu.
    """
    env = ENV_CONFIG if env is None else env
    generators = getattr(args, "generators", None) or DEFAULT_GENERATORS
    r = getattr(args, "r", None)
    if r is not None:
        generators = ",".join(f"x{i}" for i in range(1, r + 1))
    cap = getattr(args, "cap", None)
    seed = getattr(args, "seed", None)
    max_degree = getattr(args, "max_degree", None)
    return RunConfig(
        field=getattr(args, "field", None) or DEFAULT_FIELD,
        generators=_split_generators(generators),
        max_degree=DEFAULT_MAX_DEGREE if max_degree is None else max_degree,
        cap=cap if cap is not None else env.get("cap", DEFAULT_CAP),
        output_format=getattr(args, "format", None) or DEFAULT_OUTPUT_FORMAT,
        seed=DEFAULT_SEED if seed is None else seed,
    )


def initialize_algebra(run_config):
    """
    Vytvoří těleso a zkrácenou volnou restriktivní algebru podle konfigurace.

    Postup:
        1. Převede literál tělesa.
        2. Ověří, že velikost báze nepřekročí limit (ještě před alokací).
        3. Sestaví algebru (s cache).

    Vrací:
        tuple: (field, algebra)

    Výjimky:
        ResourceBound: báze by přesáhla `cap`.
    """
    field = parse_field(run_config.field)
    size = sum(graded_dims(len(run_config.generators), field.p, run_config.max_degree))
    if size > run_config.cap:
        algebra_logger.error(
            "Basis of size %d exceeds cap %d, aborting before allocation.", size, run_config.cap
        )
        raise ResourceBound(f"Báze zkrácené algebry má {size} prvků, limit je {run_config.cap}.")
    algebra = build_algebra(field, run_config.generators, run_config.max_degree, run_config.cap)
    return field, algebra
