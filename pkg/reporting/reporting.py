"""
Modul pro výstup výsledků příkazů: kompaktní JSON se seřazenými klíči a CSV tabulky dimenzí.

Výstup je deterministický, takže stejné argumenty dávají bajtově stejný text.
"""
import json

import numpy as np
import pandas as pd


def _json_default(value):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"Hodnotu typu {type(value).__name__} nelze převést do JSON.")


def canonical_json(payload):
    """Kompaktní JSON se seřazenými klíči (bez mezer, UTF-8 znaky ponechány)."""
    return json.dumps(
        payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False, default=_json_default
    )


def write_report(payload, stream):
    stream.write(canonical_json(payload) + "\n")


def dims_frame(dims):
    """Tabulka `degree,dim` pro stupně 1..len(dims)."""
    return pd.DataFrame({"degree": range(1, len(dims) + 1), "dim": [int(d) for d in dims]})


def write_dims_csv(dims, stream):
    stream.write(dims_frame(dims).to_csv(index=False, lineterminator="\n"))


def write_error(error_code, message, stream):
    """Diagnostika na chybový výstup ve tvaru {"error": kód, "message": text}."""
    write_report({"error": error_code, "message": message}, stream)
