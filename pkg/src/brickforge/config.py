"""Size limits shared across modules."""

import os
from dataclasses import dataclass


@dataclass
class Limits:
    canonical_max_n: int = 16
    enumeration_max_n: int = 20
    exhaustive_cut_max_n: int = 14
    catalog_max_n: int = 14
    # inputs larger than this are refused by the CLI (exit code 3)
    input_max_n: int = 16


def limits_from_env(env=None) -> Limits:
    env = os.environ if env is None else env
    lim = Limits()
    raw = env.get("BRICKFORGE_MAX_N")
    if raw:
        lim.input_max_n = int(raw)
        lim.catalog_max_n = min(lim.catalog_max_n, int(raw))
    return lim


LIMITS = Limits()
