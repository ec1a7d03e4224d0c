"""CSV persistence for character and scheme tables.

Files are plain CSV with exact integers and rationals (as separate
numerator/denominator columns), headed by a version line; a wrong or
unreadable header invalidates the file and triggers a recompute.
Rebuilds are deterministic, so a rebuilt file is byte-identical.
"""

from __future__ import annotations

import os
import warnings
from fractions import Fraction

from .characters import CharacterTable, character_table
from .partitions import Partition, enumerate_partitions
from .spherical import SchemeTable

CACHE_VERSION = "pmscheme-cache v1"


class CacheError(Exception):
    """Raised internally when a cache file cannot be trusted."""


def scheme_path(cache_dir: str, n: int) -> str:
    return os.path.join(cache_dir, f"scheme_n{n}.csv")


def characters_path(cache_dir: str, m: int) -> str:
    return os.path.join(cache_dir, f"characters_m{m}.csv")


def store_scheme_table(cache_dir: str, table: SchemeTable) -> str:
    os.makedirs(cache_dir, exist_ok=True)
    path = scheme_path(cache_dir, table.n)
    lines = [f"# {CACHE_VERSION} kind=scheme n={table.n}"]
    lines.append("n,mu,lambda,phi_num,phi_den,eta")
    for mu in table.mus:
        eta = table.eta[mu]
        for lam in table.mus:
            v = table.phi[(mu, lam)]
            lines.append(
                f"{table.n},{mu.to_text()},{lam.to_text()},"
                f"{v.numerator},{v.denominator},{eta}"
            )
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def load_scheme_table(cache_dir: str, n: int) -> SchemeTable | None:
    """Return the cached table, or None when missing or unusable."""
    path = scheme_path(cache_dir, n)
    if not os.path.exists(path):
        return None
    try:
        return _parse_scheme_csv(path, n)
    except (CacheError, ValueError, OSError) as exc:
        warnings.warn(f"ignoring unusable cache file {path}: {exc}")
        return None


def _parse_scheme_csv(path: str, n: int) -> SchemeTable:
    with open(path) as fh:
        lines = [line.rstrip("\n") for line in fh]
    if not lines or not lines[0].startswith(f"# {CACHE_VERSION} kind=scheme"):
        raise CacheError("bad or stale header")
    if len(lines) < 2 or lines[1] != "n,mu,lambda,phi_num,phi_den,eta":
        raise CacheError("bad column line")
    mus = list(enumerate_partitions(n))
    phi: dict[tuple[Partition, Partition], Fraction] = {}
    eta: dict[Partition, int] = {}
    for line in lines[2:]:
        if not line:
            continue
        fields = line.split(",")
        if len(fields) != 6:
            raise CacheError(f"bad row: {line!r}")
        row_n, mu_text, lam_text, num, den, eta_val = fields
        if int(row_n) != n:
            raise CacheError(f"row for n={row_n} in file for n={n}")
        mu = Partition.from_text(mu_text)
        lam = Partition.from_text(lam_text)
        phi[(mu, lam)] = Fraction(int(num), int(den))
        eta[mu] = int(eta_val)
    if set(eta) != set(mus) or len(phi) != len(mus) ** 2:
        raise CacheError("incomplete table")
    return SchemeTable(n, phi, eta)


def store_character_table(cache_dir: str, table: CharacterTable) -> str:
    os.makedirs(cache_dir, exist_ok=True)
    path = characters_path(cache_dir, table.m)
    lines = [f"# {CACHE_VERSION} kind=characters m={table.m}"]
    lines.append("lambda,rho,value")
    for lam in table.shapes:
        for rho in table.shapes:
            lines.append(f"{lam.to_text()},{rho.to_text()},{table.values[(lam, rho)]}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def load_character_table(cache_dir: str, m: int) -> CharacterTable | None:
    path = characters_path(cache_dir, m)
    if not os.path.exists(path):
        return None
    try:
        return _parse_characters_csv(path, m)
    except (CacheError, ValueError, OSError) as exc:
        warnings.warn(f"ignoring unusable cache file {path}: {exc}")
        return None


def _parse_characters_csv(path: str, m: int) -> CharacterTable:
    with open(path) as fh:
        lines = [line.rstrip("\n") for line in fh]
    if not lines or not lines[0].startswith(f"# {CACHE_VERSION} kind=characters"):
        raise CacheError("bad or stale header")
    if len(lines) < 2 or lines[1] != "lambda,rho,value":
        raise CacheError("bad column line")
    shapes = list(enumerate_partitions(m))
    values: dict[tuple[Partition, Partition], int] = {}
    for line in lines[2:]:
        if not line:
            continue
        lam_text, rho_text, value = line.split(",")
        values[(Partition.from_text(lam_text), Partition.from_text(rho_text))] = int(value)
    if len(values) != len(shapes) ** 2:
        raise CacheError("incomplete table")
    return CharacterTable(m, values)


def cached_character_table(m: int, cache_dir: str | None = None) -> CharacterTable:
    """Character table with optional persistence (rebuild on corruption)."""
    if cache_dir is not None:
        table = load_character_table(cache_dir, m)
        if table is not None:
            return table
    table = character_table(m)
    if cache_dir is not None:
        store_character_table(cache_dir, table)
    return table


def inspect_cache(cache_dir: str) -> list[dict]:
    """One record per cache file: name, kind, parameter, row count, ok flag."""
    records = []
    if not os.path.isdir(cache_dir):
        return records
    for name in sorted(os.listdir(cache_dir)):
        path = os.path.join(cache_dir, name)
        if not name.endswith(".csv"):
            continue
        record: dict = {"file": name}
        try:
            with open(path) as fh:
                header = fh.readline().strip()
                fh.readline()
                rows = sum(1 for line in fh if line.strip())
            ok = header.startswith(f"# {CACHE_VERSION}")
            record.update(header=header, rows=rows, ok=ok)
        except OSError as exc:
            record.update(ok=False, error=str(exc))
        records.append(record)
    return records


def clear_cache(cache_dir: str) -> int:
    """Delete cache CSV files; returns how many were removed."""
    if not os.path.isdir(cache_dir):
        return 0
    removed = 0
    for name in os.listdir(cache_dir):
        if name.endswith(".csv") and (
            name.startswith("scheme_n") or name.startswith("characters_m")
        ):
            os.remove(os.path.join(cache_dir, name))
            removed += 1
    return removed
