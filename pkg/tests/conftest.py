import pytest

from pmscheme.spherical import SchemeTable, scheme_table


class LazyTables(dict):
    """Session-wide scheme tables, built once per n on first use."""

    def __missing__(self, n: int) -> SchemeTable:
        table = scheme_table(n)
        self[n] = table
        return table


@pytest.fixture(scope="session")
def tables() -> LazyTables:
    return LazyTables()
