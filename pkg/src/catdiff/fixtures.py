"""Fixture files: carriers for FinRel and dimensions for polydiff.

INI syntax read with configparser::

    [finrel]
    A = a, b
    B = b0

    [polydiff]
    A = 2

Keys before any section header count as [finrel]. Without a file the
defaults are A={a,b}, B={b0}, C={c0,c1} and dims A=2, B=1, C=3.
"""
from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, field
from typing import Optional

from .finrel.model import DEFAULT_CARRIERS

DEFAULT_DIMS = {"A": 2, "B": 1, "C": 3}
ENV_VAR = "CATDIFF_FIXTURES"


class FixtureError(ValueError):
    pass


@dataclass
class Fixtures:
    carriers: dict = field(default_factory=lambda: {k: list(v) for k, v in DEFAULT_CARRIERS.items()})
    dims: dict = field(default_factory=lambda: dict(DEFAULT_DIMS))
    source: Optional[str] = None


def parse(text: str, source: Optional[str] = None) -> Fixtures:
    cp = configparser.ConfigParser(delimiters=("=",), comment_prefixes=("#", ";"))
    cp.optionxform = str            # object names are case sensitive
    try:
        cp.read_string("[finrel]\n" + text if not text.lstrip().startswith("[") else text)
    except configparser.Error as err:
        raise FixtureError(f"{source or 'fixtures'}: {err}") from None
    fx = Fixtures(source=source)
    unknown = set(cp.sections()) - {"finrel", "polydiff"}
    if unknown:
        raise FixtureError(f"unknown fixture section(s): {', '.join(sorted(unknown))}")
    if cp.has_section("finrel"):
        for name, raw in cp.items("finrel"):
            labels = [x.strip() for x in raw.split(",") if x.strip()]
            if not labels:
                raise FixtureError(f"carrier {name} is empty")
            if len(set(labels)) != len(labels):
                raise FixtureError(f"carrier {name} repeats a label")
            fx.carriers[name] = labels
    if cp.has_section("polydiff"):
        for name, raw in cp.items("polydiff"):
            try:
                n = int(raw)
            except ValueError:
                raise FixtureError(f"dimension of {name} is not an integer: {raw!r}") from None
            if n < 0:
                raise FixtureError(f"dimension of {name} is negative")
            fx.dims[name] = n
    return fx


def load(path: Optional[str] = None) -> Fixtures:
    """Read ``path``, else $CATDIFF_FIXTURES, else the defaults."""
    path = path or os.environ.get(ENV_VAR)
    if not path:
        return Fixtures()
    try:
        with open(path, encoding="utf-8") as fh:
            return parse(fh.read(), source=path)
    except OSError as err:
        raise FixtureError(f"cannot read fixtures {path}: {err.strerror}") from None
