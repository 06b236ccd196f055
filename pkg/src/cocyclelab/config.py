"""Run configuration: a sectioned key/value text file.

Example::

    [cocycle]
    A1 = diag 1 0
    A2 = rot 0.7
    sing = 1
    p = 0.3 0.7

    [run]
    seed = 7
    depth = 40

Matrices are four reals (row-major), ``rot x`` or ``diag a b``; numbers may
use ``pi`` (``pi/2``, ``0.25*pi``).  Lists are separated by spaces or commas
and matrix rows of ``P`` by ``;``.  Keys are case-insensitive except ``p``
(Bernoulli law) and ``P`` (Markov transition rows).  The raw text is kept
verbatim so reports can echo it byte for byte.
"""

from __future__ import annotations

import configparser
import math
import re
from dataclasses import dataclass, field

from .corpus import PRESETS
from .errors import CocycleError
from .families import FamilySpec
from .linalg2 import Mat2, diag, rot
from .model import CocycleSpec


class ConfigError(CocycleError):
    """Malformed or inconsistent configuration."""


COCYCLE_KEYS = {"preset", "sing", "p", "P", "q", "name", "rank_tol", "block_cap"}
FAMILY_KEYS = {
    "kind": ("str", "rotation"), "a": ("num", 0.0), "p": ("num", 0.5), "t": ("num", 0.0),
    "t_lo": ("num", None), "t_hi": ("num", None), "points": ("int", 101),
    "grid": ("list", None), "method": ("str", "series"), "null_len": ("int", 6),
    "depth": ("int", None), "n": ("int", 1000), "samples": ("int", 500),
    "winding_t_points": ("int", 256), "winding_x_points": ("int", 256),
    "n0": ("int", 1), "check_fd": ("bool", True),
}
RUN_KEYS = {
    "seed": ("int", 0), "depth": ("int", 40), "measure_depth": ("int", None),
    "mc_n": ("int", 2000), "mc_samples": ("int", 2000), "blocks": ("int", 5000),
    "n": ("int", 1000), "samples": ("int", 2000), "epsilon": ("num", 0.05),
    "schedule": ("intlist", [100, 200, 400, 800, 1600]), "ldt_samples": ("int", 4000),
    "sigma_source": ("str", "gordin_livsic"), "mode": ("str", "vector"),
    "ks_threshold": ("num", 0.05), "n_trunc": ("num", 40.0), "null_max_len": ("int", 6),
    "certify_len": ("int", 50), "decay_n": ("int", 20),
    "merge_tol": ("num", 1e-12), "kernel_eps": ("num", 0.01),
    "format": ("str", "both"), "out": ("str", "."), "label": ("str", None),
}

_NUM = re.compile(r"^\s*([-+]?[0-9.eE+-]*)\s*\*?\s*(pi)?\s*(?:/\s*([0-9.eE+-]+))?\s*$")


def parse_number(tok: str) -> float:
    """A real, optionally times ``pi`` and over a real (``-pi/2``, ``0.3*pi``)."""
    tok = tok.strip()
    try:
        return float(tok)
    except ValueError:
        pass
    m = _NUM.match(tok)
    if not m or not m.group(2):
        raise ConfigError(f"not a number: {tok!r}")
    coef = m.group(1)
    c = {"": 1.0, "+": 1.0, "-": -1.0}.get(coef)
    if c is None:
        c = float(coef)
    v = c * math.pi
    if m.group(3):
        v /= float(m.group(3))
    return v


def parse_list(text: str) -> list:
    return [t for t in re.split(r"[\s,]+", text.strip()) if t]


def parse_matrix(text: str) -> Mat2:
    toks = parse_list(text)
    if not toks:
        raise ConfigError("empty matrix")
    head = toks[0].lower()
    if head == "rot":
        if len(toks) != 2:
            raise ConfigError(f"'rot' takes one angle: {text!r}")
        return rot(parse_number(toks[1]))
    if head == "diag":
        if len(toks) != 3:
            raise ConfigError(f"'diag' takes two entries: {text!r}")
        return diag(parse_number(toks[1]), parse_number(toks[2]))
    if len(toks) != 4:
        raise ConfigError(f"matrix needs four reals (row-major): {text!r}")
    a, b, c, d = (parse_number(t) for t in toks)
    return Mat2(a, b, c, d)


def _typed(kind, text, key):
    try:
        if kind == "int":
            return int(text)
        if kind == "num":
            return parse_number(text)
        if kind == "list":
            return [parse_number(t) for t in parse_list(text)]
        if kind == "intlist":
            return [int(t) for t in parse_list(text)]
        if kind == "bool":
            low = text.strip().lower()
            if low not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError(text)
            return low in ("true", "1", "yes")
        return text.strip()
    except (ValueError, ConfigError) as exc:
        raise ConfigError(f"bad value for {key!r}: {text!r}") from exc


def _section(cp, name, schema):
    out = {k: v[1] for k, v in schema.items()}
    if not cp.has_section(name):
        return out
    for key, text in cp.items(name):
        key = key.lower()
        if key not in schema:
            raise ConfigError(f"unknown key {key!r} in [{name}]")
        out[key] = _typed(schema[key][0], text, key)
    return out


def _cocycle(cp) -> CocycleSpec | None:
    if not cp.has_section("cocycle"):
        return None
    # 'p' and 'P' differ; every other key is case-insensitive
    sec, mats = {}, {}
    for key, text in cp.items("cocycle"):
        m = re.fullmatch(r"[aA](\d+)", key)
        if m:
            if int(m.group(1)) in mats:
                raise ConfigError(f"duplicate matrix key {key!r}")
            mats[int(m.group(1))] = parse_matrix(text)
            continue
        norm = key if key in ("p", "P") else key.lower()
        if norm not in COCYCLE_KEYS:
            raise ConfigError(f"unknown key {key!r} in [cocycle]")
        if norm in sec:
            raise ConfigError(f"duplicate key {key!r} in [cocycle]")
        sec[norm] = text
    if "preset" in sec:
        if mats or set(sec) - {"preset", "name"}:
            raise ConfigError("'preset' cannot be combined with other [cocycle] keys")
        name = sec["preset"].strip()
        if name not in PRESETS:
            raise ConfigError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
        return PRESETS[name]()
    if not mats:
        raise ConfigError("[cocycle] needs 'preset' or matrices A1, A2, ...")
    k = max(mats)
    if sorted(mats) != list(range(1, k + 1)):
        raise ConfigError(f"matrices must be A1..A{k} without gaps")
    if "sing" not in sec:
        raise ConfigError("[cocycle] needs 'sing'")
    try:
        sing = [int(t) for t in parse_list(sec["sing"])]
    except ValueError:
        raise ConfigError(f"bad value for 'sing': {sec['sing']!r}") from None
    kw = {"name": sec.get("name", "").strip()}
    if "rank_tol" in sec:
        kw["rank_tol"] = _typed("num", sec["rank_tol"], "rank_tol")
    if "block_cap" in sec:
        kw["block_cap"] = _typed("int", sec["block_cap"], "block_cap")
    matrices = [mats[i] for i in range(1, k + 1)]
    if "P" in sec:
        if "p" in sec:
            raise ConfigError("give either 'p' (Bernoulli) or 'P' (Markov), not both")
        rows = [[parse_number(t) for t in parse_list(r)] for r in sec["P"].split(";") if r.strip()]
        q = _typed("list", sec["q"], "q") if "q" in sec else None
        return CocycleSpec.markov(matrices, rows, sing, q=q, **kw)
    if "p" in sec:
        if "q" in sec:
            raise ConfigError("'q' only applies to Markov specs")
        return CocycleSpec.bernoulli(matrices, _typed("list", sec["p"], "p"), sing, **kw)
    raise ConfigError("[cocycle] needs 'p' (Bernoulli) or 'P' rows (Markov)")


@dataclass
class RunConfig:
    """Parsed configuration plus the verbatim source text."""

    text: str
    spec: CocycleSpec | None
    family: FamilySpec | None
    family_params: dict
    run: dict
    path: str | None = None
    warnings: list = field(default_factory=list)

    @property
    def seed(self) -> int:
        return int(self.run["seed"])

    def cocycle(self) -> CocycleSpec:
        """The spec commands act on: ``[cocycle]``, or the family at ``t``."""
        if self.spec is not None:
            return self.spec
        if self.family is not None:
            return self.family.at(self.family_params["t"])
        raise ConfigError("config has neither [cocycle] nor [family]")

    def equivalent(self, other: "RunConfig") -> bool:
        a = None if self.spec is None else self.spec.describe()
        b = None if other.spec is None else other.spec.describe()
        return a == b and self.family_params == other.family_params and self.run == other.run


def parse_config(text: str, path: str | None = None) -> RunConfig:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))
    cp.optionxform = str
    try:
        cp.read_string(text, source=path or "<config>")
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from exc
    extra = set(cp.sections()) - {"cocycle", "family", "run"}
    if extra:
        raise ConfigError(f"unknown sections {sorted(extra)}")
    spec = _cocycle(cp)
    fam = _section(cp, "family", FAMILY_KEYS)
    run = _section(cp, "run", RUN_KEYS)
    if run["format"] not in ("csv", "json", "both"):
        raise ConfigError("format must be csv, json or both")
    family = None
    if cp.has_section("family"):
        kind = fam["kind"]
        if kind == "rotation":
            if spec is None:
                raise ConfigError("rotation family needs a [cocycle] base spec")
            lo = -math.pi if fam["t_lo"] is None else fam["t_lo"]
            hi = math.pi if fam["t_hi"] is None else fam["t_hi"]
            family = FamilySpec(spec, "rotation", t_lo=lo, t_hi=hi)
        elif kind == "craig_simon":
            a = fam["a"]
            lo = a - 2.5 if fam["t_lo"] is None else fam["t_lo"]
            hi = a + 2.5 if fam["t_hi"] is None else fam["t_hi"]
            family = FamilySpec(None, "craig_simon", a=a, p=fam["p"], t_lo=lo, t_hi=hi)
        else:
            raise ConfigError(f"family kind must be rotation or craig_simon, got {kind!r}")
        fam["t_lo"], fam["t_hi"] = family.t_lo, family.t_hi
    return RunConfig(text, spec, family, fam, run, path)


def load_config(path: str) -> RunConfig:
    # newline="" keeps line endings exactly as written
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
    return parse_config(text, path)
