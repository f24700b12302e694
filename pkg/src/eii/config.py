"""JSON code configurations.

A configuration names a field, a row length ``n`` and a redundancy profile
``u``, and then either lists the component codes (``horizontals`` and
``verticals``) or gives one coefficient matrix (``hcoeffs``, EII-PC codes).
``{"builtin": "ex0"}`` refers to a code of :mod:`eii.catalog`.

Field elements are always hexadecimal strings ("1f"), structural integers
(lengths, dimensions, distances) are JSON numbers. Component codes::

    {"kind": "rs", "n": 15, "k": 11, "variant": "shortened"}
    {"kind": "parity" | "repetition" | "whole" | "zero", "n": 7}
    {"kind": "cyclic", "n": 7, "generator": ["1", "1", "0", "1"]}
    {"kind": "bch", "n": 15, "designed_distance": 5, "ext_b": 4}
    {"kind": "H", "rows": [["1", "1", "1"]], "d": 2}
    {"kind": "extended", "of": {...}}

Any component may carry ``"b"`` (and ``"modulus"``) to live over another
field. Vertical codes wrap a component: ``{"interleaved": {...}, "w": 4}``,
``{"lifted": {...}}`` or ``{"chunks": [[4, {...}], [3, {...}]]}``.
Coefficient matrices: ``{"rows": [[...]]}``, ``{"vandermonde": [...]}``,
``{"reed_muller": 4}`` or ``{"complete": [[...]], "size": 7}``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field as dc_field
from pathlib import Path

import numpy as np

from . import catalog
from . import gf as gfm
from .eii import EiiCode, UProfile, build_eii, build_eii_pc
from .linear_codes import (HCoefficients, VandermondeCoefficients, VerticalCode, complete_coefficients,
                           make_bch, make_cyclic, make_extended, make_from_H, make_parity, make_repetition,
                           make_rs, make_whole, make_zero, reed_muller_coefficients)


class ConfigError(ValueError):
    """The configuration cannot be parsed or does not describe a valid code."""


_KEYS = ("builtin", "b", "modulus", "n", "u", "levels", "horizontals", "verticals", "hcoeffs",
         "decoder", "criterion")


@dataclass
class CodeConfig:
    builtin: str | None = None
    b: int = 1
    modulus: str | None = None          # hex; None selects the default primitive polynomial
    n: int | None = None
    u: list | None = None
    levels: int | None = None
    horizontals: list = dc_field(default_factory=list)
    verticals: list = dc_field(default_factory=list)
    hcoeffs: dict | None = None
    decoder: str = "recursive"
    criterion: str | None = None

    # ---- serialization ----

    def to_dict(self) -> dict:
        d = asdict(self)
        defaults = asdict(CodeConfig())
        return {k: v for k, v in d.items() if v != defaults[k]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "CodeConfig":
        if not isinstance(d, dict):
            raise ConfigError("configuration must be a JSON object")
        extra = set(d) - set(_KEYS)
        if extra:
            raise ConfigError(f"unknown keys: {', '.join(sorted(extra))}")
        cfg = cls(**d)
        cfg._check_shape()
        return cfg

    @classmethod
    def from_json(cls, text: str) -> "CodeConfig":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON: {exc}") from None
        return cls.from_dict(d)

    def _check_shape(self):
        if self.builtin is not None:
            if self.builtin not in catalog.BUILDERS:
                raise ConfigError(f"unknown builtin code {self.builtin!r}")
            return
        if not isinstance(self.n, int) or not isinstance(self.u, list) or not self.u:
            raise ConfigError("a code needs integer 'n' and a non-empty list 'u'")
        if self.hcoeffs is None and not self.horizontals:
            raise ConfigError("give either 'hcoeffs' or 'horizontals' and 'verticals'")
        if self.hcoeffs is not None and (self.horizontals or self.verticals):
            raise ConfigError("'hcoeffs' excludes explicit component codes")

    # ---- building ----

    @property
    def gf(self) -> gfm.GF:
        return _field(self.b, self.modulus)

    def build(self) -> EiiCode:
        if self.builtin is not None:
            return catalog.get(self.builtin)
        try:
            profile = UProfile(tuple(self.u), self.n, self.levels)
            if self.hcoeffs is not None:
                return build_eii_pc(profile, _coefficients(self.gf, self.hcoeffs))
            hs = [_component(self.gf, spec) for spec in self.horizontals]
            vs = [_vertical(self.gf, spec) for spec in self.verticals]
            return build_eii(profile, hs, vs)
        except ConfigError:
            raise
        except (ValueError, KeyError, TypeError) as exc:
            raise ConfigError(f"invalid code description: {exc}") from None


def _field(b, modulus):
    try:
        return gfm.field(int(b), None if modulus is None else _hex(modulus))
    except gfm.FieldError as exc:
        raise ConfigError(str(exc)) from None


def _hex(x) -> int:
    if not isinstance(x, str):
        raise ConfigError(f"field elements must be hex strings, got {x!r}")
    try:
        return int(x, 16)
    except ValueError:
        raise ConfigError(f"bad hex value {x!r}") from None


def _hex_matrix(rows):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ConfigError("matrices are lists of rows")
    return np.array([[_hex(x) for x in r] for r in rows], dtype=np.int64).reshape(len(rows), -1)


def _component(gf, spec: dict):
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError(f"component code needs a 'kind': {spec!r}")
    if "b" in spec:
        gf = _field(spec["b"], spec.get("modulus"))
    kind = spec["kind"]
    n = spec.get("n")
    name = spec.get("name")
    if kind == "rs":
        return make_rs(gf, n, spec["k"], spec.get("variant", "shortened"), spec.get("root_offset", 0), name=name)
    if kind == "parity":
        return make_parity(gf, n)
    if kind == "repetition":
        return make_repetition(gf, n)
    if kind == "whole":
        return make_whole(gf, n)
    if kind == "zero":
        return make_zero(gf, n)
    if kind == "cyclic":
        return make_cyclic(gf, n, [_hex(c) for c in spec["generator"]], d=spec.get("d"), name=name)
    if kind == "bch":
        ext = _field(spec["ext_b"], spec.get("ext_modulus"))
        return make_bch(gf, ext, n, spec["designed_distance"], spec.get("first_root", 1), name=name)
    if kind == "H":
        H = _hex_matrix(spec["rows"])
        return make_from_H(gf, H, n=n if n is not None else H.shape[1], d=spec.get("d"), name=name)
    if kind == "extended":
        return make_extended(_component(gf, spec["of"]), name=name)
    raise ConfigError(f"unknown component kind {kind!r}")


def _vertical(gf, spec: dict) -> VerticalCode:
    if not isinstance(spec, dict):
        raise ConfigError(f"vertical code must be an object: {spec!r}")
    if "interleaved" in spec:
        return VerticalCode.interleaved(_component(gf, spec["interleaved"]), int(spec["w"]))
    if "lifted" in spec:
        return VerticalCode.lifted(_component(gf, spec["lifted"]), gf)
    if "chunks" in spec:
        return VerticalCode(gf, [(int(e), _component(gf, c)) for e, c in spec["chunks"]])
    raise ConfigError("vertical code needs 'interleaved', 'lifted' or 'chunks'")


def _coefficients(gf, spec: dict) -> HCoefficients:
    if "rows" in spec:
        return HCoefficients(gf, _hex_matrix(spec["rows"]))
    if "vandermonde" in spec:
        return VandermondeCoefficients(gf, [_hex(x) for x in spec["vandermonde"]])
    if "reed_muller" in spec:
        return reed_muller_coefficients(int(spec["reed_muller"]))
    if "complete" in spec:
        return complete_coefficients(gf, _hex_matrix(spec["complete"]), int(spec["size"]))
    raise ConfigError("hcoeffs needs 'rows', 'vandermonde', 'reed_muller' or 'complete'")


def load_config(source: str) -> CodeConfig:
    """Read a config file, or ``builtin:NAME`` for a catalogued code."""
    if source.startswith("builtin:"):
        return CodeConfig.from_dict({"builtin": source.split(":", 1)[1]})
    try:
        text = Path(source).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {source}: {exc.strerror}") from None
    return CodeConfig.from_json(text)
