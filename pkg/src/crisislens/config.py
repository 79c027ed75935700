"""TOML configuration loading.

The shipped ``data/default.toml`` documents every key. Lookup order for the
config path: explicit argument, ``$CRISISLENS_CONFIG``, then the default.
"""
from __future__ import annotations

import hashlib
import os
import sys
from dataclasses import dataclass, field
from datetime import date
from importlib import resources
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import ConfigError
from .ingest import CollectionConfig, GeoRegion
from .netgraph.metrics import PATH_MODES

ENV_VAR = "CRISISLENS_CONFIG"
PACKAGE_PREFIX = "package:"


@dataclass
class Config:
    collection: CollectionConfig
    regions: dict[str, GeoRegion]
    victim_region: str
    seed_dates: tuple[date, date]
    lexicons: dict[str, str]
    lens: float = 1.0
    sweep: str = "0:3:0.1"
    shift_top: int = 50
    seed: int = 7
    ego: str = "puertorico"
    topic_terms: list[str] = field(default_factory=list)
    confidence: float = 0.99
    top_accounts: int = 50
    path_mode: str = "reachable"
    source: str = "<default>"
    digest: str = ""

    @property
    def region(self) -> GeoRegion:
        return self.regions[self.victim_region]


def default_config_bytes() -> bytes:
    return resources.files("crisislens").joinpath("data/default.toml").read_bytes()


def resolve_data_path(value: str, base: Path | None) -> Path:
    if value.startswith(PACKAGE_PREFIX):
        return Path(str(resources.files("crisislens").joinpath("data", value[len(PACKAGE_PREFIX):])))
    path = Path(value)
    if not path.is_absolute() and base is not None:
        path = base / path
    return path


def _date(value, key: str) -> date:
    if isinstance(value, date):
        return value
    try:
        return date.fromisoformat(str(value))
    except ValueError:
        raise ConfigError(f"{key}: expected YYYY-MM-DD, got {value!r}") from None


def parse_config(raw: bytes, source: str = "<default>", base: Path | None = None) -> Config:
    try:
        doc = tomllib.loads(raw.decode("utf-8"))
    except (tomllib.TOMLDecodeError, UnicodeDecodeError) as exc:
        raise ConfigError(f"{source}: {exc}") from None

    try:
        coll = doc.get("collection", {})
        victim = doc.get("victim", {})
        collection = CollectionConfig(
            keywords=[str(k) for k in coll["keywords"]],
            date_start=_date(coll["date_start"], "collection.date_start"),
            date_end=_date(coll["date_end"], "collection.date_end"),
            languages=[str(x) for x in coll.get("languages", ["es", "en"])],
            victim_keywords=[str(k) for k in victim.get("keywords", [])],
            victim_language=str(victim.get("language", "es")),
        )
        if not collection.keywords:
            raise ConfigError("collection.keywords is empty")

        regions = {
            name: GeoRegion(name, tuple(tuple(float(v) for v in box) for box in spec["boxes"]))
            for name, spec in doc.get("regions", {}).items()
        }
        victim_region = str(victim.get("region", next(iter(regions), "")))
        if regions and victim_region not in regions:
            raise ConfigError(f"victim.region {victim_region!r} is not a configured region")
        seed_dates = victim.get("seed_dates", [coll["date_start"], coll["date_end"]])
        seed_range = (_date(seed_dates[0], "victim.seed_dates"), _date(seed_dates[-1], "victim.seed_dates"))

        base_dir = base
        lexicons = {
            lang: str(resolve_data_path(str(p), base_dir)) for lang, p in doc.get("lexicons", {}).items()
        }
        sent = doc.get("sentiment", {})
        net = doc.get("network", {})
        cfg = Config(
            collection=collection,
            regions=regions,
            victim_region=victim_region,
            seed_dates=seed_range,
            lexicons=lexicons,
            lens=float(sent.get("lens", 1.0)),
            sweep=str(sent.get("sweep", "0:3:0.1")),
            shift_top=int(doc.get("shift", {}).get("top", 50)),
            seed=int(net.get("seed", 7)),
            ego=str(net.get("ego", "puertorico")).lstrip("#").lower(),
            topic_terms=[str(t) for t in net.get("topic_terms", [])],
            confidence=float(net.get("confidence", 0.99)),
            top_accounts=int(net.get("top_accounts", 50)),
            path_mode=str(net.get("path_mode", "reachable")),
            source=source,
            digest=hashlib.sha256(raw).hexdigest(),
        )
        if not 0.0 <= cfg.lens <= 4.0:
            raise ConfigError(f"sentiment.lens must be in [0, 4], got {cfg.lens}")
        if not 0.0 < cfg.confidence < 1.0:
            raise ConfigError(f"network.confidence must be in (0, 1), got {cfg.confidence}")
        if cfg.path_mode not in PATH_MODES:
            raise ConfigError(f"network.path_mode must be one of {PATH_MODES}, got {cfg.path_mode!r}")
        if cfg.shift_top < 1 or cfg.top_accounts < 1:
            raise ConfigError("shift.top and network.top_accounts must be positive")
    except KeyError as exc:
        raise ConfigError(f"{source}: missing key {exc}") from None
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{source}: {exc}") from None
    return cfg


def load_config(path: str | os.PathLike | None = None) -> Config:
    path = path or os.environ.get(ENV_VAR)
    if not path:
        return parse_config(default_config_bytes())
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(raw, source=str(path), base=path.parent)
