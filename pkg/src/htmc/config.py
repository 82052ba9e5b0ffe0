"""Simulation configuration and the flat key-value config file format.

Config files hold one ``key = value`` pair per line; blank lines and text
after ``#`` are ignored.  Unknown or repeated keys are errors, keeping
runs reproducible from the file alone.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from .modem import ModemConfig
from .turbo import TurboConfig, make_interleaver

__all__ = ["ConfigError", "SimulationConfig", "parse_config"]


class ConfigError(ValueError):
    """Invalid simulation configuration."""


def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(part) for part in text.split(",") if part.strip())


@dataclass(frozen=True)
class SimulationConfig:
    """Everything a Monte-Carlo run needs, resolvable to the component
    configs via modem_config() and turbo_config()."""

    symbol_period: float = 1.0
    rolloff: float = 0.161
    transition: float = 0.25
    subcarriers: int = 5
    window_multiple: int = 16
    info_length: int = 1024
    feedback: str = "7"
    forward: str = "5"
    iterations: int = 8
    interleaver_seed: int = 0
    snr_db: tuple[float, ...] = (0.0, 0.5, 1.0, 1.5, 2.0)
    max_frames: int = 10_000
    min_bit_errors: int = 100
    seed: int = 1
    out: str | None = None

    def __post_init__(self) -> None:
        if self.window_multiple not in (8, 16):
            raise ConfigError("window_multiple must be 8 or 16")
        if not self.snr_db:
            raise ConfigError("snr_db list must not be empty")
        if any(np.isnan(v) for v in self.snr_db):
            raise ConfigError("snr_db values must not be NaN")
        if self.max_frames < 1:
            raise ConfigError("max_frames must be at least 1")
        if self.min_bit_errors < 1:
            raise ConfigError("min_bit_errors must be at least 1")
        try:
            self.modem_config()
            self.turbo_config()
        except (ValueError, TypeError) as exc:
            raise ConfigError(str(exc)) from exc

    @property
    def coded_length(self) -> int:
        return 2 * self.info_length

    @property
    def symbols_per_carrier(self) -> int:
        """Slots per subcarrier; the last column may carry filler."""
        return -(-self.coded_length // self.subcarriers)

    def modem_config(self) -> ModemConfig:
        return ModemConfig.create(
            subcarriers=self.subcarriers,
            window_multiple=self.window_multiple,
            symbols_per_carrier=self.symbols_per_carrier,
            symbol_period=self.symbol_period,
            rolloff=self.rolloff,
            transition=self.transition,
        )

    def turbo_config(self) -> TurboConfig:
        return TurboConfig(
            info_length=self.info_length,
            interleaver=make_interleaver(self.info_length, self.interleaver_seed),
            feedback=self.feedback,
            forward=self.forward,
            iterations=self.iterations,
        )


_PARSERS = {
    "symbol_period": float,
    "rolloff": float,
    "transition": float,
    "subcarriers": int,
    "window_multiple": int,
    "info_length": int,
    "iterations": int,
    "interleaver_seed": int,
    "max_frames": int,
    "min_bit_errors": int,
    "seed": int,
    "snr_db": _float_list,
    "out": str,
}


def parse_config(path: str) -> SimulationConfig:
    """Load a SimulationConfig from a flat key-value file."""
    values: dict[str, object] = {}
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, _, text = line.partition("=")
            key = key.strip()
            text = text.strip()
            if key in values:
                raise ConfigError(f"{path}:{lineno}: repeated key {key!r}")
            if key == "generators":
                parts = [p.strip() for p in text.split(",")]
                if len(parts) != 2:
                    raise ConfigError(
                        f"{path}:{lineno}: generators must be 'feedback,forward' octal"
                    )
                values["feedback"], values["forward"] = parts
            elif key in _PARSERS:
                try:
                    values[key] = _PARSERS[key](text)
                except ValueError as exc:
                    raise ConfigError(f"{path}:{lineno}: bad value for {key!r}: {exc}")
            else:
                known = sorted(list(_PARSERS) + ["generators"])
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r} (known: {known})")
    try:
        return SimulationConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


# keys writable by parse_config must stay in sync with the dataclass
assert set(_PARSERS) <= {f.name for f in fields(SimulationConfig)}
