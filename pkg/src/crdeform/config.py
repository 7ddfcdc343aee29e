"""Session configuration shared by the CLI and the scripts."""

from __future__ import annotations

from dataclasses import asdict, dataclass, replace

from .exact import is_squarefree


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SessionConfig:
    """Caps and seed for one analysis run.

    ``d`` is the radicand behind the ``sqrt`` token; ``0`` means the input
    uses rational (Gaussian) coefficients only.  Caps left as ``None`` fall
    back to the per-map defaults of the library.
    """

    d: int = 0
    degree_cap: int | None = None
    nondeg_cap: int | None = None
    order: int = 2
    bound: int = 3
    seed: int = 0
    multiplier_degree: int = 8
    output: str | None = None

    def __post_init__(self):
        if self.d < 0 or (self.d > 1 and not is_squarefree(self.d)):
            raise ConfigError(f"radicand must be 0 or a positive square-free integer, got {self.d}")
        for name in ("degree_cap", "nondeg_cap"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ConfigError(f"{name} must be >= 1")
        if self.order < 1:
            raise ConfigError("order must be >= 1")
        if self.bound < 1:
            raise ConfigError("bound must be >= 1")
        if self.multiplier_degree < 0:
            raise ConfigError("multiplier_degree must be >= 0")

    def merged(self, caps: dict | None) -> "SessionConfig":
        """Fill unset caps from an input file's ``caps`` block."""
        if not caps:
            return self
        updates = {}
        if self.degree_cap is None and "degree" in caps:
            updates["degree_cap"] = int(caps["degree"])
        if self.nondeg_cap is None and "nondeg" in caps:
            updates["nondeg_cap"] = int(caps["nondeg"])
        return replace(self, **updates) if updates else self

    def as_dict(self) -> dict:
        out = asdict(self)
        out.pop("output")
        return out
