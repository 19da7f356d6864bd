"""Parameter sets for the three encryption variants and their derived sizes."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace
from functools import cached_property
from typing import Mapping

from .galois import GF2m, get_field
from .ideal_ring import RingParams

BWE = "BWE"
NH = "MultiNH"
UR = "MultiUR"
SCHEME_IDS = {BWE: 1, NH: 2, UR: 3}
SCHEME_NAMES = {v: k for k, v in SCHEME_IDS.items()}

SEED_BYTES = 40


class ParameterError(ValueError):
    """Inconsistent or infeasible parameter set."""


def _ceil8(bits: int) -> int:
    return (bits + 7) // 8


@dataclass(frozen=True)
class SchemeParams:
    scheme: str
    n1: int
    k1: int
    n2: int
    k2: int
    m: int
    r: int
    t1: int
    t2: int
    wx: int
    wy: int
    w1: int
    w2: int
    we: int = 0
    z: int = 0
    level: int = 0
    row_id: int = 0
    ring_modulus: int = 0
    blockwise: bool = True

    def __post_init__(self):
        self.validate()

    # -- derived quantities --------------------------------------------------
    @property
    def q(self) -> int:
        return 2

    @property
    def n(self) -> int:
        return self.n1 * self.n2

    @property
    def k(self) -> int:
        return self.k1 * self.k2

    @property
    def scheme_id(self) -> int:
        return SCHEME_IDS[self.scheme]

    @property
    def ring_degree(self) -> int:
        return self.n if self.scheme == BWE else self.n2

    @property
    def field(self) -> GF2m:
        return get_field(self.m)

    @cached_property
    def ring(self) -> RingParams:
        return RingParams(self.field, self.ring_degree, self.ring_modulus)

    @property
    def regime(self) -> str | None:
        if self.k1 == self.t1 and self.t2 == self.m < self.t1 * self.t2:
            return "case-1"
        if self.t1 * self.t2 <= self.m:
            return "case-2"
        return None

    @property
    def radius(self) -> int:
        if self.regime == "case-1":
            return (self.t2 - self.k2) // 2
        if self.regime == "case-2":
            return ((self.t1 - self.k1 + 1) * (self.t2 - self.k2 + 1) - 1) // 2
        raise ParameterError("no known decoding radius for these parameters")

    @property
    def error_bound(self) -> int:
        """Worst-case rank weight of the error term seen by the decoder."""
        if self.scheme == BWE:
            return self.wx * self.w2 + self.wy * self.w1 + self.we
        return (self.wx + self.wy) * self.w1 + self.w2

    @property
    def pk_bytes(self) -> int:
        m = self.m
        if self.scheme == BWE:
            return _ceil8(m * self.n) + SEED_BYTES
        gens = self.t1 * self.n1 + self.t2 * self.n2
        if self.scheme == NH:
            return _ceil8(m * (self.t1 + self.t2 + 2 * self.n2) + gens)
        return _ceil8(m * (self.t1 + self.t2 + self.z * self.z + self.n1 * self.z) + gens)

    @property
    def ct_bytes(self) -> int:
        if self.scheme == UR:
            return _ceil8(self.m * (self.z * self.n2 + self.n))
        return 2 * _ceil8(self.m * self.n)

    @property
    def message_bytes(self) -> int:
        return self.k * self.field.nbytes

    @property
    def name(self) -> str:
        return f"RQC.EGK-{self.scheme}-{self.level}" if self.level else f"RQC.EGK-{self.scheme}"

    # -- checks --------------------------------------------------------------
    def validate(self) -> None:
        if self.scheme not in SCHEME_IDS:
            raise ParameterError(f"unknown scheme {self.scheme!r}")
        if not 1 <= self.m <= 128:
            raise ParameterError("m must lie in [1, 128]")
        if not (1 <= self.k1 <= self.t1 <= min(self.n1, self.m)):
            raise ParameterError("need 1 <= k1 <= t1 <= min(n1, m)")
        if not (1 <= self.k2 <= self.t2 <= min(self.n2, self.m)):
            raise ParameterError("need 1 <= k2 <= t2 <= min(n2, m)")
        if self.t2 != self.m:
            raise ParameterError("the block decoder requires t2 = m")
        if self.regime is None:
            raise ParameterError("parameters outside both decodable regimes")
        if self.scheme == UR and self.z < 1:
            raise ParameterError("the unstructured variant needs z >= 1")
        if self.scheme != UR and self.z:
            raise ParameterError("z only applies to the unstructured variant")
        if not 0 <= self.w1 <= self.w2 <= self.m and self.scheme != BWE:
            raise ParameterError("need w1 <= w2 <= m")
        if self.blockwise and self.wx + self.wy > self.m:
            raise ParameterError("secret weights exceed m")
        if self.scheme == BWE and self.blockwise and self.w1 + self.we + self.w2 > self.m:
            raise ParameterError("encryption weights exceed m")
        if self.scheme == BWE:
            if self.error_bound > self.radius:
                raise ParameterError("error term may exceed the decoding radius")
        elif self.r > self.radius:
            raise ParameterError("error budget r exceeds the decoding radius")

    def with_overrides(self, **kw) -> "SchemeParams":
        return replace(self, **kw)

    def as_mapping(self) -> dict[str, object]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_mapping(cls, data: Mapping[str, str | int | bool]) -> "SchemeParams":
        known = {f.name: f for f in fields(cls)}
        kw: dict[str, object] = {}
        for key, raw in data.items():
            if key not in known:
                raise ParameterError(f"unknown parameter {key!r}")
            if key == "scheme":
                kw[key] = _scheme_name(str(raw))
            elif key == "blockwise":
                kw[key] = raw if isinstance(raw, bool) else str(raw).lower() in ("1", "true", "yes")
            else:
                try:
                    kw[key] = int(raw, 0) if isinstance(raw, str) else int(raw)
                except ValueError as exc:
                    raise ParameterError(f"parameter {key!r} must be an integer") from exc
        try:
            return cls(**kw)
        except TypeError as exc:
            raise ParameterError(str(exc)) from exc


def _scheme_name(s: str) -> str:
    norm = s.replace("-", "").replace("_", "").lower()
    for name in SCHEME_IDS:
        if norm in (name.lower(), name.lower().replace("multi", "")):
            return name
    raise ParameterError(f"unknown scheme {s!r}")


def _row(row_id, scheme, level, n1, k1, n2, k2, m, r, t1, t2, wx, wy, w1, w2, we=0, z=0):
    return SchemeParams(
        scheme=scheme, n1=n1, k1=k1, n2=n2, k2=k2, m=m, r=r, t1=t1, t2=t2,
        wx=wx, wy=wy, w1=w1, w2=w2, we=we, z=z, level=level, row_id=row_id,
    )


REGISTRY: dict[int, SchemeParams] = {
    p.row_id: p
    for p in (
        _row(1, BWE, 128, 10, 3, 59, 5, 53, 21, 3, 53, 3, 3, 3, 3, we=3),
        _row(2, BWE, 192, 10, 3, 83, 7, 79, 36, 3, 79, 4, 4, 4, 4, we=4),
        _row(3, BWE, 256, 10, 3, 113, 3, 113, 55, 3, 113, 5, 5, 5, 5, we=5),
        _row(4, NH, 128, 6, 3, 86, 3, 85, 28, 3, 85, 4, 4, 3, 4),
        _row(5, NH, 192, 6, 3, 99, 3, 97, 45, 3, 97, 5, 5, 4, 5),
        _row(6, NH, 256, 11, 4, 116, 4, 116, 56, 4, 116, 5, 5, 5, 6),
        _row(7, UR, 128, 6, 3, 86, 3, 85, 22, 3, 85, 3, 3, 3, 4, z=3),
        _row(8, UR, 192, 6, 3, 92, 3, 91, 41, 3, 91, 4, 4, 4, 9, z=3),
        _row(9, UR, 256, 6, 4, 117, 4, 116, 56, 4, 116, 5, 5, 5, 6, z=3),
    )
}


def get_params(row_id: int) -> SchemeParams:
    try:
        return REGISTRY[row_id]
    except KeyError:
        raise ParameterError(f"unknown parameter row {row_id}") from None


def load_params_file(path: str) -> SchemeParams:
    """Flat ``key=value`` file; ``row=<id>`` starts from a registry row."""
    data: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParameterError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            data[key] = value
    base = data.pop("row", None)
    if base is not None:
        start = get_params(int(base)).as_mapping()
        start.update(data)
        return SchemeParams.from_mapping(start)
    return SchemeParams.from_mapping(data)
