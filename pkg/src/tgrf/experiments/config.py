"""Sweep configurations, stored as JSON"""

import dataclasses
from dataclasses import dataclass, field

from ..errors import ConfigError
from ..torus import SchemeDescriptor

# h lists of the extension-ratio sweep, per dimension
FIG2_H = {
    1: [2.0**-k for k in range(8, 17)],
    2: [2.0**-k for k in range(4, 9)],
    3: [2.0**-k for k in range(3, 6)],
}
# d=3 is capped at this spacing unless `full_sweep` is set
FIG2_D3_CAP = 2.0**-4

# spacing of the smoothness sweep, per dimension
FIG3_H = {1: 1 / 40000, 2: 1 / 800, 3: 1 / 30}
FIG3_NU = [2.0**k for k in range(-7, 4)]


@dataclass
class SweepConfig:
    """Parameters of a minimal-γ sweep

    Parameters
    ----------
    kind : {"fig2", "fig3"}
        "fig2" sweeps h at fixed ν and compares extension ratios; "fig3" sweeps
        ν at fixed h and compares cutoffs.
    d : int
    lam : float
    nu_list, h_list : list of float
    schemes : list of dict
        `SchemeDescriptor` dictionaries, e.g. {"kind": "expsmooth"}.
    e0 : float
    output : str or None
        CSV output path; the checkpoint and metadata files sit next to it.
    svg : str or None
        Optional SVG plot path.
    n_min, n_max : int or None
        Initial bisection bracket; derived per row when None.
    nmax_cap : int or None
        Largest N the bracket may expand to; derived from `max_cells` when None.
    max_cells : int or None
        Memory cap on N^d; defaults to the `max_cells` setting.
    pd_rel_tol : float
    workers : int or None
    full_sweep : bool
        Lift the d=3 spacing cap of the extension-ratio sweep.

    """
    kind: str
    d: int
    lam: float = 0.5
    nu_list: list = field(default_factory=lambda: [1.0])
    h_list: list = field(default_factory=list)
    schemes: list = field(default_factory=lambda: [{"kind": "classical"}, {"kind": "expsmooth"}])
    e0: float = 0.5
    output: str = None
    svg: str = None
    n_min: int = None
    n_max: int = None
    nmax_cap: int = None
    max_cells: int = None
    pd_rel_tol: float = 1e-13
    workers: int = None
    full_sweep: bool = False

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.kind not in ("fig2", "fig3"):
            raise ConfigError(f"Unknown sweep kind '{self.kind}'; expected 'fig2' or 'fig3'")
        if self.d not in (1, 2, 3):
            raise ConfigError(f"Dimension must be 1, 2, or 3; got {self.d}")
        if not self.lam > 0:
            raise ConfigError(f"λ must be positive; got {self.lam}")
        if not self.e0 > 0:
            raise ConfigError(f"e0 must be positive; got {self.e0}")
        for name in ("nu_list", "h_list", "schemes"):
            if not getattr(self, name):
                raise ConfigError(f"'{name}' must be a nonempty list")
        if any(not 0 < nu <= 60 for nu in self.nu_list):
            raise ConfigError(f"Every ν must lie in (0, 60]; got {self.nu_list}")
        if any(not h > 0 for h in self.h_list):
            raise ConfigError(f"Every h must be positive; got {self.h_list}")
        try:
            descriptors = self.descriptors
        except ValueError as e:
            raise ConfigError(f"Invalid scheme descriptor in {self.schemes}") from e
        if self.kind == "fig3" and any(s.is_classical for s in descriptors):
            raise ConfigError("The smoothness sweep compares smooth cutoffs only")
        for name in ("n_min", "n_max"):
            value = getattr(self, name)
            if value is not None and (int(value) != value or value < 2 or value % 2):
                raise ConfigError(f"'{name}' must be an even integer ≥ 2; got {value}")
        if self.n_min is not None and self.n_max is not None and not self.n_min < self.n_max:
            raise ConfigError(f"Need n_min < n_max; got {self.n_min}, {self.n_max}")

    @property
    def descriptors(self):
        return [SchemeDescriptor.from_dict(s) for s in self.schemes]

    @property
    def effective_h_list(self):
        """`h_list` after applying the d=3 spacing cap"""
        if self.kind == "fig2" and self.d == 3 and not self.full_sweep:
            return [h for h in self.h_list if h >= FIG2_D3_CAP * (1 - 1e-12)]
        return list(self.h_list)

    @classmethod
    def fig2(cls, d, **kwargs):
        """Extension-ratio sweep over h at ν = 1, classical against smooth"""
        kwargs.setdefault("h_list", list(FIG2_H[d]))
        return cls(kind="fig2", d=d, **kwargs)

    @classmethod
    def fig3(cls, d, **kwargs):
        """Smoothness sweep over ν at fixed h, B-spline against exponential cutoff"""
        kwargs.setdefault("h_list", [FIG3_H[d]])
        kwargs.setdefault("nu_list", list(FIG3_NU))
        kwargs.setdefault("schemes", [{"kind": "bspline"}, {"kind": "expsmooth"}])
        return cls(kind="fig3", d=d, **kwargs)

    def to_dict(self):
        return dataclasses.asdict(self)

    def to_json(self, file=None, indent=4):
        import json
        if file is None:
            return json.dumps(self.to_dict(), indent=indent, separators=(",", ": "))
        json.dump(self.to_dict(), file, indent=indent, separators=(",", ": "))

    def to_json_file(self, file_name, indent=4):
        from pathlib import Path
        path = Path(file_name).expanduser().resolve()
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w") as f:
            self.to_json(f, indent=indent)

    save = to_json_file

    @classmethod
    def from_dict(cls, data):
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ConfigError(f"Unknown configuration keys {sorted(unknown)}")
        if "kind" not in data or "d" not in data:
            raise ConfigError("Configuration needs at least 'kind' and 'd'")
        data = dict(data)
        for name in ("nu_list", "h_list"):
            if name in data:
                data[name] = [float(_number(v)) for v in data[name]]
        return cls(**data)

    @classmethod
    def from_json_file(cls, file_name):
        import json
        from pathlib import Path
        path = Path(file_name).expanduser().resolve()
        try:
            with path.open("r") as f:
                data = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"Failed to parse '{path}' as JSON") from e
        return cls.from_dict(data)

    load = from_json_file


def _number(value):
    from ..utilities import parse_float
    return parse_float(value) if isinstance(value, str) else float(value)


def default_configs(kind, full_sweep=False):
    """Configurations for d = 1, 2, 3 with the published sweep parameters"""
    factory = SweepConfig.fig2 if kind == "fig2" else SweepConfig.fig3
    return [factory(d, full_sweep=full_sweep) if kind == "fig2" else factory(d) for d in (1, 2, 3)]

