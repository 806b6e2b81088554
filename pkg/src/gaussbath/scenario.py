"""Scenario configuration, orchestration and deterministic CSV emission.

Configs are flat ``key=value`` text ('#' starts a comment, later keys
override earlier ones, CLI flags override file values).  All outputs are
plain CSV with a fixed column order and shortest round-trip float
formatting, so identical configs reproduce byte-identical files.
"""

import dataclasses
from dataclasses import dataclass

import numpy as np

from .boundmode import find_bound_mode, spectral_function_y, superohmic_criterion
from .gaussian import measures_from_amplitude
from .lattice import build_chain, discrete_bound_modes, exact_amplitude
from .spectra import CavityArraySpectrum, OhmicFamilySpectrum
from .volterra import ConvergenceError, SystemMode, TimeGrid, decay_rates, solve_amplitude

MEASURE_COLUMNS = ("discord", "mutual_info", "classical", "log_neg")
SOLVE_COLUMNS_HEAD = (
    "t", "u_re", "u_im", "u_abs2", "gamma", "omega_shift",
    "I1", "I2", "I3", "I4", "nu_minus", "nu_plus",
)
NA = "NA"

OHMIC_KEYS = {"eta", "n", "omega_c", "omega_ref"}
ARRAY_KEYS = {"g", "xi", "omega_C", "N"}
SWEEPABLE = ("eta", "n", "omega_c", "omega_ref", "g", "xi", "omega_C", "omega0", "r")


class ConfigError(Exception):
    """Carries the full list of configuration problems, not just the first."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


@dataclass(frozen=True)
class ScenarioConfig:
    model: str
    omega0: float = 1.0
    r: float = 1.0
    t_max: float = 50.0
    steps: int = 5000
    tol: float = 1e-5
    topology: str = "ring"
    eta: float | None = None
    n: float | None = None
    omega_c: float | None = None
    omega_ref: float | None = None
    g: float | None = None
    xi: float | None = None
    omega_C: float | None = None
    N: int | None = None
    outputs: tuple = MEASURE_COLUMNS
    sweep: str | None = None
    sweep_values: tuple | None = None


def _parse_sites(text):
    if text == "continuum":
        return None
    return int(text)


def _parse_outputs(text):
    return tuple(part.strip() for part in text.split(",") if part.strip())


def _parse_values(text):
    return tuple(float(part) for part in text.split(",") if part.strip())


_PARSERS = {
    "model": str,
    "eta": float,
    "n": float,
    "omega_c": float,
    "omega_ref": float,
    "g": float,
    "xi": float,
    "omega_C": float,
    "N": _parse_sites,
    "omega0": float,
    "r": float,
    "t_max": float,
    "steps": int,
    "tol": float,
    "topology": str,
    "outputs": _parse_outputs,
    "sweep": str,
    "sweep_values": _parse_values,
}


def parse_config(text, overrides=None):
    """Parse ``key=value`` text (plus optional override mapping) into a
    validated ScenarioConfig; raises ConfigError listing every problem."""
    errors = []
    raw = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            errors.append(f"line {lineno}: expected key=value, got {line!r}")
            continue
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _PARSERS:
            errors.append(f"line {lineno}: unknown key {key!r}")
            continue
        raw[key] = (value, lineno)
    values = {}
    for key, (text_value, lineno) in raw.items():
        try:
            values[key] = _PARSERS[key](text_value)
        except ValueError:
            errors.append(f"line {lineno}: invalid value for {key!r}: {text_value!r}")
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key not in _PARSERS:
            errors.append(f"unknown key {key!r}")
            continue
        if isinstance(value, str):
            try:
                values[key] = _PARSERS[key](value)
            except ValueError:
                errors.append(f"invalid value for {key!r}: {value!r}")
        else:
            values[key] = value
    return _build_config(values, errors)


def _build_config(values, errors=None):
    errors = list(errors or [])
    model = values.get("model")
    has_ohmic = any(k in values for k in ("eta", "n", "omega_c", "omega_ref"))
    has_array = any(k in values for k in ("g", "xi", "omega_C", "N"))
    if model is None:
        if has_ohmic and not has_array:
            model = "ohmic"
        elif has_array and not has_ohmic:
            model = "array"
        elif has_ohmic and has_array:
            errors.append("both Ohmic-family and array keys given; set model= explicitly")
        else:
            errors.append("no model parameters given")
    elif model not in ("ohmic", "array"):
        errors.append(f"model must be 'ohmic' or 'array', got {model!r}")
    if model == "ohmic" and has_array:
        errors.append("array keys (g, xi, omega_C, N) are invalid for model=ohmic")
    if model == "array" and has_ohmic:
        errors.append("Ohmic-family keys (eta, n, omega_c, omega_ref) are invalid for model=array")

    positive = ("n", "omega_c", "omega_ref", "xi", "omega_C", "omega0", "t_max", "tol")
    for key in positive:
        if values.get(key) is not None and values[key] <= 0:
            errors.append(f"{key} must be > 0, got {values[key]}")
    # zero coupling (free evolution) is legitimate
    for key in ("eta", "g", "r"):
        if values.get(key) is not None and values[key] < 0:
            errors.append(f"{key} must be >= 0, got {values[key]}")
    if values.get("steps") is not None and values["steps"] < 2:
        errors.append(f"steps must be >= 2, got {values['steps']}")
    if values.get("N") is not None and values["N"] < 1:
        errors.append(f"N must be >= 1, got {values['N']}")
    if values.get("topology") not in (None, "ring", "open"):
        errors.append(f"topology must be 'ring' or 'open', got {values['topology']!r}")

    if model == "ohmic":
        for key in ("eta", "n", "omega_c"):
            if values.get(key) is None:
                errors.append(f"model=ohmic requires {key}")
    if model == "array":
        for key in ("g", "xi"):
            if values.get(key) is None:
                errors.append(f"model=array requires {key}")
        values.setdefault("omega_C", 1.0)
        g, xi, wC = values.get("g"), values.get("xi"), values.get("omega_C")
        if g and xi and wC and wC <= 2 * xi:
            errors.append(f"omega_C={wC} must exceed 2*xi={2 * xi}")

    outputs = values.get("outputs")
    if outputs is not None:
        for name in outputs:
            if name not in MEASURE_COLUMNS:
                errors.append(f"unknown output column {name!r}")
    sweep = values.get("sweep")
    if sweep is not None and sweep not in SWEEPABLE:
        errors.append(f"sweep parameter must be one of {SWEEPABLE}, got {sweep!r}")
    if sweep is not None and not values.get("sweep_values"):
        errors.append("sweep requires sweep_values")

    if errors:
        raise ConfigError(errors)
    kwargs = {k: v for k, v in values.items() if k in ScenarioConfig.__dataclass_fields__}
    kwargs["model"] = model
    return ScenarioConfig(**kwargs)


def serialize_config(cfg):
    """Canonical key=value rendering; parse_config(serialize_config(c)) == c."""
    lines = [f"model={cfg.model}"]
    for key in ("eta", "n", "omega_c", "omega_ref", "g", "xi", "omega_C"):
        value = getattr(cfg, key)
        if value is not None:
            lines.append(f"{key}={value!r}")
    if cfg.N is not None:
        lines.append(f"N={cfg.N}")
    elif cfg.model == "array":
        lines.append("N=continuum")
    lines.append(f"omega0={cfg.omega0!r}")
    lines.append(f"r={cfg.r!r}")
    lines.append(f"t_max={cfg.t_max!r}")
    lines.append(f"steps={cfg.steps}")
    lines.append(f"tol={cfg.tol!r}")
    lines.append(f"topology={cfg.topology}")
    if cfg.outputs != MEASURE_COLUMNS:
        lines.append("outputs=" + ",".join(cfg.outputs))
    if cfg.sweep is not None:
        lines.append(f"sweep={cfg.sweep}")
        lines.append("sweep_values=" + ",".join(repr(v) for v in cfg.sweep_values))
    return "\n".join(lines) + "\n"


def build_model(cfg):
    if cfg.model == "ohmic":
        omega_ref = cfg.omega_ref if cfg.omega_ref is not None else cfg.omega0
        return OhmicFamilySpectrum(eta=cfg.eta, n=cfg.n, omega_c=cfg.omega_c, omega_ref=omega_ref)
    return CavityArraySpectrum(g=cfg.g, xi=cfg.xi, omega_C=cfg.omega_C, sites=cfg.N)


def build_mode(cfg):
    return SystemMode(omega0=cfg.omega0)


def build_grid(cfg):
    return TimeGrid(t_max=cfg.t_max, steps=cfg.steps)


def _fmt(x):
    return repr(float(x))


def _solve_header(cfg):
    return ",".join(SOLVE_COLUMNS_HEAD + tuple(cfg.outputs) + ("branch",))


def _trajectory_rows(cfg, traj):
    rates = decay_rates(traj)
    meas = measures_from_amplitude(traj.u, cfg.r)
    times = traj.times
    u = traj.u
    abs2 = np.abs(u) ** 2
    rows = []
    for j in range(len(times)):
        row = [
            _fmt(times[j]), _fmt(u[j].real), _fmt(u[j].imag), _fmt(abs2[j]),
            _fmt(rates.gamma[j]) if rates.valid[j] else NA,
            _fmt(rates.omega_shift[j]) if rates.valid[j] else NA,
            _fmt(meas["I1"][j]), _fmt(meas["I2"][j]), _fmt(meas["I3"][j]), _fmt(meas["I4"][j]),
            _fmt(meas["nu_minus"][j]), _fmt(meas["nu_plus"][j]),
        ]
        row.extend(_fmt(meas[name][j]) for name in cfg.outputs)
        row.append(str(meas["branch"][j]))
        rows.append(",".join(row))
    return rows


def run_scenario(cfg):
    """Solve one scenario; returns (header, row lines) for the solve CSV."""
    traj = solve_amplitude(build_model(cfg), build_mode(cfg), build_grid(cfg), tol=cfg.tol)
    return _solve_header(cfg), _trajectory_rows(cfg, traj)


def run_oracle(cfg):
    """Exact finite-lattice amplitude pushed through the same CSV pipeline."""
    model = build_model(cfg)
    if not isinstance(model, CavityArraySpectrum) or model.sites is None:
        raise ConfigError(["the oracle needs model=array with a finite N"])
    chain = build_chain(model, build_mode(cfg), topology=cfg.topology)
    traj = exact_amplitude(chain, build_grid(cfg))
    return _solve_header(cfg), _trajectory_rows(cfg, traj)


def run_sweep(cfg):
    """Long-format sweep; returns (header, rows, failures).

    Sweep points run independently; a failing point is recorded in
    ``failures`` as (value, message) and the remaining points still emit.
    """
    if cfg.sweep is None:
        raise ConfigError(["sweep requires a sweep parameter (sweep=...)"])
    header = "sweep_value,t,discord,u_abs2,log_neg"
    rows = []
    failures = []
    for value in cfg.sweep_values:
        point = dataclasses.replace(cfg, sweep=None, sweep_values=None, **{cfg.sweep: value})
        try:
            traj = solve_amplitude(
                build_model(point), build_mode(point), build_grid(point), tol=point.tol
            )
        except Exception as exc:  # recorded per point, partial results kept
            failures.append((value, str(exc)))
            continue
        meas = measures_from_amplitude(traj.u, point.r)
        abs2 = np.abs(traj.u) ** 2
        times = traj.times
        sv = _fmt(value)
        for j in range(len(times)):
            rows.append(
                f"{sv},{_fmt(times[j])},{_fmt(meas['discord'][j])},"
                f"{_fmt(abs2[j])},{_fmt(meas['log_neg'][j])}"
            )
    return header, rows, failures


def _mode_summary_lines(cfg, model, mode):
    bm = find_bound_mode(model, mode)
    lines = [f"# exists={'true' if bm.exists else 'false'}"]
    if bm.exists:
        lines.append(f"# E_b={_fmt(bm.E_b)}")
        lines.append(f"# Z={_fmt(bm.Z)}")
        lines.append(f"# Z2={_fmt(bm.Z ** 2)}")
        if len(bm.roots) > 1:
            roots = ";".join(f"{_fmt(E)}:{_fmt(Z)}" for E, Z in bm.roots)
            lines.append(f"# roots={roots}")
    if isinstance(model, OhmicFamilySpectrum) and model.n == 3:
        _, margin = superohmic_criterion(model.eta, model.omega_c, mode.omega0)
        lines.append(f"# superohmic_margin={_fmt(margin)}")
    if isinstance(model, CavityArraySpectrum) and model.sites is not None:
        chain = build_chain(model, mode, topology=cfg.topology)
        modes = discrete_bound_modes(chain)
        rendered = ";".join(f"{_fmt(E)}:{_fmt(w)}" for E, w in modes)
        lines.append(f"# lattice_modes={rendered}")
    return lines


def _mode_sample_energies(model, samples=150):
    if isinstance(model, OhmicFamilySpectrum):
        span = 3.0 * max(model.omega_c, 1.0)
        return [np.linspace(-span, 0.0, 2 * samples + 1)]
    if model.sites is not None:
        eps = model.mode_energies()
        lo, hi = float(eps.min()), float(eps.max())
    else:
        lo, hi = model.band
    width = 6.0 * model.xi
    gap = 1e-9 * model.omega_C
    return [
        np.linspace(lo - width, lo - gap, samples),
        np.linspace(hi + gap, hi + width, samples),
    ]


def run_modes(cfg):
    """(E, y(E)) samples outside the support plus a bound-mode summary block."""
    model = build_model(cfg)
    mode = build_mode(cfg)
    rows = []
    for grid in _mode_sample_energies(model):
        for E in grid:
            rows.append(f"{_fmt(E)},{_fmt(spectral_function_y(model, mode, E))}")
    rows.extend(_mode_summary_lines(cfg, model, mode))
    return "E,y", rows


def write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for row in rows:
            fh.write(row + "\n")


# ---------------------------------------------------------------------------
# canned figure-reproduction scenarios (caption parameter values)

_OHMIC_BASE = dict(model="ohmic", n=3.0, omega_c=1.0, omega0=1.0, r=1.0,
                   t_max=50.0, steps=2500, tol=1e-3)
_ARRAY_BASE = dict(model="array", g=0.02, xi=0.05, omega_C=1.0, N=200, r=1.0)


def _figure_specs():
    return {
        "fig1a": dict(
            kind="sweep",
            cfg=ScenarioConfig(**_OHMIC_BASE, eta=0.05, sweep="eta",
                               sweep_values=tuple(np.round(np.arange(1, 21) * 0.05, 2))),
        ),
        "fig1b": dict(
            kind="sweep",
            cfg=ScenarioConfig(**_OHMIC_BASE, eta=0.08, sweep="omega_c",
                               sweep_values=tuple(np.round(np.arange(1, 13) * 0.25, 2))),
        ),
        "fig2a": dict(kind="solve_set", param="eta", values=(0.08, 0.5, 1.0),
                      cfg=ScenarioConfig(**_OHMIC_BASE, eta=0.08)),
        "fig2b": dict(kind="solve_set", param="omega_c", values=(1.0, 2.0, 3.0),
                      cfg=ScenarioConfig(**{**_OHMIC_BASE, "omega_c": 1.0}, eta=0.08)),
        "fig4a": dict(kind="modes_set", values=(0.8, 0.85, 0.9, 0.95),
                      cfg=ScenarioConfig(**_ARRAY_BASE, omega0=0.8)),
        "fig4b": dict(
            kind="sweep",
            cfg=ScenarioConfig(**_ARRAY_BASE, omega0=0.8, t_max=500.0, steps=10000,
                               tol=1e-3, sweep="omega0",
                               sweep_values=(0.8, 0.85, 0.9, 0.95)),
        ),
        "fig5a": dict(kind="solve_set", param="eta", values=(0.08, 0.5, 1.0),
                      cfg=ScenarioConfig(**_OHMIC_BASE, eta=0.08)),
        "fig5b": dict(kind="solve_set", param="omega_c", values=(1.0, 2.0, 3.0),
                      cfg=ScenarioConfig(**{**_OHMIC_BASE, "omega_c": 1.0}, eta=0.08)),
    }


FIGURES = tuple(sorted(_figure_specs()))


def reproduce(figure, out):
    """Emit the CSV data behind one of the published figures.

    ``out`` names the output file; figures made of several independent runs
    append a parameter tag to its stem.  Returns the list of written paths.
    """
    specs = _figure_specs()
    if figure not in specs:
        raise ConfigError([f"unknown figure {figure!r}; choose from {FIGURES}"])
    spec = specs[figure]
    written = []
    if spec["kind"] == "sweep":
        header, rows, failures = run_sweep(spec["cfg"])
        if failures:
            raise ConvergenceError(f"sweep points failed: {failures}", error_estimate=float("nan"))
        write_csv(out, header, rows)
        written.append(out)
    elif spec["kind"] == "solve_set":
        stem = out[:-4] if out.endswith(".csv") else out
        for value in spec["values"]:
            cfg = dataclasses.replace(spec["cfg"], **{spec["param"]: value})
            header, rows = run_scenario(cfg)
            path = f"{stem}_{spec['param']}_{value!r}.csv"
            write_csv(path, header, rows)
            written.append(path)
    else:  # modes_set over omega0
        header = "omega0,E,y"
        rows = []
        for value in spec["values"]:
            cfg = dataclasses.replace(spec["cfg"], omega0=value)
            sub_header, sub_rows = run_modes(cfg)
            tag = _fmt(value)
            for row in sub_rows:
                if row.startswith("#"):
                    rows.append(f"# omega0={tag} {row[2:]}")
                else:
                    rows.append(f"{tag},{row}")
        write_csv(out, header, rows)
        written.append(out)
    return written
