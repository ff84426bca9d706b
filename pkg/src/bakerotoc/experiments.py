"""
Experiment runners behind the ``baker-otoc`` command.

Each runner takes an ``ExperimentConfig`` and returns the CSV text it wrote.
Every CSV starts with one ``#`` provenance line (package version plus the
config echo), then a header row.  Floats use 15 significant digits and
lines end in ``\\n``, so equal configs give byte-identical files.

CSV schemas
-----------
otoc / semiquantum : t,f2,f4,f,f_sq_exact,f_sq_approx,rmt_saturation
    f_sq_exact is empty at t = 0 or outside the closed form's range,
    f_sq_approx is empty where M = N/2^(t+1) < 8.  With ``normalize`` every
    value column is divided by N.
spectrum : t,kind,index,value_re,value_im
    kind is ``sv`` (squared singular value, value_im = 0) or ``eig``.
    t = 0 is the identity control.
cue-baseline : sample,f
    one row per CUE draw, then rows labelled mean, standard_error,
    rmt_saturation and within_3se (1 or 0).
"""

from dataclasses import dataclass, field, fields, replace
import io
import math
import time

import numpy as np

from . import __version__
from .analytics import (
    cue_samples_f,
    f_sq_approx,
    f_sq_exact,
    rmt_saturation,
    sample_cue,
    sum_asymptotic_check,
    digamma,
)
from .classical import PhasePoint, bit_reverse, iterate, periodic_points
from .linalg import (
    ProjectorRange,
    complex_eigenvalues,
    dft_shifted,
    frobenius_norm_sq,
    parity_operator,
    singular_values_squared,
    truncate,
    unitarity_error,
)
from . import quantum
from .otoc import (
    f2_direct_trace,
    f4_direct_trace,
    f4_of_truncation,
    f_commutator,
    f_cross_block,
    f_general_observable,
    otoc_series,
)

COMMANDS = ("otoc", "semiquantum", "spectrum", "cue-baseline", "verify")
MAX_DIMENSION = 4096


class ConfigError(ValueError):
    """Invalid experiment configuration."""


def fmt(x):
    return format(float(x), ".15g")


@dataclass
class ExperimentConfig:
    command: str
    n: int = 256
    t_max: int = None
    j_min: int = 0
    j_max: int = None
    mode: str = "quantum"
    seed: int = 0
    n_samples: int = 100
    normalize: bool = False
    output_path: str = None

    @property
    def range(self):
        return ProjectorRange(self.j_min, self.j_max)

    def resolved(self):
        """Copy with defaults filled in; raises ConfigError on any invalid field."""
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}; expected one of {COMMANDS}")
        cfg = replace(self)
        if cfg.command == "semiquantum":
            cfg.mode = "semiquantum"
        if cfg.mode not in ("quantum", "semiquantum"):
            raise ConfigError(f"mode must be quantum or semiquantum, got {cfg.mode!r}")
        n = cfg.n
        if cfg.command == "cue-baseline":
            if n < 2:
                raise ConfigError(f"N must be >= 2, got {n}")
        elif n < 2 or n % 2:
            raise ConfigError(f"N must be an even integer >= 2, got {n}")
        if n > MAX_DIMENSION:
            raise ConfigError(f"N={n} exceeds the dense-matrix limit {MAX_DIMENSION}")
        if cfg.j_max is None:
            cfg.j_max = n // 2 - 1
        if not 0 <= cfg.j_min <= cfg.j_max <= n - 1:
            raise ConfigError(f"projector range [{cfg.j_min}, {cfg.j_max}] invalid for N={n}")
        T = quantum.two_adic_valuation(n)
        if cfg.t_max is None:
            cfg.t_max = T if cfg.mode == "semiquantum" else int(math.ceil(math.log2(n))) + 4
        if cfg.t_max < 0:
            raise ConfigError("t_max must be >= 0")
        if cfg.command in ("otoc", "semiquantum", "spectrum") and cfg.mode == "semiquantum" and cfg.t_max > T:
            raise ConfigError(f"semiquantum mode needs t_max <= T={T} for N={n}")
        if cfg.command in ("otoc", "spectrum") and cfg.t_max > 1000:
            raise ConfigError("t_max limited to 1000")
        if cfg.command == "cue-baseline" and cfg.n_samples < 2:
            raise ConfigError("cue-baseline needs at least 2 samples")
        return cfg

    def echo(self):
        parts = [f"{f.name}={getattr(self, f.name)}" for f in fields(self) if f.name != "output_path"]
        return " ".join(parts)


_INT_KEYS = {"n", "t_max", "j_min", "j_max", "seed", "n_samples"}
_KEY_ALIASES = {"tmax": "t_max", "jmin": "j_min", "jmax": "j_max", "samples": "n_samples", "out": "output_path"}


def parse_config_text(text):
    """Parse ``key=value`` lines (``#`` starts a comment) into a dict of config fields."""
    valid = {f.name for f in fields(ExperimentConfig)}
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"config line {lineno}: expected key=value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_").lower()
        key = _KEY_ALIASES.get(key, key)
        if key not in valid:
            raise ConfigError(f"config line {lineno}: unknown key {key!r}")
        if key in _INT_KEYS:
            try:
                out[key] = int(value)
            except ValueError:
                raise ConfigError(f"config line {lineno}: {key} must be an integer, got {value!r}") from None
        elif key == "normalize":
            if value.lower() not in ("1", "0", "true", "false", "yes", "no"):
                raise ConfigError(f"config line {lineno}: normalize must be a boolean, got {value!r}")
            out[key] = value.lower() in ("1", "true", "yes")
        else:
            out[key] = value
    return out


def load_config_file(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config_text(fh.read())
    except OSError as exc:
        raise OSError(f"cannot read config file {path}: {exc.strerror}") from exc


def _header(cfg):
    return f"# baker-otoc {__version__} {cfg.echo()}\n"


def _emit(cfg, text):
    if cfg.output_path:
        try:
            with open(cfg.output_path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            raise OSError(f"cannot write {cfg.output_path}: {exc.strerror}") from exc
    return text


def run_otoc(config):
    cfg = config.resolved()
    n = cfg.n
    rng = cfg.range
    series = otoc_series(n, cfg.t_max, rng, cfg.mode)
    scale = 1.0 / n if cfg.normalize else 1.0
    rmt = rmt_saturation(n, rng.J) * scale if rng.J < n else 0.0
    buf = io.StringIO()
    buf.write(_header(cfg))
    buf.write("t,f2,f4,f,f_sq_exact,f_sq_approx,rmt_saturation\n")
    for rec in series:
        exact = approx = ""
        if rec.t >= 1:
            try:
                exact = fmt(f_sq_exact(n, rec.t) * scale)
            except ValueError:
                pass
            try:
                approx = fmt(f_sq_approx(n, rec.t) * scale)
            except ValueError:
                pass
        row = [str(rec.t), fmt(rec.f2 * scale), fmt(rec.f4 * scale), fmt(rec.f * scale), exact, approx, fmt(rmt)]
        buf.write(",".join(row) + "\n")
    return _emit(cfg, buf.getvalue())


@dataclass
class SpectrumRecord:
    t: int
    singular_values: np.ndarray
    eigenvalues: np.ndarray


def spectrum_records(n, t_max, rng, mode="quantum"):
    """Squared singular values and eigenvalues of the truncated propagator, t = 0..t_max."""
    records = []
    eye = np.eye(n, dtype=np.complex128)
    records.append(SpectrumRecord(0, singular_values_squared(truncate(eye, rng)), complex_eigenvalues(truncate(eye, rng))))
    b = quantum.build_baker(n) if mode == "quantum" else None
    power = eye
    for t in range(1, t_max + 1):
        power = b @ power if mode == "quantum" else quantum.build_semiquantum(n, t)
        block = truncate(power, rng)
        records.append(SpectrumRecord(t, singular_values_squared(block), complex_eigenvalues(block)))
    return records


def run_spectrum(config):
    cfg = config.resolved()
    records = spectrum_records(cfg.n, cfg.t_max, cfg.range, cfg.mode)
    buf = io.StringIO()
    buf.write(_header(cfg))
    buf.write("t,kind,index,value_re,value_im\n")
    for rec in records:
        for i, mu in enumerate(rec.singular_values):
            buf.write(f"{rec.t},sv,{i},{fmt(mu)},0\n")
        # modulus-descending order with a stable tie break keeps output deterministic
        lam = rec.eigenvalues[np.lexsort((rec.eigenvalues.imag, rec.eigenvalues.real, -np.abs(rec.eigenvalues)))]
        for i, z in enumerate(lam):
            buf.write(f"{rec.t},eig,{i},{fmt(z.real)},{fmt(z.imag)}\n")
    return _emit(cfg, buf.getvalue())


def run_cue_baseline(config):
    cfg = config.resolved()
    j = cfg.range.J
    vals = cue_samples_f(cfg.n, j, cfg.n_samples, cfg.seed)
    mean = float(np.mean(vals))
    se = float(np.std(vals, ddof=1) / np.sqrt(len(vals)))
    expected = rmt_saturation(cfg.n, j) if j < cfg.n else 0.0
    within = abs(mean - expected) <= 3 * se if se > 0 else mean == expected
    buf = io.StringIO()
    buf.write(_header(cfg))
    buf.write("sample,f\n")
    for i, v in enumerate(vals):
        buf.write(f"{i},{fmt(v)}\n")
    buf.write(f"mean,{fmt(mean)}\n")
    buf.write(f"standard_error,{fmt(se)}\n")
    buf.write(f"rmt_saturation,{fmt(expected)}\n")
    buf.write(f"within_3se,{int(within)}\n")
    return _emit(cfg, buf.getvalue())


@dataclass
class CheckResult:
    name: str
    measured: float
    expected: float
    tolerance: float
    passed: bool

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name}: measured={self.measured:.6g} expected={self.expected:.6g} tol={self.tolerance:.1e}"


@dataclass
class VerifyReport:
    n: int
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def add(self, name, measured, expected, tolerance, relative=False, upper_bound=False):
        measured, expected = float(measured), float(expected)
        if upper_bound:
            ok = measured <= expected + tolerance
        elif relative:
            ok = abs(measured - expected) <= tolerance * max(abs(expected), 1e-300)
        else:
            ok = abs(measured - expected) <= tolerance
        ok = ok and math.isfinite(measured)
        self.checks.append(CheckResult(name, measured, expected, tolerance, bool(ok)))

    def text(self):
        lines = [c.line() for c in self.checks]
        n_fail = sum(not c.passed for c in self.checks)
        lines.append(f"{len(self.checks) - n_fail}/{len(self.checks)} checks passed for N={self.n} in {self.seconds:.1f} s")
        return "\n".join(lines) + "\n"


def _max_rel(a, b):
    return max(abs(x - y) / max(abs(y), 1e-300) for x, y in zip(a, b))


def run_verify(config):
    """Cross-module invariant checks at reduced size; see ``VerifyReport``."""
    cfg = config.resolved()
    n = cfg.n
    if n > 1024:
        raise ConfigError("verify runs at N <= 1024")
    start = time.perf_counter()
    rep = VerifyReport(n)
    T = quantum.two_adic_valuation(n)
    half = ProjectorRange.left_half(n)
    small = min(n, 64)
    mid = min(n, 256)

    # classical
    worst = 0.0
    for t in range(1, 13):
        table = periodic_points(t)
        for q, p in zip(table.q, table.p):
            x = PhasePoint(q, p)
            y = iterate(x, t)
            dq, dp = abs(y.q - x.q), abs(y.p - x.p)
            worst = max(worst, math.hypot(min(dq, 1 - dq), min(dp, 1 - dp)))
    rep.add("classical: period-t points return, t<=12", worst, 0.0, 1e-10)
    bad = sum(bit_reverse(bit_reverse(v, 12), 12) != v for v in range(2**12))
    rep.add("classical: bit reversal involution, t=12", bad, 0, 0)

    # linear algebra
    for m in sorted({n, n // 2}):
        if m >= 2:
            rep.add(f"matrix: G_{m} unitarity", unitarity_error(dft_shifted(m)), 0.0, 1e-12)
    r = parity_operator(small)
    g = dft_shifted(small)
    rep.add(f"matrix: G_{small} parity symmetry", np.max(np.abs(r @ g @ r - g)), 0.0, 1e-12)

    # propagators
    b = quantum.build_baker(n)
    rep.add(f"quantum: B unitarity N={n}", unitarity_error(b), 0.0, 1e-12)
    r = parity_operator(n)
    rep.add(f"quantum: B parity N={n}", np.max(np.abs(r @ b @ r - b)), 0.0, 1e-12)
    rep.add("quantum: B_1 equals B", np.max(np.abs(quantum.build_semiquantum(n, 1) - b)), 0.0, 1e-12)
    for t in range(1, T + 1):
        bt = quantum.build_semiquantum(n, t)
        rep.add(f"quantum: B_{t} unitarity", unitarity_error(bt), 0.0, 1e-12)
        rep.add(f"semiquantum: f2(B_{t}) = N/4", frobenius_norm_sq(truncate(bt, half)), n / 4, 1e-9, relative=True)
        rep.add(f"semiquantum: f(B_{t}) = closed form", f_commutator(bt, half), f_sq_exact(n, t), 1e-8, relative=True)
    t_small = quantum.two_adic_valuation(small)
    for t in range(1, t_small + 1):
        diff = np.max(np.abs(quantum.build_semiquantum(small, t) - quantum.semiquantum_position_matrix(small, t)))
        rep.add(f"semiquantum: B_{t} vs position closed form N={small}", diff, 0.0, 1e-12)

    # otoc routes on the quantum series
    t_max = min(int(math.ceil(math.log2(n))) + 2, 14)
    power = np.eye(n, dtype=np.complex128)
    worst_route = worst_cross = worst_bound = 0.0
    jq = half.J
    for t in range(1, t_max + 1):
        power = b @ power
        mu = singular_values_squared(truncate(power, half))
        f_sv = float(np.sum(mu * (1 - mu)))
        f_24 = float(np.sum(mu) - np.sum(mu**2))
        worst_route = max(worst_route, abs(f_sv - f_24) / f_sv)
        if n <= 256:
            worst_cross = max(worst_cross, abs(f_cross_block(power, half) - f_sv) / f_sv)
        worst_bound = max(worst_bound, f_sv - jq / 4)
        if mu[0] > 1 + 1e-10:
            worst_bound = max(worst_bound, mu[0] - 1)
    rep.add("otoc: singular-value route vs f2 - f4", worst_route, 0.0, 1e-9)
    if n <= 256:
        rep.add("otoc: cross-block route vs singular values", worst_cross, 0.0, 1e-9)
    rep.add("otoc: f <= J/4 and mu <= 1", worst_bound, 0.0, 1e-9, upper_bound=True)

    bs = quantum.build_baker(small)
    hs = ProjectorRange.left_half(small)
    us = np.linalg.matrix_power(bs, 3)
    rep.add(f"otoc: f4 direct trace N={small}", f4_of_truncation(us, hs), f4_direct_trace(us, hs), 1e-9, relative=True)
    rep.add(f"otoc: f2 direct trace N={small}", frobenius_norm_sq(truncate(us, hs)), f2_direct_trace(us, hs), 1e-9, relative=True)
    comp = ProjectorRange(small // 2, small - 1)
    rep.add(f"otoc: complement symmetry N={small}", f_commutator(us, hs), f_commutator(us, comp), 1e-9, relative=True)
    p_diag = np.diag(hs.mask(small).astype(np.complex128))
    gen = f_general_observable(bs, p_diag, 3)[3]
    rep.add(f"otoc: general observable = projector f N={small}", gen, f_commutator(us, hs), 1e-9, relative=True)

    # closed forms
    if T >= 5 and n == 2**T:
        rep.add("analytics: f_SQ(T-2)", f_sq_exact(n, T - 2), (2 - 1 / math.sqrt(2)) * 2 ** (T - 5), 1e-12, relative=True)
        rep.add("analytics: f_SQ(T-1)", f_sq_exact(n, T - 1), 2 ** (T - 4), 1e-12, relative=True)
        rep.add("analytics: f_SQ(T)", f_sq_exact(n, T), 2 ** (T - 3), 1e-12, relative=True)
    rep.add("analytics: digamma(1) = -gamma", digamma(1.0), -0.57721566490153286061, 1e-12)
    e, c = sum_asymptotic_check(256)
    rep.add("analytics: digamma asymptotic M=256 (rel)", abs(e - c) / e, 0.0, 1e-4)
    rep.add("analytics: RMT J <-> N-J symmetry", rmt_saturation(n, n // 4), rmt_saturation(n, n - n // 4), 1e-12, relative=True)
    u = sample_cue(mid, cfg.seed)
    rep.add(f"analytics: CUE sample unitarity N={mid}", unitarity_error(u), 0.0, 1e-12)
    nc = min(n, 64)
    vals = cue_samples_f(nc, nc // 2, 40, cfg.seed)
    se = np.std(vals, ddof=1) / np.sqrt(len(vals))
    rep.add(f"analytics: CUE mean f within 3 SE, N={nc}", np.mean(vals), rmt_saturation(nc, nc // 2), 3 * se)

    # truncated spectra
    ut = truncate(u, ProjectorRange.left_half(mid))
    mu = singular_values_squared(ut)
    lam = complex_eigenvalues(ut)
    rep.add("spectrum: Weyl max|lambda|^2 <= max mu", np.max(np.abs(lam)) ** 2, mu[0], 1e-10, upper_bound=True)
    rep.add("spectrum: sum lambda = trace", abs(np.sum(lam) - np.trace(ut)), 0.0, 1e-8 * max(1.0, abs(np.trace(ut))))

    rep.seconds = time.perf_counter() - start
    return rep
