"""Command-line interface: ``pointlaplace <command> [options]``.

Boundary conditions come from ``--preset`` (with ``--A11``, ``--A21``,
``--tau``) or from ``--config FILE``, a JSON document::

    {"label": "robin", "A": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]],
     "B": [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]}

where every matrix entry is an ``[re, im]`` pair.  A config may instead
name a preset: ``{"preset": "example-3.3", "tau": 0.5}``.

Exit codes: 0 success, 2 input error, 3 refusal (evolution of a
non-generator), 4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import cayley, oracle, resolvent, semigroup, spectral
from .boundary import BCPair, CayleyClass, classify, new_bc
from .complex2 import TOLERANCE_PROFILES, TolerancePolicy
from .errors import NotAGenerator, PointLaplaceError, WrongClass
from .grid import GridFunction, PanelGrid

EXIT_OK, EXIT_INPUT, EXIT_REFUSED, EXIT_NUMERICAL = 0, 2, 3, 4

PRESET_PARAMS = {"example-3.2": ("A11", "A21"), "example-3.3": ("tau",)}


def _preset(name: str, A11: complex = 1.0, A21: complex = 0.0, tau: float = 0.0):
    I2 = np.eye(2)
    if name == "dirichlet":
        return I2, np.zeros((2, 2))
    if name == "neumann":
        return np.zeros((2, 2)), I2
    if name == "example-3.2":
        return np.array([[A11, 0], [A21, 0]], dtype=complex), I2
    if name == "example-3.3":
        if not 0 <= tau < math.pi / 2:
            raise ValueError("tau must lie in [0, pi/2)")
        return (np.array([[1, -np.exp(1j * tau)], [0, 0]]),
                np.array([[0, 0], [1, np.exp(-1j * tau)]]))
    if name == "example-3.4":
        return I2, np.array([[0, 0], [-1, 0]], dtype=float)
    if name == "example-3.5":
        return np.array([[1, 0], [0, 0]], dtype=float), np.array([[0, 0], [1, 0]], dtype=float)
    if name == "example-6.6":
        return np.array([[0, -1], [-1, 0]], dtype=float), I2
    raise ValueError(f"unknown preset {name!r}")


PRESETS = ("dirichlet", "neumann", "example-3.2", "example-3.3", "example-3.4",
           "example-3.5", "example-6.6")


@dataclass(frozen=True)
class BCConfig:
    A: np.ndarray
    B: np.ndarray
    label: str = ""
    preset: Optional[str] = None
    params: tuple = ()

    def to_bc(self, tol: TolerancePolicy) -> BCPair:
        return new_bc(self.A, self.B, tol)


def preset_config(name: str, **params) -> BCConfig:
    allowed = PRESET_PARAMS.get(name, ())
    used = {k: v for k, v in params.items() if v is not None and k in allowed}
    A, B = _preset(name, **used)
    return BCConfig(np.asarray(A, dtype=complex), np.asarray(B, dtype=complex), name, name,
                    tuple(sorted(used.items())))


def _parse_number(v) -> complex:
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        z = complex(v)
    elif isinstance(v, (list, tuple)) and len(v) == 2 and all(
            isinstance(p, (int, float)) and not isinstance(p, bool) for p in v):
        z = complex(v[0], v[1])
    else:
        raise ValueError(f"expected a number or an [re, im] pair, got {v!r}")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError("matrix entries must be finite")
    return z


def _parse_matrix(m) -> np.ndarray:
    if not (isinstance(m, list) and len(m) == 2 and all(isinstance(r, list) and len(r) == 2 for r in m)):
        raise ValueError("a matrix must be a 2x2 nested list")
    return np.array([[_parse_number(v) for v in row] for row in m], dtype=complex)


def parse_config(doc: dict) -> BCConfig:
    if not isinstance(doc, dict):
        raise ValueError("config must be a JSON object")
    if "preset" in doc:
        params = {k: doc[k] for k in ("A11", "A21", "tau") if k in doc}
        for k in ("A11", "A21"):
            if k in params:
                params[k] = _parse_number(params[k])
        if "tau" in params:
            params["tau"] = float(params["tau"])
        cfg = preset_config(doc["preset"], **params)
        return BCConfig(cfg.A, cfg.B, doc.get("label", cfg.label), cfg.preset, cfg.params)
    if "A" not in doc or "B" not in doc:
        raise ValueError("config needs either 'preset' or both 'A' and 'B'")
    return BCConfig(_parse_matrix(doc["A"]), _parse_matrix(doc["B"]), str(doc.get("label", "")))


def encode(obj):
    """JSON-ready form: complex numbers become ``[re, im]``, enums their value."""
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [encode(v) for v in obj.tolist()] if obj.dtype != complex else \
            [encode(v) for v in obj]
    if hasattr(obj, "value") and isinstance(getattr(obj, "value"), str):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    return obj


class Report:
    """An ordered set of sections, each a list of ``(key, value, citation)``."""

    def __init__(self, title: str):
        self.title = title
        self.sections: dict[str, list] = {}

    def add(self, section: str, key: str, value, cite: str = ""):
        self.sections.setdefault(section, []).append((key, encode(value), cite))

    def to_dict(self) -> dict:
        return {"title": self.title,
                "sections": {s: [{"key": k, "value": v, "cite": c} for k, v, c in rows]
                             for s, rows in self.sections.items()}}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, doc: dict) -> "Report":
        r = cls(doc["title"])
        for s, rows in doc["sections"].items():
            r.sections[s] = [(row["key"], row["value"], row["cite"]) for row in rows]
        return r

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def get(self, section: str, key: str):
        for k, v, _ in self.sections.get(section, []):
            if k == key:
                return v
        raise KeyError(f"{section}/{key}")

    def render(self) -> str:
        lines = [self.title, "=" * len(self.title)]
        for s, rows in self.sections.items():
            lines.append(f"[{s}]")
            for k, v, c in rows:
                tag = f"  ({c})" if c else ""
                lines.append(f"  {k}: {_fmt(v)}{tag}")
        return "\n".join(lines)


def _num(v) -> str:
    """Round-trip decimal text for a CSV cell."""
    return repr(float(v))


def _fmt(v) -> str:
    if isinstance(v, list) and len(v) == 2 and all(isinstance(p, float) for p in v):
        re, im = v
        return f"{re:.10g}{im:+.10g}i"
    if isinstance(v, list):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    if isinstance(v, float):
        return f"{v:.10g}"
    return str(v)


def _classification_section(rep: Report, bc: BCPair, tol: TolerancePolicy):
    cl = classify(bc, tol)
    rep.add("classification", "rank (A B)", bc.rank, "Sec. 2")
    rep.add("classification", "regular", cl.regular, "Def. 2.1")
    if not cl.regular:
        rep.add("classification", "status", "irregular: spectrum = C (whole plane)", "Remark 2.2")
    rep.add("classification", "dim Ker A", cl.dim_ker_A, "Table 1")
    rep.add("classification", "dim Ker B", cl.dim_ker_B, "Table 1")
    rep.add("classification", "table1 row", cl.table1_row.value if cl.table1_row else "none", "Table 1")
    rep.add("classification", "m-sectorial", cl.msectorial is not None, "Sec. 4")
    if cl.msectorial is not None:
        rep.add("classification", "L", cl.msectorial.L, "Sec. 4")
        rep.add("classification", "P", cl.msectorial.P, "Sec. 4")
    rep.add("classification", "cayley class", cl.cayley_class, "Table 2")
    return cl


def _verdict_section(rep: Report, bc: BCPair, tol: TolerancePolicy):
    v = spectral.generator_verdict(bc, tol)
    rep.add("generator", "generates", v.generates, "Thm 3.1(b)")
    rep.add("generator", "reason", v.reason, "Thm 3.1(b)")
    if not v.generates:
        rep.add("generator", "status", "not a generator (Thm 3.1(b))", "Thm 3.1(b)")
    rep.add("generator", "analytic", v.analytic, "Thm 3.1(c)")
    rep.add("generator", "uniformly bounded (sufficient)", v.uniformly_bounded_sufficient, "Thm 3.1(d)")
    rep.add("generator", "cosine function", v.cosine_function, "Thm 3.1(e)")
    rep.add("generator", "contractive (sufficient)", v.contractive_sufficient, "Thm 3.1(e)")
    rep.add("generator", "quasi-contractive", v.quasi_contractive, "Thm 3.1(e)")
    return v


def _spectrum_section(rep: Report, bc: BCPair, tol: TolerancePolicy):
    sp = spectral.spectrum(bc, tol)
    rep.add("spectrum", "essential", sp.essential, "Thm 3.1(a)")
    rep.add("spectrum", "residual", sp.residual, "Thm 3.1(a)")
    rows = []
    for e in sp.eigenvalues:
        mult = "simple" if e.geometric_multiplicity == 1 else "double"
        rows.append({"k": e.k, "kappa0": e.k.imag if abs(e.k.real) == 0 else None,
                     "delta_eigenvalue": e.lambda_delta, "multiplicity": e.geometric_multiplicity,
                     "text": f"Delta-eigenvalue {_fmt(encode(e.lambda_delta))}, {mult}"})
    rep.add("spectrum", "eigenvalues", rows, "Thm 3.1(a), Remark 3.2")
    return sp


def _header(rep: Report, cfg: BCConfig):
    rep.add("input", "label", cfg.label)
    rep.add("input", "A", cfg.A)
    rep.add("input", "B", cfg.B)


def cmd_classify(cfg: BCConfig, tol: TolerancePolicy, args) -> Report:
    bc = cfg.to_bc(tol)
    rep = Report("classify")
    _header(rep, cfg)
    _classification_section(rep, bc, tol)
    _verdict_section(rep, bc, tol)
    _spectrum_section(rep, bc, tol)
    return rep


def cmd_spectrum(cfg: BCConfig, tol: TolerancePolicy, args) -> Report:
    bc = cfg.to_bc(tol)
    rep = Report("spectrum")
    _header(rep, cfg)
    _spectrum_section(rep, bc, tol)
    if args.kmax <= 0:
        raise ValueError("--kmax must be positive")
    p = cayley.det_poly(bc)
    kappas = np.linspace(0, args.kmax, args.samples + 1)[1:]
    dets = p(1j * kappas)
    rep.add("spectrum", "det samples", len(kappas), "Thm 3.1(a)")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["kappa", "k_re", "k_im", "det_re", "det_im"])
            for kap, d in zip(kappas, dets):
                w.writerow([_num(kap), 0.0, _num(kap), _num(d.real), _num(d.imag)])
    return rep


def _profile(bc: BCPair, grid: PanelGrid, name: str, tol: TolerancePolicy) -> GridFunction:
    if name == "gaussian":
        return GridFunction.from_function(grid, lambda e, x: np.exp(-(x - 3.0) ** 2) * (e == 1))
    if name == "eigen":
        sp = spectral.spectrum(bc, tol)
        if not sp.eigenvalues:
            raise ValueError("--profile eigen needs an eigenvalue")
        e = sp.eigenvalues[0]
        a = e.eigenvectors[0]
        return GridFunction.from_function(grid, lambda edge, x: a[edge - 1] * np.exp(1j * e.k * x))
    raise ValueError(f"unknown profile {name!r}")


def cmd_evolve(cfg: BCConfig, tol: TolerancePolicy, args) -> Report:
    bc = cfg.to_bc(tol)
    if not args.t > 0:
        raise ValueError("--t must be positive")
    verdict = spectral.generator_verdict(bc, tol)
    if not verdict.generates:
        raise NotAGenerator(f"not a generator (Thm 3.1(b)): {verdict.reason.value}")
    grid = PanelGrid.uniform(args.x_max, 0.5)
    f0 = _profile(bc, grid, args.profile, tol)
    times = [args.t * (j + 1) / args.slices for j in range(args.slices)]
    xs = np.arange(0.0, min(args.x_max, 20.0) + 1e-12, 0.25)
    rep = Report("evolve")
    _header(rep, cfg)
    rows = [(0.0, f0)]
    for t in times:
        rows.append((t, semigroup.evolve(bc, f0, t, tol=tol)))
    m0 = f0.mass()
    rep.add("evolve", "profile", args.profile)
    rep.add("evolve", "initial mass", m0)
    rep.add("evolve", "final mass", rows[-1][1].mass())
    rep.add("evolve", "norm ratio", rows[-1][1].norm() / f0.norm())
    if args.profile == "eigen":
        probe = int(np.argmax(np.abs(f0.values[0]) + np.abs(f0.values[1])))
        e = int(np.argmax(np.abs(f0.values[:, probe])))
        rep.add("evolve", "final/initial ratio", rows[-1][1].values[e, probe] / f0.values[e, probe])
        rep.add("evolve", "expected ratio", np.exp(spectral.spectrum(bc, tol).eigenvalues[0].lambda_delta * args.t))
    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["t", "edge", "x", "f_re", "f_im", "mass_re", "mass_im"])
            for t, ft in rows:
                m = ft.mass()
                for edge in (1, 2):
                    vals = ft.evaluate(edge, xs)
                    for x, v in zip(xs, vals):
                        w.writerow([_num(t), edge, _num(x), _num(v.real), _num(v.imag),
                                    _num(m.real), _num(m.imag)])
    return rep


def _kappa_grid(spec: Optional[str]):
    if not spec:
        return None
    if ":" in spec:
        lo, hi, n = spec.split(":")
        return np.geomspace(float(lo), float(hi), int(n))
    return np.array([float(v) for v in spec.split(",")])


def _invariance_section(rep: Report, r: semigroup.InvarianceReport):
    rep.add("invariance", "property", r.property)
    rep.add("invariance", "verdict", r.verdict, r.criterion_used)
    rep.add("invariance", "criterion", r.criterion_used)
    if r.witness is not None:
        rep.add("invariance", "witness", r.witness, r.criterion_used)
    for k, v in r.data.items():
        rep.add("invariance", k, v, r.criterion_used)


def run_invariance(bc: BCPair, prop: str, kappa_grid=None, tol: TolerancePolicy = None):
    from .complex2 import DEFAULT_TOL
    tol = tol or DEFAULT_TOL
    if prop == "real":
        return semigroup.invariance_kernel_sample(bc, semigroup.Property.REAL, kappa_grid, tol=tol)
    if prop in ("positive", "linf"):
        if classify(bc, tol).msectorial is not None:
            cone = semigroup.Cone.POSITIVE_CONE if prop == "positive" else semigroup.Cone.LINF_UNIT_BALL
            return semigroup.invariance_msectorial(bc, cone, tol)
        p = semigroup.Property.POSITIVE if prop == "positive" else semigroup.Property.LINF_CONTRACTIVE
        return semigroup.invariance_kernel_sample(bc, p, kappa_grid, tol=tol)
    if prop == "asymptotic-positive":
        return semigroup.asymptotic_positivity(bc, tol)
    raise ValueError(f"unknown property {prop!r}")


def cmd_invariance(cfg: BCConfig, tol: TolerancePolicy, args) -> Report:
    bc = cfg.to_bc(tol)
    rep = Report("invariance")
    _header(rep, cfg)
    _invariance_section(rep, run_invariance(bc, args.property, _kappa_grid(args.kappa_grid), tol))
    return rep


def cmd_validate(cfg: BCConfig, tol: TolerancePolicy, args) -> Report:
    bc = cfg.to_bc(tol)
    rep = Report("validate")
    _header(rep, cfg)
    cl = classify(bc, tol)
    if not cl.regular:
        raise WrongClass("validation needs regular boundary conditions")
    d = oracle.discretize(bc, L=args.L, h=args.h)
    rep.add("oracle", "L", d.L)
    rep.add("oracle", "h", d.h)
    sp = spectral.spectrum(bc, tol)
    if sp.eigenvalues:
        found = oracle.oracle_eigenvalues(d, count=max(4, len(sp.eigenvalues)), key="offaxis")
        rows = []
        for e in sp.eigenvalues:
            mu = e.lambda_delta
            near = found[np.argmin(np.abs(found - mu))]
            rows.append({"analytic": mu, "oracle": near, "mismatch": abs(near - mu)})
        rep.add("eigenvalues", "comparison", rows, "Thm 3.1(a)")
        rep.add("eigenvalues", "max mismatch", max(r["mismatch"] for r in rows))
    if cl.cayley_class is CayleyClass.LINEAR_GROWTH:
        kappas = [4.0, 8.0, 16.0]
        norms = [oracle.oracle_resolvent_norm(d, 1j * kap) for kap in kappas]
        rep.add("resolvent decay", "kappa", kappas, "Lemma 5.3")
        rep.add("resolvent decay", "oracle norm", norms, "Lemma 5.3")
        rep.add("resolvent decay", "slope", resolvent.loglog_slope(kappas, norms), "Lemma 5.3")
        rep.add("resolvent decay", "hille-yosida slope", -2.0, "Lemma 5.3")
    else:
        k = 1j * (1.0 + max([0.0] + [abs(p.k) for p in cayley.poles(bc, tol)]))
        y_index = int(round(1.0 / d.h))
        col = oracle.oracle_green_column(d, k, 1, y_index)
        mask = d.x_full <= 5.0
        xs = d.x_full[mask]
        K = resolvent.kernel_matrix(bc, k, xs, [d.x_full[y_index]], tol=tol)[:, 0, :, 0]
        err = np.max(np.abs(col[:, mask] - K)) / np.max(np.abs(K))
        rep.add("kernel", "k", k, "Sec. 5")
        rep.add("kernel", "relative error vs oracle", float(err), "Sec. 5")
    return rep


def _sweep_row(cfg: BCConfig, tol: TolerancePolicy) -> dict:
    bc = cfg.to_bc(tol)
    cl = classify(bc, tol)
    v = spectral.generator_verdict(bc, tol)
    sp = spectral.spectrum(bc, tol)
    row = {"regular": cl.regular, "generates": v.generates, "reason": v.reason.value,
           "cosine_function": v.cosine_function, "cayley_class": cl.cayley_class.value,
           "n_eigenvalues": len(sp.eigenvalues)}
    if sp.eigenvalues:
        mu = sp.eigenvalues[0].lambda_delta
        row["eigenvalue_re"], row["eigenvalue_im"] = mu.real, mu.imag
    else:
        row["eigenvalue_re"], row["eigenvalue_im"] = "", ""
    norm = ""
    if cl.regular:
        for kap in (1.0, 1.37, 2.71):
            try:
                norm = float(np.linalg.norm(cayley.eval(bc, 1j * kap, tol).S, 2))
                break
            except PointLaplaceError:
                continue
    row["cayley_norm"] = norm
    return row


def cmd_sweep(cfg: BCConfig, tol: TolerancePolicy, args) -> Report:
    if cfg.preset not in PRESET_PARAMS or args.param not in PRESET_PARAMS[cfg.preset]:
        raise ValueError(f"--param must be one of {PRESET_PARAMS.get(cfg.preset, ())} for this preset")
    lo, hi, n = args.range.split(":")
    lo, hi, n = float(lo), float(hi), int(n)
    if n < 1:
        raise ValueError("--range needs at least one point")
    values = np.linspace(lo, hi, n) if lo != hi else np.array([lo])
    base = dict(cfg.params)
    rows = []
    for val in values:
        params = dict(base)
        params[args.param] = float(val)
        rows.append({args.param: float(val), **_sweep_row(preset_config(cfg.preset, **params), tol)})
    rep = Report("sweep")
    rep.add("sweep", "param", args.param)
    rep.add("sweep", "points", len(rows))
    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
            w.writeheader()
            for r in rows:
                w.writerow({k: (_num(v) if isinstance(v, float) else v) for k, v in r.items()})
    return rep


COMMANDS = {
    "classify": cmd_classify,
    "spectrum": cmd_spectrum,
    "evolve": cmd_evolve,
    "invariance": cmd_invariance,
    "validate": cmd_validate,
    "sweep": cmd_sweep,
}


def _complex_arg(s: str) -> complex:
    return complex(s.replace("i", "j"))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=PRESETS)
    src.add_argument("--config", help="JSON file with A, B as [re, im] pairs, or a preset")
    common.add_argument("--A11", type=_complex_arg, help="example-3.2 parameter (default 1)")
    common.add_argument("--A21", type=_complex_arg, help="example-3.2 parameter (default 0)")
    common.add_argument("--tau", type=float, help="example-3.3 parameter in [0, pi/2) (default 0)")
    common.add_argument("--tol-profile", choices=sorted(TOLERANCE_PROFILES), default="default",
                        help="strict: rank 1e-12, root 1e-11; default: rank 1e-10, root 1e-9; "
                             "loose: rank 1e-8, root 1e-7")
    common.add_argument("--json", dest="json_out", help="write the machine-readable report here")

    p = argparse.ArgumentParser(prog="pointlaplace",
                                description="Laplacians with point interactions on two half-lines.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common], help="classification and generator verdict")
    s = sub.add_parser("spectrum", parents=[common], help="eigenvalues and det(A+ikB) samples")
    s.add_argument("--kmax", type=float, default=5.0)
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--out", help="CSV of det(A+ikB) along k = i(0, kmax]")
    s = sub.add_parser("evolve", parents=[common], help="heat semigroup time slices")
    s.add_argument("--t", type=float, required=True)
    s.add_argument("--profile", choices=["gaussian", "eigen"], default="gaussian")
    s.add_argument("--slices", type=int, default=4)
    s.add_argument("--x-max", dest="x_max", type=float, default=40.0)
    s.add_argument("--out", help="CSV of time slices")
    s = sub.add_parser("invariance", parents=[common], help="invariance properties")
    s.add_argument("--property", required=True,
                   choices=["real", "positive", "linf", "asymptotic-positive"])
    s.add_argument("--kappa-grid", help="comma list, or lo:hi:n for a geometric grid")
    s = sub.add_parser("validate", parents=[common], help="compare against the finite-difference oracle")
    s.add_argument("--L", type=float, default=40.0)
    s.add_argument("--h", type=float, default=0.01)
    s = sub.add_parser("sweep", parents=[common], help="one-parameter family of a preset")
    s.add_argument("--param", required=True, choices=["A11", "A21", "tau"])
    s.add_argument("--range", required=True, help="lo:hi:n")
    s.add_argument("--out", help="CSV output")
    return p


def load_config(args) -> BCConfig:
    if args.config:
        with open(args.config) as fh:
            doc = json.load(fh)
        return parse_config(doc)
    return preset_config(args.preset, A11=args.A11, A21=args.A21, tau=args.tau)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    tol = TOLERANCE_PROFILES[args.tol_profile]
    try:
        cfg = load_config(args)
        rep = COMMANDS[args.command](cfg, tol, args)
    except NotAGenerator as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PointLaplaceError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT if isinstance(exc, WrongClass) else EXIT_NUMERICAL
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(rep.render())
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(rep.to_json())
    return EXIT_OK


def main_exit():  # pragma: no cover
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_exit()
