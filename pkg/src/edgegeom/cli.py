"""Batch command-line front end.

Reads germ-spec text files describing a surface germ, a plane-curve
germ, or a surface-plus-source-curve pair, runs the classification /
invariant / order pipelines, prints a human-readable report, and writes
machine-readable CSV.  Output is deterministic: the same spec, flags,
and seed always produce byte-identical reports and CSV files.

Spec file format (UTF-8, LF newlines, '#' comments)::

    kind: surface            # or plane-curve, curve-on-surface
    mode: rational           # or float
    trunc: 12

    [surface]                # monomial: component vector (x, y, z)
    u^1 v^0: 1, 0, 0
    u^0 v^2: 0, 1/2, 0
    u^0 v^3: 0, 0, 1/6

    [curve]                  # plane curves have two components (x, y)
    t^4: 1, 0
    t^1: 0, 1

A curve-on-surface spec may reference another spec file instead of an
inline section, via ``surface-file: PATH`` (path relative to the spec).

Commands: classify, invariants, orders, verify, sample.
Exit codes: 0 success, 1 parse/usage error, 2 verification
disagreement, 3 inconclusive (order undecidable at this truncation).
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from .jets import FLOAT, RATIONAL, Jet1, Jet2, JetError, Vec3
from .plane_curves import (PlaneCurveGerm, PreconditionError, bias_behavior,
                           curve_normal_form, cuspidal_curvature)
from .edge_model import adapt, classify
from .edge_invariants import (gauss_mean_orders, is_front, kappa_s_nu_t,
                              omega)
from .curve_on_edge import (contact_data, kg_kn_tg, predict_orders,
                            sample_graphs, verify_orders)

__all__ = ["SpecError", "GermSpec", "parse_spec", "load_spec", "run", "main"]

KINDS = ("surface", "plane-curve", "curve-on-surface")
MODES = {"rational": RATIONAL, "float": FLOAT}


class SpecError(Exception):
    """Parse error with file/line location."""

    def __init__(self, message: str, path: str = "<spec>", line: int = 0):
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {message}" if line
                         else f"{path}: {message}")


@dataclass
class GermSpec:
    kind: str
    mode: str  # "rational" | "float"
    trunc: int
    surface: dict | None = None   # {(i, j): coefficient}
    curve: dict | None = None     # {i: coefficient}
    path: str = "<spec>"


def _parse_coefficient(text: str, mode: str, path: str, line: int):
    text = text.strip()
    if mode == "rational":
        if "/" in text:
            num, _, den = text.partition("/")
            try:
                n = int(num.strip())
                d = int(den.strip())
            except ValueError:
                raise SpecError(f"malformed fraction {text!r}", path, line)
            if d == 0:
                raise SpecError("zero denominator", path, line)
            return Fraction(n, d)
        try:
            return Fraction(int(text))
        except ValueError:
            raise SpecError(
                f"malformed rational coefficient {text!r}", path, line)
    try:
        return float(Fraction(text) if "/" in text else text)
    except (ValueError, ZeroDivisionError):
        raise SpecError(f"malformed float coefficient {text!r}", path, line)


def _parse_vector(text: str, arity: int, mode: str, path: str, line: int):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != arity:
        raise SpecError(
            f"expected {arity} comma-separated components, got {len(parts)}",
            path, line)
    return tuple(_parse_coefficient(p, mode, path, line) for p in parts)


def _parse_monomial(key: str, section: str, path: str, line: int):
    parts = key.split()
    if section == "surface":
        if len(parts) != 2 or not parts[0].startswith("u^") \
                or not parts[1].startswith("v^"):
            raise SpecError(
                f"expected monomial 'u^i v^j', got {key!r}", path, line)
        try:
            return int(parts[0][2:]), int(parts[1][2:])
        except ValueError:
            raise SpecError(f"malformed exponent in {key!r}", path, line)
    if len(parts) != 1 or not parts[0].startswith("t^"):
        raise SpecError(f"expected monomial 't^i', got {key!r}", path, line)
    try:
        return int(parts[0][2:])
    except ValueError:
        raise SpecError(f"malformed exponent in {key!r}", path, line)


def parse_spec(text: str, path: str = "<spec>",
               base_dir: str = ".") -> GermSpec:
    """Parse a germ-spec file with line-precise diagnostics."""
    header: dict[str, tuple[str, int]] = {}
    sections: dict[str, dict] = {}
    section_lines: dict[str, dict] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        if stripped.startswith("[") and stripped.endswith("]"):
            name = stripped[1:-1].strip()
            if name not in ("surface", "curve"):
                raise SpecError(f"unknown section [{name}]", path, lineno)
            if name in sections:
                raise SpecError(f"duplicate section [{name}]", path, lineno)
            sections[name] = {}
            section_lines[name] = {}
            current = name
            continue
        if ":" not in stripped:
            raise SpecError(f"expected 'key: value', got {stripped!r}",
                            path, lineno)
        key, _, value = stripped.partition(":")
        key = key.strip()
        value = value.strip()
        if current is None:
            if key in header:
                raise SpecError(f"duplicate field {key!r}", path, lineno)
            header[key] = (value, lineno)
        else:
            if key in sections[current]:
                raise SpecError(f"duplicate monomial {key!r}", path, lineno)
            sections[current][key] = value
            section_lines[current][key] = lineno

    def take(name, default=None, required=False):
        if name in header:
            return header.pop(name)
        if required:
            raise SpecError(f"missing required field {name!r}", path)
        return (default, 0)

    kind, kline = take("kind", required=True)
    if kind not in KINDS:
        raise SpecError(
            f"unknown kind {kind!r} (expected one of {', '.join(KINDS)})",
            path, kline)
    mode, mline = take("mode", "rational")
    if mode not in MODES:
        raise SpecError(f"unknown mode {mode!r}", path, mline)
    trunc_s, tline = take("trunc", "12")
    try:
        trunc = int(trunc_s)
    except ValueError:
        raise SpecError(f"malformed truncation {trunc_s!r}", path, tline)
    if not 2 <= trunc <= 60:
        raise SpecError(f"truncation {trunc} out of range [2, 60]",
                        path, tline)

    file_refs = {}
    for ref in ("surface-file", "curve-file"):
        if ref in header:
            value, lineno = header.pop(ref)
            file_refs[ref.split("-")[0]] = (value, lineno)
    for key, (_, lineno) in header.items():
        raise SpecError(f"unknown field {key!r}", path, lineno)

    out: dict[str, dict] = {}
    for name in ("surface", "curve"):
        if name in sections and name in file_refs:
            raise SpecError(
                f"both [{name}] section and {name}-file given",
                path, file_refs[name][1])
        if name in file_refs:
            ref_path, lineno = file_refs[name]
            full = os.path.join(base_dir, ref_path)
            try:
                with open(full, encoding="utf-8") as fh:
                    sub = parse_spec(fh.read(), full,
                                     os.path.dirname(full) or ".")
            except OSError as exc:
                raise SpecError(f"cannot read {ref_path!r}: {exc.strerror}",
                                path, lineno)
            part = sub.surface if name == "surface" else sub.curve
            if part is None:
                raise SpecError(
                    f"referenced file {ref_path!r} has no [{name}] data",
                    path, lineno)
            out[name] = part
            continue
        if name not in sections:
            continue
        parsed = {}
        for key, value in sections[name].items():
            lineno = section_lines[name][key]
            mono = _parse_monomial(key, name, path, lineno)
            degree = mono if isinstance(mono, int) else mono[0] + mono[1]
            if degree > trunc:
                raise SpecError(
                    f"exponent of {key!r} beyond truncation {trunc}",
                    path, lineno)
            if mono in parsed:
                raise SpecError(f"duplicate monomial {key!r}", path, lineno)
            arity = 3 if name == "surface" else 2
            parsed[mono] = _parse_vector(value, arity, mode, path, lineno)
        out[name] = parsed

    need = {"surface": ("surface",), "plane-curve": ("curve",),
            "curve-on-surface": ("surface", "curve")}[kind]
    for name in need:
        if name not in out:
            raise SpecError(f"kind {kind!r} requires [{name}] data", path)
    for name in out:
        if name not in need:
            raise SpecError(
                f"kind {kind!r} does not take [{name}] data", path)
    return GermSpec(kind=kind, mode=mode, trunc=trunc,
                    surface=out.get("surface"), curve=out.get("curve"),
                    path=path)


def load_spec(path: str) -> GermSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SpecError(f"cannot read file: {exc.strerror}", path)
    return parse_spec(text, path, os.path.dirname(path) or ".")


def _apply_mode_override(spec: GermSpec, mode: str | None) -> GermSpec:
    if mode is None or mode == spec.mode:
        return spec
    if spec.mode == "float" and mode == "rational":
        raise SpecError("cannot promote a float spec to rational mode",
                        spec.path)

    def conv(d):
        if d is None:
            return None
        return {k: tuple(float(c) for c in vec) for k, vec in d.items()}

    return GermSpec(kind=spec.kind, mode=mode, trunc=spec.trunc,
                    surface=conv(spec.surface), curve=conv(spec.curve),
                    path=spec.path)


def _surface_germ(spec: GermSpec) -> Vec3:
    mode = MODES[spec.mode]
    exact = mode == RATIONAL
    N = spec.trunc
    comps = []
    for axis in range(3):
        terms = {mono: vec[axis] for mono, vec in spec.surface.items()
                 if vec[axis] != 0}
        comps.append(Jet2(terms, N, mode, exact))
    return Vec3(*comps)


def _curve_germ(spec: GermSpec) -> PlaneCurveGerm:
    mode = MODES[spec.mode]
    exact = mode == RATIONAL
    N = spec.trunc
    comps = []
    for axis in range(2):
        terms = {mono: vec[axis] for mono, vec in spec.curve.items()
                 if vec[axis] != 0}
        if 0 in terms:
            raise SpecError("curve germ must vanish at t = 0", spec.path)
        comps.append(Jet1.from_terms(terms, N, mode, exact))
    return PlaneCurveGerm(comps[0], comps[1])


def _format_number(x, mode: str = "float") -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 \
            else str(x.numerator)
    if x is None:
        return ""
    return format(float(x), ".17g")


def _atomic_write(path: str, data: str) -> None:
    tmp = f"{path}.tmp.{os.getpid()}"
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(data)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def _bool_str(b) -> str:
    return "true" if b else "false"


def _order_str(ov) -> str:
    return "identically-zero" if ov is None else str(ov)


def _report_surface_classify(spec: GermSpec, lines: list) -> int:
    cl = classify(_surface_germ(spec))
    nf = cl.normal_form
    front = is_front(cl.adapted)
    lines.append(f"m={cl.m} n={cl.n if cl.n is not None else '?'} "
                 f"r={cl.r if cl.r is not None else '?'} "
                 f"front={_bool_str(front)}")
    for key, val in sorted(cl.criteria.items()):
        lines.append(f"criterion {key}: {_bool_str(val)}")
    if cl.n is None:
        lines.append(f"note: no admissible exponent found up to degree "
                     f"{nf.n_bound}; raise the truncation")
        return 3
    return 0


def _report_curve_classify(spec: GermSpec, lines: list) -> int:
    gamma = _curve_germ(spec)
    nf = curve_normal_form(gamma)
    lines.append(f"m={nf.m} n={nf.n if nf.n is not None else '?'}")
    if nf.n is None:
        lines.append(f"note: no admissible exponent found up to degree "
                     f"{nf.n_bound}; raise the truncation")
        return 3
    lines.append(f"r_{{{nf.m},{nf.n}}}={_format_number(nf.r.to_float())}")
    try:
        bb = bias_behavior(gamma)
        lines.append(f"tangent-line behavior: {bb['label']}"
                     f" (first bias index k={bb['k']})")
    except PreconditionError as exc:
        lines.append(f"tangent-line behavior: not classified ({exc})")
    return 0


def _report_surface_invariants(spec: GermSpec, lines: list) -> int:
    ad = adapt(_surface_germ(spec))
    m = ad.m
    kk = kappa_s_nu_t(ad)
    lines.append(f"m={m}")
    lines.append(f"kappa_s(0)={_format_number(kk['kappa_s0'])}")
    lines.append(f"kappa_nu(0)={_format_number(kk['kappa_nu0'])}")
    lines.append(f"kappa_t(0)={_format_number(float(kk['kappa_t0']))}")
    for i in range(1, m + 1):
        try:
            w = omega(ad, i)
        except JetError:
            break
        lines.append(f"omega_{{{m},{m + i}}}(0)={_format_number(w['value'])}")
        if not w["D_jet"].is_zero():
            break
    gm = gauss_mean_orders(ad)
    lines.append(f"ord K={_order_str(gm['ord_K'])}")
    lines.append(f"ord H={_order_str(gm['ord_H'])}")
    return 0


def _report_curve_invariants(spec: GermSpec, lines: list) -> int:
    gamma = _curve_germ(spec)
    cc = cuspidal_curvature(gamma)
    m, n = cc["m"], cc["n"]
    lines.append(f"m={m} n={n if n is not None else '?'}")
    for j, val in sorted(cc["biases_float"].items()):
        lines.append(f"beta_{{{m},{j}}}={_format_number(val)}")
    if n is None:
        lines.append("note: no admissible exponent to truncation; "
                     "cuspidal curvature undefined")
        return 3
    lines.append(f"r_{{{m},{n}}}={_format_number(cc['r_float'])}")
    return 0


def _contact(spec: GermSpec):
    ad = adapt(_surface_germ(spec))
    cd = contact_data(ad, _curve_germ(spec), in_original_coords=True)
    return ad, cd


def _report_orders(spec: GermSpec, lines: list) -> int:
    ad, cd = _contact(spec)
    pred = predict_orders(ad, cd)
    comp = kg_kn_tg(ad, cd)
    lines.append(f"m={pred['m']} l={pred['l']} k={comp['k']}")
    for key, val in sorted(pred["invariants"].items()):
        lines.append(f"{key}={_format_number(val)}")
    status = 0
    for key in ("kappa_g", "kappa_n", "tau_g"):
        p, li = pred[key], comp[key]
        lines.append(
            f"{key}: predicted={p['order']} computed={_order_str(li.order)} "
            f"[{p['label']}]")
        if li.order is not None and not li.order.is_exact:
            status = 3
    return status


def _verify_rows(ad, cd):
    vr = verify_orders(ad, cd)
    rows = []
    for key in ("kappa_g", "kappa_n", "tau_g"):
        r = vr["results"][key]
        rows.append((
            key,
            str(r["predicted"]),
            "" if r["condition"] is None
            else _format_number(float(r["condition"])),
            _order_str(r["computed"]),
            _bool_str(r["agrees"]),
        ))
    return vr, rows


def _report_verify(spec: GermSpec, lines: list, csv_out: list) -> int:
    ad, cd = _contact(spec)
    vr, rows = _verify_rows(ad, cd)
    csv_out.append("invariant,predicted,condition_value,computed,agrees")
    for row in rows:
        csv_out.append(",".join(row))
    status = 0
    for key, r in vr["results"].items():
        lines.append(
            f"{key}: predicted={r['predicted']} "
            f"computed={_order_str(r['computed'])} "
            f"agrees={_bool_str(r['agrees'])}")
        if not r["agrees"]:
            status = 2
        elif status == 0 and r["computed"] is not None \
                and not r["computed"].is_exact:
            status = 3
    lines.append(f"status: {'OK' if status == 0 else 'DISAGREE' if status == 2 else 'INCONCLUSIVE'}")
    return status


def _report_sample(spec: GermSpec, seed: int, lines: list,
                   csv_out: list) -> int:
    ad, cd = _contact(spec)
    rng = random.Random(seed)
    ts = sorted(2.0 ** (-(j + rng.random()) / 2.0) for j in range(4, 24))
    rows = sample_graphs(ad, cd, ts)
    csv_out.append("t,kappa_g,kappa_n,tau_g")
    for row in rows:
        csv_out.append(",".join(format(x, ".17g") for x in row))
    lines.append(f"sampled {len(rows)} points on a geometric grid "
                 f"(seed={seed})")
    return 0


def run(spec: GermSpec, command: str, seed: int = 0):
    """Execute one command on a parsed spec.

    Returns (exit_code, report_text, csv_text_or_None).
    """
    lines: list[str] = []
    csv_out: list[str] = []
    lines.append(f"# kind={spec.kind} mode={spec.mode} trunc={spec.trunc} "
                 f"command={command}")
    dispatch = {
        ("surface", "classify"): lambda: _report_surface_classify(spec, lines),
        ("plane-curve", "classify"): lambda: _report_curve_classify(
            spec, lines),
        ("surface", "invariants"): lambda: _report_surface_invariants(
            spec, lines),
        ("plane-curve", "invariants"): lambda: _report_curve_invariants(
            spec, lines),
        ("surface", "orders"): lambda: _report_surface_invariants(
            spec, lines),
        ("curve-on-surface", "classify"): lambda: _coe_classify(spec, lines),
        ("curve-on-surface", "invariants"): lambda: _report_surface_invariants(
            spec, lines),
        ("curve-on-surface", "orders"): lambda: _report_orders(spec, lines),
        ("curve-on-surface", "verify"): lambda: _report_verify(
            spec, lines, csv_out),
        ("curve-on-surface", "sample"): lambda: _report_sample(
            spec, seed, lines, csv_out),
    }
    fn = dispatch.get((spec.kind, command))
    if fn is None:
        raise SpecError(
            f"command {command!r} does not apply to kind {spec.kind!r}",
            spec.path)
    code = fn()
    report = "\n".join(lines) + "\n"
    csv_text = "\n".join(csv_out) + "\n" if csv_out else None
    return code, report, csv_text


def _coe_classify(spec: GermSpec, lines: list) -> int:
    code = _report_surface_classify(spec, lines)
    ad, cd = _contact(spec)
    comp = kg_kn_tg(ad, cd)
    if cd.l is None:
        lines.append("curve: tangent to the null line to truncation "
                     "(contact order l undetermined)")
        return 3 if code == 0 else code
    lines.append(f"curve: l={cd.l} k={comp['k']} "
                 f"c(0)={_format_number(cd.c.coefficient(0))}")
    return code


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="edgegeom",
        description="Classify edge singularities and compute their "
        "curvature invariants from germ-spec files.",
    )
    parser.add_argument("command",
                        choices=("classify", "invariants", "orders",
                                 "verify", "sample"))
    parser.add_argument("spec", nargs="+", help="germ-spec file(s)")
    parser.add_argument("--mode", choices=("rational", "float"),
                        help="override the spec's coefficient mode")
    parser.add_argument("--trunc", type=int,
                        help="override the spec's truncation degree")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for the sample grid (default 0)")
    parser.add_argument("--out",
                        help="CSV output path (default: print after report)")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0

    worst = 0
    for path in args.spec:
        try:
            spec = load_spec(path)
            if args.trunc is not None:
                if not 2 <= args.trunc <= 60:
                    raise SpecError(
                        f"truncation {args.trunc} out of range [2, 60]", path)
                spec = GermSpec(kind=spec.kind, mode=spec.mode,
                                trunc=args.trunc, surface=spec.surface,
                                curve=spec.curve, path=spec.path)
            spec = _apply_mode_override(spec, args.mode)
            code, report, csv_text = run(spec, args.command, args.seed)
        except SpecError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        except (JetError, PreconditionError) as exc:
            print(f"error: {path}: {exc}", file=sys.stderr)
            return 1
        sys.stdout.write(report)
        if csv_text is not None:
            if args.out:
                out_path = args.out if len(args.spec) == 1 else \
                    f"{args.out}.{os.path.splitext(os.path.basename(path))[0]}.csv"
                _atomic_write(out_path, csv_text)
                sys.stdout.write(f"csv: {out_path}\n")
            else:
                sys.stdout.write(csv_text)
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
