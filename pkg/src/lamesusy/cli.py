"""Command-line front end: ``lamesusy <verb> [options]``.

Every verb emits a ResultDocument ({meta, records}) as JSON or CSV.  Exit
codes: 0 ok, 1 verification failure, 2 usage error, 3 numerical failure.
"""

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Dict, List

import numpy as np

from . import __version__
from .config import TOL
from .errors import DomainError, LameError, PreconditionError
from .hill import band_edges_numeric, discriminant
from .potential import PotentialSpec, on_parabola, parabola_points
from .spectra import gap_delta2, lame_states, named_states, table3_states
from .spectra.tables import NAMED
from .susy import analytic_shift_deviation, partner_pair, self_isospectral_verdict, superpotential_from_ground

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
VERBS = ("profile", "edges", "partner", "scan", "dispersion", "verify", "parabolas")


class UsageError(Exception):
    pass


def _round(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        v = float(v) + 0.0  # drops the sign of -0.0
        return v if not math.isfinite(v) else float(f"{v:.15g}")
    if isinstance(v, dict):
        return {k: _round(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_round(x) for x in v]
    return v


@dataclass
class ResultDocument:
    meta: Dict = field(default_factory=dict)
    records: List[Dict] = field(default_factory=list)

    def to_json(self):
        return json.dumps({"meta": _round(self.meta), "records": _round(self.records)}, indent=1)

    @classmethod
    def from_json(cls, text):
        obj = json.loads(text)
        return cls(obj["meta"], obj["records"])

    def columns(self):
        cols = []
        for r in self.records:
            for k in r:
                if k not in cols:
                    cols.append(k)
        return cols

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        cols = self.columns()
        w.writerow(cols)
        for r in self.records:
            row = []
            for c in cols:
                v = _round(r.get(c))
                row.append("" if v is None else (f"{v:.15g}" if isinstance(v, float) else v))
            w.writerow(row)
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text, meta=None):
        rows = list(csv.reader(io.StringIO(text)))
        if not rows:
            return cls(meta or {}, [])
        cols, out = rows[0], []
        for row in rows[1:]:
            rec = {}
            for c, v in zip(cols, row):
                if v == "":
                    continue
                rec[c] = _parse_cell(v)
            out.append(rec)
        return cls(meta or {}, out)


def _parse_cell(v):
    if v in ("True", "False"):
        return v == "True"
    for conv in (int, float):
        try:
            return conv(v)
        except ValueError:
            pass
    return v


def _number(text):
    """Accepts decimals and exact ratios such as 63/4."""
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


# -- potential resolution -------------------------------------------------------

@dataclass
class Resolved:
    spec: PotentialSpec          # in the frame of the analytic states, if any
    L: float
    states: list
    source: str


def _spec_from_args(args):
    have_ab = args.a is not None or args.b is not None
    have_pq = args.p is not None or args.q is not None
    if have_ab and have_pq:
        raise UsageError("give either --a/--b or --p/--q, not both")
    if not (have_ab or have_pq):
        raise UsageError("a potential is required: --p/--q or --a/--b")
    m = args.m
    if m is None:
        raise UsageError("--m is required")
    if not 0.0 <= m <= 0.999:
        raise UsageError(f"--m must lie in [0, 0.999], got {m}")
    try:
        if have_ab:
            return PotentialSpec.from_ab(args.a or 0.0, args.b or 0.0, m)
        return PotentialSpec.from_pq(args.p or 0.0, args.q or 0.0, m)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


def resolve(spec: PotentialSpec) -> Resolved:
    """Find closed-form edges for the canonical (p >= q) potential, if any."""
    m = spec.m
    p, q = spec.p, spec.q
    key = (Fraction(p).limit_denominator(64), Fraction(q).limit_denominator(64))
    if q == 0.0 and any(abs(spec.a - k) < 1e-12 for k in (1, 2, 3)):
        st = lame_states(round(spec.a), m)
        return Resolved(st[0].potential, st[0].period, st, f"lame a={round(spec.a)}")
    if key in NAMED and abs(float(key[0]) - p) < 1e-12 and abs(float(key[1]) - q) < 1e-12:
        st = named_states(NAMED[key], m)
        return Resolved(st[0].potential, st[0].period, st, f"named ({NAMED[key]})")
    hits = on_parabola(p, q)
    if hits:
        states = []
        for n, a in hits:
            for s in table3_states(a, n, m):
                if not any(abs(s.energy - t.energy) < 1e-9 and s.nodes == t.nodes for t in states):
                    states.append(s)
        states.sort(key=lambda s: s.energy)
        base = PotentialSpec(spec.a, spec.b, m)
        return Resolved(base, 2 * base.K, states, "parabolas " + ",".join(f"P{n}" for n, _ in hits))
    base = PotentialSpec(spec.a, spec.b, m)
    return Resolved(base, base.period, [], "none")


def _caller_potential(spec, res):
    """The potential the caller asked for, in the analytic frame."""
    return res.spec if not spec.swapped else PotentialSpec(
        res.spec.a, res.spec.b, res.spec.m, res.spec.offset, swapped=True)


# -- verbs -------------------------------------------------------------------------

def _x_grid(L, n):
    return np.linspace(0.0, L, n)


def cmd_profile(args):
    spec = _spec_from_args(args)
    res = resolve(spec)
    V = _caller_potential(spec, res)
    x = _x_grid(res.L, args.grid)
    v = V(x)
    records = [{"x": float(a), "V": float(b)} for a, b in zip(x, v)]
    meta = {"period": res.L, "offset": V.offset, "analytic": res.source}
    if args.partner:
        pair = _pair(res)
        wv, vm, vp = pair.w(x), pair.v_minus(x), pair.v_plus(x)
        for r, a, b, c in zip(records, wv, vm, vp):
            r.update({"W": float(a), "V_minus": float(b), "V_plus": float(c)})
        meta["partner_frame"] = "canonical p >= q"
    return meta, records


def _pair(res):
    if not res.states:
        raise UsageError("no closed-form ground state is known for this potential")
    w = superpotential_from_ground(res.states[0])
    return partner_pair(w, res.states[0].period)


def cmd_edges(args):
    spec = _spec_from_args(args)
    res = resolve(spec)
    records = []
    if args.source in ("analytic", "both"):
        if not res.states:
            raise UsageError("no closed-form edges are known for this potential")
        for i, s in enumerate(res.states):
            records.append({"source": "analytic", "index": i, "E": s.energy, "nodes": s.nodes,
                            "period_class": s.period_class, "provenance": s.provenance})
    if args.source in ("numeric", "both"):
        e_max = args.e_max
        if e_max is None:
            if not res.states:
                raise UsageError("--e-max is required for numeric edges of this potential")
            e_max = res.states[-1].energy + 1.0
        V = _caller_potential(spec, res)
        bs = band_edges_numeric(V, res.L, e_max)
        for e in bs.edges:
            records.append({"source": "numeric", "index": e.index, "E": e.energy, "nodes": e.nodes,
                            "edge_type": e.edge_type, "tangent": e.tangent})
    meta = {"period": res.L, "offset": res.spec.offset, "analytic": res.source}
    return meta, records


def cmd_partner(args):
    spec = _spec_from_args(args)
    res = resolve(spec)
    pair = _pair(res)
    dev, verdict = self_isospectral_verdict(pair)
    x = _x_grid(res.L, args.grid)
    records = [{"x": float(a), "W": float(b), "V_minus": float(c), "V_plus": float(d)}
               for a, b, c, d in zip(x, pair.w(x), pair.v_minus(x), pair.v_plus(x))]
    meta = {"period": res.L, "ground": pair.w.source, "deviation": dev, "verdict": verdict,
            "deviation_shift_identities": analytic_shift_deviation(pair),
            "partner_frame": "canonical p >= q"}
    return meta, records


def _m_grid(args):
    if args.m_grid:
        try:
            start, stop, step = (float(Fraction(t)) for t in args.m_grid.split(":"))
        except ValueError as exc:
            raise UsageError("--m-grid takes start:stop:step") from exc
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        ms = [round(start + k * step, 12) for k in range(n)]
    else:
        ms = [round(0.02 * k, 2) for k in range(1, 50)] + [0.998]
    if any(not 0.0 <= m <= 0.999 for m in ms):
        raise UsageError("m values must lie in [0, 0.999]")
    return ms


def cmd_scan(args):
    ms = _m_grid(args)
    records = []
    if args.quantity == "gap-delta2":
        if args.a is None:
            raise UsageError("scan --quantity gap-delta2 needs --a")
        for m in ms:
            records.append({"m": m, "delta2": gap_delta2(args.a, m)})
        return {"a": args.a}, records
    for m in ms:
        args.m = m
        spec = _spec_from_args(args)
        res = resolve(spec)
        if args.quantity == "edges":
            if args.source == "numeric":
                e_max = args.e_max if args.e_max is not None else (
                    res.states[-1].energy + 1.0 if res.states else None)
                if e_max is None:
                    raise UsageError("--e-max is required for numeric edges of this potential")
                bs = band_edges_numeric(_caller_potential(spec, res), res.L, e_max)
                for e in bs.edges:
                    records.append({"m": m, "index": e.index, "E": e.energy, "nodes": e.nodes})
            else:
                if not res.states:
                    raise UsageError("no closed-form edges are known for this potential")
                for i, s in enumerate(res.states):
                    records.append({"m": m, "index": i, "E": s.energy, "nodes": s.nodes,
                                    "provenance": s.provenance})
        elif args.quantity == "deviation":
            dev, verdict = self_isospectral_verdict(_pair(res))
            records.append({"m": m, "deviation": dev, "verdict": verdict})
        else:
            raise UsageError(f"unknown quantity {args.quantity}")
    return {"quantity": args.quantity}, records


def cmd_dispersion(args):
    spec = _spec_from_args(args)
    res = resolve(spec)
    V = _caller_potential(spec, res)
    if args.e_max is None:
        raise UsageError("dispersion needs --e-max")
    e_min = args.e_min if args.e_min is not None else float(np.min(V(_x_grid(res.L, 2001)))) - 1.0
    energies = np.linspace(e_min, args.e_max, args.grid)
    records = []
    for d in discriminant(V, res.L, energies):
        k = math.acos(max(-1.0, min(1.0, d.value / 2))) / res.L if abs(d.value) <= 2 else None
        rec = {"E": d.energy, "D": d.value}
        if k is not None:
            rec["k"] = k
        records.append(rec)
    return {"period": res.L, "offset": V.offset}, records


def cmd_verify(args):
    from .acceptance import run
    only = [int(t) for t in args.only.split(",")] if args.only else None
    results = run(only, echo=lambda line: print(line, file=sys.stderr))
    records = [{"criterion": r.number, "title": r.title, "passed": r.passed,
                "seconds": r.seconds, "detail": r.detail} for r in results]
    return {"passed": all(r.passed for r in results)}, records


def cmd_parabolas(args):
    records = []
    meta = {}
    if args.p is not None or args.q is not None:
        p, q = args.p or 0.0, args.q or 0.0
        hits = on_parabola(p, q)
        meta["point"] = {"p": p, "q": q, "parabolas": [n for n, _ in hits]}
        for n, a in hits:
            records.append({"n": n, "a": a, "p": p, "q": q})
    if args.points or not records:
        a_vals = np.linspace(0.0, args.a_max, args.grid)
        for n in range(1, 6):
            P, Q = parabola_points(n, a_vals)
            for a, pp, qq in zip(a_vals, P, Q):
                if qq >= 0:
                    records.append({"n": n, "a": float(a), "p": float(pp), "q": float(qq)})
    return meta, records


COMMANDS = {
    "profile": cmd_profile, "edges": cmd_edges, "partner": cmd_partner, "scan": cmd_scan,
    "dispersion": cmd_dispersion, "verify": cmd_verify, "parabolas": cmd_parabolas,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="lamesusy", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, potential=True):
        if potential:
            p.add_argument("--a", type=_number)
            p.add_argument("--b", type=_number)
            p.add_argument("--p", type=_number)
            p.add_argument("--q", type=_number)
            p.add_argument("--m", type=_number)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--output", "-o")

    p = sub.add_parser("profile", help="V(x) over one period")
    common(p)
    p.add_argument("--grid", type=int, default=401)
    p.add_argument("--partner", action="store_true", help="add W, V- and V+")

    p = sub.add_parser("edges", help="analytic and/or numeric band edges")
    common(p)
    p.add_argument("--source", choices=("analytic", "numeric", "both"), default="analytic")
    p.add_argument("--e-max", type=_number)

    p = sub.add_parser("partner", help="superpotential, partner pair and self-isospectrality")
    common(p)
    p.add_argument("--grid", type=int, default=401)

    p = sub.add_parser("scan", help="a quantity over a grid of m")
    common(p)
    p.add_argument("--quantity", choices=("edges", "gap-delta2", "deviation"), default="edges")
    p.add_argument("--source", choices=("analytic", "numeric"), default="analytic")
    p.add_argument("--e-max", type=_number)
    p.add_argument("--m-grid", help="start:stop:step (default 0.02:0.98:0.02 plus 0.998)")

    p = sub.add_parser("dispersion", help="(E, D, k) table")
    common(p)
    p.add_argument("--e-min", type=_number)
    p.add_argument("--e-max", type=_number)
    p.add_argument("--grid", type=int, default=201)

    p = sub.add_parser("verify", help="run the acceptance checks")
    common(p, potential=False)
    p.add_argument("--only", help="comma-separated criterion numbers")

    p = sub.add_parser("parabolas", help="parabolas of solvability")
    common(p, potential=False)
    p.add_argument("--p", type=_number)
    p.add_argument("--q", type=_number)
    p.add_argument("--points", action="store_true", help="also list P1..P5 sample points")
    p.add_argument("--a-max", type=_number, default=5.0)
    p.add_argument("--grid", type=int, default=51)
    return parser


def run(argv=None):
    """Parse, dispatch and return (ResultDocument or None, exit code)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return None, (EXIT_USAGE if exc.code not in (0, None) else EXIT_OK)
    params = {k: v for k, v in vars(args).items() if k not in ("format", "output")}
    try:
        meta, records = COMMANDS[args.verb](args)
    except (UsageError, DomainError, PreconditionError) as exc:
        print(f"lamesusy: usage error: {exc}", file=sys.stderr)
        return None, EXIT_USAGE
    except (LameError, ArithmeticError) as exc:
        print(f"lamesusy: numerical failure: {exc}", file=sys.stderr)
        return None, EXIT_NUMERIC
    full_meta = {"tool": "lamesusy", "version": __version__, "verb": args.verb,
                 "params": params, "tolerances": asdict(TOL)}
    full_meta.update(meta)
    doc = ResultDocument(full_meta, records)
    text = doc.to_json() if args.format == "json" else doc.to_csv()
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    code = EXIT_VERIFY if args.verb == "verify" and not meta.get("passed", False) else EXIT_OK
    return doc, code


def main(argv=None):
    _, code = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
