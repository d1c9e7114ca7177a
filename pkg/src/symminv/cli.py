"""Command-line interface: invariants, canonicalize, sample, region, verify.

All randomized commands take --seed (default 0xD1CE) and are bit-for-bit
reproducible.  CSV output uses 17-significant-digit decimals, a header
row, and LF line endings; reports come as text or a single JSON document.

Exit codes: 0 success, 1 verification/runtime failure, 2 usage or parse
errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import closedform, majorana, oracles, region, sampling, verify
from .errors import EmptySlice, ParseError, SymminvError
from .states import (
    CanonicalParams,
    DegenerateParams,
    InvariantTriple,
    SymmetricState,
    canonical_to_full,
    dicke_to_full,
    full_to_dicke,
)

SAMPLE_HEADER = "source,y,theta,phi,C,tau,kappa,C_cf,tau_cf,kappa_cf,verdict,g1,g2,g3"
SLICE_HEADER = "boundary_id,x,y"

NAMED_STATES = {
    "ghz": (1.0 / math.sqrt(2.0), 0.0, 0.0, 1.0 / math.sqrt(2.0)),
    "w": (0.0, 1.0, 0.0, 0.0),
    "zero": (1.0, 0.0, 0.0, 0.0),
}


def fmt(x: float) -> str:
    """17-significant-digit decimal; round-trips any double."""
    return f"{float(x):.17g}"


def _parse_complex_pair(token: str) -> complex:
    parts = token.split(",")
    if len(parts) != 2:
        raise ParseError(f"expected 're,im' pair, got {token!r}")
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise ParseError(f"bad amplitude {token!r}") from exc


def parse_state_spec(args) -> tuple[SymmetricState, CanonicalParams | None]:
    """Build the state from --named/--dicke/--canonical; returns (state, params?)."""
    given = [x for x in (args.named, args.dicke, args.canonical) if x is not None]
    if len(given) != 1:
        raise ParseError("specify exactly one of --named, --dicke, --canonical")
    if args.named is not None:
        name = args.named.lower()
        if name not in NAMED_STATES:
            raise ParseError(f"unknown named state {args.named!r} (ghz, w, zero)")
        return SymmetricState(NAMED_STATES[name]), None
    if args.dicke is not None:
        tokens = args.dicke.split()
        if len(tokens) != 4:
            raise ParseError(f"expected 4 amplitudes, got {len(tokens)}")
        return SymmetricState([_parse_complex_pair(t) for t in tokens]), None
    parts = args.canonical.split(",")
    if len(parts) != 3:
        raise ParseError(f"expected y,theta,phi, got {args.canonical!r}")
    try:
        y, theta, phi = (float(p) for p in parts)
        params = CanonicalParams(y=y, theta=theta, phi=phi)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    return full_to_dicke(canonical_to_full(params)), params


def _triple_dict(t: InvariantTriple) -> dict:
    return {"C": t.C, "tau": t.tau, "kappa": t.kappa}


def _verdict_dict(v: region.RegionVerdict) -> dict:
    return {
        "status": v.status.value,
        "residuals": {"g1": v.residuals[0], "g2": v.residuals[1], "g3": v.residuals[2]},
        "active_boundaries": list(v.active_boundaries),
    }


def _emit(report: dict, fmt_name: str, text_lines: list[str]) -> None:
    if fmt_name == "json":
        print(json.dumps(report, sort_keys=True))
    else:
        print("\n".join(text_lines))


def cmd_invariants(args) -> int:
    state, params = parse_state_spec(args)
    full = dicke_to_full(state)
    oracle = oracles.invariants_oracle(full, tangle_convention=closedform.TAU_CONVENTION)
    closed = closedform.invariants_closed(params) if params is not None else None
    verdict = region.membership(oracle if closed is None else closed, tol=args.tol)
    report = {
        "oracle": _triple_dict(oracle),
        "closed_form": None if closed is None else _triple_dict(closed),
        "verdict": _verdict_dict(verdict),
        "input_norm": state.input_norm,
    }
    lines = [
        f"oracle     : C={fmt(oracle.C)} tau={fmt(oracle.tau)} kappa={fmt(oracle.kappa)}",
    ]
    if closed is not None:
        lines.append(
            f"closed form: C={fmt(closed.C)} tau={fmt(closed.tau)} kappa={fmt(closed.kappa)}"
        )
    lines.append(
        f"region     : {verdict.status.value}"
        f" (g1={fmt(verdict.residuals[0])}, g2={fmt(verdict.residuals[1])},"
        f" g3={fmt(verdict.residuals[2])}; active={list(verdict.active_boundaries)})"
    )
    if abs(state.input_norm - 1.0) > 1e-12:
        lines.append(f"note: input renormalized by 1/{fmt(state.input_norm)}")
    _emit(report, args.format, lines)
    return 0


def _reduction_payload(state: SymmetricState) -> tuple[dict, list[str]]:
    full = dicke_to_full(state)
    oracle = oracles.invariants_oracle(full, tangle_convention=closedform.TAU_CONVENTION)
    reduced = majorana.canonical_reduce(state)
    if isinstance(reduced, CanonicalParams):
        branch = "canonical"
        closed = closedform.invariants_closed(reduced)
        rebuilt = majorana.two_cube_decomposition(state).to_state()
        params = {
            "y": reduced.y,
            "theta": reduced.theta,
            "phi": reduced.phi,
            "boundary": reduced.boundary,
        }
    elif isinstance(reduced, DegenerateParams):
        branch = "degenerate"
        closed = closedform.invariants_degenerate(reduced)
        rebuilt = majorana.rebuild_from_roots(state)
        params = {"theta": reduced.theta}
    else:
        branch = "product"
        closed = InvariantTriple(0.0, 0.0, 1.0)
        rebuilt = majorana.rebuild_from_roots(state)
        params = {"spinor": [[reduced.spinor[0].real, reduced.spinor[0].imag],
                             [reduced.spinor[1].real, reduced.spinor[1].imag]]}
    overlap = float(abs(np.vdot(rebuilt.a, state.a)))
    residual = max(
        abs(closed.C - oracle.C), abs(closed.tau - oracle.tau), abs(closed.kappa - oracle.kappa)
    )
    payload = {
        "branch": branch,
        "params": params,
        "reconstruction_overlap": overlap,
        "invariant_residual": residual,
        "oracle": _triple_dict(oracle),
        "reduced_invariants": _triple_dict(closed),
    }
    lines = [f"branch            : {branch}"]
    for key, val in params.items():
        lines.append(f"{key:18s}: {fmt(val) if isinstance(val, float) else val}")
    lines.append(f"reconstruction    : overlap {fmt(overlap)}")
    lines.append(f"invariant residual: {fmt(residual)}")
    lines.append(
        f"invariants        : C={fmt(closed.C)} tau={fmt(closed.tau)} kappa={fmt(closed.kappa)}"
    )
    return payload, lines


def cmd_canonicalize(args) -> int:
    state, _ = parse_state_spec(args)
    payload, lines = _reduction_payload(state)
    _emit(payload, args.format, lines)
    return 0


def _record_row(rec: sampling.SampleRecord) -> str:
    g1, g2, g3 = rec.verdict.residuals
    cells = [
        rec.source,
        fmt(rec.y),
        fmt(rec.theta),
        fmt(rec.phi),
        fmt(rec.oracle.C),
        fmt(rec.oracle.tau),
        fmt(rec.oracle.kappa),
        fmt(rec.closed.C),
        fmt(rec.closed.tau),
        fmt(rec.closed.kappa),
        rec.verdict.status.value,
        fmt(g1),
        fmt(g2),
        fmt(g3),
    ]
    return ",".join(cells)


def cmd_sample(args) -> int:
    if args.n < 1:
        raise ParseError("--n must be >= 1")
    if args.source == "canonical":
        records = sampling.sample_canonical(args.n, args.seed, tol=args.tol)
    elif args.source == "dicke":
        records = sampling.sample_dicke(args.n, args.seed, tol=args.tol)
    else:
        records = sampling.degenerate_grid(args.n, tol=args.tol)
    try:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(SAMPLE_HEADER + "\n")
            for rec in records:
                fh.write(_record_row(rec) + "\n")
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def _parse_triple(text: str) -> InvariantTriple:
    parts = text.split(",")
    if len(parts) != 3:
        raise ParseError(f"expected C,tau,kappa, got {text!r}")
    try:
        c, t, k = (float(p) for p in parts)
        return InvariantTriple(C=c, tau=t, kappa=k)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def cmd_region(args) -> int:
    mode = region.TauCoeffMode.AS_PRINTED if args.mode == "as-printed" else region.TauCoeffMode.FROM_EQ26
    if (args.check is None) == (args.slice is None):
        raise ParseError("specify exactly one of --check or --slice")
    if args.check is not None:
        triple = _parse_triple(args.check)
        verdict = region.membership(triple, tol=args.tol, mode=mode)
        report = {"triple": _triple_dict(triple), "verdict": _verdict_dict(verdict)}
        lines = [
            f"verdict: {verdict.status.value}",
            f"g1={fmt(verdict.residuals[0])} g2={fmt(verdict.residuals[1])}"
            f" g3={fmt(verdict.residuals[2])}",
            f"active boundaries: {list(verdict.active_boundaries)}",
        ]
        _emit(report, args.format, lines)
        return 0
    if "=" not in args.slice:
        raise ParseError("slice spec must look like kappa=0.25")
    name, _, val = args.slice.partition("=")
    name = {"c": "C", "tau": "tau", "kappa": "kappa"}.get(name.strip().lower())
    if name is None:
        raise ParseError("slice coordinate must be C, tau, or kappa")
    try:
        value = float(val)
    except ValueError as exc:
        raise ParseError(f"bad slice value {val!r}") from exc
    try:
        sl = region.boundary_slice(name, value, args.grid, mode=mode, tol=max(args.tol, 1e-9))
    except EmptySlice as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        try:
            with open(args.out, "w", newline="\n") as fh:
                fh.write(SLICE_HEADER + "\n")
                for bid in region.BOUNDARY_IDS:
                    for x, y in sl.polylines[bid]:
                        fh.write(f"{bid},{fmt(x)},{fmt(y)}\n")
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return 1
        total = sum(len(v) for v in sl.polylines.values())
        print(f"wrote {total} boundary points to {args.out} (axes: x={sl.x_name}, y={sl.y_name})")
    else:
        for bid in region.BOUNDARY_IDS:
            for x, y in sl.polylines[bid]:
                print(f"{bid},{fmt(x)},{fmt(y)}")
    return 0


def cmd_verify(args) -> int:
    report, passed = verify.run_verify(samples=args.samples, seed=args.seed)
    if args.format == "json":
        print(json.dumps(report, sort_keys=True))
    else:
        print(verify.format_text(report, passed))
    return 0 if passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symminv",
        description="Invariants, canonical forms, and the achievable region of symmetric 3-qubit states",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_state_args(p):
        p.add_argument("--named", help="named state: ghz, w, zero")
        p.add_argument("--dicke", help="four 're,im' Dicke amplitudes, space separated")
        p.add_argument("--canonical", help="canonical parameters y,theta,phi")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--tol", type=float, default=region.DEFAULT_TOL)

    p_inv = sub.add_parser("invariants", help="invariant triple and region verdict of a state")
    add_state_args(p_inv)
    p_inv.set_defaults(func=cmd_invariants)

    p_can = sub.add_parser("canonicalize", help="reduce a state to its local-unitary normal form")
    add_state_args(p_can)
    p_can.set_defaults(func=cmd_canonicalize)

    p_samp = sub.add_parser("sample", help="write a CSV dataset of sampled states")
    p_samp.add_argument("--n", type=int, required=True)
    p_samp.add_argument("--seed", type=lambda s: int(s, 0), default=sampling.DEFAULT_SEED)
    p_samp.add_argument("--source", choices=("canonical", "dicke", "degenerate-grid"),
                        default="canonical")
    p_samp.add_argument("--out", required=True)
    p_samp.add_argument("--tol", type=float, default=region.DEFAULT_TOL)
    p_samp.set_defaults(func=cmd_sample)

    p_reg = sub.add_parser("region", help="membership check or boundary slice extraction")
    p_reg.add_argument("--check", help="triple C,tau,kappa to classify")
    p_reg.add_argument("--slice", help="fixed coordinate spec, e.g. kappa=0.25")
    p_reg.add_argument("--grid", type=int, default=200)
    p_reg.add_argument("--out")
    p_reg.add_argument("--mode", choices=("from-eq26", "as-printed"), default="from-eq26")
    p_reg.add_argument("--format", choices=("text", "json"), default="text")
    p_reg.add_argument("--tol", type=float, default=region.DEFAULT_TOL)
    p_reg.set_defaults(func=cmd_region)

    p_ver = sub.add_parser("verify", help="run the resolution and residual suite")
    p_ver.add_argument("--samples", type=int, default=10000)
    p_ver.add_argument("--seed", type=lambda s: int(s, 0), default=sampling.DEFAULT_SEED)
    p_ver.add_argument("--format", choices=("text", "json"), default="text")
    p_ver.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SymminvError as exc:
        print(f"error: {exc.__class__.__name__}: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
