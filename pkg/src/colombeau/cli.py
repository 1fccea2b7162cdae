"""Command line front end: ``colombeau <gnum|iset|ifn|saturate|balls|cauchy|mollifier> ...``.

Every report ends with one machine-readable line ``RESULT: key=value ...``.
The exit status is 0 when the command's verdict holds (or it has none), 1 when
it does not or a domain error occurred, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import math
import random
import sys
from pathlib import Path

import numpy as np

from . import __version__
from ._mp import logabs, sign
from .config import DEFAULT, load_config
from .errors import ColombeauError


class UsageError(Exception):
    """Arguments that parse but do not make sense together (exit status 2)."""


class Report:
    def __init__(self):
        self.lines: list[str] = []
        self.result: dict[str, str] = {}
        self.verdict: bool | None = None

    def say(self, text: str = ""):
        self.lines.append(str(text))

    def set(self, **kv):
        for k, v in kv.items():
            self.result[k.replace("_", "-")] = _fmt(v)

    def emit(self, out) -> int:
        for line in self.lines:
            print(line, file=out)
        print("RESULT: " + " ".join(f"{k}={v}" for k, v in self.result.items()), file=out)
        return 0 if self.verdict in (None, True) else 1


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    return str(v).replace(" ", "")


def _text(arg: str) -> str:
    """An argument is a file path when such a file exists, a literal otherwise."""
    p = Path(arg)
    try:
        if p.is_file():
            return p.read_text(encoding="utf-8")
    except OSError:
        pass
    return arg


def _net(arg: str):
    from .nets.grammar import parse_net
    return parse_net(_text(arg))


def _set(arg: str):
    from .isets.grammar import parse_set
    return parse_set(_text(arg))


def _show(x) -> str:
    from .nets.sampled import SampledNet
    if isinstance(x, SampledNet):
        return f"sampled net on k={x.ks[0]}..{x.ks[-1]}"
    return str(x)


def _write_samples(path: Path, net):
    from .nets.sampled import SampledNet
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k", "eps", "sign", "logmag"])
        assert isinstance(net, SampledNet)
        for k, v in zip(net.ks, net.values):
            w.writerow([k, repr(2.0 ** -k), sign(v), repr(logabs(v))])


def _out(args, suffix: str) -> Path | None:
    if not args.out:
        return None
    p = Path(f"{args.out}{suffix}")
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


# -- gnum --------------------------------------------------------------------------

def cmd_gnum(args, cfg, rep: Report):
    from .nets import gen_eq, is_negligible, sample, sharp_norm, valuation
    x = _net(args.net)
    if args.op == "val":
        v = valuation(x, cfg)
        rep.say(f"net: {x}")
        rep.say(f"valuation: {v}")
        rep.set(valuation=float(v))
    elif args.op == "sharpnorm":
        s = sharp_norm(x, cfg)
        rep.say(f"net: {x}")
        rep.say(f"sharp norm exp(-nu): {s}")
        rep.set(sharpnorm=float(s))
    elif args.op == "negligible":
        verdict = is_negligible(x, cfg)
        rep.say(f"net: {x}")
        rep.set(negligible=verdict.negligible, backend=verdict.backend)
        rep.verdict = verdict.negligible
    elif args.op == "eq":
        if args.other is None:
            raise UsageError("gnum eq needs two nets")
        y = _net(args.other)
        eq = gen_eq(x, y, cfg)
        rep.say(f"a: {x}")
        rep.say(f"b: {y}")
        rep.set(equal=eq)
        rep.verdict = eq
    elif args.op == "sample":
        kmin = args.kmin if args.kmin is not None else cfg.k_min
        kmax = args.kmax if args.kmax is not None else cfg.k_max
        s = sample(x, k_min=kmin, k_max=kmax)
        path = _out(args, "") or None
        if path:
            _write_samples(path, s)
            rep.say(f"wrote {path}")
        else:
            for k, v in zip(s.ks, s.values):
                rep.say(f"{k},{2.0 ** -k!r},{sign(v)},{logabs(v)!r}")
        rep.set(points=len(s.ks), valuation=float(s.valuation(cfg.window)))


# -- iset -----------------------------------------------------------------------------

def cmd_iset(args, cfg, rep: Report):
    from . import isets
    from .nets.calculus import valuation
    A = _set(args.a)
    op = args.op
    if op == "contains":
        u = _net_or_point(args.b)
        m = isets.contains(A, u, cfg)
        rep.say(f"set: {A}")
        rep.say(f"distance net: {_show(m.distance) if m.distance is not None else 'n/a'}")
        rep.set(member=m.member, exact=m.exact)
        rep.verdict = m.member
    elif op in ("subset", "equal"):
        B = _set(_need(args.b, op))
        r = isets.subset_report(A, B, cfg) if op == "subset" else isets.equality_report(A, B, cfg)
        rep.say(f"A: {A}")
        rep.say(f"B: {B}")
        label = "delta net" if op == "subset" else "Hausdorff net"
        rep.say(f"{label}: {_show(r.delta) if r.delta is not None else 'n/a'}")
        rep.set(**{op: r.holds, "exact": r.exact})
        rep.verdict = r.holds
    elif op == "mindist":
        B = _set(_need(args.b, op))
        d, (u, v) = isets.min_distance(A, B, cfg)
        rep.say(f"distance: {_show(d.rep)}")
        rep.say(f"witness in A: {u}")
        rep.say(f"witness in B: {v}")
        rep.set(mindist=_show(d.rep), valuation=float(valuation(d.rep, cfg)))
    elif op == "maxnorm":
        n, w = isets.max_norm(A, cfg)
        rep.say(f"max norm: {_show(n.rep)}")
        rep.say(f"witness: {w}")
        rep.set(maxnorm=_show(n.rep), valuation=float(valuation(n.rep, cfg)))
    elif op == "bounded":
        b = isets.is_sharply_bounded(A, cfg)
        rep.set(bounded=b.bounded, M=b.M if b.M is not None else "none")
        rep.verdict = b.bounded
    elif op == "union":
        B = _set(_need(args.b, op))
        U = isets.internal_union(A, B)
        text = str(U.family)
        path = _out(args, "")
        if path:
            path.write_text(text + "\n", encoding="utf-8")
            rep.say(f"wrote {path}")
        rep.say(f"union: {text}")
        rep.set(shapes=len(U.family.shapes))
    elif op == "fatten":
        m = int(_need(args.b, op))
        F = isets.fatten(A, m)
        rep.say(f"fattened: {F}")
        rep.set(shapes=len(F.shapes), m=m)
    elif op == "project":
        coords = [int(c) for c in (args.coords or "0").split(",")]
        P = isets.project(A, coords, strict=True, config=cfg)
        rep.say(f"projection: {P.set.family}")
        rep.set(verified=P.verified, dim=len(coords))


def _need(value, op):
    if value is None:
        raise UsageError(f"{op} needs another argument")
    return value


def _net_or_point(arg):
    from .isets.grammar import _split
    from .nets.vec import VecNet
    text = _text(_need(arg, "contains")).strip()
    if text.startswith("(") and text.endswith(")"):
        return VecNet(tuple(_net(t) for t in _split(text[1:-1], ",")))
    return VecNet((_net(text),))


# -- ifn ---------------------------------------------------------------------------------

def cmd_ifn(args, cfg, rep: Report):
    from . import ifuncs
    from .nets.calculus import valuation
    if args.op == "demo":
        if args.expr != "zeroset":
            raise UsageError("the only demo is 'zeroset'")
        r = ifuncs.zero_set_demo(cfg)
        rep.say(str(r))
        rep.set(zeroset_ok=r.ok, candidates=len(r.rows))
        rep.verdict = r.ok
        return
    domain = _set(args.domain) if args.domain else None
    G = ifuncs.make_graph(_text(args.expr).strip(), domain)
    if args.op == "eval":
        x = _net(_need(args.at, "eval --at"))
        ev = ifuncs.eval_at(G, x, cfg)
        v = valuation(ev.value.rep, cfg)
        rep.say(f"f = {G.f} on {domain if domain is not None else 'the whole line'}")
        rep.say(f"x = {x}")
        rep.say(f"value at eps=2^-{cfg.k_max}: {float(ev.value.rep.values[-1])!r}")
        rep.set(valuation=float(v), guaranteed=ev.guaranteed)
    elif args.op == "modulus":
        r = ifuncs.continuity_modulus(G, int(_need(args.n, "modulus --n")), config=cfg)
        rep.say(f"n={r.n}: m={r.m}")
        rep.set(n=r.n, m=r.m)
    elif args.op == "image":
        y = _net(_need(args.at, "image --at"))
        r = ifuncs.image_membership(G, y, cfg)
        rep.set(member=r.member, exact=r.exact)
        rep.verdict = r.member


# -- saturation ----------------------------------------------------------------------------

def _write_splice(args, splice):
    paths = []
    t = _out(args, "_thresholds.csv")
    if t:
        with t.open("w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["n", "k", "eps"])
            for n, k, _ in splice.thresholds:
                w.writerow([n, k, repr(2.0 ** -k)])
        paths.append(t)
        p = _out(args, "_witness.csv")
        _write_samples(p, splice.net[0])
        paths.append(p)
    return paths


def cmd_saturate(args, cfg, rep: Report):
    from .saturation import ChainSpec, parse_chain, saturation_witness
    chain = ChainSpec.build(parse_chain(_text(args.file)), cfg)
    s = saturation_witness(chain, n_max=args.nmax or cfg.n_max, config=cfg)
    for n, k, _ in s.thresholds:
        rep.say(f"level {n}: threshold eps = 2^-{k}")
    for n, ok in s.memberships:
        rep.say(f"witness in A_{n}: {ok}")
    for p in _write_splice(args, s):
        rep.say(f"wrote {p}")
    rep.set(witness_ok=s.ok, depth=s.depth)
    rep.verdict = s.ok


def cmd_balls(args, cfg, rep: Report):
    from .saturation import nested_balls_witness, parse_balls
    w = nested_balls_witness(parse_balls(_text(args.file)), config=cfg)
    for n, d, r in w.distances:
        rep.say(f"ball {n}: [[x - a_n]] = {d:.6g} <= r_n = {r:.6g}")
    if w.splice is not None:
        for p in _write_splice(args, w.splice):
            rep.say(f"wrote {p}")
    rep.set(witness_ok=w.ok, depth=w.splice.depth if w.splice else 0)
    rep.verdict = w.ok


def cmd_cauchy(args, cfg, rep: Report):
    from .saturation import cauchy_limit, parse_sequence
    L = cauchy_limit(parse_sequence(_text(args.file)), config=cfg)
    rep.say(f"certified radii 2^-n for n <= {len(L.indices)} with j_n = {list(L.indices)}")
    for j, v in L.table:
        rep.say(f"j={j}: nu(u_j - L) = {v:.4f}")
    for p in _write_splice(args, L.splice):
        rep.say(f"wrote {p}")
    vals = [v for _, v in L.table]
    converging = vals[-1] >= vals[0]
    rep.set(limit_ok=converging, depth=len(L.indices))
    rep.verdict = converging


# -- mollifier -------------------------------------------------------------------------------

def cmd_mollifier(args, cfg, rep: Report):
    from .mollifier import (
        MOMENT_TOL,
        assemble_generalized,
        build_base,
        build_vanishing,
        moment_report,
        tensorize,
    )
    N, delta = args.order, args.delta
    tree = build_vanishing(N, delta, build_base(cfg.quad_rtol))
    rows = moment_report(tree, N + 1)
    ok = abs(rows[0].moment - 1) <= MOMENT_TOL and all(abs(r.moment) <= MOMENT_TOL for r in rows[1:N + 1])
    l1 = float(tree.levels[-1].l1) if tree.levels else 1.0
    ok = bool(ok and l1 <= 1 + delta + 1e-6)
    table = assemble_generalized(tree, config=cfg) if args.op == "diagonal" else None
    for lv in tree.levels:
        rep.say(f"level {lv.n}: eta={lv.eta!r} a={lv.a!r} b={lv.b!r} L1={float(lv.l1)!r}")
    for r in rows:
        rep.say(f"moment {r.k}: {r.moment!r} (error {r.error:.2e})")
    x = np.linspace(-1, 1, 4001)
    args.out = args.out or "mollifier"
    path = _out(args, "_samples.csv")
    if path:
        psi = tensorize(tree, args.dim) if args.dim > 1 else None
        with path.open("w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["x", "phi"] + ([f"psi{args.dim}_axis"] if psi else []))
            vals = tree(x)
            axis = psi(np.stack([x] + [np.zeros_like(x)] * (args.dim - 1), axis=-1)) if psi else None
            for i, xi in enumerate(x):
                w.writerow([repr(float(xi)), repr(float(vals[i]))] + ([repr(float(axis[i]))] if psi else []))
        rep.say(f"wrote {path}")
        mpath = _out(args, "_moments.csv")
        with mpath.open("w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["k", "moment", "abs_error_estimate"])
            for r in rows:
                w.writerow([r.k, repr(r.moment), repr(r.error)])
        rep.say(f"wrote {mpath}")
        spath = _out(args, "_schedule.csv")
        Ms = {r.n: r for r in table.rows} if table else {}
        with spath.open("w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["n", "eta", "a", "b", "L1", "M", "eps"])
            for lv in tree.levels:
                row = Ms.get(lv.n)
                w.writerow([lv.n, repr(lv.eta), repr(lv.a), repr(lv.b), repr(float(lv.l1)),
                            repr(row.M) if row else "", repr(row.eps) if row else ""])
        rep.say(f"wrote {spath}")
        if table:
            tpath = _out(args, "_thresholds.csv")
            with tpath.open("w", newline="", encoding="utf-8") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(["n", "M", "eps"])
                for r in table.rows:
                    w.writerow([r.n, repr(r.M), repr(r.eps)])
            rep.say(f"wrote {tpath}")
    if table:
        for r in table.rows:
            rep.say(f"diagonal n={r.n}: M={r.M:.6g} eps={r.eps:.6g}")
        ok = bool(ok and table.ok)
    rep.set(moments_ok=ok, order=N, l1=float(l1))
    rep.verdict = ok


# -- dispatch ---------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value configuration file")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--out", help="output path or prefix")

    p = argparse.ArgumentParser(prog="colombeau", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gnum", parents=[common], help="generalized numbers")
    g.add_argument("op", choices=["val", "sharpnorm", "negligible", "eq", "sample"])
    g.add_argument("net")
    g.add_argument("other", nargs="?")
    g.add_argument("--kmin", type=int)
    g.add_argument("--kmax", type=int)
    g.set_defaults(func=cmd_gnum)

    s = sub.add_parser("iset", parents=[common], help="internal sets")
    s.add_argument("op", choices=["contains", "subset", "equal", "mindist", "maxnorm", "bounded",
                                  "union", "fatten", "project"])
    s.add_argument("a")
    s.add_argument("b", nargs="?")
    s.add_argument("--coords")
    s.set_defaults(func=cmd_iset)

    f = sub.add_parser("ifn", parents=[common], help="internal functions")
    f.add_argument("op", choices=["eval", "modulus", "image", "demo"])
    f.add_argument("expr")
    f.add_argument("--domain")
    f.add_argument("--at")
    f.add_argument("--n", type=int)
    f.set_defaults(func=cmd_ifn)

    t = sub.add_parser("saturate", parents=[common], help="saturation witness of a chain file")
    t.add_argument("file")
    t.add_argument("--nmax", type=int)
    t.set_defaults(func=cmd_saturate)

    b = sub.add_parser("balls", parents=[common], help="point in a nested chain of sharp balls")
    b.add_argument("file")
    b.set_defaults(func=cmd_balls)

    c = sub.add_parser("cauchy", parents=[common], help="limit of a sharp Cauchy sequence")
    c.add_argument("file")
    c.set_defaults(func=cmd_cauchy)

    m = sub.add_parser("mollifier", parents=[common], help="vanishing-moment mollifiers")
    m.add_argument("op", choices=["build", "diagonal"])
    m.add_argument("--order", type=int, required=True)
    m.add_argument("--delta", type=float, required=True)
    m.add_argument("--dim", type=int, default=1)
    m.set_defaults(func=cmd_mollifier)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else DEFAULT
    except (OSError, ValueError) as exc:
        print(f"colombeau: error: bad --config: {exc}", file=sys.stderr)
        return 2
    random.seed(args.seed)
    np.random.seed(args.seed)
    rep = Report()
    try:
        args.func(args, cfg, rep)
    except UsageError as exc:
        print(f"colombeau: error: {exc}", file=sys.stderr)
        return 2
    except ColombeauError as exc:
        rep.say(f"error: {exc}")
        rep.result = {"error": exc.code}
        rep.verdict = False
    except (ValueError, TypeError) as exc:
        rep.say(f"error: {exc}")
        rep.result = {"error": "invalid-input"}
        rep.verdict = False
    return rep.emit(out)


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
