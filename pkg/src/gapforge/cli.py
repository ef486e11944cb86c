"""gapforge command line.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from dataclasses import asdict
from importlib import metadata

import numpy as np

from . import certificates as cert_mod
from . import covering as cov
from . import hypercover as hc
from . import io as gio
from . import kpower as kp
from . import primes as pr
from . import special as sp
from . import tuples as tp
from . import weights as wt

STOCHASTIC = {("sieve", "ikjk"), ("hyper", "nibble"), ("hyper", "graph"),
              ("hyper", "sift")}


class UsageError(Exception):
    pass


class VerificationFailure(Exception):
    pass


def _version() -> str:
    try:
        return metadata.version("gapforge")
    except metadata.PackageNotFoundError:
        return "0"


# ---------------------------------------------------------------------------
# Output helpers


class Out:
    def __init__(self, args, stdout):
        self.args = args
        self.stdout = stdout

    def manifest(self) -> dict:
        params = {k: v for k, v in sorted(vars(self.args).items())
                  if k not in ("func", "cmd", "group", "sub", "json", "csv", "jobs", "seed",
                              "assume_good_modulus")}
        m = gio.RunManifest(" ".join(self.args.cmd), params, self.args.seed, _version(),
                            {"good_modulus": bool(self.args.assume_good_modulus)})
        return m.as_dict()

    def text(self, line: str):
        self.stdout.write(line + "\n")

    def json(self, obj, default_path: str | None = None):
        path = self.args.json or default_path
        if path is None:
            return False
        gio.write_text(path, gio.dumps(obj), self.stdout)
        return True

    def csv(self, rows, columns, default_path: str | None = None):
        path = self.args.csv or default_path
        if path is None:
            return False
        gio.write_text(path, gio.to_csv(rows, columns), self.stdout)
        return True


def _parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t)
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")


# ---------------------------------------------------------------------------
# gaps / smooth


def cmd_gaps_scan(a, out: Out):
    recs = pr.all_gaps(a.limit) if a.all else pr.record_gaps(a.limit)
    rows = [asdict(r) for r in recs]
    cols = gio.PLOT_COLUMNS["gaps"]
    if out.csv(rows, cols):
        return 0
    if out.json({"limit": a.limit, "gaps": rows, "manifest": out.manifest()}):
        return 0
    for r in rows:
        out.text(f"{r['p_lo']} {r['p_hi']} gap={r['gap']} merit={r['merit']:.4f} "
                 f"rankin_merit={r['rankin_merit']:.4f}")
    return 0


def cmd_gaps_rankin(a, out: Out):
    g = pr.max_gap(a.x) if a.x <= 10**9 else None
    try:
        norm = pr.rankin_lower_bound(a.x)
    except ValueError:
        norm = None  # log_4 x <= 0: the normalization is undefined
    res = {"x": a.x, "normalization": norm}
    if g is not None:
        res.update({"max_gap": g.gap, "p_lo": g.p_lo, "p_hi": g.p_hi,
                    "ratio": g.gap / norm if norm else None})
    if not out.json(res):
        for k, v in res.items():
            out.text(f"{k}: {v}")
    return 0


def cmd_smooth(a, out: Out):
    exact = pr.psi_exact(a.x, a.y)
    if a.eta is not None:
        eta, bound = a.eta, pr.rankin_upper_bound(a.x, a.y, a.eta)
    else:
        eta, bound = pr.optimize_eta(a.x, a.y)
    res = {"x": a.x, "y": a.y, "psi": exact, "eta": eta, "rankin_bound": bound, "sound": bound >= exact}
    if not out.json(res):
        out.text(f"psi({a.x},{a.y}) = {exact}; eta = {eta:.6f}; Rankin bound = {bound:.6g}")
    return 0 if bound >= exact else 1


# ---------------------------------------------------------------------------
# covering / certificates


def cmd_cover_build(a, out: Out):
    if a.random:
        if a.seed is None:
            raise UsageError("--random requires --seed")
        cs = cov.random_covering(a.x, a.y, np.random.default_rng(a.seed), a.attempts)
        if cs is None:
            cs = cov.CoveringSystem(a.y, [], False, a.x, list(range(1, a.y + 1)))
    else:
        plan = cov.StagePlan.default(a.x, a.y, a.small_exp, a.large_frac, a.weak_frac)
        cs = cov.build_erdos_covering(a.x, a.y, plan)
    obj = gio.cover_to_json(cs, out.manifest())
    if not out.json(obj):
        out.text(f"x={a.x} y={a.y} complete={cs.complete} classes={len(cs.classes)} "
                 f"residual={cs.residual[:20]}")
    return 0


def cmd_cover_verify(a, out: Out):
    cs = gio.cover_from_json(gio.load_json(a.file))
    ok, first = cov.verify_covering(cs)
    out.text(f"covering of (0, {cs.y}]: {'ok' if ok else f'FAIL at offset {first}'}")
    if ok != cs.complete:
        out.text(f"note: file claims complete={cs.complete}")
    return 0 if ok else 1


def cmd_cert_make(a, out: Out):
    cs = gio.cover_from_json(gio.load_json(a.cover))
    try:
        cert = cert_mod.certify_gap(cs)
    except cert_mod.IncompleteCoveringError as e:
        out.text(f"FAIL: {e}")
        return 1
    if a.lift:
        cert = cert_mod.lift_certificate(cert, a.lift)
    obj = gio.cert_to_json(cert, out.manifest())
    gio.write_text(a.out or a.json or "-", gio.dumps(obj), out.stdout)
    return 0


def cmd_cert_verify(a, out: Out):
    cert = gio.cert_from_json(gio.load_json(a.file))
    v = cert_mod.verify_certificate(cert)
    if v.ok:
        out.text(f"certificate ok: (m0, m0+{cert.y}] composite, m0 has {len(str(cert.m0))} digits")
        return 0
    out.text(f"FAIL at offset {v.offset}: {v.reason}")
    return 1


def cmd_cert_brute(a, out: Out):
    cert = gio.cert_from_json(gio.load_json(a.file))
    try:
        rec = cert_mod.brute_gap_check(cert)
    except cert_mod.IncompleteCoveringError as e:
        out.text(f"FAIL: {e}")
        return 1
    res = {"p_lo": rec.p_lo, "p_hi": rec.p_hi, "gap": rec.gap, "y": cert.y}
    if not out.json(res):
        out.text(f"primes {rec.p_lo} .. {rec.p_hi}: gap {rec.gap} >= {cert.y}")
    return 0


# ---------------------------------------------------------------------------
# tuples / sieve weights


def cmd_tuple_check(a, out: Out):
    offs = _parse_ints(a.offsets)
    ok = tp.is_admissible(offs)
    bad = [p for p in pr.primes_upto(len(offs)) if tp.occupied_residues(offs, p) >= p]
    out.text(f"{list(offs)}: {'admissible' if ok else f'not admissible (p = {bad[0]})'}")
    return 0 if ok else 1


def cmd_tuple_gen(a, out: Out):
    t = tp.first_primes_tuple(a.r)
    if not out.json({"r": a.r, "offsets": list(t)}):
        out.text(",".join(map(str, t)))
    return 0


def cmd_sieve_gpy(a, out: Out):
    t = tp.AdmissibleTuple(_parse_ints(a.tuple))
    cfg = wt.GPYConfig(a.k if a.k is not None else len(t), a.R, a.l)
    res = wt.s_statistic(a.N, a.rho, t, cfg)
    if not out.json({"N": a.N, "rho": a.rho, "S": res.value, "witness": res.witness}):
        out.text(f"S = {res.value:.6g}; witness = {res.witness}")
    return 0


def cmd_sieve_maynard(a, out: Out):
    forms = tp.LinearFormSet.parse(a.forms)
    if a.k is not None and a.k != forms.k:
        raise UsageError(f"--k {a.k} disagrees with {forms.k} forms")
    F = wt.SimplexFunction.power(a.F) if a.F is not None else None
    st = wt.build_maynard_state(forms, a.R, a.B, F)
    lo, hi = a.n_from, a.n_to
    rows = [{"n": n, "weight": wt.maynard_weight(n, st)} for n in range(lo, hi + 1)]
    if a.emit:
        gio.write_text(a.emit, gio.to_csv(rows, ["n", "weight"]), out.stdout)
    elif not out.csv(rows, ["n", "weight"]):
        out.text(f"W = {st.W}; lambda entries = {len(st.lam)}; series = {st.series:.6f}")
        best = max(rows, key=lambda r: r["weight"])
        out.text(f"max weight {best['weight']:.6g} at n = {best['n']}")
    return 0


def cmd_sieve_ikjk(a, out: Out):
    F = wt.SimplexFunction.power(a.F) if a.F is not None else wt.default_F(a.k)
    r = wt.ik_jk(F, a.k, a.samples, a.seed)
    ratio = r.J * a.k / (r.I * math.log(a.k)) if a.k > 1 else float("nan")
    res = {"k": a.k, "I": r.I, "J": r.J, "I_se": r.I_se, "J_se": r.J_se, "samples": r.samples,
           "ratio": ratio}
    if not out.json(res):
        out.text(f"I_{a.k} = {r.I:.6e} +- {r.I_se:.1e}; J_{a.k} = {r.J:.6e} +- {r.J_se:.1e}; "
                 f"J k/(I log k) = {ratio:.4f}")
    return 0


# ---------------------------------------------------------------------------
# kpower


def cmd_kpower_solvable(a, out: Out):
    if not pr.is_prime(a.p):
        raise UsageError("--p must be prime")
    ctx = kp.context(a.p, a.K)
    ok = kp.kpower_solvable(a.n, ctx)
    res = {"p": a.p, "K": a.K, "n": a.n, "D": ctx.D, "solvable": ok,
           "indicator": kp.character_indicator(a.n, ctx)}
    if not out.json(res):
        out.text(f"n={a.n} = 1 - c^{a.K} (mod {a.p}): {'solvable' if ok else 'not solvable'} (D={ctx.D})")
    return 0


def _kpower_matrix_from_cert(a):
    cert = gio.cert_from_json(gio.load_json(a.cert))
    moduli = sorted(cert.stages) or sorted(pr.factorize(cert.modulus))
    _, m0, Px, uncovered = kp.kpower_covering(0, cert.y, a.K, moduli)
    M = kp.build_matrix(m0, Px, a.K, a.rows, cert.y, moduli)
    return cert, M, uncovered


def cmd_kpower_matrix(a, out: Out):
    _, M, unc = _kpower_matrix_from_cert(a)
    scan = kp.scan_rows(M, unc)
    winners = set(scan.winners)
    r0, r1 = set(scan.R0), set(scan.R1)
    rows = [{"row": r, "base": M.base(r), "prime_base": r in r0, "exceptional_prime": r in r1,
             "winner": r in winners} for r in range(1, M.rows + 1)]
    cols = ["row", "base", "prime_base", "exceptional_prime", "winner"]
    if a.report:
        gio.write_text(a.report, gio.to_csv(rows, cols), out.stdout)
    elif not out.csv(rows, cols):
        out.text(f"rows={M.rows} y={M.y} R0={len(scan.R0)} R1={len(scan.R1)} winners={len(scan.winners)} "
                 f"exceptional={scan.exceptional}")
    return 0


def cmd_kpower_find(a, out: Out):
    cert = gio.cert_from_json(gio.load_json(a.cert))
    hit = kp.find_kth_power_in_gap(cert, a.K, a.rows)
    if hit is None:
        out.text("none found")
        return 0
    res = {"q": hit.q, "K": hit.K, "q_K": str(hit.q ** hit.K), "p_lo": str(hit.p_lo),
           "p_hi": str(hit.p_hi), "gap": hit.gap, "row": hit.row}
    if not out.json(res):
        out.text(f"{hit.q}^{hit.K} lies between consecutive primes {hit.p_lo} and {hit.p_hi} (gap {hit.gap})")
    return 0


# ---------------------------------------------------------------------------
# hypercover


def cmd_hyper_pj(a, out: Out):
    with open(a.degrees, encoding="utf-8") as fh:
        rows = [[float(v) for v in r] for r in csv.reader(fh) if r and not r[0].startswith("#")]
    prof = hc.pj_recursion(rows)
    rows_out = [{"layer": j, **{f"v{i}": float(v) for i, v in enumerate(prof.P[j])}}
                for j in range(len(prof.P))]
    cols = ["layer"] + [f"v{i}" for i in range(prof.P.shape[1])]
    if not out.csv(rows_out, cols) and not out.json({"P": prof.P.tolist(), "min": prof.min_P}):
        for j, row in enumerate(prof.P):
            out.text(f"P_{j}: " + " ".join(f"{v:.12g}" for v in row))
        out.text(f"min P = {prof.min_P:.12g}")
    return 0


def cmd_hyper_check(a, out: Out):
    model = hc.LayeredEdgeModel.load(a.model)
    rep = hc.check_hypotheses(model, a.delta, a.kappa, a.D, a.A, a.m, a.r, a.C0)
    if not out.json(rep.as_dict()):
        for c in rep.checks:
            out.text(f"{c.name}: {'pass' if c.passed else 'FAIL'} (margin {c.margin:.6g})")
    return 0 if rep.passed else 1


def cmd_hyper_nibble(a, out: Out):
    model = hc.LayeredEdgeModel.load(a.model)
    res = hc.nibble_simulate(model, a.m, a.trials, a.seed, jobs=a.jobs)
    rows = res.as_rows()
    if out.csv(rows, ["layer", "predicted", "empirical", "stderr"]):
        return 0
    if not out.json({"layers": rows, "trials": res.trials, "reference_5_pow_minus_m": res.reference,
                     "manifest": out.manifest()}):
        for r in rows:
            out.text(f"layer {r['layer']}: predicted {r['predicted']:.6f} empirical {r['empirical']:.6f} "
                     f"+- {r['stderr']:.2e}")
        out.text(f"reference 5^-m = {res.reference:.6g}")
    return 0


def cmd_hyper_graph(a, out: Out):
    g, S = hc.uniform_colored_graph(a.N, a.K, a.c, a.T, a.seed)
    obj = g.to_json()
    obj["S"], obj["T"], obj["c"], obj["K"] = S, a.T, a.c, a.K
    gio.write_text(a.out or a.json or "-", gio.dumps(obj), out.stdout)
    return 0


def cmd_hyper_match(a, out: Out):
    obj = gio.load_json(a.graph)
    g = hc.ColoredGraph.from_json(obj)
    m = hc.greedy_color_matching(g, a.K)
    if not hc.matching_is_valid(g, m):
        out.text("FAIL: invalid matching")
        return 1
    c = obj.get("c", g.n_vertices / g.N)
    bound = hc.matching_lower_bound(g.N, c, a.K)
    res = {"size": m.size, "blocks": m.block_sizes, "bound": bound, "exceeds": m.size > bound,
           "edges": m.edges}
    if not out.json(res):
        out.text(f"matching size {m.size} (blocks {m.block_sizes}); bound {bound:.3f}")
    return 0


def cmd_hyper_sift(a, out: Out):
    st = hc.random_sift_sim(a.x_small, a.trials, a.seed, tuples=[(1, 2), (1, 2, 3)] if a.x_small >= 3 else None)
    res = {k: getattr(st, k) for k in ("sigma", "expected", "mean", "var", "stderr", "singleton", "singleton_se")}
    res["tuples"] = st.tuples
    if not out.json(res):
        out.text(f"sigma={st.sigma:.6f} expected={st.expected:.3f} mean={st.mean:.3f} +- {st.stderr:.3f}")
    return 0


# ---------------------------------------------------------------------------
# special sequences


def _family_params(a):
    if a.family == "beatty":
        return sp.BeattyParams.of(a.alpha, a.beta)
    return sp.PSParams.of(a.c)


def cmd_special_beatty(a, out: Out):
    P = sp.BeattyParams.of(a.alpha, a.beta)
    ps = sp.beatty_primes(a.limit, P)
    rows = [{"prime": p, "n": n} for p, n in ps]
    if not out.csv(rows, ["prime", "n"]) and not out.json({"alpha": a.alpha, "beta": a.beta, "primes": rows}):
        out.text(" ".join(str(p) for p, _ in ps))
    return 0


def cmd_special_ps(a, out: Out):
    P = sp.PSParams.of(a.c)
    ps = sp.ps_primes(a.limit, P)
    rows = [{"prime": p, "l": l} for p, l in ps]
    if not out.csv(rows, ["prime", "l"]) and not out.json({"c": a.c, "in_known_range": P.in_known_range,
                                                           "primes": rows}):
        out.text(" ".join(str(p) for p, _ in ps))
    return 0


def cmd_special_scan(a, out: Out):
    _, M, unc = _kpower_matrix_from_cert(a)
    params = _family_params(a)
    hits = sp.restricted_column_scan(M, a.family, params, unc)
    rows = [{"row": r, "base": M.base(r), "witness": w} for r, w in hits]
    if not out.csv(rows, ["row", "base", "witness"]) and not out.json({"family": a.family, "hits": rows}):
        out.text(f"{len(hits)} winner rows with base in the {a.family} family: " +
                 " ".join(str(r["base"]) for r in rows[:20]))
    return 0


def cmd_special_type(a, out: Out):
    tau = sp.irrationality_type_estimate(a.alpha, a.depth)
    if not out.json({"alpha": a.alpha, "depth": a.depth, "type_estimate": tau}):
        out.text(f"type estimate {tau:.6f} (depth {a.depth})")
    return 0


# ---------------------------------------------------------------------------
# Parser


def _common(defaults: bool) -> argparse.ArgumentParser:
    sup = {} if defaults else {"default": argparse.SUPPRESS}
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", metavar="PATH", help="write JSON to PATH ('-' for stdout)",
                   **({"default": None} if defaults else sup))
    p.add_argument("--csv", metavar="PATH", help="write CSV to PATH ('-' for stdout)",
                   **({"default": None} if defaults else sup))
    p.add_argument("--seed", type=int, **({"default": None} if defaults else sup))
    p.add_argument("--jobs", type=int, **({"default": 1} if defaults else sup))
    p.add_argument("--assume-good-modulus", action="store_true",
                   **({"default": False} if defaults else sup))
    return p


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="gapforge", parents=[_common(True)],
                                  description="Desk-scale large prime gap constructions.")
    leaf_common = _common(False)
    groups = top.add_subparsers(dest="group", required=True)

    def leaf(sub, name, func, group):
        p = sub.add_parser(name, parents=[leaf_common])
        p.set_defaults(func=func, cmd=(group, name))
        return p

    g = groups.add_parser("gaps").add_subparsers(dest="sub", required=True)
    p = leaf(g, "scan", cmd_gaps_scan, "gaps")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--all", action="store_true", help="every gap, not just records")
    p = leaf(g, "rankin", cmd_gaps_rankin, "gaps")
    p.add_argument("--x", type=int, required=True)

    p = groups.add_parser("smooth", parents=[leaf_common])
    p.set_defaults(func=cmd_smooth, cmd=("smooth",))
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--eta", type=float)

    g = groups.add_parser("cover").add_subparsers(dest="sub", required=True)
    p = leaf(g, "build", cmd_cover_build, "cover")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--random", action="store_true", help="randomised greedy (needs --seed)")
    p.add_argument("--attempts", type=int, default=200)
    p.add_argument("--small-exp", type=float, default=0.2)
    p.add_argument("--large-frac", type=float, default=1.0)
    p.add_argument("--weak-frac", type=float, default=0.1)
    p = leaf(g, "verify", cmd_cover_verify, "cover")
    p.add_argument("file")

    g = groups.add_parser("cert").add_subparsers(dest="sub", required=True)
    p = leaf(g, "make", cmd_cert_make, "cert")
    p.add_argument("cover")
    p.add_argument("--lift", type=int, default=1)
    p.add_argument("--out")
    p = leaf(g, "verify", cmd_cert_verify, "cert")
    p.add_argument("file")
    p = leaf(g, "brute", cmd_cert_brute, "cert")
    p.add_argument("file")

    g = groups.add_parser("tuple").add_subparsers(dest="sub", required=True)
    p = leaf(g, "check", cmd_tuple_check, "tuple")
    p.add_argument("offsets")
    p = leaf(g, "gen", cmd_tuple_gen, "tuple")
    p.add_argument("--r", type=int, required=True)

    g = groups.add_parser("sieve").add_subparsers(dest="sub", required=True)
    p = leaf(g, "gpy", cmd_sieve_gpy, "sieve")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--tuple", required=True)
    p.add_argument("--R", type=float, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int, default=0)
    p = leaf(g, "maynard", cmd_sieve_maynard, "sieve")
    p.add_argument("--forms", required=True, help="a:b pairs, e.g. 1:0,1:2")
    p.add_argument("--R", type=float, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--B", type=int, default=1)
    p.add_argument("--F", type=float, help="exponent a in F = (1 - sum t)^a")
    p.add_argument("--n-from", type=int, default=1)
    p.add_argument("--n-to", type=int, default=200)
    p.add_argument("--emit")
    p = leaf(g, "ikjk", cmd_sieve_ikjk, "sieve")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--F", type=float, help="exponent a in F = (1 - sum t)^a (default k)")
    p.add_argument("--samples", type=int, default=1_000_000)

    g = groups.add_parser("kpower").add_subparsers(dest="sub", required=True)
    p = leaf(g, "solvable", cmd_kpower_solvable, "kpower")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    for name, func in (("matrix", cmd_kpower_matrix), ("find", cmd_kpower_find)):
        p = leaf(g, name, func, "kpower")
        p.add_argument("--cert", required=True)
        p.add_argument("--K", type=int, required=True)
        p.add_argument("--rows", type=int, default=2000)
        if name == "matrix":
            p.add_argument("--report")

    g = groups.add_parser("hyper").add_subparsers(dest="sub", required=True)
    p = leaf(g, "pj", cmd_hyper_pj, "hyper")
    p.add_argument("--degrees", required=True, help="CSV, one row of vertex degrees per layer")
    p = leaf(g, "check", cmd_hyper_check, "hyper")
    p.add_argument("--model", required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--kappa", type=float, required=True)
    p.add_argument("--D", type=float, required=True)
    p.add_argument("--A", type=float, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--C0", type=float, default=1.0)
    p = leaf(g, "nibble", cmd_hyper_nibble, "hyper")
    p.add_argument("--model", required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--trials", type=int, default=10_000)
    p = leaf(g, "graph", cmd_hyper_graph, "hyper")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--c", type=int, default=1)
    p.add_argument("--T", type=int, required=True)
    p.add_argument("--out")
    p = leaf(g, "match", cmd_hyper_match, "hyper")
    p.add_argument("--graph", required=True)
    p.add_argument("--K", type=int, default=1)
    p = leaf(g, "sift", cmd_hyper_sift, "hyper")
    p.add_argument("--x-small", type=int, required=True)
    p.add_argument("--trials", type=int, default=10_000)

    g = groups.add_parser("special").add_subparsers(dest="sub", required=True)
    p = leaf(g, "beatty", cmd_special_beatty, "special")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", default="0")
    p.add_argument("--limit", type=int, required=True)
    p = leaf(g, "ps", cmd_special_ps, "special")
    p.add_argument("--c", required=True)
    p.add_argument("--limit", type=int, required=True)
    p = leaf(g, "scan", cmd_special_scan, "special")
    p.add_argument("--cert", required=True)
    p.add_argument("--K", type=int, required=True)
    p.add_argument("--rows", type=int, default=2000)
    p.add_argument("--family", choices=["beatty", "ps"], required=True)
    p.add_argument("--alpha", default="sqrt2")
    p.add_argument("--beta", default="0")
    p.add_argument("--c", default="1.05")
    p = leaf(g, "type", cmd_special_type, "special")
    p.add_argument("--alpha", required=True)
    p.add_argument("--depth", type=int, default=30)
    return top


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if tuple(args.cmd) in STOCHASTIC and args.seed is None:
        stderr.write(f"gapforge {' '.join(args.cmd)}: --seed is required\n")
        return 2
    if args.jobs < 1:
        stderr.write("--jobs must be >= 1\n")
        return 2
    t0 = time.perf_counter()
    try:
        code = args.func(args, Out(args, stdout))
    except (UsageError, gio.ArtifactError, ValueError, OSError, json.JSONDecodeError) as e:
        stderr.write(f"gapforge: error: {e}\n")
        return 2
    except VerificationFailure as e:
        stderr.write(f"gapforge: verification failed: {e}\n")
        return 1
    stderr.write(f"[{' '.join(args.cmd)}: {time.perf_counter() - t0:.3f}s]\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
