"""Batch command surface.

Every invocation emits one machine-readable document

    {"command": ..., "config": {...},
     "results": [{"name", "value", "exact", "precision", "anchor"}, ...]}

as canonical JSON (sorted keys) or a flat CSV projection; identical
configuration and seed give byte-identical output.  Exit status 2 on
configuration errors, 1 when --strict is set and a result is
indeterminate or failing.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from dataclasses import asdict, dataclass, fields
from fractions import Fraction

from . import galrep, gf, logtrunc, padic, perfseries, phimod, ramif, suites
from .errors import Indeterminate, PadicLabError
from .padic import PadicInt
from .rings import FFRing, Zmod
from .series import EisensteinPoly, TruncSeries, kisin_lambda, newton_polygon, weierstrass
from .witt import from_zmod, generate_laws, to_zmod, WittVector


@dataclass
class RunConfig:
    p: int = 3
    q: int = 0          # 0 means q = p
    e: int = 1
    n: int = 1
    N: int = 8          # p-adic working precision
    M: int = 20         # u-adic truncation
    W: int = 12         # bivariate weight truncation
    wittlen: int = 2
    D: int = 0          # 0 means p - 1
    jmax: int = 4
    seed: int = 0
    trials: int = 100

    def validate(self):
        if self.p < 3 or any(self.p % k == 0 for k in range(2, int(self.p ** 0.5) + 1)):
            raise ValueError("p must be an odd prime")
        if self.q == 0:
            self.q = self.p
        q = self.q
        while q > 1 and q % self.p == 0:
            q //= self.p
        if q != 1:
            raise ValueError("q must be a power of p")
        for fname in ("e", "n", "N", "M", "W", "wittlen", "jmax", "trials"):
            if getattr(self, fname) <= 0:
                raise ValueError(f"{fname} must be positive")

    @property
    def lattice_D(self):
        return self.D if self.D else self.p - 1


def _parse_config_file(path: str) -> dict:
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, val = line.partition("=")
            out[key.strip()] = int(val.strip())
    return out


def _result(name, value, exact=True, precision="exact", anchor=""):
    return {"name": name, "value": str(value), "exact": bool(exact),
            "precision": str(precision), "anchor": anchor}


def _parse_matrix(text: str):
    return [[int(x) for x in row.split(",")] for row in text.split(";")]


# --- subcommand handlers -> list of result dicts ---


def _cmd_padic(args, cfg: RunConfig):
    p, N = cfg.p, cfg.N
    if args.op == "valuation":
        v = padic.valuation(PadicInt(p, N, args.x))
        return [_result("valuation", "inf" if v == padic.INFINITY else int(v),
                        precision=f"O({p}^{N})", anchor="padic-valuation")]
    if args.op == "log":
        r = padic.log_unit(PadicInt(p, N, args.x))
        return [_result("log", r.residue, precision=f"O({p}^{r.prec})", anchor="padic-log")]
    if args.op == "exp":
        r = padic.exp_unit(PadicInt(p, N, args.x))
        return [_result("exp", r.residue, precision=f"O({p}^{r.prec})", anchor="padic-exp")]
    if args.op == "qanalogue":
        r = padic.q_analogue(PadicInt(p, N, args.a), PadicInt(p, N, args.qq))
        return [_result("qanalogue", r.residue, precision=f"O({p}^{r.prec})",
                        anchor="qanalogue")]
    if args.op == "qinverse":
        r = padic.q_analogue_inverse(PadicInt(p, N, args.b), PadicInt(p, N, args.qq))
        return [_result("qinverse", r.residue, precision=f"O({p}^{r.prec})",
                        anchor="qanalogue-inverse")]
    if args.op == "chitau":
        r = padic.chi_tau(PadicInt(p, N, args.chig), PadicInt(p, N, args.qq))
        return [_result("chitau", r.residue, precision=f"O({p}^{r.prec})",
                        anchor="chi-tau")]
    raise ValueError(f"unknown padic op {args.op}")


def _cmd_witt(args, cfg: RunConfig):
    p, n = cfg.p, cfg.wittlen
    ring = FFRing(gf.field(p))
    if args.op == "laws":
        table = generate_laws(p, n)
        out = []
        for k, poly in enumerate(table.sum_polys):
            out.append(_result(f"S{k}", _poly_str(poly, n), anchor="witt-laws"))
        for k, poly in enumerate(table.prod_polys):
            out.append(_result(f"P{k}", _poly_str(poly, n), anchor="witt-laws"))
        return out
    if args.op in ("add", "mul"):
        x = WittVector(p, ring, [ring.of_int(c) for c in _ints(args.x)])
        y = WittVector(p, ring, [ring.of_int(c) for c in _ints(args.y)])
        z = x + y if args.op == "add" else x * y
        return [_result(args.op, [ring.field.code(c) for c in z.coords],
                        anchor="witt-ring")]
    if args.op == "tozmod":
        x = WittVector(p, ring, [ring.of_int(c) for c in _ints(args.x)])
        return [_result("tozmod", to_zmod(x), anchor="witt-zmod-iso")]
    if args.op == "fromzmod":
        z = from_zmod(args.value, p, n, ring)
        return [_result("fromzmod", [ring.field.code(c) for c in z.coords],
                        anchor="witt-zmod-iso")]
    raise ValueError(f"unknown witt op {args.op}")


def _ints(text):
    return [int(t) for t in text.split(",")]


def _poly_str(poly, n):
    names = [f"x{i}" for i in range(n)] + [f"y{i}" for i in range(n)]
    terms = []
    for mono, coeff in poly:
        vars_ = "*".join(f"{names[i]}^{e}" if e > 1 else names[i]
                         for i, e in enumerate(mono) if e)
        terms.append(f"{coeff}" + (f"*{vars_}" if vars_ else ""))
    return " + ".join(terms) if terms else "0"


def _eisenstein(args, cfg) -> EisensteinPoly:
    if args.E:
        return EisensteinPoly(cfg.p, _ints(args.E))
    return EisensteinPoly(cfg.p, tuple([cfg.p] + [0] * (cfg.e - 1) + [1]))


def _cmd_series(args, cfg: RunConfig):
    p = cfg.p
    if args.op == "lambda":
        E = _eisenstein(args, cfg)
        lam = kisin_lambda(E, cfg.M)
        res = [_result(f"u^{k}", lam.coeffs.get(k, Fraction(0)),
                       precision=f"O(u^{cfg.M})", anchor="lambda-series")
               for k in range(min(cfg.M, 12))]
        return res
    if args.op == "newton":
        pts = [tuple(_ints(pair)) for pair in args.points.split(";")]
        np_ = newton_polygon([(i, v) for i, v in pts])
        return [_result("newton", [[str(s), m] for s, m in np_],
                        anchor="newton-polygon")]
    if args.op == "weierstrass":
        ring = Zmod(p, cfg.n)
        f = TruncSeries(ring, dict(enumerate(_ints(args.coeffs))), cfg.M)
        unit, dist = weierstrass(f)
        return [
            _result("distinguished", sorted(dist.coeffs.items()),
                    precision=f"O(u^{dist.prec})", anchor="weierstrass"),
            _result("unit", sorted(unit.coeffs.items())[:8],
                    precision=f"O(u^{unit.prec})", anchor="weierstrass"),
        ]
    if args.op == "solvev":
        U = TruncSeries(Zmod(p, cfg.n), dict(enumerate(_ints(args.coeffs))), cfg.M)
        field = gf.field(p)
        V = perfseries.solve_frobenius_fixed(U, field, cfg.n, D=cfg.lattice_D,
                                             jmax=cfg.jmax, prec=Fraction(cfg.M))
        ring = perfseries.PerfRing(field, cfg.lattice_D, cfg.jmax, Fraction(cfg.M))
        res = perfseries.frobenius_fixed_residual(U, V, ring, cfg.n)
        zero = all(c.is_zero() for c in res.coords)
        out = [_result("residual-zero", zero, anchor="frobenius-fixed-point")]
        for i, c in enumerate(V.coords):
            out.append(_result(f"V[{i}] support", [str(e) for e in sorted(c.coeffs)[:8]],
                               precision=f"O(u^{c.prec})", anchor="frobenius-fixed-point"))
        return out
    raise ValueError(f"unknown series op {args.op}")


def _cmd_phimod(args, cfg: RunConfig):
    p, q, M = cfg.p, cfg.q, cfg.M
    ring = FFRing(gf.field(p, _flog(q, p))) if cfg.n == 1 else Zmod(p, cfg.n)
    if args.op == "cyclotomic":
        E = _eisenstein(args, cfg)
        mod = phimod.cyclotomic_module(args.m, cfg.n, E, q=q, prec=M)
        out = [_result("etale", phimod.is_etale(mod), anchor="cyclotomic-module")]
        if cfg.n == 1 and args.m >= 0:
            out.append(_result("uheight", phimod.u_height(phimod.PhiLattice(mod)),
                               anchor="cyclotomic-height"))
        return out
    G = [[TruncSeries(ring, {0: ring.of_int(v)}, M) for v in row]
         for row in _parse_matrix(args.matrix)] if args.constant else \
        _series_matrix(args.matrix, ring, M)
    mod = phimod.PhiModule(p, q, cfg.n, G)
    if args.op == "etale":
        return [_result("etale", phimod.is_etale(mod), anchor="etale-test")]
    if args.op == "uheight":
        h = phimod.u_height(phimod.PhiLattice(mod))
        return [_result("uheight", h, anchor="uheight")]
    if args.op == "heightdiv":
        U = TruncSeries(ring, dict(enumerate(_ints(args.U))), M)
        try:
            r = phimod.height_divides(mod, U)
            return [_result("height-divides", r, anchor="height-divides")]
        except Indeterminate as exc:
            return [_result("height-divides", f"indeterminate: {exc}", exact=False,
                            precision=f"O(u^{M})", anchor="height-divides")]
    if args.op == "stabilize":
        L = phimod.stabilize_lattice(mod)
        return [_result("stable-basis-valuation",
                        L.basis[0][0].valuation(), anchor="stabilize-lattice")]
    raise ValueError(f"unknown phimod op {args.op}")


def _series_matrix(text, ring, M):
    rows = []
    for row in text.split(";"):
        entries = []
        for ent in row.split(","):
            coeffs = [int(t) for t in ent.split(":")]
            entries.append(TruncSeries(ring, dict(enumerate(coeffs)), M))
        rows.append(entries)
    return rows


def _flog(q, p):
    f = 0
    while q > 1:
        q //= p
        f += 1
    return max(f, 1)


def _cmd_galois(args, cfg: RunConfig):
    p, q = cfg.p, cfg.q
    ring = FFRing(gf.field(p, _flog(q, p)))
    if args.op == "solve":
        G = [[TruncSeries(ring, {0: ring.of_int(v)}, cfg.M) for v in row]
             for row in _parse_matrix(args.matrix)]
        S = galrep.solve_unit_root(G)
        act = galrep.frobenius_action(S)
        return [
            _result("solutions", S.cardinality, anchor="modp-functor-cardinality"),
            _result("extension-degree", S.s, anchor="modp-functor"),
            _result("action", str(act.matrix), anchor="unramified-action"),
            _result("charpoly", list(act.char_poly()), anchor="unramified-action"),
        ]
    if args.op == "rank1":
        S = galrep.solve_rank1(args.a, args.c, gf.field(p, _flog(q, p)), prec=cfg.M)
        return [
            _result("solutions", S.cardinality, anchor="rank1-solutions"),
            _result("tame-exponent", str(Fraction(args.a, p - 1)),
                    anchor="rank1-tame-character"),
        ]
    raise ValueError(f"unknown galois op {args.op}")


def _cmd_logm(args, cfg: RunConfig):
    p, N = cfg.p, cfg.N
    A = logtrunc.BoundedOp.of(p, N, _parse_matrix(args.matrix))
    if args.op == "value":
        L = logtrunc.log_m(A, args.m)
        return [_result("logm", L.value_mod(L.certified),
                        precision=f"O({p}^{L.certified})", anchor="logm-value")]
    if args.op == "bounded":
        return [_result("bounded", logtrunc.is_bounded(A, args.m, args.c),
                        anchor="lambda-bounded")]
    if args.op == "rdc":
        r = logtrunc.rdc_valuation_check(_parse_matrix(args.matrix), p, N,
                                         args.t, args.i)
        return [_result("rdc", r, anchor="nilpotent-log-estimate")]
    raise ValueError(f"unknown logm op {args.op}")


def _cmd_ramif(args, cfg: RunConfig):
    p, e, n = cfg.p, cfg.e, cfg.n
    if args.op == "bound-gk":
        b = ramif.bound_GK(args.h, n, e, p, s0=args.s0, c0=args.c0,
                           tame=args.tame, refined=args.refined)
        return [_result("bound", b, exact=b.is_exact(), anchor="bound-gk")]
    if args.op == "bound-ginf":
        return [_result("bound", ramif.bound_Ginf(args.h, n, p), anchor="bound-ginf")]
    if args.op == "bound-sst":
        return [_result("bound", ramif.bound_semistable(args.r, n, e, p),
                        anchor="bound-semistable")]
    if args.op == "bound-converse":
        thr, hb = ramif.bound_converse(args.h, e, p)
        return [_result("threshold", thr, exact=thr.is_exact(), anchor="bound-converse"),
                _result("height-bound", hb, anchor="bound-converse")]
    if args.op == "bound-tau":
        return [_result("s0", ramif.bound_tau_congruence(args.h, args.cprime, p),
                        anchor="tau-congruence-depth")]
    if args.op == "gamma":
        return [_result("depth", ramif.gamma_lower_bound(args.s, e, args.c0 or 0),
                        anchor="gamma-depth")]
    if args.op == "phi-kinf":
        f = ramif.phi_Kinf(e, p, args.s)
        return [_result("vertices", [[str(a), str(b)] for a, b in f.vertices],
                        anchor="phi-kinf"),
                _result("final-slope", f.final_slope, anchor="phi-kinf")]
    if args.op == "herbrand":
        jumps = [tuple(Fraction(t) for t in pair.split(","))
                 for pair in args.jumps.split(";")]
        f = ramif.herbrand_phi([(l, int(o)) for l, o in jumps])
        return [_result("vertices", [[str(a), str(b)] for a, b in f.vertices],
                        anchor="herbrand"),
                _result("concave", f.is_concave(), anchor="herbrand")]
    raise ValueError(f"unknown ramif op {args.op}")


def _cmd_tau(args, cfg: RunConfig):
    import random as _random

    from . import gskel, taumod
    rng = _random.Random(cfg.seed)
    F = gf.field(cfg.p)
    tau = gskel.elt(cfg.p, cfg.N, 1, 1)
    perm = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    M = taumod.trivial_restriction_module(perm, 1, F, tau, cfg.W)
    if args.op == "order":
        return [_result("order-exponent", M.tau_order_exponent(), anchor="tau-order")]
    if args.op == "commutation":
        bad = 0
        for _ in range(cfg.trials):
            g = gskel.elt(cfg.p, cfg.N, 0, 1 + cfg.p * rng.randrange(cfg.p ** (cfg.N - 1)))
            x = [taumod.BivarSeries(F, {(rng.randrange(0, 6), 0): F.random(rng)
                                        for _ in range(3)}, cfg.W) for _ in range(3)]
            if not taumod.check_commutation(M, g, x):
                bad += 1
        return [_result("commutation-failures", bad, anchor="tau-commutation")]
    raise ValueError(f"unknown tau op {args.op}")


def _cmd_suite(args, cfg: RunConfig):
    kwargs = {}
    if args.name == "logm":
        kwargs = {"p": cfg.p, "m": args.m if args.m else 2}
    return suites.run_suite(args.name, cfg.trials, cfg.seed, **kwargs)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    shared.add_argument("--config", help="key=value config file; flags override")
    shared.add_argument("--out", help="write the document to FILE instead of stdout")
    shared.add_argument("--format", choices=("json", "csv"))
    shared.add_argument("--strict", action="store_true",
                        help="exit 1 on indeterminate or failing results")
    for f in fields(RunConfig):
        shared.add_argument(f"--{f.name}", type=int)
    top = argparse.ArgumentParser(prog="padiclab", parents=[shared],
                                  description="exact p-adic semilinear algebra, batch mode")
    sub = top.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("padic", parents=[shared])
    sp.add_argument("op", choices=["valuation", "log", "exp", "qanalogue",
                                   "qinverse", "chitau"])
    sp.add_argument("--x", type=int, default=0)
    sp.add_argument("--a", type=int, default=0)
    sp.add_argument("--b", type=int, default=0)
    sp.add_argument("--qq", type=int, default=1, help="the unit q")
    sp.add_argument("--chig", type=int, default=1)
    sp.set_defaults(func=_cmd_padic)

    sp = sub.add_parser("witt", parents=[shared])
    sp.add_argument("op", choices=["laws", "add", "mul", "tozmod", "fromzmod"])
    sp.add_argument("--x", default="0")
    sp.add_argument("--y", default="0")
    sp.add_argument("--value", type=int, default=0)
    sp.set_defaults(func=_cmd_witt)

    sp = sub.add_parser("series", parents=[shared])
    sp.add_argument("op", choices=["lambda", "newton", "weierstrass", "solvev"])
    sp.add_argument("--E", default="", help="Eisenstein coefficients low..high")
    sp.add_argument("--points", default="", help="i,v;i,v;... pairs")
    sp.add_argument("--coeffs", default="0", help="series coefficients low..high")
    sp.set_defaults(func=_cmd_series)

    sp = sub.add_parser("phimod", parents=[shared])
    sp.add_argument("op", choices=["etale", "uheight", "heightdiv", "stabilize",
                                   "cyclotomic"])
    sp.add_argument("--matrix", default="1")
    sp.add_argument("--constant", action="store_true",
                    help="matrix entries are constants, not series")
    sp.add_argument("--U", default="1", help="coefficients of U for heightdiv")
    sp.add_argument("--m", type=int, default=1, help="cyclotomic twist")
    sp.add_argument("--E", default="")
    sp.set_defaults(func=_cmd_phimod)

    sp = sub.add_parser("galois", parents=[shared])
    sp.add_argument("op", choices=["solve", "rank1"])
    sp.add_argument("--matrix", default="1", help="constant F_q matrix, codes")
    sp.add_argument("--a", type=int, default=1)
    sp.add_argument("--c", type=int, default=1)
    sp.set_defaults(func=_cmd_galois)

    sp = sub.add_parser("tau", parents=[shared])
    sp.add_argument("op", choices=["order", "commutation"])
    sp.set_defaults(func=_cmd_tau)

    sp = sub.add_parser("logm", parents=[shared])
    sp.add_argument("op", choices=["value", "bounded", "rdc"])
    sp.add_argument("--matrix", default="1")
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--c", type=int, default=0)
    sp.add_argument("--t", type=int, default=1)
    sp.add_argument("--i", type=int, default=1)
    sp.set_defaults(func=_cmd_logm)

    sp = sub.add_parser("ramif", parents=[shared])
    sp.add_argument("op", choices=["bound-gk", "bound-ginf", "bound-sst",
                                   "bound-converse", "bound-tau", "gamma",
                                   "phi-kinf", "herbrand"])
    sp.add_argument("--h", type=int, default=1)
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--s", type=int, default=3)
    sp.add_argument("--s0", type=int, default=None)
    sp.add_argument("--c0", type=int, default=None)
    sp.add_argument("--cprime", type=int, default=0)
    sp.add_argument("--tame", action="store_true")
    sp.add_argument("--refined", action="store_true")
    sp.add_argument("--jumps", default="1,3")
    sp.set_defaults(func=_cmd_ramif)

    sp = sub.add_parser("suite", parents=[shared])
    sp.add_argument("name", choices=sorted(suites.SUITES))
    sp.add_argument("--m", type=int, default=None)
    sp.set_defaults(func=_cmd_suite)

    return top


def _emit(doc: dict, fmt: str, out: str | None) -> str:
    if fmt == "json":
        text = json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
    else:
        buf = io.StringIO()
        buf.write("name,value,exact,precision,anchor\n")
        for r in doc["results"]:
            vals = [str(r[k]).replace(",", ";") for k in
                    ("name", "value", "exact", "precision", "anchor")]
            buf.write(",".join(vals) + "\n")
        text = buf.getvalue()
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return text


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "format", "json")
    out = getattr(args, "out", None)
    strict = getattr(args, "strict", False)
    try:
        base = {}
        if getattr(args, "config", None):
            base.update(_parse_config_file(args.config))
        for f in fields(RunConfig):
            v = getattr(args, f.name, None)
            if v is not None:
                base[f.name] = v
        cfg = RunConfig(**{k: v for k, v in base.items()
                           if k in {f.name for f in fields(RunConfig)}})
        cfg.validate()
    except (ValueError, OSError, TypeError) as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 2
    try:
        results = args.func(args, cfg)
    except PadicLabError as exc:
        results = [_result("error", f"{type(exc).__name__}: {exc}", exact=False,
                           precision="n/a", anchor="error")]
    except (ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2
    doc = {"command": args.command + " " + getattr(args, "op", getattr(args, "name", "")),
           "config": asdict(cfg), "results": results}
    _emit(doc, fmt, out)
    if strict and any((not r["exact"]) or str(r["value"]).startswith("FAIL")
                      or r["anchor"] == "error" for r in results):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
