"""Command line entry point.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for bad
input (unreadable JSON, objects failing their axioms) and 3 when a complex
would exceed the generator ceiling.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
import time
from pathlib import Path

from . import fixtures
from .exact import format_canonical
from .hochschild import CEILING_ENV, ResourceLimitError, bicyclic_swap_check, hattori_stallings, hh, morita_hh_check, shadow_coherence_check
from .report import CheckReport
from .ringbimod import AxiomError
from .serialize import (
    InputError,
    algebra_from_json,
    automorphism_from_json,
    bimodule_from_json,
    cat_bimodule_from_json,
    category_from_json,
    dumps,
    element_from_json,
    green_from_json,
    green_pair_from_json,
    load_json,
    mackey_from_json,
    pair_from_json,
    tower_from_json,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


class RunConfig:
    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.json = args.json
        self.ceiling = args.ceiling
        md = getattr(args, "max_degree", None)
        if md is not None and md < 0:
            raise InputError("--max-degree must be >= 0")
        tr = getattr(args, "truncation", None)
        if tr and md is not None and tr < md + 1:
            raise InputError("--truncation must be at least max-degree + 1")
        if self.ceiling is not None and self.ceiling < 1:
            raise InputError("--ceiling must be >= 1")


def _load(path):
    return load_json(path), Path(path).parent


def _emit(cfg: RunConfig, payload: dict, text: str) -> None:
    if cfg.json:
        print(dumps(payload))
    else:
        print(text)


def _report(cfg: RunConfig, rep: CheckReport) -> int:
    _emit(cfg, rep.to_json(), str(rep))
    return EXIT_OK if rep.passed else EXIT_FAIL


def _homology(cfg: RunConfig, rep) -> int:
    _emit(cfg, rep.to_json(), str(rep))
    return EXIT_OK


# -- algebras --------------------------------------------------------------------

def cmd_hh(cfg: RunConfig) -> int:
    a = cfg.args
    obj, base = _load(a.algebra)
    A = algebra_from_json(obj, base)
    M = None
    if a.coeff:
        cobj, cbase = _load(a.coeff)
        M = bimodule_from_json(cobj, default=A, base=cbase)
    return _homology(cfg, hh(A, M, a.max_degree, normalized=not a.unnormalized, ceiling=cfg.ceiling))


def cmd_morita(cfg: RunConfig) -> int:
    obj, base = _load(cfg.args.pair)
    return _report(cfg, morita_hh_check(pair_from_json(obj, base), cfg.args.max_degree, cfg.ceiling))


def cmd_shadow(cfg: RunConfig) -> int:
    from .generate import random_pair, random_triple

    a = cfg.args
    rep = CheckReport(f"shadow checks, seed {a.seed}, {a.instances} instances")
    for i in range(a.instances):
        M, N, P = random_triple(random.Random(f"{a.seed}:triple:{i}"), a.max_rank)
        sub = shadow_coherence_check(M, N, P)
        rep.extend(sub, f"triple {i}: ")
    if a.truncation:
        for i in range(a.instances):
            A, B, M, N = random_pair(random.Random(f"{a.seed}:pair:{i}"), a.max_rank)
            sub = bicyclic_swap_check(A, B, M, N, T=a.truncation)
            rep.extend(sub, f"pair {i}: ")
    return _report(cfg, rep)


def cmd_trace(cfg: RunConfig) -> int:
    a = cfg.args
    obj, base = _load(a.algebra)
    A = algebra_from_json(obj, base)
    phi = None
    if a.phi:
        pobj, pbase = _load(a.phi)
        A2, phi = automorphism_from_json(pobj, A, pbase)
    e = [[element_from_json(x) for x in row] for row in load_json(a.idem)]
    F = [[element_from_json(x) for x in row] for row in load_json(a.map)]
    x = hattori_stallings(A, phi, e, F)
    G = x.group
    free, torsion = G.canonical_form()
    bound = 1
    for t in torsion:
        bound *= t
    order = next((k for k in range(1, bound + 1) if (k * x).is_zero()), None)
    nf = list(x.normal_form)
    payload = {"group": format_canonical(free, torsion), "class": nf, "zero": x.is_zero(), "order": order}
    _emit(cfg, payload, f"HS(F) = {nf} in {payload['group']}" + (f", order {order}" if order else ""))
    return EXIT_OK


def cmd_hh_twisted(cfg: RunConfig) -> int:
    from .twisted import TwistedAlgebra, TwistedBimodule, hh_twisted
    from .exact import AbHom

    a = cfg.args
    obj, base = _load(a.algebra)
    A = algebra_from_json(obj, base)
    pobj, pbase = _load(a.phi)
    A, phi = automorphism_from_json(pobj, A, pbase)
    TA = TwistedAlgebra(A, phi)
    TM = None
    if a.coeff:
        cobj, cbase = _load(a.coeff)
        M = bimodule_from_json(cobj, default=A, base=cbase)
        gamma = None
        if a.gamma:
            gamma = AbHom(M.group, M.group, load_json(a.gamma)["matrix"] if isinstance(load_json(a.gamma), dict) else load_json(a.gamma))
        TM = TwistedBimodule(M, TA, TA, gamma)
    return _homology(cfg, hh_twisted(TA, TM, a.max_degree, ceiling=cfg.ceiling))


def cmd_hh_cat(cfg: RunConfig) -> int:
    from .lincat import hh_cat

    a = cfg.args
    obj, base = _load(a.category)
    C = category_from_json(obj, base)
    P = None
    if a.coeff:
        cobj, cbase = _load(a.coeff)
        P = cat_bimodule_from_json(cobj, C, cbase)
    return _homology(cfg, hh_cat(C, P, a.max_degree, ceiling=cfg.ceiling))


def cmd_agreement(cfg: RunConfig) -> int:
    from .lincat import agreement_check

    a = cfg.args
    obj, base = _load(a.algebra)
    return _report(cfg, agreement_check(algebra_from_json(obj, base), a.r, a.max_degree, ceiling=cfg.ceiling))


# -- Mackey functors ---------------------------------------------------------------

def _forms_text(F) -> str:
    return ", ".join(f"C_{d}: {format_canonical(*f)}" for d, f in F.canonical_forms().items())


def _forms_json(F) -> dict:
    return {str(d): format_canonical(*f) for d, f in F.canonical_forms().items()}


def cmd_mackey_check(cfg: RunConfig) -> int:
    obj, base = _load(cfg.args.functor)
    F = mackey_from_json(obj, base)
    rep = F.check()
    rep.data["levels"] = _forms_json(F)
    return _report(cfg, rep)


def cmd_mackey_box(cfg: RunConfig) -> int:
    from .mackey import box, box_unit_iso

    factors = []
    for path in cfg.args.factor:
        obj, base = _load(path)
        factors.append(mackey_from_json(obj, base))
    B = box(*factors)
    rep = CheckReport("box product")
    rep.add("Mackey axioms", not B.axiom_failures(first_only=True))
    if len(factors) == 1:
        rep.add("unit map is an isomorphism", box_unit_iso(factors[0]).is_isomorphism())
    rep.data["levels"] = _forms_json(B)
    if not cfg.json:
        print(_forms_text(B))
    return _report(cfg, rep)


def cmd_mackey_hh(cfg: RunConfig) -> int:
    from .mackey.nerve import mackey_hh

    a = cfg.args
    obj, base = _load(a.green)
    R = green_from_json(obj, base)
    H = mackey_hh(R, max_degree=a.max_degree)
    payload = {"degrees": [{"degree": q, "levels": _forms_json(F)} for q, F in enumerate(H)]}
    _emit(cfg, payload, "\n".join(f"HH_{q}: {_forms_text(F)}" for q, F in enumerate(H)))
    return EXIT_OK


def cmd_mackey_phi(cfg: RunConfig) -> int:
    from .mackey.geometric import geometric_fixed_points, phi_vs_etilde

    a = cfg.args
    obj, base = _load(a.functor)
    F = mackey_from_json(obj, base)
    Phi = geometric_fixed_points(F, a.p)
    rep = phi_vs_etilde(F, a.p)
    rep.data["levels"] = _forms_json(Phi)
    if not cfg.json:
        print(f"Φ_{a.p}: {_forms_text(Phi)}")
    return _report(cfg, rep)


def cmd_mackey_etilde(cfg: RunConfig) -> int:
    from .mackey.geometric import ef_sub, etilde

    a = cfg.args
    obj, base = _load(a.functor)
    F = mackey_from_json(obj, base)
    E, Q = ef_sub(F, a.N), etilde(F, a.N)
    payload = {"EF": _forms_json(E), "EFtilde": _forms_json(Q)}
    _emit(cfg, payload, f"EF_{a.N}: {_forms_text(E)}\nẼF_{a.N}: {_forms_text(Q)}")
    return EXIT_OK


def cmd_mackey_tower(cfg: RunConfig) -> int:
    from .mackey.tower import tr_tower

    a = cfg.args
    obj, base = _load(a.tower)
    rep = tr_tower(tower_from_json(obj, base), a.degree, a.stages)
    _emit(cfg, rep.to_json(), rep.table())
    return EXIT_OK


def cmd_mackey_shadow(cfg: RunConfig) -> int:
    from .mackey.shadow import green_shadow_check

    a = cfg.args
    obj, base = _load(a.pair)
    R, S, M, N = green_pair_from_json(obj, base)
    return _report(cfg, green_shadow_check(R, S, M, N, a.max_degree))


# -- corpus ------------------------------------------------------------------------

def cmd_generate(cfg: RunConfig) -> int:
    from .generate import generate

    a = cfg.args
    obj = generate(a.kind, a.seed, a.max_rank, a.m)
    text = dumps(obj)
    if a.out:
        Path(a.out).write_text(text + "\n")
    else:
        print(text)
    return EXIT_OK


def cmd_fixtures(cfg: RunConfig) -> int:
    paths = fixtures.write_corpus(cfg.args.out)
    if not cfg.json:
        print(f"wrote {len(paths)} fixtures to {cfg.args.out}")
    else:
        print(dumps({"written": [p.name for p in paths]}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    def options(suppress):
        # the subcommand copies must not overwrite a value given before the subcommand
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        o = argparse.ArgumentParser(add_help=False)
        o.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
        o.add_argument("--ceiling", type=int, default=d(None), help=f"generator-count cap (default from ${CEILING_ENV})")
        o.add_argument("--timings", action="store_true", default=d(False), help="report wall time on stderr")
        return o

    common = options(True)

    p = argparse.ArgumentParser(prog="hhshadow", description="Exact Hochschild homology and its structural checks.", parents=[options(False)])
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, fn, help_):
        s = sub.add_parser(name, help=help_, parents=[common])
        s.set_defaults(fn=fn)
        return s

    s = cmd("hh", cmd_hh, "Hochschild homology of an algebra")
    s.add_argument("--algebra", required=True)
    s.add_argument("--coeff")
    s.add_argument("--max-degree", type=int, default=2)
    s.add_argument("--unnormalized", action="store_true")

    s = cmd("morita-check", cmd_morita, "Morita invariance for a dual pair")
    s.add_argument("--pair", required=True)
    s.add_argument("--max-degree", type=int, default=2)

    s = cmd("shadow-check", cmd_shadow, "degree-0 coherence and bicyclic swap on random instances")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--instances", type=int, default=20)
    s.add_argument("--max-rank", type=int, default=2)
    s.add_argument("--truncation", type=int, default=3, help="bicyclic truncation; 0 skips the swap check")

    tr = sub.add_parser("trace", help="traces", parents=[common])
    trs = tr.add_subparsers(dest="trace_kind", required=True)
    s = trs.add_parser("hs", help="Hattori-Stallings trace", parents=[common])
    s.set_defaults(fn=cmd_trace)
    s.add_argument("--algebra", required=True)
    s.add_argument("--phi")
    s.add_argument("--idem", required=True)
    s.add_argument("--map", required=True)

    s = cmd("hh-twisted", cmd_hh_twisted, "twisted Hochschild homology")
    s.add_argument("--algebra", required=True)
    s.add_argument("--phi", required=True)
    s.add_argument("--coeff")
    s.add_argument("--gamma")
    s.add_argument("--max-degree", type=int, default=2)

    s = cmd("hh-cat", cmd_hh_cat, "Hochschild homology of a linear category")
    s.add_argument("--category", required=True)
    s.add_argument("--coeff")
    s.add_argument("--max-degree", type=int, default=2)

    s = cmd("agreement", cmd_agreement, "one-object against free-category Hochschild homology")
    s.add_argument("--algebra", required=True)
    s.add_argument("--r", type=int, default=2)
    s.add_argument("--max-degree", type=int, default=2)

    mk = sub.add_parser("mackey", help="Mackey and Green functors", parents=[common])
    mks = mk.add_subparsers(dest="mackey_command", required=True)

    def mcmd(name, fn, help_):
        s = mks.add_parser(name, help=help_, parents=[common])
        s.set_defaults(fn=fn)
        return s

    s = mcmd("check", cmd_mackey_check, "run the Mackey axiom suite")
    s.add_argument("--functor", required=True)
    s = mcmd("box", cmd_mackey_box, "box product of Mackey functors")
    s.add_argument("--factor", action="append", required=True)
    s = mcmd("hh", cmd_mackey_hh, "homology Mackey functors of the twisted cyclic nerve")
    s.add_argument("--green", required=True)
    s.add_argument("--max-degree", type=int, default=1)
    s = mcmd("phi", cmd_mackey_phi, "geometric fixed points")
    s.add_argument("--functor", required=True)
    s.add_argument("--p", type=int, required=True)
    s = mcmd("etilde", cmd_mackey_etilde, "family sub-functor and quotient")
    s.add_argument("--functor", required=True)
    s.add_argument("--N", type=int, required=True)
    s = mcmd("tr-tower", cmd_mackey_tower, "finite stages of the tr tower")
    s.add_argument("--tower", required=True)
    s.add_argument("--degree", type=int, default=0)
    s.add_argument("--stages", type=int, default=None)
    s = mcmd("shadow-check", cmd_mackey_shadow, "cyclic invariance at the top level")
    s.add_argument("--pair", required=True)
    s.add_argument("--max-degree", type=int, default=1)

    s = cmd("generate", cmd_generate, "seeded random fixtures")
    s.add_argument("--kind", choices=["algebra", "bimodule", "pair", "triple", "mackey"], required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-rank", type=int, default=2)
    s.add_argument("--m", type=int, default=2)
    s.add_argument("--out")

    s = cmd("fixtures", cmd_fixtures, "write the standard corpus as JSON")
    s.add_argument("--out", required=True)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    saved = os.environ.get(CEILING_ENV)
    try:
        cfg = RunConfig(args)
        if cfg.ceiling is not None:
            # nested constructions read the ceiling from the environment
            os.environ[CEILING_ENV] = str(cfg.ceiling)
        code = args.fn(cfg)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InputError, AxiomError, KeyError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        if saved is None:
            os.environ.pop(CEILING_ENV, None)
        else:
            os.environ[CEILING_ENV] = saved
    if args.timings:
        print(f"time: {time.perf_counter() - start:.2f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
