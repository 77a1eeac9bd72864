"""``t3lab`` command line.

JSON goes to stdout, a short human summary to stderr.  Exit status: 0 all
checks pass, 1 a bound failed (or theory and code disagree), 2 bad input or
unmet precondition, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import ceil

from t3lab import bounds, formats
from t3lab.constructions import FAMILIES, RANDOM_MODELS, GadgetSpec, build, random_regular
from t3lab.errors import InputError, ResourceError, TheoryDiscrepancy
from t3lab.hypercore import degrees, is_regular, link, max_degree, nu_exact, tau_exact
from t3lab.linegraph import full_line
from t3lab.reports import BoundReport, to_jsonable
from t3lab.structure import count_c4_components, find_fano_components
from t3lab.topology import COEFFS, DEFAULT_CAP, eta, homology

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(to_jsonable(obj), sort_keys=True) + "\n")


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _min_class_degree(h, class_id: int) -> int:
    deg = degrees(h)
    return min((deg[(class_id, i)] for i in range(h.class_sizes[class_id])), default=0)


def _applicable_reports(h, r: int) -> list[BoundReport]:
    """Every verifier whose preconditions hold on ``h`` at ``r``."""
    out = [bounds.check_thm_1_3(h)]
    equal = len(set(h.class_sizes)) == 1
    regular = equal and r >= 1 and is_regular(h, r)
    if regular:
        out.append(bounds.check_thm_1_2(h, r))
        if r >= 2 and r % 2 == 0:
            out.append(bounds.check_thm_4_1(h, r))
    if r >= 2:
        deg = degrees(h)
        for a in range(3):
            others_ok = all(deg[v] <= r for v in h.vertices() if v[0] != a)
            if others_ok and _min_class_degree(h, a) >= r and h.class_sizes[a]:
                out.append(bounds.check_lemma_4_2(h, r, a))
                out.append(bounds.check_thm_4_2(h, r, a))
        if max_degree(h) <= r:
            out.append(bounds.check_lemma_4_3(h, r))
            out.append(bounds.check_lemma_4_5(h, r))
            out.append(bounds.check_lemma_4_6(h, r))
    return out


def cmd_analyze(args) -> int:
    h = formats.load(args.path, formats.T3G)
    r = args.r if args.r is not None else max_degree(h)
    nu = nu_exact(h)
    tau = tau_exact(h)
    n = h.class_sizes[0]
    reports = _applicable_reports(h, r)
    ok = all(rep.passed for rep in reports)
    _emit(
        {
            "nu": nu.size,
            "tau": tau.size,
            "r": r,
            "n": n,
            "eps": bounds.epsilon(nu.size, n),
            "c4_counts": [count_c4_components(link(h, i), r) if r >= 1 else 0 for i in range(3)],
            "fano_count": len(find_fano_components(h, r)) if r % 2 == 0 and r >= 2 else 0,
            "reports": [rep.to_json() for rep in reports],
            "pass": ok,
        }
    )
    failed = [rep.name for rep in reports if not rep.passed]
    _say(f"nu={nu.size} tau={tau.size} r={r}; {len(reports)} checks, failed: {', '.join(failed) or 'none'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_eta(args) -> int:
    g = formats.load(args.path, formats.BMG)
    j = full_line(g)
    value = eta(j, args.coeff, args.cap, vertex_limit=args.vertex_limit)
    profile = homology(j, args.coeff, max_dim=max(args.cap - 2, -1))
    _emit({"eta": value.to_json(), "coeff": args.coeff, "homology": profile.to_json()})
    _say(f"eta(L(G)) = {value} over {args.coeff}")
    return EXIT_OK


T3G_VERIFIERS = {
    "thm1.2": lambda h, a: bounds.check_thm_1_2(h, a.r if a.r is not None else max_degree(h)),
    "thm1.3": lambda h, a: bounds.check_thm_1_3(h),
    "thm4.1": lambda h, a: bounds.check_thm_4_1(h, a.r if a.r is not None else max_degree(h)),
    "thm4.2": lambda h, a: bounds.check_thm_4_2(h, _class_r(h, a), a.class_id),
    "lem4.2": lambda h, a: bounds.check_lemma_4_2(h, _class_r(h, a), a.class_id),
    "lem4.3": lambda h, a: bounds.check_lemma_4_3(h, a.r if a.r is not None else max_degree(h)),
    "lem4.5": lambda h, a: bounds.check_lemma_4_5(h, a.r if a.r is not None else max_degree(h)),
    "lem4.6": lambda h, a: bounds.check_lemma_4_6(h, a.r if a.r is not None else max_degree(h)),
    "thm2.2": lambda h, a: bounds.check_thm_2_2(h, a.class_id),
}
BMG_VERIFIERS = {
    "thm3.1": lambda g, a: bounds.check_thm_3_1(g, r=a.r),
    "cor3.8": lambda g, a: bounds.check_cor_3_8(g, r=a.r, k=a.k),
}
VERIFY_NAMES = sorted(T3G_VERIFIERS) + sorted(BMG_VERIFIERS)


def _class_r(h, args) -> int:
    return args.r if args.r is not None else _min_class_degree(h, args.class_id)


def cmd_verify(args) -> int:
    if args.name in BMG_VERIFIERS:
        report = BMG_VERIFIERS[args.name](formats.load(args.path, formats.BMG), args)
    else:
        h = formats.load(args.path, formats.T3G)
        if not 0 <= args.class_id < 3:
            raise InputError("--class-id must be 0, 1 or 2")
        report = T3G_VERIFIERS[args.name](h, args)
    _emit(report.to_json())
    _say(f"{report.name}: {'pass' if report.passed else 'FAIL'} ({report.lhs} vs {report.rhs})")
    return EXIT_OK if report.passed else EXIT_FAIL


def _spec_from_args(args) -> GadgetSpec:
    keys = {
        "fano": (),
        "scaled-fano": ("s",),
        "extremal": ("r", "n"),
        "thm53-even": ("r",),
        "thm53-odd": ("r",),
        "parallel-triple": ("r",),
        "random-regular": ("r", "n", "seed", "model"),
    }
    if args.family not in keys:
        raise InputError(f"family {args.family!r} cannot be built from flags")
    params = {}
    for k in keys[args.family]:
        v = getattr(args, k)
        if v is None:
            if k == "model":
                continue
            raise InputError(f"{args.family} needs --{k}")
        params[k] = v
    return GadgetSpec(args.family, params)


def cmd_construct(args) -> int:
    spec = _spec_from_args(args)
    h = build(spec)
    text = formats.dumps(h)
    if args.out:
        formats.save(h, args.out)
        _say(f"wrote {args.out}: {h.n_edges} edges, classes {list(h.class_sizes)}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _is_simple(h) -> bool:
    return len({e.shape for e in h.edges}) == h.n_edges


def cmd_search(args) -> int:
    if args.r < 1 or args.n < 1 or args.iters < 0:
        raise InputError("search needs r >= 1, n >= 1, iters >= 0")
    akz = args.target == "akz-counterexample"
    simple_only = args.simple or akz
    threshold = ceil((args.r - 1) * args.n / args.r)
    log, candidates = [], []
    best = None
    for seed in range(args.seed, args.seed + args.iters):
        h = random_regular(args.r, args.n, seed, args.model)
        if simple_only and not _is_simple(h):
            log.append({"seed": seed, "rejected": "parallel edges"})
            continue
        m = nu_exact(h)
        log.append({"seed": seed, "nu": m.size})
        if best is None or (m.size, seed) < (best[0], best[1]):
            best = (m.size, seed, h, m)
        if akz and m.size < threshold:
            candidates.append(
                {
                    "seed": seed,
                    "nu": m.size,
                    "threshold": threshold,
                    "matching": sorted(m.edge_ids),
                    "cover": sorted(tau_exact(h).vertices),
                    "instance": formats.to_json(h),
                }
            )
    out = {"target": args.target, "r": args.r, "n": args.n, "log": log, "best": None}
    if best is not None:
        nu, seed, h, m = best
        out["best"] = {"seed": seed, "nu": nu, "matching": sorted(m.edge_ids), "instance": formats.to_json(h)}
        if args.out:
            formats.save(h, args.out)
    if akz:
        out["candidates"] = candidates
    _emit(out)
    summary = f"best nu={best[0]} at seed {best[1]}" if best else "no instance evaluated"
    if akz:
        summary += f"; {len(candidates)} candidate(s) below {threshold}"
    _say(summary)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="t3lab", description="Matchings, covers and line-graph connectedness for 3-partite 3-graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="matching/cover numbers and every applicable bound for a t3g file")
    a.add_argument("path")
    a.add_argument("--r", type=int)
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("eta", help="homological connectedness of the line graph of a bmg file")
    e.add_argument("path")
    e.add_argument("--coeff", choices=COEFFS, default="q")
    e.add_argument("--cap", type=int, default=DEFAULT_CAP)
    e.add_argument("--vertex-limit", type=int, default=20)
    e.set_defaults(func=cmd_eta)

    v = sub.add_parser("verify", help="run one verifier")
    v.add_argument("name", choices=VERIFY_NAMES)
    v.add_argument("path")
    v.add_argument("--r", type=int)
    v.add_argument("--k", type=int)
    v.add_argument("--class-id", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("construct", help="write a named instance")
    c.add_argument("family", choices=[f for f in FAMILIES if f != "mixture"])
    for flag in ("r", "n", "s", "seed"):
        c.add_argument(f"--{flag}", type=int)
    c.add_argument("--model", choices=RANDOM_MODELS)
    c.add_argument("--out")
    c.set_defaults(func=cmd_construct)

    s = sub.add_parser("search", help="scan seeded random regular instances for small matchings")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--iters", type=int, default=100)
    s.add_argument("--target", choices=("min-nu", "akz-counterexample"), default="min-nu")
    s.add_argument("--model", choices=RANDOM_MODELS, default="stubs")
    s.add_argument("--simple", action="store_true", help="reject instances with parallel edges")
    s.add_argument("--out")
    s.set_defaults(func=cmd_search)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        _say(f"error: {exc}")
        return EXIT_INPUT
    except ResourceError as exc:
        _say(f"resource limit: {exc}")
        return EXIT_RESOURCE
    except TheoryDiscrepancy as exc:
        _emit({"discrepancy": str(exc), "diagnostic": exc.diagnostic})
        _say(f"discrepancy: {exc}")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
