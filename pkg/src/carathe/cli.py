"""Command-line front end.

Exit codes: 0 success, 1 input or resource error, 2 no selection / no
partition, 3 a verification report failed.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import campaigns
from .caratheodory.core import check_hypotheses, covering_check, nerve_range_check, solve, verify_certificate
from .caratheodory.generators import Sampler, gen_instance, spawn_seeds
from .caratheodory.lemmas import MAX_LEMMA_V
from .caratheodory.model import Instance, Variant
from .errors import InputError, NoPartitionError, NoSelectionError, ResourceError
from .geomkernel.config import PointConfig
from .scomplex import ConstructionError, SComplex, from_facets
from .tverberg import full_label_graph, solve_tverberg

EXIT_OK, EXIT_INPUT, EXIT_NONE, EXIT_FAILED = 0, 1, 2, 3


def _dump(data) -> str:
    return json.dumps(data, sort_keys=True, indent=1) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _ints(text: str | None, what: str) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise InputError(f"{what} must be comma-separated integers") from exc


def _warn(msg: str) -> None:
    print(f"warning: {msg}", file=sys.stderr)


# -- gen --------------------------------------------------------------------------
def cmd_gen(args) -> int:
    sizes = _ints(args.sizes, "--sizes")
    if args.r is None:
        args.r = args.d + 1
    if args.r < args.d + 1:
        raise InputError(f"{args.variant} needs r >= d+1 (r={args.r}, d={args.d})")
    if args.count < 1:
        raise InputError("--count must be positive")
    out_dir = Path(args.out) if args.out else None
    cc1_fail = 0
    texts = []
    for i, sq in enumerate(spawn_seeds(args.seed, args.count)):
        inst = gen_instance(Sampler(sq), args.variant, args.d, args.r, sizes, args.N + 1)
        if not check_hypotheses(inst).ok:
            raise InputError(f"generated instance {i} fails its own hypotheses")
        if args.variant == "CC3":
            as_cc1 = Instance(inst.cfg, Variant("CC1", inst.variant.classes))
            cc1_fail += not check_hypotheses(as_cc1).ok
        text = _dump(inst.to_json())
        if out_dir is None:
            texts.append(text)
        else:
            out_dir.mkdir(parents=True, exist_ok=True)
            (out_dir / f"instance_{i:04d}.json").write_text(text)
    if out_dir is None:
        sys.stdout.write(texts[0] if len(texts) == 1 else _dump([json.loads(t) for t in texts]))
    msg = f"{args.variant}: {args.count} instance(s), hypotheses pass"
    if args.variant == "CC3":
        msg += f"; {cc1_fail} fail the CC1 hypothesis"
    print(msg, file=sys.stderr)
    return EXIT_OK


# -- solve ------------------------------------------------------------------------
def cmd_solve(args) -> int:
    inst = Instance.from_json(_read_json(args.instance))
    hyp = check_hypotheses(inst)
    if not hyp.ok:
        bad = hyp.problems or [f"0 not in conv A({it.name})" for it in hyp.failures()]
        _warn(f"{inst.variant.tag} hypotheses fail ({'; '.join(bad)}); solving anyway")
    start = time.perf_counter()
    try:
        cert = solve(inst)
    except NoSelectionError as exc:
        print(f"NO-SELECTION: {exc}", file=sys.stderr)
        return EXIT_NONE
    elapsed = time.perf_counter() - start
    if not verify_certificate(inst, cert):
        print("certificate failed verification", file=sys.stderr)
        return EXIT_FAILED
    _emit(_dump(cert.to_json()), args.out)
    print(f"{inst.variant.tag} |J|={len(cert.vertices())} time={elapsed:.3f}s", file=sys.stderr)
    return EXIT_OK


# -- lemmas -----------------------------------------------------------------------
def _write_report(prefix: str | None, rows: list, payload: dict) -> None:
    if prefix is None:
        sys.stdout.write(_dump(payload))
        return
    Path(prefix).parent.mkdir(parents=True, exist_ok=True)
    Path(prefix + ".json").write_text(_dump(payload))
    Path(prefix + ".csv").write_text(campaigns.rows_to_csv(rows))


def cmd_lemmas(args) -> int:
    data = _read_json(args.config)
    cfg = PointConfig.from_json(data["config"] if isinstance(data, dict) and "config" in data else data)
    if cfg.n_points > MAX_LEMMA_V:
        raise ResourceError(f"|V| = {cfg.n_points} exceeds {MAX_LEMMA_V} for the lemma suite")
    if args.subsets == "all":
        k = None
    else:
        try:
            k = int(args.subsets)
        except ValueError as exc:
            raise InputError("--subsets must be 'all' or a count") from exc
        if k < 0:
            raise InputError("--subsets count must be nonnegative")
    subsets = campaigns.sample_subsets(Sampler(args.seed), cfg.full, k) if k != 0 else []
    hook = "corrupted" if args.corrupt_betti else "exact"
    rows = campaigns.lemma_rows(cfg, subsets, hook)
    passed = all(r["ok"] for r in rows)
    payload = {"subsets": len(subsets), "betti": hook, "passed": passed, "rows": rows}
    _write_report(args.out, rows, payload)
    held = sum(r["hypothesis_held"] for r in rows)
    print(f"lemmas: {len(subsets)} subsets, {held} applicable rows, {'PASS' if passed else 'FAIL'}", file=sys.stderr)
    return EXIT_OK if passed else EXIT_FAILED


# -- cover ------------------------------------------------------------------------
def cmd_cover(args) -> int:
    inst = Instance.from_json(_read_json(args.instance))
    # r >= d+1 is a theorem hypothesis; the dichotomy is checked without it
    probs = inst.variant.problems(inst.cfg.n_points, inst.cfg.dim)
    hyp = [p for p in probs if p.startswith("needs r >=")]
    if len(hyp) < len(probs):
        raise InputError("; ".join(p for p in probs if p not in hyp))
    for p in hyp:
        _warn(p)
    rep = covering_check(inst)
    rng = nerve_range_check(inst)
    payload = {"cover": rep.to_json(), "nerve_range": rng.to_json()}
    _emit(_dump(payload), args.out)
    nerve = "n/a" if not rep.nerve_checked else ("ok" if rep.nerve_ok else "FAIL")
    print(
        f"transversals={rep.transversals} covered={rep.covered} nerve=boundary:{nerve} "
        f"{'PASS' if rep.ok and rng.ok else 'FAIL'}",
        file=sys.stderr,
    )
    return EXIT_OK if rep.ok and rng.ok else EXIT_FAILED


# -- tverberg ---------------------------------------------------------------------
def _load_L(path: str, r: int) -> SComplex:
    data = _read_json(path)
    if isinstance(data, list):
        return from_facets(range(2 * r), [list(e) for e in data])
    return SComplex.from_json(data)


def cmd_tverberg(args) -> int:
    if args.config:
        cfg = PointConfig.from_json(_read_json(args.config), allow_origin=True)
    else:
        s = Sampler(args.seed)
        N = (args.d + 1) * (args.r - 1) if args.N is None else args.N
        cfg = PointConfig(args.d, tuple(s.point(args.d) for _ in range(N + 1)), allow_origin=True)
    L = _load_L(args.L, args.r) if args.L else full_label_graph(args.r)
    anchors = tuple(_ints(args.permute_anchor, "--permute-anchor") or (0, 1))
    try:
        sol = solve_tverberg(cfg, args.r, L, anchors, jobs=args.jobs)
    except NoPartitionError as exc:
        print(f"NO-PARTITION: {exc}", file=sys.stderr)
        return EXIT_NONE
    if not sol.verify(cfg, L, anchors):
        print("solution failed verification", file=sys.stderr)
        return EXIT_FAILED
    _emit(_dump(dict(sol.to_json(), config=cfg.to_json())), args.out)
    print(f"tverberg r={args.r} parts={[len(c) for c in sol.coefficients]}", file=sys.stderr)
    return EXIT_OK


# -- selftest ---------------------------------------------------------------------
def cmd_selftest(args) -> int:
    names = list(campaigns.campaign_specs()) if not args.only else args.only.split(",")
    unknown = [n for n in names if n not in campaigns.campaign_specs()]
    if unknown:
        raise InputError(f"unknown campaign(s): {', '.join(unknown)}")
    ok = True
    for name in names:
        rep = campaigns.run_campaign(name, seed=args.seed, jobs=args.jobs, scale=args.scale)
        if args.out:
            out = Path(args.out)
            out.mkdir(parents=True, exist_ok=True)
            (out / f"{name}.json").write_text(rep.json_text())
            (out / f"{name}.csv").write_text(rep.csv_text())
        print(rep.line())
        ok = ok and rep.passed
    if not args.only:
        square = PointConfig.from_points([(1, 0), (0, 1), (-1, 0), (0, -1)])
        proper = list(range(1, square.full))
        caught = not all(r["ok"] for r in campaigns.lemma_rows(square, proper, "corrupted"))
        print(f"{'PASS' if caught else 'FAIL'} harness: corrupted Betti numbers are detected")
        ok = ok and caught
    return EXIT_OK if ok else EXIT_FAILED


# -- parser -----------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="carathe", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=1):
        sp.add_argument("--seed", type=int, default=seed, help="64-bit RNG seed")
        sp.add_argument("--out", help="output path")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes")

    g = sub.add_parser("gen", help="generate hypothesis-passing instances")
    common(g)
    g.add_argument("--variant", default="CC1", choices=["CC1", "CC2", "CC3", "CC4", "MAIN"])
    g.add_argument("--d", type=int, default=2)
    g.add_argument("--r", type=int, help="number of colour classes (default d+1)")
    g.add_argument("--sizes", help="comma-separated class sizes")
    g.add_argument("--N", type=int, default=10, help="largest vertex index (points = N+1)")
    g.add_argument("--count", type=int, default=1)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="find a certificate for an instance")
    s.add_argument("instance")
    common(s)
    s.set_defaults(func=cmd_solve)

    lm = sub.add_parser("lemmas", help="run the induced-dual lemma suite on one configuration")
    lm.add_argument("config")
    common(lm)
    lm.add_argument("--subsets", default="all", help="'all' or the number of sampled subsets")
    lm.add_argument("--corrupt-betti", action="store_true", help=argparse.SUPPRESS)
    lm.set_defaults(func=cmd_lemmas)

    c = sub.add_parser("cover", help="covering-scheme and nerve checks for an instance")
    c.add_argument("instance")
    common(c)
    c.set_defaults(func=cmd_cover)

    t = sub.add_parser("tverberg", help="constrained Tverberg search")
    common(t)
    t.add_argument("--config", help="PointConfig JSON (random points when omitted)")
    t.add_argument("--d", type=int, default=2)
    t.add_argument("--r", type=int, default=3)
    t.add_argument("--N", type=int, help="largest vertex index for random points")
    t.add_argument("--L", help="JSON complex or edge list on vertices 0..2r-1")
    t.add_argument("--permute-anchor", help="the two constrained vertices, e.g. 2,5")
    t.set_defaults(func=cmd_tverberg)

    st = sub.add_parser("selftest", help="run the verification campaigns")
    common(st, seed=None)
    st.add_argument("--scale", type=float, default=1.0, help="fraction of the full campaign sizes")
    st.add_argument("--only", help="comma-separated campaign names")
    st.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ConstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
