"""Seeded verification campaigns with deterministic JSON / CSV reports.

Every campaign draws item ``i`` from child ``i`` of a numpy SeedSequence, so
item results do not depend on the worker count.  Rows are merged in item
order and serialized with sorted keys; reports carry no timings.
"""
from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .caratheodory.core import (
    build_Z,
    check_hypotheses,
    covering_check,
    nerve_range_check,
    solve,
    verify_certificate,
)
from .caratheodory.generators import (
    Sampler,
    gen_instance,
    gen_unplanted,
    random_complex,
    random_config,
    spawn_seeds,
)
from .caratheodory.lemmas import LEMMAS, LemmaContext, global_lemmas, lemma_suite
from .errors import NoPartitionError
from .geomkernel.predicates import covers_sphere, in_conv, in_interior, members, open_hemis_intersect
from .homology import BettiProfile, betti, check_alexander, check_kunneth_join
from .scomplex import alexander_dual, relabel, zero_avoiding
from .tverberg import radon_first, random_connected_L, solve_tverberg


@dataclass
class Report:
    campaign: str
    seed: int
    params: dict
    rows: list = field(default_factory=list)

    @property
    def failures(self) -> list:
        return [r for r in self.rows if r.get("ok") is False]

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        applicable = [r for r in self.rows if r.get("ok") is not None]
        return {"items": len(self.rows), "checked": len(applicable), "failures": len(self.failures)}

    def to_json(self) -> dict:
        return {
            "campaign": self.campaign,
            "seed": self.seed,
            "params": self.params,
            "summary": self.summary(),
            "passed": self.passed,
            "rows": self.rows,
        }

    def json_text(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1) + "\n"

    def csv_text(self) -> str:
        return rows_to_csv(self.rows)

    def line(self) -> str:
        s = self.summary()
        verdict = "PASS" if self.passed else "FAIL"
        return f"{verdict} {self.campaign}: {s['checked']} checked, {s['failures']} failures"


def rows_to_csv(rows: list[dict]) -> str:
    cols: list[str] = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v for k, v in r.items()})
    return buf.getvalue()


def _map(fn: Callable, tasks: list, jobs: int) -> list:
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))


def _run(name: str, fn: Callable, seed: int, count: int, jobs: int, params: dict, extra=()) -> Report:
    seqs = spawn_seeds(seed, count)
    rows = _map(fn, [(i, sq) + tuple(extra) for i, sq in enumerate(seqs)], jobs)
    return Report(name, seed, dict(params, count=count), rows)


# -- predicates -----------------------------------------------------------------
def _predicate_item(task) -> dict:
    i, sq = task
    s = Sampler(sq)
    d = s.int(1, 3)
    n = s.int(2, 10)
    cfg = random_config(s, d, n)
    bad_hemi = []
    bad_cover = []
    for U in range(1, cfg.full + 1):
        if open_hemis_intersect(cfg, U) == (in_conv(cfg, U) is not None):
            bad_hemi.append(members(U))
        if covers_sphere(cfg, U) != in_interior(cfg, U):
            bad_cover.append(members(U))
    return {
        "id": i, "d": d, "n_points": n, "subsets": cfg.full,
        "hemisphere_mismatches": bad_hemi, "cover_mismatches": bad_cover,
        "ok": not bad_hemi and not bad_cover,
    }


def predicates_campaign(seed: int = 1, count: int = 500, jobs: int = 1) -> Report:
    return _run("predicates", _predicate_item, seed, count, jobs, {"d": [1, 3], "N_max": 9})


# -- Alexander duality ------------------------------------------------------------
def _alexander_complex_item(task) -> dict:
    i, sq = task
    s = Sampler(sq)
    while True:
        n = s.int(1, 9)
        K = random_complex(s, n, max_facets=s.int(0, 6), p=s.random())
        if len(K.faces) != 1 << n:  # duality excludes the full simplex
            break
    return {"id": i, "kind": "complex", "n": n, "faces": len(K.faces), "ok": check_alexander(K)}


def _alexander_config_item(task) -> dict:
    i, sq = task
    s = Sampler(sq)
    while True:
        d = s.int(1, 3)
        n = s.int(2, 9)
        X = zero_avoiding(random_config(s, d, n))
        if len(X.faces) != 1 << n:
            break
    return {"id": i, "kind": "config", "n": n, "faces": len(X.faces), "ok": check_alexander(X)}


def alexander_campaign(seed: int = 2, complexes: int = 500, configs: int = 200, jobs: int = 1) -> Report:
    a = _run("alexander", _alexander_complex_item, seed, complexes, jobs, {})
    b = _run("alexander", _alexander_config_item, seed + 1, configs, jobs, {})
    rows = a.rows + [dict(r, id=complexes + r["id"]) for r in b.rows]
    return Report("alexander", seed, {"complexes": complexes, "configs": configs, "n_max": 9}, rows)


# -- convexity complex ------------------------------------------------------------
def _convexity_item(task) -> dict:
    i, sq = task
    s = Sampler(sq)
    d = s.int(1, 3)
    n = s.int(2, 9)
    cfg = random_config(s, d, n)
    rows = global_lemmas(cfg)
    return {
        "id": i, "d": d, "n_points": n,
        "details": rows[0].details,
        "dual_ok": rows[1].conclusion_held,
        "ok": bool(rows[0].conclusion_held and rows[1].conclusion_held),
    }


def convexity_campaign(seed: int = 3, count: int = 200, jobs: int = 1) -> Report:
    return _run("convexity", _convexity_item, seed, count, jobs, {"d": [1, 3], "n_max": 9})


# -- lemma suite ----------------------------------------------------------------
def corrupted_betti(K) -> BettiProfile:
    """Harness self-test: a wrong profile with an extra class in degree -1."""
    b = dict(betti(K).b)
    b[-1] = b.get(-1, 0) + 1
    return BettiProfile(b)


BETTI_HOOKS = {"exact": betti, "corrupted": corrupted_betti}


def sample_subsets(s: Sampler, full: int, k: int | None) -> list[int]:
    """All nonempty subsets when k is None or covers them, else k distinct ones."""
    if k is None or k >= full:
        return list(range(1, full + 1))
    seen: set[int] = set()
    out = []
    while len(out) < k:
        U = s.int(1, full)
        if U not in seen:
            seen.add(U)
            out.append(U)
    return sorted(out)


def lemma_rows(cfg, subsets: list[int], betti_hook: str = "exact", instance: int = 0) -> list[dict]:
    """One row per (instance, U, lemma)."""
    ctx = LemmaContext(cfg, BETTI_HOOKS[betti_hook])
    out = []
    for U in subsets:
        for row in lemma_suite(cfg, U, ctx, cross_check=True):
            out.append(dict({"instance": instance, "U": members(U)}, **row.to_json(), ok=not row.failed))
    return out


def _lemma_item(task) -> dict:
    i, sq, k, hook = task
    s = Sampler(sq)
    d = s.int(1, 3)
    n = s.int(2, 12)
    cfg = random_config(s, d, n)
    subsets = sample_subsets(s, cfg.full, k)
    rows = lemma_rows(cfg, subsets, hook, i)
    applied = {name: 0 for name in LEMMAS[2:]}
    failed = []
    for r in rows:
        if r["hypothesis_held"]:
            applied[r["lemma"]] += 1
        if not r["ok"]:
            failed.append({"U": r["U"], "lemma": r["lemma"], "details": r["details"]})
    return {"id": i, "d": d, "n_points": n, "subsets": len(subsets), "applied": applied,
            "failed": failed, "ok": not failed}


def lemma_campaign(seed: int = 4, count: int = 100, sample: int | None = 200, jobs: int = 1,
                   betti_hook: str = "exact") -> Report:
    return _run("lemmas", _lemma_item, seed, count, jobs,
                {"n_max": 12, "sample": sample, "betti": betti_hook}, (sample, betti_hook))


# -- theorem campaigns ------------------------------------------------------------
THEOREM_TAGS = ("CC1", "CC2", "CC3", "MAIN")


def _theorem_item(task) -> dict:
    i, sq, tag = task
    s = Sampler(sq)
    d = s.int(2, 3) if tag == "MAIN" else s.int(1, 3)
    r = d + s.int(1, 2)
    inst = gen_instance(s, tag, d, r, max_points=11)
    hyp = check_hypotheses(inst)
    row = {"id": i, "tag": tag, "d": d, "r": r, "N": inst.N, "hypotheses": hyp.ok}
    if tag == "CC3":
        cc1_like = check_hypotheses(type(inst)(inst.cfg, type(inst.variant)("CC1", inst.variant.classes)))
        row["cc1_hypothesis"] = cc1_like.ok
    cert = solve(inst)
    row["J"] = cert.vertices()
    row["lambda"] = {str(v): str(w) for v, w in sorted(cert.lam.items())}
    row["verified"] = verify_certificate(inst, cert)
    if tag == "CC2":
        row["pinned_in_J"] = bool(cert.face >> inst.variant.pinned & 1)
    row["ok"] = bool(hyp.ok and row["verified"])
    return row


def theorem_campaign(seed: int = 5, count: int = 200, jobs: int = 1, tags=THEOREM_TAGS) -> Report:
    rows = []
    for k, tag in enumerate(tags):
        part = _run("theorems", _theorem_item, seed + 100 * k, count, jobs, {}, (tag,))
        rows += [dict(r, id=k * count + r["id"]) for r in part.rows]
    return Report("theorems", seed, {"count_per_tag": count, "tags": list(tags), "N_max": 10}, rows)


# -- covering dichotomy -----------------------------------------------------------
def _cover_instance(s: Sampler):
    d = s.int(1, 3)
    if s.random() < 0.5:
        tag = s.choice(["CC1", "CC2", "MAIN"] if d >= 2 else ["CC1", "CC2"])
        r = d + 1
        return gen_instance(s, tag, d, r, max_points=min(9, 2 * r + 2))
    r = s.int(2, d + 1)
    n = s.int(r, 9)
    return gen_unplanted(s, d, r, n, s.choice(["CC1", "MAIN"]) if r >= 2 and d >= 2 else "CC1")


def _cover_item(task) -> dict:
    i, sq = task
    s = Sampler(sq)
    inst = _cover_instance(s)
    rep = covering_check(inst)
    return dict({"id": i, "tag": inst.variant.tag, "d": inst.d, "N": inst.N}, **rep.to_json())


def cover_campaign(seed: int = 6, count: int = 150, jobs: int = 1) -> Report:
    return _run("cover", _cover_item, seed, count, jobs, {"N_max": 8})


# -- Kunneth and nerve range --------------------------------------------------------
def _kunneth_item(task) -> dict:
    i, sq = task
    s = Sampler(sq)
    n1, n2 = s.int(1, 5), s.int(1, 5)
    K1 = random_complex(s, n1, max_facets=4, p=s.random())
    K2 = relabel(random_complex(s, n2, max_facets=4, p=s.random()), list(range(n1, n1 + n2)))
    return {"id": i, "n1": n1, "n2": n2, "ok": check_kunneth_join(K1, K2)}


def meshulam_candidate(s: Sampler):
    d = s.int(2, 3)
    r = s.int(2, d)
    n = s.int(r + 1, 6)
    return gen_unplanted(s, d, r, n)


def _meshulam_item(task) -> dict:
    i, sq = task
    inst = meshulam_candidate(Sampler(sq))
    rep = nerve_range_check(inst)
    row = dict({"id": i, "d": inst.d, "N": inst.N, "r": inst.variant.r}, **rep.to_json())
    row["z_betti"] = {str(k): v for k, v in sorted(rep.z_betti.items())}
    row["nerve_betti"] = {str(k): v for k, v in sorted(rep.nerve_betti.items())}
    if not rep.applicable:
        row["ok"] = None
    return row


def kunneth_campaign(seed: int = 7, pairs: int = 300, meshulam: int = 50, jobs: int = 1,
                     max_candidates: int = 2000) -> Report:
    """Künneth rows, then nerve-range rows for the first ``meshulam`` applicable candidates."""
    a = _run("kunneth", _kunneth_item, seed, pairs, jobs, {})
    rows = [dict(r, check="kunneth") for r in a.rows]
    seqs = spawn_seeds(seed + 1, max_candidates)
    found = 0
    pos = 0
    while found < meshulam and pos < max_candidates:
        batch = [(pos + k, seqs[pos + k]) for k in range(min(2 * (meshulam - found), max_candidates - pos))]
        for r in _map(_meshulam_item, batch, jobs):
            if found >= meshulam:
                break
            if r["applicable"]:
                found += 1
                rows.append(dict(r, check="meshulam", id=pairs + r["id"]))
        pos += len(batch)
    if found < meshulam:
        rows.append({"check": "meshulam", "id": -1, "reason": f"only {found} applicable candidates", "ok": False})
    return Report("kunneth_meshulam", seed, {"pairs": pairs, "meshulam": meshulam}, rows)


# -- Tverberg ---------------------------------------------------------------------
def _tverberg_item(task) -> dict:
    i, sq = task
    from .geomkernel.config import PointConfig

    s = Sampler(sq)
    d = s.int(1, 2)
    r = s.int(2, 3)
    N = (d + 1) * (r - 1) + s.int(0, 1)
    cfg = PointConfig(d, tuple(s.point(d) for _ in range(N + 1)))
    L = random_connected_L(s, r)
    row = {"id": i, "d": d, "r": r, "N": N, "L": [members(f) for f in L.facets]}
    try:
        sol = solve_tverberg(cfg, r, L)
    except NoPartitionError:
        return dict(row, labeling=None, ok=False)
    row["labeling"] = list(sol.labeling)
    row["point"] = [str(x) for x in sol.point]
    row["verified"] = sol.verify(cfg, L)
    ok = row["verified"]
    if r == 2:
        brute = radon_first(cfg, L)
        row["radon_agrees"] = brute is not None and tuple(brute) == sol.labeling
        ok = ok and row["radon_agrees"]
    row["ok"] = bool(ok)
    return row


def tverberg_campaign(seed: int = 8, count: int = 100, jobs: int = 1) -> Report:
    return _run("tverberg", _tverberg_item, seed, count, jobs, {"d": [1, 2], "r": [2, 3]})


# -- registry -----------------------------------------------------------------------
def campaign_specs(scale: float = 1.0) -> dict:
    """Name -> (callable, kwargs) with counts scaled for quick runs."""
    def c(x: int) -> int:
        return max(1, int(round(x * scale)))

    return {
        "predicates": (predicates_campaign, {"count": c(500)}),
        "alexander": (alexander_campaign, {"complexes": c(500), "configs": c(200)}),
        "convexity": (convexity_campaign, {"count": c(200)}),
        "lemmas": (lemma_campaign, {"count": c(100), "sample": 200}),
        "theorems": (theorem_campaign, {"count": c(200)}),
        "cover": (cover_campaign, {"count": c(150)}),
        "kunneth_meshulam": (kunneth_campaign, {"pairs": c(300), "meshulam": c(50)}),
        "tverberg": (tverberg_campaign, {"count": c(100)}),
    }


def run_campaign(name: str, seed: int | None = None, jobs: int = 1, scale: float = 1.0) -> Report:
    fn, kw = campaign_specs(scale)[name]
    if seed is not None:
        kw = dict(kw, seed=seed)
    return fn(jobs=jobs, **kw)
