"""Oracle suite behind the ``verify`` command: random instances checked by enumeration."""
from __future__ import annotations

import numpy as np

from .dsfm import sparse_card
from .gadget import augmented_cut_acb, augmented_cut_cb, expand_ccb, expand_kcg
from .instances import random_dsfm, random_hypergraph, random_scb_values
from .oracle import brute_aux_mincut, brute_cut_sandwich, brute_min_f, min_cover_size_dp
from .plcover import CCBParams, KCGParams, find_best_cover
from .reduce import build_sparsifier
from .splitting import scb_from_values


def _close(x: float, y: float, rtol: float = 1e-9) -> bool:
    return abs(x - y) <= rtol * max(1.0, abs(x), abs(y))


def check_sandwich(rng, trials: int) -> dict:
    worst = 1.0
    for _ in range(trials):
        H = random_hypergraph(rng, int(rng.integers(2, 9)), int(rng.integers(1, 6)))
        for eps in (0.0, 0.1, 0.5, 1.0):
            rep = brute_cut_sandwich(H, build_sparsifier(H, eps), eps)
            if not rep.ok:
                return {"name": "sandwich", "ok": False, "detail": f"eps={eps} violation {rep.violation}"}
            worst = max(worst, rep.max_ratio / (1 + eps))
    return {"name": "sandwich", "ok": True, "detail": f"max ratio / (1+eps) = {worst:.6f}"}


def check_cover_optimality(rng, trials: int) -> dict:
    for _ in range(trials):
        w = scb_from_values(random_scb_values(rng, int(rng.integers(1, 21))))
        for eps in (0.0, 0.05, 0.2, 1.0):
            got, want = find_best_cover(w, eps).pieces, min_cover_size_dp(w, eps)
            if got != want:
                return {"name": "cover_optimality", "ok": False, "detail": f"w={w.w} eps={eps}: {got} vs {want}"}
    return {"name": "cover_optimality", "ok": True, "detail": ""}


def check_dsfm(rng, trials: int) -> dict:
    for _ in range(trials):
        inst = random_dsfm(rng, int(rng.integers(1, 9)), int(rng.integers(1, 6)))
        _, opt = brute_min_f(inst)
        for eps in (0.0, 0.1, 1.0):
            val = sparse_card(inst, eps).value
            if val > (1 + eps) * opt * (1 + 1e-9) + 1e-12:
                return {"name": "dsfm", "ok": False, "detail": f"eps={eps}: {val} vs optimum {opt}"}
    return {"name": "dsfm", "ok": True, "detail": ""}


def check_gadgets(rng, trials: int) -> dict:
    for _ in range(trials):
        k = int(rng.integers(2, 7))
        J = int(rng.integers(1, 4))
        members = list(range(k))
        b = np.sort(rng.uniform(0.1, k - 0.1, size=J))
        cb = CCBParams(tuple(rng.uniform(0.1, 2.0, size=J)), tuple(b))
        acb = KCGParams(float(rng.uniform(0, 1)), float(rng.uniform(0, 1)), tuple(rng.uniform(0.1, 2.0, size=J)), tuple(b))
        for i in range(k + 1):
            S = members[:i]
            if not _close(brute_aux_mincut(expand_ccb(members, cb), S, members), augmented_cut_cb(cb, k, i)):
                return {"name": "gadgets", "ok": False, "detail": f"CB {cb} k={k} i={i}"}
            if not _close(brute_aux_mincut(expand_kcg(members, acb), S, members), augmented_cut_acb(acb, k, i)):
                return {"name": "gadgets", "ok": False, "detail": f"ACB {acb} k={k} i={i}"}
    return {"name": "gadgets", "ok": True, "detail": ""}


def run_suite(seed: int = 42, trials: int = 10) -> list[dict]:
    rng = np.random.default_rng(seed)
    out = []
    for check in (check_sandwich, check_cover_optimality, check_dsfm, check_gadgets):
        try:
            out.append(check(rng, trials))
        except Exception as exc:  # a crash is a failed check, not a crashed command
            out.append({"name": check.__name__.removeprefix("check_"), "ok": False, "detail": repr(exc)})
    return out
