"""Named checks that together make up the default verification suite.

Each check is a plain function of ``(order, budget)`` returning a JSON-ready
dict with at least ``name`` and ``status``.  Checks are addressed by name so
that they can be shipped to worker processes.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

from . import congruence as C
from . import dissect as D

DEFAULT_ORDER = 500


def default_order() -> int:
    """``QDISSECT_ORDER`` if set, otherwise 500."""
    raw = os.environ.get("QDISSECT_ORDER", "").strip()
    if not raw:
        return DEFAULT_ORDER
    n = int(raw)
    if n < 1:
        raise ValueError(f"QDISSECT_ORDER must be >= 1, got {n}")
    return n


def _status(ok: bool) -> str:
    return "verified" if ok else "failed"


def _identity(name):
    def run(order, budget):
        return D.verify_identity(D.identity(name), order).to_dict()
    return run


def _poly(p):
    def run(order, budget):
        by_expansion = D.verify_poly_reduction(p)
        by_substitution = D.verify_poly_by_substitution(p)
        return {"name": p.name, "status": _status(by_expansion and by_substitution),
                "modulus": p.modulus, "reduction": p.text,
                "expansion": by_expansion, "substitution": by_substitution}
    return run


def _report(fn):
    def run(order, budget):
        return fn(budget).to_dict()
    return run


def _claim_t1(k):
    def run(order, budget):
        m = C.match_claim_T1(k, budget=budget)
        out = {"name": f"claim T1 k={k}", "status": _status(m is not None),
               "match": None if m is None else m.to_dict()}
        if k == 1:
            display = C.t1_k1_display(C.DEFAULT_CLAIM_ORDER)
            out["display"] = display
            if not all(display.values()):
                out["status"] = "failed"
        return out
    return run


def _claim_t2(k):
    def run(order, budget):
        m = C.match_claim_T2(k, budget=budget)
        return {"name": f"claim T2 k={k}", "status": _status(m is not None),
                "match": None if m is None else m.to_dict()}
    return run


def _registry() -> dict[str, Callable[[int, int], dict]]:
    reg: dict[str, Callable] = {}
    for r in D.catalog():
        reg[f"identity:{r.name}"] = _identity(r.name)
    for p in D.poly_catalog():
        reg[f"poly:{p.name}"] = _poly(p)
    reg["theorem:1.1"] = _report(lambda b: C.check_theorem_1_1(2, b))
    reg["theorem:1.2"] = _report(lambda b: C.check_theorem_1_2(b))
    reg["remark"] = _report(lambda b: C.check_closing_remark(100, b))
    reg["decomposition"] = _report(lambda b: C.t1_t2_decomposition())
    for k in (1, 2):
        reg[f"claim:T1:{k}"] = _claim_t1(k)
    for k in (0, 1):
        reg[f"claim:T2:{k}"] = _claim_t2(k)
    reg["qr"] = _report(lambda b: C.qr_report())
    return reg


CHECKS = _registry()

GROUPS = {
    "identities": [n for n in CHECKS if n.startswith("identity:")],
    "polys": [n for n in CHECKS if n.startswith("poly:")],
    "1.1": ["theorem:1.1"],
    "1.2": ["theorem:1.2"],
    "remark": ["remark"],
    "all": list(CHECKS),
}


def run_check(name: str, order: int, budget: int = C.DEFAULT_BUDGET) -> dict:
    """Run one named check, turning exceptions into a ``failed`` entry."""
    t0 = time.perf_counter()
    try:
        out = CHECKS[name](order, budget)
    except KeyError:
        raise
    except (C.BudgetExceeded, ArithmeticError, ValueError) as exc:
        out = {"status": "failed", "error": f"{type(exc).__name__}: {exc}"}
    out = {"check": name, **out}
    out["seconds"] = round(time.perf_counter() - t0, 3)
    return out


def run_checks(names, order: int, budget: int = C.DEFAULT_BUDGET, jobs: int = 1) -> list[dict]:
    """Results in the order of ``names`` whatever ``jobs`` is."""
    names = list(names)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks: {unknown}")
    if jobs <= 1 or len(names) <= 1:
        return [run_check(n, order, budget) for n in names]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(run_check, n, order, budget) for n in names]
        return [f.result() for f in futures]
