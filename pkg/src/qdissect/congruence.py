"""Instance checks of the R6* congruences and of the intermediate claims of
their proofs.

Coefficients come from the combinatorial oracle; before any verdict the
same range is recomputed from ``f2 f6 / f1^2`` modulo the claim's modulus
and the two must agree.  A claim that survives every tested instance is
reported as verified *to that range* and nothing more.
"""

from __future__ import annotations

import threading
from dataclasses import asdict, dataclass, field

import numpy as np

from . import eta as E
from . import oracle
from . import series as S

DEFAULT_BUDGET = 10_000
DEFAULT_CLAIM_ORDER = 60
DECOMPOSITION_ORDER = 400


class BudgetExceeded(ValueError):
    """The requested argument range needs a longer expansion than allowed."""


@dataclass(frozen=True)
class CongruenceFamily:
    a: int
    b: int
    modulus: int
    description: str = ""

    def __str__(self):
        return f"R6*({self.a}n+{self.b}) == 0 (mod {self.modulus})"


@dataclass(frozen=True)
class IndexedFamily:
    """Member ``k`` of the mod-128 family ``R6*(a(k) n + b(k))``."""

    k: int

    @property
    def a(self) -> int:
        return 18 * 3 ** (2 * self.k + 1)

    @property
    def b(self) -> int:
        num = 153 * 3 ** (2 * self.k) - 1
        if num % 4:
            raise ArithmeticError(f"153*3^{2 * self.k} - 1 is not divisible by 4")
        return num // 4

    def family(self) -> CongruenceFamily:
        return CongruenceFamily(self.a, self.b, 128, f"k={self.k}")


@dataclass
class Report:
    claim: str
    modulus: int | None
    instances_checked: int
    status: str  # "verified" | "failed" | "inconclusive"
    counterexamples: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "verified"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["counterexamples"] = [
            {k: str(v) if isinstance(v, int) and abs(v) > 2**53 else v
             for k, v in c.items()} if isinstance(c, dict) else c
            for c in self.counterexamples
        ]
        return d


def _status(instances: int, counterexamples) -> str:
    if counterexamples:
        return "failed"
    return "verified" if instances else "inconclusive"


# ---------------------------------------------------------------------------
# coefficient source

_xcheck: set[tuple[int, int]] = set()
_xlock = threading.Lock()


class SourceMismatch(AssertionError):
    pass


def r6_counts(top: int, modulus: int) -> tuple[int, ...]:
    """Exact ``R6*(0..top)`` from the oracle, after confirming they agree with
    the eta-quotient expansion mod ``modulus``."""
    counts = oracle.count_restricted(6, top).counts
    with _xlock:
        done = any(m == modulus and n >= top for n, m in _xcheck)
    if not done:
        gf = E.overpartition_gf(6, S.mod(modulus), top)
        ref = S.make(counts, S.mod(modulus))
        i = S.first_difference(gf, ref, modulus, top)
        if i is not None:
            raise SourceMismatch(
                f"oracle and eta expansion disagree at q^{i} mod {modulus}"
            )
        with _xlock:
            _xcheck.add((top, modulus))
    return counts


def check_family(
    f: CongruenceFamily, nmax: int, budget: int = DEFAULT_BUDGET
) -> Report:
    """Test ``R6*(a n + b) == 0 (mod m)`` for ``n = 0..nmax``."""
    top = f.a * nmax + f.b
    if top > budget:
        raise BudgetExceeded(f"argument {top} exceeds expansion budget {budget}")
    if nmax < 0:
        return Report(str(f), f.modulus, 0, "inconclusive")
    counts = r6_counts(top, f.modulus)
    bad = [
        {"n": n, "argument": f.a * n + f.b, "value": counts[f.a * n + f.b],
         "residue": counts[f.a * n + f.b] % f.modulus}
        for n in range(nmax + 1)
        if counts[f.a * n + f.b] % f.modulus
    ]
    return Report(
        str(f), f.modulus, nmax + 1, _status(nmax + 1, bad), bad,
        {"nmax": nmax, "largest_argument": top},
    )


def check_theorem_1_1(kmax: int = 2, budget: int = DEFAULT_BUDGET) -> Report:
    """Every ``k <= kmax`` member of the mod-128 family, all ``n`` whose
    argument stays within ``budget``."""
    if kmax < 0:
        raise ValueError("kmax must be >= 0")
    per_k = []
    bad = []
    total = 0
    for k in range(kmax + 1):
        fam = IndexedFamily(k)
        if fam.b % 9 != 2:
            raise ArithmeticError(f"b({k}) = {fam.b} is not 2 mod 9")
        nmax = (budget - fam.b) // fam.a
        if nmax < 0:
            per_k.append({"k": k, "a": fam.a, "b": fam.b, "instances": 0})
            continue
        rep = check_family(fam.family(), nmax, budget)
        total += rep.instances_checked
        per_k.append({"k": k, "a": fam.a, "b": fam.b,
                      "instances": rep.instances_checked, "status": rep.status})
        bad += [dict(c, k=k) for c in rep.counterexamples]
    return Report(
        "R6*(18*3^(2k+1) n + (153*3^(2k)-1)/4) == 0 (mod 128)",
        128, total, _status(total, bad), bad, {"per_k": per_k, "budget": budget},
    )


THEOREM_1_2 = (CongruenceFamily(27, 11, 64), CongruenceFamily(81, 47, 24))
CLOSING_REMARK = CongruenceFamily(81, 74, 24)


def check_theorem_1_2(budget: int = DEFAULT_BUDGET, nmax=None) -> Report:
    reps = []
    for i, f in enumerate(THEOREM_1_2):
        top_n = (budget - f.b) // f.a if nmax is None else nmax[i]
        reps.append(check_family(f, top_n, budget))
    total = sum(r.instances_checked for r in reps)
    bad = [dict(c, claim=r.claim) for r in reps for c in r.counterexamples]
    return Report(
        "; ".join(r.claim for r in reps), None, total, _status(total, bad), bad,
        {"parts": [r.to_dict() for r in reps]},
    )


def check_closing_remark(nmax: int = 100, budget: int = DEFAULT_BUDGET) -> Report:
    return check_family(CLOSING_REMARK, nmax, budget)


# ---------------------------------------------------------------------------
# series pieces of the mod-128 argument

R128 = S.mod(128)


def _eq(n: int, ring=R128, **exps) -> S.Series:
    return E.expand_eta_quotient(E.eta(**exps), ring, n)


def t1_series(n: int) -> S.Series:
    """``sum T1(9n+2) q^n = 4 f2^3 f3^26 / f6^13`` mod 128."""
    return S.scale(_eq(n, f2=3, f3=26, f6=-13), 4)


def t2_series(n: int) -> S.Series:
    """``sum T2(9n+2) q^n = 64 q f1^3 f3^17 / f6^4`` mod 128."""
    return S.shift(S.scale(_eq(n, f1=3, f3=17, f6=-4), 64), 1)


def _sub(name: str, lhs: S.Series, rhs: S.Series, m: int | None, n: int) -> dict:
    i = S.first_difference(lhs, rhs, m, n)
    out = {"check": name, "order": n, "passed": i is None}
    if i is not None:
        out.update(exponent=i, lhs=str(lhs[i]), rhs=str(rhs[i]))
    return out


def t1_t2_decomposition(n: int = DECOMPOSITION_ORDER) -> Report:
    """R6*(9n+2) splits mod 128 into the T1 and T2 series to order ``n``."""
    checks = []
    # the 3n+2 extraction holds exactly
    gf_exact = E.overpartition_gf(6, S.EXACT, 3 * n + 2)
    lhs12 = S.extract_ap(gf_exact, 2, 3)
    rhs12 = S.scale(_eq(n, S.EXACT, f2=3, f6=3, f1=-6), 4)
    checks.append(_sub("3n+2 extraction (exact)", lhs12, rhs12, None, n))

    gf = E.overpartition_gf(6, R128, 9 * n + 2)
    lhs = S.extract_ap(S.extract_ap(gf, 2, 3), 0, 3)
    rhs = S.add(t1_series(n), t2_series(n))
    checks.append(_sub("9n+2 = T1 + T2 (mod 128)", lhs, rhs, 128, n))

    t2_reduced = S.shift(S.scale(_eq(n, f1=3, f3=9), 64), 1)
    checks.append(_sub("T2 reduced form (mod 128)", t2_series(n), t2_reduced, 128, n))
    bad = [c for c in checks if not c["passed"]]
    return Report(
        "R6*(9n+2) == T1 + T2 (mod 128)", 128, len(checks),
        _status(len(checks), bad), bad, {"checks": checks},
    )


@dataclass(frozen=True)
class ClaimMatch:
    claim: str
    k: int
    verified_order: int
    sign: int | None = None
    a: int | None = None
    lam: int | None = None
    branch: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def _need(order: int, budget: int) -> None:
    if order > budget:
        raise BudgetExceeded(f"needs series order {order}, budget is {budget}")


def t1_progression(k: int, n: int, budget: int = DEFAULT_BUDGET) -> S.Series:
    """``sum T1(3^(2k+2) n + (3^(2k+2)-1)/4) q^n`` mod 128, order ``n``."""
    step = 3 ** (2 * k)
    r = (step - 1) // 4
    _need(step * n + r, budget)
    return S.extract_ap(t1_series(step * n + r), r, step)


def t1_template(n: int, sign: int, a: int, q_coeff: int = 32, base: int = 12) -> S.Series:
    """``sign*32 q f1^3 f3^9 - (16a+12) f1^8 f3^18 / (f2 f6^9)`` mod 128."""
    first = S.shift(S.scale(_eq(n, f1=3, f3=9), sign * q_coeff), 1)
    second = S.scale(_eq(n, f1=8, f3=18, f2=-1, f6=-9), 16 * a + base)
    return S.sub(first, second)


def match_claim_T1(
    k: int,
    n: int = DEFAULT_CLAIM_ORDER,
    budget: int = DEFAULT_BUDGET,
    q_coeff: int = 32,
    base: int = 12,
) -> ClaimMatch | None:
    """Find the unique ``(sign, a mod 8)`` making the T1 claim hold at ``k``.

    ``q_coeff`` and ``base`` exist so tests can corrupt the template.
    """
    if k < 1:
        raise ValueError("the T1 claim starts at k = 1")
    target = t1_progression(k, n, budget)
    hits = [
        (sign, a)
        for sign in (1, -1)
        for a in range(8)
        if S.congruent_upto(target, t1_template(n, sign, a, q_coeff, base), 128, n)
    ]
    if len(hits) != 1:
        return None
    sign, a = hits[0]
    branch = None
    if k >= 2:
        prev = match_claim_T1(k - 1, n, budget, q_coeff, base)
        if prev is not None and sign == -prev.sign:
            # one induction step: old sign - gives 5a+1, old sign + gives 5a+5
            step = 1 if prev.sign < 0 else 5
            if a == (5 * prev.a + step) % 8:
                branch = f"5a+{step}"
    return ClaimMatch("T1", k, n, sign=sign, a=a, branch=branch)


def t1_k1_display(n: int) -> dict:
    """The k = 1 closed forms printed in the base case, both congruent mod 128
    to the extracted series and to the claim template with sign -, a = 0."""
    target = t1_progression(1, n)
    first = S.sub(
        S.shift(S.scale(_eq(n, f2=12, f3=9, f1=-21), -32), 1),
        S.scale(_eq(n, f2=15, f3=18, f1=-24, f6=-9), 12),
    )
    second = S.sub(
        S.shift(S.scale(_eq(n, f1=3, f3=9), -32), 1),
        S.scale(_eq(n, f2=15, f3=18, f1=-24, f6=-9), 12),
    )
    return {
        "unreduced display": S.congruent_upto(target, first, 128, n),
        "reduced display": S.congruent_upto(target, second, 128, n),
        "template (-, a=0)": S.congruent_upto(second, t1_template(n, -1, 0), 128, n),
    }


def t1_branch(k: int, n: int, budget: int = DEFAULT_BUDGET) -> S.Series:
    """``sum T1(3^(2k+3) n + (5*3^(2k+2)-1)/4) q^n`` mod 128 (the 3n+1
    branch out of level ``k``)."""
    step = 3 ** (2 * k + 1)
    r = (5 * 3 ** (2 * k) - 1) // 4
    _need(step * n + r, budget)
    return S.extract_ap(t1_series(step * n + r), r, step)


def t1_branch_check(k: int, sign: int, n: int, budget: int = DEFAULT_BUDGET) -> dict:
    """The 3n+1 branch is 0 (sign +) or -64 f2^5 (sign -) mod 128, so its
    odd-index coefficients vanish."""
    s = t1_branch(k, n, budget)
    expected = S.zeros(R128, n) if sign > 0 else S.scale(_eq(n, f2=5), -64)
    return {
        "closed form": S.congruent_upto(s, expected, 128, n),
        "odd coefficients vanish": all(s[i] == 0 for i in range(1, n + 1, 2)),
    }


def t2_progression(k: int, n: int, budget: int = DEFAULT_BUDGET) -> S.Series:
    """``sum T2(2*3^(2k+2) n + (3^(2k+2)-1)/4) q^n`` mod 128 by the proof's
    extractions: even exponents once, then 3n+1 and 3n per level."""
    top = 2 * 3 ** (2 * k) * n + (3 ** (2 * k) - 1) // 4
    _need(top, budget)
    s = S.extract_ap(t2_series(top), 0, 2)
    for _ in range(k):
        s = S.extract_ap(S.extract_ap(s, 1, 3), 0, 3)
    return s.truncate(n)


def t2_template(n: int, lam: int, coeff: int = 64) -> S.Series:
    """``lam*64 f1^3 + 64 q f3^3 f6^3`` mod 128."""
    return S.add(
        S.scale(_eq(n, f1=3), lam * coeff),
        S.shift(S.scale(_eq(n, f3=3, f6=3), coeff), 1),
    )


def match_claim_T2(
    k: int, n: int = DEFAULT_CLAIM_ORDER, budget: int = DEFAULT_BUDGET, coeff: int = 64
) -> ClaimMatch | None:
    if k < 0:
        raise ValueError("k must be >= 0")
    target = t2_progression(k, n, budget)
    hits = [
        lam for lam in (0, 1)
        if S.congruent_upto(target, t2_template(n, lam, coeff), 128, n)
    ]
    if len(hits) != 1:
        return None
    return ClaimMatch("T2", k, n, lam=hits[0])


# ---------------------------------------------------------------------------
# quadratic residues and the matching Diophantine searches


def square_progression_empty(target: int, modulus: int, odd_only: bool = False) -> bool:
    """True iff no ``r`` (odd ``r`` if ``odd_only``) has ``r^2 == target``."""
    if modulus < 1:
        raise ValueError("modulus must be >= 1")
    rs = range(1, modulus, 2) if odd_only else range(modulus)
    return all((r * r - target) % modulus for r in rs)


def triangular_solutions(
    a: int, b: int, qstep: int = 0, bound: int = 10_000, limit: int = 1
) -> list[tuple[int, int, int]]:
    """Search ``m (m+1) + qstep*k = a n + b`` over ``0 <= m, k, n <= bound``
    and return up to ``limit`` witnesses ``(m, k, n)``."""
    if bound < 0:
        raise ValueError("bound must be >= 0")
    found = []
    ks = np.arange(bound + 1, dtype=np.int64) if qstep else np.zeros(1, dtype=np.int64)
    for m in range(bound + 1):
        val = m * (m + 1) + qstep * ks - b
        ok = (val >= 0) & (val % a == 0) & (val // a <= bound)
        for i in np.flatnonzero(ok)[: limit - len(found)]:
            found.append((m, int(ks[i]), int(val[i] // a)))
        if len(found) >= limit:
            break
    return found


def triangular_gap_check(a: int, b: int, qstep: int = 0, bound: int = 10_000) -> bool:
    return not triangular_solutions(a, b, qstep, bound)


# (a, b, qstep) of each vanishing argument with its square-class restatement
GAP_FACTS = (
    ((6, 4, 3), (5, 12)),   # m(m+1) + 3k = 6n + 4
    ((3, 1, 0), (5, 12)),   # m(m+1) = 3n + 1
    ((9, 5, 0), (21, 36)),  # m(m+1) = 9n + 5
)


def qr_report(bound: int = 10_000) -> Report:
    rows = []
    for (a, b, s), (t, m) in GAP_FACTS:
        rows.append({
            "form": f"m(m+1){f' + {s}k' if s else ''} = {a}n + {b}",
            "nonresidue": f"{t} mod {m} (odd squares)",
            "square_class_empty": square_progression_empty(t, m, True),
            "no_solution_below_bound": triangular_gap_check(a, b, s, bound),
        })
    bad = [r for r in rows if not (r["square_class_empty"] and r["no_solution_below_bound"])]
    return Report("square-class gaps", None, len(rows), _status(len(rows), bad), bad,
                  {"facts": rows, "bound": bound})

