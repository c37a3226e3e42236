"""A fixed table of quick checks, run by ``milnorhomfly selftest``."""

from __future__ import annotations

import random

from .diagram import braid_closure, connected_sum, trace_closure, unknot
from .homfly import BudgetExceeded, SkeinMemo, homflypt, homflypt_braid, lowest_coeff_identity_check
from .laurent import Laurent1, Laurent2, deriv_at_one, log_deriv_at_one
from .milnor import mu
from .models import build_V, model_K_mn, model_L_n
from .theorem import closed_form_correction, delta_correction, rhs_main, rhs_main2, verify_batch
from .words import StringLinkWord, parse_word


def _skein_sample(budget, count=20, seed=11):
    rng = random.Random(seed)
    memo = SkeinMemo()
    for _ in range(count):
        n = rng.randint(2, 4)
        gens = [rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(rng.randint(3, 10))]
        D = braid_closure(gens, n)
        k = rng.randrange(D.n_crossings)
        plus, minus, zero = D.with_sign(k, 1), D.with_sign(k, -1), D.smooth(k)
        P = lambda E: homflypt(E, budget=budget, memo=memo)
        lhs = P(plus).shift(1, -1, 0) - P(minus).shift(1, 1, 0)
        if lhs != P(zero).shift(1, 0, 1):
            return False
    return True


def _kmn(budget):
    for m in range(-1, 3):
        for n in range(-1, 3):
            p = homflypt(model_K_mn(m, n), budget=budget).z_coefficient(0)
            want = Laurent1({2 * m: 1}) + Laurent1({2 * n: 1}) - Laurent1({2 * m + 2 * n: 1})
            if p != want or deriv_at_one(p, 3) != -24 * m * n * (m + n - 1):
                return False
    return True


def _batch(budget):
    s = verify_batch(20, 5, 10, budget=budget)
    if s.skipped:
        raise BudgetExceeded(budget)
    return s.congruent == 20


def _rows(budget):
    hopf = Laurent2({(1, -1): 1, (3, -1): -1, (1, 1): 1})
    trefoil = Laurent1({2: 2, 4: -1})
    yield "unknot has P = 1", lambda: homflypt(unknot(), budget=budget) == Laurent2.constant(1)
    yield "positive Hopf link", lambda: homflypt(braid_closure([1, 1], 2), budget=budget) == hopf
    yield "skein relation on 20 random closures", lambda: _skein_sample(budget)
    yield "braid and diagram engines agree", lambda: all(
        homflypt(braid_closure(g, n), budget=budget) == homflypt_braid(g, n, budget=budget)
        for g, n in [([1, -2, 1, -2], 3), ([1, 2, 3, -1, 2], 4), ([1, 1, 1, 1, 1], 2)]
    )
    yield "lowest coefficient on L(n), |n| <= 3", lambda: all(
        lowest_coeff_identity_check(model_L_n(n), budget=budget) for n in range(-3, 4)
    )
    yield "P_0 of K(m, n) closed form", lambda: _kmn(budget)
    yield "P_0 multiplicative under connected sum", lambda: homflypt(
        connected_sum(model_K_mn(1, 1), model_K_mn(1, 1)), budget=budget
    ).z_coefficient(0) == trefoil * trefoil
    yield "log derivative equals derivative, l = 3", lambda: log_deriv_at_one(trefoil, 3) == deriv_at_one(trefoil, 3)
    yield "mu(A12, 12) = 1", lambda: mu(parse_word("A12", 2), "12") == 1
    yield "mu(V_1324, 1324) = 1", lambda: mu(build_V("1324"), "1324") == 1
    yield "correction from model knots at a = b = 1", lambda: delta_correction(
        [("13", "24", 1, 1)], 1, budget=budget
    ) == closed_form_correction(1, 1)
    yield "four-component formula exact on V_1234", lambda: (
        lambda r: r.delta == 0 and r.rhs == r.mu == 1
    )(rhs_main2(build_V("1234"), budget=budget))
    yield "four-component formula on 20 random links", lambda: _batch(budget)
    yield "general formula exact on V_123456 (k = 2)", lambda: (
        lambda r: r.delta == 0 and r.rhs == r.mu == 1
    )(rhs_main(build_V("123456"), "123456", 2, budget=budget))


def run_selftest(budget=None) -> list:
    """Run every row; each result is ``{"name", "status", "detail"}``."""
    out = []
    for name, check in _rows(budget):
        try:
            ok = bool(check())
            status, detail = ("pass" if ok else "fail"), ""
        except BudgetExceeded as exc:
            status, detail = "budget", str(exc)
        except Exception as exc:
            status, detail = "error", f"{type(exc).__name__}: {exc}"
        out.append({"name": name, "status": status, "detail": detail})
    return out
