"""Acceptance gate: the eight primary criteria at their stated tolerances.

Every criterion is exact (zero mismatches).  Each test records one PASS/FAIL
line, shown in the pytest terminal summary; running this file directly
prints the same lines.
"""

import io
import itertools
import json
import random
from fractions import Fraction
from pathlib import Path

from acceptance_log import record
from helpers import cancels, random_monoids, reduced
from unring import (
    DualRing,
    FiniteMonoid,
    Integers,
    LinearEquation,
    Naturals,
    OrientedRatio,
    PolynomialRing,
    Rationals,
    Ratio,
    RationalFunction,
    ZeroRing,
    ZMod,
    check_solution,
    collapse_detect,
    derivative,
    dual_inv,
    extend,
    frac_eq,
    frac_inv,
    grothendieck,
    injectivity_oracle,
    is_cancellative,
    localize,
    monodromy,
    oriented_lift,
    poly_eval,
    ratfunc_eq_as_fractions,
    ratfunc_eq_as_functions,
    seventeenth_century_quotient,
    solve,
)
from unring.cli import main
from unring.polyfrac import FunctionVerdict
from unring.universal import Grothendieck, InvertedSet, Localized

SEED = 20261015


# -- 1. Key Lemma ------------------------------------------------------------------


def test_criterion_1_key_lemma():
    monoids = random_monoids(220, seed=SEED)
    builtin = [
        FiniteMonoid.boolean_or(),
        *(FiniteMonoid.min_chain(k) for k in range(1, 5)),
        *(ZMod(n) for n in range(2, 9)),
        ZeroRing(),
    ]
    mismatches, checked = 0, 0
    for M in monoids:
        for r in range(1, M.size + 1):
            for D in itertools.combinations(range(M.size), r):
                res = injectivity_oracle(M, [M.wrap(d) for d in D])
                checked += 1
                mismatches += res.injective != all(cancels(M.table, d) for d in D)
    for ctx in builtin:
        ops = ("add", "mul") if isinstance(ctx, ZMod) else ("add",)
        elements = ctx.elements()
        for op in ops:
            subsets = [[e] for e in elements] + [elements]
            for D in subsets:
                res = injectivity_oracle(ctx, D, op)
                verdict = all(is_cancellative(ctx, d, op).cancellative for d in D)
                checked += 1
                mismatches += res.injective != verdict
    ok = mismatches == 0 and len(monoids) >= 200
    record(1, "Key Lemma: oracle injective iff D cancellative", ok,
           f"{len(monoids)} random monoids, {checked} cases, {mismatches} mismatches")
    assert ok


# -- 2. Collapse ---------------------------------------------------------------------


def test_criterion_2_collapse():
    Z = Integers()
    checks = {
        "localize(Z,{0}) is the zero ring": isinstance(localize(Z, [Z(0)]), ZeroRing),
        "Gr(B or) trivial": grothendieck(FiniteMonoid.boolean_or()).is_trivial(),
    }
    for k in range(1, 7):
        checks[f"Gr(min-chain {k}) trivial"] = grothendieck(FiniteMonoid.min_chain(k)).is_trivial()
    D = DualRing(Rationals())
    checks["collapse_detect(Q[dt],{dt})"] = collapse_detect(D, [D.dt]).collapsed_to_zero
    failed = [name for name, ok in checks.items() if not ok]
    record(2, "Collapse to the zero ring / one-element group", not failed,
           f"{len(checks)} checks" + (f", failed: {failed}" if failed else ""))
    assert not failed


# -- 3. Fractions ------------------------------------------------------------------


def test_criterion_3_fraction_oracle():
    Z = Integers()
    F = localize(Z, InvertedSet.nonzero(Z))
    rng = random.Random(SEED)
    mismatches = 0
    ops = 0

    def rand_frac():
        n, d = rng.randint(-60, 60), rng.choice([k for k in range(-60, 61) if k != 0])
        return F((n, d)), (n, d)

    while ops < 12000:
        (x, xp), (y, yp) = rand_frac(), rand_frac()
        kind = ops % 3
        if kind == 0:
            got, want = x + y, reduced(xp[0] * yp[1] + yp[0] * xp[1], xp[1] * yp[1])
        elif kind == 1:
            got, want = x * y, reduced(xp[0] * yp[0], xp[1] * yp[1])
        else:
            if xp[0] == 0:
                continue
            got, want = frac_inv(x), reduced(xp[1], xp[0])
        value = F.as_rational(got.payload)
        ok = (value.numerator, value.denominator) == want and frac_eq(got, F(want))
        mismatches += not ok
        ops += 1
    pinned = frac_eq(F((1, 2)), F((2, 4))) and str(F((2, 3)) * F((4, 5))) == "8/15"
    ok = mismatches == 0 and pinned
    record(3, "Fraction oracle over Frac(Z)", ok, f"{ops} ops, {mismatches} mismatches, pinned={pinned}")
    assert ok


# -- 4. Dual calculus ----------------------------------------------------------------


def test_criterion_4_dual_calculus():
    Q = Rationals()
    QX = PolynomialRing(Q)
    QD = DualRing(Q)
    rng = random.Random(SEED)

    def rand_q():
        return Fraction(rng.randint(-12, 12), rng.randint(1, 6))

    def rand_poly():
        return QX.from_coeffs([rand_q() for _ in range(rng.randint(1, 7))])

    failures = 0
    for _ in range(1000):
        p, q = rand_poly(), rand_poly()
        x, y, c = Q(rand_q()), Q(rand_q()), Q(rand_q())
        dp, dq = derivative(p, x), derivative(q, x)
        failures += derivative(p * q, x) != dp * poly_eval(q, x) + poly_eval(p, x) * dq
        failures += derivative(p + QX.image(c) * q, x) != dp + c * dq
        e = extend(p, x, y)
        failures += e.eps != y * dp or e.re != poly_eval(p, x)
        failures += seventeenth_century_quotient(p, x) != dp
    for _ in range(1000):
        a = rand_q() or Fraction(1)
        u = QD((a, rand_q()))
        failures += dual_inv(u) * u != QD.one
    record(4, "Dual calculus: Leibniz, linearity, extend, inverse, dt-quotient", failures == 0,
           f"1000 polynomial pairs, 1000 inverses, {failures} failures")
    assert failures == 0


# -- 5. Solver -----------------------------------------------------------------------


def _rank(ctx):
    """Position on the widening ladder N < Z < localization < zero ring."""
    if isinstance(ctx, ZeroRing):
        return 3
    if isinstance(ctx, Localized):
        return 2
    if isinstance(ctx, (Grothendieck, Integers)):
        return 1
    return 0


def test_criterion_5_solver_round_trip():
    N, Z = Naturals(), Integers()
    rng = random.Random(SEED)
    failures = 0
    for k in range(10000):
        ctx = N if k % 2 else Z
        lo = 0 if ctx is N else -200
        a = 0
        while a == 0:
            a = rng.randint(lo, 200)
        eq = LinearEquation.over(ctx, a, rng.randint(lo, 200), rng.randint(lo, 200))
        value, trace = solve(eq)
        ranks = [_rank(c) for c in trace.contexts]
        failures += not check_solution(eq, value, trace)
        failures += ranks != sorted(ranks)
    value, trace = solve(LinearEquation.over(N, 9, 0, 50))
    rice = str(value) == "50/9" and trace.steps[-1].resulting_ctx.name == "N[1/9]"
    ok = failures == 0 and rice
    record(5, "Solver round-trip and monotone widening", ok,
           f"10000 equations, {failures} failures, rice={'50/9 in N[1/9]' if rice else 'wrong'}")
    assert ok


# -- 6. Polynomial fractions vs functions ----------------------------------------------


def test_criterion_6_fraction_vs_function():
    Q = Rationals()
    QX = PolynomialRing(Q)
    x = QX.x
    f = RationalFunction(4 - x ** 2, 2 - x)
    g = RationalFunction(2 + x, QX.one)
    res = ratfunc_eq_as_functions(f, g, [0, 1, 2, 3])
    pinned = (ratfunc_eq_as_fractions(f, g) and res.verdict is FunctionVerdict.DOMAIN_MISMATCH
              and res.witness == Q(2))
    rng = random.Random(SEED)

    def rand_poly(max_deg):
        while True:
            p = QX.from_coeffs([rng.randint(-4, 4) for _ in range(rng.randint(1, max_deg + 1))])
            if p.degree is not None:
                return p

    violations = fraction_equal = 0
    sample = range(-4, 5)
    for k in range(2000):
        num, den = rand_poly(3), rand_poly(2)
        if k % 2:
            r = rand_poly(2)
            other = RationalFunction(num * r, den * r)
        else:
            other = RationalFunction(rand_poly(3), rand_poly(2))
        first = RationalFunction(num, den)
        if ratfunc_eq_as_fractions(first, other):
            fraction_equal += 1
            violations += ratfunc_eq_as_functions(first, other, sample).verdict is FunctionVerdict.UNEQUAL
    ok = pinned and violations == 0 and fraction_equal >= 1000
    record(6, "Fraction equality vs function equality", ok,
           f"pinned={pinned}, {fraction_equal} fraction-equal pairs, {violations} violations")
    assert ok


# -- 7. Monodromy ------------------------------------------------------------------------

HALF_TURN = [(1, 0), (2, 1), (1, 1), (1, 2), (0, 1), (-1, 2), (-1, 1), (-2, 1), (1, 0)]


def test_criterion_7_monodromy():
    loop = [Ratio(a, b) for a, b in HALF_TURN]
    twist = monodromy(loop)
    lifted = monodromy(oriented_lift(loop, 2))
    rng = random.Random(SEED)
    unstable = 0
    for _ in range(150):
        pts = [HALF_TURN[0]]
        for (a, b), (c, d) in zip(HALF_TURN, HALF_TURN[1:]):
            # interpolate between same-side representatives so no step is perpendicular
            sign = 1 if a * c + b * d > 0 else -1
            c, d = sign * c, sign * d
            for _ in range(rng.randint(0, 3)):
                s, t = rng.randint(1, 6), rng.randint(1, 6)
                pts.append((s * a + t * c, s * b + t * d))
            pts.append((c, d))
        scaled = [(a * k, b * k) for (a, b) in pts
                  for k in [Fraction(rng.choice([-1, 1]) * rng.randint(1, 9), rng.randint(1, 4))]]
        refined = [Ratio(a, b) for a, b in scaled]
        unstable += monodromy(refined) != -1
        unstable += monodromy(oriented_lift(refined, 2)) != 1
    ok = twist == -1 and lifted == 1 and unstable == 0
    record(7, "Monodromy: half-turn -1, oriented double +1, stable", ok,
           f"twist={twist:+d}, lift={lifted:+d}, 150 refinements, {unstable} unstable")
    assert ok
    assert isinstance(oriented_lift(loop, 2)[0], OrientedRatio)


# -- 8. CLI ----------------------------------------------------------------------------


def _cli(argv):
    out, err = io.StringIO(), io.StringIO()
    return main(list(argv), stdout=out, stderr=err), out.getvalue()


def test_criterion_8_cli_goldens():
    golden = Path(__file__).parent / "golden"
    cases = json.loads((golden / "cases.json").read_text())
    bad = [name for name, argv in cases.items()
           if _cli(argv) != (0, (golden / f"{name}.out").read_text(encoding="utf-8"))]
    exit_table = {
        ("--ring", "rat", "1/3"): 0,
        ("--ring", "int", "5/0"): 0,
        ("--ring", "int", "2//3"): 2,
        ("--ring", "int", "dt"): 3,
        ("--ring", "nope", "1"): 3,
        ("--ring", "int", "--strict", "1/0"): 4,
    }
    wrong_codes = [argv for argv, code in exit_table.items() if _cli(argv)[0] != code]
    schema_ok = True
    for argv in cases.values():
        data = json.loads(_cli(["--json", *argv])[1])
        schema_ok &= list(data) == ["value", "context_log", "warnings"]
        schema_ok &= isinstance(data["value"], str)
        schema_ok &= all(isinstance(s, str) for s in data["context_log"] + data["warnings"])
    ok = not bad and not wrong_codes and schema_ok and len(cases) == 5
    record(8, "CLI goldens, exit codes, JSON schema", ok,
           f"{len(cases) - len(bad)}/{len(cases)} goldens, {len(exit_table) - len(wrong_codes)}/"
           f"{len(exit_table)} exit codes, schema={'ok' if schema_ok else 'bad'}")
    assert ok


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                pass
