"""Batch driver running every consistency check up to a given n."""
from __future__ import annotations

import random
from contextlib import ExitStack
from dataclasses import dataclass, field
from typing import Callable

from . import invariants as inv
from . import rewrite as rw
from . import sigma_exp as se
from .errors import DomainError
from .automorphism import is_invariant, make_affine_jordan, make_graded_jordan
from .poly import Polynomial, jacobian_independent
from .solver import linearly_independent, solve_filtered, solve_graded

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass(frozen=True)
class CheckResult:
    name: str
    claim: str
    status: str
    detail: str = ""


@dataclass
class Report:
    n_max: int
    results: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status != FAIL for r in self.results)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.status == FAIL]

    def to_json(self) -> dict:
        return {
            "n_max": self.n_max,
            "ok": self.ok,
            "counts": {s: sum(r.status == s for r in self.results) for s in (PASS, FAIL, SKIP)},
            "checks": [{"name": r.name, "claim": r.claim, "status": r.status, "detail": r.detail}
                       for r in self.results],
        }

    def to_text(self) -> str:
        lines = [f"{r.status.upper():4}  {r.name}" + (f"  ({r.detail})" if r.detail else "")
                 for r in self.results]
        c = self.to_json()["counts"]
        lines.append(f"{c[PASS]} passed, {c[FAIL]} failed, {c[SKIP]} skipped")
        return "\n".join(lines)


@dataclass(frozen=True)
class Check:
    name: str
    claim: str
    first_n: int
    run: Callable[[int], str | None]  # returns None on success, else a failure detail


def _first_failure(cases, predicate) -> str | None:
    for case in cases:
        if not predicate(*case):
            return f"fails at {case}"
    return None


def _u_cases(n_max):
    return [(n, k) for n in range(2, n_max + 1) for k in range(1, n // 2 + 1)]


def _v_cases(n_max):
    return [(n, k) for n in range(3, n_max + 1) for k in range(1, (n - 1) // 2 + 1)]


def _round_trip(n_max: int, samples: int = 30) -> str | None:
    rng = random.Random(n_max)
    for trial in range(samples):
        n = 2 + trial % (n_max - 1)
        terms = {}
        for _ in range(rng.randint(1, 4)):
            e = [0] * n
            for _ in range(rng.randint(0, 3)):
                e[rng.randint(1, n - 1)] += 1
            terms[tuple(e)] = rng.randint(-9, 9)
        expr = Polynomial(n, terms)
        res = rw.rewrite_affine(rw.expand(expr, n), n)
        if res.expression != expr or res.residual_x1_degree != 0:
            return f"round trip breaks for n={n}: {expr}"
    return None


def _graded_parity(n_max: int) -> str | None:
    for n in range(2, min(4, n_max) + 1):
        m = make_graded_jordan(n + 1)
        for i in range(7):
            basis = rw.graded_basis(n, i)
            if len(basis) != solve_graded(m, i).dimension or not linearly_independent(basis):
                return f"n={n}, degree {i}"
    return None


def _localization(n_max: int) -> str | None:
    for n in range(2, min(4, n_max) + 1):
        for i in range(5):
            for f in solve_graded(make_graded_jordan(n + 1), i):
                if not rw.check_localization(f):
                    return f"n={n}, degree {i}: {f}"
    return None


def _quadratic_span(n_max: int) -> str | None:
    for n in range(2, min(8, n_max) + 1):
        expected = [Polynomial.one(n)] + [inv.u_generator(n, k) for k in range(1, n // 2 + 1)]
        basis = solve_filtered(make_affine_jordan(n), 2)
        if basis.dimension != n // 2 + 1 or not basis.spans_same(expected):
            return f"n={n}: kernel dimension {basis.dimension}"
    return None


def _linear_trivial(n_max: int) -> str | None:
    for n in range(2, min(8, n_max) + 1):
        if solve_filtered(make_affine_jordan(n), 1).dimension != 1:
            return f"n={n}"
    return None


def _cubic_membership(n_max: int) -> str | None:
    for n in range(5, min(7, n_max) + 1):
        basis = solve_filtered(make_affine_jordan(n), 3)
        for k in range(1, (n - 1) // 2 + 1):
            if not basis.contains(inv.v_generator(n, k)):
                return f"v{k} for n={n}"
    return None


def _w_checks(n_max: int) -> str | None:
    for n in range(5, n_max + 1):
        m = make_affine_jordan(n)
        for k in range(2, (n - 1) // 2 + 1):
            w = inv.w_generator(n, k)
            if w.degree != 5 or not is_invariant(m, w) or w.leading_form() != inv.w_leading_formula(n, k):
                return f"w{k} for n={n}"
    return None


def _recurrences(n_max: int) -> str | None:
    for k in range(2, max(2, n_max // 2) + 1):
        lam = inv.coeff_table("lambda", k)
        for c in range(0, min(5, k - 2) + 1):
            if not inv.recurrence_check(inv.u_recurrence(k), lam, c):
                return f"lambda, k={k}, c={c}"
        alpha = inv.coeff_table("alpha", k)
        for c in range(0, min(5, k - 1) + 1):
            if not inv.recurrence_check(inv.v_recurrence(k), alpha, c):
                return f"alpha, k={k}, c={c}"
    return None


def _independence(n_max: int) -> str | None:
    for n in range(2, min(n_max, 6) + 1):
        if not jacobian_independent(rw.generators(n)[1:]):
            return f"affine generators, n={n}"
        if not jacobian_independent(rw.graded_symbol_images(n)):
            return f"graded transcendence basis, n={n}"
    return None


CHECKS = [
    Check("u-invariance", "every quadratic generator u_k is fixed by the affine shift", 2,
          lambda N: _first_failure(_u_cases(N), lambda n, k: is_invariant(make_affine_jordan(n), inv.u_generator(n, k)))),
    Check("v-invariance", "every cubic generator v_k is fixed by the affine shift", 3,
          lambda N: _first_failure(_v_cases(N), lambda n, k: is_invariant(make_affine_jordan(n), inv.v_generator(n, k)))),
    Check("quadratic-kernel", "invariants of degree <= 2 are spanned by 1, u_1, ..., u_m", 2, _quadratic_span),
    Check("linear-kernel", "invariants of degree <= 1 are the constants", 2, _linear_trivial),
    Check("cubic-membership", "each v_k lies in the oracle kernel of degree <= 3", 5, _cubic_membership),
    Check("quadratic-system", "lambda/mu tables solve the linear invariance system for u_k", 2,
          lambda N: _first_failure([(k,) for k in range(1, max(1, N // 2) + 1)], inv.check_u_system)),
    Check("cubic-system", "alpha/beta tables solve the linear invariance system for v_k", 5,
          lambda N: _first_failure([(k,) for k in range(2, (N - 1) // 2 + 1)], inv.check_v_system)),
    Check("alpha-boundaries", "alpha on both boundary diagonals and its two closed forms agree", 5,
          lambda N: _first_failure([(k,) for k in range(2, (N - 1) // 2 + 1)],
                                   lambda k: inv.check_alpha_boundaries(k) and inv.check_alpha_forms(k))),
    Check("tables-nonzero", "every stored table coefficient is nonzero", 2,
          lambda N: _first_failure([(k,) for k in range(1, max(1, N // 2) + 1)], inv.tables_nonzero)),
    Check("top-coefficients", "u_k and v_k reach x_{2k}, x_{2k+1} linearly with the predicted coefficients", 2,
          lambda N: _first_failure([(n,) for n in range(2, N + 1)], inv.check_top_coefficients)),
    Check("shifted-rows", "coefficient tables obey the shifted-row binomial identities", 4, _recurrences),
    Check("nested-sums", "nested sums over c > c_1 > ... > c_k equal C(c, k)", 2,
          lambda N: _first_failure([(c, k) for c in range(N + 1) for k in range(c + 1)],
                                   lambda c, k: inv.multsum(c, k) == inv.binom(c, k))),
    Check("exponentials", "E E_- = 1, Lambda Lambda^{-1} = 1, difference and power laws", 2,
          lambda N: _first_failure([(s,) for s in range(1, N + 1)], lambda s: (
              (se.exp_series("plus", s) * se.exp_series("minus", s)).is_identity()
              and (se.lambda_matrix(s) * se.lambda_inverse(s)).is_identity()
              and se.check_difference_identities(s) and se.check_power_law(s)))),
    Check("vanishing-sums", "alternating phi-product sums vanish", 2,
          lambda N: _first_failure([(k, N) for k in range(1, N + 1)], se.check_vanishing_sums)),
    Check("eta", "Lambda^{-1} applied to the phi vector has entries -i sigma^{-1}(phi_{-i-1})", 2,
          lambda N: _first_failure([(s,) for s in range(1, N + 1)], se.check_eta)),
    Check("y-coordinates", "y_2..y_n are invariant and recover x_2..x_n together with x1", 2,
          lambda N: _first_failure([(n, i) for n in range(2, N + 1) for i in range(1, n)],
                                   lambda n, i: is_invariant(make_affine_jordan(n), inv.y_generator(n, i))
                                   and inv.x_from_y(n, i) == Polynomial.var(n, i + 1))),
    Check("y-substitution", "u_k and v_k are unchanged by z1 -> 0, z_i -> y_i", 2,
          lambda N: _first_failure([(n, k, "u") for n, k in _u_cases(N)] + [(n, k, "v") for n, k in _v_cases(N)],
                                   rw.check_u_in_y)),
    Check("free-generation", "expanding a polynomial in the generators and rewriting it is the identity", 2,
          _round_trip),
    Check("independence", "generators have a Jacobian of full rank", 2, _independence),
    Check("graded-generators", "p_k, q_k are homogeneous graded invariants and both constructions agree", 2,
          lambda N: _first_failure([(n,) for n in range(2, N + 1)],
                                   lambda n: inv.transcendence_basis(n).verify())),
    Check("relation-3", "x1^2 s = q1^2 + 3 x1 p1 q1 - p1^3 + 2 x1^2 p1^2", 3,
          lambda N: None if rw.verify_relation(3) else "expanded difference is nonzero"),
    Check("relation-4", "x1^3 t = q1^2 - p1^3 + 3 x1 p1 q1 + 2 x1^2 p1^2 + 3 x1^2 p1 p2", 4,
          lambda N: None if rw.verify_relation(4) else "expanded difference is nonzero"),
    Check("graded-bases", "generator monomials give bases of the homogeneous invariants", 2, _graded_parity),
    Check("localization", "f = (-x1)^d f(-1, 0, f_2/x1^2, ..., f_n/x1^n) for homogeneous invariants", 2,
          _localization),
    Check("f-invariants", "f_{i+1} = x1^{i+1} y_{i+1}(z) is a graded invariant matching its double sum", 2,
          lambda N: _first_failure([(n, i) for n in range(2, N + 1) for i in range(1, min(n, 7))],
                                   lambda n, i: rw.f_fixed(n, i) and inv.f_generator(n, i) == inv.f_double_sum(n, i))),
    Check("degree-five", "w_k is a degree-5 invariant with the predicted leading form", 5, _w_checks),
]


def verify_all(n_max: int, perturb: tuple | None = None) -> Report:
    """Run every check for sizes up to ``n_max``.

    ``perturb`` is an optional ``(kind, k, key)`` naming one table
    coefficient to bump by 1 for the duration of the run (negative control).
    Checks whose smallest meaningful n exceeds ``n_max`` are skipped.
    """
    if n_max < 2:
        raise DomainError("n_max must be >= 2")
    report = Report(n_max)
    with ExitStack() as stack:
        if perturb is not None:
            stack.enter_context(inv.perturbed_coefficient(*perturb))
        for chk in CHECKS:
            if chk.first_n > n_max:
                report.results.append(CheckResult(chk.name, chk.claim, SKIP, f"needs n >= {chk.first_n}"))
                continue
            try:
                detail = chk.run(n_max)
            except (AssertionError, DomainError) as exc:
                # a broken construction is a failed check, not a crash
                detail = f"{type(exc).__name__}: {exc}"
            status = PASS if detail is None else FAIL
            report.results.append(CheckResult(chk.name, chk.claim, status, detail or ""))
    return report
