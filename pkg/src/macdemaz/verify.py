"""Verification suites.

Every suite expands into a list of independent tasks; each task returns a
list of ``(property, ok, detail)`` checks.  Tasks may run on worker threads
(capped by ``MACDEMAZ_THREADS``); results are aggregated in task order so
reports are deterministic.
"""

from __future__ import annotations

import os
import random
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import hecke
from .charring import T_INFINITY, CharacterElement, CoeffPoly, specialize
from .demazure import AFFINE, delta, delta_word, is_antidominant
from .errors import TheoremViolation
from .macdonald import q_step, e_double_limit, e_tinf, e_tinf_raw, expand_in_weyl_characters
from .rootdata import RootSystemData
from .weyl import (
    LARGEST,
    SMALLEST,
    braid_order,
    bruhat_lt,
    descend_to_alcove,
    elements_up_to_length,
    reduced_words,
    simple_dot_action,
    weight_box,
)

Check = tuple[str, bool, str]

SUITES = (
    "confluence",
    "triangularity",
    "expansion",
    "double-limit",
    "bridge-tinf",
    "braid",
    "quadratic",
    "eigen-theta",
    "intertwiner",
    "symmetrizer",
    "demazure-laws",
)
ORACLE_SUITES = ("bridge-tinf", "braid", "quadratic", "eigen-theta", "intertwiner", "symmetrizer")


def worker_count() -> int:
    cpus = os.cpu_count() or 1
    env = os.environ.get("MACDEMAZ_THREADS")
    if env:
        try:
            return max(1, min(cpus, int(env)))
        except ValueError:
            pass
    return cpus


@dataclass
class SuiteConfig:
    data: RootSystemData
    box: int
    budget: tuple[int, int] = hecke.DEFAULT_BUDGET
    instances: int = 100
    seed: int = 0
    max_word_length: int = 6

    def weights(self) -> list[tuple[int, ...]]:
        return weight_box(self.data.n, self.box)

    def oracle_weights(self) -> list[tuple[int, ...]]:
        return weight_box(self.data.n, min(self.box, self.budget[1]))

    def oracle_ok(self) -> bool:
        return self.data.reduced and self.data.n <= self.budget[0]


@dataclass
class SuiteReport:
    suite: str
    type: str
    box: int
    counts: dict[str, list[int]] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    skipped: str | None = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def add(self, prop: str, ok: bool, detail: str = "") -> None:
        c = self.counts.setdefault(prop, [0, 0])
        c[0 if ok else 1] += 1
        if not ok:
            self.failures.append(f"{prop}: {detail}")

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "type": self.type,
            "box": self.box,
            "ok": self.ok,
            "skipped": self.skipped,
            "counts": {k: {"pass": v[0], "fail": v[1]} for k, v in sorted(self.counts.items())},
            "failures": list(self.failures),
        }


# -- shared caches -------------------------------------------------------------

_lock = threading.Lock()
_generic_cache: dict = {}


def cached_generic(data: RootSystemData, lam) -> hecke.GenericResult:
    key = (data.label, tuple(lam))
    with _lock:
        hit = _generic_cache.get(key)
    if hit is None:
        hit = hecke.e_generic(data, lam, budget=None)
        with _lock:
            _generic_cache[key] = hit
    return hit


def _descent_word(data: RootSystemData, lam):
    key = ("w_lam", tuple(lam))
    if key not in data._cache:
        data._cache[key] = descend_to_alcove(data, lam)[1]
    return data._cache[key]


def random_element(data: RootSystemData, rnd: random.Random, terms: int = 3, bound: int = 2, with_t: bool = False) -> CharacterElement:
    f = CharacterElement.zero(data)
    while f.is_zero():
        for _ in range(terms):
            w = tuple(rnd.randint(-bound, bound) for _ in range(data.n))
            f = f + CharacterElement.monomial(
                data,
                w,
                rnd.choice([-3, -2, -1, 1, 2, 3, Fraction(1, 2)]),
                q=Fraction(rnd.randint(-2 * data.m, 2 * data.m), data.m),
                ts=Fraction(rnd.randint(-2, 2), 2) if with_t else 0,
                tl=Fraction(rnd.randint(-2, 2), 2) if with_t else 0,
            )
    return f


def random_scalar(data: RootSystemData, rnd: random.Random) -> CoeffPoly:
    out = CoeffPoly(data.m)
    while out.is_zero():
        for _ in range(2):
            out = out + CoeffPoly.monomial(
                data.m, rnd.randint(-2, 2), Fraction(rnd.randint(-2, 2), 2), Fraction(rnd.randint(-2, 2), 2), rnd.randint(-3, 3)
            )
    return out


def _guard(fn: Callable[[], list[Check]], prop: str, label: str) -> Callable[[], list[Check]]:
    def run() -> list[Check]:
        try:
            return fn()
        except TheoremViolation as exc:
            return [(prop, False, f"{label}: {type(exc).__name__}: {exc}")]

    return run


# -- t = infinity suites ---------------------------------------------------------


def check_confluence(data: RootSystemData, lam) -> list[Check]:
    a = e_tinf(data, lam, SMALLEST)
    b = e_tinf(data, lam, LARGEST)
    return [("confluence", a == b, f"{lam}: {a} != {b}")]


def check_triangularity(data: RootSystemData, lam) -> list[Check]:
    lam = tuple(lam)
    E = e_tinf(data, lam)
    out: list[Check] = []
    lead = E.coefficient(lam)
    out.append(("leading-one", lead == CoeffPoly.constant(data.m, 1), f"{lam}: lead {lead}"))
    bad = [(mu, str(c)) for mu, c in E.by_weight().items() if not c.is_poly_in_qinv(q_step(data))]
    out.append(("positivity", not bad, f"{lam}: {bad[:3]}"))
    wl = _descent_word(data, lam)
    lower = [mu for mu in E.support() if mu != lam and not bruhat_lt(data, _descent_word(data, mu), wl)]
    out.append(("triangularity", not lower, f"{lam}: support {lower[:3]} not below"))
    # independent recomputation with the other descent policy
    raw, k = e_tinf_raw(data, lam, LARGEST)
    out.append(("identity", raw.shift(q=k) == E, f"{lam}: Demazure identity"))
    return out


def check_expansion(data: RootSystemData, lam) -> list[Check]:
    table = expand_in_weyl_characters(data, lam)
    ok = all(d.is_poly_in_qinv(q_step(data)) for d in table.entries.values())
    return [("expansion", ok, f"{lam}")]


def check_double_limit(data: RootSystemData, lam) -> list[Check]:
    e_double_limit(data, lam)
    return [("double-limit", True, "")]


def check_bridge(data: RootSystemData, lam) -> list[Check]:
    res = cached_generic(data, lam)
    norm = hecke.normalization_at_tinf(res)
    at_tinf = specialize(res.F, T_INFINITY)
    want = e_tinf(data, lam).shift(q=res.qshift)
    lead = res.F.coefficient(lam)
    want_lead = res.normalization.shift(q=res.qshift)
    return [
        ("normalization->1", norm == CoeffPoly.constant(data.m, 1), f"{lam}: {norm}"),
        ("tinf-bridge", at_tinf == want, f"{lam}"),
        ("leading-normalization", lead == want_lead, f"{lam}: {lead} vs {want_lead}"),
    ]


# -- Hecke relations -------------------------------------------------------------


def _alternating(i: int, j: int, m: int) -> tuple[int, ...]:
    return tuple((i, j) * m)[:m]


def check_braid(data: RootSystemData, f: CharacterElement, i: int, j: int, linear_zero: bool) -> list[Check]:
    m = braid_order(data, i, j)
    a = hecke.hecke_word(_alternating(i, j, m), f, linear_zero=linear_zero)
    b = hecke.hecke_word(_alternating(j, i, m), f, linear_zero=linear_zero)
    name = "braid-linear-T0" if linear_zero else "braid"
    return [(name, a == b, f"({i},{j}) on {f}")]


def check_quadratic(data: RootSystemData, f: CharacterElement, i: int) -> list[Check]:
    Tf = hecke.hecke_t(i, f)
    lhs = hecke.hecke_t(i, Tf) - Tf * hecke.t_minus(data, i) - f
    inv = hecke.hecke_t(i, Tf, inverse=True)
    return [
        ("quadratic", lhs.is_zero(), f"T_{i} on {f}"),
        ("inverse", inv == f, f"T_{i}^-1 T_{i} on {f}"),
    ]


def check_eigen_theta(data: RootSystemData, lam, scalar: CoeffPoly) -> list[Check]:
    F = cached_generic(data, lam).F * scalar
    ev = hecke.eigen_monomial(data, data.theta_root, 0, lam).poly(data.m)
    return [("eigen-theta", hecke.y_theta(F) == F * ev, f"{lam}")]


def check_intertwiner(data: RootSystemData, lam, i: int, scalar: CoeffPoly) -> list[Check]:
    F = cached_generic(data, lam).F * scalar
    lam2 = simple_dot_action(data, i, lam)
    once = hecke.intertwiner_apply(i, F, lam)
    twice = hecke.intertwiner_apply(i, once, lam2)
    scal = hecke.intertwiner_square_scalar(data, i, lam)
    ev2 = hecke.eigen_monomial(data, data.theta_root, 0, lam2).poly(data.m)
    return [
        ("intertwiner-square", twice == F * scal, f"I_{i}^2 at {lam}"),
        ("intertwiner-eigen", hecke.y_theta(once) == once * ev2, f"Y_theta I_{i} at {lam}"),
    ]


def check_symmetrizer(data: RootSystemData, f: CharacterElement) -> list[Check]:
    C = hecke.symmetrize_C(f, budget=None)
    out = []
    for i in range(1, data.n + 1):
        out.append(("T_iC", hecke.hecke_t(i, C) == C * hecke._t_coeff(data, i, 1), f"i={i} on {f}"))
    return out


def check_degeneration(data: RootSystemData, lam, literal: bool = False) -> list[Check]:
    """``C E_lam`` at ``t_s = q, t_l = q^r`` (or ``t_s = t_l = q`` with ``literal``)
    is a nonzero multiple of the Weyl character of ``lam_+``."""
    ks, kl = (1, 1) if literal else hecke.weyl_point(data)
    ok, detail = hecke.degenerates_to_weyl(data, lam, ks, kl, cached_generic(data, lam).F)
    return [("degeneration-literal" if literal else "degeneration", ok, f"{lam}: {detail}")]


# -- Demazure laws ------------------------------------------------------------------


def check_idempotence(data: RootSystemData, f: CharacterElement, i: int) -> list[Check]:
    once = delta(i, f, AFFINE)
    return [("idempotence", delta(i, once, AFFINE) == once, f"Delta_{i} on {f}")]


def check_word_independence(data: RootSystemData, word, seeds) -> list[Check]:
    words = reduced_words(data, word)
    if len(words) < 2:
        return []
    out = []
    for f in seeds:
        results = [delta_word(w, f, AFFINE) for w in words]
        out.append(("word-independence", all(r == results[0] for r in results), f"{word} on {f}"))
    return out


# -- suite assembly -------------------------------------------------------------------


def _tasks(name: str, cfg: SuiteConfig) -> list[Callable[[], list[Check]]]:
    data = cfg.data
    rnd = random.Random(f"{cfg.seed}:{name}:{data.label}")
    tasks: list[Callable[[], list[Check]]] = []
    if name == "confluence":
        tasks = [_guard(lambda lam=lam: check_confluence(data, lam), "confluence", str(lam)) for lam in cfg.weights()]
    elif name == "triangularity":
        tasks = [_guard(lambda lam=lam: check_triangularity(data, lam), "triangularity", str(lam)) for lam in cfg.weights()]
    elif name == "expansion":
        tasks = [
            _guard(lambda lam=lam: check_expansion(data, lam), "expansion", str(lam))
            for lam in cfg.weights()
            if is_antidominant(data, lam)
        ]
    elif name == "double-limit":
        tasks = [_guard(lambda lam=lam: check_double_limit(data, lam), "double-limit", str(lam)) for lam in cfg.weights()]
    elif name == "bridge-tinf":
        tasks = [_guard(lambda lam=lam: check_bridge(data, lam), "tinf-bridge", str(lam)) for lam in cfg.oracle_weights()]
    elif name == "braid":
        pairs = [(i, j) for i in range(data.n + 1) for j in range(i + 1, data.n + 1) if braid_order(data, i, j)]
        for i, j in pairs:
            for _ in range(cfg.instances):
                f = random_element(data, rnd, with_t=True)
                for lin in (False, True):
                    tasks.append(lambda f=f, i=i, j=j, lin=lin: check_braid(data, f, i, j, lin))
    elif name == "quadratic":
        for i in range(data.n + 1):
            for _ in range(cfg.instances):
                f = random_element(data, rnd, with_t=True)
                tasks.append(lambda f=f, i=i: check_quadratic(data, f, i))
    elif name == "eigen-theta":
        ws = cfg.oracle_weights()
        small = [w for w in ws if sum(map(abs, w)) <= 2]
        picks = [(w, CoeffPoly.constant(data.m, 1)) for w in ws]
        while len(picks) < cfg.instances:
            picks.append((rnd.choice(small), random_scalar(data, rnd)))
        tasks = [_guard(lambda w=w, s=s: check_eigen_theta(data, w, s), "eigen-theta", str(w)) for w, s in picks]
    elif name == "intertwiner":
        ws = cfg.oracle_weights()
        small = [w for w in ws if sum(map(abs, w)) <= 2]
        moving = lambda w, i: simple_dot_action(data, i, w) != w  # noqa: E731
        picks = [(w, i, CoeffPoly.constant(data.m, 1)) for w in ws for i in range(data.n + 1) if moving(w, i)]
        pool = [(w, i) for w in small for i in range(data.n + 1) if moving(w, i)]
        while len(picks) < cfg.instances and pool:
            w, i = rnd.choice(pool)
            picks.append((w, i, random_scalar(data, rnd)))
        tasks = [_guard(lambda w=w, i=i, s=s: check_intertwiner(data, w, i, s), "intertwiner", str(w)) for w, i, s in picks]
    elif name == "symmetrizer":
        for _ in range(cfg.instances):
            f = random_element(data, rnd, terms=2, with_t=True)
            tasks.append(lambda f=f: check_symmetrizer(data, f))
        for lam in cfg.oracle_weights():
            if is_antidominant(data, lam) and sum(map(abs, lam)) <= 3:
                tasks.append(_guard(lambda lam=lam: check_degeneration(data, lam), "degeneration", str(lam)))
    elif name == "demazure-laws":
        per_node = max(cfg.instances, -(-500 // (data.n + 1)))
        for _ in range(per_node):
            f = random_element(data, rnd, terms=3, bound=2)
            for i in range(data.n + 1):
                tasks.append(lambda f=f, i=i: check_idempotence(data, f, i))
        seeds = [
            CharacterElement.one(data),
            CharacterElement.monomial(data, (0,) * (data.n - 1) + (1,)),
            random_element(data, rnd, terms=2, bound=1),
        ]
        for w in elements_up_to_length(data, cfg.max_word_length):
            if len(w) >= 2:
                tasks.append(lambda w=w: check_word_independence(data, w, seeds))
    else:
        raise ValueError(f"unknown suite {name!r}")
    return tasks


def run_suite(name: str, cfg: SuiteConfig, workers: int | None = None) -> SuiteReport:
    report = SuiteReport(name, cfg.data.label, cfg.box)
    if name in ORACLE_SUITES and not cfg.oracle_ok():
        why = "non-reduced type" if not cfg.data.reduced else f"rank above oracle budget {cfg.budget[0]}"
        report.skipped = why
        return report
    tasks = _tasks(name, cfg)
    workers = workers or worker_count()
    if workers > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda t: t(), tasks))
    else:
        results = [t() for t in tasks]
    for checks in results:
        for prop, ok, detail in checks:
            report.add(prop, ok, detail)
    return report


def expand_suites(names) -> list[str]:
    out: list[str] = []
    for n in names:
        if n == "all":
            out.extend(s for s in SUITES if s not in out)
        elif n not in SUITES:
            raise ValueError(f"unknown suite {n!r}")
        elif n not in out:
            out.append(n)
    return out


def run_suites(names, cfg: SuiteConfig, workers: int | None = None) -> list[SuiteReport]:
    return [run_suite(n, cfg, workers) for n in expand_suites(names)]
