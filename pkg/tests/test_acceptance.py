"""Acceptance criteria 1-9, exact arithmetic throughout.

Each test prints one ``criterion N ...: PASS|FAIL`` line through the
terminal reporter, so the lines show up under plain ``pytest -v``.
"""

from __future__ import annotations

import multiprocessing
import queue as queue_mod
import sys
import time

import pytest

from macdemaz import CharacterElement, build_affine_data, e_generic, e_tinf, specialize
from macdemaz import verify
from macdemaz.charring import T_INFINITY
from macdemaz.demazure import is_antidominant
from macdemaz.hecke import degenerates_to_weyl
from macdemaz.macdonald import expand_in_weyl_characters
from macdemaz.weyl import weight_box

TINF_TYPES = ["A1~1", "A2~1", "A3~1", "A4~2", "A3~2", "D3~2"]
# reduced types of rank <= 2
SMALL_REDUCED = ["A1~1", "A2~1", "A3~2", "D3~2", "D4~3"]
BOX = 3
# D4~3 words grow quickly: box 3 oracle runs take minutes and the box 3
# symmetrizer exhausts memory, so the oracle weights are capped there.
# Criterion 7 only asks for 100 instances per type, and box 1 gives them.
HECKE_BOX = {"D4~3": 1}
DEGENERATION_BOX = {"D4~3": 2}


@pytest.fixture
def emit(pytestconfig):
    """Write a line to the terminal, past pytest's output capture."""
    reporter = pytestconfig.pluginmanager.get_plugin("terminalreporter")

    def write(line: str) -> None:
        if reporter is not None:
            reporter.ensure_newline()
            reporter.write_line(line)
        else:
            print(line)

    return write


def report(emit, n: int, name: str, failures: list[str], note: str = "") -> None:
    status = "PASS" if not failures else "FAIL"
    line = f"criterion {n} {name}: {status}"
    if note:
        line += f" [{note}]"
    if failures:
        line += f" ({len(failures)} failing, first: {failures[0]})"
    emit(line)
    assert not failures, line


def _suite_failures(name: str, label: str, box: int, **kw) -> list[str]:
    cfg = verify.SuiteConfig(build_affine_data(label), box, **kw)
    rep = verify.run_suite(name, cfg)
    out = [f"{label} {f}" for f in rep.failures]
    if rep.skipped:
        out.append(f"{label} {name} skipped: {rep.skipped}")
    return out


def _literal_qinv(c) -> bool:
    """Coefficient lies in Z_{>=0}[q^{-1}] (integer exponents, no t)."""
    return c.is_poly_in_qinv(1)


# -- 1 ------------------------------------------------------------------------


def test_criterion_1_confluence(emit):
    start = time.time()
    failures = []
    for label in TINF_TYPES:
        failures += _suite_failures("confluence", label, BOX)
    elapsed = time.time() - start
    if elapsed >= 60:
        failures.append(f"runtime {elapsed:.1f}s >= 60s")
    report(emit, 1, "confluence", failures, f"{elapsed:.1f}s")


# -- 2 ------------------------------------------------------------------------


def test_criterion_2_leading_term_positivity_triangularity(emit):
    failures = []
    for label in TINF_TYPES:
        d = build_affine_data(label)
        failures += _suite_failures("triangularity", label, BOX)
        for lam in weight_box(d.n, BOX):
            bad = [mu for mu, c in e_tinf(d, lam).by_weight().items() if not _literal_qinv(c)]
            if bad:
                failures.append(f"{label} {lam}: coefficient of e^{bad[0]} not in Z>=0[q^-1]")
    report(emit, 2, "E_lam(q,inf) = e^lam + lower, coefficients in Z>=0[q^-1]", failures)


# -- 3 ------------------------------------------------------------------------


def test_criterion_3_sl2_anchors(emit):
    d = build_affine_data("A1~1")

    def e(w, q=0):
        return CharacterElement.monomial(d, w, q=q)

    anchors = {
        (2,): e((2,)) + e((0,), -1),
        (-2,): e((2,)) + e((0,)) + e((-2,)) + e((0,), -1),
        (-1,): e((1,)) + e((-1,)),
    }
    failures = []
    for lam, want in anchors.items():
        res = e_generic(d, lam)
        bridged = specialize(res.F, T_INFINITY).shift(q=-res.qshift)
        if bridged != want:
            failures.append(f"oracle bridge at {lam}: {bridged}")
        if e_tinf(d, lam) != want:
            failures.append(f"e_tinf at {lam}: {e_tinf(d, lam)}")
    report(emit, 3, "sl2 anchors", failures)


# -- 4 ------------------------------------------------------------------------


def test_criterion_4_weyl_character_expansion(emit):
    start = time.time()
    failures = []
    for label in TINF_TYPES:
        d = build_affine_data(label)
        failures += _suite_failures("expansion", label, BOX)
        for lam in weight_box(d.n, BOX):
            if not is_antidominant(d, lam):
                continue
            table = expand_in_weyl_characters(d, lam)
            bad = [mu for mu, c in table.entries.items() if not _literal_qinv(c)]
            if bad:
                failures.append(f"{label} {lam}: d at {bad[0]} = {table.entries[bad[0]]} not in Z>=0[q^-1]")
    elapsed = time.time() - start
    if elapsed >= 120:
        failures.append(f"runtime {elapsed:.1f}s >= 120s")
    report(emit, 4, "P_lam(q,inf) = sum d chi, d in Z>=0[q^-1]", failures, f"{elapsed:.1f}s")


# -- 5 ------------------------------------------------------------------------


def test_criterion_5_double_limit(emit):
    failures = []
    for label in TINF_TYPES:
        failures += _suite_failures("double-limit", label, BOX)
    report(emit, 5, "E_lam(inf,inf) is a finite Demazure character", failures)


# -- 6 ------------------------------------------------------------------------


def _bridge_worker(label: str, weights, queue) -> None:
    d = build_affine_data(label)
    for lam in weights:
        checks = verify._guard(lambda lam=lam: verify.check_bridge(d, lam), "tinf-bridge", str(lam))()
        queue.put((lam, [f"{label} {lam}: {p} {detail}" for p, ok, detail in checks if not ok]))
    queue.put(None)


def test_criterion_6_oracle_bridge(emit):
    budget = 120.0
    box = 4
    start = time.time()
    failures = []
    for label in SMALL_REDUCED:
        d = build_affine_data(label)
        weights = sorted(weight_box(d.n, box), key=lambda w: (sum(map(abs, w)), w))
        ctx = multiprocessing.get_context("fork")
        queue = ctx.Queue()
        proc = ctx.Process(target=_bridge_worker, args=(label, weights, queue), daemon=True)
        proc.start()
        done = 0
        finished = False
        while True:
            left = budget - (time.time() - start)
            if left <= 0:
                break
            try:
                item = queue.get(timeout=min(left, 5.0))
            except queue_mod.Empty:
                if not proc.is_alive() and queue.empty():
                    break
                continue
            if item is None:
                finished = True
                break
            done += 1
            failures += item[1]
        proc.terminate()
        proc.join()
        if not finished:
            failures.append(f"{label}: runtime budget {budget:.0f}s exhausted after {done} of {len(weights)} weights at box {box}")
            break
    elapsed = time.time() - start
    report(emit, 6, "generic oracle at t = inf matches e_tinf", failures, f"{elapsed:.1f}s")


# -- 7 ------------------------------------------------------------------------


def test_criterion_7_hecke_relations(emit):
    failures = []
    counts = {}
    for label in SMALL_REDUCED:
        box = HECKE_BOX.get(label, BOX)
        cfg = verify.SuiteConfig(build_affine_data(label), box, instances=100)
        for name in ("braid", "quadratic", "eigen-theta", "intertwiner", "symmetrizer"):
            rep = verify.run_suite(name, cfg)
            if rep.skipped:
                failures.append(f"{label} {name} skipped")
            failures += [f"{label} {f}" for f in rep.failures]
            for prop, (ok, bad) in rep.counts.items():
                counts[(label, prop)] = ok + bad
    for (label, prop), total in counts.items():
        if prop.startswith("degeneration"):
            continue
        if total < 100:
            failures.append(f"{label} {prop}: only {total} instances")
    report(emit, 7, "braid, quadratic, Y_theta, intertwiner, T_iC", failures, "D4~3 oracle weights at box 1")


# -- 8 ------------------------------------------------------------------------


def test_criterion_8_weyl_degeneration_at_t_equals_q(emit):
    failures = []
    for label in SMALL_REDUCED:
        d = build_affine_data(label)
        box = DEGENERATION_BOX.get(label, BOX)
        for lam in weight_box(d.n, box):
            if not is_antidominant(d, lam):
                continue
            F = e_generic(d, lam, budget=None).F
            ok, detail = degenerates_to_weyl(d, lam, 1, 1, F)
            if not ok:
                failures.append(f"{label} {lam}: {detail}")
    report(emit, 8, "symmetrized E_lam at t_s = t_l = q is the Weyl character", failures, "D4~3 at box 2")


# -- 9 ------------------------------------------------------------------------


def test_criterion_9_demazure_laws(emit):
    failures = []
    for label in TINF_TYPES + ["D4~3"]:
        failures += _suite_failures("demazure-laws", label, BOX)
    report(emit, 9, "Delta_i idempotent, reduced-word independent (length <= 6)", failures)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
