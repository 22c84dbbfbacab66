"""Acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL - title`` line; the
lines are repeated in the pytest terminal summary.  Run this file directly
(``python tests/test_acceptance.py``) to get just those lines.
"""
import sys
from itertools import product
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE_LINES, fresh_runner  # noqa: E402
from golden import (ADD, DEFINITIONS, LADJLIST, ONE_PLUS_ONE, PRELUDE_ECHO, RADJLIST,  # noqa: E402
                    SIMPS)
from helpers import has_type, parse_type  # noqa: E402


def report(number: int, title: str, check) -> None:
    try:
        check()
    except Exception:
        line = f"criterion {number}: FAIL - {title}"
        print(line)
        ACCEPTANCE_LINES.append(line)
        raise
    line = f"criterion {number}: PASS - {title}"
    print(line)
    ACCEPTANCE_LINES.append(line)


def _simp(runner, command):
    runner.output.clear()
    runner.execute(command)
    assert not runner.diagnostics, runner.diagnostics
    return runner.output


def _simp_table(commands):
    r = fresh_runner(definitions=True)
    table = {cmd: (res, typ) for cmd, res, typ in SIMPS}
    for cmd in commands:
        out = _simp(r, cmd)
        result, typ = table[cmd]
        assert out[0] == result, (cmd, out[0])
        assert out[1].startswith("    : ") and has_type(parse_type(out[1][6:]), typ), (cmd, out[1])
        if "*" not in typ:
            assert out[1] == "    : " + typ


def test_criterion_1_prelude_echo():
    def check():
        from cpl.repl import Runner, bundled
        r = Runner()
        r.run_text(bundled("prelude.cpl"))
        assert not r.diagnostics
        assert r.output[: len(PRELUDE_ECHO)] == PRELUDE_ECHO
    report(1, "prelude declarations echo exactly", check)


def test_criterion_2_typing_golden():
    def check():
        r = fresh_runner()
        r.execute("show pair(pi2,eval)")
        assert r.output[0] == "pair(pi2,eval)"
        assert has_type(parse_type(r.output[1][6:]), "prod(exp(*b,*a),*b) -> prod(*b,*a)")
    report(2, "show pair(pi2,eval) has the reference type", check)


def test_criterion_3_arithmetic():
    def check():
        _simp_table(["simp add.pair(s.0,s.s.0)", "simp " + ONE_PLUS_ONE,
                     "simp mult.pair(s.s.0,s.s.s.0)", "simp fact.s.s.s.s.0"])
    report(3, "arithmetic results and types", check)


def test_criterion_4_lists():
    def check():
        _simp_table([cmd for cmd, _, _ in SIMPS[4:11]])
    report(4, "list results, including full append and reverse.it", check)


def test_criterion_5_infinite_lists():
    def check():
        _simp_table([cmd for cmd, _, _ in SIMPS[11:]])
    report(5, "infinite-list results", check)


def test_criterion_6_trace():
    def check():
        r = fresh_runner()
        r.execute("set trace on")
        out = _simp(r, "simp " + ONE_PLUS_ONE)
        trace = out[:-2]
        assert trace[0] == "0:" + ONE_PLUS_ONE + "*"
        assert trace[-1].split("*", 1)[1] == "s.s.0"
        assert [int(line.split(":")[0].split("[")[0]) for line in trace] == list(range(len(trace)))
        assert out[-2:] == ["s.s.0", "    : 1 -> nat"]
    report(6, "trace of 1+1 starts from the input and ends in s.s.0", check)


def test_criterion_7_rejections():
    def check():
        r = fresh_runner()
        before = r.session
        for text in (LADJLIST, RADJLIST):
            r.diagnostics.clear()
            r.execute(text)
            assert len(r.diagnostics) == 1 and "not computable" in r.diagnostics[0]
            assert r.session is before
        assert "ladjlist" not in r.session.env.objects and "radjlist" not in r.session.env.objects
    report(7, "ladjlist and radjlist are rejected as non-computable", check)


def test_criterion_8_property_suites(prelude_env, corpus_env):
    def check():
        import test_functorial as tf
        import test_inference as ti
        import test_reducer as tr
        import test_variance as tv
        from corpus import ELEMENTS, LIST_ELEMENTS, NAT_ELEMENTS

        # variance laws, exhaustive
        tv.test_composition_monoid_laws_exhaustive()
        tv.test_lub_semilattice_laws_exhaustive()
        tv.test_composition_distributes_over_lub_exhaustive()
        # unifier soundness (1000 cases) and brute-force generality
        tf.test_unify_soundness()
        tf.test_unify_generality_brute_force()
        # inference skeleton preservation (1500 random expressions) and corpus
        ti.test_skeleton_preservation_and_instance_soundness()
        ti.test_corpus_skeleton_preservation(corpus_env)
        # determinism, fuel-bounded termination and type preservation on the corpus
        for text in ELEMENTS:
            tr.test_corpus_reductions(corpus_env, text)
        for text in NAT_ELEMENTS + LIST_ELEMENTS:
            tr.test_lazy_and_full_agree(corpus_env, text)
        for y in ("0", "s.0", "s.s.0"):
            tr.test_nat_fixed_point_round_trip(prelude_env, y)
        for x in ("in1.!", "in2.0", "in2.s.0"):
            tr.test_coprod_fixed_point_round_trip(prelude_env, x)
    report(8, "property suites", check)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))
