#!/usr/bin/env python3
"""Regenerate the fixture corpus under fixtures/.

Writes the hand-catalog instances used by the CLI tests, runs the default
dim-4 search over Z/2, and persists every nontrivial find together with its
canonical analysis report.  Deterministic: rerunning reproduces the same
bytes.
"""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from ydhalg.abgroup import FinAbGroup
from ydhalg.catalog import (DUAL_GROUP_ALGEBRA, GROUP_ALGEBRA, SearchConfig,
                            search_nontrivial, trivial_instances)
from ydhalg.commalg import analyze
from ydhalg.ydhio import (algebra_to_document, load_algebra,
                          outcome_to_report, render_document, report_to_json,
                          save_algebra)
from ydhalg.ydhopf import dualize

HERE = os.path.dirname(os.path.abspath(__file__))
FIXTURES = os.path.join(HERE, "..", "fixtures")


def write(path, algebra):
    save_algebra(path, algebra)
    print("wrote", os.path.relpath(path))


def main():
    os.makedirs(FIXTURES, exist_ok=True)
    reports = os.path.join(FIXTURES, "reports")
    os.makedirs(reports, exist_ok=True)
    g2 = FinAbGroup([2])

    a = trivial_instances(FinAbGroup([2]), GROUP_ALGEBRA, g2)
    a.label = "K[Z/2] over Z/2"
    write(os.path.join(FIXTURES, "k_z2.ydh"), a)
    a = trivial_instances(FinAbGroup([3]), GROUP_ALGEBRA, g2)
    a.label = "K[Z/3] over Z/2"
    write(os.path.join(FIXTURES, "k_z3.ydh"), a)
    a = trivial_instances(FinAbGroup([3]), DUAL_GROUP_ALGEBRA, g2)
    a.label = "K^Z/3 over Z/2"
    write(os.path.join(FIXTURES, "kdual_z3.ydh"), a)
    a = trivial_instances(FinAbGroup([2, 2]), DUAL_GROUP_ALGEBRA, g2)
    a.label = "K^Z/2xZ/2 over Z/2"
    write(os.path.join(FIXTURES, "kdual_z2z2.ydh"), a)

    outcome = search_nontrivial(SearchConfig(g2, 4))
    print("search: %d instances, %d nontrivial, %d candidates"
          % (len(outcome.instances), len(outcome.nontrivial()),
             outcome.candidates_checked))
    n = 0
    for instance, trivial in outcome.instances:
        if trivial:
            continue
        instance.label = "nontrivial search fixture Z/2 dim 4 #%d" % n
        path = os.path.join(FIXTURES, "nontrivial_z2_d4_%02d.ydh" % n)
        write(path, instance)
        reloaded = load_algebra(path)
        result = analyze(reloaded, tensor_ideals=True)
        assert result.passed and result.trivial is False
        blob = report_to_json(outcome_to_report(result))
        rpath = os.path.join(reports, "nontrivial_z2_d4_%02d.json" % n)
        with open(rpath, "w", encoding="utf-8") as fh:
            fh.write(blob)
        print("wrote", os.path.relpath(rpath))
        # the dual, cocommutative form of the first fixture for CLI tests
        if n == 0:
            dual = dualize(reloaded)
            dual.label = "dual of nontrivial search fixture Z/2 dim 4 #0"
            write(os.path.join(FIXTURES, "nontrivial_z2_d4_00_dual.ydh"),
                  dual)
        n += 1


if __name__ == "__main__":
    main()
